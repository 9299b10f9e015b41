//! Point blowups in affine charts.
//!
//! Every tracked point carries local coordinates `(u, v)` centred at it, the
//! strict transforms through it and the exceptional curves through it, each
//! of which is a coordinate axis. Blowing up replaces the point by the points
//! of the new curve `E` that lie on an old curve: rational directions `t = c`
//! in the chart `(u, v) = (u, u(w + c))`, where `E = {u = 0}`, and the
//! direction of `{u = 0}` in the chart `(u, v) = (s v, v)`, where `E = {v = 0}`.
//! New points are queued by ascending `c`, then the `u = 0` direction.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use super::germ::GermPair;
use crate::exactalg::{
    bivariate_square_free, poly_gcd, rational_roots, BiPoly, Poly, Rat, RootError,
};
use crate::resgraph::{Component, ResolutionGraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("non-rational center: {0}")]
    NonRationalCenter(String),
    #[error(transparent)]
    CoefficientTooLarge(#[from] RootError),
    #[error("point {0} is not tracked")]
    UnknownPoint(usize),
    #[error("point {0} is normal crossing and needs no completion step")]
    NotABadPoint(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    P,
    Q,
}

/// A coordinate axis of a point chart: `U` is `{u = 0}`, `V` is `{v = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    U,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartStep {
    /// `(u, v) -> (u, u (w + c))`.
    Slope(Rat),
    /// `(u, v) -> (s v, v)`.
    InverseSlope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub poly: BiPoly,
    pub side: Side,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedPoint {
    pub history: Vec<ChartStep>,
    pub factors: Vec<LocalFactor>,
    /// Exceptional curves through the point, by creation index.
    pub axes: Vec<(usize, Axis)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    SingularBranch { order: u32 },
    TriplePoint,
    Tangency,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPoint {
    pub index: usize,
    pub defect: Defect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalData {
    pub np: u64,
    pub nq: u64,
    pub nu: u64,
    pub self_intersection: i64,
}

impl ExceptionalData {
    fn n(&self) -> i64 {
        self.np as i64 - self.nq as i64
    }
}

/// Conjugate non-rational points of one exceptional curve where a strict
/// transform crosses it transversally and nothing else needs doing.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bundle {
    component: usize,
    side: Side,
    multiplicity: u32,
    branches: usize,
}

#[derive(Clone, Debug)]
pub struct ChartState {
    exceptional: Vec<ExceptionalData>,
    points: Vec<Option<TrackedPoint>>,
    queue: VecDeque<usize>,
    bundles: Vec<Bundle>,
}

fn linear_part(f: &BiPoly) -> (Rat, Rat) {
    (f.coeff(1, 0), f.coeff(0, 1))
}

fn axis_linear(a: Axis) -> (Rat, Rat) {
    match a {
        Axis::U => (Rat::from_integer(1.into()), Rat::zero()),
        Axis::V => (Rat::zero(), Rat::from_integer(1.into())),
    }
}

fn defect_of(p: &TrackedPoint) -> Option<Defect> {
    for f in &p.factors {
        let order = f.poly.order().expect("nonzero factor");
        if order >= 2 {
            return Some(Defect::SingularBranch { order });
        }
    }
    let mut lines: Vec<(Rat, Rat)> = p.axes.iter().map(|&(_, a)| axis_linear(a)).collect();
    lines.extend(p.factors.iter().map(|f| linear_part(&f.poly)));
    match lines.len() {
        0 | 1 => None,
        2 => {
            let det = &lines[0].0 * &lines[1].1 - &lines[0].1 * &lines[1].0;
            det.is_zero().then_some(Defect::Tangency)
        }
        _ => Some(Defect::TriplePoint),
    }
}

impl ChartState {
    /// The origin with the reduced factors of `P` and `Q` through it.
    pub fn new(germ: &GermPair) -> ChartState {
        let mut factors = Vec::new();
        let sides = [(germ.p(), Side::P), (germ.q(), Side::Q)];
        for (poly, side) in sides {
            for (f, k) in bivariate_square_free(poly) {
                if f.constant_term().is_zero() {
                    factors.push(LocalFactor {
                        poly: f,
                        side,
                        multiplicity: k,
                    });
                }
            }
        }
        ChartState {
            exceptional: Vec::new(),
            points: vec![Some(TrackedPoint {
                history: Vec::new(),
                factors,
                axes: Vec::new(),
            })],
            queue: VecDeque::from([0]),
            bundles: Vec::new(),
        }
    }

    pub fn exceptional(&self) -> &[ExceptionalData] {
        &self.exceptional
    }

    /// Live points with their indices.
    pub fn points(&self) -> impl Iterator<Item = (usize, &TrackedPoint)> {
        self.points
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.as_ref().map(|p| (i, p)))
    }

    pub fn point(&self, index: usize) -> Option<&TrackedPoint> {
        self.points.get(index).and_then(Option::as_ref)
    }

    fn curve_n(&self, p: &TrackedPoint) -> Vec<i64> {
        let mut out: Vec<i64> = p
            .axes
            .iter()
            .map(|&(c, _)| self.exceptional[c].n())
            .collect();
        out.extend(p.factors.iter().map(|f| match f.side {
            Side::P => f.multiplicity as i64,
            Side::Q => -(f.multiplicity as i64),
        }));
        out
    }

    /// Curves of opposite sign meet here, so `P/Q` is not a morphism at the point.
    fn needs_completion(&self, p: &TrackedPoint) -> bool {
        let n = self.curve_n(p);
        n.iter().any(|&a| a > 0) && n.iter().any(|&a| a < 0)
    }

    pub fn normal_crossing_audit(&self) -> Vec<BadPoint> {
        self.points()
            .filter_map(|(index, p)| defect_of(p).map(|defect| BadPoint { index, defect }))
            .collect()
    }

    /// Blows up a tracked point that fails normal crossings or where the
    /// quotient is not yet a morphism. Returns the new component's index.
    pub fn blowup_at(&mut self, index: usize) -> Result<usize, ResolveError> {
        let p = self.point(index).ok_or(ResolveError::UnknownPoint(index))?;
        if defect_of(p).is_none() && !self.needs_completion(p) {
            return Err(ResolveError::NotABadPoint(index));
        }
        self.blow_up(index)
    }

    fn blow_up(&mut self, index: usize) -> Result<usize, ResolveError> {
        let p = self.points[index]
            .clone()
            .ok_or(ResolveError::UnknownPoint(index))?;
        let e = self.exceptional.len();
        let mut np: u64 = 0;
        let mut nq: u64 = 0;
        let mut nu: u64 = 2;
        for &(c, _) in &p.axes {
            let d = &self.exceptional[c];
            np += d.np;
            nq += d.nq;
            nu += d.nu - 1;
        }
        #[derive(Default)]
        struct Draft {
            factors: Vec<LocalFactor>,
            axes: Vec<(usize, Axis)>,
        }
        let mut finite: BTreeMap<Rat, Draft> = BTreeMap::new();
        let mut vertical = Draft::default();
        let mut irrational: Vec<(Side, u32, Poly)> = Vec::new();
        for &(c, a) in &p.axes {
            match a {
                Axis::U => vertical.axes.push((c, Axis::U)),
                Axis::V => finite
                    .entry(Rat::zero())
                    .or_default()
                    .axes
                    .push((c, Axis::V)),
            }
        }
        for f in &p.factors {
            let m = f.poly.order().expect("nonzero factor");
            match f.side {
                Side::P => np += (f.multiplicity * m) as u64,
                Side::Q => nq += (f.multiplicity * m) as u64,
            }
            let local = |poly: BiPoly| LocalFactor {
                poly,
                side: f.side,
                multiplicity: f.multiplicity,
            };
            let h = f.poly.cone_in_slope(m);
            if (h.degree().expect("nonzero cone") as u32) < m {
                vertical.factors.push(local(f.poly.chart_inverse_slope(m)));
            }
            let (roots, rest) = rational_roots(&h)?;
            if !roots.is_empty() {
                let slope = f.poly.chart_slope(m);
                for (c, _) in roots {
                    let moved = slope.translate_y(&c);
                    finite.entry(c).or_default().factors.push(local(moved));
                }
            }
            if rest.degree().unwrap_or(0) > 0 {
                irrational.push((f.side, f.multiplicity, rest));
            }
        }
        let n_e = np as i64 - nq as i64;
        for (i, (side, _, rest)) in irrational.iter().enumerate() {
            let label = format!("E{}", e + 1);
            if !poly_gcd(rest, &rest.derivative()).is_constant() {
                return Err(ResolveError::NonRationalCenter(format!(
                    "strict transform is singular or tangent at non-rational points of {label}"
                )));
            }
            if irrational[..i]
                .iter()
                .any(|(_, _, other)| !poly_gcd(rest, other).is_constant())
            {
                return Err(ResolveError::NonRationalCenter(format!(
                    "strict transforms meet at non-rational points of {label}"
                )));
            }
            let wrong_sign = match side {
                Side::P => n_e < 0,
                Side::Q => n_e > 0,
            };
            if wrong_sign {
                return Err(ResolveError::NonRationalCenter(format!(
                    "completion needed at non-rational points of {label}"
                )));
            }
        }

        for &(c, _) in &p.axes {
            self.exceptional[c].self_intersection -= 1;
        }
        self.exceptional.push(ExceptionalData {
            np,
            nq,
            nu,
            self_intersection: -1,
        });
        self.points[index] = None;
        let mut fresh = Vec::new();
        for (c, mut d) in finite {
            d.axes.insert(0, (e, Axis::U));
            fresh.push((ChartStep::Slope(c), d));
        }
        if !vertical.factors.is_empty() || !vertical.axes.is_empty() {
            vertical.axes.insert(0, (e, Axis::V));
            fresh.push((ChartStep::InverseSlope, vertical));
        }
        for (step, d) in fresh {
            let mut history = p.history.clone();
            history.push(step);
            self.queue.push_back(self.points.len());
            self.points.push(Some(TrackedPoint {
                history,
                factors: d.factors,
                axes: d.axes,
            }));
        }
        for (side, multiplicity, rest) in irrational {
            self.bundles.push(Bundle {
                component: e,
                side,
                multiplicity,
                branches: rest.degree().expect("nonconstant"),
            });
        }
        Ok(e)
    }

    /// FIFO over tracked points, blowing up exactly those that fail normal
    /// crossings. Returns the number of blowups.
    pub fn resolve_normal_crossings(&mut self) -> Result<usize, ResolveError> {
        let mut count = 0;
        let mut settled = Vec::new();
        while let Some(i) = self.queue.pop_front() {
            let Some(p) = self.point(i) else { continue };
            if defect_of(p).is_some() {
                self.blow_up(i)?;
                count += 1;
            } else {
                settled.push(i);
            }
        }
        self.queue.extend(settled);
        Ok(count)
    }

    /// Blows up crossings of curves with opposite signs of `N` until `P/Q`
    /// lifts to a morphism. Returns the number of blowups.
    pub fn dicritical_completion(&mut self) -> Result<usize, ResolveError> {
        self.resolve_normal_crossings()?;
        let mut count = 0;
        let mut settled = Vec::new();
        while let Some(i) = self.queue.pop_front() {
            let Some(p) = self.point(i) else { continue };
            if self.needs_completion(p) || defect_of(p).is_some() {
                self.blow_up(i)?;
                count += 1;
            } else {
                settled.push(i);
            }
        }
        self.queue.extend(settled);
        Ok(count)
    }

    /// Two branches crossing at the untouched origin have no exceptional curve
    /// to hang on; one blowup separates them.
    pub fn separate_origin(&mut self) -> Result<bool, ResolveError> {
        if !self.exceptional.is_empty() {
            return Ok(false);
        }
        match self.point(0) {
            Some(p) if p.factors.len() >= 2 => {
                self.blow_up(0)?;
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    /// Exceptional curves `E1, E2, …` in creation order, then strict
    /// transforms `P1, …` and `Q1, …` in point order.
    pub fn to_graph(&self) -> ResolutionGraph {
        let mut comps: Vec<Component> = self
            .exceptional
            .iter()
            .enumerate()
            .map(|(i, d)| {
                Component::exceptional(format!("E{}", i + 1), d.np, d.nq, d.nu)
                    .with_self_intersection(d.self_intersection)
            })
            .collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let (mut np_count, mut nq_count) = (0, 0);
        let mut strict = |comps: &mut Vec<Component>, side: Side, m: u32| {
            let c = match side {
                Side::P => {
                    np_count += 1;
                    Component::strict_p(format!("P{np_count}"), m as u64)
                }
                Side::Q => {
                    nq_count += 1;
                    Component::strict_q(format!("Q{nq_count}"), m as u64)
                }
            };
            comps.push(c);
            comps.len() - 1
        };
        for (_, p) in self.points() {
            match (p.axes.as_slice(), p.factors.as_slice()) {
                ([(a, _), (b, _)], []) => edges.push((*a, *b)),
                ([(a, _)], [f]) => {
                    let s = strict(&mut comps, f.side, f.multiplicity);
                    edges.push((*a, s));
                }
                ([], [f]) => {
                    strict(&mut comps, f.side, f.multiplicity);
                }
                ([_], []) => {}
                _ => panic!("to_graph on a point that is not normal crossing"),
            }
        }
        for b in &self.bundles {
            for _ in 0..b.branches {
                let s = strict(&mut comps, b.side, b.multiplicity);
                edges.push((b.component, s));
            }
        }
        for i in 0..self.exceptional.len() {
            let signs: Vec<i64> = edges
                .iter()
                .filter_map(|&(a, b)| match (a == i, b == i) {
                    (true, _) => Some(comps[b].n()),
                    (_, true) => Some(comps[a].n()),
                    _ => None,
                })
                .collect();
            let dicritical =
                comps[i].n() == 0 && signs.iter().any(|&n| n > 0) && signs.iter().any(|&n| n < 0);
            let c = comps[i].clone().with_dicritical(dicritical);
            comps[i] = c;
        }
        let ids: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| (comps[a].id.clone(), comps[b].id.clone()))
            .collect();
        ResolutionGraph::new(comps, &ids).expect("engine output is a valid graph")
    }
}
