//! Alpha tables, residue contributions, pole certificates and alpha bounds.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::exactalg::{int, Rat};
use crate::resgraph::{alpha, Kind, ResolutionGraph};
use crate::zeta::{candidate_poles, topo_zeta_local};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PoleError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("{0} is not an exceptional component")]
    NotExceptional(String),
    #[error("{0} has N = 0")]
    ZeroN(String),
    #[error("{center} shares its candidate pole with neighbor {neighbor}")]
    SharedCandidate { center: String, neighbor: String },
    #[error("{0} is not a pole")]
    NotAPole(String),
    #[error("no certificate for pole {0}")]
    NoCertificate(String),
    #[error("scope precondition failed: {0}")]
    Scope(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    pub center: String,
    pub entries: Vec<(String, Rat)>,
}

impl AlphaTable {
    pub fn sum(&self) -> Rat {
        self.entries.iter().fold(Rat::zero(), |acc, (_, a)| acc + a)
    }
}

fn exceptional_center(g: &ResolutionGraph, id: &str) -> Result<usize, PoleError> {
    let i = g
        .index_of(id)
        .ok_or_else(|| PoleError::UnknownComponent(id.to_string()))?;
    let c = g.component(i);
    if !c.is_exceptional() {
        return Err(PoleError::NotExceptional(id.to_string()));
    }
    if c.n() == 0 {
        return Err(PoleError::ZeroN(id.to_string()));
    }
    Ok(i)
}

pub fn alpha_table(g: &ResolutionGraph, center: &str) -> Result<AlphaTable, PoleError> {
    let i = exceptional_center(g, center)?;
    Ok(AlphaTable {
        center: center.to_string(),
        entries: g
            .neighbors(i)
            .iter()
            .map(|&j| (g.component(j).id.clone(), alpha(g, i, j)))
            .collect(),
    })
}

/// `R = (1/N)(2 - k + Σ 1/α_i)`, the part of the residue at `-ν/N` coming from `center`.
pub fn residue_contribution(g: &ResolutionGraph, center: &str) -> Result<Rat, PoleError> {
    let i = exceptional_center(g, center)?;
    let c = g.component(i);
    let mut sum = int(2 - g.valence(i) as i64);
    for &j in g.neighbors(i) {
        let e = g.component(j);
        if c.nu as i64 * e.n() == e.nu as i64 * c.n() {
            return Err(PoleError::SharedCandidate {
                center: center.to_string(),
                neighbor: e.id.clone(),
            });
        }
        sum += alpha(g, i, j).recip();
    }
    Ok(sum / int(c.n()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Exceptional component meeting at least three others.
    Exceptional {
        id: String,
        valence: usize,
    },
    StrictP {
        id: String,
    },
}

impl Witness {
    pub fn id(&self) -> &str {
        match self {
            Witness::Exceptional { id, .. } | Witness::StrictP { id } => id,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeysCertificate {
    pub pole: Rat,
    pub witnesses: Vec<Witness>,
}

/// Components whose geometry can produce `pole`: exceptional ones of valence
/// at least 3 with `-ν/N = pole`, strict transforms of `P` with `-1/N = pole`.
pub fn veys_witnesses(g: &ResolutionGraph, pole: &Rat) -> Vec<Witness> {
    let mut out = Vec::new();
    for (i, c) in g.components().iter().enumerate() {
        if c.n() <= 0 {
            continue;
        }
        let loc = Rat::new((-(c.nu as i64)).into(), c.n().into());
        if &loc != pole {
            continue;
        }
        match c.kind {
            Kind::Exceptional if g.valence(i) >= 3 => out.push(Witness::Exceptional {
                id: c.id.clone(),
                valence: g.valence(i),
            }),
            Kind::StrictP => out.push(Witness::StrictP { id: c.id.clone() }),
            _ => {}
        }
    }
    out
}

pub fn veys_certificate(g: &ResolutionGraph, pole: &Rat) -> Result<VeysCertificate, PoleError> {
    let is_pole = topo_zeta_local(g)
        .poles()
        .map_err(|e| PoleError::NotAPole(e.to_string()))?
        .iter()
        .any(|p| &p.location == pole);
    if !is_pole {
        return Err(PoleError::NotAPole(crate::exactalg::format_rat(pole)));
    }
    let witnesses = veys_witnesses(g, pole);
    if witnesses.is_empty() {
        return Err(PoleError::NoCertificate(crate::exactalg::format_rat(pole)));
    }
    Ok(VeysCertificate {
        pole: pole.clone(),
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConverseEntry {
    pub location: Rat,
    pub sources: Vec<String>,
    pub is_pole: bool,
}

/// Candidates that the holomorphic criterion would predict as poles, with
/// whether they actually are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConverseAudit {
    pub entries: Vec<ConverseEntry>,
}

impl ConverseAudit {
    pub fn failures(&self) -> impl Iterator<Item = &ConverseEntry> {
        self.entries.iter().filter(|e| !e.is_pole)
    }
}

pub fn veys_converse_audit(g: &ResolutionGraph) -> ConverseAudit {
    let poles: BTreeSet<Rat> = topo_zeta_local(g)
        .poles()
        .map(|ps| ps.into_iter().map(|p| p.location).collect())
        .unwrap_or_default();
    let entries = candidate_poles(g)
        .into_iter()
        .filter_map(|cand| {
            let sources: Vec<String> = veys_witnesses(g, &cand.location)
                .iter()
                .map(|w| w.id().to_string())
                .collect();
            (!sources.is_empty()).then(|| ConverseEntry {
                is_pole: poles.contains(&cand.location),
                location: cand.location,
                sources,
            })
        })
        .collect();
    ConverseAudit { entries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaScope {
    All,
    HolomorphicMinimal,
    /// A subgraph given by member ids, including its unique vertex with
    /// neighbors outside. `None` detects every such subgraph hanging off a vertex.
    PSubgraph(Option<Vec<String>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaStatus {
    Inside,
    /// Exactly `-1` toward the only neighbor of a valence-1 center.
    EndpointMinusOne,
    /// Outside `(-1, 1)` where no bound is claimed.
    ExpectedUnbounded,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBoundEntry {
    pub center: String,
    pub neighbor: String,
    pub alpha: Rat,
    pub status: AlphaStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBoundsReport {
    pub entries: Vec<AlphaBoundEntry>,
    /// Subgraphs examined in `PSubgraph` scope, as sorted id lists.
    pub subgraphs: Vec<Vec<String>>,
}

impl AlphaBoundsReport {
    pub fn violations(&self) -> impl Iterator<Item = &AlphaBoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == AlphaStatus::Violation)
    }
}

fn strictly_inside(a: &Rat) -> bool {
    a > &-Rat::one() && a < &Rat::one()
}

pub fn alpha_bounds_audit(
    g: &ResolutionGraph,
    scope: &AlphaScope,
) -> Result<AlphaBoundsReport, PoleError> {
    match scope {
        AlphaScope::All => Ok(AlphaBoundsReport {
            entries: all_alphas(g, |a, _| {
                if strictly_inside(a) {
                    AlphaStatus::Inside
                } else {
                    AlphaStatus::ExpectedUnbounded
                }
            }),
            subgraphs: Vec::new(),
        }),
        AlphaScope::HolomorphicMinimal => {
            if let Some(c) = g.components().iter().find(|c| c.nq != 0) {
                return Err(PoleError::Scope(format!("{} has NQ != 0", c.id)));
            }
            Ok(AlphaBoundsReport {
                entries: all_alphas(g, |a, valence| match valence {
                    1 if a == &-Rat::one() => AlphaStatus::EndpointMinusOne,
                    1 => AlphaStatus::Violation,
                    _ if strictly_inside(a) => AlphaStatus::Inside,
                    _ => AlphaStatus::Violation,
                }),
                subgraphs: Vec::new(),
            })
        }
        AlphaScope::PSubgraph(members) => {
            let subgraphs = match members {
                Some(ids) => {
                    let mut set = Vec::new();
                    for id in ids {
                        set.push(
                            g.index_of(id)
                                .ok_or_else(|| PoleError::UnknownComponent(id.clone()))?,
                        );
                    }
                    check_p_subgraph(g, &set)?;
                    vec![set]
                }
                None => detect_p_subgraphs(g),
            };
            let mut entries = Vec::new();
            for sub in &subgraphs {
                for &i in sub {
                    if g.valence(i) < 2 {
                        continue;
                    }
                    for &j in g.neighbors(i) {
                        if !sub.contains(&j) {
                            continue;
                        }
                        let a = alpha(g, i, j);
                        let status = if strictly_inside(&a) {
                            AlphaStatus::Inside
                        } else {
                            AlphaStatus::Violation
                        };
                        entries.push(AlphaBoundEntry {
                            center: g.component(i).id.clone(),
                            neighbor: g.component(j).id.clone(),
                            alpha: a,
                            status,
                        });
                    }
                }
            }
            let subgraphs = subgraphs
                .iter()
                .map(|s| {
                    let mut ids: Vec<String> =
                        s.iter().map(|&i| g.component(i).id.clone()).collect();
                    ids.sort();
                    ids
                })
                .collect();
            Ok(AlphaBoundsReport { entries, subgraphs })
        }
    }
}

fn all_alphas(
    g: &ResolutionGraph,
    classify: impl Fn(&Rat, usize) -> AlphaStatus,
) -> Vec<AlphaBoundEntry> {
    let mut out = Vec::new();
    for (i, c) in g.components().iter().enumerate() {
        if !c.is_exceptional() || c.n() == 0 {
            continue;
        }
        for &j in g.neighbors(i) {
            let a = alpha(g, i, j);
            out.push(AlphaBoundEntry {
                center: c.id.clone(),
                neighbor: g.component(j).id.clone(),
                status: classify(&a, g.valence(i)),
                alpha: a,
            });
        }
    }
    out
}

fn check_p_subgraph(g: &ResolutionGraph, set: &[usize]) -> Result<(), PoleError> {
    let fail = |m: &str| Err(PoleError::Scope(m.to_string()));
    if set.is_empty() {
        return fail("empty subgraph");
    }
    for &i in set {
        let c = g.component(i);
        if !c.is_exceptional() {
            return fail(&format!("{} is a strict transform", c.id));
        }
        if c.n() <= 0 {
            return fail(&format!("f is not 0 along {}", c.id));
        }
    }
    let boundary = set
        .iter()
        .filter(|&&i| g.neighbors(i).iter().any(|j| !set.contains(j)))
        .count();
    if boundary != 1 {
        return fail(&format!("{boundary} vertices meet the outside, expected 1"));
    }
    let mut seen = vec![set[0]];
    let mut stack = vec![set[0]];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if set.contains(&w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    if seen.len() != set.len() {
        return fail("subgraph is not connected");
    }
    Ok(())
}

/// For each vertex `v` with `N > 0` and each branch at `v` made only of
/// exceptional components with `N > 0`, the subgraph branch ∪ {v}, provided
/// `v` still has a neighbor outside it.
fn detect_p_subgraphs(g: &ResolutionGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for v in 0..g.len() {
        let cv = g.component(v);
        if !cv.is_exceptional() || cv.n() <= 0 || g.valence(v) < 2 {
            continue;
        }
        for &start in g.neighbors(v) {
            let mut branch = vec![start];
            let mut stack = vec![(start, v)];
            let mut ok = true;
            while let Some((x, parent)) = stack.pop() {
                let c = g.component(x);
                if !c.is_exceptional() || c.n() <= 0 {
                    ok = false;
                    break;
                }
                for &y in g.neighbors(x) {
                    if y != parent {
                        branch.push(y);
                        stack.push((y, x));
                    }
                }
            }
            if ok {
                branch.push(v);
                branch.sort_unstable();
                out.push(branch);
            }
        }
    }
    out
}
