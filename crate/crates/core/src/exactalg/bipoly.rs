//! Sparse bivariate polynomials over ℚ, with the gcd and square-free machinery
//! and the affine-chart substitutions used by point blowups.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, square_free_decomposition, Poly};
use super::rat::{format_rat, int, Rat};

/// `Σ c_{ij} x^i y^j`, keyed by `(i, j)`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::from_terms([(c, 0, 0)])
    }

    pub fn x() -> Self {
        BiPoly::from_terms([(Rat::one(), 1, 0)])
    }

    pub fn y() -> Self {
        BiPoly::from_terms([(Rat::one(), 0, 1)])
    }

    /// Sums `(coefficient, deg_x, deg_y)` triples; repeated monomials add up.
    pub fn from_terms<I: IntoIterator<Item = (Rat, u32, u32)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (c, i, j) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        BiPoly::from_terms(terms.iter().map(|&(c, i, j)| (int(c), i, j)))
    }

    fn add_term(&mut self, c: Rat, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Lowest total degree of a monomial (multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * x.pow(i as i32) * y.pow(j as i32))
            .sum()
    }

    /// `h(t) = F_m(1, t)` where `F_m` is the degree-`m` homogeneous part.
    pub fn cone_in_slope(&self, m: u32) -> Poly {
        let mut coeffs = vec![Rat::zero(); m as usize + 1];
        for (&(i, j), c) in &self.terms {
            if i + j == m {
                coeffs[j as usize] = c.clone();
            }
        }
        Poly::new(coeffs)
    }

    /// Strict transform in the chart `(x, y) -> (x, x y)`, dividing by `x^m`.
    pub fn chart_slope(&self, m: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + j - m, j), c.clone()))
                .collect(),
        }
    }

    /// Strict transform in the chart `(x, y) -> (x y, y)`, dividing by `y^m`.
    pub fn chart_inverse_slope(&self, m: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, i + j - m), c.clone()))
                .collect(),
        }
    }

    /// `F(x, y + shift)`.
    pub fn translate_y(&self, shift: &Rat) -> BiPoly {
        if shift.is_zero() {
            return self.clone();
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let mut binom = BigInt::one();
            for k in 0..=j {
                // C(j, k) shift^(j-k) y^k
                let coeff = c * Rat::from_integer(binom.clone()) * shift.pow((j - k) as i32);
                out.add_term(coeff, i, k);
                binom = binom * BigInt::from(j - k) / BigInt::from(k + 1);
            }
        }
        out
    }

    pub fn swap_xy(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    pub fn derivative_y(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| (c * int(j as i64), i, j - 1)),
        )
    }

    /// View as a polynomial in `y` with coefficients in `ℚ[x]`.
    fn to_y_coeffs(&self) -> Vec<Poly> {
        let deg = match self.degree_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Rat::zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(Poly::new).collect()
    }

    fn from_y_coeffs(rows: &[Poly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term(c.clone(), i as u32, j as u32);
            }
        }
        out
    }

    fn from_x_poly(p: &Poly) -> BiPoly {
        BiPoly::from_y_coeffs(std::slice::from_ref(p))
    }

    /// Scaled so that the lexicographically largest monomial has coefficient 1.
    pub fn normalized(&self) -> BiPoly {
        match self.terms.iter().next_back() {
            None => BiPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Quotient when `divisor` divides `self` exactly in `ℚ[x, y]`.
    pub fn exact_div(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let b = divisor.to_y_coeffs();
        let db = b.len().checked_sub(1)?;
        let mut r = self.to_y_coeffs();
        let mut q = vec![Poly::zero(); r.len().saturating_sub(db).max(1)];
        while let Some(dr) = trimmed_degree(&r) {
            if dr < db {
                return None;
            }
            let lq = r[dr].exact_div(&b[db])?;
            for (k, bk) in b.iter().enumerate() {
                let idx = dr - db + k;
                r[idx] = &r[idx] - &(&lq * bk);
            }
            q[dr - db] = lq;
        }
        Some(BiPoly::from_y_coeffs(&q))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mut mono = String::new();
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => mono.push_str(var),
                    _ => mono.push_str(&format!("{var}^{e}")),
                }
            }
            if mono.is_empty() {
                out.push_str(&format_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rat(&mag));
                    out.push('*');
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

fn trimmed_degree(rows: &[Poly]) -> Option<usize> {
    rows.iter().rposition(|p| !p.is_zero())
}

fn content(rows: &[Poly]) -> Poly {
    let mut acc = Poly::zero();
    for p in rows {
        acc = poly_gcd(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    acc
}

fn primitive(rows: &[Poly]) -> Vec<Poly> {
    let c = content(rows);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<Poly> = rows
        .iter()
        .map(|p| p.exact_div(&c).expect("content divides"))
        .collect();
    while out.last().is_some_and(Poly::is_zero) {
        out.pop();
    }
    out
}

fn x_degree(rows: &[Poly]) -> usize {
    rows.iter().filter_map(Poly::degree).max().unwrap_or(0)
}

/// Lagrange basis over distinct nodes.
fn lagrange_basis(nodes: &[Rat]) -> Vec<Poly> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut l = Poly::one();
            for (j, xj) in nodes.iter().enumerate() {
                if i != j {
                    let scale = Rat::one() / (xi - xj);
                    l = &l * &Poly::linear(scale.clone(), -(xj * &scale));
                }
            }
            l
        })
        .collect()
}

/// Gcd of primitive `p`, `q` by specialization at `x = x0` and interpolation.
///
/// Where both leading coefficients survive, the monic univariate gcd scaled by
/// `γ(x0)`, `γ = gcd(lc p, lc q)`, is the specialization of `(γ / lc G)·G`,
/// unless `x0` is one of finitely many points where the degree jumps.
/// Samples of minimal degree are interpolated and confirmed by trial division.
fn interpolated_gcd(p: &[Poly], q: &[Poly]) -> Vec<Poly> {
    let lp = p.last().expect("nonzero");
    let lq = q.last().expect("nonzero");
    let gamma = poly_gcd(lp, lq);
    let needed = x_degree(p).min(x_degree(q)) + gamma.degree().unwrap_or(0) + 1;
    let (pb, qb) = (BiPoly::from_y_coeffs(p), BiPoly::from_y_coeffs(q));
    let mut samples: Vec<(Rat, Poly)> = Vec::new();
    let mut degree = usize::MAX;
    for k in 1i64.. {
        let x0 = int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        if lp.eval(&x0).is_zero() || lq.eval(&x0).is_zero() {
            continue;
        }
        let at = |rows: &[Poly]| Poly::new(rows.iter().map(|c| c.eval(&x0)).collect());
        let g0 = poly_gcd(&at(p), &at(q));
        let d = g0.degree().expect("nonzero");
        if d == 0 {
            return vec![Poly::one()];
        }
        if d > degree {
            continue;
        }
        if d < degree {
            samples.clear();
            degree = d;
        }
        samples.push((x0.clone(), g0.monic().scale(&gamma.eval(&x0))));
        if samples.len() < needed {
            continue;
        }
        let nodes: Vec<Rat> = samples.iter().map(|(x, _)| x.clone()).collect();
        let basis = lagrange_basis(&nodes);
        let rows: Vec<Poly> = (0..=d)
            .map(|j| {
                basis
                    .iter()
                    .zip(&samples)
                    .fold(Poly::zero(), |acc, (l, (_, g))| {
                        &acc + &l.scale(&g.coeff(j))
                    })
            })
            .collect();
        let candidate = primitive(&rows);
        let c = BiPoly::from_y_coeffs(&candidate);
        if pb.exact_div(&c).is_some() && qb.exact_div(&c).is_some() {
            return candidate;
        }
        samples.remove(0);
    }
    unreachable!()
}

/// Greatest common divisor in `ℚ[x, y]`, normalized; `gcd(0, 0) = 0`.
pub fn bivariate_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let ra = a.to_y_coeffs();
    let rb = b.to_y_coeffs();
    let c = poly_gcd(&content(&ra), &content(&rb));
    let p = primitive(&ra);
    let q = primitive(&rb);
    let g = BiPoly::from_y_coeffs(&interpolated_gcd(&p, &q));
    (&g * &BiPoly::from_x_poly(&c)).normalized()
}

/// Square-free decomposition `F = const · ∏ A_k^k` with square-free,
/// pairwise coprime, nonconstant `A_k`. Factors may share a multiplicity.
pub fn bivariate_square_free(f: &BiPoly) -> Vec<(BiPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let rows = f.to_y_coeffs();
    let cont = content(&rows);
    for (factor, k) in square_free_decomposition(&cont) {
        out.push((BiPoly::from_x_poly(&factor).normalized(), k));
    }
    let prim = BiPoly::from_y_coeffs(&primitive(&rows));
    if prim.degree_y().unwrap_or(0) == 0 {
        return out;
    }
    let dy = prim.derivative_y();
    let g = bivariate_gcd(&prim, &dy);
    let mut c = prim.exact_div(&g).expect("gcd divides");
    let mut d = &dy.exact_div(&g).expect("gcd divides") - &c.derivative_y();
    let mut i = 1;
    while c.degree_y().unwrap_or(0) > 0 {
        let a = bivariate_gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.normalized(), i));
        }
        c = c.exact_div(&a).expect("gcd divides");
        d = &d.exact_div(&a).expect("gcd divides") - &c.derivative_y();
        i += 1;
    }
    out
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.render())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(-c.clone(), i, j);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(a * b, i + k, j + l);
            }
        }
        out
    }
}
