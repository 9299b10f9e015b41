//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{rat, Rat};

/// A polynomial `c[0] + c[1] s + ... + c[n] s^n` with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The linear polynomial `a s + b`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::new(vec![b, a])
    }

    /// `s - root`.
    pub fn monic_linear(root: &Rat) -> Self {
        Poly::new(vec![-root.clone(), Rat::one()])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, s: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64, 1))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut quot = vec![Rat::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient when `divisor` is known to divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// `p(s + shift)`.
    pub fn shift(&self, shift: &Rat) -> Poly {
        let mut acc = Poly::zero();
        let lin = Poly::linear(Rat::one(), shift.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Integer primitive form: `self = content * prim` with `prim` having
    /// coprime integer coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, den), prim)
    }

    /// Multiplicity of `root` as a root of `self` (zero polynomial excluded).
    pub fn root_multiplicity(&self, root: &Rat) -> u32 {
        let lin = Poly::monic_linear(root);
        let mut cur = self.clone();
        let mut m = 0;
        while !cur.is_zero() && cur.eval(root).is_zero() {
            cur = cur.exact_div(&lin).expect("root implies linear factor");
            m += 1;
        }
        m
    }

    /// Renders in the variable `var` with integer-friendly formatting, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mag_str = super::rat::format_rat(&mag);
            match i {
                0 => out.push_str(&mag_str),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag_str);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("s"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("s"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Integer pseudo-remainder of `a` by `b` (coefficients ascending, both trimmed).
fn pseudo_rem_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &lr * bk;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

/// Monic greatest common divisor. `gcd(0, 0)` is defined as `0`.
///
/// Primitive remainder sequence over ℤ: the rational Euclidean algorithm
/// blows up coefficient sizes on the high-degree contents met in ℚ[x][y].
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let mut x = a.primitive_integer().1;
    let mut y = b.primitive_integer().1;
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return Poly::one();
        }
        let r = primitive_ints(pseudo_rem_int(&x, &y));
        x = y;
        y = r;
    }
    Poly::new(x.into_iter().map(Rat::from_integer).collect()).monic()
}

/// Square-free factorization (Yun): returns `(factor, multiplicity)` with
/// monic, pairwise coprime, square-free factors. The constant is dropped.
pub fn square_free_decomposition(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.derivative();
    let g = poly_gcd(p, &dp);
    let mut c = p.exact_div(&g).expect("gcd divides").monic();
    let mut d = &dp.exact_div(&g).expect("gcd divides") - &c.derivative();
    let mut i = 1;
    while !c.is_constant() {
        let a = poly_gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.exact_div(&a).expect("gcd divides");
        d = &d.exact_div(&a).expect("gcd divides") - &c.derivative();
        i += 1;
    }
    out
}

/// `num/den` reduced by their gcd, with coprime integer coefficients and a
/// positive leading denominator coefficient: `(20s^2+33s+12)/(60s^3+...)`.
pub fn render_quotient(num: &Poly, den: &Poly, var: &str) -> String {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return "0".to_string();
    }
    let g = poly_gcd(num, den);
    let (cn, n) = num.exact_div(&g).expect("gcd divides").primitive_integer();
    let (cd, d) = den.exact_div(&g).expect("gcd divides").primitive_integer();
    let r = cn / cd;
    let lift = |ints: Vec<BigInt>, k: &BigInt| {
        Poly::new(ints.into_iter().map(|c| Rat::from_integer(c * k)).collect())
    };
    let n = lift(n, r.numer());
    let d = lift(d, r.denom());
    let wrap = |p: &Poly| {
        let s = p.render(var);
        if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    if d.is_constant() && d.coeff(0).is_one() {
        n.render(var)
    } else {
        format!("{}/{}", wrap(&n), wrap(&d))
    }
}

/// Every rational root of `p` with its multiplicity, sorted ascending, plus the
/// monic cofactor that has no rational roots. `p` must be nonzero.
pub fn rational_roots(p: &Poly) -> Result<(Vec<(Rat, u32)>, Poly), RootError> {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let mut rest = p.monic();
    let mut roots = Vec::new();
    let zero_mult = rest.root_multiplicity(&Rat::zero());
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
        rest = rest
            .exact_div(&Poly::monomial(Rat::one(), zero_mult as usize))
            .expect("zero root");
    }
    if rest.degree().unwrap_or(0) > 0 {
        // Work on the square-free part so candidates are tested once.
        let sqf: Poly = square_free_decomposition(&rest)
            .into_iter()
            .fold(Poly::one(), |acc, (f, _)| &acc * &f);
        let (_, ints) = sqf.primitive_integer();
        let a0 = ints.first().cloned().unwrap_or_else(BigInt::zero).abs();
        let an = ints.last().cloned().unwrap_or_else(BigInt::zero).abs();
        let nums = divisors(&a0)?;
        let dens = divisors(&an)?;
        let mut cands = Vec::new();
        for q in &dens {
            for pnum in &nums {
                if pnum.gcd(q).is_one() {
                    let r = Rat::new(pnum.clone(), q.clone());
                    cands.push(-r.clone());
                    cands.push(r);
                }
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if sqf.eval(&r).is_zero() {
                let m = rest.root_multiplicity(&r);
                let lin = Poly::monic_linear(&r).pow(m);
                rest = rest.exact_div(&lin).expect("root");
                roots.push((r, m));
            }
        }
    }
    roots.sort();
    Ok((roots, rest.monic()))
}

/// Rational root extraction could not factor a coefficient.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("coefficient {0} too large for rational root extraction")]
pub struct RootError(pub String);

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, RootError> {
    use num_traits::ToPrimitive;
    let Some(v) = n.to_u64() else {
        return Err(RootError(n.to_string()));
    };
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for (p, e) in super::rat::factor_u64(v) {
        factors.push((p, e));
    }
    let mut divs = vec![1u64];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigInt::from).collect())
}
