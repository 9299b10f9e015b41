//! Exact rational functions in one variable whose denominators split into
//! rational linear factors.
//!
//! A [`RationalFunction`] is kept in reduced form: a numerator over ℚ and the
//! multiset of roots of the monic reduced denominator. Sums of terms of the
//! form `c / ∏ (N s + ν)` are accumulated root by root, so reduction only has
//! to test whether the numerator vanishes at a known root; no polynomial gcd
//! is needed on that path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, rational_roots, Poly, RootError};
use super::rat::{format_rat, int, Rat};

/// One summand `coefficient / ∏ (N s + ν)`. Factors with `N = 0` are the constant `ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub factors: Vec<(i64, i64)>,
}

impl Term {
    pub fn new(coefficient: i64, factors: Vec<(i64, i64)>) -> Self {
        Term {
            coefficient,
            factors,
        }
    }

    fn eval(&self, s: &Rat) -> Option<Rat> {
        let mut den = Rat::one();
        for &(n, nu) in &self.factors {
            den *= int(n) * s + int(nu);
        }
        (!den.is_zero()).then(|| int(self.coefficient) / den)
    }
}

/// A primitive integer linear form `n s + nu` with `n > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFactor {
    pub n: BigInt,
    pub nu: BigInt,
}

impl LinearFactor {
    /// The primitive form vanishing at `root`.
    pub fn from_root(root: &Rat) -> Self {
        LinearFactor {
            n: root.denom().clone(),
            nu: -root.numer().clone(),
        }
    }

    pub fn root(&self) -> Rat {
        Rat::new(-self.nu.clone(), self.n.clone())
    }

    pub fn render(&self) -> String {
        let var = if self.n.is_one() {
            "s".to_string()
        } else {
            format!("{}s", self.n)
        };
        if self.nu.is_zero() {
            var
        } else if self.nu.is_negative() {
            format!("{var}-{}", self.nu.abs())
        } else {
            format!("{var}+{}", self.nu)
        }
    }
}

/// A pole of a rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pole {
    pub location: Rat,
    pub order: u32,
    /// `lim (s - location)^order f(s)`.
    pub leading_coefficient: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalFunctionError {
    #[error("denominator has a factor without rational roots: {0}")]
    NonLinearDenominator(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// Adds `scalar / ∏ (s - r)^m` to the expansion. Two distinct roots split by
/// `1/((s-a)(s-b)) = (1/(s-a) - 1/(s-b)) / (a - b)`, lowering the power of
/// `s - b` in the first piece and of `s - a` in the second.
fn split_fraction(
    scalar: Rat,
    roots: &[(Rat, u32)],
    constant: &mut Rat,
    fractions: &mut BTreeMap<(Rat, u32), Rat>,
) {
    let live: Vec<(Rat, u32)> = roots.iter().filter(|(_, m)| *m > 0).cloned().collect();
    match live.as_slice() {
        [] => *constant += scalar,
        [(r, m)] => *fractions.entry((r.clone(), *m)).or_insert_with(Rat::zero) += scalar,
        [(a, i), (b, j), ..] => {
            let c = &scalar / (a - b);
            let mut left = live.clone();
            left[1].1 = j - 1;
            split_fraction(c.clone(), &left, constant, fractions);
            let mut right = live.clone();
            right[0].1 = i - 1;
            split_fraction(-c, &right, constant, fractions);
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    /// Roots of the reduced monic denominator with multiplicities.
    roots: BTreeMap<Rat, u32>,
    /// Monic part of the reduced denominator without rational roots; `1`
    /// for every function assembled from linear terms.
    residual: Poly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            numerator: Poly::zero(),
            roots: BTreeMap::new(),
            residual: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RationalFunction {
            numerator: Poly::constant(c),
            roots: BTreeMap::new(),
            residual: Poly::one(),
        }
    }

    /// Exact sum of `terms`, reduced.
    ///
    /// Accumulates partial fractions `c_{r,k} / (s - r)^k`. The expansion is
    /// unique, so the top nonzero `k` at each root is its multiplicity in the
    /// reduced denominator and no cancellation pass is needed.
    pub fn sum_of_terms(terms: &[Term]) -> Self {
        let mut constant = Rat::zero();
        let mut fractions: BTreeMap<(Rat, u32), Rat> = BTreeMap::new();
        for t in terms.iter().filter(|t| t.coefficient != 0) {
            let mut scalar = int(t.coefficient);
            let mut roots: BTreeMap<Rat, u32> = BTreeMap::new();
            for &(n, nu) in &t.factors {
                if n == 0 {
                    scalar /= int(nu);
                } else {
                    scalar /= int(n);
                    *roots
                        .entry(Rat::new(BigInt::from(-nu), BigInt::from(n)))
                        .or_insert(0) += 1;
                }
            }
            let roots: Vec<(Rat, u32)> = roots.into_iter().collect();
            split_fraction(scalar, &roots, &mut constant, &mut fractions);
        }
        fractions.retain(|_, c| !c.is_zero());
        let mut top: BTreeMap<Rat, u32> = BTreeMap::new();
        for (r, k) in fractions.keys() {
            let m = top.entry(r.clone()).or_insert(0);
            *m = (*m).max(*k);
        }
        let mut den = Poly::one();
        for (r, &m) in &top {
            den = &den * &Poly::monic_linear(r).pow(m);
        }
        let mut numerator = den.scale(&constant);
        for (r, &m) in &top {
            // Σ_k c_{r,k} (s - r)^{m - k} times the other root powers.
            let lin = Poly::monic_linear(r);
            let mut local = Poly::zero();
            for k in 1..=m {
                local = &local * &lin;
                if let Some(c) = fractions.get(&(r.clone(), k)) {
                    local = &local + &Poly::constant(c.clone());
                }
            }
            let others = den.exact_div(&lin.pow(m)).expect("root power divides");
            numerator = &numerator + &(&others * &local);
        }
        let acc = RationalFunction {
            numerator,
            roots: top,
            residual: Poly::one(),
        };
        debug_assert!(acc.agrees_with_terms(terms));
        acc
    }

    /// Builds `num / den` in reduced form.
    pub fn from_polys(num: &Poly, den: &Poly) -> Result<Self, RationalFunctionError> {
        if den.is_zero() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = poly_gcd(num, den);
        let n = num.exact_div(&g).expect("gcd divides");
        let d = den.exact_div(&g).expect("gcd divides");
        let lead = d.leading();
        let (roots, residual) = rational_roots(&d)?;
        Ok(RationalFunction {
            numerator: n.scale(&lead.recip()),
            roots: roots.into_iter().collect(),
            residual,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Reduced numerator, paired with the monic [`denominator`](Self::denominator).
    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    /// Reduced monic denominator.
    pub fn denominator(&self) -> Poly {
        self.roots
            .iter()
            .fold(self.residual.clone(), |acc, (r, &m)| {
                &acc * &Poly::monic_linear(r).pow(m)
            })
    }

    /// Surviving primitive linear factors, sorted by root.
    pub fn denominator_factors(&self) -> Vec<(LinearFactor, u32)> {
        self.roots
            .iter()
            .map(|(r, &m)| (LinearFactor::from_root(r), m))
            .collect()
    }

    /// Factored integer form `numerator / (scalar · ∏ factor^m)` where the
    /// numerator has coprime integer coefficients and positive leading term.
    /// Only meaningful when the denominator splits.
    pub fn integer_form(&self) -> (Rat, Vec<BigInt>, Vec<(LinearFactor, u32)>) {
        let factors = self.denominator_factors();
        let mut lifted = self.numerator.clone();
        for (f, m) in &factors {
            lifted = lifted.scale(&Rat::from_integer(f.n.clone()).pow(*m as i32));
        }
        let (residual_content, _) = self.residual.primitive_integer();
        lifted = lifted.scale(&residual_content.recip());
        let (content, ints) = lifted.primitive_integer();
        let scalar = if content.is_zero() {
            Rat::one()
        } else {
            content.recip()
        };
        (scalar, ints, factors)
    }

    pub fn eval(&self, s: &Rat) -> Option<Rat> {
        let den = self.denominator().eval(s);
        (!den.is_zero()).then(|| self.numerator.eval(s) / den)
    }

    /// Poles sorted ascending by location.
    pub fn poles(&self) -> Result<Vec<Pole>, RationalFunctionError> {
        if !self.residual.is_constant() {
            return Err(RationalFunctionError::NonLinearDenominator(
                self.residual.render("s"),
            ));
        }
        Ok(self
            .roots
            .iter()
            .map(|(r, &m)| {
                let mut den = Rat::one();
                for (other, &k) in &self.roots {
                    if other != r {
                        den *= (r - other).pow(k as i32);
                    }
                }
                Pole {
                    location: r.clone(),
                    order: m,
                    leading_coefficient: self.numerator.eval(r) / den,
                }
            })
            .collect())
    }

    /// Compares the reduced form against direct evaluation of `terms` at
    /// `s ∈ {0, 1, -2}`, skipping points where some term is undefined.
    pub fn agrees_with_terms(&self, terms: &[Term]) -> bool {
        [int(0), int(1), int(-2)].iter().all(|s| {
            let direct: Option<Rat> = terms
                .iter()
                .try_fold(Rat::zero(), |acc, t| t.eval(s).map(|v| acc + v));
            match direct {
                None => true,
                Some(v) => self.eval(s) == Some(v),
            }
        })
    }

    /// Reduced quotient of expanded integer polynomials.
    pub fn render_expanded(&self) -> String {
        super::poly::render_quotient(&self.numerator, &self.denominator(), "s")
    }

    /// Exact rendering, e.g. `(20s^2+33s+12)/(15(s+1)(2s+1)^2)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.roots.is_empty() && self.residual.is_constant() {
            return self.numerator.render("s");
        }
        let (scalar, ints, factors) = self.integer_form();
        // a fractional scalar a/b moves its b into the numerator
        let lift = scalar.denom().clone();
        let scalar = Rat::from_integer(scalar.numer().clone());
        let ints: Vec<BigInt> = ints.iter().map(|c| c * &lift).collect();
        let num = Poly::new(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
        let nonzero_terms = ints.iter().filter(|c| !c.is_zero()).count();
        let num_str = if nonzero_terms > 1 {
            format!("({})", num.render("s"))
        } else {
            num.render("s")
        };
        let sign = if scalar.is_negative() { "-" } else { "" };
        let mag = scalar.abs();
        let mut den = String::new();
        if !mag.is_one() {
            den.push_str(&format_rat(&mag));
        }
        for (f, m) in &factors {
            den.push_str(&format!("({})", f.render()));
            if *m > 1 {
                den.push_str(&format!("^{m}"));
            }
        }
        if !self.residual.is_constant() {
            let (_, prim) = self.residual.primitive_integer();
            let prim = Poly::new(prim.into_iter().map(Rat::from_integer).collect());
            den.push_str(&format!("({})", prim.render("s")));
        }
        let single = mag.is_one() && factors.len() + usize::from(!self.residual.is_constant()) == 1;
        if single {
            format!("{sign}{num_str}/{den}")
        } else {
            format!("{sign}{num_str}/({den})")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.render())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
