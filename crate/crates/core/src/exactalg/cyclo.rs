//! Formal products `∏ (1 - t^a)^{e_a}` and roots of unity.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use super::poly::{render_quotient, Poly};
use super::rat::Rat;

/// `∏_a (1 - t^a)^{e_a}` with nonzero integer exponents. Empty is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloProduct {
    exponents: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        CycloProduct::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut z = CycloProduct::one();
        for (a, e) in pairs {
            z.multiply_factor(a, e);
        }
        z
    }

    /// Multiplies by `(1 - t^a)^e`.
    pub fn multiply_factor(&mut self, a: u64, e: i64) {
        assert!(a > 0, "cyclotomic factor exponent must be positive");
        let entry = self.exponents.entry(a).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exponents.remove(&a);
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// Zero (positive) or pole (negative) multiplicity of `xi`: `Σ_{n | a} e_a`.
    pub fn multiplicity_at(&self, xi: &RootOfUnity) -> i64 {
        self.exponents
            .iter()
            .filter(|(a, _)| *a % xi.order() == 0)
            .map(|(_, e)| e)
            .sum()
    }

    /// Expanded and reduced: `(1-t^5)/(1-t^10)` becomes `1/(t^5+1)`.
    pub fn render_expanded(&self) -> String {
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (&a, &e) in &self.exponents {
            let mut c = vec![Rat::zero(); a as usize + 1];
            c[0] = Rat::one();
            c[a as usize] = -Rat::one();
            let f = Poly::new(c).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        }
        render_quotient(&num, &den, "t")
    }

    /// `(1-t^5)(1-t^15)/((1-t^10)(1-t^30))` style rendering.
    pub fn render(&self) -> String {
        let part = |positive: bool| -> Vec<String> {
            self.exponents
                .iter()
                .filter(|(_, e)| (**e > 0) == positive)
                .map(|(a, e)| {
                    let base = if *a == 1 {
                        "(1-t)".to_string()
                    } else {
                        format!("(1-t^{a})")
                    };
                    match e.abs() {
                        1 => base,
                        k => format!("{base}^{k}"),
                    }
                })
                .collect()
        };
        let num = part(true);
        let den = part(false);
        let num_str = if num.is_empty() {
            "1".to_string()
        } else {
            num.concat()
        };
        match den.len() {
            0 => num_str,
            1 => format!("{num_str}/{}", den[0]),
            _ => format!("{num_str}/({})", den.concat()),
        }
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `exp(2πi k/n)` stored with `0 <= k < n` and `gcd(k, n) = 1`, so `n` is the exact order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    k: u64,
    n: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u64) -> Self {
        assert!(n > 0, "root of unity needs a positive denominator");
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        let g = if k == 0 { n } else { g };
        RootOfUnity { k: k / g, n: n / g }
    }

    /// `exp(2πi s)` for a rational `s`.
    pub fn from_exponent(s: &Rat) -> Self {
        let n = s.denom().to_u64().expect("denominator fits in u64");
        let k = (s.numer() % s.denom()).to_i64().expect("fits");
        RootOfUnity::new(k, n)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.n
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "1")
        } else {
            write!(f, "exp(2πi·{}/{})", self.k, self.n)
        }
    }
}
