//! Germ pairs `f = P/Q` and their JSON file format.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactalg::{bivariate_gcd, format_rat, parse_rat, BiPoly, Rat};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("germ syntax: {0}")]
    Syntax(String),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("not a germ pair: {0}")]
    NotAGermPair(String),
    #[error("P - aQ shares a factor with Q")]
    NotCoprime,
    #[error("shift value must be nonzero")]
    ZeroShift,
}

/// Coprime `P`, `Q` with `P(0,0) = 0` and `Q(0,0) = 0`, or `Q` a nonzero
/// constant for holomorphic germs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermPair {
    p: BiPoly,
    q: BiPoly,
}

impl GermPair {
    pub fn new(p: BiPoly, q: BiPoly) -> Result<Self, GermError> {
        let bad = |s: &str| Err(GermError::NotAGermPair(s.to_string()));
        if p.is_zero() {
            return bad("P is zero");
        }
        if !p.constant_term().is_zero() {
            return bad("P(0,0) != 0");
        }
        if q.is_zero() {
            return bad("Q is zero");
        }
        if !q.is_constant() && !q.constant_term().is_zero() {
            return bad("Q(0,0) != 0 and Q is not constant");
        }
        if !bivariate_gcd(&p, &q).is_constant() {
            return bad("P and Q share a factor");
        }
        Ok(GermPair { p, q })
    }

    pub fn p(&self) -> &BiPoly {
        &self.p
    }

    pub fn q(&self) -> &BiPoly {
        &self.q
    }

    pub fn is_holomorphic(&self) -> bool {
        self.q.is_constant()
    }
}

/// `(P - aQ, Q)`: the germ whose zero fibre is the `a`-fibre of `f`.
pub fn shift_value(g: &GermPair, a: &Rat) -> Result<GermPair, GermError> {
    if a.is_zero() {
        return Err(GermError::ZeroShift);
    }
    let p = &g.p - &g.q.scale(a);
    if !g.q.is_constant() && !bivariate_gcd(&p, &g.q).is_constant() {
        return Err(GermError::NotCoprime);
    }
    GermPair::new(p, g.q.clone())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GermFile {
    #[serde(rename = "P")]
    p: Vec<TermRecord>,
    #[serde(rename = "Q")]
    q: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    c: String,
    ex: u32,
    ey: u32,
}

fn to_poly(terms: &[TermRecord]) -> Result<BiPoly, GermError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = parse_rat(&t.c).ok_or_else(|| GermError::Coefficient(t.c.clone()))?;
        out.push((c, t.ex, t.ey));
    }
    Ok(BiPoly::from_terms(out))
}

fn to_records(p: &BiPoly) -> Vec<TermRecord> {
    p.terms()
        .map(|(&(ex, ey), c)| TermRecord {
            c: format_rat(c),
            ex,
            ey,
        })
        .collect()
}

pub fn parse_germ(bytes: &[u8]) -> Result<GermPair, GermError> {
    let file: GermFile =
        serde_json::from_slice(bytes).map_err(|e| GermError::Syntax(e.to_string()))?;
    GermPair::new(to_poly(&file.p)?, to_poly(&file.q)?)
}

/// Pretty JSON with terms sorted by `(ex, ey)` and a trailing newline.
pub fn serialize_germ(g: &GermPair) -> String {
    let file = GermFile {
        p: to_records(&g.p),
        q: to_records(&g.q),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("germ serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn invariants() {
        assert!(GermPair::new(bp(&[(1, 0, 1)]), bp(&[(1, 1, 0)])).is_ok());
        assert!(GermPair::new(bp(&[(1, 0, 1)]), bp(&[(3, 0, 0)]))
            .unwrap()
            .is_holomorphic());
        let e = |p, q| GermPair::new(p, q).unwrap_err();
        assert!(matches!(
            e(bp(&[(1, 0, 0), (1, 0, 1)]), bp(&[(1, 1, 0)])),
            GermError::NotAGermPair(_)
        ));
        assert!(matches!(
            e(bp(&[(1, 0, 1)]), bp(&[(1, 0, 0), (1, 1, 0)])),
            GermError::NotAGermPair(_)
        ));
        assert!(matches!(
            e(bp(&[(1, 1, 1)]), bp(&[(1, 1, 2)])),
            GermError::NotAGermPair(_)
        ));
        assert!(matches!(
            e(bp(&[(1, 1, 1)]), BiPoly::zero()),
            GermError::NotAGermPair(_)
        ));
    }

    #[test]
    fn shifts() {
        let g = GermPair::new(bp(&[(1, 0, 1)]), bp(&[(1, 1, 0)])).unwrap();
        let s = shift_value(&g, &int(1)).unwrap();
        assert_eq!(s.p(), &bp(&[(1, 0, 1), (-1, 1, 0)]));
        assert_eq!(s.q(), g.q());
        assert_eq!(shift_value(&g, &int(0)), Err(GermError::ZeroShift));
        // (y - x^2)/y shifted by 1 gives -x^2, coprime to y; (xy + y)/y is excluded up front.
        let h = GermPair::new(bp(&[(1, 0, 1), (-1, 2, 0)]), bp(&[(1, 0, 1)])).unwrap();
        assert_eq!(shift_value(&h, &int(1)).unwrap().p(), &bp(&[(-1, 2, 0)]));
        // Holomorphic germs have empty nonzero fibres at the origin.
        let hol = GermPair::new(bp(&[(1, 0, 1)]), bp(&[(1, 0, 0)])).unwrap();
        assert!(matches!(
            shift_value(&hol, &int(2)),
            Err(GermError::NotAGermPair(_))
        ));
    }

    #[test]
    fn example1_shift() {
        let p = bp(&[(1, 0, 4), (-2, 3, 2), (1, 6, 0), (-1, 1, 5)]);
        let q = bp(&[(1, 1, 0), (-1, 0, 1)]);
        let g = GermPair::new(p.clone(), q.clone()).unwrap();
        let s = shift_value(&g, &int(1)).unwrap();
        assert_eq!(s.p(), &(&p - &q));
        assert_eq!(s.q(), &q);
    }

    #[test]
    fn round_trip() {
        let text = r#"{"P":[{"c":"-1/2","ex":3,"ey":0},{"c":"1","ex":0,"ey":2}],"Q":[{"c":"1","ex":1,"ey":0}]}"#;
        let g = parse_germ(text.as_bytes()).unwrap();
        let s = serialize_germ(&g);
        assert!(s.find("\"ey\": 2").unwrap() < s.find("\"ex\": 3").unwrap());
        assert_eq!(parse_germ(s.as_bytes()).unwrap(), g);
        assert_eq!(serialize_germ(&parse_germ(s.as_bytes()).unwrap()), s);
        assert!(matches!(
            parse_germ(b"{\"P\":[]}"),
            Err(GermError::Syntax(_))
        ));
        let bad = r#"{"P":[{"c":"0.5","ex":1,"ey":0}],"Q":[]}"#;
        assert!(matches!(
            parse_germ(bad.as_bytes()),
            Err(GermError::Coefficient(_))
        ));
    }
}
