//! Certifies `exp(2πi s₀)` as a monodromy eigenvalue for every pole `s₀` of `Z_top`.

use crate::exactalg::{format_rat, Rat, RationalFunctionError, RootOfUnity};
use crate::poleanalysis::{veys_witnesses, Witness};
use crate::resgraph::{Kind, ResolutionGraph};
use crate::structure::{cd_components, SubgraphComponent};
use crate::zeta::{eigenvalue_oracle, topo_zeta_local};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A strict transform of `P` whose multiplicity the order divides.
    BranchPoint(String),
    /// Nonzero multiplicity of the root in the origin zeta function.
    Origin(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleVerdict {
    pub pole: Rat,
    pub root_of_unity: RootOfUnity,
    pub certificate: Option<Certificate>,
}

impl PoleVerdict {
    pub fn certified(&self) -> bool {
        self.certificate.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub per_pole: Vec<PoleVerdict>,
}

impl ConjectureReport {
    pub fn violations(&self) -> impl Iterator<Item = &PoleVerdict> {
        self.per_pole.iter().filter(|v| !v.certified())
    }

    pub fn holds(&self) -> bool {
        self.violations().next().is_none()
    }
}

pub fn check_conjecture(g: &ResolutionGraph) -> Result<ConjectureReport, RationalFunctionError> {
    let poles = topo_zeta_local(g).poles()?;
    let oracle = eigenvalue_oracle(g);
    let per_pole = poles
        .into_iter()
        .map(|p| {
            let xi = RootOfUnity::from_exponent(&p.location);
            let branch = g
                .components()
                .iter()
                .find(|c| c.kind == Kind::StrictP && c.np % xi.order() == 0)
                .map(|c| Certificate::BranchPoint(c.id.clone()));
            let certificate = branch.or_else(|| {
                let m = oracle.origin_multiplicity(&xi);
                (m != 0).then_some(Certificate::Origin(m))
            });
            PoleVerdict {
                pole: p.location,
                root_of_unity: xi,
                certificate,
            }
        })
        .collect();
    Ok(ConjectureReport { per_pole })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceCase {
    /// The pole comes from a strict transform of `P` only.
    Branch { witness: String },
    /// `C_d` component around an exceptional witness.
    Component {
        witness: String,
        d: u64,
        component: SubgraphComponent,
        euler_sum: i64,
        /// The component meets a strict transform of `P`.
        meets_strict_p: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub pole: Rat,
    pub case: TraceCase,
}

impl ProofTrace {
    /// The disjunction used by the argument: strict branch present, or negative Euler sum.
    pub fn disjunction_holds(&self) -> bool {
        match &self.case {
            TraceCase::Branch { .. } => true,
            TraceCase::Component {
                euler_sum,
                meets_strict_p,
                ..
            } => *meets_strict_p || *euler_sum < 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("{0} is not a pole")]
    NotAPole(String),
    #[error(transparent)]
    Zeta(#[from] RationalFunctionError),
}

pub fn proof_trace(g: &ResolutionGraph, pole: &Rat) -> Result<ProofTrace, TraceError> {
    let is_pole = topo_zeta_local(g)
        .poles()?
        .iter()
        .any(|p| &p.location == pole);
    if !is_pole {
        return Err(TraceError::NotAPole(format_rat(pole)));
    }
    let witnesses = veys_witnesses(g, pole);
    let d = RootOfUnity::from_exponent(pole).order();
    let exceptional = witnesses.iter().find_map(|w| match w {
        Witness::Exceptional { id, .. } => Some(id.clone()),
        Witness::StrictP { .. } => None,
    });
    let case = match exceptional {
        Some(witness) => {
            let cd = cd_components(g, d)
                .into_iter()
                .find(|c| c.component.contains(&witness))
                .expect("witness has N divisible by d");
            let meets_strict_p = cd
                .component
                .boundary
                .iter()
                .any(|(_, out)| g.by_id(out).map(|c| c.kind) == Some(Kind::StrictP));
            TraceCase::Component {
                witness,
                d,
                euler_sum: cd.euler_sum,
                component: cd.component,
                meets_strict_p,
            }
        }
        None => TraceCase::Branch {
            witness: witnesses
                .first()
                .map(|w| w.id().to_string())
                .unwrap_or_default(),
        },
    };
    Ok(ProofTrace {
        pole: pole.clone(),
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat, CycloProduct};
    use crate::resgraph::{parse_graph, Component};

    const EXAMPLE1: &str = include_str!("../../../fixtures/example1.graph.json");
    const EXAMPLE2: &str = include_str!("../../../fixtures/example2.graph.json");

    /// Divisor-sum count over the exponents of a cyclotomic product.
    fn oracle_multiplicity(pairs: &[(u64, i64)], order: u64) -> i64 {
        pairs
            .iter()
            .filter(|(a, _)| a % order == 0)
            .map(|(_, e)| e)
            .sum()
    }

    #[test]
    fn example1() {
        let g = parse_graph(EXAMPLE1.as_bytes()).unwrap();
        let r = check_conjecture(&g).unwrap();
        assert!(r.holds());
        assert_eq!(r.per_pole.len(), 2);
        assert_eq!(r.per_pole[0].pole, int(-1));
        assert_eq!(
            r.per_pole[0].certificate,
            Some(Certificate::BranchPoint("E12".into()))
        );
        assert_eq!(r.per_pole[1].pole, rat(-1, 2));
        let m = oracle_multiplicity(&[(5, 1), (15, 1), (10, -1), (30, -1)], 2);
        assert_eq!(r.per_pole[1].certificate, Some(Certificate::Origin(m)));
        assert_eq!(m, -2);
        assert_eq!(r.per_pole[1].root_of_unity, RootOfUnity::new(1, 2));
    }

    #[test]
    fn example2() {
        let g = parse_graph(EXAMPLE2.as_bytes()).unwrap();
        let r = check_conjecture(&g).unwrap();
        assert!(r.holds());
        let pairs = [(5, -16), (7, -4), (8, -8)];
        assert_eq!(
            CycloProduct::from_pairs(pairs),
            crate::zeta::monodromy_zeta_origin(&g)
        );
        let by_pole = |p: Rat| {
            r.per_pole
                .iter()
                .find(|v| v.pole == p)
                .unwrap()
                .certificate
                .clone()
        };
        assert!(matches!(
            by_pole(int(-1)),
            Some(Certificate::BranchPoint(_))
        ));
        assert_eq!(
            by_pole(rat(-1, 2)),
            Some(Certificate::Origin(oracle_multiplicity(&pairs, 2)))
        );
        assert_eq!(by_pole(rat(-1, 2)), Some(Certificate::Origin(-8)));
        assert_eq!(by_pole(rat(-4, 7)), Some(Certificate::Origin(-4)));
    }

    #[test]
    fn zero_zeta_is_vacuous() {
        let g = ResolutionGraph::new(
            vec![
                Component::exceptional("E1", 1, 2, 2),
                Component::strict_q("Q", 1),
            ],
            &[("E1", "Q")],
        )
        .unwrap();
        let r = check_conjecture(&g).unwrap();
        assert!(r.per_pole.is_empty() && r.holds());
    }

    #[test]
    fn traces() {
        let g = parse_graph(EXAMPLE1.as_bytes()).unwrap();
        let t = proof_trace(&g, &rat(-1, 2)).unwrap();
        match &t.case {
            TraceCase::Component {
                witness,
                d,
                component,
                euler_sum,
                ..
            } => {
                assert_eq!((witness.as_str(), *d, *euler_sum), ("E3", 2, -2));
                assert_eq!(component.ids, vec!["E3", "E4", "E5", "E7"]);
            }
            other => panic!("{other:?}"),
        }
        assert!(t.disjunction_holds());
        let t = proof_trace(&g, &int(-1)).unwrap();
        assert_eq!(
            t.case,
            TraceCase::Branch {
                witness: "E12".into()
            }
        );
        let g2 = parse_graph(EXAMPLE2.as_bytes()).unwrap();
        assert!(matches!(
            proof_trace(&g2, &rat(-3, 5)),
            Err(TraceError::NotAPole(_))
        ));
    }
}
