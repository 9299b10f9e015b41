//! Embedded resolution of `P/Q` by point blowups over ℚ.
//!
//! Points failing normal crossings are blown up first (FIFO), then crossings
//! of curves whose `N = N^P - N^Q` have opposite signs, until `P/Q` lifts to a
//! morphism to ℙ¹. Every centre must be rational; transversal crossings at
//! conjugate non-rational points are accepted as long as nothing more has to
//! happen there.

mod engine;
mod germ;

pub use engine::{
    Axis, BadPoint, ChartState, ChartStep, Defect, ExceptionalData, LocalFactor, ResolveError,
    Side, TrackedPoint,
};
pub use germ::{parse_germ, serialize_germ, shift_value, GermError, GermPair};

use crate::resgraph::ResolutionGraph;

pub fn resolve_meromorphic(germ: &GermPair) -> Result<ResolutionGraph, ResolveError> {
    let mut state = ChartState::new(germ);
    state.resolve_normal_crossings()?;
    state.dicritical_completion()?;
    state.separate_origin()?;
    Ok(state.to_graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::BiPoly;
    use crate::resgraph::{isomorphic, parse_graph, serialize_graph, validate_relations, Kind};

    const EXAMPLE1_GERM: &str = include_str!("../../../../fixtures/example1.germ.json");
    const EXAMPLE1_GRAPH: &str = include_str!("../../../../fixtures/example1.graph.json");
    const EXAMPLE3_GERM: &str = include_str!("../../../../fixtures/example3.germ.json");
    const CUSP_GERM: &str = include_str!("../../../../fixtures/cusp.germ.json");

    fn germ(p: &[(i64, u32, u32)], q: &[(i64, u32, u32)]) -> GermPair {
        GermPair::new(BiPoly::from_int_terms(p), BiPoly::from_int_terms(q)).unwrap()
    }

    fn data(g: &ResolutionGraph, ids: &[&str]) -> Vec<(u64, u64, u64)> {
        ids.iter()
            .map(|id| {
                let c = g.by_id(id).unwrap();
                (c.np, c.nq, c.nu)
            })
            .collect()
    }

    fn first_bad(s: &ChartState) -> usize {
        s.normal_crossing_audit()[0].index
    }

    #[test]
    fn cusp_step_by_step() {
        let mut s = ChartState::new(&parse_germ(CUSP_GERM.as_bytes()).unwrap());
        let e1 = s.blowup_at(first_bad(&s)).unwrap();
        let e2 = s.blowup_at(first_bad(&s)).unwrap();
        let e3 = s.blowup_at(first_bad(&s)).unwrap();
        let got: Vec<(u64, u64)> = [e1, e2, e3]
            .iter()
            .map(|&e| (s.exceptional()[e].np, s.exceptional()[e].nu))
            .collect();
        assert_eq!(got, vec![(2, 2), (3, 3), (6, 5)]);
        assert!(s.normal_crossing_audit().is_empty());
        let (idx, _) = s.points().next().unwrap();
        assert_eq!(s.blowup_at(idx), Err(ResolveError::NotABadPoint(idx)));
        assert_eq!(s.blowup_at(10_000), Err(ResolveError::UnknownPoint(10_000)));
        let g = s.to_graph();
        let selfs: Vec<Option<i64>> = ["E1", "E2", "E3"]
            .iter()
            .map(|id| g.by_id(id).unwrap().self_intersection)
            .collect();
        assert_eq!(selfs, vec![Some(-3), Some(-2), Some(-1)]);
        assert!(validate_relations(&g).all_pass());
    }

    #[test]
    fn audits() {
        let xy = ChartState::new(&germ(&[(1, 1, 1)], &[(1, 0, 0)]));
        assert!(xy.normal_crossing_audit().is_empty());
        let cusp_line = ChartState::new(&germ(&[(1, 0, 2), (-1, 3, 0)], &[(1, 1, 0), (-1, 0, 1)]));
        let bad = cusp_line.normal_crossing_audit();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].defect, Defect::SingularBranch { order: 2 });
    }

    #[test]
    fn line_over_line() {
        let mut s = ChartState::new(&germ(&[(1, 0, 1)], &[(1, 1, 0)]));
        assert_eq!(s.resolve_normal_crossings().unwrap(), 0);
        assert_eq!(s.dicritical_completion().unwrap(), 1);
        assert_eq!(s.dicritical_completion().unwrap(), 0);
        let g = s.to_graph();
        assert_eq!(
            data(&g, &["E1", "P1", "Q1"]),
            vec![(1, 1, 2), (1, 0, 1), (0, 1, 1)]
        );
        assert!(g.by_id("E1").unwrap().is_dicritical());
        assert_eq!(g.valence(g.index_of("E1").unwrap()), 2);
    }

    #[test]
    fn crossing_branches_at_origin() {
        let g = resolve_meromorphic(&germ(&[(1, 1, 1)], &[(1, 0, 0)])).unwrap();
        assert_eq!(
            data(&g, &["E1", "P1", "P2"]),
            vec![(2, 0, 2), (1, 0, 1), (1, 0, 1)]
        );
        let smooth = resolve_meromorphic(&germ(&[(1, 0, 1), (1, 2, 0)], &[(1, 0, 0)])).unwrap();
        assert_eq!(smooth.len(), 1);
        assert_eq!(smooth.component(0).kind, Kind::StrictP);
    }

    #[test]
    fn example1_phases() {
        let mut s = ChartState::new(&parse_germ(EXAMPLE1_GERM.as_bytes()).unwrap());
        assert_eq!(s.resolve_normal_crossings().unwrap(), 7);
        assert!(s.normal_crossing_audit().is_empty());
        assert_eq!(s.dicritical_completion().unwrap(), 3);
        let g = s.to_graph();
        assert_eq!(
            data(&g, &["E8", "E9", "E10"]),
            vec![(4, 2, 3), (4, 3, 4), (4, 4, 5)]
        );
        let dicritical: Vec<&str> = g
            .components()
            .iter()
            .filter(|c| c.is_dicritical())
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(dicritical, vec!["E10"]);
        let fixture = parse_graph(EXAMPLE1_GRAPH.as_bytes()).unwrap();
        assert!(isomorphic(&g, &fixture));
        assert!(validate_relations(&g).all_pass());
    }

    #[test]
    fn example3_table() {
        let g = resolve_meromorphic(&parse_germ(EXAMPLE3_GERM.as_bytes()).unwrap()).unwrap();
        let ids: Vec<String> = (1..=12).map(|k| format!("E{k}")).collect();
        let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
        let np = [24, 48, 72, 96, 103, 206, 309, 408, 720, 1030, 1751, 2472];
        let nq = [7, 14, 21, 28, 30, 60, 90, 119, 210, 300, 510, 720];
        let nu = [2, 3, 4, 5, 6, 11, 16, 21, 37, 53, 90, 127];
        let want: Vec<(u64, u64, u64)> = (0..12).map(|i| (np[i], nq[i], nu[i])).collect();
        assert_eq!(data(&g, &ids), want);
        let exceptional = g.components().iter().filter(|c| c.is_exceptional()).count();
        assert_eq!(exceptional, 522);
        let e522 = g.by_id("E522").unwrap();
        assert!(e522.is_dicritical());
        assert_eq!((e522.np, e522.nq), (720, 720));
        let q1 = g.index_of("Q1").unwrap();
        assert_eq!(g.neighbors(q1), &[g.index_of("E522").unwrap()]);
        let p1 = g.index_of("P1").unwrap();
        assert_eq!(g.neighbors(p1), &[g.index_of("E12").unwrap()]);
        assert!(validate_relations(&g).all_pass());
    }

    #[test]
    fn deterministic_serialization() {
        let germ = parse_germ(EXAMPLE1_GERM.as_bytes()).unwrap();
        let a = serialize_graph(&resolve_meromorphic(&germ).unwrap());
        let b = serialize_graph(&resolve_meromorphic(&germ).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn non_rational_points() {
        // y^2 - 2x^2 crosses E1 at the conjugate points t = ±√2; nothing to do there.
        let g = resolve_meromorphic(&germ(&[(1, 0, 2), (-2, 2, 0)], &[(1, 0, 0)])).unwrap();
        assert_eq!(
            data(&g, &["E1", "P1", "P2"]),
            vec![(2, 0, 2), (1, 0, 1), (1, 0, 1)]
        );
        // Same tangent pair squared: the branches stay tangent there.
        let sq = germ(&[(1, 0, 4), (-4, 2, 2), (4, 4, 0), (1, 5, 0)], &[(1, 0, 0)]);
        assert!(matches!(
            resolve_meromorphic(&sq),
            Err(ResolveError::NonRationalCenter(_))
        ));
        // N(E1) = 2 - 3 < 0, so P/Q would need completion at ±√2.
        let pole = germ(&[(1, 0, 2), (-2, 2, 0)], &[(1, 2, 1), (1, 1, 2)]);
        assert!(matches!(
            resolve_meromorphic(&pole),
            Err(ResolveError::NonRationalCenter(_))
        ));
    }

    #[test]
    fn repeated_factors() {
        // P = y^2 (y - x^2)^3 resolves on y (y - x^2); arrows keep the powers.
        let y = BiPoly::from_int_terms(&[(1, 0, 1)]);
        let par = BiPoly::from_int_terms(&[(1, 0, 1), (-1, 2, 0)]);
        let p = &y.pow(2) * &par.pow(3);
        let g = resolve_meromorphic(&GermPair::new(p, BiPoly::one()).unwrap()).unwrap();
        let mut strict: Vec<u64> = g
            .components()
            .iter()
            .filter(|c| c.kind == Kind::StrictP)
            .map(|c| c.np)
            .collect();
        strict.sort();
        assert_eq!(strict, vec![2, 3]);
        assert!(validate_relations(&g).all_pass());
    }
}
