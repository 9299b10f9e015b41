//! Topological and monodromy zeta functions of a resolution graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::exactalg::{CycloProduct, Rat, RationalFunction, RootOfUnity, Term};
use crate::resgraph::{derive, DerivedData, Kind, ResolutionGraph};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Chi {
    Local,
    Global,
}

fn factor(g: &ResolutionGraph, i: usize) -> (i64, i64) {
    let c = g.component(i);
    (c.n(), c.nu as i64)
}

/// Summands of `Z_top` as singletons and edges, emitted in DFS order so that
/// consecutive terms share factors.
fn terms(g: &ResolutionGraph, d: &DerivedData, chi: Chi) -> Vec<Term> {
    let mut visited = vec![false; g.len()];
    let mut out = Vec::new();
    for v in g.dfs_order() {
        let data = d.get(v);
        let x = match chi {
            Chi::Local => data.chi_local,
            Chi::Global => data.chi_global,
        };
        if data.in_s0 && x != 0 {
            out.push(Term::new(x, vec![factor(g, v)]));
        }
        for &w in g.neighbors(v) {
            if visited[w] && (data.in_s0 || d.get(w).in_s0) {
                out.push(Term::new(1, vec![factor(g, w), factor(g, v)]));
            }
        }
        visited[v] = true;
    }
    out
}

pub fn local_terms(g: &ResolutionGraph) -> Vec<Term> {
    terms(g, &derive(g), Chi::Local)
}

pub fn global_terms(g: &ResolutionGraph) -> Vec<Term> {
    terms(g, &derive(g), Chi::Global)
}

pub fn topo_zeta_local(g: &ResolutionGraph) -> RationalFunction {
    RationalFunction::sum_of_terms(&local_terms(g))
}

pub fn topo_zeta_global(g: &ResolutionGraph) -> RationalFunction {
    RationalFunction::sum_of_terms(&global_terms(g))
}

/// `∏_{i ∈ S₀} (1 - t^{N_i})^{χ(E_i° ∩ π⁻¹{0})}`.
pub fn monodromy_zeta_origin(g: &ResolutionGraph) -> CycloProduct {
    let d = derive(g);
    let mut z = CycloProduct::one();
    for (i, c) in g.components().iter().enumerate() {
        let data = d.get(i);
        if data.in_s0 && data.chi_local != 0 {
            z.multiply_factor(c.n() as u64, data.chi_local);
        }
    }
    z
}

/// Monodromy data at the origin and at generic points of the branches of `P = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueOracle {
    pub origin_zeta: CycloProduct,
    /// `N^P` of each strict transform of `P`.
    pub branch_multiplicities: BTreeSet<u64>,
}

impl EigenvalueOracle {
    pub fn new(g: &ResolutionGraph) -> Self {
        EigenvalueOracle {
            origin_zeta: monodromy_zeta_origin(g),
            branch_multiplicities: g
                .components()
                .iter()
                .filter(|c| c.kind == Kind::StrictP)
                .map(|c| c.np)
                .collect(),
        }
    }

    pub fn origin_multiplicity(&self, xi: &RootOfUnity) -> i64 {
        self.origin_zeta.multiplicity_at(xi)
    }

    /// A branch multiplicity divisible by the order of `xi`, if any.
    pub fn branch_witness(&self, xi: &RootOfUnity) -> Option<u64> {
        self.branch_multiplicities
            .iter()
            .copied()
            .find(|m| m % xi.order() == 0)
    }

    pub fn is_eigenvalue(&self, xi: &RootOfUnity) -> bool {
        self.origin_multiplicity(xi) != 0 || self.branch_witness(xi).is_some()
    }
}

pub fn eigenvalue_oracle(g: &ResolutionGraph) -> EigenvalueOracle {
    EigenvalueOracle::new(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePole {
    pub location: Rat,
    pub components: Vec<String>,
}

/// `-ν_i/N_i` over `S₀`, grouped by value, ascending.
pub fn candidate_poles(g: &ResolutionGraph) -> Vec<CandidatePole> {
    let mut groups: BTreeMap<Rat, Vec<String>> = BTreeMap::new();
    for c in g.components() {
        if c.np > c.nq && !c.is_dicritical() {
            let loc = Rat::new((-(c.nu as i64)).into(), c.n().into());
            groups.entry(loc).or_default().push(c.id.clone());
        }
    }
    groups
        .into_iter()
        .map(|(location, components)| CandidatePole {
            location,
            components,
        })
        .collect()
}
