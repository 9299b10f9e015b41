use super::model::ResolutionGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentData {
    pub n: i64,
    pub valence: usize,
    /// `χ(E_i° ∩ π⁻¹{0})`.
    pub chi_local: i64,
    /// `χ(E_i°)`.
    pub chi_global: i64,
    pub in_s0: bool,
}

/// Per-component quantities, indexed like `g.components()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedData {
    pub per_component: Vec<ComponentData>,
}

impl DerivedData {
    pub fn get(&self, idx: usize) -> &ComponentData {
        &self.per_component[idx]
    }
}

pub fn derive(g: &ResolutionGraph) -> DerivedData {
    let has_exceptional = g.has_exceptional();
    let per_component = g
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let valence = g.valence(i);
            let v = valence as i64;
            let (chi_local, chi_global) = if c.is_exceptional() {
                (2 - v, 2 - v)
            } else if has_exceptional {
                (0, 1 - v)
            } else {
                (1, 1 - v)
            };
            ComponentData {
                n: c.n(),
                valence,
                chi_local,
                chi_global,
                in_s0: c.np > c.nq,
            }
        })
        .collect();
    DerivedData { per_component }
}

/// `χ(E_{i,j}° ∩ π⁻¹{0})`: one point per edge of the tree, all lying over the origin.
pub fn pair_chi(g: &ResolutionGraph, i: usize, j: usize) -> i64 {
    i64::from(g.are_adjacent(i, j))
}
