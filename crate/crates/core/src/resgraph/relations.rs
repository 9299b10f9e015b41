use num_traits::Zero;

use super::model::ResolutionGraph;
use crate::exactalg::{int, Rat};

/// `α_j = ν_j - (ν/N) N_j` for a neighbor `j` of `center`. Panics if `N(center) = 0`.
pub fn alpha(g: &ResolutionGraph, center: usize, neighbor: usize) -> Rat {
    let c = g.component(center);
    let e = g.component(neighbor);
    assert!(c.n() != 0, "alpha needs a center with N != 0");
    int(e.nu as i64) - Rat::new((c.nu as i64).into(), c.n().into()) * int(e.n())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub lhs: Rat,
    pub rhs: Rat,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEntry {
    pub id: String,
    /// `Σ N_j` over neighbors against `(-E·E) N`.
    pub neighbor_sum: Option<RelationCheck>,
    /// `Σ α_j` against `k - 2`.
    pub alpha_sum: Option<RelationCheck>,
}

impl RelationEntry {
    pub fn passes(&self) -> bool {
        self.neighbor_sum.as_ref().is_none_or(RelationCheck::holds)
            && self.alpha_sum.as_ref().is_none_or(RelationCheck::holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsReport {
    pub entries: Vec<RelationEntry>,
    pub warnings: Vec<String>,
}

impl RelationsReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(RelationEntry::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationEntry> {
        self.entries.iter().filter(|e| !e.passes())
    }
}

pub fn validate_relations(g: &ResolutionGraph) -> RelationsReport {
    let mut entries = Vec::new();
    for (i, c) in g.components().iter().enumerate() {
        if !c.is_exceptional() {
            continue;
        }
        let n = c.n();
        let neighbor_sum = match c.self_intersection {
            Some(e) if n != 0 => Some(RelationCheck {
                lhs: int(g.neighbors(i).iter().map(|&j| g.component(j).n()).sum()),
                rhs: int(-e * n),
            }),
            _ => None,
        };
        let alpha_sum = (n != 0).then(|| RelationCheck {
            lhs: g
                .neighbors(i)
                .iter()
                .fold(Rat::zero(), |acc, &j| acc + alpha(g, i, j)),
            rhs: int(g.valence(i) as i64 - 2),
        });
        entries.push(RelationEntry {
            id: c.id.clone(),
            neighbor_sum,
            alpha_sum,
        });
    }
    RelationsReport {
        entries,
        warnings: dicritical_warnings(g),
    }
}

/// Components with `N = 0` meeting both zero and pole components must be
/// dicritical; warn when the flag says otherwise.
pub fn dicritical_warnings(g: &ResolutionGraph) -> Vec<String> {
    let mut out = Vec::new();
    for (i, c) in g.components().iter().enumerate() {
        if !c.is_exceptional() || c.n() != 0 || c.is_dicritical() {
            continue;
        }
        let pos = g.neighbors(i).iter().any(|&j| g.component(j).n() > 0);
        let neg = g.neighbors(i).iter().any(|&j| g.component(j).n() < 0);
        if pos && neg {
            out.push(format!(
                "{} has NP = NQ and neighbors of both signs but is not flagged dicritical",
                c.id
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::resgraph::model::Component;

    #[test]
    fn single_blowup_of_smooth_branch() {
        let g = ResolutionGraph::new(
            vec![
                Component::exceptional("E1", 1, 0, 2).with_self_intersection(-1),
                Component::strict_p("S", 1),
            ],
            &[("E1", "S")],
        )
        .unwrap();
        assert_eq!(alpha(&g, 0, 1), int(-1));
        let r = validate_relations(&g);
        assert_eq!(r.entries.len(), 1);
        let e = &r.entries[0];
        assert_eq!(
            e.neighbor_sum,
            Some(RelationCheck {
                lhs: int(1),
                rhs: int(1)
            })
        );
        assert_eq!(
            e.alpha_sum,
            Some(RelationCheck {
                lhs: int(-1),
                rhs: int(-1)
            })
        );
        assert!(r.all_pass());
    }

    #[test]
    fn alpha_is_exact() {
        let g = ResolutionGraph::new(
            vec![
                Component::exceptional("A", 4, 2, 3),
                Component::exceptional("B", 4, 1, 2),
            ],
            &[("A", "B")],
        )
        .unwrap();
        assert_eq!(alpha(&g, 0, 1), rat(-5, 2));
    }

    #[test]
    fn undeclared_dicritical_is_warned() {
        let g = ResolutionGraph::new(
            vec![
                Component::exceptional("E1", 1, 1, 2),
                Component::strict_p("P", 1),
                Component::strict_q("Q", 1),
            ],
            &[("E1", "P"), ("E1", "Q")],
        )
        .unwrap();
        assert_eq!(dicritical_warnings(&g).len(), 1);
        let mut cs = g.components().to_vec();
        cs[0].dicritical = Some(true);
        let g = ResolutionGraph::new(cs, &g.edge_ids()).unwrap();
        assert!(dicritical_warnings(&g).is_empty());
    }
}
