//! Subgraph analytics: bamboos and branches, the `N^P/N^Q` identities,
//! components of the exceptional divisor off the dicriticals, and `C_d`.

use std::collections::BTreeMap;

use crate::exactalg::Rat;
use crate::resgraph::{derive, Kind, ResolutionGraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("{0} is not an exceptional component")]
    NotExceptional(String),
    #[error("{0} has N^P = 0 or N^Q = 0")]
    ZeroMultiplicity(String),
}

/// A connected set of components and the edges leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphComponent {
    /// Sorted ids.
    pub ids: Vec<String>,
    /// `(inside, outside)` pairs, sorted.
    pub boundary: Vec<(String, String)>,
}

impl SubgraphComponent {
    fn from_indices(g: &ResolutionGraph, members: &[usize]) -> Self {
        let mut ids: Vec<String> = members.iter().map(|&i| g.component(i).id.clone()).collect();
        ids.sort();
        let mut boundary = Vec::new();
        for &i in members {
            for &j in g.neighbors(i) {
                if !members.contains(&j) {
                    boundary.push((g.component(i).id.clone(), g.component(j).id.clone()));
                }
            }
        }
        boundary.sort();
        SubgraphComponent { ids, boundary }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.ids.iter().any(|x| x == id)
    }
}

/// Connected components of the subgraph induced on the vertices selected by `keep`,
/// ordered by their smallest index.
fn induced_components(g: &ResolutionGraph, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for s in 0..g.len() {
        if seen[s] || !keep(s) {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] && keep(w) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bamboo {
    /// Vertex of valence at least 3 the bamboo leaves from; `None` when the
    /// whole graph is a path.
    pub root: Option<String>,
    /// From the vertex next to the root out to the valence-1 end.
    pub members: Vec<String>,
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub root: String,
    pub ids: Vec<String>,
    pub is_bamboo: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeWarning {
    /// A vertex with three or more primitive bamboos, or a second vertex with two.
    PrimitiveBamboos { root: String, count: usize },
    /// More than one primitive branch leaving a vertex is not a bamboo.
    PrimitiveBranches { root: String, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taxonomy {
    pub valences: Vec<(String, usize)>,
    pub bamboos: Vec<Bamboo>,
    /// Primitive branches at vertices of valence at least 3.
    pub primitive_branches: Vec<Branch>,
    pub warnings: Vec<ShapeWarning>,
}

impl Taxonomy {
    pub fn primitive_bamboos(&self) -> impl Iterator<Item = &Bamboo> {
        self.bamboos.iter().filter(|b| b.primitive)
    }
}

/// Walks from `v` away from `from` through valence-2 vertices. Returns the
/// visited vertices and the final one, which has valence other than 2.
fn walk(g: &ResolutionGraph, from: usize, v: usize) -> (Vec<usize>, usize) {
    let mut path = vec![v];
    let (mut prev, mut cur) = (from, v);
    while g.valence(cur) == 2 {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .unwrap();
        prev = cur;
        cur = next;
        path.push(cur);
    }
    let end = cur;
    (path, end)
}

fn branch_at(g: &ResolutionGraph, root: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut stack = vec![(start, root)];
    while let Some((x, parent)) = stack.pop() {
        for &y in g.neighbors(x) {
            if y != parent {
                out.push(y);
                stack.push((y, x));
            }
        }
    }
    out
}

pub fn taxonomy(g: &ResolutionGraph) -> Taxonomy {
    let ids =
        |v: &[usize]| -> Vec<String> { v.iter().map(|&i| g.component(i).id.clone()).collect() };
    let strict = |i: usize| g.component(i).kind.is_strict();
    let valences = g
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.clone(), g.valence(i)))
        .collect();

    let mut bamboos = Vec::new();
    let is_path = (0..g.len()).all(|i| g.valence(i) <= 2);
    if is_path {
        if g.len() > 1 {
            let start = (0..g.len()).find(|&i| g.valence(i) == 1).unwrap();
            let (mut path, _) = walk(g, start, g.neighbors(start)[0]);
            path.insert(0, start);
            let primitive = !strict(start) && !strict(*path.last().unwrap());
            bamboos.push(Bamboo {
                root: None,
                members: ids(&path),
                primitive,
            });
        }
    } else {
        for root in 0..g.len() {
            if g.valence(root) < 3 {
                continue;
            }
            for &n in g.neighbors(root) {
                let (path, end) = walk(g, root, n);
                if g.valence(end) == 1 {
                    bamboos.push(Bamboo {
                        root: Some(g.component(root).id.clone()),
                        members: ids(&path),
                        primitive: !strict(end),
                    });
                }
            }
        }
    }

    let mut warnings = Vec::new();
    let mut per_root: BTreeMap<String, usize> = BTreeMap::new();
    for b in bamboos.iter().filter(|b| b.primitive) {
        if let Some(r) = &b.root {
            *per_root.entry(r.clone()).or_default() += 1;
        }
    }
    let mut doubles = 0;
    for (root, &count) in &per_root {
        if count >= 2 {
            doubles += 1;
        }
        if count >= 3 || (count == 2 && doubles > 1) {
            warnings.push(ShapeWarning::PrimitiveBamboos {
                root: root.clone(),
                count,
            });
        }
    }

    let mut primitive_branches = Vec::new();
    for root in 0..g.len() {
        let mut non_bamboo = 0;
        for &n in g.neighbors(root) {
            let members = branch_at(g, root, n);
            if members.iter().any(|&i| strict(i)) {
                continue;
            }
            let (path, end) = walk(g, root, n);
            let is_bamboo = g.valence(end) == 1 && path.len() == members.len();
            if !is_bamboo {
                non_bamboo += 1;
            }
            if g.valence(root) >= 3 {
                let mut sorted = members.clone();
                sorted.sort_unstable();
                primitive_branches.push(Branch {
                    root: g.component(root).id.clone(),
                    ids: ids(&sorted),
                    is_bamboo,
                });
            }
        }
        if non_bamboo > 1 {
            warnings.push(ShapeWarning::PrimitiveBranches {
                root: g.component(root).id.clone(),
                count: non_bamboo,
            });
        }
    }

    Taxonomy {
        valences,
        bamboos,
        primitive_branches,
        warnings,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    pub center: String,
    /// `Σ N_i^P / N^P` over neighbors.
    pub p_side: Rat,
    /// `Σ N_i^Q / N^Q` over neighbors.
    pub q_side: Rat,
    /// Some neighbor is a strict transform, so the identity is not claimed.
    pub informational: bool,
}

impl RatioCheck {
    pub fn holds(&self) -> bool {
        self.p_side == self.q_side
    }
}

pub fn ratio_identity_check(
    g: &ResolutionGraph,
    center: &str,
) -> Result<RatioCheck, StructureError> {
    let i = g
        .index_of(center)
        .ok_or_else(|| StructureError::UnknownComponent(center.to_string()))?;
    let c = g.component(i);
    if !c.is_exceptional() {
        return Err(StructureError::NotExceptional(center.to_string()));
    }
    if c.np == 0 || c.nq == 0 {
        return Err(StructureError::ZeroMultiplicity(center.to_string()));
    }
    let sum_p: u64 = g.neighbors(i).iter().map(|&j| g.component(j).np).sum();
    let sum_q: u64 = g.neighbors(i).iter().map(|&j| g.component(j).nq).sum();
    Ok(RatioCheck {
        center: center.to_string(),
        p_side: Rat::new(sum_p.into(), c.np.into()),
        q_side: Rat::new(sum_q.into(), c.nq.into()),
        informational: g
            .neighbors(i)
            .iter()
            .any(|&j| g.component(j).kind.is_strict()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BambooRatio {
    pub root: Option<String>,
    pub members: Vec<String>,
    /// `N^P/N^Q` for the root (first, when present) and each member.
    pub ratios: Vec<(String, Rat)>,
}

impl BambooRatio {
    pub fn constant(&self) -> bool {
        self.ratios.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

/// Ratio along each primitive bamboo, root included, where every vertex has `N^Q != 0`.
pub fn bamboo_ratio_constant(g: &ResolutionGraph) -> Vec<BambooRatio> {
    let mut out = Vec::new();
    for b in taxonomy(g).bamboos.into_iter().filter(|b| b.primitive) {
        let ids: Vec<&String> = b.root.iter().chain(b.members.iter()).collect();
        let comps: Vec<_> = ids.iter().map(|id| g.by_id(id).unwrap()).collect();
        if comps.iter().any(|c| c.nq == 0) {
            continue;
        }
        out.push(BambooRatio {
            ratios: comps
                .iter()
                .map(|c| (c.id.clone(), Rat::new(c.np.into(), c.nq.into())))
                .collect(),
            root: b.root,
            members: b.members,
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentValue {
    Zero,
    Infinity,
    /// Neither all `N > 0` nor all `N < 0`.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroComponent {
    pub component: SubgraphComponent,
    pub value: ComponentValue,
    /// Whether it meets a strict transform of `P`; checked only for `Zero`.
    pub meets_strict_p: Option<bool>,
}

/// Connected components of the exceptional divisor with the dicriticals removed.
pub fn zero_components(g: &ResolutionGraph) -> Vec<ZeroComponent> {
    let keep = |i: usize| {
        let c = g.component(i);
        c.is_exceptional() && !c.is_dicritical()
    };
    induced_components(g, keep)
        .into_iter()
        .map(|members| {
            let value = if members.iter().all(|&i| g.component(i).n() > 0) {
                ComponentValue::Zero
            } else if members.iter().all(|&i| g.component(i).n() < 0) {
                ComponentValue::Infinity
            } else {
                ComponentValue::Other
            };
            let meets_strict_p = (value == ComponentValue::Zero).then(|| {
                members.iter().any(|&i| {
                    g.neighbors(i)
                        .iter()
                        .any(|&j| g.component(j).kind == Kind::StrictP)
                })
            });
            ZeroComponent {
                component: SubgraphComponent::from_indices(g, &members),
                value,
                meets_strict_p,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdComponent {
    pub component: SubgraphComponent,
    /// `Σ χ(E_k°)` over the members.
    pub euler_sum: i64,
}

/// Components of the subgraph on exceptional `E_k` with `N_k > 0` and `d | N_k`.
pub fn cd_components(g: &ResolutionGraph, d: u64) -> Vec<CdComponent> {
    assert!(d >= 1, "d must be positive");
    let data = derive(g);
    let keep = |i: usize| {
        let c = g.component(i);
        c.is_exceptional() && c.n() > 0 && (c.n() as u64).is_multiple_of(d)
    };
    induced_components(g, keep)
        .into_iter()
        .map(|members| CdComponent {
            euler_sum: members.iter().map(|&i| data.get(i).chi_global).sum(),
            component: SubgraphComponent::from_indices(g, &members),
        })
        .collect()
}

/// Every `d` dividing some positive `N_k` of an exceptional component.
pub fn relevant_divisors(g: &ResolutionGraph) -> Vec<u64> {
    let mut ds = std::collections::BTreeSet::new();
    for c in g.components() {
        if c.is_exceptional() && c.n() > 0 {
            let n = c.n() as u64;
            let mut k = 1;
            while k * k <= n {
                if n.is_multiple_of(k) {
                    ds.insert(k);
                    ds.insert(n / k);
                }
                k += 1;
            }
        }
    }
    ds.into_iter().collect()
}
