use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// What a vertex of the dual graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Exceptional,
    /// Strict transform of a branch of `P = 0`.
    StrictP,
    /// Strict transform of a branch of `Q = 0`.
    StrictQ,
}

impl Kind {
    pub fn is_strict(self) -> bool {
        !matches!(self, Kind::Exceptional)
    }

    pub fn file_name(self) -> &'static str {
        match self {
            Kind::Exceptional => "exceptional",
            Kind::StrictP => "strict_P",
            Kind::StrictQ => "strict_Q",
        }
    }
}

/// A component of the total transform with its numerical data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub id: String,
    pub kind: Kind,
    /// Multiplicity of `P ∘ π` along the component.
    pub np: u64,
    /// Multiplicity of `Q ∘ π` along the component.
    pub nq: u64,
    /// One plus the multiplicity of `π*(dx ∧ dy)`.
    pub nu: u64,
    pub self_intersection: Option<i64>,
    pub dicritical: Option<bool>,
}

impl Component {
    pub fn exceptional(id: impl Into<String>, np: u64, nq: u64, nu: u64) -> Self {
        Component {
            id: id.into(),
            kind: Kind::Exceptional,
            np,
            nq,
            nu,
            self_intersection: None,
            dicritical: None,
        }
    }

    pub fn strict_p(id: impl Into<String>, np: u64) -> Self {
        Component {
            id: id.into(),
            kind: Kind::StrictP,
            np,
            nq: 0,
            nu: 1,
            self_intersection: None,
            dicritical: None,
        }
    }

    pub fn strict_q(id: impl Into<String>, nq: u64) -> Self {
        Component {
            id: id.into(),
            kind: Kind::StrictQ,
            np: 0,
            nq,
            nu: 1,
            self_intersection: None,
            dicritical: None,
        }
    }

    pub fn with_self_intersection(mut self, e: i64) -> Self {
        self.self_intersection = Some(e);
        self
    }

    pub fn with_dicritical(mut self, d: bool) -> Self {
        self.dicritical = Some(d);
        self
    }

    /// `N = N^P - N^Q`.
    pub fn n(&self) -> i64 {
        self.np as i64 - self.nq as i64
    }

    pub fn is_dicritical(&self) -> bool {
        self.dicritical == Some(true)
    }

    pub fn is_exceptional(&self) -> bool {
        self.kind == Kind::Exceptional
    }
}

/// The graph invariant a rejected input violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Empty,
    DuplicateId,
    UnknownId,
    SelfLoop,
    MultipleEdge,
    Disconnected,
    Cycle,
    StrictStrictEdge,
    /// An edge joins a component mapped to 0 with one mapped to ∞.
    SignRule,
    StrictPData,
    StrictQData,
    ExceptionalNu,
    DicriticalData,
    ExceptionalOnlyField,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Empty => "graph has no components",
            Clause::DuplicateId => "component ids must be unique",
            Clause::UnknownId => "edges must reference existing ids",
            Clause::SelfLoop => "no component meets itself",
            Clause::MultipleEdge => "at most one edge per pair",
            Clause::Disconnected => "graph must be connected",
            Clause::Cycle => "graph must be acyclic",
            Clause::StrictStrictEdge => "no edge joins two strict components",
            Clause::SignRule => "no edge joins N > 0 with N < 0",
            Clause::StrictPData => "strict_P requires NQ = 0, NP >= 1, nu = 1",
            Clause::StrictQData => "strict_Q requires NP = 0, NQ >= 1, nu = 1",
            Clause::ExceptionalNu => "exceptional requires nu >= 2",
            Clause::DicriticalData => "dicritical requires NP = NQ",
            Clause::ExceptionalOnlyField => {
                "self_intersection and dicritical apply to exceptional components only"
            }
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid graph ({clause}): {detail}")]
    Semantics { clause: Clause, detail: String },
}

fn semantics(clause: Clause, detail: impl Into<String>) -> GraphError {
    GraphError::Semantics {
        clause,
        detail: detail.into(),
    }
}

/// Dual graph of an embedded resolution. A validated tree; immutable.
#[derive(Clone, Debug)]
pub struct ResolutionGraph {
    components: Vec<Component>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl ResolutionGraph {
    pub fn new<S: AsRef<str>>(
        components: Vec<Component>,
        edges: &[(S, S)],
    ) -> Result<Self, GraphError> {
        if components.is_empty() {
            return Err(semantics(Clause::Empty, "no components"));
        }
        let mut index = HashMap::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(semantics(Clause::DuplicateId, c.id.clone()));
            }
            check_component(c)?;
        }
        let mut adjacency = vec![Vec::new(); components.len()];
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| semantics(Clause::UnknownId, a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| semantics(Clause::UnknownId, b.to_string()))?;
            if ia == ib {
                return Err(semantics(Clause::SelfLoop, a.to_string()));
            }
            if !seen.insert((ia.min(ib), ia.max(ib))) {
                return Err(semantics(Clause::MultipleEdge, format!("{a} -- {b}")));
            }
            let (ca, cb) = (&components[ia], &components[ib]);
            if ca.kind.is_strict() && cb.kind.is_strict() {
                return Err(semantics(Clause::StrictStrictEdge, format!("{a} -- {b}")));
            }
            if (ca.n() > 0 && cb.n() < 0) || (ca.n() < 0 && cb.n() > 0) {
                return Err(semantics(
                    Clause::SignRule,
                    format!("{a} (N={}) -- {b} (N={})", ca.n(), cb.n()),
                ));
            }
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let g = ResolutionGraph {
            components,
            adjacency,
            index,
        };
        let reached = g.reachable_from(0);
        if reached < g.components.len() {
            return Err(semantics(
                Clause::Disconnected,
                format!("{} of {} components reachable", reached, g.components.len()),
            ));
        }
        if seen.len() != g.components.len() - 1 {
            return Err(semantics(
                Clause::Cycle,
                format!("{} edges on {} components", seen.len(), g.components.len()),
            ));
        }
        Ok(g)
    }

    fn reachable_from(&self, start: usize) -> usize {
        let mut seen = vec![false; self.components.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, idx: usize) -> &Component {
        &self.components[idx]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn by_id(&self, id: &str) -> Option<&Component> {
        self.index_of(id).map(|i| &self.components[i])
    }

    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adjacency[idx]
    }

    pub fn valence(&self, idx: usize) -> usize {
        self.adjacency[idx].len()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edges as id pairs.
    pub fn edge_ids(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.components[i].id.clone(), self.components[j].id.clone()))
            .collect()
    }

    pub fn has_exceptional(&self) -> bool {
        self.components.iter().any(Component::is_exceptional)
    }

    /// Indices in depth-first order from the first component, neighbors visited
    /// in index order. Consecutive entries tend to be adjacent, which keeps
    /// running sums over the graph small.
    pub fn dfs_order(&self) -> Vec<usize> {
        let n = self.components.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            order.push(v);
            for &w in self.adjacency[v].iter().rev() {
                if !seen[w] {
                    stack.push(w);
                }
            }
        }
        order
    }

    /// Rebuilds with modified components and edges, revalidating.
    pub fn rebuild(
        components: Vec<Component>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, GraphError> {
        ResolutionGraph::new(components, &edges)
    }
}

fn check_component(c: &Component) -> Result<(), GraphError> {
    match c.kind {
        Kind::StrictP => {
            if c.nq != 0 || c.np < 1 || c.nu != 1 {
                return Err(semantics(Clause::StrictPData, c.id.clone()));
            }
        }
        Kind::StrictQ => {
            if c.np != 0 || c.nq < 1 || c.nu != 1 {
                return Err(semantics(Clause::StrictQData, c.id.clone()));
            }
        }
        Kind::Exceptional => {
            if c.nu < 2 {
                return Err(semantics(Clause::ExceptionalNu, c.id.clone()));
            }
        }
    }
    if c.kind.is_strict() && (c.self_intersection.is_some() || c.dicritical.is_some()) {
        return Err(semantics(Clause::ExceptionalOnlyField, c.id.clone()));
    }
    if c.is_dicritical() && c.np != c.nq {
        return Err(semantics(Clause::DicriticalData, c.id.clone()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_blowup() -> Vec<Component> {
        vec![
            Component::exceptional("E1", 1, 0, 2).with_self_intersection(-1),
            Component::strict_p("S", 1),
        ]
    }

    fn clause(r: Result<ResolutionGraph, GraphError>) -> Clause {
        match r {
            Err(GraphError::Semantics { clause, .. }) => clause,
            other => panic!("expected a semantics error, got {other:?}"),
        }
    }

    #[test]
    fn accepts_single_blowup() {
        let g = ResolutionGraph::new(single_blowup(), &[("E1", "S")]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.valence(0), 1);
    }

    #[test]
    fn rejects_bad_structure() {
        assert_eq!(
            clause(ResolutionGraph::new(single_blowup(), &[("E1", "X")])),
            Clause::UnknownId
        );
        assert_eq!(
            clause(ResolutionGraph::new(
                single_blowup(),
                &[] as &[(&str, &str)]
            )),
            Clause::Disconnected
        );
        let tri = vec![
            Component::exceptional("A", 1, 0, 2),
            Component::exceptional("B", 1, 0, 3),
            Component::exceptional("C", 2, 0, 4),
        ];
        assert_eq!(
            clause(ResolutionGraph::new(
                tri,
                &[("A", "B"), ("B", "C"), ("C", "A")]
            )),
            Clause::Cycle
        );
        let two_strict = vec![Component::strict_p("P", 1), Component::strict_q("Q", 1)];
        assert_eq!(
            clause(ResolutionGraph::new(two_strict, &[("P", "Q")])),
            Clause::StrictStrictEdge
        );
        let signs = vec![
            Component::exceptional("A", 3, 1, 2),
            Component::exceptional("B", 1, 3, 3),
        ];
        assert_eq!(
            clause(ResolutionGraph::new(signs, &[("A", "B")])),
            Clause::SignRule
        );
        let dup = vec![Component::strict_p("P", 1), Component::strict_p("P", 2)];
        assert_eq!(
            clause(ResolutionGraph::new(dup, &[] as &[(&str, &str)])),
            Clause::DuplicateId
        );
    }

    #[test]
    fn rejects_bad_component_data() {
        let bad = vec![Component {
            nq: 1,
            ..Component::strict_p("P", 1)
        }];
        assert_eq!(
            clause(ResolutionGraph::new(bad, &[] as &[(&str, &str)])),
            Clause::StrictPData
        );
        let bad = vec![Component::exceptional("E", 2, 1, 2).with_dicritical(true)];
        assert_eq!(
            clause(ResolutionGraph::new(bad, &[] as &[(&str, &str)])),
            Clause::DicriticalData
        );
        let bad = vec![Component::exceptional("E", 2, 1, 1)];
        assert_eq!(
            clause(ResolutionGraph::new(bad, &[] as &[(&str, &str)])),
            Clause::ExceptionalNu
        );
    }
}
