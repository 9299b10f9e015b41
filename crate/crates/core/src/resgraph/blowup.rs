use super::model::{Component, Kind, ResolutionGraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("no edge between {0} and {1}")]
    UnknownEdge(String, String),
}

fn fresh_id(g: &ResolutionGraph) -> String {
    let mut k = g.components().iter().filter(|c| c.is_exceptional()).count() + 1;
    loop {
        let id = format!("E{k}");
        if g.index_of(&id).is_none() {
            return id;
        }
        k += 1;
    }
}

fn decrement(c: &mut Component) {
    if let Some(e) = c.self_intersection.as_mut() {
        *e -= 1;
    }
}

fn rebuild(components: Vec<Component>, edges: Vec<(String, String)>) -> ResolutionGraph {
    ResolutionGraph::rebuild(components, edges).expect("blowup preserves validity")
}

/// Blows up a point of `on` that lies on no other component.
pub fn blowup_free(g: &ResolutionGraph, on: &str) -> Result<ResolutionGraph, BlowupError> {
    let i = g
        .index_of(on)
        .ok_or_else(|| BlowupError::UnknownComponent(on.to_string()))?;
    let base = g.component(i);
    let new = Component::exceptional(fresh_id(g), base.np, base.nq, base.nu + 1)
        .with_self_intersection(-1);
    let mut components = g.components().to_vec();
    decrement(&mut components[i]);
    let mut edges = g.edge_ids();
    edges.push((on.to_string(), new.id.clone()));
    components.push(new);
    Ok(rebuild(components, edges))
}

/// Blows up the intersection point of two adjacent components.
pub fn blowup_satellite(
    g: &ResolutionGraph,
    a: &str,
    b: &str,
) -> Result<ResolutionGraph, BlowupError> {
    let unknown = || BlowupError::UnknownEdge(a.to_string(), b.to_string());
    let i = g.index_of(a).ok_or_else(unknown)?;
    let j = g.index_of(b).ok_or_else(unknown)?;
    if !g.are_adjacent(i, j) {
        return Err(unknown());
    }
    let (ci, cj) = (g.component(i), g.component(j));
    let new = Component::exceptional(fresh_id(g), ci.np + cj.np, ci.nq + cj.nq, ci.nu + cj.nu)
        .with_self_intersection(-1);
    let mut components = g.components().to_vec();
    decrement(&mut components[i]);
    decrement(&mut components[j]);
    let mut edges: Vec<(String, String)> = g
        .edge_ids()
        .into_iter()
        .filter(|(x, y)| !((x == a && y == b) || (x == b && y == a)))
        .collect();
    edges.push((a.to_string(), new.id.clone()));
    edges.push((new.id.clone(), b.to_string()));
    components.push(new);
    Ok(rebuild(components, edges))
}

/// The graph of `1/f`: swaps the roles of `P` and `Q`.
pub fn invert_germ(g: &ResolutionGraph) -> ResolutionGraph {
    let components = g
        .components()
        .iter()
        .map(|c| Component {
            kind: match c.kind {
                Kind::Exceptional => Kind::Exceptional,
                Kind::StrictP => Kind::StrictQ,
                Kind::StrictQ => Kind::StrictP,
            },
            np: c.nq,
            nq: c.np,
            ..c.clone()
        })
        .collect();
    rebuild(components, g.edge_ids())
}
