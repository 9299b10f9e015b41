//! Isomorphism of resolution graphs up to relabelling, keeping kind and
//! `(N^P, N^Q, ν)`. Graphs are trees, so a canonical encoding rooted at the
//! centre suffices.

use super::model::{Kind, ResolutionGraph};

fn label(g: &ResolutionGraph, v: usize) -> String {
    let c = g.component(v);
    let k = match c.kind {
        Kind::Exceptional => 'E',
        Kind::StrictP => 'P',
        Kind::StrictQ => 'Q',
    };
    format!("{k}{},{},{}", c.np, c.nq, c.nu)
}

fn encode(g: &ResolutionGraph, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| encode(g, w, Some(v)))
        .collect();
    kids.sort();
    format!("({}{})", label(g, v), kids.concat())
}

/// One or two centres, by peeling leaves.
fn centres(g: &ResolutionGraph) -> Vec<usize> {
    let n = g.len();
    let mut degree: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Canonical string; equal strings mean isomorphic graphs.
pub fn canonical_form(g: &ResolutionGraph) -> String {
    centres(g)
        .into_iter()
        .map(|c| encode(g, c, None))
        .min()
        .unwrap_or_default()
}

pub fn isomorphic(a: &ResolutionGraph, b: &ResolutionGraph) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}
