//! JSON graph files.

use serde::{Deserialize, Serialize};

use super::model::{Component, GraphError, Kind, ResolutionGraph};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    components: Vec<ComponentRecord>,
    edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum KindRecord {
    #[serde(rename = "exceptional")]
    Exceptional,
    #[serde(rename = "strict_P")]
    StrictP,
    #[serde(rename = "strict_Q")]
    StrictQ,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRecord {
    id: String,
    kind: KindRecord,
    #[serde(rename = "NP")]
    np: u64,
    #[serde(rename = "NQ")]
    nq: u64,
    nu: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    self_intersection: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dicritical: Option<bool>,
}

impl From<KindRecord> for Kind {
    fn from(k: KindRecord) -> Kind {
        match k {
            KindRecord::Exceptional => Kind::Exceptional,
            KindRecord::StrictP => Kind::StrictP,
            KindRecord::StrictQ => Kind::StrictQ,
        }
    }
}

impl From<Kind> for KindRecord {
    fn from(k: Kind) -> KindRecord {
        match k {
            Kind::Exceptional => KindRecord::Exceptional,
            Kind::StrictP => KindRecord::StrictP,
            Kind::StrictQ => KindRecord::StrictQ,
        }
    }
}

pub fn parse_graph(text: &[u8]) -> Result<ResolutionGraph, GraphError> {
    let file: GraphFile =
        serde_json::from_slice(text).map_err(|e| GraphError::Syntax(e.to_string()))?;
    let components = file
        .components
        .into_iter()
        .map(|r| Component {
            id: r.id,
            kind: r.kind.into(),
            np: r.np,
            nq: r.nq,
            nu: r.nu,
            self_intersection: r.self_intersection,
            dicritical: r.dicritical,
        })
        .collect();
    let edges: Vec<(String, String)> = file.edges.into_iter().map(|[a, b]| (a, b)).collect();
    ResolutionGraph::new(components, &edges)
}

/// Canonical form: components sorted by id, each edge as a sorted pair, edges sorted.
pub fn serialize_graph(g: &ResolutionGraph) -> String {
    let mut components: Vec<ComponentRecord> = g
        .components()
        .iter()
        .map(|c| ComponentRecord {
            id: c.id.clone(),
            kind: c.kind.into(),
            np: c.np,
            nq: c.nq,
            nu: c.nu,
            self_intersection: c.self_intersection,
            dicritical: c.dicritical,
        })
        .collect();
    components.sort_by(|a, b| a.id.cmp(&b.id));
    let mut edges: Vec<[String; 2]> = g
        .edge_ids()
        .into_iter()
        .map(|(a, b)| if a <= b { [a, b] } else { [b, a] })
        .collect();
    edges.sort();
    let mut s =
        serde_json::to_string_pretty(&GraphFile { components, edges }).expect("graph serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resgraph::model::Clause;

    const SMALL: &str = r#"{
        "components": [
            {"id": "S", "kind": "strict_P", "NP": 1, "NQ": 0, "nu": 1},
            {"id": "E1", "kind": "exceptional", "NP": 1, "NQ": 0, "nu": 2, "self_intersection": -1}
        ],
        "edges": [["S", "E1"]]
    }"#;

    #[test]
    fn round_trip_is_canonical() {
        let g = parse_graph(SMALL.as_bytes()).unwrap();
        let text = serialize_graph(&g);
        assert!(text.find("\"E1\"").unwrap() < text.find("\"S\"").unwrap());
        let again = serialize_graph(&parse_graph(text.as_bytes()).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn unknown_keys_and_bad_kinds_are_syntax_errors() {
        let extra = SMALL.replace("\"nu\": 1}", "\"nu\": 1, \"colour\": 3}");
        assert!(matches!(
            parse_graph(extra.as_bytes()),
            Err(GraphError::Syntax(_))
        ));
        let kind = SMALL.replace("strict_P", "strictP");
        assert!(matches!(
            parse_graph(kind.as_bytes()),
            Err(GraphError::Syntax(_))
        ));
        assert!(matches!(
            parse_graph(b"{\"components\": []"),
            Err(GraphError::Syntax(_))
        ));
    }

    #[test]
    fn strict_with_self_intersection_is_rejected() {
        let bad = SMALL.replace("\"nu\": 1}", "\"nu\": 1, \"self_intersection\": -1}");
        match parse_graph(bad.as_bytes()) {
            Err(GraphError::Semantics { clause, .. }) => {
                assert_eq!(clause, Clause::ExceptionalOnlyField)
            }
            other => panic!("{other:?}"),
        }
    }
}
