//! JSON documents for each command. Text output renders the same values.

use merozeta::conjecture::{check_conjecture, Certificate};
use merozeta::exactalg::{format_rat, CycloProduct, Rat, RationalFunction, RootOfUnity};
use merozeta::poleanalysis::{
    alpha_bounds_audit, residue_contribution, veys_converse_audit, veys_witnesses, AlphaScope,
    AlphaStatus, Witness,
};
use merozeta::resgraph::{validate_relations, Kind, ResolutionGraph};
use merozeta::structure::{
    bamboo_ratio_constant, cd_components, ratio_identity_check, relevant_divisors, taxonomy,
    zero_components, ComponentValue, ShapeWarning, SubgraphComponent,
};
use merozeta::zeta::{candidate_poles, monodromy_zeta_origin, topo_zeta_global, topo_zeta_local};
use serde_json::{json, Map, Value};

/// A computation the exact kernel cannot finish (non-split denominator, huge coefficient).
pub struct Unsupported(pub String);

fn r(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

fn root_of_unity(xi: &RootOfUnity) -> Value {
    json!({"k": xi.k(), "n": xi.order()})
}

fn rational_function(z: &RationalFunction) -> Value {
    json!({
        "factored": z.render(),
        "reduced": z.render_expanded(),
        "numerator": z.numerator().coeffs().iter().map(r).collect::<Vec<_>>(),
        "denominator": z.denominator().coeffs().iter().map(r).collect::<Vec<_>>(),
    })
}

fn cyclo(z: &CycloProduct) -> Value {
    json!({
        "factored": z.render(),
        "reduced": z.render_expanded(),
        "exponents": z.exponents().iter().map(|(a, e)| json!([a, e])).collect::<Vec<_>>(),
    })
}

fn subgraph(c: &SubgraphComponent) -> Value {
    json!({
        "ids": c.ids,
        "boundary": c.boundary.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

fn meets_strict_p(g: &ResolutionGraph, c: &SubgraphComponent) -> bool {
    c.boundary
        .iter()
        .any(|(_, out)| g.by_id(out).map(|x| x.kind) == Some(Kind::StrictP))
}

pub fn zeta(g: &ResolutionGraph, global: bool) -> Value {
    let mut m = Map::new();
    m.insert("monodromy_zeta".into(), cyclo(&monodromy_zeta_origin(g)));
    m.insert(
        "topological_zeta".into(),
        rational_function(&topo_zeta_local(g)),
    );
    if global {
        m.insert(
            "topological_zeta_global".into(),
            rational_function(&topo_zeta_global(g)),
        );
    }
    Value::Object(m)
}

fn witness(w: &Witness) -> Value {
    match w {
        Witness::Exceptional { id, valence } => json!({"id": id, "valence": valence}),
        Witness::StrictP { id } => json!({"id": id, "strict_p": true}),
    }
}

pub fn poles(g: &ResolutionGraph) -> Result<Value, Unsupported> {
    let z = topo_zeta_local(g);
    let found = z.poles().map_err(|e| Unsupported(e.to_string()))?;
    let candidates = candidate_poles(g);
    let rows: Vec<Value> = found
        .iter()
        .map(|p| {
            let sources: Vec<&String> = candidates
                .iter()
                .filter(|c| c.location == p.location)
                .flat_map(|c| &c.components)
                .collect();
            let residues: Vec<Value> = sources
                .iter()
                .filter(|id| g.by_id(id).is_some_and(|c| c.is_exceptional()))
                .filter_map(|id| residue_contribution(g, id).ok().map(|v| json!([id, r(&v)])))
                .collect();
            json!({
                "location": r(&p.location),
                "order": p.order,
                "leading_coefficient": r(&p.leading_coefficient),
                "root_of_unity": root_of_unity(&RootOfUnity::from_exponent(&p.location)),
                "candidates": sources,
                "residue_contributions": residues,
                "veys_witnesses": veys_witnesses(g, &p.location).iter().map(witness).collect::<Vec<_>>(),
            })
        })
        .collect();
    let converse = veys_converse_audit(g);
    Ok(json!({
        "topological_zeta": z.render(),
        "poles": rows,
        "candidates": converse.entries.iter().map(|e| json!({
            "location": r(&e.location),
            "sources": e.sources,
            "is_pole": e.is_pole,
        })).collect::<Vec<_>>(),
    }))
}

pub fn check(g: &ResolutionGraph) -> Result<(Value, bool), Unsupported> {
    let report = check_conjecture(g).map_err(|e| Unsupported(e.to_string()))?;
    let rows: Vec<Value> = report
        .per_pole
        .iter()
        .map(|v| {
            let cert = match &v.certificate {
                Some(Certificate::BranchPoint(id)) => json!({"branch": id}),
                Some(Certificate::Origin(m)) => json!({"origin_multiplicity": m}),
                None => Value::Null,
            };
            json!({
                "pole": r(&v.pole),
                "root_of_unity": root_of_unity(&v.root_of_unity),
                "certificate": cert,
            })
        })
        .collect();
    let non_poles: Vec<Value> = candidate_poles(g)
        .iter()
        .filter(|c| report.per_pole.iter().all(|v| v.pole != c.location))
        .map(|c| r(&c.location))
        .collect();
    let holds = report.holds();
    Ok((
        json!({"holds": holds, "poles": rows, "candidates_not_poles": non_poles}),
        holds,
    ))
}

pub fn validate(g: &ResolutionGraph) -> (Value, bool) {
    let report = validate_relations(g);
    let check = |c: &Option<merozeta::resgraph::RelationCheck>| match c {
        Some(c) => json!({"lhs": r(&c.lhs), "rhs": r(&c.rhs), "holds": c.holds()}),
        None => Value::Null,
    };
    let rows: Vec<Value> = report
        .entries
        .iter()
        .map(|e| json!({"id": e.id, "neighbor_sum": check(&e.neighbor_sum), "alpha_sum": check(&e.alpha_sum)}))
        .collect();
    let ok = report.all_pass();
    (
        json!({"relations": rows, "all_pass": ok, "warnings": report.warnings}),
        ok,
    )
}

fn status(s: AlphaStatus) -> &'static str {
    match s {
        AlphaStatus::Inside => "inside",
        AlphaStatus::EndpointMinusOne => "endpoint -1",
        AlphaStatus::ExpectedUnbounded => "expected unbounded",
        AlphaStatus::Violation => "violation",
    }
}

pub fn audit(g: &ResolutionGraph, d: Option<u64>) -> Result<(Value, bool), Unsupported> {
    let mut ok = true;
    let t = taxonomy(g);
    let warnings: Vec<String> = t
        .warnings
        .iter()
        .map(|w| match w {
            ShapeWarning::PrimitiveBamboos { root, count } => {
                format!("{root} carries {count} primitive bamboos")
            }
            ShapeWarning::PrimitiveBranches { root, count } => {
                format!("{root} carries {count} primitive branches")
            }
        })
        .collect();
    let shape = json!({
        "valences": t.valences.iter().map(|(id, v)| json!([id, v])).collect::<Vec<_>>(),
        "bamboos": t.bamboos.iter().map(|b| json!({"root": b.root, "members": b.members, "primitive": b.primitive})).collect::<Vec<_>>(),
        "primitive_branches": t.primitive_branches.iter().map(|b| json!({"root": b.root, "ids": b.ids, "is_bamboo": b.is_bamboo})).collect::<Vec<_>>(),
        "warnings": warnings,
    });

    let mut ratios = Vec::new();
    for c in g.components().iter().filter(|c| c.is_exceptional()) {
        if let Ok(check) = ratio_identity_check(g, &c.id) {
            ok &= check.informational || check.holds();
            ratios.push(json!({
                "center": check.center,
                "p_side": r(&check.p_side),
                "q_side": r(&check.q_side),
                "holds": check.holds(),
                "informational": check.informational,
            }));
        }
    }

    let bamboos: Vec<Value> = bamboo_ratio_constant(g)
        .iter()
        .map(|b| {
            ok &= b.constant();
            json!({
                "root": b.root,
                "ratios": b.ratios.iter().map(|(id, x)| json!([id, r(x)])).collect::<Vec<_>>(),
                "constant": b.constant(),
            })
        })
        .collect();

    let holomorphic = g.components().iter().all(|c| c.nq == 0);
    let (scope_name, scope) = if holomorphic {
        ("holomorphic minimal", AlphaScope::HolomorphicMinimal)
    } else {
        ("P-subgraphs", AlphaScope::PSubgraph(None))
    };
    let alpha = alpha_bounds_audit(g, &scope).map_err(|e| Unsupported(e.to_string()))?;
    ok &= alpha.violations().next().is_none();
    let alpha = json!({
        "scope": scope_name,
        "subgraphs": alpha.subgraphs,
        "entries": alpha.entries.iter().map(|e| json!({
            "center": e.center,
            "neighbor": e.neighbor,
            "alpha": r(&e.alpha),
            "status": status(e.status),
        })).collect::<Vec<_>>(),
    });

    let zeros: Vec<Value> = zero_components(g)
        .iter()
        .map(|z| {
            ok &= z.meets_strict_p != Some(false);
            let value = match z.value {
                ComponentValue::Zero => "0",
                ComponentValue::Infinity => "infinity",
                ComponentValue::Other => "other",
            };
            json!({"component": subgraph(&z.component), "value": value, "meets_strict_p": z.meets_strict_p})
        })
        .collect();

    let ds = match d {
        Some(d) => vec![d],
        None => relevant_divisors(g),
    };
    let mut cd = Vec::new();
    for d in ds {
        let comps: Vec<Value> = cd_components(g, d)
            .iter()
            .map(|c| {
                let meets = meets_strict_p(g, &c.component);
                ok &= meets || c.euler_sum <= 0;
                json!({"component": subgraph(&c.component), "euler_sum": c.euler_sum, "meets_strict_p": meets})
            })
            .collect();
        cd.push(json!({"d": d, "components": comps}));
    }

    Ok((
        json!({
            "shape": shape,
            "ratio_identity": ratios,
            "bamboo_ratios": bamboos,
            "alpha_bounds": alpha,
            "zero_components": zeros,
            "c_d": cd,
            "passes": ok,
        }),
        ok,
    ))
}

pub fn report(
    g: &ResolutionGraph,
    global: bool,
    d: Option<u64>,
) -> Result<(Value, bool), Unsupported> {
    let (check, check_ok) = check(g)?;
    let (relations, relations_ok) = validate(g);
    let (structure, structure_ok) = audit(g, d)?;
    Ok((
        json!({
            "zeta": zeta(g, global),
            "poles": poles(g)?,
            "conjecture": check,
            "relations": relations,
            "structure": structure,
        }),
        check_ok && relations_ok && structure_ok,
    ))
}
