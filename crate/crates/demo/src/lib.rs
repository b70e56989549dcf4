//! Browser bindings for a handful of computations on small groups.
//!
//! Groups are written as products of `Zn`, `Dn` (the `n`-gon), `Qn`
//! (quaternion of order `n`), `Sn` and `An`, e.g. `Z4 x Z2`. Normal
//! subgroups are referred to by their position in [`normal_subgroups`].
//! Every function returns a JSON string.

use baer_core::abgrp::AbelianGroup;
use baer_core::fingrp::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric, FiniteGroup, PairOfGroups};
use baer_core::freeprod::{eval_c1, eval_c2_terms, PairInvariantData};
use baer_core::pairmult::{consistency_audit, HomologyOracle, Interpretation};
use serde_json::{json, Value};
use std::sync::Arc;
use wasm_bindgen::prelude::*;

/// Largest group the demo will enumerate subgroups of.
pub const MAX_ORDER: usize = 48;

fn factor(s: &str) -> Result<FiniteGroup, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(FiniteGroup::trivial());
    }
    let (kind, n) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let n: usize = n.trim().parse().map_err(|_| format!("cannot read {s:?}; try Z4, D4, Q8, S3 or A4"))?;
    let g = match kind {
        "Z" | "C" => cyclic(n),
        "D" => dihedral(n),
        "Q" => quaternion(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => return Err(format!("unknown family {kind:?} in {s:?}")),
    };
    g.map_err(|e| format!("{s}: {e}"))
}

/// Parses `Z4 x Z2`-style names.
pub fn parse_group(spec: &str) -> Result<Arc<FiniteGroup>, String> {
    let mut acc: Option<FiniteGroup> = None;
    for part in spec.split(['x', '×', '*']) {
        let f = factor(part)?;
        acc = Some(match acc {
            None => f,
            Some(a) => direct_product(&a, &f),
        });
        if acc.as_ref().unwrap().order() > MAX_ORDER {
            return Err(format!("{spec} has more than {MAX_ORDER} elements"));
        }
    }
    acc.map(Arc::new).ok_or_else(|| "empty group name".to_string())
}

fn pair(spec: &str, index: usize) -> Result<PairOfGroups, String> {
    let g = parse_group(spec)?;
    let normals = g.normal_subgroups();
    let n = normals
        .get(index)
        .cloned()
        .ok_or_else(|| format!("{spec} has {} normal subgroups; index {index} is out of range", normals.len()))?;
    PairOfGroups::new(g, n).map_err(|e| e.to_string())
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({ "text": g.to_string(), "free_rank": g.free_rank(), "torsion": g.torsion() })
}

fn or_na<E: std::fmt::Display>(r: Result<AbelianGroup, E>) -> Value {
    match r {
        Ok(g) => group_json(&g),
        Err(e) => json!({ "na": e.to_string() }),
    }
}

/// `[{index, order, generators, central}]` for every normal subgroup.
pub fn normal_subgroups(spec: &str) -> Result<String, String> {
    let g = parse_group(spec)?;
    let list: Vec<Value> = g
        .normal_subgroups()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let gens: Vec<String> = g.generating_set(n).iter().map(|&x| g.label(x)).collect();
            json!({ "index": i, "order": n.order(), "generators": gens, "central": g.is_central(n) })
        })
        .collect();
    Ok(Value::Array(list).to_string())
}

/// Order, abelianization, `M(G)` and `H_3(G)`.
pub fn multiplier(spec: &str) -> Result<String, String> {
    let g = parse_group(spec)?;
    let oracle = HomologyOracle::default();
    Ok(json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "abelianization": group_json(g.abelianization().group()),
        "schur": or_na(oracle.schur_multiplier(&g)),
        "h3": or_na(oracle.homology(&g, 3)),
    })
    .to_string())
}

/// Every route to `M^(c)(G, N)` and whether they agree.
pub fn audit(spec: &str, index: usize, c: usize, literal: bool) -> Result<String, String> {
    if !(1..=2).contains(&c) {
        return Err("c must be 1 or 2".into());
    }
    let p = pair(spec, index)?;
    let interpretation = if literal { Interpretation::Literal } else { Interpretation::Reduced };
    let v = consistency_audit(&p, c, interpretation, &HomologyOracle::default());
    let routes: Vec<Value> = v
        .routes
        .iter()
        .map(|r| {
            let value = match &r.value {
                Some(g) => group_json(g),
                None => json!({ "na": r.reason.map_or("", |x| x.code()) }),
            };
            json!({ "route": r.route.tag(), "value": value })
        })
        .collect();
    let constraints: serde_json::Map<String, Value> =
        v.constraints.iter().map(|(k, x)| (k.clone(), Value::String(x.to_string()))).collect();
    Ok(json!({
        "group_order": p.group().order(),
        "normal_order": p.normal().order(),
        "c": c,
        "status": v.status.to_string(),
        "routes": routes,
        "headline": v.headline.as_ref().map(|h| json!({ "route": h.route.tag(), "value": group_json(&h.value) })),
        "constraints": constraints,
    })
    .to_string())
}

/// `M(G1 * G2, N)` and the eleven summands at class two.
pub fn free_product(spec1: &str, index1: usize, spec2: &str, index2: usize) -> Result<String, String> {
    let oracle = HomologyOracle::default();
    let d1 = PairInvariantData::from_pair(&pair(spec1, index1)?, &oracle);
    let d2 = PairInvariantData::from_pair(&pair(spec2, index2)?, &oracle);
    let c1 = or_na(eval_c1(&d1, &d2));
    let c2 = match eval_c2_terms(&d1, &d2) {
        Ok(t) => json!({
            "terms": t.terms.iter().map(|x| json!({ "label": x.label, "value": group_json(&x.value) })).collect::<Vec<_>>(),
            "total": group_json(&t.total),
        }),
        Err(e) => json!({ "na": e.to_string() }),
    };
    let notes: Vec<&String> = d1.notes.iter().chain(&d2.notes).collect();
    Ok(json!({ "c1": c1, "c2": c2, "notes": notes }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = normalSubgroups)]
pub fn normal_subgroups_js(spec: &str) -> Result<String, JsError> {
    js(normal_subgroups(spec))
}

#[wasm_bindgen(js_name = multiplier)]
pub fn multiplier_js(spec: &str) -> Result<String, JsError> {
    js(multiplier(spec))
}

#[wasm_bindgen(js_name = audit)]
pub fn audit_js(spec: &str, index: usize, c: usize, literal: bool) -> Result<String, JsError> {
    js(audit(spec, index, c, literal))
}

#[wasm_bindgen(js_name = freeProduct)]
pub fn free_product_js(spec1: &str, index1: usize, spec2: &str, index2: usize) -> Result<String, JsError> {
    js(free_product(spec1, index1, spec2, index2))
}
