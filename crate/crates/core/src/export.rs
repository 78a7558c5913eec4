//! JSON and LaTeX emitters. Rationals serialize as `p/q` strings; term order
//! is h-order ascending, then PBW-lexicographic on words, then slot order, so
//! identical inputs produce byte-identical documents.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::AlgebraDef;
use crate::contraction::{AppendixDiff, ContractionOutcome, DiffStatus, RClassification};
use crate::error::Result;
use crate::hopf::HopfReport;
use crate::rat::{rat_pq, rat_short};
use crate::reps::PolyMatrix;
use crate::rmatrix::CheckReport;
use crate::series::TensorSeries;
use crate::word::Word;

fn word_json(def: &AlgebraDef, w: &Word) -> Value {
    Value::Array(w.letters().iter().map(|&g| Value::String(def.gen_name(g).to_string())).collect())
}

pub fn series_json<const N: usize>(s: &TensorSeries<N>) -> Value {
    let def = s.algebra();
    let mut terms = Vec::new();
    for (k, p) in s.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            let slots: Vec<Value> = ws.iter().map(|w| word_json(def, w)).collect();
            terms.push(json!({
                "h": k,
                "slots": slots,
                "coeff": rat_pq(c),
            }));
        }
    }
    json!({ "order": s.order(), "terms": terms })
}

pub fn algebra_json(def: &Arc<AlgebraDef>, order: u32) -> Result<Value> {
    let gens: Vec<Value> = def.gen_ids().map(|g| Value::String(def.gen_name(g).to_string())).collect();
    let mut commutators = Vec::new();
    for x in def.gen_ids() {
        for y in def.gen_ids() {
            if x >= y {
                continue;
            }
            commutators.push(json!({
                "pair": [def.gen_name(x), def.gen_name(y)],
                "series": series_json(&def.commutator(x, y, order)?),
            }));
        }
    }
    let mut coproducts = Vec::new();
    let mut antipodes = Vec::new();
    let mut counits = Vec::new();
    for g in def.gen_ids() {
        coproducts.push(json!({
            "generator": def.gen_name(g),
            "series": series_json(&def.coproduct(g, order)?),
        }));
        antipodes.push(json!({
            "generator": def.gen_name(g),
            "series": series_json(&def.antipode(g, order)?),
        }));
        counits.push(json!({
            "generator": def.gen_name(g),
            "value": rat_pq(&def.counit(g)?),
        }));
    }
    Ok(json!({
        "schema": "algebra/1",
        "name": def.name,
        "description": def.descr,
        "parameter": def.param,
        "order": order,
        "generators": gens,
        "commutators": commutators,
        "coproducts": coproducts,
        "counits": counits,
        "antipodes": antipodes,
    }))
}

pub fn check_json(c: &CheckReport) -> Value {
    let mut v = json!({
        "name": c.name,
        "status": if c.pass { "pass" } else { "fail" },
    });
    if let Some(k) = c.first_nonzero_order {
        v["first_nonzero_order"] = json!(k);
        v["residual_terms"] = json!(c.residual_terms);
    }
    v
}

pub fn hopf_json(r: &HopfReport) -> Value {
    json!({
        "algebra": r.algebra,
        "order": r.order,
        "status": if r.pass() { "pass" } else { "fail" },
        "axioms": r.axioms.iter().map(check_json).collect::<Vec<_>>(),
    })
}

pub fn contraction_json(outcome: &ContractionOutcome, order: u32) -> Result<Value> {
    match outcome {
        ContractionOutcome::Contracted { def } => Ok(json!({
            "schema": "contraction/1",
            "status": "ok",
            "algebra": algebra_json(def, order)?,
        })),
        ContractionOutcome::NonContractible { mu, mode, offenders } => Ok(json!({
            "schema": "contraction/1",
            "status": "non_contractible",
            "mu": [mu.0, mu.1, mu.2],
            "mode": mode.name(),
            "offenders": offenders.iter().map(|o| json!({
                "entry": o.entry,
                "h_order": o.h_order,
                "term": o.term,
                "eps_exponent": o.eps_exponent,
            })).collect::<Vec<_>>(),
        })),
    }
}

pub fn diff_json(d: &AppendixDiff) -> Value {
    json!({
        "schema": "table-diff/1",
        "algebra": d.mu.name(),
        "order": d.order,
        "entries": d.entries.iter().map(|e| json!({
            "kind": e.kind,
            "key": e.key,
            "status": match e.status {
                DiffStatus::Match => "match",
                DiffStatus::Mismatch => "mismatch",
                DiffStatus::SourceOmitted => "source_omitted",
            },
            "engine": e.engine,
            "transcribed": e.transcribed,
        })).collect::<Vec<_>>(),
    })
}

pub fn classification_json(c: &RClassification) -> Value {
    json!({
        "schema": "r-classes/1",
        "order": c.order,
        "classes": c.classes.iter().map(|cl| json!({
            "label": cl.label,
            "members": cl.members.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "exponent": series_json(&cl.exponent),
        })).collect::<Vec<_>>(),
    })
}

pub fn matrix_json(m: &PolyMatrix) -> Value {
    let rows: Vec<Value> = (0..m.d)
        .map(|i| {
            Value::Array(
                (0..m.d)
                    .map(|j| {
                        Value::Array(m.at(i, j).coeffs().iter().map(|c| Value::String(rat_pq(c))).collect())
                    })
                    .collect(),
            )
        })
        .collect();
    json!({ "schema": "poly-matrix/1", "dim": m.d, "entries": rows })
}

// --- LaTeX -----------------------------------------------------------------

fn latex_word(def: &AlgebraDef, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let ls = w.letters();
    let mut i = 0;
    while i < ls.len() {
        let mut j = i;
        while j < ls.len() && ls[j] == ls[i] {
            j += 1;
        }
        let name = def.gen_latex(ls[i]);
        if j - i == 1 {
            out.push_str(&format!("{name}\\,"));
        } else {
            out.push_str(&format!("({name})^{{{}}}\\,", j - i));
        }
        i = j;
    }
    out
}

pub fn latex_series<const N: usize>(s: &TensorSeries<N>) -> String {
    let def = s.algebra();
    let mut parts = Vec::new();
    for (k, p) in s.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            let mut t = rat_short(c);
            if k > 0 {
                t.push_str(&format!("\\,{}^{{{k}}}", def.param_latex));
            }
            let slots: Vec<String> = ws.iter().map(|w| latex_word(def, w)).collect();
            t.push_str("\\,");
            t.push_str(&slots.join(" \\otimes "));
            parts.push(t);
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Structure tables in the layout used for contracted algebras: brackets,
/// nontrivial coproducts, antipodes.
pub fn latex_algebra(def: &Arc<AlgebraDef>, order: u32) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("%% {} : {}\n", def.name, def.descr));
    out.push_str("\\begin{array}{l}\n");
    for x in def.gen_ids() {
        for y in def.gen_ids() {
            if x >= y {
                continue;
            }
            let s = def.commutator(x, y, order)?;
            out.push_str(&format!(
                "[{}, {}] = {} \\\\\n",
                def.gen_latex(x),
                def.gen_latex(y),
                latex_series(&s)
            ));
        }
    }
    for g in def.gen_ids() {
        let s = def.coproduct(g, order)?;
        out.push_str(&format!("\\Delta {} = {} \\\\\n", def.gen_latex(g), latex_series(&s)));
    }
    for g in def.gen_ids() {
        let s = def.antipode(g, order)?;
        out.push_str(&format!("\\gamma({}) = {} \\\\\n", def.gen_latex(g), latex_series(&s)));
    }
    out.push_str("\\end{array}\n");
    Ok(out)
}

pub fn latex_matrix(m: &PolyMatrix, param: &str) -> String {
    let poly = |p: &crate::reps::QPoly| -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let cs = rat_short(c);
            match k {
                0 => parts.push(cs),
                1 if cs == "1" => parts.push(param.to_string()),
                1 => parts.push(format!("{cs}{param}")),
                _ if cs == "1" => parts.push(format!("{param}^{{{k}}}")),
                _ => parts.push(format!("{cs}{param}^{{{k}}}")),
            }
        }
        parts.join(" + ")
    };
    let mut out = String::from("\\begin{pmatrix}\n");
    for i in 0..m.d {
        let row: Vec<String> = (0..m.d).map(|j| poly(m.at(i, j))).collect();
        out.push_str(&row.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{pmatrix}\n");
    out
}
