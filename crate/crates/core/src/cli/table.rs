//! Plain-text rendering of reports.

use std::fmt::Write;

use serde_json::Value;

use super::{DocumentReport, Outcome};

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn verdict_rows(out: &mut String, verdicts: &[Value]) {
    let _ = writeln!(out, "    {:<16} {:<10} {:>6} {:>6}  failed", "theorem", "applicable", "bound", "lhs");
    for v in verdicts {
        let _ = writeln!(
            out,
            "    {:<16} {:<10} {:>6} {:>6}  {}",
            cell(&v["theorem_id"]),
            cell(&v["applicable"]),
            cell(&v["genus_lower_bound"]),
            cell(&v["lhs"]),
            cell(&v["failed_hypotheses"]),
        );
    }
}

fn render_ok(out: &mut String, v: &Value) {
    for w in v["warnings"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  warning [{}] {}: {}", cell(&w["rule"]), cell(&w["path"]), cell(&w["message"]));
    }
    match v["query"].as_str().unwrap_or_default() {
        "genus_bound" => {
            for r in v["results"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "  spinc {}  d_s={}  l(Σ)={} ({})  orientation flipped: {}",
                    cell(&r["spinc"]),
                    cell(&r["d_s"]),
                    cell(&r["l_sigma"]["value"]),
                    cell(&r["l_sigma"]["source"]),
                    cell(&r["normalization_applied"]),
                );
                verdict_rows(out, r["verdicts"].as_array().map(Vec::as_slice).unwrap_or_default());
                let _ = writeln!(out, "    best_bound {}", cell(&r["best_bound"]));
            }
            let _ = writeln!(out, "  best_bound {}", cell(&v["best_bound"]));
        }
        "max_insertion_degree" => {
            for r in v["results"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "  spinc {}  d(b)={}  degree_cap={}",
                    cell(&r["spinc"]),
                    cell(&r["insertion_degree"]),
                    cell(&r["degree_cap"])
                );
                verdict_rows(out, std::slice::from_ref(&r["verdict"]));
            }
        }
        "blowup" => {
            let r = &v["result"];
            let b = &r["blown_up"];
            let _ = writeln!(
                out,
                "  r={}  n'={}  chi'={}  tau'={}",
                cell(&r["r"]),
                cell(&b["surface"]["self_intersection"]),
                cell(&b["manifold"]["chi"]),
                cell(&b["manifold"]["tau"]),
            );
            for s in b["spinc"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "    spinc {}  e'={}  c1²'={}  d'={}",
                    cell(&s["name"]),
                    cell(&s["pairing_e"]),
                    cell(&s["c1_square"]),
                    cell(&s["d_s"]),
                );
            }
        }
        "l_invariant" => {
            let r = &v["result"];
            let _ = writeln!(
                out,
                "  l={}  max(0, g - b1)={}  dim ker={}",
                cell(&r["l_invariant"]),
                cell(&r["referee_bound"]),
                cell(&r["kernel_rank"]),
            );
        }
        "complete_primitive" => {
            let r = &v["result"];
            for s in r["steps"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "    {}", cell(&s["text"]));
            }
            let _ = writeln!(out, "  completed in slot {} ({} steps)", cell(&r["slot"]), r["steps"].as_array().map_or(0, Vec::len));
        }
        _ => {}
    }
    if v["query"] != "l_invariant" && !v["l_invariant"].is_null() {
        let _ = writeln!(out, "  l_invariant {}", cell(&v["l_invariant"]));
    }
}

pub fn render_table(report: &DocumentReport) -> String {
    let mut out = String::new();
    for (i, o) in report.outcomes.iter().enumerate() {
        match o {
            Outcome::Ok(v) => {
                let _ = writeln!(out, "case {}: {} ok", i + 1, cell(&v["query"]));
                render_ok(&mut out, v);
            }
            Outcome::InputError(errors) => {
                let _ = writeln!(out, "case {}: input error", i + 1);
                for e in errors {
                    let _ = writeln!(out, "  [{}] {}: {}", e.rule, e.path, e.message);
                }
            }
            Outcome::Internal(message) => {
                let _ = writeln!(out, "case {}: internal error: {message}", i + 1);
            }
        }
    }
    out
}
