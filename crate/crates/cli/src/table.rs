//! Plain-text rendering of a report.

use crate::run::{Record, Report};
use baer_core::pairmult::Status;
use std::fmt::Write;

const PREFERRED: [&str; 6] = ["headline", "kernel", "c2", "c1", "m_g", "middle"];

fn detail(r: &Record) -> String {
    let v = &r.verdict;
    match v.status {
        Status::Na | Status::Underdetermined => {
            let reason = v.reason.map(|x| x.code().to_string()).unwrap_or_default();
            match v.notes.first() {
                Some(n) => format!("{reason}: {n}"),
                None => reason,
            }
        }
        Status::Mismatch | Status::Fail => {
            let mut parts: Vec<String> = v.witnesses.iter().map(|(k, x)| format!("{k} = {x}")).collect();
            if parts.is_empty() {
                parts = v.values.iter().filter(|(_, x)| matches!(x, baer_core::pairmult::Value::Bool(false))).map(|(k, _)| format!("{k} fails")).collect();
            }
            parts.join("; ")
        }
        Status::Pass => PREFERRED
            .iter()
            .find_map(|k| v.values.get(*k).map(|x| format!("{k} = {x}")))
            .unwrap_or_default(),
    }
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let wp = report.records.iter().map(|r| r.pair.chars().count()).max().unwrap_or(4).max(4);
    let _ = writeln!(out, "{:<wp$}  {:<12}  {:<15}  detail", "pair", "check", "status");
    for r in &report.records {
        let _ = writeln!(out, "{:<wp$}  {:<12}  {:<15}  {}", r.pair, r.check.id(), r.verdict.status.to_string(), detail(r));
    }
    let _ = writeln!(out, "\nsummary");
    for (check, counts) in &report.summary {
        let parts: Vec<String> = counts.iter().map(|(s, n)| format!("{s} {n}")).collect();
        let _ = writeln!(out, "  {check:<12}  {}", parts.join(", "));
    }
    if !report.na_reasons.is_empty() {
        let parts: Vec<String> = report.na_reasons.iter().map(|(s, n)| format!("{s} {n}")).collect();
        let _ = writeln!(out, "  NA reasons    {}", parts.join(", "));
    }
    if !report.findings.is_empty() {
        let _ = writeln!(out, "\nfindings ({})", report.findings.len());
        for f in &report.findings {
            let _ = writeln!(out, "  {} {} on {}: {}", f.status, f.check, f.pair, f.summary);
        }
    }
    let _ = writeln!(
        out,
        "\n{} records, {} structural failures, exit code {}",
        report.records.len(),
        report.structural_failures,
        report.exit_code
    );
    out
}
