//! Single invariants on demand.

use crate::corpus::Corpus;
use baer_core::freeprod::{eval_c1, eval_c2_terms, PairInvariantData};
use baer_core::nilfree::baer_section;
use baer_core::pairmult::{central_formula, consistency_audit, HomologyOracle, Interpretation};
use std::fmt::Write;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Invariant {
    /// M(G) = H_2(G) from the bar complex
    Schur,
    /// H_k(G) for `--degree k`
    Homology,
    /// G^ab
    Abelianization,
    /// every route to M^(c)(G, N) and their agreement
    Audit,
    /// the central formula alone
    Central,
    /// M(G1 * G2, <N1 * N2>) for `--pair` and `--with`
    EvalC1,
    /// M^(2)(G1 * G2, <N1 * N2>) term by term
    EvalC2,
    /// (R ∩ [S, cF]) / [R, cF] for a corpus presentation
    Baer,
}

#[derive(Debug, Error)]
pub enum ComputeError {
    #[error("{0} is required for this invariant")]
    MissingArgument(&'static str),
    #[error("no {kind} named {name:?} in the corpus")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Failed(String),
}

#[derive(Clone, Debug, Default)]
pub struct Request {
    pub invariant: Option<Invariant>,
    pub group: Option<String>,
    pub pair: Option<String>,
    pub with: Option<String>,
    pub presentation: Option<String>,
    pub degree: usize,
    pub c: usize,
    pub interpretation: Interpretation,
}

fn lookup<'a, T>(
    name: &Option<String>,
    arg: &'static str,
    kind: &'static str,
    f: impl Fn(&str) -> Option<&'a T>,
) -> Result<&'a T, ComputeError> {
    let name = name.as_ref().ok_or(ComputeError::MissingArgument(arg))?;
    f(name).ok_or_else(|| ComputeError::Unknown { kind, name: name.clone() })
}

fn failed(e: impl ToString) -> ComputeError {
    ComputeError::Failed(e.to_string())
}

pub fn compute(corpus: &Corpus, req: &Request, oracle: &HomologyOracle) -> Result<String, ComputeError> {
    let invariant = req.invariant.ok_or(ComputeError::MissingArgument("an invariant"))?;
    let group = || lookup(&req.group, "--group", "group", |n| corpus.group(n));
    let pair = |name: &Option<String>, arg| lookup(name, arg, "pair", |n| corpus.pair(n).map(|p| &p.pair));
    match invariant {
        Invariant::Schur => Ok(oracle.schur_multiplier(group()?).map_err(failed)?.describe()),
        Invariant::Homology => Ok(oracle.homology(group()?, req.degree).map_err(failed)?.describe()),
        Invariant::Abelianization => Ok(group()?.abelianization().group().describe()),
        Invariant::Central => {
            let r = central_formula(pair(&req.pair, "--pair")?, req.c, req.interpretation);
            match r.value {
                Some(v) => Ok(v.describe()),
                None => Ok(format!("NA ({}): {}", r.reason.map_or("", |x| x.code()), r.notes.join("; "))),
            }
        }
        Invariant::Audit => {
            let a = consistency_audit(pair(&req.pair, "--pair")?, req.c, req.interpretation, oracle);
            let mut out = String::new();
            let _ = writeln!(out, "c = {}, interpretation {}", a.c, a.interpretation);
            for r in &a.routes {
                let v = match &r.value {
                    Some(v) => v.describe(),
                    None => format!("NA ({})", r.reason.map_or("", |x| x.code())),
                };
                let _ = writeln!(out, "  {:<18} {v}", r.route.tag());
            }
            if let Some(h) = &a.headline {
                let _ = writeln!(out, "headline: {} via {}", h.value.describe(), h.route.tag());
            }
            for (k, v) in &a.constraints {
                let _ = writeln!(out, "constraint {k}: {v}");
            }
            let _ = write!(out, "status: {}", a.status);
            Ok(out)
        }
        Invariant::EvalC1 | Invariant::EvalC2 => {
            let d1 = PairInvariantData::from_pair(pair(&req.pair, "--pair")?, oracle);
            let d2 = PairInvariantData::from_pair(pair(&req.with, "--with")?, oracle);
            if invariant == Invariant::EvalC1 {
                return Ok(match eval_c1(&d1, &d2) {
                    Ok(v) => v.describe(),
                    Err(e) => format!("NA (missing-data): {e}"),
                });
            }
            let t = match eval_c2_terms(&d1, &d2) {
                Ok(t) => t,
                Err(e) => return Ok(format!("NA (missing-data): {e}")),
            };
            let mut out = String::new();
            for term in &t.terms {
                let _ = writeln!(out, "  {:<30} {}", term.label, term.value);
            }
            let _ = write!(out, "{}", t.total.describe());
            Ok(out)
        }
        Invariant::Baer => {
            let p = lookup(&req.presentation, "--presentation", "presentation", |n| corpus.presentation(n))?;
            Ok(baer_section(p, req.c).map_err(failed)?.describe())
        }
    }
}
