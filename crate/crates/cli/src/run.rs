//! Batch verification over a corpus.

use crate::corpus::{Corpus, NamedPair};
use baer_core::freeprod::{
    cor44_implication, eval_c1, eval_c2, eval_c2_terms, thm43_hypotheses, Level, PairInvariantData,
};
use baer_core::homology::HomologyBounds;
use baer_core::pairmult::{
    consistency_audit, five_term_check, lemma38_check, mn_check, oracle_cross_check, semidirect_splitting_check,
    thm39_tail_check, ConsistencyVerdict, HomologyOracle, Interpretation, NaReason, Status, Value, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    FiveTerm,
    Lemma38,
    Thm33,
    Thm35,
    Thm36Audit,
    Thm39Tail,
    Thm41Eval,
    Thm43,
    Cor44,
    OracleCross,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::FiveTerm,
        CheckId::Lemma38,
        CheckId::Thm33,
        CheckId::Thm35,
        CheckId::Thm36Audit,
        CheckId::Thm39Tail,
        CheckId::Thm41Eval,
        CheckId::Thm43,
        CheckId::Cor44,
        CheckId::OracleCross,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckId::FiveTerm => "five-term",
            CheckId::Lemma38 => "lemma38",
            CheckId::Thm33 => "thm33",
            CheckId::Thm35 => "thm35",
            CheckId::Thm36Audit => "thm36-audit",
            CheckId::Thm39Tail => "thm39-tail",
            CheckId::Thm41Eval => "thm41-eval",
            CheckId::Thm43 => "thm43",
            CheckId::Cor44 => "cor44",
            CheckId::OracleCross => "oracle-cross",
        }
    }

    /// A FAIL here means a forced identity broke, which sets exit code 1.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            CheckId::FiveTerm | CheckId::OracleCross | CheckId::Thm33 | CheckId::Thm39Tail | CheckId::Thm41Eval
        )
    }

    fn needs_partner(self) -> bool {
        matches!(self, CheckId::Thm41Eval | CheckId::Thm43 | CheckId::Cor44)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub checks: Vec<CheckId>,
    pub max_order: usize,
    pub h3_max_order: usize,
    pub c: usize,
    pub interpretation: Interpretation,
    pub seed: u64,
    #[serde(skip)]
    pub sequential: bool,
}

impl Default for Config {
    fn default() -> Self {
        let b = HomologyBounds::default();
        Config {
            checks: CheckId::ALL.to_vec(),
            max_order: b.max_order,
            h3_max_order: b.h3_max_order,
            c: 1,
            interpretation: Interpretation::Reduced,
            seed: 0,
            sequential: false,
        }
    }
}

impl Config {
    pub fn bounds(&self) -> HomologyBounds {
        HomologyBounds { max_order: self.max_order, h3_max_order: self.h3_max_order }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub pair: String,
    pub check: CheckId,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub pair: String,
    pub check: CheckId,
    pub status: Status,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: Config,
    pub records: Vec<Record>,
    /// Status counts per check.
    pub summary: BTreeMap<String, BTreeMap<String, usize>>,
    /// NA counts per reason code.
    pub na_reasons: BTreeMap<String, usize>,
    /// MISMATCH records and FAIL records on non-structural checks.
    pub findings: Vec<Finding>,
    pub structural_failures: usize,
    pub exit_code: i32,
}

/// Data shared by every task of one run.
struct Context<'a> {
    pairs: &'a [&'a NamedPair],
    config: &'a Config,
    oracle: HomologyOracle,
    data: Vec<PairInvariantData>,
}

fn partner(seed: u64, index: usize, len: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    rng.gen_range(0..len)
}

pub fn run_checks(corpus: &Corpus, config: &Config) -> Report {
    let mut pairs: Vec<&NamedPair> = corpus.pairs.iter().collect();
    pairs.sort_by(|a, b| a.name.cmp(&b.name));
    let mut checks = config.checks.clone();
    checks.sort_by_key(|c| c.id());
    checks.dedup();
    let oracle = HomologyOracle::new(config.bounds());
    let want_data = checks.iter().any(|c| matches!(c, CheckId::Thm41Eval | CheckId::Thm43));
    let data: Vec<PairInvariantData> = if !want_data {
        Vec::new()
    } else if config.sequential {
        pairs.iter().map(|p| PairInvariantData::from_pair(&p.pair, &oracle)).collect()
    } else {
        pairs.par_iter().map(|p| PairInvariantData::from_pair(&p.pair, &oracle)).collect()
    };
    let ctx = Context { pairs: &pairs, config, oracle, data };
    let tasks: Vec<(usize, CheckId)> = (0..pairs.len()).flat_map(|i| checks.iter().map(move |&c| (i, c))).collect();
    let run = |&(i, check): &(usize, CheckId)| {
        let start = Instant::now();
        let verdict = run_one(&ctx, i, check);
        Record {
            pair: pairs[i].name.clone(),
            check,
            verdict,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    };
    let mut records: Vec<Record> =
        if config.sequential { tasks.iter().map(run).collect() } else { tasks.par_iter().map(run).collect() };
    records.sort_by(|a, b| (&a.pair, a.check.id()).cmp(&(&b.pair, b.check.id())));
    assemble(config.clone(), records)
}

fn assemble(config: Config, records: Vec<Record>) -> Report {
    let mut summary: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut na_reasons = BTreeMap::new();
    let mut findings = Vec::new();
    let mut structural_failures = 0;
    for r in &records {
        let status = r.verdict.status;
        *summary.entry(r.check.id().into()).or_default().entry(status.to_string()).or_default() += 1;
        if let Some(reason) = r.verdict.reason {
            if status == Status::Na {
                *na_reasons.entry(reason.code().to_string()).or_default() += 1;
            }
        }
        if status == Status::Fail && r.check.is_structural() {
            structural_failures += 1;
        }
        if status == Status::Mismatch || status == Status::Fail {
            findings.push(Finding { pair: r.pair.clone(), check: r.check, status, summary: finding_summary(r) });
        }
    }
    Report {
        tool: "baer".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config,
        records,
        summary,
        na_reasons,
        findings,
        structural_failures,
        exit_code: i32::from(structural_failures > 0),
    }
}

fn finding_summary(r: &Record) -> String {
    let v = &r.verdict;
    let show = |keys: &[&str]| {
        keys.iter()
            .filter_map(|k| v.values.get(*k).map(|x| format!("{k} = {x}")))
            .collect::<Vec<_>>()
            .join(", ")
    };
    match r.check {
        CheckId::Thm36Audit => {
            let routes: Vec<String> =
                v.values.iter().filter(|(k, _)| k.starts_with("route.")).map(|(k, x)| format!("{} = {x}", &k[6..])).collect();
            routes.join(", ")
        }
        CheckId::Lemma38 => show(&["kernel", "predicted"]),
        CheckId::Thm35 => show(&["left", "right", "hypothesis_m_iso_mn"]),
        CheckId::Cor44 => {
            let failing: Vec<String> =
                v.witnesses.iter().map(|(k, x)| format!("{k} = {x}")).collect();
            format!("coprime abelianizations, yet {}", failing.join(", "))
        }
        _ => v.notes.first().cloned().unwrap_or_default(),
    }
}

fn run_one(ctx: &Context, i: usize, check: CheckId) -> Verdict {
    let p = &ctx.pairs[i].pair;
    let o = &ctx.oracle;
    let cfg = ctx.config;
    let j = if check.needs_partner() { partner(cfg.seed, i, ctx.pairs.len()) } else { i };
    let mut v = match check {
        CheckId::FiveTerm => five_term_check(p, o),
        CheckId::Lemma38 => lemma38_check(p),
        CheckId::Thm33 => semidirect_splitting_check(p, o),
        CheckId::Thm39Tail => thm39_tail_check(p),
        CheckId::OracleCross => oracle_cross_check(p, o),
        CheckId::Thm35 => {
            let g = p.group();
            let (m, choice) = match p.find_complement() {
                Some(q) => (q, "complement"),
                None => (g.whole(), "whole group"),
            };
            let mut v = mn_check(g, &m, p.normal(), cfg.c, cfg.interpretation, o);
            v.set("m_choice", choice);
            v
        }
        CheckId::Thm36Audit => audit_verdict(&consistency_audit(p, cfg.c, cfg.interpretation, o)),
        CheckId::Thm41Eval => thm41_verdict(&ctx.data[i], &ctx.data[j]),
        CheckId::Thm43 => thm43_verdict(&ctx.data[i], &ctx.data[j]),
        CheckId::Cor44 => {
            let imp = cor44_implication(p.group(), ctx.pairs[j].pair.group(), o);
            let mut v = Verdict::new(imp.status());
            if imp.holds.is_none() {
                v.reason = Some(NaReason::HomologyBound);
            }
            v.set("partner_group", ctx.pairs[j].group.as_str());
            v.set("order_g1_ab", imp.coprime.order_g1_ab as usize);
            v.set("order_g2_ab", imp.coprime.order_g2_ab as usize);
            v.set("coprime", imp.coprime.coprime);
            if let Some(c) = &imp.coprime.conclusion {
                v.set("conclusion", c.as_str());
            }
            for c in &imp.group_level {
                let x = c.value.as_ref().map_or(Value::from("unknown"), Value::from);
                if imp.coprime.coprime && c.holds == Some(false) {
                    v.witness(&c.label, x.clone());
                }
                v.set(&c.label, x);
            }
            v
        }
    };
    if check.needs_partner() {
        v.set("partner", ctx.pairs[j].name.as_str());
    }
    v
}

fn audit_verdict(a: &ConsistencyVerdict) -> Verdict {
    let mut v = Verdict::new(a.status);
    v.set("c", a.c);
    v.set("interpretation", a.interpretation.to_string());
    for r in &a.routes {
        let x = match &r.value {
            Some(g) => Value::from(g),
            None => Value::from(format!("NA({})", r.reason.map_or("none", |x| x.code()))),
        };
        v.set(&format!("route.{}", r.route.tag()), x);
    }
    if let Some(h) = &a.headline {
        v.set("headline", &h.value);
        v.set("headline_route", h.route.tag());
    }
    for (k, x) in &a.constraints {
        v.set(&format!("constraint.{k}"), x.clone());
    }
    if a.status == Status::Mismatch {
        for r in a.routes.iter().filter(|r| r.applicable) {
            let mut note = r.notes.join("; ");
            if note.is_empty() {
                note = r.route.tag().into();
            }
            v.witness(r.route.tag(), format!("{} ({note})", r.value.as_ref().expect("applicable")));
        }
    }
    v
}

fn thm41_verdict(d1: &PairInvariantData, d2: &PairInvariantData) -> Verdict {
    let c1 = match (eval_c1(d1, d2), eval_c1(d2, d1)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Verdict::na(NaReason::MissingData, e.to_string()),
    };
    let mut checks = vec![("c1_symmetric", c1.0 == c1.1)];
    let mut values: Vec<(String, Value)> = vec![("c1".into(), Value::from(&c1.0))];
    let mut notes = Vec::new();
    match (eval_c2_terms(d1, d2), eval_c2(d2, d1)) {
        (Ok(t), Ok(swapped)) => {
            checks.push(("c2_symmetric", t.total == swapped));
            values.push(("c2".into(), Value::from(&t.total)));
            for (k, term) in t.terms.iter().enumerate() {
                if !term.value.is_trivial() {
                    values.push((format!("c2.term{:02} {}", k + 1, term.label), Value::from(&term.value)));
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => notes.push(format!("c2 not evaluated: {e}")),
    }
    let mut v = Verdict::from_subchecks(&checks);
    for (k, x) in values {
        v.set(&k, x);
    }
    for n in notes {
        v.note(n);
    }
    v
}

fn thm43_verdict(d1: &PairInvariantData, d2: &PairInvariantData) -> Verdict {
    let r = thm43_hypotheses(d1, d2);
    let mut v = Verdict::new(r.status);
    v.reason = r.reason;
    for c in &r.conditions {
        let level = match c.level {
            Level::Quotient => "quotient",
            Level::Group => "group",
        };
        let x = c.value.as_ref().map_or(Value::from("unknown"), Value::from);
        v.set(&format!("{level}: {}", c.label), x);
    }
    if let Some(c) = &r.conclusion {
        v.set("conclusion", c.as_str());
    }
    for c in r.failing() {
        v.note(format!("{} ≠ 0", c.label));
    }
    v
}
