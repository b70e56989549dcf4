//! Multipliers of pairs `(G, N)`: every available route to `M^(c)(G, N)`,
//! the audit that compares them, and the sequence checks around them.

mod checks;
mod routes;

pub use checks::{
    five_term_check, lemma38_check, mn_check, oracle_cross_check, semidirect_splitting_check, thm39_tail_check,
    FiveTermPieces,
};
pub use routes::{
    central_formula, consistency_audit, hopf_route, semidirect_kernel, specialization, ConsistencyVerdict, Headline, Route,
    RouteResult,
};

use crate::abgrp::{AbelianGroup, AbelianHom};
use crate::fingrp::{FiniteGroup, GroupHom};
use crate::homology::{group_homology, induced_on_homology, integral_homology, HomologyBounds, HomologyError, HomologyGroup};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Mismatch,
    Na,
    Underdetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Mismatch => "MISMATCH",
            Status::Na => "NA",
            Status::Underdetermined => "UNDERDETERMINED",
        };
        f.write_str(s)
    }
}

/// Machine-readable reason attached to every NA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaReason {
    NoComplement,
    NotCentral,
    NotNcCentral,
    NonabelianNormal,
    LiteralQuotientNonabelian,
    HomologyBound,
    NilfreeScope,
    NonabelianGroup,
    CUnsupported,
    NotSpecial,
    NotNormal,
    HypothesesNotSatisfied,
    NotCoprime,
    MissingData,
    Arithmetic,
}

impl NaReason {
    pub fn code(self) -> &'static str {
        match self {
            NaReason::NoComplement => "no-complement",
            NaReason::NotCentral => "not-central",
            NaReason::NotNcCentral => "not-nc-central",
            NaReason::NonabelianNormal => "nonabelian-normal",
            NaReason::LiteralQuotientNonabelian => "literal-quotient-nonabelian",
            NaReason::HomologyBound => "homology-bound",
            NaReason::NilfreeScope => "nilfree-scope",
            NaReason::NonabelianGroup => "nonabelian-group",
            NaReason::CUnsupported => "c-unsupported",
            NaReason::NotSpecial => "not-special",
            NaReason::NotNormal => "not-normal",
            NaReason::HypothesesNotSatisfied => "hypotheses-not-satisfied",
            NaReason::NotCoprime => "not-coprime",
            NaReason::MissingData => "missing-data",
            NaReason::Arithmetic => "arithmetic",
        }
    }
}

impl fmt::Display for NaReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// How `G/γ_c(G)` is read in the `𝒩_c`-central formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpretation {
    /// `G/γ_c(G)` as written; NA unless it is abelian.
    Literal,
    /// `G^ab` in every tensor factor.
    #[default]
    Reduced,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::Literal => "literal",
            Interpretation::Reduced => "reduced",
        })
    }
}

/// A reported quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Group(AbelianGroup),
    Bool(bool),
    Int(u128),
    Text(String),
    Ints(Vec<i64>),
}

impl From<AbelianGroup> for Value {
    fn from(g: AbelianGroup) -> Self {
        Value::Group(g)
    }
}

impl From<&AbelianGroup> for Value {
    fn from(g: &AbelianGroup) -> Self {
        Value::Group(g.clone())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u128)
    }
}

impl From<u128> for Value {
    fn from(n: u128) -> Self {
        Value::Int(n)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<Vec<i64>> for Value {
    fn from(v: Vec<i64>) -> Self {
        Value::Ints(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Group(g) => write!(f, "{g}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Text(s) => f.write_str(s),
            Value::Ints(v) => write!(f, "{v:?}"),
        }
    }
}

/// Outcome of one check on one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NaReason>,
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status) -> Self {
        Verdict { status, reason: None, values: BTreeMap::new(), witnesses: BTreeMap::new(), notes: Vec::new() }
    }

    pub fn na(reason: NaReason, note: impl Into<String>) -> Self {
        let mut v = Verdict::new(Status::Na);
        v.reason = Some(reason);
        v.notes.push(note.into());
        v
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    pub fn witness(&mut self, key: &str, v: impl Into<Value>) {
        self.witnesses.insert(key.to_string(), v.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Combines sub-check outcomes: any FAIL fails, otherwise PASS.
    pub fn from_subchecks(subchecks: &[(&str, bool)]) -> Self {
        let mut v = Verdict::new(Status::Pass);
        for &(name, ok) in subchecks {
            v.set(name, ok);
            if !ok {
                v.status = Status::Fail;
            }
        }
        v
    }
}

/// Maps homology failures to NA verdicts.
pub(crate) fn na_from_homology(e: &HomologyError) -> Verdict {
    match e {
        HomologyError::Bound { .. } => Verdict::na(NaReason::HomologyBound, e.to_string()),
        _ => Verdict::na(NaReason::Arithmetic, e.to_string()),
    }
}

type Key = (Vec<usize>, usize);

/// Memoized homology of finite groups, shared across pairs and threads.
/// Groups are keyed by their multiplication table.
#[derive(Debug)]
pub struct HomologyOracle {
    bounds: HomologyBounds,
    invariants: Mutex<HashMap<Key, Result<AbelianGroup, HomologyError>>>,
    witnessed: Mutex<HashMap<Key, Result<Arc<HomologyGroup>, HomologyError>>>,
}

impl Default for HomologyOracle {
    fn default() -> Self {
        Self::new(HomologyBounds::default())
    }
}

fn key(g: &FiniteGroup, k: usize) -> Key {
    (g.table_rows().concat(), k)
}

impl HomologyOracle {
    pub fn new(bounds: HomologyBounds) -> Self {
        HomologyOracle { bounds, invariants: Mutex::default(), witnessed: Mutex::default() }
    }

    pub fn bounds(&self) -> &HomologyBounds {
        &self.bounds
    }

    /// `H_k(G)` as an abstract group.
    pub fn homology(&self, g: &FiniteGroup, k: usize) -> Result<AbelianGroup, HomologyError> {
        let key = key(g, k);
        if let Some(r) = self.invariants.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = integral_homology(g, k, &self.bounds);
        self.invariants.lock().unwrap().insert(key, r.clone());
        r
    }

    pub fn schur_multiplier(&self, g: &FiniteGroup) -> Result<AbelianGroup, HomologyError> {
        self.homology(g, 2)
    }

    /// `H_k(G)` with cycle witnesses.
    pub fn witnessed(&self, g: &FiniteGroup, k: usize) -> Result<Arc<HomologyGroup>, HomologyError> {
        let key = key(g, k);
        if let Some(r) = self.witnessed.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = group_homology(g, k, &self.bounds).map(Arc::new);
        self.witnessed.lock().unwrap().insert(key, r.clone());
        r
    }

    /// `H_k(f)` in the witnessed presentations of both ends.
    pub fn induced(&self, f: &GroupHom, k: usize) -> Result<AbelianHom, HomologyError> {
        let s = self.witnessed(f.source(), k)?;
        let t = self.witnessed(f.target(), k)?;
        Ok(induced_on_homology(f, &s, &t)?.hom)
    }
}

#[cfg(test)]
mod tests;
