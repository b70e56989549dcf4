//! Free products of pairs, evaluated on invariant data.
//!
//! A free product of nontrivial finite groups is infinite, so nothing here
//! builds one. Each side is summarised by a [`PairInvariantData`] tuple and
//! the formulas are evaluated term by term in [`crate::abgrp`].

use crate::abgrp::{gcd, tensor, tor, AbelianGroup};
use crate::fingrp::{FiniteGroup, PairOfGroups};
use crate::pairmult::{
    hopf_route, semidirect_kernel, specialization, FiveTermPieces, HomologyOracle, NaReason, RouteResult, Status,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeprodError {
    #[error("side {side} lacks {field}")]
    Missing { side: usize, field: &'static str },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    ComputedFromGroup,
    #[default]
    Supplied,
}

/// Invariants of one pair `(G, N)`.
///
/// `n_mod`, `q_ab` and `g_ab` come straight from the Cayley table and are
/// always present; the homological fields are optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariantData {
    /// `M(G, N)`
    pub m1: Option<AbelianGroup>,
    /// `M^(2)(G, N)`
    pub m2: Option<AbelianGroup>,
    /// `N/[N, G]`
    pub n_mod: AbelianGroup,
    /// `(G/N)^ab`
    pub q_ab: AbelianGroup,
    /// `M(G/N)`
    pub m_q: Option<AbelianGroup>,
    /// `H_3(G/N)`
    pub h3_q: Option<AbelianGroup>,
    /// `G^ab`
    pub g_ab: AbelianGroup,
    /// `M(G)`
    pub m_g: Option<AbelianGroup>,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn first_value(routes: &[RouteResult]) -> Option<AbelianGroup> {
    routes.iter().find_map(|r| r.value.clone())
}

impl PairInvariantData {
    /// Every field trivial: the data of `(1, 1)`.
    pub fn trivial() -> Self {
        PairInvariantData {
            m1: Some(AbelianGroup::trivial()),
            m2: Some(AbelianGroup::trivial()),
            m_q: Some(AbelianGroup::trivial()),
            h3_q: Some(AbelianGroup::trivial()),
            m_g: Some(AbelianGroup::trivial()),
            ..Default::default()
        }
    }

    /// Fills the tuple from a pair. `M(G, N)` and `M^(2)(G, N)` are taken
    /// only from routes that compute them outright (the Hopf section, the
    /// split kernel and the trivial specializations), never from the central
    /// formula.
    pub fn from_pair(p: &PairOfGroups, oracle: &HomologyOracle) -> Self {
        let pieces = FiveTermPieces::new(p);
        let mut notes = Vec::new();
        let m1 = first_value(&[hopf_route(p, 1), semidirect_kernel(p, oracle), specialization(p, 1, oracle)]);
        if m1.is_none() {
            notes.push("M(G,N): no direct route applies".to_string());
        }
        let m2 = first_value(&[hopf_route(p, 2), specialization(p, 2, oracle)]);
        if m2.is_none() {
            notes.push("M^(2)(G,N): no direct route applies".to_string());
        }
        let mut get = |what: &str, r: Result<AbelianGroup, crate::homology::HomologyError>| match r {
            Ok(v) => Some(v),
            Err(e) => {
                notes.push(format!("{what}: {e}"));
                None
            }
        };
        let m_q = get("M(G/N)", oracle.schur_multiplier(&pieces.quotient));
        let h3_q = get("H_3(G/N)", oracle.homology(&pieces.quotient, 3));
        let m_g = get("M(G)", oracle.schur_multiplier(p.group()));
        PairInvariantData {
            m1,
            m2,
            n_mod: pieces.n_mod.group().clone(),
            q_ab: pieces.q_ab.group().clone(),
            m_q,
            h3_q,
            g_ab: pieces.g_ab.group().clone(),
            m_g,
            source: Source::ComputedFromGroup,
            notes,
        }
    }
}

fn need<'a>(x: &'a Option<AbelianGroup>, side: usize, field: &'static str) -> Result<&'a AbelianGroup, FreeprodError> {
    x.as_ref().ok_or(FreeprodError::Missing { side, field })
}

/// `M(G1 * G2, <N1 * N2>) ≅ M(G1, N1) ⊕ M(G2, N2)`.
pub fn eval_c1(d1: &PairInvariantData, d2: &PairInvariantData) -> Result<AbelianGroup, FreeprodError> {
    Ok(need(&d1.m1, 1, "m1")?.direct_sum(need(&d2.m1, 2, "m1")?))
}

/// One summand of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: AbelianGroup,
}

fn term(label: &str, value: AbelianGroup) -> Term {
    Term { label: label.to_string(), value }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    pub total: AbelianGroup,
}

impl Decomposition {
    fn new(terms: Vec<Term>) -> Self {
        let total = AbelianGroup::sum(terms.iter().map(|t| &t.value));
        Decomposition { terms, total }
    }
}

/// The eleven summands of `M^(2)(G1 * G2, <N1 * N2>)`, in the order they are
/// usually written.
pub fn eval_c2_terms(d1: &PairInvariantData, d2: &PairInvariantData) -> Result<Decomposition, FreeprodError> {
    let (m2_1, m2_2) = (need(&d1.m2, 1, "m2")?, need(&d2.m2, 2, "m2")?);
    let (m1_1, m1_2) = (need(&d1.m1, 1, "m1")?, need(&d2.m1, 2, "m1")?);
    let (mq_1, mq_2) = (need(&d1.m_q, 1, "m_q")?, need(&d2.m_q, 2, "m_q")?);
    let (n1, n2) = (&d1.n_mod, &d2.n_mod);
    let (q1, q2) = (&d1.q_ab, &d2.q_ab);
    Ok(Decomposition::new(vec![
        term("M2(G1,N1)", m2_1.clone()),
        term("M2(G2,N2)", m2_2.clone()),
        term("M(G1,N1) ⊗ N2/[N2,G2]", tensor(m1_1, n2)),
        term("M(G2,N2) ⊗ N1/[N1,G1]", tensor(m1_2, n1)),
        term("M(G2/N2) ⊗ N1/[N1,G1]", tensor(mq_2, n1)),
        term("M(G1/N1) ⊗ N2/[N2,G2]", tensor(mq_1, n2)),
        term("(G1/N1)^ab ⊗ M(G2,N2)", tensor(q1, m1_2)),
        term("(G2/N2)^ab ⊗ M(G1,N1)", tensor(q2, m1_1)),
        term("Tor(N1/[N1,G1], N2/[N2,G2])", tor(n1, n2)),
        term("Tor((G1/N1)^ab, N2/[N2,G2])", tor(q1, n2)),
        term("Tor((G2/N2)^ab, N1/[N1,G1])", tor(q2, n1)),
    ]))
}

/// `M^(2)(G1 * G2, <N1 * N2>)` as one canonical group.
pub fn eval_c2(d1: &PairInvariantData, d2: &PairInvariantData) -> Result<AbelianGroup, FreeprodError> {
    Ok(eval_c2_terms(d1, d2)?.total)
}

/// The five summands of `M^(2)(G * H)` for absolute groups.
pub fn burns_ellis_terms(
    m2_g: &AbelianGroup,
    m2_h: &AbelianGroup,
    m_g: &AbelianGroup,
    m_h: &AbelianGroup,
    g_ab: &AbelianGroup,
    h_ab: &AbelianGroup,
) -> Decomposition {
    Decomposition::new(vec![
        term("M2(G)", m2_g.clone()),
        term("M2(H)", m2_h.clone()),
        term("M(G) ⊗ H^ab", tensor(m_g, h_ab)),
        term("G^ab ⊗ M(H)", tensor(g_ab, m_h)),
        term("Tor(G^ab, H^ab)", tor(g_ab, h_ab)),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Quotient,
    Group,
}

/// One vanishing hypothesis; `holds` is `None` when its group is unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub label: String,
    pub level: Level,
    pub value: Option<AbelianGroup>,
    pub holds: Option<bool>,
}

impl Condition {
    fn new(label: &str, level: Level, value: Option<AbelianGroup>) -> Self {
        let holds = value.as_ref().map(AbelianGroup::is_trivial);
        Condition { label: label.to_string(), level, value, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub conditions: Vec<Condition>,
    /// PASS when every condition holds, NA (hypotheses-not-satisfied) when
    /// one fails, UNDERDETERMINED when some are unknown and none fail.
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NaReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

impl HypothesisReport {
    fn new(conditions: Vec<Condition>, conclusion: &str) -> Self {
        let any_fail = conditions.iter().any(|c| c.holds == Some(false));
        let any_unknown = conditions.iter().any(|c| c.holds.is_none());
        let (status, reason) = if any_fail {
            (Status::Na, Some(NaReason::HypothesesNotSatisfied))
        } else if any_unknown {
            (Status::Underdetermined, Some(NaReason::MissingData))
        } else {
            (Status::Pass, None)
        };
        let conclusion = (status == Status::Pass).then(|| conclusion.to_string());
        HypothesisReport { conditions, status, reason, conclusion }
    }

    pub fn group_level(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| c.level == Level::Group)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| c.holds == Some(false))
    }
}

const DECOMPOSES: &str = "M^(c)(G1 * G2, <N1 * N2>) ≅ M^(c)(G1, N1) ⊕ M^(c)(G2, N2) for all c ≥ 1";

fn opt2(a: &Option<AbelianGroup>, b: &Option<AbelianGroup>, f: fn(&AbelianGroup, &AbelianGroup) -> AbelianGroup) -> Option<AbelianGroup> {
    Some(f(a.as_ref()?, b.as_ref()?))
}

/// The four conditions on `G1`, `G2` alone.
pub fn group_level_conditions(
    g1_ab: &AbelianGroup,
    m_g1: Option<&AbelianGroup>,
    g2_ab: &AbelianGroup,
    m_g2: Option<&AbelianGroup>,
) -> Vec<Condition> {
    vec![
        Condition::new("G1^ab ⊗ G2^ab", Level::Group, Some(tensor(g1_ab, g2_ab))),
        Condition::new("M(G1) ⊗ G2^ab", Level::Group, m_g1.map(|m| tensor(m, g2_ab))),
        Condition::new("M(G2) ⊗ G1^ab", Level::Group, m_g2.map(|m| tensor(m, g1_ab))),
        Condition::new("Tor(G1^ab, G2^ab)", Level::Group, Some(tor(g1_ab, g2_ab))),
    ]
}

/// Nine vanishing conditions on the quotients and four on the groups, each
/// reported on its own.
pub fn thm43_hypotheses(d1: &PairInvariantData, d2: &PairInvariantData) -> HypothesisReport {
    let (q1, q2) = (Some(d1.q_ab.clone()), Some(d2.q_ab.clone()));
    let q = Level::Quotient;
    let mut conditions = vec![
        Condition::new("(G1/N1)^ab ⊗ (G2/N2)^ab", q, opt2(&q1, &q2, tensor)),
        Condition::new("M(G1/N1) ⊗ M(G2/N2)", q, opt2(&d1.m_q, &d2.m_q, tensor)),
        Condition::new("Tor((G1/N1)^ab, (G2/N2)^ab)", q, opt2(&q1, &q2, tor)),
        Condition::new("(G1/N1)^ab ⊗ H3(G2/N2)", q, opt2(&q1, &d2.h3_q, tensor)),
        Condition::new("M(G1/N1) ⊗ (G2/N2)^ab", q, opt2(&d1.m_q, &q2, tensor)),
        Condition::new("Tor((G1/N1)^ab, M(G2/N2))", q, opt2(&q1, &d2.m_q, tor)),
        Condition::new("(G2/N2)^ab ⊗ H3(G1/N1)", q, opt2(&q2, &d1.h3_q, tensor)),
        Condition::new("M(G2/N2) ⊗ (G1/N1)^ab", q, opt2(&d2.m_q, &q1, tensor)),
        Condition::new("Tor((G2/N2)^ab, M(G1/N1))", q, opt2(&q2, &d1.m_q, tor)),
    ];
    conditions.extend(group_level_conditions(&d1.g_ab, d1.m_g.as_ref(), &d2.g_ab, d2.m_g.as_ref()));
    HypothesisReport::new(conditions, DECOMPOSES)
}

/// Coprimality of `|G1^ab|` and `|G2^ab|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeReport {
    pub order_g1_ab: u64,
    pub order_g2_ab: u64,
    pub gcd: u64,
    pub coprime: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

pub fn cor44_coprime(g1: &FiniteGroup, g2: &FiniteGroup) -> CoprimeReport {
    let order = |g: &FiniteGroup| g.abelianization().group().order().expect("finite") as u64;
    let (a, b) = (order(g1), order(g2));
    let d = gcd(a, b);
    CoprimeReport {
        order_g1_ab: a,
        order_g2_ab: b,
        gcd: d,
        coprime: d == 1,
        conclusion: (d == 1).then(|| DECOMPOSES.to_string()),
    }
}

/// Whether coprime abelianizations force the four group-level conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub coprime: CoprimeReport,
    pub group_level: Vec<Condition>,
    /// `None` when some `M(G_i)` is out of reach.
    pub holds: Option<bool>,
}

impl Implication {
    pub fn status(&self) -> Status {
        match self.holds {
            Some(true) => Status::Pass,
            Some(false) => Status::Mismatch,
            None => Status::Underdetermined,
        }
    }
}

/// Coprimality checked against the group-level conditions it should imply.
pub fn cor44_implication(g1: &FiniteGroup, g2: &FiniteGroup, oracle: &HomologyOracle) -> Implication {
    let coprime = cor44_coprime(g1, g2);
    let (m1, m2) = (oracle.schur_multiplier(g1).ok(), oracle.schur_multiplier(g2).ok());
    let group_level = group_level_conditions(
        g1.abelianization().group(),
        m1.as_ref(),
        g2.abelianization().group(),
        m2.as_ref(),
    );
    let holds = if !coprime.coprime {
        Some(true)
    } else if group_level.iter().any(|c| c.holds == Some(false)) {
        Some(false)
    } else if group_level.iter().all(|c| c.holds == Some(true)) {
        Some(true)
    } else {
        None
    };
    Implication { coprime, group_level, holds }
}
