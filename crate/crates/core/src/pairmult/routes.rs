use super::{HomologyOracle, Interpretation, NaReason, Status, Value};
use crate::abgrp::{tensor, AbelianGroup};
use crate::fingrp::{abelian_section, FiniteGroup, PairOfGroups, Subgroup};
use crate::homology::HomologyError;
use crate::nilfree::{baer_section, NilfreeError, PresentationWithSubgroup, Word};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    HopfSection,
    SemidirectKernel,
    CentralFormula,
    Specialization,
}

impl Route {
    pub fn tag(self) -> &'static str {
        match self {
            Route::HopfSection => "hopf-section",
            Route::SemidirectKernel => "semidirect-kernel",
            Route::CentralFormula => "central-formula",
            Route::Specialization => "specialization",
        }
    }
}

/// One route's value for `M^(c)(G, N)`; `value` is present iff `applicable`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteResult {
    pub route: Route,
    pub applicable: bool,
    pub value: Option<AbelianGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NaReason>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RouteResult {
    fn value(route: Route, v: AbelianGroup, note: impl Into<String>) -> Self {
        RouteResult { route, applicable: true, value: Some(v), reason: None, notes: vec![note.into()] }
    }

    fn na(route: Route, reason: NaReason, note: impl Into<String>) -> Self {
        RouteResult { route, applicable: false, value: None, reason: Some(reason), notes: vec![note.into()] }
    }

    fn from_homology(route: Route, e: &HomologyError) -> Self {
        let reason = match e {
            HomologyError::Bound { .. } => NaReason::HomologyBound,
            _ => NaReason::Arithmetic,
        };
        Self::na(route, reason, e.to_string())
    }
}

/// `ker(M(G) → M(G/N))` when `N` has a complement; `c = 1` only.
pub fn semidirect_kernel(p: &PairOfGroups, oracle: &HomologyOracle) -> RouteResult {
    let route = Route::SemidirectKernel;
    let Some(q) = p.find_complement() else {
        return RouteResult::na(route, NaReason::NoComplement, "N has no complement in G");
    };
    let (_, proj) = p.quotient();
    let k = oracle
        .induced(&proj, 2)
        .and_then(|h| Ok(h.kernel()?.0.canonical().clone()));
    match k {
        Ok(k) => RouteResult::value(route, k, format!("complement of order {}", q.order())),
        Err(e) => RouteResult::from_homology(route, &e),
    }
}

fn abelian_normal(g: &FiniteGroup, n: &Subgroup) -> Option<AbelianGroup> {
    abelian_section(g, n, &g.trivial_subgroup()).ok().map(|s| s.group().clone())
}

/// `G^ab ⊗ N` for central `N` at `c = 1`; `N ⊗ Q ⊗ … ⊗ Q` (`c` copies) for
/// `𝒩_c`-central `N` at `c ≥ 2`, with `Q` read per `interpretation`.
pub fn central_formula(p: &PairOfGroups, c: usize, interpretation: Interpretation) -> RouteResult {
    let route = Route::CentralFormula;
    let (g, n) = (p.group(), p.normal());
    if c == 0 {
        return RouteResult::na(route, NaReason::CUnsupported, "c must be positive");
    }
    let gab = g.abelianization().group().clone();
    if c == 1 {
        if !g.is_central(n) {
            return RouteResult::na(route, NaReason::NotCentral, "N is not central");
        }
        let nab = abelian_normal(g, n).expect("central subgroups are abelian");
        return RouteResult::value(route, tensor(&gab, &nab), "G^ab ⊗ N");
    }
    let rs = p.relative_series(c + 1);
    if !rs[c].is_trivial() {
        return RouteResult::na(route, NaReason::NotNcCentral, format!("[N, {c}G] has order {}", rs[c].order()));
    }
    let Some(nab) = abelian_normal(g, n) else {
        return RouteResult::na(route, NaReason::NonabelianNormal, "N is not abelian, so N ⊗ – is undefined");
    };
    let q = match interpretation {
        Interpretation::Reduced => gab,
        Interpretation::Literal => {
            let gamma_c = &g.lower_central_series(c)[c - 1];
            match abelian_section(g, &g.whole(), gamma_c) {
                Ok(s) => s.group().clone(),
                Err(_) => {
                    return RouteResult::na(
                        route,
                        NaReason::LiteralQuotientNonabelian,
                        format!("G/γ_{c}(G) is not abelian"),
                    )
                }
            }
        }
    };
    let mut v = nab;
    for _ in 0..c {
        v = tensor(&v, &q);
    }
    RouteResult::value(route, v, format!("N ⊗ Q^⊗{c}, interpretation {interpretation}"))
}

/// Element of `G` given exponents of the chosen generators.
fn word_of(exps: &[i64], moduli: &[u64]) -> Word {
    let mut w = Word::identity();
    for (i, (&e, &d)) in exps.iter().zip(moduli).enumerate() {
        let e = e.rem_euclid(d as i64);
        w = w.mul(&Word::generator(i).pow(e));
    }
    w
}

/// Presentation `⟨x_i | x_i^{d_i}, [x_i, x_j]⟩` of an abelian `G` along its
/// invariant factors, with `S` generated by words for a generating set of `N`.
pub(crate) fn abelian_presentation(g: &FiniteGroup, n: &Subgroup) -> Result<PresentationWithSubgroup, NilfreeError> {
    let sec = g.abelianization();
    let p = sec.presentation();
    let moduli = p.canonical().moduli();
    let r = moduli.len();
    let mut relators = Vec::new();
    for (i, &d) in moduli.iter().enumerate() {
        relators.push(Word::generator(i).pow(d as i64));
    }
    for i in 0..r {
        for j in i + 1..r {
            relators.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    let mut subgroup = Vec::new();
    for x in g.generating_set(n) {
        let y = p.canonical_coords(&sec.coords(x).expect("G^ab covers G"))?;
        subgroup.push(word_of(&y, &moduli));
    }
    PresentationWithSubgroup::new(r, relators, subgroup)
}

/// `(R ∩ [S, cF]) / [R, cF]` from an auto-generated presentation; needs a
/// complement and abelian `G` within the nilpotent-quotient scope.
pub fn hopf_route(p: &PairOfGroups, c: usize) -> RouteResult {
    let route = Route::HopfSection;
    if !(1..=2).contains(&c) {
        return RouteResult::na(route, NaReason::CUnsupported, "only c = 1, 2");
    }
    if p.find_complement().is_none() {
        return RouteResult::na(route, NaReason::NoComplement, "N has no complement in G");
    }
    let g = p.group();
    if !g.is_abelian() {
        return RouteResult::na(route, NaReason::NonabelianGroup, "presentations are generated for abelian G only");
    }
    let res = abelian_presentation(g, p.normal()).and_then(|pres| {
        let v = baer_section(&pres, c)?;
        Ok((pres.rank(), v))
    });
    match res {
        Ok((rank, v)) => RouteResult::value(route, v, format!("presentation of rank {rank}")),
        Err(NilfreeError::Scope(m)) => RouteResult::na(route, NaReason::NilfreeScope, m),
        Err(NilfreeError::Bounds { rank, .. }) => {
            RouteResult::na(route, NaReason::NilfreeScope, format!("rank {rank} exceeds the collector bound"))
        }
        Err(e) => RouteResult::na(route, NaReason::Arithmetic, e.to_string()),
    }
}

/// Trivial pairs: `M^(c)(G, 1) = 0`, `M^(c)(C, C) = 0` for cyclic `C`, and
/// `M(G, G) = M(G)`.
pub fn specialization(p: &PairOfGroups, c: usize, oracle: &HomologyOracle) -> RouteResult {
    let route = Route::Specialization;
    let (g, n) = (p.group(), p.normal());
    if n.is_trivial() {
        return RouteResult::value(route, AbelianGroup::trivial(), "N = 1");
    }
    if n.order() != g.order() {
        return RouteResult::na(route, NaReason::NotSpecial, "1 < N < G");
    }
    if g.is_cyclic() {
        return RouteResult::value(route, AbelianGroup::trivial(), "N = G cyclic");
    }
    if c != 1 {
        return RouteResult::na(route, NaReason::CUnsupported, "M^(c)(G) for c ≥ 2 has no oracle");
    }
    match oracle.schur_multiplier(g) {
        Ok(m) => RouteResult::value(route, m, "N = G, bar complex H_2(G)"),
        Err(e) => RouteResult::from_homology(route, &e),
    }
}

/// Headline value and the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Headline {
    pub route: Route,
    pub value: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyVerdict {
    pub c: usize,
    pub interpretation: Interpretation,
    pub routes: Vec<RouteResult>,
    /// `agreement[i][j]` compares routes `i` and `j` when both apply.
    pub agreement: Vec<Vec<Option<bool>>>,
    pub status: Status,
    pub headline: Option<Headline>,
    /// For UNDERDETERMINED at `c = 1`: what the five-term sequence forces.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub constraints: BTreeMap<String, Value>,
}

impl ConsistencyVerdict {
    pub fn route(&self, r: Route) -> &RouteResult {
        self.routes.iter().find(|x| x.route == r).expect("every route is run")
    }
}

/// Runs every route and compares the applicable ones.
pub fn consistency_audit(
    p: &PairOfGroups,
    c: usize,
    interpretation: Interpretation,
    oracle: &HomologyOracle,
) -> ConsistencyVerdict {
    let semidirect = if c == 1 {
        semidirect_kernel(p, oracle)
    } else {
        RouteResult::na(Route::SemidirectKernel, NaReason::CUnsupported, "M^(c)(G) for c ≥ 2 has no oracle")
    };
    // precedence order
    let routes = vec![
        hopf_route(p, c),
        semidirect,
        central_formula(p, c, interpretation),
        specialization(p, c, oracle),
    ];
    let agreement: Vec<Vec<Option<bool>>> = routes
        .iter()
        .map(|a| routes.iter().map(|b| Some(a.value.as_ref()? == b.value.as_ref()?)).collect())
        .collect();
    let values: Vec<&AbelianGroup> = routes.iter().filter_map(|r| r.value.as_ref()).collect();
    let status = if values.is_empty() {
        Status::Underdetermined
    } else if values.windows(2).all(|w| w[0] == w[1]) {
        Status::Pass
    } else {
        Status::Mismatch
    };
    let headline = routes
        .iter()
        .find(|r| r.applicable)
        .map(|r| Headline { route: r.route, value: r.value.clone().expect("applicable") });
    let mut constraints = BTreeMap::new();
    if status == Status::Underdetermined && c == 1 {
        let (_, proj) = p.quotient();
        match oracle.induced(&proj, 2).and_then(|h| Ok((h.kernel()?.0.canonical().clone(), h.cokernel()?.0.canonical().clone()))) {
            Ok((k, ck)) => {
                constraints.insert("surjects_onto_ker_m_g_to_m_q".into(), Value::Group(k));
                constraints.insert("coker_m_g_to_m_q".into(), Value::Group(ck));
            }
            Err(e) => {
                constraints.insert("unavailable".into(), Value::Text(e.to_string()));
            }
        }
    }
    ConsistencyVerdict { c, interpretation, routes, agreement, status, headline, constraints }
}
