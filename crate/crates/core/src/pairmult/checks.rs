use super::routes::{consistency_audit, semidirect_kernel};
use super::{na_from_homology, HomologyOracle, Interpretation, NaReason, Status, Verdict};
use crate::abgrp::{tensor, wedge2, wedge2_hom, AbelianHom, PresentedAbelian};
use crate::fingrp::{abelian_section, AbelianSection, FiniteGroup, GroupHom, PairOfGroups, Subgroup};
use crate::seqcheck::{coker_ker_compare, AbelianSequence, Witnessed};
use std::sync::Arc;

/// The abelian end of the five-term sequence:
/// `N/[N,G] --iota--> G^ab --pi--> (G/N)^ab → 0`.
#[derive(Clone, Debug)]
pub struct FiveTermPieces {
    pub quotient: Arc<FiniteGroup>,
    pub projection: GroupHom,
    pub n_mod: AbelianSection,
    pub g_ab: AbelianSection,
    pub q_ab: AbelianSection,
    pub iota: AbelianHom,
    pub pi: AbelianHom,
}

impl FiveTermPieces {
    pub fn new(p: &PairOfGroups) -> Self {
        let (g, n) = (p.group(), p.normal());
        let (quotient, projection) = p.quotient();
        let ng = g.commutator_subgroup(n, &g.whole());
        let n_mod = abelian_section(g, n, &ng).expect("N/[N,G] is abelian");
        let g_ab = g.abelianization();
        let q_ab = quotient.abelianization();
        let iota = n_mod.map_to(&g_ab, |x| x).expect("N lies in G");
        let pi = g_ab.map_to(&q_ab, |x| projection.apply(x)).expect("projection is a homomorphism");
        FiveTermPieces { quotient, projection, n_mod, g_ab, q_ab, iota, pi }
    }

    /// `iota`, `pi`, and the zero map out of `(G/N)^ab`.
    pub fn sequence(&self) -> AbelianSequence {
        let zero = Arc::new(PresentedAbelian::free(0));
        let end = AbelianHom::zero(self.q_ab.presentation().clone(), zero);
        AbelianSequence::new(vec![self.iota.clone(), self.pi.clone(), end]).expect("composable by construction")
    }
}

fn record_witness(v: &mut Verdict, name: &str, w: &Witnessed) {
    if let Some(x) = &w.element {
        v.witness(name, x.clone());
    }
}

/// The tail `M(G) → M(G/N) → N/[N,G] → G^ab → (G/N)^ab → 0`:
/// (a) `G^ab → (G/N)^ab` is onto, (b) exactness at `G^ab`, (c)
/// `coker(M(G) → M(G/N)) ≅ ker(N/[N,G] → G^ab)`.
pub fn five_term_check(p: &PairOfGroups, oracle: &HomologyOracle) -> Verdict {
    let pieces = FiveTermPieces::new(p);
    let seq = pieces.sequence();
    let (complex, at_gab, onto) = match (seq.is_complex(), seq.exact_at(1), seq.exact_at(2)) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => return Verdict::na(NaReason::Arithmetic, e.to_string()),
    };
    let h2 = oracle.induced(&pieces.projection, 2);
    let mut v = match &h2 {
        Ok(h) => match coker_ker_compare(h, &pieces.iota) {
            Ok(ck) => {
                let mut v = Verdict::from_subchecks(&[
                    ("complex", complex.holds),
                    ("a_surjective", onto.holds),
                    ("b_exact_at_g_ab", at_gab.holds),
                    ("c_coker_iso_ker", ck),
                ]);
                v.set("m_g", h.source().canonical());
                v.set("m_q", h.target().canonical());
                if let Ok((c, _)) = h.cokernel() {
                    v.set("coker_m_g_to_m_q", c.canonical());
                }
                if let Ok((k, _)) = pieces.iota.kernel() {
                    v.set("ker_n_mod_to_g_ab", k.canonical());
                }
                v
            }
            Err(e) => return Verdict::na(NaReason::Arithmetic, e.to_string()),
        },
        Err(e) => {
            let partial = Verdict::from_subchecks(&[
                ("complex", complex.holds),
                ("a_surjective", onto.holds),
                ("b_exact_at_g_ab", at_gab.holds),
            ]);
            if partial.status == Status::Fail {
                partial
            } else {
                let mut na = na_from_homology(e);
                na.values = partial.values;
                na
            }
        }
    };
    record_witness(&mut v, "complex", &complex);
    record_witness(&mut v, "b_exact_at_g_ab", &at_gab);
    record_witness(&mut v, "a_surjective", &onto);
    v.set("n_mod", pieces.n_mod.group());
    v.set("g_ab", pieces.g_ab.group());
    v.set("q_ab", pieces.q_ab.group());
    v
}

/// `ker(∧²G^ab → ∧²(G/N)^ab) ≅ ∧²(N/[N,G]) ⊕ N/[N,G] ⊗ (G/N)^ab`, and the
/// map of exterior squares is onto. Compared as abstract groups.
pub fn lemma38_check(p: &PairOfGroups) -> Verdict {
    let pieces = FiveTermPieces::new(p);
    let res = wedge2_hom(&pieces.pi).and_then(|w| {
        let k = w.kernel()?.0.canonical().clone();
        Ok((k, w.is_surjective()?))
    });
    let (k, onto) = match res {
        Ok(x) => x,
        Err(e) => return Verdict::na(NaReason::Arithmetic, e.to_string()),
    };
    let nm = pieces.n_mod.group();
    let qab = pieces.q_ab.group();
    let c = wedge2(nm).direct_sum(&tensor(nm, qab));
    let mut v = Verdict::from_subchecks(&[("kernel_iso", k == c), ("wedge_surjective", onto)]);
    v.set("kernel", &k);
    v.set("predicted", &c);
    v.set("wedge_g_ab", wedge2(pieces.g_ab.group()));
    v.set("wedge_q_ab", wedge2(qab));
    if v.status == Status::Fail {
        v.witness("kernel", &k);
        v.witness("predicted", &c);
        v.witness("n_mod", nm);
        v.witness("q_ab", qab);
    }
    v
}

/// The map-defined tail `N/γ_3(G,N) → N/[N,G] → 1`: onto, plus the orders of
/// the two middle terms.
pub fn thm39_tail_check(p: &PairOfGroups) -> Verdict {
    let n = p.normal();
    let rs = p.relative_series(3);
    let (g2, g3) = (&rs[1], &rs[2]);
    // x γ_3 ↦ x γ_2 is well defined and onto iff γ_3 ⊆ γ_2 ⊆ N
    let onto = g3.is_subset_of(g2) && g2.is_subset_of(n);
    let pieces = FiveTermPieces::new(p);
    let nm = pieces.n_mod.group();
    let middle = wedge2(nm).direct_sum(&tensor(nm, pieces.q_ab.group()));
    let mut v = Verdict::from_subchecks(&[("surjective", onto)]);
    v.set("order_n_mod_gamma3", n.order() / g3.order());
    v.set("order_n_mod_commutator", n.order() / g2.order());
    v.set("middle", &middle);
    v.set("order_middle", middle.order().unwrap_or(0));
    v
}

/// `M(G) ≅ ker(M(G) → M(G/N)) ⊕ M(Q)` for a complement `Q`.
pub fn semidirect_splitting_check(p: &PairOfGroups, oracle: &HomologyOracle) -> Verdict {
    let Some(q) = p.find_complement() else {
        return Verdict::na(NaReason::NoComplement, "N has no complement in G");
    };
    let sk = semidirect_kernel(p, oracle);
    let Some(k) = sk.value else {
        return Verdict::na(sk.reason.unwrap_or(NaReason::Arithmetic), sk.notes.join("; "));
    };
    let (qg, _) = p.group().subgroup_as_group(&q).expect("complement is a subgroup");
    let (mg, mq) = match (oracle.schur_multiplier(p.group()), oracle.schur_multiplier(&qg)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return na_from_homology(&e),
    };
    let sum = k.direct_sum(&mq);
    let mut v = Verdict::from_subchecks(&[("splits", sum == mg)]);
    v.set("m_g", &mg);
    v.set("kernel", &k);
    v.set("m_q", &mq);
    v.set("complement_order", q.order());
    v
}

/// Independent routes to the same homology must agree: invariants vs
/// witnessed `H_2` and `H_1` vs abelianization for `G` and `G/N`, and
/// `ker(M(G) → M(1)) = M(G)` when `N = G`.
pub fn oracle_cross_check(p: &PairOfGroups, oracle: &HomologyOracle) -> Verdict {
    let (quotient, _) = p.quotient();
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut v = Verdict::new(Status::Pass);
    for (name, grp) in [("g", p.group().clone()), ("q", quotient)] {
        let h1 = match oracle.homology(&grp, 1) {
            Ok(h) => h,
            Err(e) => return na_from_homology(&e),
        };
        checks.push((format!("{name}_h1_is_abelianization"), &h1 == grp.abelianization().group()));
        let (inv, wit) = match (oracle.homology(&grp, 2), oracle.witnessed(&grp, 2)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return na_from_homology(&e),
        };
        checks.push((format!("{name}_h2_routes_agree"), &inv == wit.group()));
        v.set(&format!("{name}_h2"), &inv);
    }
    if p.normal().order() == p.group().order() {
        let sk = semidirect_kernel(p, oracle);
        let m = oracle.schur_multiplier(p.group()).ok();
        checks.push(("semidirect_kernel_is_m_g".into(), sk.value.is_some() && sk.value == m));
    }
    for (name, ok) in checks {
        v.set(&name, ok);
        if !ok {
            v.status = Status::Fail;
        }
    }
    v
}

/// Re-indexes `sub ⊆ s` inside the group `s`.
fn restrict(g: &Arc<FiniteGroup>, s: &Subgroup, sub: &Subgroup) -> (Arc<FiniteGroup>, Subgroup) {
    let (h, incl) = g.subgroup_as_group(s).expect("subgroup");
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in incl.map().iter().enumerate() {
        pos[x] = i;
    }
    let elems: Vec<usize> = sub.elements().iter().map(|&x| pos[x]).collect();
    let sub = h.subgroup(&elems).expect("contained subgroup");
    (h, sub)
}

/// `M^(c)(MN, N)` against `M^(c)(M, M ∩ N)` via the headline route of each
/// audit. The hypothesis `M ≅ MN` is recorded, not imposed.
pub fn mn_check(
    g: &Arc<FiniteGroup>,
    m: &Subgroup,
    n: &Subgroup,
    c: usize,
    interpretation: Interpretation,
    oracle: &HomologyOracle,
) -> Verdict {
    let mn = g.join(m, n);
    let normal = mn.elements().iter().all(|&x| n.elements().iter().all(|&y| n.contains(g.conjugate(y, x))));
    if !normal {
        return Verdict::na(NaReason::NotNormal, "N is not normal in ⟨M, N⟩");
    }
    let mcapn = g.intersection(m, n);
    let (h1, n1) = restrict(g, &mn, n);
    let (h2, n2) = restrict(g, m, &mcapn);
    let left = consistency_audit(&PairOfGroups::new(h1, n1).expect("normal"), c, interpretation, oracle);
    let right = consistency_audit(&PairOfGroups::new(h2, n2).expect("M ∩ N is normal in M"), c, interpretation, oracle);
    let hypothesis = m.order() == mn.order();
    let mut v = match (&left.headline, &right.headline) {
        (Some(a), Some(b)) => {
            let mut v = Verdict::new(if a.value == b.value { Status::Pass } else { Status::Mismatch });
            v.set("left", &a.value);
            v.set("left_route", a.route.tag());
            v.set("right", &b.value);
            v.set("right_route", b.route.tag());
            v
        }
        _ => Verdict::new(Status::Underdetermined),
    };
    v.set("hypothesis_m_iso_mn", hypothesis);
    v.set("order_m", m.order());
    v.set("order_mn", mn.order());
    v.set("order_m_cap_n", mcapn.order());
    if left.status == Status::Mismatch || right.status == Status::Mismatch {
        v.note("a side has disagreeing routes; headline values compared");
    }
    if v.status == Status::Mismatch && !hypothesis {
        v.note("values differ and the hypothesis M ≅ MN does not hold");
    }
    v
}
