use super::*;
use crate::fingrp::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric, PairOfGroups, Subgroup};
use std::sync::Arc;

fn ab(t: &[u64]) -> AbelianGroup {
    AbelianGroup::from_parts(0, t.to_vec()).unwrap()
}

fn pair(g: &Arc<FiniteGroup>, n: Subgroup) -> PairOfGroups {
    PairOfGroups::new(g.clone(), n).unwrap()
}

fn klein() -> Arc<FiniteGroup> {
    Arc::new(direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()))
}

/// `(Z/2 × Z/2, first factor)`: element `2x + y`, factor `{0, 2}`.
fn klein_factor() -> PairOfGroups {
    let k = klein();
    let n = k.subgroup(&[0, 2]).unwrap();
    pair(&k, n)
}

fn s3_a3() -> PairOfGroups {
    let g = Arc::new(symmetric(3).unwrap());
    let a3 = g.derived_subgroup();
    pair(&g, a3)
}

fn z4_z2() -> PairOfGroups {
    let g = Arc::new(cyclic(4).unwrap());
    let n = g.subgroup(&[0, 2]).unwrap();
    pair(&g, n)
}

fn whole(g: FiniteGroup) -> PairOfGroups {
    let g = Arc::new(g);
    let w = g.whole();
    pair(&g, w)
}

fn trivial(g: FiniteGroup) -> PairOfGroups {
    let g = Arc::new(g);
    let t = g.trivial_subgroup();
    pair(&g, t)
}

fn corpus() -> Vec<FiniteGroup> {
    let c = |n| cyclic(n).unwrap();
    vec![
        FiniteGroup::trivial(),
        c(2),
        c(3),
        c(6),
        direct_product(&c(2), &c(2)),
        direct_product(&c(4), &c(2)),
        direct_product(&c(3), &c(3)),
        dihedral(4).unwrap(),
        quaternion(8).unwrap(),
        symmetric(3).unwrap(),
        alternating(4).unwrap(),
    ]
}

#[test]
fn semidirect_kernel_examples() {
    let o = HomologyOracle::default();
    assert_eq!(semidirect_kernel(&s3_a3(), &o).value, Some(ab(&[])));
    assert_eq!(semidirect_kernel(&klein_factor(), &o).value, Some(ab(&[2])));
    assert_eq!(semidirect_kernel(&whole(dihedral(4).unwrap()), &o).value, Some(ab(&[2])));
    let q8 = Arc::new(quaternion(8).unwrap());
    let z = q8.center();
    let r = semidirect_kernel(&pair(&q8, z), &o);
    assert!(!r.applicable && r.value.is_none());
    assert_eq!(r.reason, Some(NaReason::NoComplement));
}

#[test]
fn splitting_examples() {
    let o = HomologyOracle::default();
    for p in [s3_a3(), klein_factor(), trivial(dihedral(4).unwrap()), whole(alternating(4).unwrap())] {
        assert_eq!(semidirect_splitting_check(&p, &o).status, Status::Pass);
    }
    assert_eq!(semidirect_splitting_check(&z4_z2(), &o).reason, Some(NaReason::NoComplement));
}

#[test]
fn central_formula_examples() {
    assert_eq!(central_formula(&z4_z2(), 1, Interpretation::Reduced).value, Some(ab(&[2])));
    let d4 = Arc::new(dihedral(4).unwrap());
    let z = d4.center();
    let p = pair(&d4, z);
    assert_eq!(central_formula(&p, 2, Interpretation::Reduced).value, Some(ab(&[2, 2, 2, 2])));
    // G/γ_2(G) is G^ab, so both readings agree at c = 2
    assert_eq!(central_formula(&p, 2, Interpretation::Literal).value, Some(ab(&[2, 2, 2, 2])));
    // at c = 3 the literal quotient D4/γ_3(D4) = D4 is not abelian
    let lit = central_formula(&p, 3, Interpretation::Literal);
    assert_eq!(lit.reason, Some(NaReason::LiteralQuotientNonabelian));
    assert_eq!(central_formula(&p, 3, Interpretation::Reduced).value, Some(ab(&[2; 8])));
    for c in 1..=3 {
        let t = central_formula(&trivial(dihedral(4).unwrap()), c, Interpretation::Reduced);
        assert_eq!(t.value, Some(AbelianGroup::trivial()));
    }
    assert_eq!(central_formula(&s3_a3(), 1, Interpretation::Reduced).reason, Some(NaReason::NotCentral));
    assert_eq!(central_formula(&s3_a3(), 2, Interpretation::Reduced).reason, Some(NaReason::NotNcCentral));
    // Q8 is class 2 but not abelian
    let q = central_formula(&whole(quaternion(8).unwrap()), 2, Interpretation::Reduced);
    assert_eq!(q.reason, Some(NaReason::NonabelianNormal));
}

#[test]
fn hopf_route_examples() {
    assert_eq!(hopf_route(&klein_factor(), 1).value, Some(ab(&[2])));
    for n in [2, 5, 6] {
        assert_eq!(hopf_route(&whole(cyclic(n).unwrap()), 1).value, Some(AbelianGroup::trivial()));
        assert_eq!(hopf_route(&trivial(cyclic(n).unwrap()), 1).value, Some(AbelianGroup::trivial()));
    }
    assert_eq!(hopf_route(&whole(direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap())), 1).value, Some(ab(&[2])));
    assert_eq!(hopf_route(&s3_a3(), 1).reason, Some(NaReason::NonabelianGroup));
    assert_eq!(hopf_route(&z4_z2(), 1).reason, Some(NaReason::NoComplement));
    assert_eq!(hopf_route(&klein_factor(), 3).reason, Some(NaReason::CUnsupported));
    let z2cubed = direct_product(&klein(), &cyclic(2).unwrap());
    assert_eq!(hopf_route(&whole(z2cubed.clone()), 1).value, Some(ab(&[2, 2, 2])));
    assert_eq!(hopf_route(&whole(z2cubed), 2).reason, Some(NaReason::NilfreeScope));
}

#[test]
fn specialization_examples() {
    let o = HomologyOracle::default();
    assert_eq!(specialization(&whole(dihedral(4).unwrap()), 1, &o).value, Some(ab(&[2])));
    assert_eq!(specialization(&whole(cyclic(6).unwrap()), 2, &o).value, Some(AbelianGroup::trivial()));
    assert_eq!(specialization(&s3_a3(), 1, &o).reason, Some(NaReason::NotSpecial));
    assert_eq!(specialization(&whole(dihedral(4).unwrap()), 2, &o).reason, Some(NaReason::CUnsupported));
}

#[test]
fn five_term_examples() {
    let o = HomologyOracle::default();
    for p in [s3_a3(), z4_z2(), trivial(symmetric(3).unwrap()), klein_factor(), whole(quaternion(8).unwrap())] {
        let v = five_term_check(&p, &o);
        assert_eq!(v.status, Status::Pass, "{v:?}");
    }
    let v = five_term_check(&z4_z2(), &o);
    assert_eq!(v.values["ker_n_mod_to_g_ab"], Value::Group(AbelianGroup::trivial()));
    // beyond the homology bound only (c) is skipped
    let small = HomologyOracle::new(crate::homology::HomologyBounds { max_order: 4, h3_max_order: 4 });
    let v = five_term_check(&s3_a3(), &small);
    assert_eq!(v.status, Status::Na);
    assert_eq!(v.reason, Some(NaReason::HomologyBound));
    assert_eq!(v.values["a_surjective"], Value::Bool(true));
}

#[test]
fn lemma38_examples() {
    assert_eq!(lemma38_check(&klein_factor()).status, Status::Pass);
    assert_eq!(lemma38_check(&trivial(dihedral(4).unwrap())).status, Status::Pass);
    assert_eq!(lemma38_check(&whole(direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()))).status, Status::Pass);
    // (Z/4, Z/2): both exterior squares vanish, yet N/[N,G] ⊗ (G/N)^ab = Z/2
    let v = lemma38_check(&z4_z2());
    assert_eq!(v.status, Status::Fail);
    assert_eq!(v.witnesses["kernel"], Value::Group(AbelianGroup::trivial()));
    assert_eq!(v.witnesses["predicted"], Value::Group(ab(&[2])));
}

#[test]
fn thm39_tail_examples() {
    for p in [s3_a3(), whole(dihedral(4).unwrap()), z4_z2()] {
        assert_eq!(thm39_tail_check(&p).status, Status::Pass);
    }
    let v = thm39_tail_check(&s3_a3());
    assert_eq!(v.values["order_n_mod_gamma3"], Value::Int(1));
    let v = thm39_tail_check(&whole(dihedral(4).unwrap()));
    assert_eq!(v.values["order_n_mod_gamma3"], Value::Int(8));
    assert_eq!(v.values["order_n_mod_commutator"], Value::Int(4));
}

#[test]
fn mn_examples() {
    let o = HomologyOracle::default();
    let k = klein();
    let n = k.subgroup(&[0, 2]).unwrap();
    let v = mn_check(&k, &k.whole(), &n, 1, Interpretation::Reduced, &o);
    assert_eq!(v.status, Status::Pass);
    assert_eq!(v.values["hypothesis_m_iso_mn"], Value::Bool(true));
    let v = mn_check(&k, &k.whole(), &k.trivial_subgroup(), 1, Interpretation::Reduced, &o);
    assert_eq!(v.status, Status::Pass);
    // M = diagonal: MN = G, M ∩ N = 1, so the sides are M(G, N) = Z/2 and 0
    let diag = k.subgroup(&[0, 3]).unwrap();
    let v = mn_check(&k, &diag, &n, 1, Interpretation::Reduced, &o);
    assert_eq!(v.status, Status::Mismatch);
    assert_eq!(v.values["hypothesis_m_iso_mn"], Value::Bool(false));
    assert_eq!(v.values["left"], Value::Group(ab(&[2])));
    assert_eq!(v.values["right"], Value::Group(AbelianGroup::trivial()));
}

#[test]
fn audit_examples() {
    let o = HomologyOracle::default();
    // the central formula G^ab ⊗ N disagrees with the kernel route
    let a = consistency_audit(&klein_factor(), 1, Interpretation::Literal, &o);
    assert_eq!(a.status, Status::Mismatch);
    assert_eq!(a.route(Route::SemidirectKernel).value, Some(ab(&[2])));
    assert_eq!(a.route(Route::CentralFormula).value, Some(ab(&[2, 2])));
    assert_eq!(a.route(Route::HopfSection).value, Some(ab(&[2])));
    assert_eq!(a.agreement[0][1], Some(true));
    assert_eq!(a.agreement[1][2], Some(false));
    assert_eq!(a.headline.as_ref().unwrap().route, Route::HopfSection);
    // nonabelian (G, G): no central route, kernel and oracle agree
    for g in [symmetric(3).unwrap(), dihedral(4).unwrap(), alternating(4).unwrap()] {
        let a = consistency_audit(&whole(g), 1, Interpretation::Reduced, &o);
        assert_eq!(a.status, Status::Pass);
    }
    let a = consistency_audit(&trivial(quaternion(8).unwrap()), 1, Interpretation::Reduced, &o);
    assert_eq!(a.status, Status::Pass);
    assert!(a.routes.iter().filter_map(|r| r.value.as_ref()).all(|v| v.is_trivial()));
}

#[test]
fn underdetermined_pairs_carry_constraints() {
    let o = HomologyOracle::default();
    // <i> in Q8: no complement, not central, not special
    let q8 = Arc::new(quaternion(8).unwrap());
    let i = q8.normal_subgroups().into_iter().find(|n| n.order() == 4).unwrap();
    let a = consistency_audit(&pair(&q8, i), 1, Interpretation::Reduced, &o);
    assert_eq!(a.status, Status::Underdetermined);
    assert!(a.headline.is_none());
    assert_eq!(a.constraints["surjects_onto_ker_m_g_to_m_q"], Value::Group(AbelianGroup::trivial()));
}

#[test]
fn corpus_properties() {
    let o = HomologyOracle::default();
    for g in corpus() {
        let m = o.schur_multiplier(&g).unwrap();
        let pw = whole(g.clone());
        assert_eq!(semidirect_kernel(&pw, &o).value, Some(m.clone()));
        let pt = trivial(g.clone());
        assert_eq!(semidirect_kernel(&pt, &o).value, Some(AbelianGroup::trivial()));
        for c in 1..=2 {
            let a = consistency_audit(&pt, c, Interpretation::Reduced, &o);
            assert_eq!(a.status, Status::Pass);
            assert!(a.routes.iter().filter_map(|r| r.value.as_ref()).all(|v| v.is_trivial()));
        }
        let g = Arc::new(g);
        for n in g.normal_subgroups() {
            let p = pair(&g, n);
            assert_eq!(five_term_check(&p, &o).status, Status::Pass);
            assert_eq!(oracle_cross_check(&p, &o).status, Status::Pass);
            assert_eq!(thm39_tail_check(&p).status, Status::Pass);
            let s = semidirect_splitting_check(&p, &o).status;
            assert!(s == Status::Pass || s == Status::Na);
            let a1 = consistency_audit(&p, 1, Interpretation::Reduced, &o);
            let a2 = consistency_audit(&p, 1, Interpretation::Reduced, &o);
            assert_eq!(a1, a2);
        }
    }
}

#[test]
fn hopf_agrees_with_kernel_on_abelian_groups() {
    let o = HomologyOracle::default();
    let c = |n| cyclic(n).unwrap();
    for g in [direct_product(&c(2), &c(2)), direct_product(&c(4), &c(2)), direct_product(&c(3), &c(3)), c(6), c(8)] {
        let g = Arc::new(g);
        for n in g.normal_subgroups() {
            let p = pair(&g, n);
            let h = hopf_route(&p, 1);
            let s = semidirect_kernel(&p, &o);
            assert_eq!(h.applicable, s.applicable);
            assert_eq!(h.value, s.value);
        }
    }
}
