use super::*;
use proptest::prelude::*;

fn g(free: usize, torsion: &[u64]) -> AbelianGroup {
    AbelianGroup::from_parts(free, torsion.to_vec()).unwrap()
}

fn pres(cols: usize, rows: &[&[i64]]) -> PresentedAbelian {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    PresentedAbelian::new(cols, IntMatrix::from_rows(cols, &rows)).unwrap()
}

fn cyc(n: u64) -> Arc<PresentedAbelian> {
    Arc::new(PresentedAbelian::from_group(&AbelianGroup::cyclic(n)))
}

#[test]
fn relation_matrix_examples() {
    assert_eq!(pres(2, &[&[2, 0], &[0, 3]]).canonical(), &g(0, &[6]));
    assert_eq!(pres(1, &[&[0]]).canonical(), &g(1, &[]));
    assert!(pres(1, &[&[1]]).canonical().is_trivial());
    assert_eq!(pres(3, &[]).canonical(), &g(3, &[]));
}

#[test]
fn direct_sum_examples() {
    assert_eq!(direct_sum(&g(0, &[2]), &g(0, &[3])), g(0, &[6]));
    let a = g(1, &[2, 4]);
    assert_eq!(direct_sum(&a, &AbelianGroup::trivial()), a);
    assert_eq!(direct_sum(&g(0, &[2]), &g(0, &[2])), g(0, &[2, 2]));
}

#[test]
fn tensor_examples() {
    assert_eq!(tensor(&g(0, &[4]), &g(0, &[6])), g(0, &[2]));
    assert!(tensor(&g(2, &[3]), &AbelianGroup::trivial()).is_trivial());
    assert_eq!(tensor(&g(1, &[]), &g(1, &[])), g(1, &[]));
    assert_eq!(tensor(&g(1, &[]), &g(0, &[2, 4])), g(0, &[2, 4]));
}

#[test]
fn tor_examples() {
    assert_eq!(tor(&g(0, &[4]), &g(0, &[6])), g(0, &[2]));
    assert!(tor(&g(1, &[]), &g(0, &[2, 6])).is_trivial());
    assert!(tor(&g(0, &[5]), &g(1, &[])).is_trivial());
    assert_eq!(tor(&g(0, &[2, 2]), &g(0, &[2, 2])), g(0, &[2, 2, 2, 2]));
}

#[test]
fn wedge2_examples() {
    for n in [0u64, 2, 3, 12] {
        assert!(wedge2(&AbelianGroup::cyclic(n)).is_trivial());
    }
    assert_eq!(wedge2(&g(2, &[])), g(1, &[]));
    assert_eq!(wedge2(&g(0, &[2, 2])), g(0, &[2]));
    assert_eq!(wedge2(&g(0, &[2, 4])), g(0, &[2]));
    assert_eq!(wedge2(&g(0, &[2, 2, 2])), g(0, &[2, 2, 2]));
    assert_eq!(wedge2(&g(3, &[])), g(3, &[]));
}

#[test]
fn isomorphism_examples() {
    let a = AbelianGroup::from_cyclic_orders(&[2, 3]).unwrap();
    assert!(is_isomorphic(&a, &g(0, &[6])));
    assert!(!is_isomorphic(&g(0, &[2, 2]), &g(0, &[4])));
}

#[test]
fn display_and_serialization() {
    assert_eq!(AbelianGroup::trivial().to_string(), "0");
    assert_eq!(g(2, &[2, 4]).to_string(), "Z/2 + Z/4 + Z^2");
    assert_eq!(g(0, &[2]).describe(), "free_rank 0, torsion [2]");
}

#[test]
fn from_parts_rejects_bad_chains() {
    assert!(AbelianGroup::from_parts(0, vec![4, 2]).is_err());
    assert!(AbelianGroup::from_parts(0, vec![1]).is_err());
    assert!(AbelianGroup::from_parts(0, vec![2, 6]).is_ok());
}

#[test]
fn reduction_hom_kernel_image_cokernel() {
    let f = AbelianHom::new(cyc(4), cyc(2), IntMatrix::from_rows(1, &[vec![1]])).unwrap();
    assert_eq!(f.kernel().unwrap().0.canonical(), &g(0, &[2]));
    assert_eq!(f.image().unwrap().0.canonical(), &g(0, &[2]));
    assert!(f.cokernel().unwrap().0.canonical().is_trivial());
}

#[test]
fn identity_and_zero_maps() {
    let a = Arc::new(PresentedAbelian::from_group(&g(1, &[2, 6])));
    let id = AbelianHom::identity(a.clone());
    assert!(id.kernel().unwrap().0.canonical().is_trivial());
    assert!(id.cokernel().unwrap().0.canonical().is_trivial());
    let z = AbelianHom::zero(cyc(2), cyc(2));
    assert_eq!(z.kernel().unwrap().0.canonical(), &g(0, &[2]));
    assert_eq!(z.cokernel().unwrap().0.canonical(), &g(0, &[2]));
}

#[test]
fn ill_defined_hom_rejected() {
    // Z/2 -> Z/3 sending the generator to 1
    let r = AbelianHom::new(cyc(2), cyc(3), IntMatrix::from_rows(1, &[vec![1]]));
    assert!(matches!(r, Err(AbgrpError::IllDefined { .. })));
    // Z/2 -> Z/4, 1 -> 2 is fine
    assert!(AbelianHom::new(cyc(2), cyc(4), IntMatrix::from_rows(1, &[vec![2]])).is_ok());
}

#[test]
fn injection_into_free_group() {
    // Z -> Z, 1 -> 3
    let f = AbelianHom::new(cyc(0), cyc(0), IntMatrix::from_rows(1, &[vec![3]])).unwrap();
    assert!(f.is_injective().unwrap());
    assert_eq!(f.cokernel().unwrap().0.canonical(), &g(0, &[3]));
    assert_eq!(f.preimage(&[6]).unwrap(), Some(vec![2]));
    assert_eq!(f.preimage(&[4]).unwrap(), None);
}

#[test]
fn canonical_coordinates_round_trip() {
    let p = pres(3, &[&[2, 4, 0], &[0, 6, 6], &[2, 0, 4]]);
    for i in 0..p.canonical().generator_count() {
        let x = p.canonical_generator(i);
        let mut e = vec![0; p.canonical().generator_count()];
        e[i] = 1;
        assert_eq!(p.canonical_coords(&x).unwrap(), e);
    }
}

#[test]
fn wedge2_hom_of_projection() {
    // Z/2 + Z/2 -> Z/2, first coordinate: wedge map is zero onto trivial
    let s = Arc::new(PresentedAbelian::from_group(&g(0, &[2, 2])));
    let f = AbelianHom::new(s, cyc(2), IntMatrix::from_rows(1, &[vec![1], vec![0]])).unwrap();
    let w = wedge2_hom(&f).unwrap();
    assert_eq!(w.source().canonical(), &g(0, &[2]));
    assert!(w.target().canonical().is_trivial());
    assert_eq!(w.kernel().unwrap().0.canonical(), &g(0, &[2]));
}

#[test]
fn wedge2_hom_is_functorial_on_swap() {
    // swapping the two factors of Z^2 acts by -1 on the exterior square
    let s = Arc::new(PresentedAbelian::free(2));
    let f = AbelianHom::new(s.clone(), s, IntMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]])).unwrap();
    let w = wedge2_hom(&f).unwrap();
    assert_eq!(w.matrix().get(0, 0), -1);
}

#[test]
fn composition_checks_endpoints() {
    let f = AbelianHom::identity(cyc(2));
    let h = AbelianHom::identity(cyc(3));
    assert_eq!(f.then(&h).unwrap_err(), AbgrpError::NotComposable);
}

// ---------------------------------------------------------------------------
// properties

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(c, r)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
    })
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, q) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            for c in 0..n {
                let v = m.get(i, c) + q * m.get(j, c);
                m.set(i, c, v);
            }
        }
    }
    m
}

fn small_group() -> impl Strategy<Value = AbelianGroup> {
    (0usize..=1, prop::collection::vec(2u64..=12, 0..=2))
        .prop_map(|(f, t)| {
            let mut orders = t;
            orders.extend(std::iter::repeat_n(0, f));
            AbelianGroup::from_cyclic_orders(&orders).unwrap()
        })
}

fn rand_hom() -> impl Strategy<Value = AbelianHom> {
    (small_group(), small_group(), prop::collection::vec(-5i64..=5, 16)).prop_map(|(a, b, coeffs)| {
        let s = Arc::new(PresentedAbelian::from_group(&a));
        let t = Arc::new(PresentedAbelian::from_group(&b));
        // force well-definedness: scale each image by the source order
        let (n, m) = (s.generators(), t.generators());
        let mut mat = IntMatrix::zeros(n, m);
        for i in 0..n {
            let si = a.moduli()[i];
            for j in 0..m {
                let tj = b.moduli()[j];
                let mut v = coeffs[(i * 4 + j) % 16];
                if si != 0 && tj != 0 {
                    v *= (tj / gcd(si, tj)) as i64;
                } else if si != 0 && tj == 0 {
                    v = 0;
                }
                mat.set(i, j, v);
            }
        }
        AbelianHom::new(s, t, mat).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_invariant_under_unimodular_changes(
        (c, rows) in small_matrix(),
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let a = IntMatrix::from_rows(c, &rows);
        let base = PresentedAbelian::new(c, a.clone()).unwrap().canonical().clone();
        // permute rows and columns
        let mut prow = rows.clone();
        prow.reverse();
        let perm: Vec<Vec<i64>> = prow.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let b = PresentedAbelian::new(c, IntMatrix::from_rows(c, &perm)).unwrap();
        prop_assert_eq!(b.canonical(), &base);
        let u = unimodular(c, &ops);
        let au = a.checked_mul(&u).unwrap();
        let pu = PresentedAbelian::new(c, au).unwrap();
        prop_assert_eq!(pu.canonical(), &base);
    }

    #[test]
    fn tensor_and_tor_are_commutative(a in small_group(), b in small_group()) {
        prop_assert_eq!(tensor(&a, &b), tensor(&b, &a));
        prop_assert_eq!(tor(&a, &b), tor(&b, &a));
    }

    #[test]
    fn tensor_and_tor_distribute(a in small_group(), b in small_group(), c in small_group()) {
        let bc = direct_sum(&b, &c);
        prop_assert_eq!(tensor(&a, &bc), direct_sum(&tensor(&a, &b), &tensor(&a, &c)));
        prop_assert_eq!(tor(&a, &bc), direct_sum(&tor(&a, &b), &tor(&a, &c)));
    }

    #[test]
    fn kernel_and_cokernel_compose_to_zero(f in rand_hom()) {
        let (_, incl) = f.kernel().unwrap();
        prop_assert!(incl.then(&f).unwrap().is_zero().unwrap());
        let (_, proj) = f.cokernel().unwrap();
        prop_assert!(f.then(&proj).unwrap().is_zero().unwrap());
    }

    #[test]
    fn rank_nullity_for_finite_sources(f in rand_hom()) {
        if let Some(n) = f.source().canonical().order() {
            let k = f.kernel().unwrap().0.canonical().order().unwrap();
            let i = f.image().unwrap().0.canonical().order().unwrap();
            prop_assert_eq!(k * i, n);
        }
    }

    #[test]
    fn image_inclusion_is_injective(f in rand_hom()) {
        let (_, incl) = f.image().unwrap();
        prop_assert!(incl.is_injective().unwrap());
    }

    #[test]
    fn wedge2_of_sum(a in small_group(), b in small_group()) {
        // ∧²(A+B) = ∧²A + ∧²B + A⊗B
        let lhs = wedge2(&direct_sum(&a, &b));
        let rhs = AbelianGroup::sum(&[wedge2(&a), wedge2(&b), tensor(&a, &b)]);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn tensor_and_tor_orders_agree_on_cyclics() {
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            let a = AbelianGroup::cyclic(m);
            let b = AbelianGroup::cyclic(n);
            let t = tensor(&a, &b).order().unwrap();
            let r = tor(&a, &b).order().unwrap();
            assert_eq!(t, r, "Z/{m}, Z/{n}");
            assert_eq!(t, gcd(m, n) as u128);
        }
    }
}
