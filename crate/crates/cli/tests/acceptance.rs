//! The ten acceptance criteria, one test each. Every test prints a single
//! `PASS` or `FAIL` line to stderr (uncaptured) before asserting.

use baer_cli::corpus::{default_corpus, Corpus, NamedPair};
use baer_core::abgrp::{AbelianGroup, IntMatrix};
use baer_core::fingrp::{FiniteGroup, PairOfGroups, Subgroup};
use baer_core::freeprod::{
    burns_ellis_terms, cor44_implication, eval_c2, eval_c2_terms, thm43_hypotheses, Level, PairInvariantData, Source,
};
use baer_core::homology::{bar_complex, integral_homology, HomologyBounds};
use baer_core::nilfree::{baer_section, PresentationWithSubgroup, Word};
use baer_core::pairmult::{
    consistency_audit, five_term_check, lemma38_check, semidirect_kernel, HomologyOracle, Interpretation, Status,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::io::Write;
use std::process::Command;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

/// Criteria run one at a time so that the timing limits measure the
/// criterion and not its neighbours.
static SERIAL: Mutex<()> = Mutex::new(());

fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(default_corpus)
}

fn verdict(n: usize, title: &str, started: Instant, limit: Duration, failures: &[String], detail: &str) {
    let elapsed = started.elapsed();
    let mut problems = failures.to_vec();
    if elapsed > limit {
        problems.push(format!("took {elapsed:.1?}, limit {limit:?}"));
    }
    let status = if problems.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {n:>2} {status}: {title} ({detail}; {elapsed:.1?})");
    for p in problems.iter().take(12) {
        line.push_str("\n    ");
        line.push_str(p);
    }
    if problems.len() > 12 {
        line.push_str(&format!("\n    ... {} more", problems.len() - 12));
    }
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(problems.is_empty(), "criterion {n} failed");
}

fn ab(t: &[u64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(t).unwrap()
}

// ---------------------------------------------------------------------------
// 1. canonical forms against enumeration of Z^n / L

/// Hermite basis of the row lattice of an `m × n` matrix, `n ≤ 3`: rows of an
/// upper-triangular matrix with positive pivots and reduced entries above
/// them. Returns the rank and the basis padded with zero rows.
fn hermite3(rows: &[[i64; 3]], n: usize) -> (usize, [[i64; 3]; 3]) {
    let mut pool: Vec<[i64; 3]> = rows.to_vec();
    let mut basis = [[0i64; 3]; 3];
    let mut rank = 0;
    let mut pivots = [0usize; 3];
    for col in 0..n {
        loop {
            let mut best: Option<usize> = None;
            for (i, r) in pool.iter().enumerate() {
                if r[col] != 0 && best.is_none_or(|b| r[col].abs() < pool[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            let pr = pool[p];
            let mut clean = true;
            for (i, r) in pool.iter_mut().enumerate() {
                if i != p && r[col] != 0 {
                    let q = r[col].div_euclid(pr[col]);
                    for c in 0..n {
                        r[c] -= q * pr[c];
                    }
                    clean &= r[col] == 0;
                }
            }
            if clean {
                let mut pr = pool.swap_remove(p);
                if pr[col] < 0 {
                    pr.iter_mut().for_each(|x| *x = -*x);
                }
                basis[rank] = pr;
                pivots[rank] = col;
                rank += 1;
                break;
            }
        }
    }
    for j in 0..rank {
        let (c, d) = (pivots[j], basis[j][pivots[j]]);
        for i in 0..j {
            let q = basis[i][c].div_euclid(d);
            for k in 0..n {
                basis[i][k] -= q * basis[j][k];
            }
        }
    }
    (rank, basis)
}

/// Invariant factors of `Z^n / L` for a full-rank triangular basis, read off
/// from the sizes of the `p^k`-torsion subgroups found by enumeration.
fn enumerate_invariants(basis: &[[i64; 3]; 3], n: usize) -> Vec<u64> {
    let h: Vec<i64> = (0..n).map(|i| basis[i][i]).collect();
    let order: i64 = h.iter().product();
    let mut points = vec![[0i64; 3]];
    for i in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..h[i]).map(move |x| {
                    let mut q = p;
                    q[i] = x;
                    q
                })
            })
            .collect();
    }
    let killed_by = |k: i64| {
        points
            .iter()
            .filter(|x| {
                let mut v = [x[0] * k, x[1] * k, x[2] * k];
                for i in 0..n {
                    let q = v[i].div_euclid(h[i]);
                    for c in 0..n {
                        v[c] -= q * basis[i][c];
                    }
                }
                v.iter().all(|&y| y == 0)
            })
            .count() as i64
    };
    // exponents[p] lists the exponents of the cyclic p-parts, largest first
    let mut factors = vec![1u64; n];
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            let mut at_least = Vec::new();
            let (mut k, mut prev) = (p, 1i64);
            while order % k == 0 {
                let c = killed_by(k);
                let mut ratio = c / prev;
                let mut t = 0;
                while ratio > 1 {
                    ratio /= p;
                    t += 1;
                }
                at_least.push(t);
                prev = c;
                k *= p;
            }
            // at_least[e - 1] cyclic factors have exponent ≥ e
            for (slot, f) in factors.iter_mut().rev().enumerate() {
                let e = at_least.iter().filter(|&&t| t > slot).count();
                *f *= (p as u64).pow(e as u32);
            }
        }
        p += 1;
    }
    factors.into_iter().filter(|&f| f > 1).collect()
}

#[test]
fn criterion_01_abelian_canonical_forms() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut cache: HashMap<(usize, [[i64; 3]; 3]), Vec<u64>> = HashMap::new();
    let (mut finite, mut infinite, mut large) = (0u64, 0u64, 0u64);
    for m in 1..=3usize {
        for n in 1..=3usize {
            let total = 7u64.pow((m * n) as u32);
            let mut rows = vec![[0i64; 3]; m];
            let mut flat = vec![vec![0i64; n]; m];
            for code in 0..total {
                let mut c = code;
                for r in 0..m {
                    for j in 0..n {
                        let v = (c % 7) as i64 - 3;
                        c /= 7;
                        rows[r][j] = v;
                        flat[r][j] = v;
                    }
                }
                let (rank, basis) = hermite3(&rows, n);
                let g = AbelianGroup::from_relations(&IntMatrix::from_rows(n, &flat)).unwrap();
                if rank < n {
                    infinite += 1;
                    if g.free_rank() != n - rank {
                        failures.push(format!("{flat:?}: free rank {} but lattice rank {rank}", g.free_rank()));
                    }
                    continue;
                }
                let index: i64 = (0..n).map(|i| basis[i][i]).product();
                if index > 200 {
                    large += 1;
                    continue;
                }
                finite += 1;
                let expected = cache.entry((n, basis)).or_insert_with(|| enumerate_invariants(&basis, n));
                if g.free_rank() != 0 || g.torsion() != expected.as_slice() {
                    failures.push(format!("{flat:?}: {} but enumeration gives {expected:?}", g.describe()));
                }
            }
        }
    }
    verdict(
        1,
        "abelian canonical forms match enumeration",
        started,
        Duration::from_secs(60),
        &failures,
        &format!("{finite} finite quotients, {} distinct lattices, {infinite} infinite, {large} over 200", cache.len()),
    );
}

#[test]
fn enumeration_oracle_distinguishes_groups() {
    let (_, b) = hermite3(&[[2, 0, 0], [0, 2, 0], [0, 0, 1]], 3);
    assert_eq!(enumerate_invariants(&b, 3), vec![2, 2]);
    let (_, b) = hermite3(&[[2, 1, 0], [0, 2, 0], [0, 0, 3]], 3);
    assert_eq!(enumerate_invariants(&b, 3), vec![12]);
    let (_, b) = hermite3(&[[6, 0, 0], [0, 4, 0], [0, 0, 2]], 3);
    assert_eq!(enumerate_invariants(&b, 3), vec![2, 2, 12]);
    let (_, b) = hermite3(&[[9, 0, 0], [3, 3, 0], [0, 0, 1]], 3);
    assert_eq!(enumerate_invariants(&b, 3), vec![3, 9]);
}

// ---------------------------------------------------------------------------
// 2. homology sanity

#[test]
fn criterion_02_homology_sanity() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let bounds = HomologyBounds::default();
    let mut failures = Vec::new();
    let mut groups = 0;
    let mut complexes = 0;
    for ng in corpus().groups.iter().filter(|g| g.group.order() <= 16) {
        groups += 1;
        let g = &ng.group;
        match integral_homology(g, 0, &bounds) {
            Ok(h0) if h0 == AbelianGroup::free(1) => {}
            other => failures.push(format!("{}: H0 = {other:?}", ng.name)),
        }
        let h1 = integral_homology(g, 1, &bounds).unwrap();
        if h1 != *g.abelianization().group() {
            failures.push(format!("{}: H1 = {} but G^ab = {}", ng.name, h1.describe(), g.abelianization().group().describe()));
        }
        let h2 = integral_homology(g, 2, &bounds).unwrap();
        if let Some(e) = h2.exponent() {
            if !(g.order() as u64).is_multiple_of(e) {
                failures.push(format!("{}: exponent of H2 = {} does not divide {}", ng.name, h2.describe(), g.order()));
            }
        } else {
            failures.push(format!("{}: H2 infinite", ng.name));
        }
        let top = if g.order() <= bounds.h3_max_order { 4 } else { 3 };
        let c = bar_complex(g, top, &bounds).unwrap();
        complexes += 1;
        for k in 1..top {
            let dd = c.boundary(k + 1).mul(c.boundary(k)).unwrap();
            if !dd.is_zero() {
                failures.push(format!("{}: d{k} d{} != 0", ng.name, k + 1));
            }
        }
    }
    verdict(
        2,
        "H0 = Z, H1 = G^ab, d∘d = 0, exp H2 divides |G|",
        started,
        Duration::from_secs(300),
        &failures,
        &format!("{groups} groups, {complexes} bar complexes"),
    );
}

// ---------------------------------------------------------------------------
// 3. presentation route against the semidirect route

/// Generators `g1, g2` with `(u, v) ↦ g1^u g2^v` an isomorphism from
/// `Z/a × Z/b` onto `g`, for an abelian group needing at most two generators.
fn two_generators(g: &FiniteGroup) -> Option<(usize, usize, usize, usize)> {
    if !g.is_abelian() {
        return None;
    }
    let t = g.abelianization().group().torsion().to_vec();
    let (a, b) = match t.as_slice() {
        [] => (1, 1),
        [b] => (1, *b as usize),
        [a, b] => (*a as usize, *b as usize),
        _ => return None,
    };
    for g1 in (0..g.order()).filter(|&x| g.element_order(x) == a) {
        for g2 in (0..g.order()).filter(|&x| g.element_order(x) == b) {
            if g.subgroup_generated(&[g1, g2]).order() == a * b && a * b == g.order() {
                return Some((g1, a, g2, b));
            }
        }
    }
    None
}

fn power(g: &FiniteGroup, x: usize, k: usize) -> usize {
    (0..k).fold(0, |acc, _| g.mul(acc, x))
}

fn has_complement(g: &FiniteGroup, n: &Subgroup) -> bool {
    g.all_subgroups()
        .iter()
        .any(|k| k.order() * n.order() == g.order() && g.intersection(n, k).is_trivial())
}

#[test]
fn criterion_03_dual_route_agreement() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let oracle = HomologyOracle::default();
    let mut failures = Vec::new();
    let (mut groups, mut pairs) = (0, 0);
    for ng in &corpus().groups {
        let Some((g1, a, g2, b)) = two_generators(&ng.group) else { continue };
        groups += 1;
        let g = &ng.group;
        let coords: HashMap<usize, (usize, usize)> =
            (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).map(|(u, v)| (g.mul(power(g, g1, u), power(g, g2, v)), (u, v))).collect();
        let x = |i| Word::generator(i);
        let relators = vec![x(0).pow(a as i64), x(1).pow(b as i64), Word::commutator(&x(0), &x(1))];
        for n in g.normal_subgroups() {
            if !has_complement(g, &n) {
                continue;
            }
            pairs += 1;
            let words: Vec<Word> = g
                .generating_set(&n)
                .iter()
                .map(|e| {
                    let (u, v) = coords[e];
                    x(0).pow(u as i64).mul(&x(1).pow(v as i64))
                })
                .collect();
            let label = format!("{} with |N| = {}", ng.name, n.order());
            let pres = PresentationWithSubgroup::new(2, relators.clone(), words).unwrap();
            let section = match baer_section(&pres, 1) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{label}: presentation route failed: {e}"));
                    continue;
                }
            };
            let pair = PairOfGroups::new(Arc::clone(g), n.clone()).unwrap();
            match semidirect_kernel(&pair, &oracle).value {
                Some(k) if k == section => {}
                other => failures.push(format!("{label}: presentation {} vs semidirect {other:?}", section.describe())),
            }
            if n.order() == g.order() {
                let m = oracle.schur_multiplier(g).unwrap();
                if m != section {
                    failures.push(format!("{label}: presentation {} vs H2 {}", section.describe(), m.describe()));
                }
            }
        }
    }
    verdict(
        3,
        "presentation section = semidirect kernel = H2",
        started,
        Duration::from_secs(600),
        &failures,
        &format!("{groups} groups, {pairs} complemented pairs"),
    );
}

// ---------------------------------------------------------------------------
// 4. M(G, G) = M(G) and M(G, 1) = 0

#[test]
fn criterion_04_whole_and_trivial_subgroup() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let largest = corpus().groups.iter().map(|g| g.group.order()).max().unwrap();
    let oracle = HomologyOracle::new(HomologyBounds { max_order: largest, h3_max_order: 12 });
    let mut failures = Vec::new();
    for ng in &corpus().groups {
        let g = &ng.group;
        let whole = PairOfGroups::new(Arc::clone(g), g.whole()).unwrap();
        let m = oracle.schur_multiplier(g).unwrap();
        match semidirect_kernel(&whole, &oracle).value {
            Some(k) if k == m => {}
            other => failures.push(format!("{}: semidirect kernel {other:?}, H2 {}", ng.name, m.describe())),
        }
        let trivial = PairOfGroups::new(Arc::clone(g), g.trivial_subgroup()).unwrap();
        for c in [1, 2] {
            let audit = consistency_audit(&trivial, c, Interpretation::Literal, &oracle);
            let values: Vec<_> = audit.routes.iter().filter_map(|r| r.value.as_ref().map(|v| (r.route, v))).collect();
            if values.is_empty() {
                failures.push(format!("{} c={c}: no route applies to (G, 1)", ng.name));
            }
            for (route, v) in values {
                if !v.is_trivial() {
                    failures.push(format!("{} c={c}: {} gives {} on (G, 1)", ng.name, route.tag(), v.describe()));
                }
            }
        }
    }
    verdict(
        4,
        "semidirect kernel on (G, G) is H2, every route trivial on (G, 1)",
        started,
        Duration::from_secs(600),
        &failures,
        &format!("{} groups", corpus().groups.len()),
    );
}

// ---------------------------------------------------------------------------
// 5, 6. five-term tail and the kernel lemma on all pairs with |G| ≤ 12

fn small_pairs() -> Vec<&'static NamedPair> {
    corpus().pairs.iter().filter(|p| p.pair.group().order() <= 12).collect()
}

#[test]
fn criterion_05_five_term_suite() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let oracle = HomologyOracle::default();
    let pairs = small_pairs();
    let mut failures = Vec::new();
    if pairs.len() < 40 {
        failures.push(format!("only {} pairs", pairs.len()));
    }
    for p in &pairs {
        let v = five_term_check(&p.pair, &oracle);
        if v.status != Status::Pass {
            failures.push(format!("{}: {} {:?}", p.name, v.status, v.values));
        }
    }
    verdict(
        5,
        "five-term sequence sub-checks",
        started,
        Duration::from_secs(600),
        &failures,
        &format!("{} pairs", pairs.len()),
    );
}

#[test]
fn criterion_06_lemma38_suite() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let pairs = small_pairs();
    let mut failures = Vec::new();
    for p in &pairs {
        let v = lemma38_check(&p.pair);
        if v.status != Status::Pass {
            let w: Vec<String> = v.witnesses.iter().map(|(k, x)| format!("{k} = {x}")).collect();
            assert!(!w.is_empty(), "{}: FAIL without witnesses", p.name);
            failures.push(format!("{}: {} with {}", p.name, v.status, w.join(", ")));
        }
    }
    verdict(
        6,
        "wedge-square kernel and surjectivity",
        started,
        Duration::from_secs(600),
        &failures,
        &format!("{} pairs", pairs.len()),
    );
}

// ---------------------------------------------------------------------------
// 7. the class-two free product evaluator

fn random_group(rng: &mut ChaCha8Rng) -> AbelianGroup {
    let k = rng.gen_range(0..=3);
    let orders: Vec<u64> = (0..k).map(|_| [2, 3, 4, 5, 6, 8, 9, 12][rng.gen_range(0..8)]).collect();
    let free = if rng.gen_bool(0.15) { 1 } else { 0 };
    AbelianGroup::free(free).direct_sum(&ab(&orders))
}

fn random_tuple(rng: &mut ChaCha8Rng) -> PairInvariantData {
    PairInvariantData {
        m1: Some(random_group(rng)),
        m2: Some(random_group(rng)),
        n_mod: random_group(rng),
        q_ab: random_group(rng),
        m_q: Some(random_group(rng)),
        h3_q: Some(random_group(rng)),
        g_ab: random_group(rng),
        m_g: Some(random_group(rng)),
        source: Source::Supplied,
        notes: Vec::new(),
    }
}

#[test]
fn criterion_07_free_product_evaluator() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    for i in 0..100 {
        let (d1, d2) = (random_tuple(&mut rng), random_tuple(&mut rng));
        if eval_c2(&d1, &d2).unwrap() != eval_c2(&d2, &d1).unwrap() {
            failures.push(format!("tuple {i}: swap changes the value"));
        }

        // N = 1 on both sides: only the quotient data is left
        let mut t1 = d1.clone();
        let mut t2 = d2.clone();
        for t in [&mut t1, &mut t2] {
            t.m1 = Some(AbelianGroup::trivial());
            t.m2 = Some(AbelianGroup::trivial());
            t.n_mod = AbelianGroup::trivial();
        }
        let v = eval_c2(&t1, &t2).unwrap();
        if !v.is_trivial() {
            failures.push(format!("tuple {i}: N = 1 gives {}", v.describe()));
        }

        // N = G on both sides: quotient data trivial, N/[N,G] = G^ab
        let whole = |d: &PairInvariantData| PairInvariantData {
            n_mod: d.g_ab.clone(),
            q_ab: AbelianGroup::trivial(),
            m_q: Some(AbelianGroup::trivial()),
            h3_q: Some(AbelianGroup::trivial()),
            m_g: d.m1.clone(),
            ..d.clone()
        };
        let (w1, w2) = (whole(&d1), whole(&d2));
        let t = eval_c2_terms(&w1, &w2).unwrap();
        let be = burns_ellis_terms(
            w1.m2.as_ref().unwrap(),
            w2.m2.as_ref().unwrap(),
            w1.m1.as_ref().unwrap(),
            w2.m1.as_ref().unwrap(),
            &w1.g_ab,
            &w2.g_ab,
        );
        let matched: Vec<usize> = [(0, 0), (1, 1), (2, 2), (3, 3), (8, 4)]
            .iter()
            .filter(|&&(a, b)| t.terms[a].value == be.terms[b].value)
            .map(|&(a, _)| a)
            .collect();
        let rest_trivial = [4, 5, 6, 7, 9, 10].iter().all(|&a| t.terms[a].value.is_trivial());
        if matched.len() != 5 || !rest_trivial || t.total != be.total {
            failures.push(format!("tuple {i}: N = G does not reduce to the five-term shape"));
        }
    }
    verdict(
        7,
        "swap symmetry, N = 1 and N = G specializations",
        started,
        Duration::from_secs(30),
        &failures,
        "100 seeded tuples",
    );
}

// ---------------------------------------------------------------------------
// 8. hypothesis checkers

#[test]
fn criterion_08_hypothesis_checkers() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let oracle = HomologyOracle::default();
    let c = corpus();
    let data = |name: &str| PairInvariantData::from_pair(&c.pair(name).unwrap().pair, &oracle);
    let mut failures = Vec::new();

    let r = thm43_hypotheses(&data("S3/A3"), &data("Z3/G"));
    if r.status != Status::Pass || r.conditions.iter().any(|x| x.holds != Some(true)) {
        let bad: Vec<&str> = r.conditions.iter().filter(|x| x.holds != Some(true)).map(|x| x.label.as_str()).collect();
        failures.push(format!("(S3, A3) x (Z3, Z3): {} with {bad:?}", r.status));
    }

    let r = thm43_hypotheses(&data("Z2/G"), &data("Z4/G"));
    let tensor_violation = r.failing().any(|x| x.level == Level::Group && x.label.contains('⊗'));
    if !tensor_violation {
        failures.push("(Z2, Z2) x (Z4, Z4): no group-level tensor violation reported".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let (mut coprime, mut checked) = (0, 0);
    for _ in 0..50 {
        let a = &c.pairs[rng.gen_range(0..c.pairs.len())];
        let b = &c.pairs[rng.gen_range(0..c.pairs.len())];
        let imp = cor44_implication(a.pair.group(), b.pair.group(), &oracle);
        checked += 1;
        if imp.coprime.coprime {
            coprime += 1;
        }
        if imp.holds == Some(false) {
            let bad: Vec<String> = imp
                .group_level
                .iter()
                .filter(|x| x.holds == Some(false))
                .map(|x| format!("{} = {}", x.label, x.value.as_ref().map_or("?".into(), |v| v.describe())))
                .collect();
            failures.push(format!("{} with {}: coprime but {}", a.group, b.group, bad.join(", ")));
        }
    }
    verdict(
        8,
        "hypothesis reports and the coprime implication",
        started,
        Duration::from_secs(300),
        &failures,
        &format!("{checked} random pairs, {coprime} coprime"),
    );
}

// ---------------------------------------------------------------------------
// 9, 10. the binary

fn baer(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_baer")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("baer-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn criterion_09_audit_reports_mismatch() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let mut failures = Vec::new();

    // values from the other pipelines
    let c = corpus();
    let pres = c.presentation("Z2^2/factor").unwrap();
    let section = baer_section(pres, 1).unwrap();
    if section != ab(&[2]) {
        failures.push(format!("presentation route gives {}", section.describe()));
    }

    let out = scratch("audit.json");
    let o = baer(&["--checks", "thm36-audit", "--interpretation", "literal", "--out", out.to_str().unwrap()]);
    if o.status.code() != Some(0) {
        failures.push(format!("exit code {:?}", o.status.code()));
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let record = report["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["pair"] == "Z2^2/factor" && r["check"] == "thm36-audit")
        .cloned()
        .unwrap_or_default();
    if record["status"] != "MISMATCH" {
        failures.push(format!("record status {}", record["status"]));
    }
    let torsion = |key: &str| record["values"][key]["torsion"].clone();
    if torsion("route.semidirect-kernel") != serde_json::json!([2]) {
        failures.push(format!("semidirect-kernel = {}", record["values"]["route.semidirect-kernel"]));
    }
    if torsion("route.central-formula") != serde_json::json!([2, 2]) {
        failures.push(format!("central-formula = {}", record["values"]["route.central-formula"]));
    }
    let as_finding = report["findings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["pair"] == "Z2^2/factor" && f["status"] == "MISMATCH");
    if !as_finding {
        failures.push("no MISMATCH finding for Z2^2/factor".into());
    }

    let o = baer(&["compute", "audit", "--pair", "Z2^2/factor", "--interpretation", "literal"]);
    let text = String::from_utf8_lossy(&o.stdout);
    if o.status.code() != Some(0) || !text.trim_end().ends_with("status: MISMATCH") {
        failures.push(format!("compute audit: exit {:?}, output {text}", o.status.code()));
    }
    verdict(
        9,
        "audit on (Z2 x Z2, factor) reports MISMATCH with exit code 0",
        started,
        Duration::from_secs(120),
        &failures,
        "semidirect Z/2, central Z/2 + Z/2",
    );
}

fn without_timing(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).lines().filter(|l| !l.trim_start().starts_with("\"timing_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn criterion_10_determinism() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let started = Instant::now();
    let mut failures = Vec::new();
    let (a, b) = (scratch("run-a.json"), scratch("run-b.json"));
    let mut outputs = Vec::new();
    for path in [&a, &b] {
        let o = baer(&["--seed", "11", "--out", path.to_str().unwrap()]);
        if o.status.code() != Some(0) {
            failures.push(format!("exit code {:?}", o.status.code()));
        }
        outputs.push(without_timing(&std::fs::read(path).unwrap()));
    }
    if outputs[0] != outputs[1] {
        let line = outputs[0].lines().zip(outputs[1].lines()).position(|(x, y)| x != y);
        failures.push(format!("reports differ first at line {line:?}"));
    }
    let records = outputs[0].matches("\"check\"").count();
    verdict(
        10,
        "two full runs give identical reports",
        started,
        Duration::from_secs(600),
        &failures,
        &format!("{records} records per run"),
    );
}
