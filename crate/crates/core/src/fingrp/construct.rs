//! Built-in groups.

use super::{FiniteGroup, FingrpError};

fn build(n: usize, mul: impl Fn(usize, usize) -> usize, labels: Vec<String>) -> FiniteGroup {
    let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::new(table, Some(labels)).expect("built-in constructor yields a group")
}

fn power(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn word(parts: &[String]) -> String {
    let s: Vec<&str> = parts.iter().map(String::as_str).filter(|p| !p.is_empty()).collect();
    if s.is_empty() {
        "1".into()
    } else {
        s.join(" ")
    }
}

/// `Z/n`, element `k` being `a^k`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, FingrpError> {
    if n == 0 {
        return Err(FingrpError::Unsupported("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(|k| word(&[power("a", k)])).collect();
    Ok(build(n, |a, b| (a + b) % n, labels))
}

/// Symmetries of the regular `n`-gon (order `2n`); element `i + n e` is `r^i s^e`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, FingrpError> {
    if n < 1 {
        return Err(FingrpError::Unsupported("dihedral group of a 0-gon".into()));
    }
    let labels = (0..2 * n)
        .map(|x| word(&[power("r", x % n), power("s", x / n)]))
        .collect();
    Ok(build(
        2 * n,
        |x, y| {
            let (i, e) = (x % n, x / n);
            let (j, f) = (y % n, y / n);
            let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
            k + n * ((e + f) % 2)
        },
        labels,
    ))
}

/// Generalized quaternion group of order `order` (a multiple of 4, at least 8):
/// `a^{2m} = 1`, `b² = a^m`, `b⁻¹ a b = a⁻¹`. Element `i + 2m e` is `a^i b^e`.
pub fn quaternion(order: usize) -> Result<FiniteGroup, FingrpError> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(FingrpError::Unsupported(format!("quaternion group of order {order}")));
    }
    let n = order / 2;
    let m = n / 2;
    let labels = (0..order)
        .map(|x| word(&[power("a", x % n), power("b", x / n)]))
        .collect();
    Ok(build(
        order,
        |x, y| {
            let (i, e) = (x % n, x / n);
            let (j, f) = (y % n, y / n);
            let k = if e == 0 { i + j } else { i + n - j };
            if e == 1 && f == 1 {
                (k + m) % n
            } else {
                k % n + n * ((e + f) % 2)
            }
        },
        labels,
    ))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                s.push(' ');
            }
            s.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        s.push(')');
    }
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

fn perm_group(perms: Vec<Vec<usize>>) -> FiniteGroup {
    let n = perms.len();
    let index = |q: &Vec<usize>| perms.iter().position(|p| p == q).expect("closed");
    // (p q)(x) = q(p(x)): apply p first
    let mut table = vec![vec![0; n]; n];
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let pq: Vec<usize> = p.iter().map(|&x| q[x]).collect();
            table[a][b] = index(&pq);
        }
    }
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    FiniteGroup::new(table, Some(labels)).expect("permutation group")
}

/// Symmetric group on `n ≤ 4` points, elements in lexicographic order.
pub fn symmetric(n: usize) -> Result<FiniteGroup, FingrpError> {
    if !(1..=4).contains(&n) {
        return Err(FingrpError::Unsupported(format!("symmetric group of degree {n}")));
    }
    Ok(perm_group(permutations(n)))
}

/// Alternating group on `n ≤ 4` points.
pub fn alternating(n: usize) -> Result<FiniteGroup, FingrpError> {
    if !(1..=4).contains(&n) {
        return Err(FingrpError::Unsupported(format!("alternating group of degree {n}")));
    }
    Ok(perm_group(permutations(n).into_iter().filter(|p| is_even(p)).collect()))
}

/// `A × B`, element `(x, y)` at index `x |B| + y`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let labels = (0..na * nb)
        .map(|z| format!("({}, {})", a.label(z / nb), b.label(z % nb)))
        .collect();
    build(
        na * nb,
        |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
        labels,
    )
}
