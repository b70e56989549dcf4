//! Tensor product, Tor and exterior square.

use super::matrix::IntMatrix;
use super::{multiplication_hom, AbelianGroup, AbelianHom, AbgrpError, PresentedAbelian};
use std::sync::Arc;

/// `A ⊗ B` on generators `a_i ⊗ b_j` (index `i * nb + j`), with relations
/// `r ⊗ b_j` and `a_i ⊗ s` lifted from both presentations.
pub fn tensor_presented(
    a: &PresentedAbelian,
    b: &PresentedAbelian,
) -> Result<PresentedAbelian, AbgrpError> {
    let (na, nb) = (a.generators(), b.generators());
    let n = na * nb;
    let mut rels = Vec::new();
    for r in a.relations().row_vecs() {
        for j in 0..nb {
            let mut row = vec![0; n];
            for (i, &v) in r.iter().enumerate() {
                row[i * nb + j] = v;
            }
            rels.push(row);
        }
    }
    for s in b.relations().row_vecs() {
        for i in 0..na {
            let mut row = vec![0; n];
            for (j, &v) in s.iter().enumerate() {
                row[i * nb + j] = v;
            }
            rels.push(row);
        }
    }
    PresentedAbelian::new(n, IntMatrix::from_rows(n, &rels))
}

pub fn tensor(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let pa = PresentedAbelian::from_group(a);
    let pb = PresentedAbelian::from_group(b);
    tensor_presented(&pa, &pb)
        .expect("tensor of canonical presentations")
        .canonical()
        .clone()
}

/// `Tor(A, B)` as the sum over torsion factors `d` of `A` of the `d`-torsion
/// subgroup of `B`, each obtained as the kernel of multiplication by `d`.
pub fn tor(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let pb = Arc::new(PresentedAbelian::from_group(b));
    let parts: Vec<AbelianGroup> = a
        .torsion()
        .iter()
        .map(|&d| {
            let (k, _) = multiplication_hom(pb.clone(), d as i64)
                .kernel()
                .expect("kernel of multiplication on a canonical group");
            k.canonical().clone()
        })
        .collect();
    AbelianGroup::sum(&parts)
}

/// Index of `e_i ∧ e_j` (`i < j`) among `n(n-1)/2` generators.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Adds `coef * (e_i ∧ e_j)` to `row`, rewriting `e_j ∧ e_i = -e_i ∧ e_j`.
fn add_wedge(row: &mut [i64], n: usize, i: usize, j: usize, coef: i64) -> Result<(), AbgrpError> {
    use std::cmp::Ordering::*;
    let (idx, sign) = match i.cmp(&j) {
        Equal => return Ok(()),
        Less => (pair_index(n, i, j), 1),
        Greater => (pair_index(n, j, i), -1),
    };
    row[idx] = row[idx]
        .checked_add(sign * coef)
        .ok_or(AbgrpError::Overflow)?;
    Ok(())
}

/// `∧²A` on generators `e_i ∧ e_j` with `i < j`; relations `r ∧ e_k` for each
/// relation `r` of `A` and each generator `e_k`.
pub fn wedge2_presented(a: &PresentedAbelian) -> Result<PresentedAbelian, AbgrpError> {
    let n = a.generators();
    let m = n * n.saturating_sub(1) / 2;
    let mut rels = Vec::new();
    for r in a.relations().row_vecs() {
        for k in 0..n {
            let mut row = vec![0; m];
            for (i, &v) in r.iter().enumerate() {
                if v != 0 {
                    add_wedge(&mut row, n, i, k, v)?;
                }
            }
            if row.iter().any(|&v| v != 0) {
                rels.push(row);
            }
        }
    }
    PresentedAbelian::new(m, IntMatrix::from_rows(m, &rels))
}

pub fn wedge2(a: &AbelianGroup) -> AbelianGroup {
    let pa = PresentedAbelian::from_group(a);
    wedge2_presented(&pa)
        .expect("exterior square of a canonical presentation")
        .canonical()
        .clone()
}

/// `∧²f`: `e_i ∧ e_j ↦ f(e_i) ∧ f(e_j)`, with coefficient
/// `f_ik f_jl - f_il f_jk` on `e_k ∧ e_l`.
pub fn wedge2_hom(f: &AbelianHom) -> Result<AbelianHom, AbgrpError> {
    let s = Arc::new(wedge2_presented(f.source())?);
    let t = Arc::new(wedge2_presented(f.target())?);
    let (n, m) = (f.source().generators(), f.target().generators());
    let fm = f.matrix();
    let mut out = IntMatrix::zeros(s.generators(), t.generators());
    for i in 0..n {
        for j in i + 1..n {
            let row = pair_index(n, i, j);
            for k in 0..m {
                for l in k + 1..m {
                    let a = (fm.get(i, k) as i128) * (fm.get(j, l) as i128);
                    let b = (fm.get(i, l) as i128) * (fm.get(j, k) as i128);
                    let v = i64::try_from(a - b).map_err(|_| AbgrpError::Overflow)?;
                    out.set(row, pair_index(m, k, l), v);
                }
            }
        }
    }
    AbelianHom::new(s, t, out)
}

/// `f ⊗ g` between tensor presentations.
pub fn tensor_hom(f: &AbelianHom, g: &AbelianHom) -> Result<AbelianHom, AbgrpError> {
    let s = Arc::new(tensor_presented(f.source(), g.source())?);
    let t = Arc::new(tensor_presented(f.target(), g.target())?);
    let (nf, ng) = (f.source().generators(), g.source().generators());
    let (mf, mg) = (f.target().generators(), g.target().generators());
    let mut out = IntMatrix::zeros(nf * ng, mf * mg);
    for i in 0..nf {
        for j in 0..ng {
            let mut e = vec![0; mf * mg];
            for k in 0..mf {
                for l in 0..mg {
                    let v = (f.matrix().get(i, k) as i128) * (g.matrix().get(j, l) as i128);
                    e[k * mg + l] = i64::try_from(v).map_err(|_| AbgrpError::Overflow)?;
                }
            }
            for (c, v) in e.into_iter().enumerate() {
                out.set(i * ng + j, c, v);
            }
        }
    }
    AbelianHom::new(s, t, out)
}
