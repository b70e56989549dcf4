//! Integral homology of finite groups from the normalized bar complex.
//!
//! Two routes are provided. [`homology_at`] reduces `C_k / im d_{k+1}` with a
//! tracked dense Smith form and keeps explicit cycle witnesses, which is what
//! induced maps need. [`homology_invariants`] only wants the isomorphism type
//! and uses sparse unit-pivot elimination, which is what makes degree 3
//! reachable at order 12.

mod sparse;

pub use sparse::{elementary_divisors, SparseMatrix};

use crate::abgrp::{AbelianGroup, AbelianHom, AbgrpError, IntMatrix, PresentedAbelian};
use crate::fingrp::{FiniteGroup, GroupHom};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("group of order {order} exceeds the bound {limit} for degree {degree}")]
    Bound { order: usize, degree: usize, limit: usize },
    #[error("degree {degree} needs a complex of top degree at least {needed}")]
    Degree { degree: usize, needed: usize },
    #[error("boundary composite d{0} d{} is nonzero", .0 + 1)]
    NotAComplex(usize),
    #[error(transparent)]
    Arithmetic(#[from] AbgrpError),
}

/// Size bounds for the bar complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyBounds {
    /// Largest group order for homology in degree ≤ 2.
    pub max_order: usize,
    /// Largest group order for homology in degree 3.
    pub h3_max_order: usize,
}

impl Default for HomologyBounds {
    fn default() -> Self {
        HomologyBounds { max_order: 16, h3_max_order: 12 }
    }
}

impl HomologyBounds {
    /// Checks that homology in `degree` is allowed for a group of order `order`.
    pub fn check(&self, order: usize, degree: usize) -> Result<(), HomologyError> {
        let limit = if degree >= 3 { self.h3_max_order } else { self.max_order };
        if order > limit {
            return Err(HomologyError::Bound { order, degree, limit });
        }
        Ok(())
    }
}

/// Chain complex of free abelian groups; `boundaries[n]` is `d_n : C_n → C_{n-1}`
/// with rows indexed by the basis of `C_n` (`boundaries[0]` is the zero map to 0).
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplexZ {
    /// Validates shapes and `d_n d_{n+1} = 0`.
    pub fn new(boundaries: Vec<SparseMatrix>) -> Result<Self, HomologyError> {
        let dims: Vec<usize> = boundaries.iter().map(SparseMatrix::rows).collect();
        for n in 1..boundaries.len() {
            if boundaries[n].cols() != dims[n - 1] {
                return Err(HomologyError::NotAComplex(n));
            }
            if n + 1 < boundaries.len() && !boundaries[n + 1].mul(&boundaries[n])?.is_zero() {
                return Err(HomologyError::NotAComplex(n));
            }
        }
        Ok(ChainComplexZ { dims, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n]
    }
}

/// Basis indexing for `n`-tuples of non-identity elements of a group of order `q+1`.
fn tuple_index(t: &[usize], q: usize) -> usize {
    t.iter().fold(0, |acc, &g| acc * q + (g - 1))
}

fn tuple_at(mut idx: usize, n: usize, q: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = idx % q + 1;
        idx /= q;
    }
    t
}

/// The normalized bar complex with trivial coefficients, degrees `0..=top`.
///
/// `d(g1,…,gn) = (g2,…,gn) + Σ (-1)^i (…, g_i g_{i+1}, …) + (-1)^n (g1,…,g_{n-1})`,
/// dropping every tuple that contains the identity.
pub fn bar_complex(
    g: &FiniteGroup,
    top: usize,
    bounds: &HomologyBounds,
) -> Result<ChainComplexZ, HomologyError> {
    if top > 4 {
        return Err(HomologyError::Degree { degree: top, needed: 4 });
    }
    bounds.check(g.order(), top.saturating_sub(1))?;
    let q = g.order() - 1;
    let mut dims = vec![1usize];
    for n in 1..=top {
        dims.push(dims[n - 1] * q);
    }
    let mut boundaries = vec![SparseMatrix::new(1, 0)];
    for n in 1..=top {
        let mut d = SparseMatrix::new(dims[n], dims[n - 1]);
        if n >= 2 {
            for idx in 0..dims[n] {
                let t = tuple_at(idx, n, q);
                d.add(idx, tuple_index(&t[1..], q), 1);
                for i in 1..n {
                    let prod = g.mul(t[i - 1], t[i]);
                    if prod == 0 {
                        continue;
                    }
                    let mut f = Vec::with_capacity(n - 1);
                    f.extend_from_slice(&t[..i - 1]);
                    f.push(prod);
                    f.extend_from_slice(&t[i + 1..]);
                    d.add(idx, tuple_index(&f, q), if i % 2 == 1 { -1 } else { 1 });
                }
                d.add(idx, tuple_index(&t[..n - 1], q), if n % 2 == 1 { -1 } else { 1 });
            }
        }
        boundaries.push(d);
    }
    ChainComplexZ::new(boundaries)
}

/// `H_k` with explicit cycle witnesses.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    degree: usize,
    /// `C_k / im d_{k+1}`; presentation generators are the basis of `C_k`.
    chains_mod_boundaries: Arc<PresentedAbelian>,
    /// `H_k → C_k / im d_{k+1}`, the kernel of the map induced by `d_k`.
    inclusion: AbelianHom,
}

impl HomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &AbelianGroup {
        self.inclusion.source().canonical()
    }

    pub fn presentation(&self) -> &Arc<PresentedAbelian> {
        self.inclusion.source()
    }

    pub fn inclusion(&self) -> &AbelianHom {
        &self.inclusion
    }

    /// One cycle of `C_k` per canonical generator of `H_k`.
    pub fn cycle_witnesses(&self) -> Result<Vec<Vec<i64>>, AbgrpError> {
        let h = self.presentation();
        (0..h.canonical().generator_count())
            .map(|i| self.inclusion.apply(&h.canonical_generator(i)))
            .collect()
    }

    /// Canonical coordinates of the class of `cycle`, or `None` if it is not a cycle.
    pub fn class_of(&self, cycle: &[i64]) -> Result<Option<Vec<i64>>, AbgrpError> {
        match self.inclusion.preimage(cycle)? {
            None => Ok(None),
            Some(x) => Ok(Some(self.presentation().canonical_coords(&x)?)),
        }
    }
}

/// `H_k(C)` with witnesses; needs `k + 1 ≤ top degree`.
pub fn homology_at(c: &ChainComplexZ, k: usize) -> Result<HomologyGroup, HomologyError> {
    if k + 1 > c.top_degree() {
        return Err(HomologyError::Degree { degree: k, needed: k + 1 });
    }
    let p = Arc::new(PresentedAbelian::new(c.dim(k), c.boundary(k + 1).to_dense())?);
    let below = Arc::new(PresentedAbelian::free(if k == 0 { 0 } else { c.dim(k - 1) }));
    let dk = if k == 0 { IntMatrix::zeros(c.dim(0), 0) } else { c.boundary(k).to_dense() };
    let map = AbelianHom::new(p.clone(), below, dk)?;
    let (_, inclusion) = map.kernel()?;
    Ok(HomologyGroup { degree: k, chains_mod_boundaries: p, inclusion })
}

/// Isomorphism type of `H_k(C)` only: torsion from the elementary divisors of
/// `d_{k+1}`, free rank `dim C_k - rank d_k - rank d_{k+1}`.
pub fn homology_invariants(c: &ChainComplexZ, k: usize) -> Result<AbelianGroup, HomologyError> {
    if k + 1 > c.top_degree() {
        return Err(HomologyError::Degree { degree: k, needed: k + 1 });
    }
    let above = elementary_divisors(c.boundary(k + 1))?;
    let rank_below = if k == 0 { 0 } else { elementary_divisors(c.boundary(k))?.len() };
    let free = c.dim(k) - rank_below - above.len();
    let mut orders: Vec<u64> = above.into_iter().filter(|&d| d > 1).collect();
    orders.extend(std::iter::repeat_n(0, free));
    Ok(AbelianGroup::from_cyclic_orders(&orders)?)
}

/// `M(G) = H_2(G)`.
pub fn schur_multiplier(g: &FiniteGroup, bounds: &HomologyBounds) -> Result<AbelianGroup, HomologyError> {
    integral_homology(g, 2, bounds)
}

/// `H_k(G)` for `k ≤ 3` by the invariants route.
pub fn integral_homology(g: &FiniteGroup, k: usize, bounds: &HomologyBounds) -> Result<AbelianGroup, HomologyError> {
    bounds.check(g.order(), k)?;
    let c = bar_complex(g, k + 1, &unbounded())?;
    homology_invariants(&c, k)
}

fn unbounded() -> HomologyBounds {
    HomologyBounds { max_order: usize::MAX, h3_max_order: usize::MAX }
}

/// `H_k(G)` with witnesses, for use with [`induced_on_homology`].
pub fn group_homology(g: &FiniteGroup, k: usize, bounds: &HomologyBounds) -> Result<HomologyGroup, HomologyError> {
    bounds.check(g.order(), k)?;
    let c = bar_complex(g, k + 1, &unbounded())?;
    homology_at(&c, k)
}

/// A map between homology groups in canonical coordinates.
#[derive(Clone, Debug)]
pub struct HomologyClassMap {
    pub degree: usize,
    pub hom: AbelianHom,
}

/// The chain map `C_k(G) → C_k(H)` of `f`: tuples map elementwise and go to 0
/// once a coordinate becomes the identity.
pub fn chain_map(f: &GroupHom, k: usize) -> IntMatrix {
    let (qs, qt) = (f.source().order() - 1, f.target().order() - 1);
    let rows = qs.pow(k as u32);
    let cols = qt.pow(k as u32);
    let mut m = IntMatrix::zeros(rows, cols);
    for idx in 0..rows {
        let t = tuple_at(idx, k, qs);
        let img: Vec<usize> = t.iter().map(|&x| f.apply(x)).collect();
        if img.iter().all(|&y| y != 0) {
            m.set(idx, tuple_index(&img, qt), 1);
        }
    }
    m
}

/// `H_k(f) : H_k(G) → H_k(H)` given the witnessed homology of both ends.
pub fn induced_on_homology(
    f: &GroupHom,
    source: &HomologyGroup,
    target: &HomologyGroup,
) -> Result<HomologyClassMap, HomologyError> {
    let k = source.degree();
    assert_eq!(k, target.degree(), "degrees differ");
    let chains = AbelianHom::new(
        source.chains_mod_boundaries.clone(),
        target.chains_mod_boundaries.clone(),
        chain_map(f, k),
    )?;
    let pushed = source.inclusion.then(&chains)?;
    let hs = source.presentation().clone();
    let ht = target.presentation().clone();
    let mut canon = IntMatrix::zeros(hs.canonical().generator_count(), ht.canonical().generator_count());
    for i in 0..hs.canonical().generator_count() {
        let img = pushed.apply(&hs.canonical_generator(i))?;
        let coords = target.class_of(&img)?.expect("chain maps send cycles to cycles");
        for (j, v) in coords.into_iter().enumerate() {
            canon.set(i, j, v);
        }
    }
    let hom = AbelianHom::from_canonical_matrix(hs, ht, &canon)?;
    Ok(HomologyClassMap { degree: k, hom })
}
