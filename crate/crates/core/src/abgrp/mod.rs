//! Finitely generated abelian groups and homomorphisms between them.
//!
//! Groups are presented as `Z^n / rowspace(R)`. Every presentation is reduced
//! once to Smith normal form, which yields the canonical invariant-factor form
//! ([`AbelianGroup`]) together with a change of basis into canonical
//! coordinates. All kernel, image and cokernel computations happen in those
//! coordinates.

mod functors;
pub mod matrix;
mod ring;

pub use functors::{tensor, tensor_hom, tensor_presented, tor, wedge2, wedge2_hom, wedge2_presented};
pub use matrix::IntMatrix;

use matrix::{row_echelon, smith_normal_form, solve_left, vec_mul};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbgrpError {
    #[error("integer overflow: an invariant or coordinate exceeds 64 bits")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("homomorphism is not well defined: relation {relation} of the source does not map to zero")]
    IllDefined { relation: usize },
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("element is not in the image of the homomorphism")]
    NotInImage,
}

/// Canonical form of a finitely generated abelian group:
/// `Z^free_rank + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk`, each `di >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`, with `n = 0` meaning `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => AbelianGroup { free_rank: 0, torsion: vec![n] },
        }
    }

    /// Canonical form of `Z/o1 + Z/o2 + ...` (`0` entries are free summands).
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self, AbgrpError> {
        let diag: Vec<i64> = orders
            .iter()
            .map(|&o| i64::try_from(o).map_err(|_| AbgrpError::Overflow))
            .collect::<Result<_, _>>()?;
        let m = IntMatrix::diagonal(&diag, diag.len());
        Ok(PresentedAbelian::new(diag.len(), m)?.canonical().clone())
    }

    /// Checks the canonical-form invariants on raw fields.
    pub fn from_parts(free_rank: usize, torsion: Vec<u64>) -> Result<Self, AbgrpError> {
        let ok = torsion.iter().all(|&d| d >= 2)
            && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(AbgrpError::Dimension(format!(
                "torsion {torsion:?} is not an invariant-factor chain"
            )));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `None` for infinite groups or when the order exceeds `u128`.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// Exponent of a finite group (1 for the trivial group).
    pub fn exponent(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.last().copied().unwrap_or(1))
    }

    /// Orders of the canonical generators: torsion factors then `0` for each free one.
    pub fn moduli(&self) -> Vec<u64> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat_n(0, self.free_rank));
        m
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self == other
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.moduli();
        orders.extend(other.moduli());
        Self::from_cyclic_orders(&orders).expect("direct sum of u64-sized factors")
    }

    /// Sum of any number of groups.
    pub fn sum<'a>(groups: impl IntoIterator<Item = &'a AbelianGroup>) -> AbelianGroup {
        groups
            .into_iter()
            .fold(AbelianGroup::trivial(), |acc, g| acc.direct_sum(g))
    }

    /// Plain description, e.g. `free_rank 0, torsion [2, 4]`.
    pub fn describe(&self) -> String {
        format!("free_rank {}, torsion {:?}", self.free_rank, self.torsion)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn direct_sum(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    a.direct_sum(b)
}

pub fn is_isomorphic(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    a.is_isomorphic(b)
}

/// `Z^generators / rowspace(relations)` with its Smith-normal-form data.
#[derive(Clone, Debug)]
pub struct PresentedAbelian {
    generators: usize,
    relations: IntMatrix,
    canonical: AbelianGroup,
    /// SNF column transform: presentation coordinates `x` become `x * to_canon`.
    to_canon: IntMatrix,
    /// Inverse transform; row `p` is the presentation vector of SNF basis element `p`.
    from_canon: IntMatrix,
    /// SNF positions kept as canonical generators, torsion first then free.
    slots: Vec<usize>,
    /// Order of each canonical generator (`0` for free ones).
    moduli: Vec<u64>,
}

impl PartialEq for PresentedAbelian {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl PresentedAbelian {
    /// Reduces `relations` (rows are relations over `generators` generators).
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, AbgrpError> {
        if relations.cols() != generators {
            return Err(AbgrpError::Dimension(format!(
                "relation matrix has {} columns for {} generators",
                relations.cols(),
                generators
            )));
        }
        let snf = smith_normal_form(&relations, true)?;
        let (canonical, mut torsion_slots, free_slots) = read_diagonal(&snf.diagonal)?;
        let moduli = canonical.moduli();
        torsion_slots.extend(free_slots);
        Ok(PresentedAbelian {
            generators,
            relations,
            canonical,
            to_canon: snf.v.expect("tracked"),
            from_canon: snf.v_inv.expect("tracked"),
            slots: torsion_slots,
            moduli,
        })
    }

    /// Presentation with no relations.
    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(0, rank)).expect("free presentation")
    }

    /// The diagonal presentation of a canonical group; canonical and
    /// presentation coordinates coincide.
    pub fn from_group(g: &AbelianGroup) -> Self {
        let moduli: Vec<i64> = g.moduli().iter().map(|&m| m as i64).collect();
        let n = moduli.len();
        let rows: Vec<Vec<i64>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| {
                let mut r = vec![0; n];
                r[i] = m;
                r
            })
            .collect();
        let p = Self::new(n, IntMatrix::from_rows(n, &rows)).expect("diagonal presentation");
        debug_assert_eq!(&p.canonical, g);
        p
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn canonical(&self) -> &AbelianGroup {
        &self.canonical
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Canonical coordinates of the element with presentation coordinates `x`,
    /// torsion components reduced into `[0, d)`.
    pub fn canonical_coords(&self, x: &[i64]) -> Result<Vec<i64>, AbgrpError> {
        if x.len() != self.generators {
            return Err(AbgrpError::Dimension(format!(
                "element of length {} for {} generators",
                x.len(),
                self.generators
            )));
        }
        let y = vec_mul(x, &self.to_canon)?;
        Ok(self
            .slots
            .iter()
            .zip(&self.moduli)
            .map(|(&p, &m)| if m == 0 { y[p] } else { y[p].rem_euclid(m as i64) })
            .collect())
    }

    /// Presentation coordinates of canonical generator `i`.
    pub fn canonical_generator(&self, i: usize) -> Vec<i64> {
        self.from_canon.row(self.slots[i]).to_vec()
    }

    /// Presentation coordinates of the element with canonical coordinates `y`.
    pub fn from_canonical(&self, y: &[i64]) -> Result<Vec<i64>, AbgrpError> {
        let mut acc = vec![0i128; self.generators];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            for (a, &v) in acc.iter_mut().zip(self.from_canon.row(self.slots[i])) {
                *a = a
                    .checked_add((yi as i128) * v as i128)
                    .ok_or(AbgrpError::Overflow)?;
            }
        }
        acc.into_iter()
            .map(|v| i64::try_from(v).map_err(|_| AbgrpError::Overflow))
            .collect()
    }

    pub fn is_zero_element(&self, x: &[i64]) -> Result<bool, AbgrpError> {
        Ok(self.canonical_coords(x)?.iter().all(|&v| v == 0))
    }

    /// Reduces canonical coordinates into standard representatives.
    pub fn reduce_canonical(&self, y: &mut [i64]) {
        for (v, &m) in y.iter_mut().zip(&self.moduli) {
            if m != 0 {
                *v = v.rem_euclid(m as i64);
            }
        }
    }

    /// Relation rows of the canonical presentation (`d_i e_i` per torsion generator).
    fn canonical_relations(&self) -> Vec<Vec<i64>> {
        let n = self.moduli.len();
        self.moduli
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| {
                let mut r = vec![0; n];
                r[i] = m as i64;
                r
            })
            .collect()
    }
}

/// Canonical form from an SNF diagonal, with the positions of the torsion
/// and free entries.
fn read_diagonal(diagonal: &[BigInt]) -> Result<(AbelianGroup, Vec<usize>, Vec<usize>), AbgrpError> {
    let mut torsion_slots = Vec::new();
    let mut free_slots = Vec::new();
    let mut torsion = Vec::new();
    for (p, d) in diagonal.iter().enumerate() {
        let d = d.to_u64().ok_or(AbgrpError::Overflow)?;
        match d {
            0 => free_slots.push(p),
            1 => {}
            _ => {
                torsion_slots.push(p);
                torsion.push(d);
            }
        }
    }
    Ok((AbelianGroup { free_rank: free_slots.len(), torsion }, torsion_slots, free_slots))
}

impl AbelianGroup {
    /// Canonical form of `Z^cols / rowspace(m)` without building coordinates.
    pub fn from_relations(m: &IntMatrix) -> Result<Self, AbgrpError> {
        Ok(read_diagonal(&smith_normal_form(m, false)?.diagonal)?.0)
    }
}

pub fn from_relation_matrix(m: &IntMatrix) -> Result<PresentedAbelian, AbgrpError> {
    PresentedAbelian::new(m.cols(), m.clone())
}

/// A homomorphism between presented groups. Row `i` of `matrix` is the image
/// of source generator `i` written over the target generators.
#[derive(Clone, Debug)]
pub struct AbelianHom {
    source: Arc<PresentedAbelian>,
    target: Arc<PresentedAbelian>,
    matrix: IntMatrix,
}

fn same(a: &Arc<PresentedAbelian>, b: &Arc<PresentedAbelian>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AbelianHom {
    /// Validates well-definedness: every source relation must map to zero.
    pub fn new(
        source: Arc<PresentedAbelian>,
        target: Arc<PresentedAbelian>,
        matrix: IntMatrix,
    ) -> Result<Self, AbgrpError> {
        if matrix.rows() != source.generators() || matrix.cols() != target.generators() {
            return Err(AbgrpError::Dimension(format!(
                "hom matrix {}x{} for {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.generators(),
                target.generators()
            )));
        }
        for r in 0..source.relations().rows() {
            let img = vec_mul(source.relations().row(r), &matrix)?;
            if !target.is_zero_element(&img)? {
                return Err(AbgrpError::IllDefined { relation: r });
            }
        }
        Ok(AbelianHom { source, target, matrix })
    }

    pub fn identity(p: Arc<PresentedAbelian>) -> Self {
        let n = p.generators();
        AbelianHom { source: p.clone(), target: p, matrix: IntMatrix::identity(n) }
    }

    pub fn zero(source: Arc<PresentedAbelian>, target: Arc<PresentedAbelian>) -> Self {
        let m = IntMatrix::zeros(source.generators(), target.generators());
        AbelianHom { source, target, matrix: m }
    }

    /// Builds a hom from images of the canonical source generators given in
    /// canonical target coordinates.
    pub fn from_canonical_matrix(
        source: Arc<PresentedAbelian>,
        target: Arc<PresentedAbelian>,
        canon: &IntMatrix,
    ) -> Result<Self, AbgrpError> {
        // presentation generator g = sum_i c_i(g) * canonical generator i
        let mut m = IntMatrix::zeros(source.generators(), target.generators());
        for g in 0..source.generators() {
            let mut e = vec![0; source.generators()];
            e[g] = 1;
            let c = source.canonical_coords(&e)?;
            let img = vec_mul(&c, canon)?;
            let pres = target.from_canonical(&img)?;
            for (t, v) in pres.into_iter().enumerate() {
                m.set(g, t, v);
            }
        }
        AbelianHom::new(source, target, m)
    }

    pub fn source(&self) -> &Arc<PresentedAbelian> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedAbelian> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of an element given in source presentation coordinates.
    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>, AbgrpError> {
        vec_mul(x, &self.matrix)
    }

    /// Matrix in canonical coordinates: row `i` is the image of canonical
    /// source generator `i` in reduced canonical target coordinates.
    pub fn canonical_matrix(&self) -> Result<IntMatrix, AbgrpError> {
        let a = self.source.canonical().generator_count();
        let b = self.target.canonical().generator_count();
        let mut out = IntMatrix::zeros(a, b);
        for i in 0..a {
            let x = self.source.canonical_generator(i);
            let img = self.target.canonical_coords(&self.apply(&x)?)?;
            for (j, v) in img.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// The same map between the diagonal presentations of source and target.
    pub fn on_canonical(&self) -> Result<AbelianHom, AbgrpError> {
        let s = Arc::new(PresentedAbelian::from_group(self.source.canonical()));
        let t = Arc::new(PresentedAbelian::from_group(self.target.canonical()));
        AbelianHom::new(s, t, self.canonical_matrix()?)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &AbelianHom) -> Result<AbelianHom, AbgrpError> {
        if !same(&self.target, &other.source) {
            return Err(AbgrpError::NotComposable);
        }
        Ok(AbelianHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: self.matrix.checked_mul(&other.matrix)?,
        })
    }

    pub fn is_zero(&self) -> Result<bool, AbgrpError> {
        Ok(self.canonical_matrix()?.is_zero())
    }

    /// Equality as maps (canonical matrices agree).
    pub fn same_map(&self, other: &AbelianHom) -> Result<bool, AbgrpError> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return Ok(false);
        }
        Ok(self.canonical_matrix()? == other.canonical_matrix()?)
    }

    /// Stacked matrix `[F; T]` where `F` is the canonical matrix and `T` the
    /// target's canonical relations. Integer combinations of its rows that
    /// vanish describe elements of the source mapping to zero.
    fn stacked(&self) -> Result<(IntMatrix, usize), AbgrpError> {
        let f = self.canonical_matrix()?;
        let b = f.cols();
        let t = IntMatrix::from_rows(b, &self.target.canonical_relations());
        Ok((f.vstack(&t), f.rows()))
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> Result<(Arc<PresentedAbelian>, AbelianHom), AbgrpError> {
        let (stack, a) = self.stacked()?;
        let ech = row_echelon(&stack)?;
        // project left-kernel vectors onto the source part: preimage lattice of 0
        let gens: Vec<Vec<i64>> = ech.left_kernel().into_iter().map(|v| v[..a].to_vec()).collect();
        let basis = matrix::lattice_basis(a, &gens)?;
        let k = basis.rows();
        // source relations expressed in the kernel basis
        let mut rels = Vec::new();
        for r in self.source.canonical_relations() {
            let c = solve_left(&basis, &r)?.ok_or(AbgrpError::NotInImage)?;
            rels.push(c);
        }
        let kpres = Arc::new(PresentedAbelian::new(k, IntMatrix::from_rows(k, &rels))?);
        let mut incl = IntMatrix::zeros(k, self.source.generators());
        for r in 0..k {
            let pres = self.source.from_canonical(basis.row(r))?;
            for (c, v) in pres.into_iter().enumerate() {
                incl.set(r, c, v);
            }
        }
        let hom = AbelianHom::new(kpres.clone(), self.source.clone(), incl)?;
        Ok((kpres, hom))
    }

    /// Image with its inclusion into the target.
    pub fn image(&self) -> Result<(Arc<PresentedAbelian>, AbelianHom), AbgrpError> {
        let (stack, a) = self.stacked()?;
        let ech = row_echelon(&stack)?;
        let gens: Vec<Vec<i64>> = ech.left_kernel().into_iter().map(|v| v[..a].to_vec()).collect();
        let basis = matrix::lattice_basis(a, &gens)?;
        let ipres = Arc::new(PresentedAbelian::new(a, basis)?);
        let f = self.canonical_matrix()?;
        let mut incl = IntMatrix::zeros(a, self.target.generators());
        for r in 0..a {
            let pres = self.target.from_canonical(f.row(r))?;
            for (c, v) in pres.into_iter().enumerate() {
                incl.set(r, c, v);
            }
        }
        let hom = AbelianHom::new(ipres.clone(), self.target.clone(), incl)?;
        Ok((ipres, hom))
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> Result<(Arc<PresentedAbelian>, AbelianHom), AbgrpError> {
        let f = self.canonical_matrix()?;
        let b = f.cols();
        let mut rels = self.target.canonical_relations();
        rels.extend(f.row_vecs());
        let cpres = Arc::new(PresentedAbelian::new(b, IntMatrix::from_rows(b, &rels))?);
        let n = self.target.generators();
        let mut proj = IntMatrix::zeros(n, b);
        for g in 0..n {
            let mut e = vec![0; n];
            e[g] = 1;
            for (c, v) in self.target.canonical_coords(&e)?.into_iter().enumerate() {
                proj.set(g, c, v);
            }
        }
        let hom = AbelianHom::new(self.target.clone(), cpres.clone(), proj)?;
        Ok((cpres, hom))
    }

    pub fn is_injective(&self) -> Result<bool, AbgrpError> {
        Ok(self.kernel()?.0.canonical().is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool, AbgrpError> {
        Ok(self.cokernel()?.0.canonical().is_trivial())
    }

    /// A preimage of `y` (target presentation coordinates) in source
    /// presentation coordinates, if `y` lies in the image.
    pub fn preimage(&self, y: &[i64]) -> Result<Option<Vec<i64>>, AbgrpError> {
        let (stack, a) = self.stacked()?;
        let yc = self.target.canonical_coords(y)?;
        match solve_left(&stack, &yc)? {
            None => Ok(None),
            Some(x) => Ok(Some(self.source.from_canonical(&x[..a])?)),
        }
    }
}

/// Multiplication by `k` on a group.
pub fn multiplication_hom(p: Arc<PresentedAbelian>, k: i64) -> AbelianHom {
    let n = p.generators();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, k);
    }
    AbelianHom { source: p.clone(), target: p, matrix: m }
}

/// Greatest common divisor with `gcd(0, x) = x`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests;
