//! Free nilpotent groups of small rank and class.
//!
//! `F / γ_{c+1}(F)` is realised inside the truncated power series ring
//! `Z⟨X_1, …, X_r⟩ / (degree > c)` by `x_i ↦ 1 + X_i`; this embedding is
//! faithful. Normal forms over the basic-commutator basis are read off layer
//! by layer: the lowest nonvanishing homogeneous part of an element of `γ_w`
//! is an integer combination of the Lie polynomials of the weight-`w` basic
//! commutators.

mod baer;
mod word;

pub use baer::{baer_section, PresentationWithSubgroup};
pub use word::Word;

use crate::abgrp::matrix::{row_echelon, solve_with_echelon, Echelon};
use crate::abgrp::{AbgrpError, IntMatrix};
use std::fmt;
use thiserror::Error;

pub const MAX_RANK: usize = 3;
pub const MAX_CLASS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilfreeError {
    #[error("rank {rank} and class {class} exceed the supported range (rank ≤ 3, class ≤ 3)")]
    Bounds { rank: usize, class: usize },
    #[error("cannot parse '{input}' at position {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("word uses generator x{used} but the rank is {rank}")]
    Generator { used: usize, rank: usize },
    #[error("outside the supported scope: {0}")]
    Scope(String),
    #[error("coefficient overflow")]
    Overflow,
}

impl From<AbgrpError> for NilfreeError {
    fn from(_: AbgrpError) -> Self {
        NilfreeError::Overflow
    }
}

/// Element of `Z⟨X⟩` truncated above degree `class`; monomials of degree `d`
/// are indexed in base `rank` after an offset for lower degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series {
    coeffs: Vec<i64>,
}

#[derive(Clone, Debug)]
struct Layout {
    rank: usize,
    class: usize,
    offsets: Vec<usize>,
    sizes: Vec<usize>,
}

impl Layout {
    fn new(rank: usize, class: usize) -> Self {
        let mut offsets = Vec::new();
        let mut sizes = Vec::new();
        let mut off = 0;
        for d in 0..=class {
            let n = rank.pow(d as u32);
            offsets.push(off);
            sizes.push(n);
            off += n;
        }
        Layout { rank, class, offsets, sizes }
    }

    fn len(&self) -> usize {
        self.offsets[self.class] + self.sizes[self.class]
    }

    fn one(&self) -> Series {
        let mut coeffs = vec![0; self.len()];
        coeffs[0] = 1;
        Series { coeffs }
    }

    /// `1 + X_i`
    fn generator(&self, i: usize) -> Series {
        let mut s = self.one();
        if self.class >= 1 {
            s.coeffs[self.offsets[1] + i] = 1;
        }
        s
    }

    fn mul(&self, a: &Series, b: &Series) -> Result<Series, NilfreeError> {
        let mut out = vec![0i64; self.len()];
        for da in 0..=self.class {
            for ia in 0..self.sizes[da] {
                let ca = a.coeffs[self.offsets[da] + ia];
                if ca == 0 {
                    continue;
                }
                for db in 0..=self.class - da {
                    let shift = self.sizes[db];
                    for ib in 0..shift {
                        let cb = b.coeffs[self.offsets[db] + ib];
                        if cb == 0 {
                            continue;
                        }
                        let idx = self.offsets[da + db] + ia * shift + ib;
                        let p = ca.checked_mul(cb).ok_or(NilfreeError::Overflow)?;
                        out[idx] = out[idx].checked_add(p).ok_or(NilfreeError::Overflow)?;
                    }
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    /// `(1 + t)⁻¹ = Σ (-t)^k`, the sum being finite under truncation.
    fn inverse(&self, a: &Series) -> Result<Series, NilfreeError> {
        debug_assert_eq!(a.coeffs[0], 1);
        let mut neg_t = a.clone();
        neg_t.coeffs[0] = 0;
        for c in neg_t.coeffs.iter_mut() {
            *c = -*c;
        }
        let mut acc = self.one();
        let mut term = self.one();
        for _ in 0..self.class {
            term = self.mul(&term, &neg_t)?;
            for (x, y) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *x = x.checked_add(*y).ok_or(NilfreeError::Overflow)?;
            }
        }
        Ok(acc)
    }

    fn pow(&self, a: &Series, e: i64) -> Result<Series, NilfreeError> {
        let base = if e < 0 { self.inverse(a)? } else { a.clone() };
        let mut acc = self.one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    fn commutator(&self, a: &Series, b: &Series) -> Result<Series, NilfreeError> {
        let ai = self.inverse(a)?;
        let bi = self.inverse(b)?;
        let x = self.mul(&ai, &bi)?;
        let y = self.mul(&x, a)?;
        self.mul(&y, b)
    }

    fn degree_part<'s>(&self, s: &'s Series, d: usize) -> &'s [i64] {
        &s.coeffs[self.offsets[d]..self.offsets[d] + self.sizes[d]]
    }
}

/// A basic commutator: a generator or `[u, v]` of two earlier basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicCommutator {
    Generator(usize),
    Bracket(usize, usize),
}

/// Hall-ordered basic commutators of weight ≤ class, with the data needed to
/// collect words into normal form.
#[derive(Clone, Debug)]
pub struct CommutatorBasis {
    layout: Layout,
    elements: Vec<BasicCommutator>,
    weights: Vec<usize>,
    series: Vec<Series>,
    /// Per weight: index range of the layer and the echelon form of the
    /// matrix whose rows are the layer's Lie polynomials.
    layers: Vec<(std::ops::Range<usize>, Echelon)>,
}

impl CommutatorBasis {
    pub fn rank(&self) -> usize {
        self.layout.rank
    }

    pub fn class(&self) -> usize {
        self.layout.class
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elements
    }

    pub fn weight(&self, k: usize) -> usize {
        self.weights[k]
    }

    /// Number of basis elements of each weight `1..=class`.
    pub fn layer_counts(&self) -> Vec<usize> {
        self.layers.iter().map(|(r, _)| r.len()).collect()
    }

    /// Index range of the weight-`w` layer.
    pub fn layer(&self, w: usize) -> std::ops::Range<usize> {
        self.layers[w - 1].0.clone()
    }

    /// Human-readable form, e.g. `[[x2, x1], x1]`.
    pub fn name(&self, k: usize) -> String {
        match self.elements[k] {
            BasicCommutator::Generator(i) => format!("x{}", i + 1),
            BasicCommutator::Bracket(u, v) => format!("[{}, {}]", self.name(u), self.name(v)),
        }
    }

    /// The basis element as a word.
    pub fn word(&self, k: usize) -> Word {
        match self.elements[k] {
            BasicCommutator::Generator(i) => Word::generator(i),
            BasicCommutator::Bracket(u, v) => Word::commutator(&self.word(u), &self.word(v)),
        }
    }

    pub fn identity(&self) -> NilElement {
        NilElement { exps: vec![0; self.len()] }
    }

    fn word_series(&self, w: &Word) -> Result<Series, NilfreeError> {
        if w.rank_used() > self.rank() {
            return Err(NilfreeError::Generator { used: w.rank_used(), rank: self.rank() });
        }
        let gens: Vec<Series> = (0..self.rank()).map(|i| self.layout.generator(i)).collect();
        let invs: Vec<Series> = gens.iter().map(|g| self.layout.inverse(g)).collect::<Result<_, _>>()?;
        let mut acc = self.layout.one();
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let f = if l > 0 { &gens[i] } else { &invs[i] };
            acc = self.layout.mul(&acc, f)?;
        }
        Ok(acc)
    }

    fn element_series(&self, e: &NilElement) -> Result<Series, NilfreeError> {
        let mut acc = self.layout.one();
        for (k, &x) in e.exps.iter().enumerate() {
            if x != 0 {
                acc = self.layout.mul(&acc, &self.layout.pow(&self.series[k], x)?)?;
            }
        }
        Ok(acc)
    }

    fn normal_form(&self, s: &Series) -> Result<NilElement, NilfreeError> {
        let mut h = s.clone();
        let mut exps = vec![0i64; self.len()];
        for (w, (range, ech)) in self.layers.iter().enumerate() {
            let w = w + 1;
            for d in 1..w {
                debug_assert!(self.layout.degree_part(&h, d).iter().all(|&v| v == 0));
            }
            let part = self.layout.degree_part(&h, w).to_vec();
            if part.iter().all(|&v| v == 0) {
                continue;
            }
            let sol = solve_with_echelon(ech, &part)?
                .expect("Lie polynomials of basic commutators span each layer");
            let mut layer = self.layout.one();
            for (j, k) in range.clone().enumerate() {
                exps[k] = sol[j];
                if sol[j] != 0 {
                    layer = self.layout.mul(&layer, &self.layout.pow(&self.series[k], sol[j])?)?;
                }
            }
            h = self.layout.mul(&self.layout.inverse(&layer)?, &h)?;
        }
        debug_assert_eq!(h, self.layout.one());
        Ok(NilElement { exps })
    }

    /// Normal form of a word in `F / γ_{class+1}(F)`.
    pub fn collect(&self, w: &Word) -> Result<NilElement, NilfreeError> {
        self.normal_form(&self.word_series(w)?)
    }

    pub fn multiply(&self, a: &NilElement, b: &NilElement) -> Result<NilElement, NilfreeError> {
        let s = self.layout.mul(&self.element_series(a)?, &self.element_series(b)?)?;
        self.normal_form(&s)
    }

    pub fn inverse(&self, a: &NilElement) -> Result<NilElement, NilfreeError> {
        self.normal_form(&self.layout.inverse(&self.element_series(a)?)?)
    }
}

/// Exponent vector over a [`CommutatorBasis`]: the element
/// `b_1^{e_1} b_2^{e_2} ⋯` in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilElement {
    exps: Vec<i64>,
}

impl NilElement {
    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Basic commutators of weight ≤ `class` on `rank` generators.
///
/// Weight 1 is `x_1 < x_2 < …`. A bracket `[u, v]` is basic when `u > v` and,
/// if `u = [u1, u2]`, also `u2 ≤ v`. Within a weight, elements are ordered by
/// the indices of `u` and then `v`.
pub fn basic_commutator_basis(rank: usize, class: usize) -> Result<CommutatorBasis, NilfreeError> {
    if rank > MAX_RANK || class > MAX_CLASS || class == 0 {
        return Err(NilfreeError::Bounds { rank, class });
    }
    let layout = Layout::new(rank, class);
    let mut elements: Vec<BasicCommutator> = (0..rank).map(BasicCommutator::Generator).collect();
    let mut weights = vec![1; rank];
    for w in 2..=class {
        let mut layer = Vec::new();
        for u in 0..elements.len() {
            for v in 0..elements.len() {
                if weights[u] + weights[v] != w || u <= v {
                    continue;
                }
                if let BasicCommutator::Bracket(_, u2) = elements[u] {
                    if u2 > v {
                        continue;
                    }
                }
                layer.push(BasicCommutator::Bracket(u, v));
            }
        }
        layer.sort_by_key(|b| match *b {
            BasicCommutator::Bracket(u, v) => (u, v),
            BasicCommutator::Generator(i) => (i, 0),
        });
        weights.extend(std::iter::repeat_n(w, layer.len()));
        elements.extend(layer);
    }
    let mut series: Vec<Series> = Vec::with_capacity(elements.len());
    for b in &elements {
        let s = match *b {
            BasicCommutator::Generator(i) => layout.generator(i),
            BasicCommutator::Bracket(u, v) => layout.commutator(&series[u], &series[v])?,
        };
        series.push(s);
    }
    let mut layers = Vec::new();
    let mut start = 0;
    for w in 1..=class {
        let end = start + weights[start..].iter().take_while(|&&x| x == w).count();
        let rows: Vec<Vec<i64>> = (start..end).map(|k| layout.degree_part(&series[k], w).to_vec()).collect();
        let m = IntMatrix::from_rows(layout.sizes[w], &rows);
        let ech = row_echelon(&m)?;
        debug_assert_eq!(ech.rank(), end - start, "Lie polynomials are independent");
        layers.push((start..end, ech));
        start = end;
    }
    Ok(CommutatorBasis { layout, elements, weights, series, layers })
}

/// Necklace count `(1/n) Σ_{d | n} μ(d) r^{n/d}` of basic commutators of weight `n`.
pub fn witt_count(rank: usize, n: usize) -> usize {
    fn mobius(mut d: usize) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= d {
            if d.is_multiple_of(p) {
                d /= p;
                if d.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if d > 1 {
            result = -result;
        }
        result
    }
    let total: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (rank as i64).pow((n / d) as u32))
        .sum();
    (total / n as i64) as usize
}
