//! Exactness checks for finite sequences of abelian group homomorphisms.
//!
//! A sequence `A_0 -f_1-> A_1 -f_2-> … -f_k-> A_k` is stored as its maps.
//! Positions are the interior objects `A_1 … A_{k-1}`; `exact_at(i)` compares
//! `im f_i` with `ker f_{i+1}` as subgroups of `A_i`. Witnesses are elements
//! of `A_i` in canonical coordinates.

use crate::abgrp::{AbelianHom, AbgrpError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("map {position} does not end where map {} starts", position + 1)]
    NotComposable { position: usize },
    #[error("position {position} is not interior to a sequence of {len} maps")]
    Position { position: usize, len: usize },
    #[error("{labels} labels for {objects} objects")]
    Labels { labels: usize, objects: usize },
    #[error(transparent)]
    Arithmetic(#[from] AbgrpError),
}

/// Outcome of a check with a concrete counterexample on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed {
    pub holds: bool,
    /// Interior position of the first failure.
    pub position: Option<usize>,
    /// Offending element in canonical coordinates of `A_position`.
    pub element: Option<Vec<i64>>,
    pub note: Option<String>,
}

impl Witnessed {
    fn ok() -> Self {
        Witnessed { holds: true, position: None, element: None, note: None }
    }

    fn fail(position: usize, element: Vec<i64>, note: &str) -> Self {
        Witnessed { holds: false, position: Some(position), element: Some(element), note: Some(note.into()) }
    }
}

#[derive(Clone, Debug)]
pub struct AbelianSequence {
    maps: Vec<AbelianHom>,
    labels: Vec<String>,
}

impl AbelianSequence {
    pub fn new(maps: Vec<AbelianHom>) -> Result<Self, SeqError> {
        for (i, w) in maps.windows(2).enumerate() {
            if **w[0].target() != **w[1].source() {
                return Err(SeqError::NotComposable { position: i + 1 });
            }
        }
        let labels = (0..=maps.len()).map(|i| format!("A{i}")).collect();
        Ok(AbelianSequence { maps, labels })
    }

    /// Names for the objects `A_0 … A_k`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SeqError> {
        if labels.len() != self.maps.len() + 1 {
            return Err(SeqError::Labels { labels: labels.len(), objects: self.maps.len() + 1 });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn maps(&self) -> &[AbelianHom] {
        &self.maps
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Every composite `f_{i+1} ∘ f_i` vanishes. The witness is `f_i(e)` for
    /// the first canonical generator `e` of `A_{i-1}` whose image under the
    /// composite is nonzero.
    pub fn is_complex(&self) -> Result<Witnessed, SeqError> {
        for i in 1..self.maps.len() {
            if let Some(x) = self.composite_violation(i)? {
                return Ok(Witnessed::fail(i, x, "composite is nonzero"));
            }
        }
        Ok(Witnessed::ok())
    }

    fn composite_violation(&self, i: usize) -> Result<Option<Vec<i64>>, SeqError> {
        let (f, g) = (&self.maps[i - 1], &self.maps[i]);
        let mid = f.target();
        for k in 0..f.source().canonical().generator_count() {
            let e = f.source().canonical_generator(k);
            let y = f.apply(&e)?;
            if !g.target().is_zero_element(&g.apply(&y)?)? {
                return Ok(Some(mid.canonical_coords(&y)?));
            }
        }
        Ok(None)
    }

    /// `im f_i = ker f_{i+1}` by double inclusion, for `1 ≤ i ≤ k - 1`.
    pub fn exact_at(&self, i: usize) -> Result<Witnessed, SeqError> {
        if i == 0 || i >= self.maps.len() {
            return Err(SeqError::Position { position: i, len: self.maps.len() });
        }
        if let Some(x) = self.composite_violation(i)? {
            return Ok(Witnessed::fail(i, x, "image not contained in kernel"));
        }
        let (f, g) = (&self.maps[i - 1], &self.maps[i]);
        let (kpres, incl) = g.kernel()?;
        for k in 0..kpres.canonical().generator_count() {
            let y = incl.apply(&kpres.canonical_generator(k))?;
            if f.preimage(&y)?.is_none() {
                return Ok(Witnessed::fail(i, f.target().canonical_coords(&y)?, "kernel not contained in image"));
            }
        }
        Ok(Witnessed::ok())
    }

    /// Exactness at every interior position; stops at the first failure.
    pub fn is_exact(&self) -> Result<Witnessed, SeqError> {
        for i in 1..self.maps.len() {
            let w = self.exact_at(i)?;
            if !w.holds {
                return Ok(w);
            }
        }
        Ok(Witnessed::ok())
    }

    /// For a sequence with all objects finite: the alternating product of
    /// orders `∏ |A_i|^{(-1)^i}` computed through kernels and images equals
    /// the one computed from the objects, i.e. `|A_i| = |ker f_{i+1}|·|im f_{i+1}|`
    /// at every object, plus `|ker f_1|` and `|coker f_k|` at the ends.
    /// Returns `None` when some object is infinite.
    pub fn order_bookkeeping(&self) -> Result<Option<OrderBook>, SeqError> {
        let mut objects = Vec::with_capacity(self.maps.len() + 1);
        if let Some(f) = self.maps.first() {
            objects.push(f.source().canonical().order());
        }
        for f in &self.maps {
            objects.push(f.target().canonical().order());
        }
        let Some(objects) = objects.into_iter().collect::<Option<Vec<u128>>>() else {
            return Ok(None);
        };
        let mut kernels = Vec::new();
        let mut images = Vec::new();
        for f in &self.maps {
            kernels.push(f.kernel()?.0.canonical().order().expect("finite"));
            images.push(f.image()?.0.canonical().order().expect("finite"));
        }
        Ok(Some(OrderBook { objects, kernels, images }))
    }
}

/// Orders of objects, kernels and images along a finite sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBook {
    pub objects: Vec<u128>,
    pub kernels: Vec<u128>,
    pub images: Vec<u128>,
}

impl OrderBook {
    /// First isomorphism theorem at every map.
    pub fn consistent(&self) -> bool {
        (0..self.kernels.len()).all(|i| self.kernels[i] * self.images[i] == self.objects[i])
    }

    /// When the sequence is exact with trivial end objects, the alternating
    /// product of object orders is 1.
    pub fn telescopes(&self) -> bool {
        let (mut even, mut odd) = (1u128, 1u128);
        for (i, &o) in self.objects.iter().enumerate() {
            if i % 2 == 0 {
                even *= o;
            } else {
                odd *= o;
            }
        }
        even == odd
    }
}

/// `coker f ≅ ker g` as abstract groups.
pub fn coker_ker_compare(f: &AbelianHom, g: &AbelianHom) -> Result<bool, SeqError> {
    let c = f.cokernel()?.0;
    let k = g.kernel()?.0;
    Ok(c.canonical() == k.canonical())
}
