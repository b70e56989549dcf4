//! Abelian sections `top / bottom` of a finite group as presented abelian groups.

use super::{FiniteGroup, FingrpError, GroupHom, Subgroup};
use crate::abgrp::{AbelianGroup, AbelianHom, IntMatrix, PresentedAbelian};
use std::sync::Arc;

/// `top / bottom` presented on one generator per coset, with relations
/// `e_c + e_s = e_{cs}` for every coset `c` and every coset `s` in a
/// generating set.
#[derive(Clone, Debug)]
pub struct AbelianSection {
    presentation: Arc<PresentedAbelian>,
    class: Vec<Option<usize>>,
    reps: Vec<usize>,
}

impl AbelianSection {
    pub fn group(&self) -> &AbelianGroup {
        self.presentation.canonical()
    }

    pub fn presentation(&self) -> &Arc<PresentedAbelian> {
        &self.presentation
    }

    /// Coset index of `x`, or `None` when `x` is outside `top`.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.class[x]
    }

    /// Least element of each coset.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Presentation coordinates of `x` (a unit vector).
    pub fn coords(&self, x: usize) -> Option<Vec<i64>> {
        let c = self.class[x]?;
        let mut v = vec![0; self.reps.len()];
        v[c] = 1;
        Some(v)
    }

    /// Map of sections induced by an element map sending `top` into the other `top`.
    pub fn map_to(
        &self,
        other: &AbelianSection,
        f: impl Fn(usize) -> usize,
    ) -> Result<AbelianHom, FingrpError> {
        let mut m = IntMatrix::zeros(self.reps.len(), other.reps.len());
        for (i, &r) in self.reps.iter().enumerate() {
            let y = f(r);
            let c = other.class[y].ok_or_else(|| {
                FingrpError::NotSubgroup(format!("element {y} lies outside the target section"))
            })?;
            m.set(i, c, 1);
        }
        AbelianHom::new(self.presentation.clone(), other.presentation.clone(), m)
            .map_err(|e| FingrpError::NotSubgroup(e.to_string()))
    }
}

/// `top / bottom`; requires `bottom ⊴ top` with abelian quotient.
pub fn abelian_section(
    g: &FiniteGroup,
    top: &Subgroup,
    bottom: &Subgroup,
) -> Result<AbelianSection, FingrpError> {
    if !bottom.is_subset_of(top) {
        return Err(FingrpError::NotSubgroup("bottom is not contained in top".into()));
    }
    for &a in top.elements() {
        for &b in top.elements() {
            if !bottom.contains(g.commutator(a, b)) {
                return Err(FingrpError::NotSubgroup(format!(
                    "section is not abelian: [{a}, {b}] lies outside the bottom subgroup"
                )));
            }
        }
    }
    let mut class = vec![None; g.order()];
    let mut reps = Vec::new();
    for &x in top.elements() {
        if class[x].is_some() {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &b in bottom.elements() {
            class[g.mul(x, b)] = Some(id);
        }
    }
    let k = reps.len();
    // generating set of the section, chosen greedily among coset representatives
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = bottom.clone();
    for &r in &reps {
        if !reached.contains(r) {
            gens.push(r);
            let mut seeds = gens.clone();
            seeds.extend_from_slice(bottom.elements());
            reached = g.subgroup_generated(&seeds);
        }
    }
    let mut rels = Vec::with_capacity(1 + k * gens.len());
    let mut e0 = vec![0; k];
    e0[0] = 1;
    rels.push(e0);
    for (c, &r) in reps.iter().enumerate() {
        for &s in &gens {
            let cs = class[g.mul(r, s)].expect("top is closed");
            let sc = class[s].expect("generator in top");
            let mut row = vec![0i64; k];
            row[c] += 1;
            row[sc] += 1;
            row[cs] -= 1;
            rels.push(row);
        }
    }
    let p = PresentedAbelian::new(k, IntMatrix::from_rows(k, &rels))
        .map_err(|e| FingrpError::NotSubgroup(e.to_string()))?;
    debug_assert_eq!(p.canonical().order(), Some(k as u128));
    Ok(AbelianSection { presentation: Arc::new(p), class, reps })
}

impl FiniteGroup {
    /// `G^ab = G / [G, G]` with the element-to-class map.
    pub fn abelianization(&self) -> AbelianSection {
        abelian_section(self, &self.whole(), &self.derived_subgroup()).expect("G/[G,G] is abelian")
    }
}

/// The map `G^ab → H^ab` induced by `f`.
pub fn induced_abelian_hom(f: &GroupHom) -> AbelianHom {
    let a = f.source().abelianization();
    let b = f.target().abelianization();
    a.map_to(&b, |x| f.apply(x)).expect("homomorphisms respect commutators")
}
