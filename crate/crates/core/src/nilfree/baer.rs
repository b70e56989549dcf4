//! The section `(R ∩ [S, cF]) / [R, cF]` for a free presentation `G = F/R`
//! and `N = S/R`, with `[S, cF] = [S, F, …, F]` (`c` brackets).
//!
//! Supported when `F/R` is abelian (every `[x_i, x_j]` is a relator) and
//! finite. Then `γ_{c+2}(F) = [γ_2 F, cF] ⊆ [R, cF]` and `[S, cF] ⊆ γ_{c+1} F ⊆ R`,
//! so the section equals the image of `[S, cF]` in the free abelian layer
//! `γ_{c+1}/γ_{c+2}` modulo the image of `[R, cF]`. Both images are spanned
//! by `[s, x_{i_1}, …, x_{i_c}]` over normal generators `s`, which makes the
//! computation one lattice quotient.

use super::{basic_commutator_basis, NilfreeError, Word, MAX_RANK};
use crate::abgrp::matrix::{lattice_basis, solve_left};
use crate::abgrp::{AbelianGroup, IntMatrix, PresentedAbelian};

/// A free presentation `⟨x_1, …, x_rank | relators⟩` together with words
/// generating `S` modulo `R`. The relators are always adjoined to `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationWithSubgroup {
    rank: usize,
    relators: Vec<Word>,
    subgroup: Vec<Word>,
}

impl PresentationWithSubgroup {
    pub fn new(rank: usize, relators: Vec<Word>, subgroup: Vec<Word>) -> Result<Self, NilfreeError> {
        if rank > MAX_RANK {
            return Err(NilfreeError::Bounds { rank, class: 0 });
        }
        for w in relators.iter().chain(&subgroup) {
            if w.rank_used() > rank {
                return Err(NilfreeError::Generator { used: w.rank_used(), rank });
            }
        }
        let mut s: Vec<Word> = subgroup.into_iter().filter(|w| !w.is_empty()).collect();
        for r in &relators {
            if !s.contains(r) {
                s.push(r.clone());
            }
        }
        let relators = relators.into_iter().filter(|w| !w.is_empty()).collect();
        Ok(PresentationWithSubgroup { rank, relators, subgroup: s })
    }

    /// Parses words in the mini-grammar.
    pub fn parse(rank: usize, relators: &[&str], subgroup: &[&str]) -> Result<Self, NilfreeError> {
        let r = relators.iter().map(|s| Word::parse(s)).collect::<Result<_, _>>()?;
        let s = subgroup.iter().map(|s| Word::parse(s)).collect::<Result<_, _>>()?;
        Self::new(rank, r, s)
    }

    /// Same presentation with `S = F`.
    pub fn with_full_subgroup(&self) -> Self {
        let gens = (0..self.rank).map(Word::generator).collect();
        Self::new(self.rank, self.relators.clone(), gens).expect("same rank")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup
    }

    /// `F/R` when it is abelian: the exponent-sum relation matrix reduced.
    pub fn abelianized(&self) -> AbelianGroup {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|w| w.exponent_sums(self.rank)).collect();
        PresentedAbelian::new(self.rank, IntMatrix::from_rows(self.rank, &rows))
            .expect("small exponent sums")
            .canonical()
            .clone()
    }

    /// Every `[x_i, x_j]` (or its inverse) occurs literally among the relators.
    fn relators_force_abelian(&self) -> bool {
        (0..self.rank).all(|i| {
            (i + 1..self.rank).all(|j| {
                let c = Word::commutator(&Word::generator(i), &Word::generator(j));
                let ci = c.inverse();
                let d = Word::commutator(&Word::generator(j), &Word::generator(i));
                self.relators.iter().any(|r| *r == c || *r == ci || *r == d)
            })
        })
    }
}

/// `(R ∩ [S, cF]) / [R, cF]` for `c ∈ {1, 2}`.
///
/// Scope: `F/R` finite abelian with all generator commutators among the
/// relators; rank ≤ 3 at `c = 1` and rank ≤ 2 at `c = 2`. Anything else is
/// reported as [`NilfreeError::Scope`].
pub fn baer_section(p: &PresentationWithSubgroup, c: usize) -> Result<AbelianGroup, NilfreeError> {
    match c {
        1 if p.rank <= 3 => {}
        2 if p.rank <= 2 => {}
        1 | 2 => return Err(NilfreeError::Scope(format!("rank {} is too large for c = {c}", p.rank))),
        _ => return Err(NilfreeError::Scope(format!("c = {c} is not supported"))),
    }
    if p.rank == 0 {
        return Ok(AbelianGroup::trivial());
    }
    if !p.relators_force_abelian() {
        return Err(NilfreeError::Scope(
            "every commutator [x_i, x_j] must appear among the relators".into(),
        ));
    }
    if !p.abelianized().is_finite() {
        return Err(NilfreeError::Scope("the presented group is infinite".into()));
    }
    let basis = basic_commutator_basis(p.rank, c + 1)?;
    let top = basis.layer(c + 1);
    let width = top.len();
    let tuples: Vec<Vec<usize>> = (0..p.rank.pow(c as u32))
        .map(|mut t| {
            let mut v = vec![0; c];
            for k in (0..c).rev() {
                v[k] = t % p.rank;
                t /= p.rank;
            }
            v
        })
        .collect();
    let image = |words: &[Word]| -> Result<Vec<Vec<i64>>, NilfreeError> {
        let mut rows = Vec::new();
        for s in words {
            for t in &tuples {
                let mut w = s.clone();
                for &i in t {
                    w = Word::commutator(&w, &Word::generator(i));
                }
                let e = basis.collect(&w)?;
                debug_assert!(e.exponents()[..top.start].iter().all(|&x| x == 0));
                let row = e.exponents()[top.clone()].to_vec();
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        Ok(rows)
    };
    let numer = lattice_basis(width, &image(&p.subgroup)?)?;
    let denom = image(&p.relators)?;
    let k = numer.rows();
    let mut rels = Vec::with_capacity(denom.len());
    for r in &denom {
        let coeffs = solve_left(&numer, r)?.expect("[R, cF] lies inside [S, cF]");
        rels.push(coeffs);
    }
    let q = PresentedAbelian::new(k, IntMatrix::from_rows(k, &rels))?;
    Ok(q.canonical().clone())
}
