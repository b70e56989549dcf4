//! Finite groups given by Cayley tables.
//!
//! Element `0` is always the identity. Subgroups are sorted index sets with a
//! membership mask, so most routines are plain closure loops over the table.

mod abelian;
mod construct;

pub use abelian::{abelian_section, induced_abelian_hom, AbelianSection};
pub use construct::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric};

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FingrpError {
    #[error("empty table")]
    Empty,
    #[error("table row {0} has the wrong length")]
    Ragged(usize),
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity (fails at element {0})")]
    Identity(usize),
    #[error("row {0} or column {0} repeats an element, so the table is not a Latin square")]
    NotLatin(usize),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is out of range")]
    BadElement(usize),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("unsupported constructor argument: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates the group axioms: identity at index 0, Latin square,
    /// associativity on all triples.
    pub fn new(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, FingrpError> {
        let n = table.len();
        if n == 0 {
            return Err(FingrpError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(FingrpError::Ragged(r));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(FingrpError::OutOfRange { row: r, col: c, value: v });
                }
            }
            flat.extend_from_slice(row);
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(FingrpError::Ragged(n));
            }
        }
        for x in 0..n {
            if flat[x] != x || flat[x * n] != x {
                return Err(FingrpError::Identity(x));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let (a, b) = (flat[i * n + j], flat[j * n + i]);
                if row_seen[a] || col_seen[b] {
                    return Err(FingrpError::NotLatin(i));
                }
                row_seen[a] = true;
                col_seen[b] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(FingrpError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| flat[a * n + b] == 0).expect("latin square");
        }
        Ok(FiniteGroup { order: n, table: flat, inverses, labels })
    }

    pub fn trivial() -> Self {
        FiniteGroup::new(vec![vec![0]], None).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `b⁻¹ a b`
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(b), self.mul(a, b))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// The table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, (0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![0])
    }

    /// Checks that `elements` is a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, FingrpError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= self.order) {
            return Err(FingrpError::BadElement(bad));
        }
        if !set.contains(&0) {
            return Err(FingrpError::NotSubgroup("missing identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(FingrpError::NotSubgroup(format!(
                        "product of {a} and {b} leaves the set"
                    )));
                }
            }
        }
        Ok(Subgroup::from_sorted(self.order, set.into_iter().collect()))
    }

    /// Smallest subgroup containing `seeds`, by breadth-first closure.
    pub fn subgroup_generated(&self, seeds: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut elems = vec![0];
        let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup { elements: elems, mask }
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut gens: BTreeSet<usize> = BTreeSet::new();
        for &s in seeds {
            for g in 0..self.order {
                gens.insert(self.conjugate(s, g));
            }
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        self.subgroup_generated(&gens)
    }

    /// Subgroup generated by all `[x, y]`, `x ∈ a`, `y ∈ b`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = BTreeSet::new();
        for &x in a.elements() {
            for &y in b.elements() {
                gens.insert(self.commutator(x, y));
            }
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        self.subgroup_generated(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_subgroup(&w, &w)
    }

    /// `[γ₁, …, γ_depth]` with `γ₁ = G` and `γ_{k+1} = [γ_k, G]`. Once the
    /// series is stable the remaining entries repeat the stable term.
    pub fn lower_central_series(&self, depth: usize) -> Vec<Subgroup> {
        self.relative_series(&self.whole(), depth)
    }

    /// `[γ₁(G,N), …, γ_depth(G,N)]` with `γ₁(G,N) = N` and
    /// `γ_{k+1}(G,N) = [γ_k(G,N), G]`.
    pub fn relative_series(&self, n: &Subgroup, depth: usize) -> Vec<Subgroup> {
        let w = self.whole();
        let mut out = Vec::with_capacity(depth);
        if depth == 0 {
            return out;
        }
        out.push(n.clone());
        while out.len() < depth {
            let last = out.last().expect("nonempty");
            let next = self.commutator_subgroup(last, &w);
            let stable = &next == last;
            out.push(next);
            if stable {
                let s = out.last().expect("nonempty").clone();
                while out.len() < depth {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn center(&self) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted(self.order, elems)
    }

    /// First element/conjugator pair leaving `s`, if any.
    pub fn normality_witness(&self, s: &Subgroup) -> Option<(usize, usize)> {
        for &x in s.elements() {
            for g in 0..self.order {
                if !s.contains(self.conjugate(x, g)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.normality_witness(s).is_none()
    }

    pub fn is_central(&self, s: &Subgroup) -> bool {
        s.elements()
            .iter()
            .all(|&x| (0..self.order).all(|g| self.mul(x, g) == self.mul(g, x)))
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems = a.elements().iter().copied().filter(|&x| b.contains(x)).collect();
        Subgroup::from_sorted(self.order, elems)
    }

    /// Subgroup generated by `a ∪ b`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = a.elements().to_vec();
        seeds.extend_from_slice(b.elements());
        self.subgroup_generated(&seeds)
    }

    /// Every subgroup, sorted by (order, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclics: BTreeSet<Subgroup> = BTreeSet::new();
        for a in 0..self.order {
            cyclics.insert(self.subgroup_generated(&[a]));
        }
        let cyclics: Vec<Subgroup> = cyclics.into_iter().collect();
        let mut found: BTreeSet<Subgroup> = cyclics.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = cyclics.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclics {
                    if c.elements().iter().all(|&x| h.contains(x)) {
                        continue;
                    }
                    let j = self.join(h, c);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut v: Vec<Subgroup> = found.into_iter().collect();
        v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
        v
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups().into_iter().filter(|s| self.is_normal(s)).collect()
    }

    /// Coset table `G / n` with the canonical projection.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), FingrpError> {
        if let Some((element, by)) = self.normality_witness(n) {
            return Err(FingrpError::NotNormal { element, by });
        }
        let (class, reps) = self.cosets(n);
        let k = reps.len();
        let mut table = vec![vec![0; k]; k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i][j] = class[self.mul(a, b)];
            }
        }
        let labels = self.labels.as_ref().map(|l| reps.iter().map(|&r| format!("{}N", l[r])).collect());
        let q = Arc::new(FiniteGroup::new(table, labels)?);
        let hom = GroupHom::new(self.clone(), q.clone(), class)?;
        Ok((q, hom))
    }

    /// Left cosets `x n` of a normal subgroup: class index per element, and the
    /// least element of each class in order of first appearance (class of 0 first).
    pub fn cosets(&self, n: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut class = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if class[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &m in n.elements() {
                class[self.mul(x, m)] = id;
            }
        }
        (class, reps)
    }

    /// The subgroup as a group in its own right, with the inclusion hom.
    pub fn subgroup_as_group(self: &Arc<Self>, s: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), FingrpError> {
        let idx: Vec<usize> = s.elements().to_vec();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in idx.iter().enumerate() {
            pos[x] = i;
        }
        let table: Vec<Vec<usize>> = idx
            .iter()
            .map(|&a| idx.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        let labels = self.labels.as_ref().map(|l| idx.iter().map(|&x| l[x].clone()).collect());
        let h = Arc::new(FiniteGroup::new(table, labels)?);
        let incl = GroupHom::new(h.clone(), self.clone(), idx)?;
        Ok((h, incl))
    }

    /// A subgroup `Q` with `Q ∩ N = 1` and `QN = G`. Subgroups generated by at
    /// most three elements are tried first in index order, then the whole
    /// subgroup lattice.
    pub fn find_complement(&self, n: &Subgroup) -> Option<Subgroup> {
        if !self.order.is_multiple_of(n.order()) {
            return None;
        }
        let target = self.order / n.order();
        let is_complement = |q: &Subgroup| {
            q.order() == target && q.elements().iter().all(|&x| x == 0 || !n.contains(x))
        };
        if target == 1 {
            return Some(self.trivial_subgroup());
        }
        // only elements outside N can generate a complement
        let cands: Vec<usize> = (1..self.order)
            .filter(|&x| !n.contains(x) && target.is_multiple_of(self.element_order(x)))
            .collect();
        for &a in &cands {
            let q = self.subgroup_generated(&[a]);
            if is_complement(&q) {
                return Some(q);
            }
        }
        for (i, &a) in cands.iter().enumerate() {
            for &b in &cands[i + 1..] {
                let q = self.subgroup_generated(&[a, b]);
                if is_complement(&q) {
                    return Some(q);
                }
            }
        }
        for (i, &a) in cands.iter().enumerate() {
            for (j, &b) in cands.iter().enumerate().skip(i + 1) {
                for &c in &cands[j + 1..] {
                    let q = self.subgroup_generated(&[a, b, c]);
                    if is_complement(&q) {
                        return Some(q);
                    }
                }
            }
        }
        self.all_subgroups().into_iter().find(|q| is_complement(q))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        // prefer elements of large order so cyclic groups get one generator
        let mut elems: Vec<usize> = s.elements().to_vec();
        elems.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in elems {
            if cur.order() == s.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.subgroup_generated(&gens);
            }
        }
        gens
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_sorted(parent_order: usize, elements: Vec<usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for &x in &elements {
            mask[x] = true;
        }
        Subgroup { elements, mask }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Order of the group this is a subgroup of.
    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

/// A homomorphism given by its value on every element.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, FingrpError> {
        if map.len() != source.order() {
            return Err(FingrpError::Ragged(map.len()));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(FingrpError::BadElement(bad));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(FingrpError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = (0..g.order()).collect();
        GroupHom { source: g.clone(), target: g, map }
    }

    /// Sends everything to the identity.
    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let map = vec![0; source.order()];
        GroupHom { source, target, map }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &GroupHom) -> Option<GroupHom> {
        if self.target != other.source {
            return None;
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Some(GroupHom { source: self.source.clone(), target: other.target.clone(), map })
    }

    pub fn kernel(&self) -> Subgroup {
        let elems = (0..self.source.order()).filter(|&x| self.map[x] == 0).collect();
        Subgroup::from_sorted(self.source.order(), elems)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// A group with a distinguished normal subgroup.
#[derive(Clone, Debug)]
pub struct PairOfGroups {
    group: Arc<FiniteGroup>,
    normal: Subgroup,
}

impl PairOfGroups {
    pub fn new(group: Arc<FiniteGroup>, normal: Subgroup) -> Result<Self, FingrpError> {
        if normal.parent_order() != group.order() {
            return Err(FingrpError::NotSubgroup("subgroup of a different group".into()));
        }
        if let Some((element, by)) = group.normality_witness(&normal) {
            return Err(FingrpError::NotNormal { element, by });
        }
        Ok(PairOfGroups { group, normal })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn quotient(&self) -> (Arc<FiniteGroup>, GroupHom) {
        self.group.quotient(&self.normal).expect("normal by construction")
    }

    pub fn relative_series(&self, depth: usize) -> Vec<Subgroup> {
        self.group.relative_series(&self.normal, depth)
    }

    pub fn find_complement(&self) -> Option<Subgroup> {
        self.group.find_complement(&self.normal)
    }
}
