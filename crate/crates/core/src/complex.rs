//! Cochain complexes indexed by subsets of a generator list.
//!
//! Both the Čech complex of a pattern module with respect to monomial
//! generators and `Hom(Taylor complex, M)` evaluated at one degree have the
//! same shape: the term for a generator subset `T` is a piece of `M` at a
//! pattern determined by the union support `U_T`, and the differential from
//! `T` to `T ∪ {i}` is a signed transition map. They differ only in how the
//! pattern shrinks:
//!
//! * Čech at pattern `N`: `N \ U_T` (localization kills negativity on `U_T`);
//! * Taylor-Hom at degree `a`: `neg(a) \ (U_T ∩ {j : a_j = -1})`.
//!
//! [`SubsetComplex`] covers both with a base pattern and a shrinkable set.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::combinatorics::VarSet;
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{self, Cohomology, Matrix};
use crate::pattern::PatternModule;

pub const MAX_GENERATORS: usize = 20;

/// A generator list with the union support of every subset and the subsets
/// of each size in lexicographic order.
#[derive(Clone, Debug)]
pub struct GeneratorSystem {
    gens: Vec<VarSet>,
    unions: Vec<VarSet>,
    by_size: Vec<Vec<u32>>,
}

impl GeneratorSystem {
    pub fn new(gens: &[VarSet]) -> Result<Self, Error> {
        let k = gens.len();
        if k > MAX_GENERATORS {
            return Err(Error::TooManyGenerators { count: k, max: MAX_GENERATORS });
        }
        let mut unions = alloc::vec![VarSet::EMPTY; 1 << k];
        for mask in 1..(1u32 << k) {
            let low = mask.trailing_zeros() as usize;
            unions[mask as usize] = unions[(mask & (mask - 1)) as usize].union(gens[low]);
        }
        let by_size = (0..=k).map(|t| lex_subsets(k, t)).collect();
        Ok(GeneratorSystem { gens: gens.to_vec(), unions, by_size })
    }

    pub fn generators(&self) -> &[VarSet] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn union(&self, subset: u32) -> VarSet {
        self.unions[subset as usize]
    }

    /// Subsets of size `t`, lexicographic in their sorted element lists.
    pub fn subsets_of_size(&self, t: usize) -> &[u32] {
        self.by_size.get(t).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// `t`-subsets of `{0..k-1}` as bitmasks, in lexicographic order.
fn lex_subsets(k: usize, t: usize) -> Vec<u32> {
    fn rec(k: usize, t: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
        if t == 0 {
            out.push(acc);
            return;
        }
        for i in start..=k - t {
            rec(k, t - 1, i + 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if t <= k {
        rec(k, t, 0, 0, &mut out);
    }
    out
}

/// `(-1)^{#{s ∈ T : s < i}}`
pub fn insertion_sign(subset: u32, i: usize) -> bool {
    (subset & ((1u32 << i) - 1)).count_ones() % 2 == 1
}

#[derive(Clone, Debug)]
pub struct Block {
    pub subset: u32,
    pub pattern: VarSet,
    pub offset: usize,
    pub dim: usize,
}

/// One term of a [`SubsetComplex`]: the nonzero blocks in lexicographic
/// subset order.
#[derive(Clone, Debug, Default)]
pub struct Slot {
    pub blocks: Vec<Block>,
    pub dim: usize,
    lookup: Vec<(u32, usize)>,
}

impl Slot {
    pub fn block(&self, subset: u32) -> Option<&Block> {
        self.lookup
            .binary_search_by_key(&subset, |&(s, _)| s)
            .ok()
            .map(|k| &self.blocks[self.lookup[k].1])
    }
}

pub struct SubsetComplex<'a, F: Field> {
    system: &'a GeneratorSystem,
    module: &'a PatternModule<F>,
    base: VarSet,
    shrinkable: VarSet,
}

impl<'a, F: Field> SubsetComplex<'a, F> {
    pub fn new(
        system: &'a GeneratorSystem,
        module: &'a PatternModule<F>,
        base: VarSet,
        shrinkable: VarSet,
    ) -> Self {
        SubsetComplex { system, module, base, shrinkable }
    }

    /// The Čech complex of `module` at pattern `base`.
    pub fn cech(system: &'a GeneratorSystem, module: &'a PatternModule<F>, base: VarSet) -> Self {
        Self::new(system, module, base, base)
    }

    pub fn pattern_of(&self, subset: u32) -> VarSet {
        self.base.minus(self.system.union(subset).intersection(self.shrinkable))
    }

    pub fn top(&self) -> usize {
        self.system.len()
    }

    pub fn slot(&self, t: isize) -> Slot {
        if t < 0 {
            return Slot::default();
        }
        let mut slot = Slot::default();
        for &subset in self.system.subsets_of_size(t as usize) {
            let pattern = self.pattern_of(subset);
            let dim = self.module.dim(pattern);
            if dim == 0 {
                continue;
            }
            slot.lookup.push((subset, slot.blocks.len()));
            slot.blocks.push(Block { subset, pattern, offset: slot.dim, dim });
            slot.dim += dim;
        }
        slot.lookup.sort_unstable();
        slot
    }

    /// Differential between consecutive slots, `target.dim x source.dim`.
    pub fn differential(
        &self,
        source: &Slot,
        target: &Slot,
        cache: &mut TransitionCache<F>,
    ) -> Matrix<F::Elem> {
        let field = self.module.field();
        let mut d = Matrix::zeros(field, target.dim, source.dim);
        let k = self.system.len();
        for block in &source.blocks {
            for i in 0..k {
                if block.subset >> i & 1 == 1 {
                    continue;
                }
                let Some(tb) = target.block(block.subset | 1 << i) else {
                    continue;
                };
                let map = cache.get(self.module, block.pattern, tb.pattern);
                if insertion_sign(block.subset, i) {
                    d.put_block(tb.offset, block.offset, &linalg::scale(field, map, &field.from_i64(-1)));
                } else {
                    d.put_block(tb.offset, block.offset, map);
                }
            }
        }
        d
    }

    /// Cohomology dimensions at every slot `0..=top`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let field = self.module.field();
        let mut cache = TransitionCache::default();
        let top = self.top() as isize;
        let slots: Vec<Slot> = (0..=top + 1).map(|t| self.slot(t)).collect();
        let ranks: Vec<usize> = (0..=top as usize)
            .map(|t| {
                if slots[t].dim == 0 || slots[t + 1].dim == 0 {
                    0
                } else {
                    linalg::rank(field, &self.differential(&slots[t], &slots[t + 1], &mut cache))
                }
            })
            .collect();
        (0..=top as usize)
            .map(|t| {
                let r_in = if t == 0 { 0 } else { ranks[t - 1] };
                slots[t].dim - ranks[t] - r_in
            })
            .collect()
    }

    /// Cohomology dimension at slot `t` alone.
    pub fn cohomology_dim(&self, t: usize) -> usize {
        let field = self.module.field();
        let mut cache = TransitionCache::default();
        let t = t as isize;
        let (prev, cur, next) = (self.slot(t - 1), self.slot(t), self.slot(t + 1));
        if cur.dim == 0 {
            return 0;
        }
        let r_in = if prev.dim == 0 { 0 } else { linalg::rank(field, &self.differential(&prev, &cur, &mut cache)) };
        let r_out = if next.dim == 0 { 0 } else { linalg::rank(field, &self.differential(&cur, &next, &mut cache)) };
        cur.dim - r_in - r_out
    }

    /// Slot `t` together with its cohomology representatives and projector.
    pub fn cohomology_at(&self, t: usize) -> (Slot, Cohomology<F::Elem>) {
        let field = self.module.field();
        let mut cache = TransitionCache::default();
        let t = t as isize;
        let (prev, cur, next) = (self.slot(t - 1), self.slot(t), self.slot(t + 1));
        let d_in = self.differential(&prev, &cur, &mut cache);
        let d_out = self.differential(&cur, &next, &mut cache);
        let h = linalg::cohomology(field, cur.dim, &d_in, &d_out);
        (cur, h)
    }
}

/// Memoized composite transitions of one module.
pub struct TransitionCache<F: Field> {
    maps: BTreeMap<(VarSet, VarSet), Matrix<F::Elem>>,
}

impl<F: Field> Default for TransitionCache<F> {
    fn default() -> Self {
        TransitionCache { maps: BTreeMap::new() }
    }
}

impl<F: Field> TransitionCache<F> {
    pub fn get(&mut self, module: &PatternModule<F>, from: VarSet, to: VarSet) -> &Matrix<F::Elem> {
        self.maps.entry((from, to)).or_insert_with(|| module.transition(from, to))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn lex_order_of_subsets() {
        assert_eq!(lex_subsets(4, 2), alloc::vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(lex_subsets(3, 0), alloc::vec![0]);
        assert!(lex_subsets(2, 3).is_empty());
    }

    #[test]
    fn unions_are_cumulative() {
        let gens = [VarSet::from_vars(&[1, 2]), VarSet::from_vars(&[1, 3])];
        let sys = GeneratorSystem::new(&gens).unwrap();
        assert_eq!(sys.union(0b11), VarSet::from_vars(&[1, 2, 3]));
        assert_eq!(sys.union(0), VarSet::EMPTY);
    }

    #[test]
    fn differentials_square_to_zero() {
        let gens = [VarSet::from_vars(&[1, 2]), VarSet::from_vars(&[1, 3]), VarSet::from_vars(&[2, 3])];
        let sys = GeneratorSystem::new(&gens).unwrap();
        let r = PatternModule::ring(Rationals, 3);
        for base in VarSet::all(3) {
            let c = SubsetComplex::cech(&sys, &r, base);
            let mut cache = TransitionCache::default();
            let slots: Vec<Slot> = (0..=4).map(|t| c.slot(t)).collect();
            for t in 0..3 {
                let d0 = c.differential(&slots[t], &slots[t + 1], &mut cache);
                let d1 = c.differential(&slots[t + 1], &slots[t + 2], &mut cache);
                assert!(linalg::is_zero_matrix(&Rationals, &linalg::mul(&Rationals, &d1, &d0)));
            }
        }
    }

    #[test]
    fn too_many_generators() {
        let gens: Vec<VarSet> = (0..21).map(|_| VarSet::from_vars(&[1])).collect();
        assert!(matches!(GeneratorSystem::new(&gens), Err(Error::TooManyGenerators { .. })));
    }
}
