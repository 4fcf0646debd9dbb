//! Čech complexes of squarefree monomial ideals and the local cohomology
//! modules they compute, as pattern modules.
//!
//! The localization `R_{x^U}` has a one-dimensional piece at `a` exactly when
//! `neg(a) ⊆ U`, so every term of the Čech complex is constant on degrees
//! sharing `neg(a)`, and so is its cohomology. Multiplication by `x_j` from a
//! degree with `a_j = -1` to `a + e_j` is the inclusion of the pattern-`N`
//! complex into the pattern-`N \ {j}` complex; its effect on cohomology gives
//! the `u`-maps.

use alloc::vec::Vec;

use crate::combinatorics::{SquarefreeMonomialIdeal, VarSet};
use crate::complex::{GeneratorSystem, Slot, SubsetComplex, TransitionCache};
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{self, Cohomology, Matrix};
use crate::par;
use crate::pattern::PatternModule;

/// The Čech complex `0 -> R -> ⊕ R_{g_i} -> ⊕ R_{g_i g_j} -> ...` on the
/// minimal generators of an ideal.
#[derive(Clone, Debug)]
pub struct CechComplex {
    n: usize,
    system: GeneratorSystem,
}

/// The degree slice of a [`CechComplex`] at one pattern.
#[derive(Clone, Debug)]
pub struct PatternCechComplex<E> {
    /// Basis of the term in slot `t`: generator subsets `T`, `|T| = t`, with
    /// `N ⊆ U_T`, in lexicographic order.
    pub terms: Vec<Vec<u32>>,
    /// `differentials[t]` maps slot `t` to slot `t + 1`.
    pub differentials: Vec<Matrix<E>>,
}

impl CechComplex {
    pub fn new(ideal: &SquarefreeMonomialIdeal) -> Result<Self, Error> {
        if ideal.is_zero() || ideal.is_unit() {
            return Err(Error::ZeroOrUnitIdeal);
        }
        Ok(CechComplex { n: ideal.n(), system: GeneratorSystem::new(ideal.generators())? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[VarSet] {
        self.system.generators()
    }

    pub(crate) fn system(&self) -> &GeneratorSystem {
        &self.system
    }

    /// The slice of the complex at degrees with `neg(a) = pattern`.
    pub fn pattern_complex<F: Field>(&self, field: &F, pattern: VarSet) -> PatternCechComplex<F::Elem> {
        let ring = PatternModule::ring(field.clone(), self.n);
        let complex = SubsetComplex::cech(&self.system, &ring, pattern);
        let mut cache = TransitionCache::default();
        let top = self.system.len() as isize;
        let slots: Vec<Slot> = (0..=top + 1).map(|t| complex.slot(t)).collect();
        let terms = slots[..=top as usize]
            .iter()
            .map(|s| s.blocks.iter().map(|b| b.subset).collect())
            .collect();
        let differentials = (0..top as usize)
            .map(|t| complex.differential(&slots[t], &slots[t + 1], &mut cache))
            .collect();
        PatternCechComplex { terms, differentials }
    }
}

/// Builds the complex for an ideal, rejecting the zero and unit ideals.
pub fn cech_complex(ideal: &SquarefreeMonomialIdeal) -> Result<CechComplex, Error> {
    CechComplex::new(ideal)
}

/// `H^i_I(R)` as a pattern module.
pub fn local_cohomology<F: Field>(
    field: &F,
    ideal: &SquarefreeMonomialIdeal,
    i: usize,
) -> Result<PatternModule<F>, Error> {
    let ring = PatternModule::ring(field.clone(), ideal.n());
    local_cohomology_of(ideal, &ring, i)
}

/// `H^p_J(M)`: cohomology of the Čech complex `M -> ⊕ M_{g} -> ...` on the
/// generators of `J`.
pub fn local_cohomology_of<F: Field>(
    ideal: &SquarefreeMonomialIdeal,
    module: &PatternModule<F>,
    p: usize,
) -> Result<PatternModule<F>, Error> {
    if ideal.n() != module.n() {
        return Err(Error::RingMismatch { left: ideal.n(), right: module.n() });
    }
    let cech = CechComplex::new(ideal)?;
    Ok(cohomology_module(cech.system(), module, p))
}

fn cohomology_module<F: Field>(
    system: &GeneratorSystem,
    module: &PatternModule<F>,
    p: usize,
) -> PatternModule<F> {
    let n = module.n();
    let field = module.field();
    let patterns: Vec<VarSet> = VarSet::all(n).collect();

    let per_pattern: Vec<(Slot, Cohomology<F::Elem>)> = par::map_vec(&patterns, |&pattern| {
        let complex = SubsetComplex::cech(system, module, pattern);
        if p > system.len() {
            return (Slot::default(), linalg::cohomology(field, 0, &Matrix::zeros(field, 0, 0), &Matrix::zeros(field, 0, 0)));
        }
        complex.cohomology_at(p)
    });
    let dims: Vec<usize> = per_pattern.iter().map(|(_, h)| h.dim()).collect();

    // u_{N,j}: project the image of each representative under the chain map
    // C(N) -> C(N \ {j}).
    let jobs: Vec<(VarSet, usize)> =
        patterns.iter().flat_map(|&pat| (0..n).map(move |j| (pat, j))).collect();
    let umaps = par::map_vec(&jobs, |&(pattern, j)| {
        if !pattern.contains(j) {
            return Matrix::zeros(field, 0, 0);
        }
        let target = pattern.remove(j);
        let (src_slot, src_h) = &per_pattern[pattern.index()];
        let (tgt_slot, tgt_h) = &per_pattern[target.index()];
        if src_h.dim() == 0 || tgt_h.dim() == 0 {
            return Matrix::zeros(field, tgt_h.dim(), src_h.dim());
        }
        let chain = chain_map_drop(module, src_slot, tgt_slot, j);
        let image = linalg::mul(field, &chain, &src_h.reps);
        linalg::mul(field, &tgt_h.projector, &image)
    });
    PatternModule::from_parts_unchecked(field.clone(), n, dims, umaps)
}

/// Multiplication by `x_j` between the Čech slots at `N` and `N \ {j}`:
/// block `T` maps by `u_{N \ U_T, j}` if `j ∉ U_T`, else identically.
fn chain_map_drop<F: Field>(
    module: &PatternModule<F>,
    source: &Slot,
    target: &Slot,
    j: usize,
) -> Matrix<F::Elem> {
    let field = module.field();
    let mut m = Matrix::zeros(field, target.dim, source.dim);
    for block in &source.blocks {
        let Some(tb) = target.block(block.subset) else {
            continue;
        };
        if block.pattern.contains(j) {
            debug_assert_eq!(tb.pattern, block.pattern.remove(j));
            m.put_block(tb.offset, block.offset, module.umap(block.pattern, j));
        } else {
            debug_assert_eq!(tb.pattern, block.pattern);
            m.put_block(tb.offset, block.offset, &Matrix::identity(field, block.dim));
        }
    }
    m
}

/// `dims[pattern][i] = dim H^i_I(R)` at that pattern, for `i in 0..=n`.
pub fn local_cohomology_dims<F: Field>(
    field: &F,
    ideal: &SquarefreeMonomialIdeal,
) -> Result<Vec<Vec<usize>>, Error> {
    let cech = CechComplex::new(ideal)?;
    let n = ideal.n();
    let ring = PatternModule::ring(field.clone(), n);
    let patterns: Vec<VarSet> = VarSet::all(n).collect();
    Ok(par::map_vec(&patterns, |&pattern| {
        let mut dims = SubsetComplex::cech(cech.system(), &ring, pattern).cohomology_dims();
        dims.resize(n + 1, 0);
        dims.truncate(n + 1);
        dims
    }))
}

/// Cohomological degrees `i` with `H^i_I(R) ≠ 0`.
pub fn nonvanishing_degrees<F: Field>(
    field: &F,
    ideal: &SquarefreeMonomialIdeal,
) -> Result<Vec<usize>, Error> {
    let dims = local_cohomology_dims(field, ideal)?;
    Ok((0..=ideal.n()).filter(|&i| dims.iter().any(|d| d[i] > 0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::pattern::{module_equal, Multidegree};

    fn v(vars: &[usize]) -> VarSet {
        VarSet::from_vars(vars)
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::normalize(n, gens.iter().map(|g| v(g))).unwrap()
    }

    #[test]
    fn mixed_example_pattern_slices() {
        let i = ideal(3, &[&[1, 2], &[1, 3]]);
        let c = cech_complex(&i).unwrap();
        let slice = c.pattern_complex(&Rationals, v(&[2, 3]));
        // only T = {both generators} has U_T ⊇ {2,3}
        assert_eq!(slice.terms, alloc::vec![alloc::vec![], alloc::vec![], alloc::vec![0b11]]);
        let h = local_cohomology(&Rationals, &i, 2).unwrap();
        assert_eq!(h.dim(v(&[2, 3])), 1);
    }

    #[test]
    fn principal_ideal_empty_pattern() {
        let i = ideal(1, &[&[1]]);
        let c = cech_complex(&i).unwrap();
        let slice = c.pattern_complex(&Rationals, VarSet::EMPTY);
        assert_eq!(slice.terms, alloc::vec![alloc::vec![0], alloc::vec![1]]);
        assert_eq!(linalg::rank(&Rationals, &slice.differentials[0]), 1);
        let h1 = local_cohomology(&Rationals, &i, 1).unwrap();
        assert_eq!(h1.dim(VarSet::EMPTY), 0);
        assert_eq!(h1.dim(v(&[1])), 1);
    }

    #[test]
    fn empty_pattern_is_acyclic() {
        // The augmented complex on the full simplex is exact at the empty
        // pattern: local cohomology vanishes in nonnegative degrees.
        for i in [ideal(3, &[&[1, 2], &[1, 3]]), ideal(4, &[&[1], &[2, 3], &[3, 4]])] {
            let dims = local_cohomology_dims(&Rationals, &i).unwrap();
            assert!(dims[0].iter().all(|&d| d == 0));
            let c = cech_complex(&i).unwrap();
            let slice = c.pattern_complex(&Rationals, VarSet::EMPTY);
            let k = i.generators().len();
            for t in 0..=k {
                assert_eq!(slice.terms[t].len(), binomial(k, t));
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn mixed_example_is_hull() {
        let i = ideal(3, &[&[1, 2], &[1, 3]]);
        let h = local_cohomology(&Rationals, &i, 2).unwrap();
        let e = PatternModule::injective_hull(Rationals, 3, v(&[2, 3]));
        assert!(module_equal(&h, &e));
        let nonzero: Vec<VarSet> = h.support_patterns().collect();
        assert_eq!(nonzero, alloc::vec![v(&[2, 3]), v(&[1, 2, 3])]);
        assert!(local_cohomology(&Rationals, &i, 0).unwrap().is_zero());
    }

    #[test]
    fn maximal_ideal_top_cohomology() {
        for n in 1..=4 {
            let m = SquarefreeMonomialIdeal::maximal(n);
            let h = local_cohomology(&Rationals, &m, n).unwrap();
            for p in VarSet::all(n) {
                assert_eq!(h.dim(p), usize::from(p == VarSet::full(n)), "n={n} pattern {p:?}");
            }
        }
    }

    #[test]
    fn localization_of_prime_cohomology() {
        let p = SquarefreeMonomialIdeal::prime(3, v(&[2, 3]));
        let h = local_cohomology(&Rationals, &p, 2).unwrap();
        // x1 is not yet invertible
        assert_eq!(h.dim(v(&[1, 2, 3])), 0);
        let loc = h.invert_variables(v(&[1]));
        assert!(module_equal(&loc, &PatternModule::injective_hull(Rationals, 3, v(&[2, 3]))));
    }

    #[test]
    fn series_first_ideal_vanishing() {
        let i = SquarefreeMonomialIdeal::prime(5, v(&[1, 2]))
            .intersect(&SquarefreeMonomialIdeal::prime(5, v(&[3, 4])))
            .unwrap()
            .intersect(&SquarefreeMonomialIdeal::prime(5, v(&[5, 1])))
            .unwrap();
        assert_eq!(nonvanishing_degrees(&Rationals, &i).unwrap(), alloc::vec![2, 3]);
        let h3 = local_cohomology(&Rationals, &i, 3).unwrap();
        assert_eq!(h3.piece_dim(&Multidegree(alloc::vec![-1, -1, -1, -1, 0])), 1);
    }

    #[test]
    fn ring_as_module_reproduces_direct_dims() {
        let i = ideal(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let dims = local_cohomology_dims(&Rationals, &i).unwrap();
        for deg in 0..=4 {
            let h = local_cohomology(&Rationals, &i, deg).unwrap();
            for p in VarSet::all(4) {
                assert_eq!(h.dim(p), dims[p.index()][deg]);
            }
        }
    }

    #[test]
    fn prime_field_backend_agrees() {
        let i = ideal(4, &[&[1, 2], &[1, 3], &[2, 4]]);
        let q = local_cohomology_dims(&Rationals, &i).unwrap();
        let f2 = local_cohomology_dims(&PrimeField::new(2).unwrap(), &i).unwrap();
        assert_eq!(q, f2);
    }

    #[test]
    fn rejects_zero_and_unit() {
        assert_eq!(
            cech_complex(&SquarefreeMonomialIdeal::zero(2)).unwrap_err(),
            Error::ZeroOrUnitIdeal
        );
        assert!(local_cohomology(&Rationals, &SquarefreeMonomialIdeal::unit(2), 0).is_err());
    }
}
