//! Pattern modules: `Z^n`-graded modules whose degree-`a` piece depends only
//! on `neg(a) = { j : a_j < 0 }`.
//!
//! Multiplication by `x_j` from degree `a` to `a + e_j` is the identity
//! whenever `neg(a + e_j) = neg(a)`, and the stored map
//! `u_{N,j} : piece(N) -> piece(N \ {j})` when `a_j = -1`. Only these
//! single-step maps are stored; longer transitions are composites, which are
//! well defined because the squares commute.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::combinatorics::{VarSet, MAX_VARIABLES};
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::par;

/// A point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `{ j : a_j < 0 }`.
    pub fn neg(&self) -> VarSet {
        let mut s = VarSet::EMPTY;
        for (j, &a) in self.0.iter().enumerate() {
            if a < 0 {
                s = s.insert(j);
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct PatternModule<F: Field> {
    field: F,
    n: usize,
    dims: Vec<usize>,
    /// Index `N * n + j`; only meaningful for `j ∈ N`.
    umaps: Vec<Matrix<F::Elem>>,
}

impl<F: Field> PatternModule<F> {
    /// Builds a module from piece dimensions and single-step maps, checking
    /// shapes and the commuting squares.
    pub fn new(
        field: F,
        n: usize,
        dims: Vec<usize>,
        mut umap: impl FnMut(VarSet, usize) -> Matrix<F::Elem>,
    ) -> Result<Self, Error> {
        if n == 0 || n > MAX_VARIABLES {
            return Err(Error::UnsupportedVariableCount(n));
        }
        if dims.len() != 1 << n {
            return Err(Error::InvalidModule(format!(
                "expected {} pattern dimensions, got {}",
                1usize << n,
                dims.len()
            )));
        }
        let mut umaps = Vec::with_capacity(dims.len() * n);
        for pattern in VarSet::all(n) {
            for j in 0..n {
                if !pattern.contains(j) {
                    umaps.push(Matrix::zeros(&field, 0, 0));
                    continue;
                }
                let m = umap(pattern, j);
                let (rows, cols) = (dims[pattern.remove(j).index()], dims[pattern.index()]);
                if m.rows() != rows || m.cols() != cols {
                    return Err(Error::InvalidModule(format!(
                        "u-map at pattern {pattern:?}, x{} has shape {}x{}, expected {rows}x{cols}",
                        j + 1,
                        m.rows(),
                        m.cols()
                    )));
                }
                umaps.push(m);
            }
        }
        let module = PatternModule { field, n, dims, umaps };
        module.check_commuting_squares()?;
        Ok(module)
    }

    pub(crate) fn from_parts_unchecked(
        field: F,
        n: usize,
        dims: Vec<usize>,
        umaps: Vec<Matrix<F::Elem>>,
    ) -> Self {
        debug_assert_eq!(umaps.len(), dims.len() * n);
        PatternModule { field, n, dims, umaps }
    }

    /// The polynomial ring itself: `k` at the empty pattern, zero elsewhere.
    pub fn ring(field: F, n: usize) -> Self {
        let mut dims = alloc::vec![0; 1 << n];
        dims[0] = 1;
        let umaps = (0..dims.len() * n).map(|_| Matrix::zeros(&field, 0, 0)).collect();
        let umaps = fix_shapes(&field, n, &dims, umaps);
        PatternModule { field, n, dims, umaps }
    }

    pub fn zero(field: F, n: usize) -> Self {
        let dims = alloc::vec![0; 1 << n];
        let umaps = (0..dims.len() * n).map(|_| Matrix::zeros(&field, 0, 0)).collect();
        PatternModule { field, n, dims, umaps }
    }

    /// The injective hull `E(R/p_S)`, graded so that its pieces sit at the
    /// patterns containing `S`: one-dimensional there, with `x_j` invertible
    /// for `j ∉ S`.
    pub fn injective_hull(field: F, n: usize, prime: VarSet) -> Self {
        let dims: Vec<usize> =
            VarSet::all(n).map(|p| usize::from(prime.is_subset(p))).collect();
        let mut umaps = Vec::with_capacity(dims.len() * n);
        for pattern in VarSet::all(n) {
            for j in 0..n {
                let (rows, cols) = if pattern.contains(j) {
                    (dims[pattern.remove(j).index()], dims[pattern.index()])
                } else {
                    (0, 0)
                };
                let mut m = Matrix::zeros(&field, rows, cols);
                if rows == 1 && cols == 1 {
                    m.set(0, 0, field.one());
                }
                umaps.push(m);
            }
        }
        PatternModule { field, n, dims, umaps }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, pattern: VarSet) -> usize {
        self.dims[pattern.index()]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn piece_dim(&self, a: &Multidegree) -> usize {
        debug_assert_eq!(a.n(), self.n);
        self.dim(a.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Patterns with a nonzero piece, by bitmask.
    pub fn support_patterns(&self) -> impl Iterator<Item = VarSet> + '_ {
        VarSet::all(self.n).filter(move |p| self.dim(*p) > 0)
    }

    /// `u_{N,j}`, for `j ∈ N` (0-based).
    pub fn umap(&self, pattern: VarSet, j: usize) -> &Matrix<F::Elem> {
        debug_assert!(pattern.contains(j));
        &self.umaps[pattern.index() * self.n + j]
    }

    /// Composite map `piece(from) -> piece(to)` for `to ⊆ from`, removing the
    /// variables of `from \ to` in increasing order.
    pub fn transition(&self, from: VarSet, to: VarSet) -> Matrix<F::Elem> {
        debug_assert!(to.is_subset(from));
        let mut current = from;
        let mut acc = Matrix::identity(&self.field, self.dim(from));
        for j in from.minus(to).iter() {
            let step = self.umap(current, j);
            acc = linalg::mul(&self.field, step, &acc);
            current = current.remove(j);
        }
        acc
    }

    fn check_commuting_squares(&self) -> Result<(), Error> {
        for pattern in VarSet::all(self.n) {
            let members: Vec<usize> = pattern.iter().collect();
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    let via_i = linalg::mul(
                        &self.field,
                        self.umap(pattern.remove(i), j),
                        self.umap(pattern, i),
                    );
                    let via_j = linalg::mul(
                        &self.field,
                        self.umap(pattern.remove(j), i),
                        self.umap(pattern, j),
                    );
                    if via_i != via_j {
                        return Err(Error::InvalidModule(format!(
                            "square at pattern {pattern:?} for x{}, x{} does not commute",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M[x_j^{-1} : j ∈ W]`.
    ///
    /// The localization's piece at `a` is the direct limit along `x_j`,
    /// which stabilises once `a_j >= 0`; so `piece'(N) = piece(N \ W)` and
    /// `x_j` acts as the identity for `j ∈ W`. The result is stored over all
    /// patterns, which makes it comparable with other modules.
    pub fn invert_variables(&self, w: VarSet) -> Self {
        let n = self.n;
        let dims: Vec<usize> = VarSet::all(n).map(|p| self.dim(p.minus(w))).collect();
        let mut umaps = Vec::with_capacity(dims.len() * n);
        for pattern in VarSet::all(n) {
            for j in 0..n {
                if !pattern.contains(j) {
                    umaps.push(Matrix::zeros(&self.field, 0, 0));
                } else if w.contains(j) {
                    umaps.push(Matrix::identity(&self.field, dims[pattern.index()]));
                } else {
                    umaps.push(self.umap(pattern.minus(w), j).clone());
                }
            }
        }
        PatternModule { field: self.field.clone(), n, dims, umaps }
    }

    /// Dimension of every piece plus the rank of every transition
    /// `piece(N) -> piece(N')`, `N' ⊆ N`, keyed by `(N, N')`.
    pub fn rank_profile(&self) -> RankProfile {
        let n = self.n;
        let patterns: Vec<VarSet> = VarSet::all(n).collect();
        let per_source = par::map_vec(&patterns, |&from| {
            let mut out = Vec::new();
            if self.dim(from) == 0 {
                return out;
            }
            for to in from.subsets() {
                if to == from || self.dim(to) == 0 {
                    continue;
                }
                let r = linalg::rank(&self.field, &self.transition(from, to));
                out.push(((from, to), r));
            }
            out
        });
        let mut ranks = BTreeMap::new();
        for list in per_source {
            ranks.extend(list);
        }
        RankProfile { dims: self.dims.clone(), ranks }
    }

    /// Replaces the piece dimension at one pattern, keeping shapes coherent by
    /// zero-filling the adjacent maps. Used for fault injection in tests.
    #[doc(hidden)]
    pub fn corrupt_piece(&self, pattern: VarSet, dim: usize) -> Self {
        let mut dims = self.dims.clone();
        dims[pattern.index()] = dim;
        let umaps = fix_shapes(&self.field, self.n, &dims, self.umaps.clone());
        PatternModule { field: self.field.clone(), n: self.n, dims, umaps }
    }
}

/// Replaces every map whose shape disagrees with `dims` by a zero matrix.
fn fix_shapes<F: Field>(
    field: &F,
    n: usize,
    dims: &[usize],
    mut umaps: Vec<Matrix<F::Elem>>,
) -> Vec<Matrix<F::Elem>> {
    for pattern in VarSet::all(n) {
        for j in pattern.iter() {
            let (rows, cols) = (dims[pattern.remove(j).index()], dims[pattern.index()]);
            let m = &mut umaps[pattern.index() * n + j];
            if m.rows() != rows || m.cols() != cols {
                *m = Matrix::zeros(field, rows, cols);
            }
        }
    }
    umaps
}

/// The data [`module_equal`] compares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub dims: Vec<usize>,
    pub ranks: BTreeMap<(VarSet, VarSet), usize>,
}

/// Agreement of all piece dimensions and all transition ranks.
///
/// This certifies the computable shadow of an isomorphism, not an
/// isomorphism itself.
pub fn module_equal<F: Field>(a: &PatternModule<F>, b: &PatternModule<F>) -> bool {
    a.n == b.n && a.dims == b.dims && a.rank_profile() == b.rank_profile()
}

/// First disagreement found by [`module_equal`], for diagnostics.
pub fn module_difference<F: Field>(a: &PatternModule<F>, b: &PatternModule<F>) -> Option<alloc::string::String> {
    if a.n != b.n {
        return Some(format!("ambient rings differ: n = {} vs {}", a.n, b.n));
    }
    for p in VarSet::all(a.n) {
        if a.dim(p) != b.dim(p) {
            return Some(format!("piece at pattern {p:?}: dim {} vs {}", a.dim(p), b.dim(p)));
        }
    }
    let (ra, rb) = (a.rank_profile(), b.rank_profile());
    for (key, r) in &ra.ranks {
        let other = rb.ranks.get(key).copied().unwrap_or(0);
        if *r != other {
            return Some(format!("transition {:?} -> {:?}: rank {r} vs {other}", key.0, key.1));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn hull_piece_dims() {
        let e = PatternModule::injective_hull(Rationals, 3, VarSet::from_vars(&[2, 3]));
        assert_eq!(e.piece_dim(&Multidegree(alloc::vec![5, -1, -2])), 1);
        assert_eq!(e.piece_dim(&Multidegree(alloc::vec![5, -1, 0])), 0);
        assert_eq!(e.piece_dim(&Multidegree(alloc::vec![-7, -1, -1])), 1);
    }

    #[test]
    fn invert_variables_on_hulls() {
        let s = VarSet::from_vars(&[2, 3]);
        let e = PatternModule::injective_hull(Rationals, 3, s);
        assert!(module_equal(&e.invert_variables(VarSet::EMPTY), &e));
        assert!(module_equal(&e.invert_variables(VarSet::from_vars(&[1])), &e));
        assert!(e.invert_variables(VarSet::from_vars(&[2])).is_zero());
        assert!(e.invert_variables(VarSet::from_vars(&[1, 3])).is_zero());
    }

    #[test]
    fn ring_localized_everywhere_is_laurent() {
        let r = PatternModule::ring(Rationals, 2);
        let l = r.invert_variables(VarSet::full(2));
        assert!(l.dims().iter().all(|&d| d == 1));
    }

    #[test]
    fn new_rejects_noncommuting_square() {
        let f = Rationals;
        // dims 1 everywhere on n = 2; u_{12,1} = 0, the rest identity.
        let res = PatternModule::new(f, 2, alloc::vec![1, 1, 1, 1], |p, j| {
            let mut m = Matrix::identity(&f, 1);
            if p == VarSet::full(2) && j == 0 {
                m.set(0, 0, f.zero());
            }
            m
        });
        assert!(matches!(res, Err(Error::InvalidModule(_))));
        let ok = PatternModule::new(f, 2, alloc::vec![1, 1, 1, 1], |_, _| Matrix::identity(&f, 1));
        assert!(ok.is_ok());
    }

    #[test]
    fn rank_profile_distinguishes_maps() {
        let f = Rationals;
        let iso = PatternModule::new(f, 1, alloc::vec![1, 1], |_, _| Matrix::identity(&f, 1)).unwrap();
        let zero = PatternModule::new(f, 1, alloc::vec![1, 1], |_, _| Matrix::zeros(&f, 1, 1)).unwrap();
        assert!(!module_equal(&iso, &zero));
        assert!(module_equal(&iso, &iso));
        assert!(module_difference(&iso, &zero).is_some());
    }
}
