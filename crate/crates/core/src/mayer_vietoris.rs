//! The Mayer–Vietoris sequence
//! `... -> H^i_{I+J} -> H^i_I ⊕ H^i_J -> H^i_{I∩J} -> H^{i+1}_{I+J} -> ...`
//! assembled pattern by pattern.
//!
//! At a nonempty pattern `N` the Čech complex of `I` is the relative
//! cochain complex of the full simplex on the generators modulo the faces
//! `T` with `N ⊄ U_T`. Those faces are covered by the simplices of
//! generators avoiding a fixed `v ∈ N`, and the nerve of that cover is
//!
//! `Λ^I_N = { A ⊆ N : some generator of I is disjoint from A }`,
//!
//! so `H^i_I(R)_N ≅ H̃^{i-2}(Λ^I_N)`. This complex does not depend on the
//! chosen generators, and `Λ^{I+J}_N = Λ^I_N ∪ Λ^J_N`,
//! `Λ^{I∩J}_N = Λ^I_N ∩ Λ^J_N`. The simplicial Mayer–Vietoris sequence of
//! that union is the sequence above; its connecting map comes from the
//! snake lemma. Every piece dimension is cross-checked against the Čech
//! engine.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cech::local_cohomology_dims;
use crate::combinatorics::{SquarefreeMonomialIdeal, VarSet};
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{self, Cohomology, Matrix};
use crate::par;

pub const MAX_MV_VARIABLES: usize = 10;

/// Faces of a simplicial complex on a subset of the variables, by size;
/// size `c` sits in cochain degree `c`, the empty face in degree 0.
struct FaceComplex {
    faces: Vec<Vec<VarSet>>,
}

impl FaceComplex {
    fn new(vertices: VarSet, member: impl Fn(VarSet) -> bool) -> Self {
        let mut faces = alloc::vec![Vec::new(); vertices.len() + 1];
        for a in vertices.subsets() {
            if member(a) {
                faces[a.len()].push(a);
            }
        }
        for level in &mut faces {
            level.sort_unstable();
        }
        FaceComplex { faces }
    }

    fn nerve(vertices: VarSet, gens: &[VarSet]) -> Self {
        Self::new(vertices, |a| gens.iter().any(|g| g.is_disjoint(a)))
    }

    fn level(&self, c: isize) -> &[VarSet] {
        if c < 0 {
            return &[];
        }
        self.faces.get(c as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    fn position(&self, c: isize, face: VarSet) -> Option<usize> {
        self.level(c).binary_search(&face).ok()
    }

    /// `δ: C^c -> C^{c+1}`, `(δf)(A) = Σ_{v ∈ A} (-1)^{#{u ∈ A : u < v}} f(A \ v)`.
    fn coboundary<F: Field>(&self, field: &F, c: isize) -> Matrix<F::Elem> {
        let (src, tgt) = (self.level(c), self.level(c + 1));
        let mut d = Matrix::zeros(field, tgt.len(), src.len());
        for (r, &face) in tgt.iter().enumerate() {
            for v in face.iter() {
                if let Some(col) = self.position(c, face.remove(v)) {
                    let below = face.iter().filter(|&u| u < v).count();
                    d.set(r, col, field.from_i64(if below % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        d
    }

    fn cohomology<F: Field>(&self, field: &F, c: isize) -> Cohomology<F::Elem> {
        let dim = self.level(c).len();
        linalg::cohomology(field, dim, &self.coboundary(field, c - 1), &self.coboundary(field, c))
    }

    /// Restriction of degree-`c` cochains to a subcomplex.
    fn restrict_to<F: Field>(&self, field: &F, sub: &FaceComplex, c: isize) -> Matrix<F::Elem> {
        let (src, tgt) = (self.level(c), sub.level(c));
        let mut m = Matrix::zeros(field, tgt.len(), src.len());
        for (r, &face) in tgt.iter().enumerate() {
            if let Some(col) = self.position(c, face) {
                m.set(r, col, field.one());
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvSlot {
    /// `H^i_{I+J}`
    Sum,
    /// `H^i_I ⊕ H^i_J`
    Pair,
    /// `H^i_{I∩J}`
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MvTerm {
    pub slot: MvSlot,
    pub i: usize,
    pub dim: usize,
}

/// The long exact sequence at one pattern, terms in sequence order.
#[derive(Clone, Debug)]
pub struct PatternSequence {
    pub pattern: VarSet,
    pub terms: Vec<MvTerm>,
    /// `map_ranks[k]` is the rank of `terms[k] -> terms[k + 1]`.
    pub map_ranks: Vec<usize>,
    /// Terms where exactness fails.
    pub failures: Vec<usize>,
    /// `(dim H^i_I, dim H^i_J)` by `i`.
    pub pair_dims: Vec<(usize, usize)>,
}

impl PatternSequence {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }

    fn term(&self, slot: MvSlot, i: usize) -> Option<usize> {
        self.terms.iter().position(|t| t.slot == slot && t.i == i)
    }

    /// Dimension of a term, zero if outside the computed range.
    pub fn dim(&self, slot: MvSlot, i: usize) -> usize {
        self.term(slot, i).map_or(0, |k| self.terms[k].dim)
    }

    /// Rank of the connecting map `H^i_{I∩J} -> H^{i+1}_{I+J}`.
    pub fn connecting_rank(&self, i: usize) -> usize {
        self.term(MvSlot::Intersection, i)
            .and_then(|k| self.map_ranks.get(k).copied())
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct MayerVietorisReport {
    pub n: usize,
    pub sum: SquarefreeMonomialIdeal,
    pub intersection: SquarefreeMonomialIdeal,
    pub patterns: Vec<PatternSequence>,
    /// Disagreements between nerve dimensions and the Čech engine.
    pub engine_mismatches: Vec<String>,
}

impl MayerVietorisReport {
    pub fn is_exact(&self) -> bool {
        self.patterns.iter().all(PatternSequence::is_exact)
    }

    pub fn engine_agrees(&self) -> bool {
        self.engine_mismatches.is_empty()
    }

    /// Whether `H^i_{I∩J} -> H^{i+1}_{I+J}` is bijective at every pattern.
    pub fn connecting_is_isomorphism(&self, i: usize) -> bool {
        self.patterns.iter().all(|p| {
            let r = p.connecting_rank(i);
            r == p.dim(MvSlot::Intersection, i) && r == p.dim(MvSlot::Sum, i + 1)
        })
    }

    /// Whether `H^i_I ⊕ H^i_J -> H^i_{I∩J}` is bijective at every pattern.
    pub fn pair_map_is_isomorphism(&self, i: usize) -> bool {
        self.patterns.iter().all(|p| {
            let Some(k) = p.term(MvSlot::Pair, i) else {
                return p.dim(MvSlot::Intersection, i) == 0;
            };
            let r = p.map_ranks[k];
            r == p.dim(MvSlot::Pair, i) && r == p.dim(MvSlot::Intersection, i)
        })
    }

    /// Total dimension of a term over all patterns.
    pub fn total(&self, slot: MvSlot, i: usize) -> usize {
        self.patterns.iter().map(|p| p.dim(slot, i)).sum()
    }

    pub fn first_failure(&self) -> Option<String> {
        self.patterns.iter().find(|p| !p.is_exact()).map(|p| {
            let t = p.terms[p.failures[0]];
            format!("not exact at pattern {:?}, term {:?} in degree {}", p.pattern, t.slot, t.i)
        })
    }
}

impl fmt::Display for MvSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MvSlot::Sum => "sum",
            MvSlot::Pair => "pair",
            MvSlot::Intersection => "intersection",
        })
    }
}

fn pattern_sequence<F: Field>(
    field: &F,
    pattern: VarSet,
    g1: &[VarSet],
    g2: &[VarSet],
    n: usize,
) -> PatternSequence {
    let top = n + 1;
    if pattern.is_empty() {
        let terms = (0..=n)
            .flat_map(|i| {
                [MvSlot::Sum, MvSlot::Pair, MvSlot::Intersection].map(|slot| MvTerm { slot, i, dim: 0 })
            })
            .collect::<Vec<_>>();
        let map_ranks = alloc::vec![0; terms.len()];
        return PatternSequence { pattern, terms, map_ranks, failures: Vec::new(), pair_dims: alloc::vec![(0, 0); top] };
    }
    let one = FaceComplex::nerve(pattern, g1);
    let two = FaceComplex::nerve(pattern, g2);
    let uni = FaceComplex::new(pattern, |a| g1.iter().chain(g2).any(|g| g.is_disjoint(a)));
    let int = FaceComplex::new(pattern, |a| {
        g1.iter().any(|g| g.is_disjoint(a)) && g2.iter().any(|g| g.is_disjoint(a))
    });

    // cochain degree c carries local cohomology index i = c + 1
    let degrees: Vec<isize> = (-1..=n as isize - 1).collect();
    let h = |cx: &FaceComplex| -> Vec<Cohomology<F::Elem>> {
        degrees.iter().map(|&c| cx.cohomology(field, c)).collect()
    };
    let (hu, h1, h2, hx) = (h(&uni), h(&one), h(&two), h(&int));

    let mut terms = Vec::new();
    let mut maps: Vec<Matrix<F::Elem>> = Vec::new();
    for (k, &c) in degrees.iter().enumerate() {
        let i = (c + 1) as usize;
        let (du, d1, d2, dx) = (hu[k].dim(), h1[k].dim(), h2[k].dim(), hx[k].dim());
        terms.push(MvTerm { slot: MvSlot::Sum, i, dim: du });
        terms.push(MvTerm { slot: MvSlot::Pair, i, dim: d1 + d2 });
        terms.push(MvTerm { slot: MvSlot::Intersection, i, dim: dx });

        // restriction to both pieces
        let a1 = linalg::mul(field, &h1[k].projector, &linalg::mul(field, &uni.restrict_to(field, &one, c), &hu[k].reps));
        let a2 = linalg::mul(field, &h2[k].projector, &linalg::mul(field, &uni.restrict_to(field, &two, c), &hu[k].reps));
        let mut alpha = Matrix::zeros(field, d1 + d2, du);
        alpha.put_block(0, 0, &a1);
        alpha.put_block(d1, 0, &a2);
        maps.push(alpha);

        // difference of restrictions to the intersection
        let b1 = linalg::mul(field, &hx[k].projector, &linalg::mul(field, &one.restrict_to(field, &int, c), &h1[k].reps));
        let b2 = linalg::mul(field, &hx[k].projector, &linalg::mul(field, &two.restrict_to(field, &int, c), &h2[k].reps));
        let mut beta = Matrix::zeros(field, dx, d1 + d2);
        beta.put_block(0, 0, &b1);
        beta.put_block(0, d1, &linalg::scale(field, &b2, &field.from_i64(-1)));
        maps.push(beta);

        // snake: extend by zero into the first piece, apply δ, read on the union
        if k + 1 < degrees.len() {
            let lift = one.restrict_to(field, &int, c).transpose();
            let pushed = linalg::mul(field, &one.coboundary(field, c), &linalg::mul(field, &lift, &hx[k].reps));
            let on_union = uni.restrict_to(field, &one, c + 1).transpose();
            let w = linalg::mul(field, &on_union, &pushed);
            maps.push(linalg::mul(field, &hu[k + 1].projector, &w));
        }
    }

    let map_ranks: Vec<usize> = maps.iter().map(|m| linalg::rank(field, m)).collect();
    let mut failures = Vec::new();
    for k in 0..terms.len() {
        let r_in = if k == 0 { 0 } else { map_ranks[k - 1] };
        let r_out = map_ranks.get(k).copied().unwrap_or(0);
        let composite_zero = k == 0
            || k >= maps.len()
            || linalg::is_zero_matrix(field, &linalg::mul(field, &maps[k], &maps[k - 1]));
        if !composite_zero || r_in + r_out != terms[k].dim {
            failures.push(k);
        }
    }
    // degrees[k] = k - 1 carries index i = k
    let pair_dims = (0..top).map(|k| (h1[k].dim(), h2[k].dim())).collect();
    PatternSequence { pattern, terms, map_ranks, failures, pair_dims }
}

/// Builds the sequence at every pattern and cross-checks its terms against
/// the Čech engine.
pub fn mayer_vietoris_check<F: Field>(
    field: &F,
    first: &SquarefreeMonomialIdeal,
    second: &SquarefreeMonomialIdeal,
) -> Result<MayerVietorisReport, Error> {
    if first.n() != second.n() {
        return Err(Error::RingMismatch { left: first.n(), right: second.n() });
    }
    let n = first.n();
    if n > MAX_MV_VARIABLES {
        return Err(Error::UnsupportedVariableCount(n));
    }
    for ideal in [first, second] {
        if ideal.is_zero() || ideal.is_unit() {
            return Err(Error::ZeroOrUnitIdeal);
        }
    }
    let sum = first.sum(second)?;
    let intersection = first.intersect(second)?;
    let patterns: Vec<VarSet> = VarSet::all(n).collect();
    let sequences = par::map_vec(&patterns, |&p| {
        pattern_sequence(field, p, first.generators(), second.generators(), n)
    });

    let engine = [first, second, &sum, &intersection].map(|ideal| local_cohomology_dims(field, ideal));
    let [e1, e2, es, ex] = engine;
    let (e1, e2, es, ex) = (e1?, e2?, es?, ex?);
    let mut engine_mismatches = Vec::new();
    for seq in &sequences {
        let p = seq.pattern.index();
        for i in 0..=n {
            let checks = [
                ("sum", seq.dim(MvSlot::Sum, i), es[p][i]),
                ("intersection", seq.dim(MvSlot::Intersection, i), ex[p][i]),
                ("first", seq.pair_dims[i].0, e1[p][i]),
                ("second", seq.pair_dims[i].1, e2[p][i]),
            ];
            for (name, nerve, cech) in checks {
                if nerve != cech {
                    engine_mismatches.push(format!(
                        "{name} ideal, pattern {:?}, H^{i}: nerve {nerve} vs Čech {cech}",
                        seq.pattern
                    ));
                }
            }
        }
    }
    Ok(MayerVietorisReport { n, sum, intersection, patterns: sequences, engine_mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ideal(n: usize, gens: &[&[usize]]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::normalize(n, gens.iter().map(|g| VarSet::from_vars(g))).unwrap()
    }

    #[test]
    fn mixed_example_sequence() {
        let r = mayer_vietoris_check(&Rationals, &ideal(3, &[&[1]]), &ideal(3, &[&[2], &[3]])).unwrap();
        assert!(r.is_exact());
        assert!(r.engine_agrees(), "{:?}", r.engine_mismatches);
        assert_eq!(r.total(MvSlot::Sum, 2), 0);
        assert_eq!(r.total(MvSlot::Pair, 2), 1);
        assert_eq!(r.total(MvSlot::Intersection, 2), 2);
        assert_eq!(r.total(MvSlot::Sum, 3), 1);
        assert!(!r.connecting_is_isomorphism(2));
    }

    #[test]
    fn equal_ideals() {
        let i = ideal(3, &[&[1, 2], &[2, 3]]);
        let r = mayer_vietoris_check(&Rationals, &i, &i).unwrap();
        assert!(r.is_exact());
        assert!(r.engine_agrees());
    }

    #[test]
    fn series_two_identification() {
        let a = ideal(6, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        let b = ideal(6, &[&[5], &[6]]);
        let r = mayer_vietoris_check(&Rationals, &a, &b).unwrap();
        assert!(r.is_exact());
        assert!(r.engine_agrees());
        assert!(r.connecting_is_isomorphism(4));
    }

    #[test]
    fn rejects_zero_ideal() {
        let z = SquarefreeMonomialIdeal::zero(2);
        assert_eq!(mayer_vietoris_check(&Rationals, &z, &ideal(2, &[&[1]])).unwrap_err(), Error::ZeroOrUnitIdeal);
    }
}
