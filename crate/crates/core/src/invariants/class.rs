//! Hom/Ext against `R/J` and exact finite-generation decisions.
//!
//! `Ext^l(R/J, M)` is the cohomology of `Hom(T_•, M)` where `T_•` is the
//! Taylor resolution of `R/J`. Its term for a generator subset `T` is
//! `M(e_{U_T})`, a shift by a 0/1 vector, so the degree-`a` piece only sees
//! whether each `a_j` and `a_j + 1` are negative. Pieces are therefore
//! constant on the per-coordinate classes `{<= -2, -1, 0, >= 1}` and the
//! whole module is a finite [`GradedClassModule`].

use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{SquarefreeMonomialIdeal, VarSet};
use crate::complex::{GeneratorSystem, SubsetComplex};
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::par;
use crate::pattern::{Multidegree, PatternModule};

/// Class modules store `4^n` pieces; beyond this they get impractical.
pub const MAX_CLASS_VARIABLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DegreeClass {
    /// `a_j <= -2`
    Deep,
    MinusOne,
    Zero,
    /// `a_j >= 1`
    Pos,
}

impl DegreeClass {
    pub const ALL: [DegreeClass; 4] =
        [DegreeClass::Deep, DegreeClass::MinusOne, DegreeClass::Zero, DegreeClass::Pos];

    pub fn of(a: i64) -> Self {
        match a {
            i64::MIN..=-2 => DegreeClass::Deep,
            -1 => DegreeClass::MinusOne,
            0 => DegreeClass::Zero,
            _ => DegreeClass::Pos,
        }
    }

    pub fn representative(self) -> i64 {
        match self {
            DegreeClass::Deep => -2,
            DegreeClass::MinusOne => -1,
            DegreeClass::Zero => 0,
            DegreeClass::Pos => 1,
        }
    }

    fn code(self) -> usize {
        self as usize
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeClass::Deep => "deep",
            DegreeClass::MinusOne => "-1",
            DegreeClass::Zero => "0",
            DegreeClass::Pos => "pos",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassVector(pub Vec<DegreeClass>);

impl ClassVector {
    pub fn of_degree(a: &Multidegree) -> Self {
        ClassVector(a.0.iter().map(|&x| DegreeClass::of(x)).collect())
    }

    pub fn representative(&self) -> Multidegree {
        Multidegree(self.0.iter().map(|c| c.representative()).collect())
    }

    pub fn has_deep(&self) -> bool {
        self.0.contains(&DegreeClass::Deep)
    }

    /// Base-4 index, first coordinate most significant.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, c| acc * 4 + c.code())
    }

    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut v = alloc::vec![DegreeClass::Deep; n];
        for slot in v.iter_mut().rev() {
            *slot = DegreeClass::ALL[index % 4];
            index /= 4;
        }
        ClassVector(v)
    }

    /// All `4^n` class vectors in index order.
    pub fn all(n: usize) -> impl Iterator<Item = ClassVector> {
        (0..1usize << (2 * n)).map(move |i| ClassVector::from_index(n, i))
    }

    /// Negative coordinates of the representative.
    pub fn neg(&self) -> VarSet {
        self.positions(|c| matches!(c, DegreeClass::Deep | DegreeClass::MinusOne))
    }

    pub fn minus_ones(&self) -> VarSet {
        self.positions(|c| c == DegreeClass::MinusOne)
    }

    fn positions(&self, pred: impl Fn(DegreeClass) -> bool) -> VarSet {
        let mut s = VarSet::EMPTY;
        for (j, &c) in self.0.iter().enumerate() {
            if pred(c) {
                s = s.insert(j);
            }
        }
        s
    }

    /// Same vector with `Pos` replaced by `Zero`. Shifts are at most one per
    /// coordinate, so both classes give identical complexes.
    pub fn canonical(&self) -> Self {
        ClassVector(
            self.0
                .iter()
                .map(|&c| if c == DegreeClass::Pos { DegreeClass::Zero } else { c })
                .collect(),
        )
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A `Z^n`-graded module whose piece at `a` depends only on the class
/// vector of `a`, with `x_j` an isomorphism inside the deep and inside the
/// positive class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClassModule {
    n: usize,
    dims: Vec<usize>,
}

/// Outcome of [`is_finitely_generated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteGeneration {
    Finite,
    /// A class vector with a deep coordinate and a nonzero piece.
    NotFinite { witness: ClassVector },
}

impl FiniteGeneration {
    pub fn is_finite(&self) -> bool {
        matches!(self, FiniteGeneration::Finite)
    }

    pub fn witness(&self) -> Option<&ClassVector> {
        match self {
            FiniteGeneration::Finite => None,
            FiniteGeneration::NotFinite { witness } => Some(witness),
        }
    }
}

impl GradedClassModule {
    pub fn new(n: usize, dims: Vec<usize>) -> Result<Self, Error> {
        if n > MAX_CLASS_VARIABLES {
            return Err(Error::UnsupportedVariableCount(n));
        }
        if dims.len() != 1 << (2 * n) {
            return Err(Error::Precondition(alloc::format!(
                "class module over n = {n} needs {} pieces",
                1usize << (2 * n)
            )));
        }
        Ok(GradedClassModule { n, dims })
    }

    /// A pattern module viewed through the class grid: deep and `-1` are
    /// the negative classes.
    pub fn from_pattern_module<F: Field>(module: &PatternModule<F>) -> Result<Self, Error> {
        let n = module.n();
        if n > MAX_CLASS_VARIABLES {
            return Err(Error::UnsupportedVariableCount(n));
        }
        let dims = ClassVector::all(n).map(|c| module.dim(c.neg())).collect();
        Ok(GradedClassModule { n, dims })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, class: &ClassVector) -> usize {
        self.dims[class.index()]
    }

    pub fn dim_at(&self, a: &Multidegree) -> usize {
        self.dim(&ClassVector::of_degree(a))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn nonzero_classes(&self) -> impl Iterator<Item = (ClassVector, usize)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (ClassVector::from_index(self.n, i), d))
    }
}

/// Finitely generated iff every class with a deep coordinate vanishes.
///
/// A nonzero deep piece propagates isomorphically towards `-∞` in that
/// coordinate, which no finitely generated graded module allows. Otherwise
/// nonzero degrees are bounded below by `-1` in every coordinate and the
/// module is generated by the finitely many pieces in `{-1, 0}^n`.
pub fn is_finitely_generated(module: &GradedClassModule) -> FiniteGeneration {
    module
        .nonzero_classes()
        .find(|(c, _)| c.has_deep())
        .map_or(FiniteGeneration::Finite, |(witness, _)| FiniteGeneration::NotFinite { witness })
}

/// The Taylor resolution of `R/J` on the minimal generators of `J`.
#[derive(Clone, Debug)]
pub struct TaylorComplex {
    n: usize,
    system: GeneratorSystem,
}

impl TaylorComplex {
    pub fn length(&self) -> usize {
        self.system.len()
    }

    /// Basis of `F_t`: generator subsets with their shifts `U_T`.
    pub fn term(&self, t: usize) -> Vec<(u32, VarSet)> {
        self.system
            .subsets_of_size(t)
            .iter()
            .map(|&s| (s, self.system.union(s)))
            .collect()
    }

    pub(crate) fn system(&self) -> &GeneratorSystem {
        &self.system
    }

    /// Degree-`a` slice of the free complex `F_k -> ... -> F_0`, with
    /// `maps[t]: (F_t)_a -> (F_{t-1})_a` for `t >= 1` (`maps[0]` is empty).
    /// `R(-e_U)_a` is `k` iff `a - e_U >= 0`.
    pub fn degree_slice<F: Field>(&self, field: &F, a: &Multidegree) -> Vec<Matrix<F::Elem>> {
        let present = |u: VarSet| {
            a.0.iter().enumerate().all(|(j, &x)| x - i64::from(u.contains(j)) >= 0)
        };
        let basis: Vec<Vec<u32>> = (0..=self.length())
            .map(|t| self.term(t).into_iter().filter(|&(_, u)| present(u)).map(|(s, _)| s).collect())
            .collect();
        let mut maps = alloc::vec![Matrix::zeros(field, 0, basis[0].len())];
        for t in 1..=self.length() {
            let mut m = Matrix::zeros(field, basis[t - 1].len(), basis[t].len());
            for (c, &subset) in basis[t].iter().enumerate() {
                // d(e_T) = sum_{i in T} (-1)^{pos(i)} (m_T / m_{T \ i}) e_{T \ i}
                for (pos, i) in (0..self.length()).filter(|&i| subset >> i & 1 == 1).enumerate() {
                    let face = subset & !(1 << i);
                    if let Some(r) = basis[t - 1].iter().position(|&s| s == face) {
                        let sign = if pos % 2 == 1 { -1 } else { 1 };
                        m.set(r, c, field.from_i64(sign));
                    }
                }
            }
            maps.push(m);
        }
        maps
    }
}

/// The Taylor complex of `R/J`; accepts the zero ideal (resolution `R`) and
/// the unit ideal (the exact complex `R -> R`).
pub fn taylor_complex(ideal: &SquarefreeMonomialIdeal) -> Result<TaylorComplex, Error> {
    Ok(TaylorComplex { n: ideal.n(), system: GeneratorSystem::new(ideal.generators())? })
}

/// Dimension of `Ext^l(R/J, M)` in the degree with class vector `class`.
pub fn ext_piece<F: Field>(
    taylor: &TaylorComplex,
    module: &PatternModule<F>,
    l: usize,
    class: &ClassVector,
) -> usize {
    SubsetComplex::new(taylor.system(), module, class.neg(), class.minus_ones()).cohomology_dim(l)
}

/// `Ext^l_R(R/J, M)` as a class module; `l = 0` gives `Hom(R/J, M)`.
pub fn ext_against<F: Field>(
    ideal: &SquarefreeMonomialIdeal,
    module: &PatternModule<F>,
    l: usize,
) -> Result<GradedClassModule, Error> {
    if ideal.n() != module.n() {
        return Err(Error::RingMismatch { left: ideal.n(), right: module.n() });
    }
    let n = module.n();
    if n > MAX_CLASS_VARIABLES {
        return Err(Error::UnsupportedVariableCount(n));
    }
    let taylor = taylor_complex(ideal)?;
    let classes: Vec<ClassVector> = ClassVector::all(n).collect();
    // evaluate canonical representatives only, then spread to Pos classes
    let canonical: Vec<usize> =
        (0..classes.len()).filter(|&i| classes[i].canonical() == classes[i]).collect();
    let values = par::map_vec(&canonical, |&i| ext_piece(&taylor, module, l, &classes[i]));
    let mut by_canonical = alloc::vec![0usize; classes.len()];
    for (&i, &d) in canonical.iter().zip(&values) {
        by_canonical[i] = d;
    }
    let dims = classes.iter().map(|c| by_canonical[c.canonical().index()]).collect();
    Ok(GradedClassModule { n, dims })
}

/// Exactness of the Taylor complex in one degree: `H_t = 0` for `t > 0` and
/// `H_0` is the degree-`a` piece of `R/J`.
pub fn taylor_homology_dims<F: Field>(field: &F, taylor: &TaylorComplex, a: &Multidegree) -> Vec<usize> {
    let maps = taylor.degree_slice(field, a);
    let k = taylor.length();
    let dims: Vec<usize> = (0..=k).map(|t| maps[t].cols()).collect();
    let ranks: Vec<usize> = (0..=k).map(|t| if t == 0 { 0 } else { linalg::rank(field, &maps[t]) }).collect();
    (0..=k)
        .map(|t| dims[t] - ranks[t] - if t < k { ranks[t + 1] } else { 0 })
        .collect()
}

impl TaylorComplex {
    pub fn n(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::local_cohomology;
    use crate::field::Rationals;

    fn v(vars: &[usize]) -> VarSet {
        VarSet::from_vars(vars)
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::normalize(n, gens.iter().map(|g| v(g))).unwrap()
    }

    fn cv(classes: &[i64]) -> ClassVector {
        ClassVector(classes.iter().map(|&c| DegreeClass::of(c)).collect())
    }

    #[test]
    fn class_vector_indexing_roundtrip() {
        for (i, c) in ClassVector::all(3).enumerate() {
            assert_eq!(c.index(), i);
        }
        assert_eq!(cv(&[-5, -1, 7]).representative(), Multidegree(alloc::vec![-2, -1, 1]));
    }

    #[test]
    fn taylor_shifts_of_mixed_ideal() {
        let t = taylor_complex(&ideal(3, &[&[1, 2], &[1, 3]])).unwrap();
        let shifts: Vec<VarSet> = (0..=2).flat_map(|k| t.term(k)).map(|(_, u)| u).collect();
        assert_eq!(shifts, alloc::vec![v(&[]), v(&[1, 2]), v(&[1, 3]), v(&[1, 2, 3])]);
    }

    #[test]
    fn taylor_resolution_is_exact_on_box() {
        for j in [ideal(1, &[&[1]]), ideal(3, &[&[2], &[3]]), ideal(3, &[&[1, 2], &[1, 3]])] {
            let t = taylor_complex(&j).unwrap();
            let n = j.n();
            let box_points = (0..3usize.pow(n as u32)).map(|mut code| {
                let mut a = alloc::vec![0i64; n];
                for x in a.iter_mut() {
                    *x = (code % 3) as i64 - 1;
                    code /= 3;
                }
                Multidegree(a)
            });
            for a in box_points {
                let h = taylor_homology_dims(&Rationals, &t, &a);
                let in_quotient = a.0.iter().all(|&x| x >= 0) && !j.contains_monomial(support_of(&a));
                assert_eq!(h[0], usize::from(in_quotient), "H_0 at {a:?}");
                assert!(h[1..].iter().all(|&d| d == 0), "higher homology at {a:?}: {h:?}");
            }
        }
    }

    fn support_of(a: &Multidegree) -> VarSet {
        let mut s = VarSet::EMPTY;
        for (j, &x) in a.0.iter().enumerate() {
            if x > 0 {
                s = s.insert(j);
            }
        }
        s
    }

    #[test]
    fn hom_into_mixed_example_not_finite() {
        let i = ideal(3, &[&[1, 2], &[1, 3]]);
        let h = local_cohomology(&Rationals, &i, 2).unwrap();
        let p = SquarefreeMonomialIdeal::prime(3, v(&[2, 3]));
        let hom = ext_against(&p, &h, 0).unwrap();
        for c in [&[-2, -1, -1], &[-1, -1, -1], &[0, -1, -1], &[1, -1, -1]] {
            assert_eq!(hom.dim(&cv(c)), 1, "class {:?}", c);
        }
        assert_eq!(hom.nonzero_classes().count(), 4);
        let fg = is_finitely_generated(&hom);
        assert_eq!(fg.witness(), Some(&cv(&[-2, -1, -1])));
    }

    #[test]
    fn ext_into_zero_module_vanishes() {
        let z = PatternModule::zero(Rationals, 3);
        for j in [ideal(3, &[&[1]]), ideal(3, &[&[1, 2], &[2, 3]])] {
            for l in 0..3 {
                assert!(ext_against(&j, &z, l).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn hull_is_injective() {
        let e = PatternModule::injective_hull(Rationals, 1, v(&[1]));
        let ext1 = ext_against(&ideal(1, &[&[1]]), &e, 1).unwrap();
        assert!(ext1.is_zero());
    }

    #[test]
    fn ext_one_of_prime_cohomology_vanishes() {
        let p = SquarefreeMonomialIdeal::prime(3, v(&[2, 3]));
        let h = local_cohomology(&Rationals, &p, 2).unwrap();
        assert!(ext_against(&p, &h, 1).unwrap().is_zero());
    }

    #[test]
    fn socle_of_top_cohomology() {
        let m = SquarefreeMonomialIdeal::maximal(3);
        let h = local_cohomology(&Rationals, &m, 3).unwrap();
        let hom = ext_against(&m, &h, 0).unwrap();
        assert!(is_finitely_generated(&hom).is_finite());
        let nonzero: Vec<_> = hom.nonzero_classes().collect();
        assert_eq!(nonzero, alloc::vec![(cv(&[-1, -1, -1]), 1)]);
    }

    #[test]
    fn zero_module_is_finite() {
        let z = GradedClassModule::new(2, alloc::vec![0; 16]).unwrap();
        assert!(is_finitely_generated(&z).is_finite());
    }
}
