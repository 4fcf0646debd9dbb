//! Variable sets and squarefree monomial ideals.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::field::BaseField;

pub const MAX_VARIABLES: usize = 16;

/// The ambient ring `k[x_1, ..., x_n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingConfig {
    pub n: usize,
    pub field: BaseField,
}

impl RingConfig {
    pub fn new(n: usize, field: BaseField) -> Result<Self, Error> {
        if n == 0 || n > MAX_VARIABLES {
            return Err(Error::UnsupportedVariableCount(n));
        }
        Ok(RingConfig { n, field })
    }

    /// The polynomial ring is Cohen-Macaulay, so its depth is `n`.
    pub fn depth(&self) -> usize {
        self.n
    }
}

/// A subset of `{x_1, ..., x_n}`; bit `j` stands for `x_{j+1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u16);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u16) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARIABLES);
        VarSet(((1u32 << n) - 1) as u16)
    }

    /// From 1-based variable indices.
    pub fn from_vars(vars: &[usize]) -> Self {
        let mut bits = 0u16;
        for &v in vars {
            assert!((1..=MAX_VARIABLES).contains(&v), "variable index {v} out of range");
            bits |= 1 << (v - 1);
        }
        VarSet(bits)
    }

    /// Singleton for the 0-based position `j`.
    pub fn single(j: usize) -> Self {
        VarSet(1 << j)
    }

    pub fn contains(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        VarSet(self.0 & !other.0)
    }

    pub fn insert(self, j: usize) -> Self {
        VarSet(self.0 | 1 << j)
    }

    pub fn remove(self, j: usize) -> Self {
        VarSet(self.0 & !(1 << j))
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        VarSet::full(n).minus(self)
    }

    /// 0-based positions in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_VARIABLES).filter(move |&j| bits >> j & 1 == 1)
    }

    /// 1-based variable indices.
    pub fn vars(self) -> Vec<usize> {
        self.iter().map(|j| j + 1).collect()
    }

    /// Size first, then lexicographic on the sorted index lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.lex_cmp(other))
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }

    /// All subsets of `{0..n-1}`, by bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = VarSet> {
        (0..1u32 << n).map(|b| VarSet(b as u16))
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut next = Some(0u16);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(VarSet(cur))
        })
    }

    pub fn monomial(self) -> MonomialDisplay {
        MonomialDisplay(self)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.vars().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Renders a support as the squarefree monomial `x1*x3`, or `1` when empty.
pub struct MonomialDisplay(VarSet);

impl fmt::Display for MonomialDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, v) in self.0.vars().iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A monomial prime `(x_i : i in S)`; the empty set is the zero prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime(pub VarSet);

impl MonomialPrime {
    pub fn vars(&self) -> VarSet {
        self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn as_ideal(&self, n: usize) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::prime(n, self.0)
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, v) in self.0.vars().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{v}")?;
        }
        f.write_str(")")
    }
}

/// A squarefree monomial ideal, stored as its minimal generator supports.
///
/// No generator contains another and generators are sorted by size, then
/// lexicographically. An empty list is the zero ideal, `[{}]` the unit ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquarefreeMonomialIdeal {
    n: usize,
    gens: Vec<VarSet>,
}

impl SquarefreeMonomialIdeal {
    /// Normal form of the ideal generated by the given supports.
    pub fn normalize(n: usize, gens: impl IntoIterator<Item = VarSet>) -> Result<Self, Error> {
        if n == 0 || n > MAX_VARIABLES {
            return Err(Error::UnsupportedVariableCount(n));
        }
        let full = VarSet::full(n);
        let mut all: Vec<VarSet> = Vec::new();
        for g in gens {
            if !g.is_subset(full) {
                let index = g.minus(full).iter().next().unwrap_or(0) + 1;
                return Err(Error::VariableOutOfRange { index, n });
            }
            all.push(g);
        }
        Ok(Self::from_supports_unchecked(n, all))
    }

    fn from_supports_unchecked(n: usize, mut all: Vec<VarSet>) -> Self {
        all.sort_by(VarSet::canonical_cmp);
        all.dedup();
        let mut gens: Vec<VarSet> = Vec::with_capacity(all.len());
        // sorted by size, so any generator contained in g precedes it
        for g in all {
            if !gens.iter().any(|h| h.is_subset(g)) {
                gens.push(g);
            }
        }
        SquarefreeMonomialIdeal { n, gens }
    }

    pub fn zero(n: usize) -> Self {
        SquarefreeMonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        SquarefreeMonomialIdeal { n, gens: alloc::vec![VarSet::EMPTY] }
    }

    /// The monomial prime generated by the variables in `vars`.
    pub fn prime(n: usize, vars: VarSet) -> Self {
        Self::from_supports_unchecked(n, vars.iter().map(VarSet::single).collect())
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(n: usize) -> Self {
        Self::prime(n, VarSet::full(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[VarSet] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_empty())
    }

    /// Whether the squarefree monomial with support `support` lies in the ideal.
    pub fn contains_monomial(&self, support: VarSet) -> bool {
        self.gens.iter().any(|g| g.is_subset(support))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(*g))
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::RingMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_ring(other)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                lcms.push(a.union(*b));
            }
        }
        Ok(Self::from_supports_unchecked(self.n, lcms))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_ring(other)?;
        let all = self.gens.iter().chain(other.gens.iter()).copied().collect();
        Ok(Self::from_supports_unchecked(self.n, all))
    }

    /// Inclusion-minimal vertex covers of the generator supports.
    pub fn minimal_primes(&self) -> Result<Vec<MonomialPrime>, Error> {
        if self.is_zero() || self.is_unit() {
            return Err(Error::NoPrimeDecomposition);
        }
        let mut covers: Vec<VarSet> = VarSet::all(self.n)
            .filter(|s| self.gens.iter().all(|g| !g.is_disjoint(*s)))
            .collect();
        covers.sort_by(VarSet::canonical_cmp);
        let mut minimal: Vec<VarSet> = Vec::new();
        for c in covers {
            if !minimal.iter().any(|m| m.is_subset(c)) {
                minimal.push(c);
            }
        }
        Ok(minimal.into_iter().map(MonomialPrime).collect())
    }

    /// `(height, bigheight)`: the least and greatest height of a minimal prime.
    pub fn height_and_bigheight(&self) -> Result<(usize, usize), Error> {
        let primes = self.minimal_primes()?;
        let h = primes.iter().map(|p| p.height()).min().unwrap_or(0);
        let b = primes.iter().map(|p| p.height()).max().unwrap_or(0);
        Ok((h, b))
    }

    pub fn height(&self) -> Result<usize, Error> {
        Ok(self.height_and_bigheight()?.0)
    }

    /// Krull dimension of `R/I`.
    pub fn quotient_dimension(&self) -> Result<usize, Error> {
        Ok(self.n - self.height()?)
    }

    /// Union of all generator supports.
    pub fn support(&self) -> VarSet {
        self.gens.iter().fold(VarSet::EMPTY, |acc, g| acc.union(*g))
    }
}

impl fmt::Display for SquarefreeMonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.monomial())?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SquarefreeMonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in n={}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(vars: &[usize]) -> VarSet {
        VarSet::from_vars(vars)
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::normalize(n, gens.iter().map(|g| v(g))).unwrap()
    }

    fn prime(n: usize, vars: &[usize]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::prime(n, v(vars))
    }

    #[test]
    fn normalize_absorbs_and_orders() {
        assert_eq!(ideal(3, &[&[1, 2], &[1, 2, 3]]).generators(), &[v(&[1, 2])]);
        assert!(ideal(3, &[]).is_zero());
        assert_eq!(ideal(3, &[&[1, 3], &[1, 2]]).generators(), &[v(&[1, 2]), v(&[1, 3])]);
        assert_eq!(ideal(3, &[&[2, 3], &[1]]).generators(), &[v(&[1]), v(&[2, 3])]);
    }

    #[test]
    fn normalize_rejects_out_of_range() {
        let err = SquarefreeMonomialIdeal::normalize(2, [v(&[3])]).unwrap_err();
        assert_eq!(err, Error::VariableOutOfRange { index: 3, n: 2 });
    }

    #[test]
    fn intersection_of_mixed_components() {
        let i = prime(3, &[1]).intersect(&prime(3, &[2, 3])).unwrap();
        assert_eq!(i, ideal(3, &[&[1, 2], &[1, 3]]));
        let unit = SquarefreeMonomialIdeal::unit(3);
        assert_eq!(i.intersect(&unit).unwrap(), i);
    }

    #[test]
    fn triple_intersection_matches_membership() {
        let p = prime(5, &[1, 2])
            .intersect(&prime(5, &[3, 4]))
            .unwrap()
            .intersect(&prime(5, &[5, 1]))
            .unwrap();
        // Brute force over the exponent box {0,1}^5: a squarefree monomial lies
        // in an intersection of primes iff it meets every prime.
        let primes = [v(&[1, 2]), v(&[3, 4]), v(&[1, 5])];
        for t in VarSet::all(5) {
            let expected = primes.iter().all(|q| !q.is_disjoint(t));
            assert_eq!(p.contains_monomial(t), expected, "support {t:?}");
        }
        assert_eq!(
            p.generators(),
            &[v(&[1, 3]), v(&[1, 4]), v(&[2, 3, 5]), v(&[2, 4, 5])]
        );
    }

    #[test]
    fn sum_identity_of_sigma() {
        let lhs = prime(7, &[1, 2, 3])
            .intersect(&prime(7, &[7, 1, 4]))
            .unwrap()
            .sum(&prime(7, &[4, 5, 6]))
            .unwrap();
        let rhs = prime(7, &[1, 2, 3, 4, 5, 6]).intersect(&prime(7, &[1, 4, 5, 6, 7])).unwrap();
        assert_eq!(lhs, rhs);
        let z = SquarefreeMonomialIdeal::zero(7);
        assert_eq!(lhs.sum(&z).unwrap(), lhs);
        assert_eq!(prime(2, &[1]).sum(&prime(2, &[2])).unwrap(), prime(2, &[1, 2]));
    }

    #[test]
    fn minimal_primes_examples() {
        let mixed = ideal(3, &[&[1, 2], &[1, 3]]);
        assert_eq!(
            mixed.minimal_primes().unwrap(),
            vec![MonomialPrime(v(&[1])), MonomialPrime(v(&[2, 3]))]
        );
        assert_eq!(prime(2, &[1, 2]).minimal_primes().unwrap(), vec![MonomialPrime(v(&[1, 2]))]);
        let series = prime(5, &[1, 2])
            .intersect(&prime(5, &[3, 4]))
            .unwrap()
            .intersect(&prime(5, &[5, 1]))
            .unwrap();
        let mut got = series.minimal_primes().unwrap();
        got.sort();
        let mut want =
            vec![MonomialPrime(v(&[1, 2])), MonomialPrime(v(&[3, 4])), MonomialPrime(v(&[1, 5]))];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            SquarefreeMonomialIdeal::zero(3).minimal_primes(),
            Err(Error::NoPrimeDecomposition)
        );
        assert_eq!(
            SquarefreeMonomialIdeal::unit(3).minimal_primes(),
            Err(Error::NoPrimeDecomposition)
        );
    }

    #[test]
    fn heights() {
        assert_eq!(ideal(3, &[&[1, 2], &[1, 3]]).height_and_bigheight().unwrap(), (1, 2));
        let i = prime(6, &[1, 2])
            .intersect(&prime(6, &[3, 4]))
            .unwrap()
            .intersect(&prime(6, &[5, 6]))
            .unwrap();
        assert_eq!(i.height_and_bigheight().unwrap(), (2, 2));
        assert_eq!(prime(6, &[1, 2, 3]).height_and_bigheight().unwrap(), (3, 3));
    }

    #[test]
    fn subsets_enumeration() {
        let s = v(&[1, 3]);
        let subs: Vec<VarSet> = s.subsets().collect();
        assert_eq!(subs, vec![v(&[]), v(&[1]), v(&[3]), v(&[1, 3])]);
        assert_eq!(VarSet::EMPTY.subsets().count(), 1);
    }
}
