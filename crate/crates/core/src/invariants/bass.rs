//! Bass numbers at monomial primes and what they determine.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{MonomialPrime, VarSet};
use crate::complex::{GeneratorSystem, SubsetComplex};
use crate::error::Error;
use crate::field::Field;
use crate::par;
use crate::pattern::PatternModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BassValue {
    Finite(usize),
    Infinite,
}

impl BassValue {
    pub fn is_zero(self) -> bool {
        self == BassValue::Finite(0)
    }
}

impl fmt::Display for BassValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BassValue::Finite(v) => write!(f, "{v}"),
            BassValue::Infinite => f.write_str("infinite"),
        }
    }
}

/// Per-prime Bass numbers for levels `0..=n`, keyed by prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BassTable {
    n: usize,
    entries: BTreeMap<VarSet, Vec<BassValue>>,
}

impl BassTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, prime: MonomialPrime, j: usize) -> BassValue {
        self.entries
            .get(&prime.vars())
            .and_then(|levels| levels.get(j).copied())
            .unwrap_or(BassValue::Finite(0))
    }

    /// Nonzero entries as `(prime, level, value)`, primes in lexicographic
    /// order of their variable lists.
    pub fn nonzero(&self) -> Vec<(MonomialPrime, usize, BassValue)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .flat_map(|(&s, levels)| {
                levels
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, &v)| (MonomialPrime(s), j, v))
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.vars().lex_cmp(&b.0.vars())));
        out
    }

    pub fn has_infinite(&self) -> bool {
        self.entries.values().flatten().any(|&v| v == BassValue::Infinite)
    }
}

/// All levels of the Bass numbers at `(x_S)`.
///
/// Inverting the variables outside `S` makes the `W = S^c` coordinates
/// irrelevant, so the localized module is read at `a_W = 0`, where its
/// pattern is that of `M` itself. The Koszul complex on `x_S` then computes
/// `Ext(R/(x_S), M_W)` class by class over the `S` coordinates, and its
/// rank over `k[x_W^{±1}]` is the sum of the pieces over `S`-degrees.
pub fn bass_levels<F: Field>(prime: MonomialPrime, module: &PatternModule<F>) -> Vec<BassValue> {
    let n = module.n();
    let s: Vec<usize> = prime.vars().iter().collect();
    let koszul: Vec<VarSet> = s.iter().map(|&j| VarSet::single(j)).collect();
    let system = GeneratorSystem::new(&koszul).expect("at most 16 variables");
    let mut levels = alloc::vec![BassValue::Finite(0); n + 1];
    // classes over S with digits 0 = deep, 1 = -1, 2 = 0 (pos duplicates 0)
    let classes = 3usize.pow(s.len() as u32);
    for code in 0..classes {
        let (mut neg, mut minus_ones, mut unbounded) = (VarSet::EMPTY, VarSet::EMPTY, false);
        let mut rest = code;
        for &j in &s {
            match rest % 3 {
                0 => {
                    neg = neg.insert(j);
                    unbounded = true;
                }
                1 => {
                    neg = neg.insert(j);
                    minus_ones = minus_ones.insert(j);
                }
                _ => unbounded = true,
            }
            rest /= 3;
        }
        let dims = SubsetComplex::new(&system, module, neg, minus_ones).cohomology_dims();
        for (j, &d) in dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            levels[j] = match (levels[j], unbounded) {
                (_, true) | (BassValue::Infinite, _) => BassValue::Infinite,
                (BassValue::Finite(v), false) => BassValue::Finite(v + d),
            };
        }
    }
    levels
}

pub fn bass_number<F: Field>(prime: MonomialPrime, j: usize, module: &PatternModule<F>) -> BassValue {
    bass_levels(prime, module).get(j).copied().unwrap_or(BassValue::Finite(0))
}

/// Bass numbers at every monomial prime.
pub fn bass_table<F: Field>(module: &PatternModule<F>) -> BassTable {
    let primes: Vec<VarSet> = VarSet::all(module.n()).collect();
    let levels = par::map_vec(&primes, |&s| bass_levels(MonomialPrime(s), module));
    let entries = primes
        .into_iter()
        .zip(levels)
        .filter(|(_, l)| l.iter().any(|v| !v.is_zero()))
        .collect();
    BassTable { n: module.n(), entries }
}

/// `n - min{|N| : piece(N) ≠ 0}`: the pattern-`N` pieces are supported
/// along `V(x_N)`.
pub fn support_dimension<F: Field>(module: &PatternModule<F>) -> Result<usize, Error> {
    module
        .support_patterns()
        .map(|p| p.len())
        .min()
        .map(|m| module.n() - m)
        .ok_or(Error::ZeroModule)
}

/// Top level with a nonzero Bass number.
pub fn injective_dimension<F: Field>(module: &PatternModule<F>) -> Result<usize, Error> {
    injective_dimension_from(&bass_table(module))
}

pub fn injective_dimension_from(table: &BassTable) -> Result<usize, Error> {
    if table.has_infinite() {
        return Err(Error::InfiniteBassNumber);
    }
    table.nonzero().iter().map(|&(_, j, _)| j).max().ok_or(Error::ZeroModule)
}

/// Levels of a minimal injective resolution, as `E(R/p)` multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionShape {
    pub levels: Vec<Vec<(MonomialPrime, usize)>>,
}

impl ResolutionShape {
    pub fn length(&self) -> usize {
        self.levels.len()
    }
}

impl fmt::Display for ResolutionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, level) in self.levels.iter().enumerate() {
            if j > 0 {
                f.write_str(" -> ")?;
            }
            for (k, (p, m)) in level.iter().enumerate() {
                if k > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "E(R/{p})")?;
                if *m > 1 {
                    write!(f, "^{m}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn resolution_shape<F: Field>(module: &PatternModule<F>) -> Result<ResolutionShape, Error> {
    resolution_shape_from(&bass_table(module))
}

pub fn resolution_shape_from(table: &BassTable) -> Result<ResolutionShape, Error> {
    let top = injective_dimension_from(table)?;
    let mut levels = alloc::vec![Vec::new(); top + 1];
    for (p, j, v) in table.nonzero() {
        if let BassValue::Finite(m) = v {
            levels[j].push((p, m));
        }
    }
    Ok(ResolutionShape { levels })
}

/// Primes with `μ_0 ≠ 0`, in lexicographic order.
pub fn associated_primes<F: Field>(module: &PatternModule<F>) -> Vec<MonomialPrime> {
    associated_primes_from(&bass_table(module))
}

pub fn associated_primes_from(table: &BassTable) -> Vec<MonomialPrime> {
    table.nonzero().into_iter().filter(|&(_, j, _)| j == 0).map(|(p, _, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::local_cohomology;
    use crate::combinatorics::SquarefreeMonomialIdeal;
    use crate::field::Rationals;

    fn v(vars: &[usize]) -> VarSet {
        VarSet::from_vars(vars)
    }

    fn p(vars: &[usize]) -> MonomialPrime {
        MonomialPrime(v(vars))
    }

    #[test]
    fn ring_is_gorenstein() {
        for n in 1..=4 {
            let r = PatternModule::ring(Rationals, n);
            for s in VarSet::all(n) {
                let levels = bass_levels(MonomialPrime(s), &r);
                for (j, &mu) in levels.iter().enumerate() {
                    let expected = usize::from(j == s.len());
                    assert_eq!(mu, BassValue::Finite(expected), "n={n} S={s:?} j={j}");
                }
            }
        }
    }

    #[test]
    fn hull_has_one_bass_number() {
        let n = 3;
        for s in VarSet::all(n) {
            let e = PatternModule::injective_hull(Rationals, n, s);
            let table = bass_table(&e);
            assert_eq!(table.nonzero(), alloc::vec![(MonomialPrime(s), 0, BassValue::Finite(1))]);
            let shape = resolution_shape_from(&table).unwrap();
            assert_eq!(shape.levels, alloc::vec![alloc::vec![(MonomialPrime(s), 1)]]);
            assert_eq!(associated_primes_from(&table), alloc::vec![MonomialPrime(s)]);
        }
    }

    #[test]
    fn mixed_example_invariants() {
        let i = SquarefreeMonomialIdeal::normalize(3, [v(&[1, 2]), v(&[1, 3])]).unwrap();
        let h = local_cohomology(&Rationals, &i, 2).unwrap();
        assert_eq!(support_dimension(&h).unwrap(), 1);
        assert_eq!(injective_dimension(&h).unwrap(), 0);
        let table = bass_table(&h);
        assert_eq!(table.nonzero(), alloc::vec![(p(&[2, 3]), 0, BassValue::Finite(1))]);
    }

    #[test]
    fn ring_resolution_runs_to_maximal_ideal() {
        let r = PatternModule::ring(Rationals, 2);
        let shape = resolution_shape(&r).unwrap();
        assert_eq!(shape.length(), 3);
        assert_eq!(shape.levels[0], alloc::vec![(p(&[]), 1)]);
        assert_eq!(shape.levels[1], alloc::vec![(p(&[1]), 1), (p(&[2]), 1)]);
        assert_eq!(shape.levels[2], alloc::vec![(p(&[1, 2]), 1)]);
        assert_eq!(shape.to_string(), "E(R/(0)) -> E(R/(x1)) + E(R/(x2)) -> E(R/(x1,x2))");
    }

    #[test]
    fn zero_module_errors() {
        let z = PatternModule::zero(Rationals, 2);
        assert_eq!(support_dimension(&z), Err(Error::ZeroModule));
        assert_eq!(injective_dimension(&z), Err(Error::ZeroModule));
    }

    #[test]
    fn top_cohomology_of_maximal_ideal_is_hull() {
        let h = local_cohomology(&Rationals, &SquarefreeMonomialIdeal::maximal(3), 3).unwrap();
        assert_eq!(injective_dimension(&h).unwrap(), 0);
        assert_eq!(support_dimension(&h).unwrap(), 0);
    }
}
