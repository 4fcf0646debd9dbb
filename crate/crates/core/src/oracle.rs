//! Brute-force graded pieces over an explicit box of multidegrees.
//!
//! Nothing here relies on pattern constancy. Every degree in the box gets
//! its own complex, built from the localization rule (`R_{x^U}` has a
//! one-dimensional piece at `a` iff every negative coordinate of `a` lies
//! in `U`) or, for Ext, from single-step multiplications of the input
//! module. Ranks use separate elimination code: fraction-free Bareiss over
//! big integers in characteristic zero, plain modular elimination in
//! characteristic `p`, and a full-pivoting Gaussian elimination for
//! arbitrary field elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{SquarefreeMonomialIdeal, VarSet};
use crate::error::Error;
use crate::field::{BaseField, Field};
use crate::invariants::{ClassVector, GradedClassModule};
use crate::par;
use crate::pattern::{Multidegree, PatternModule};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
    budget: u128,
}

impl DegreeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self, Error> {
        Self::with_budget(lo, hi, DEFAULT_BUDGET)
    }

    /// `[lo, hi]^n`
    pub fn cube(n: usize, lo: i64, hi: i64) -> Result<Self, Error> {
        Self::new(alloc::vec![lo; n], alloc::vec![hi; n])
    }

    pub fn with_budget(lo: Vec<i64>, hi: Vec<i64>, budget: u128) -> Result<Self, Error> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidBox(format!(
                "bounds have lengths {} and {}",
                lo.len(),
                hi.len()
            )));
        }
        if let Some(j) = (0..lo.len()).find(|&j| lo[j] > hi[j]) {
            return Err(Error::InvalidBox(format!("lo > hi in coordinate {}", j + 1)));
        }
        let b = DegreeBox { lo, hi, budget };
        let volume = b.volume();
        if volume > budget {
            return Err(Error::BudgetExceeded { volume, budget });
        }
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> u128 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(&l, &h)| (h - l + 1) as u128)
            .fold(1u128, |acc, w| acc.saturating_mul(w))
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        a.n() == self.n() && a.0.iter().enumerate().all(|(j, &x)| self.lo[j] <= x && x <= self.hi[j])
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<Multidegree> {
        let mut out = Vec::with_capacity(self.volume() as usize);
        let mut cur = self.lo.clone();
        loop {
            out.push(Multidegree(cur.clone()));
            let mut j = self.n();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < self.hi[j] {
                    cur[j] += 1;
                    cur[j + 1..].copy_from_slice(&self.lo[j + 1..]);
                    break;
                }
            }
        }
    }
}

/// Piece dimensions at every point of a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxedModule {
    pub region: DegreeBox,
    /// Lexicographic in the degree.
    pub pieces: Vec<(Multidegree, usize)>,
}

impl BoxedModule {
    pub fn dim_at(&self, a: &Multidegree) -> Option<usize> {
        self.pieces.binary_search_by(|(b, _)| b.cmp(a)).ok().map(|k| self.pieces[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|(_, d)| *d == 0)
    }

    /// One line per degree: `a1 a2 ... an  dim`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (a, d) in &self.pieces {
            let coords: Vec<String> = a.0.iter().map(|x| format!("{x}")).collect();
            let _ = writeln!(out, "{}  {d}", coords.join(" "));
        }
        out
    }
}

/// Generator subsets of size `t`, lexicographic.
fn subsets_of_size(k: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(k: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(k, t, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(k, t, 0, &mut cur, &mut out);
    out
}

fn union_of(gens: &[VarSet], subset: &[usize]) -> VarSet {
    subset.iter().fold(VarSet::EMPTY, |acc, &i| acc.union(gens[i]))
}

fn negative_part(a: &Multidegree) -> VarSet {
    let mut s = VarSet::EMPTY;
    for (j, &x) in a.0.iter().enumerate() {
        if x < 0 {
            s = s.insert(j);
        }
    }
    s
}

/// The degree-`a` slice of the Čech complex: basis of slot `t` and the
/// integer matrix of `d: slot t -> slot t+1`.
struct CechSlice {
    bases: Vec<Vec<Vec<usize>>>,
    maps: Vec<Vec<Vec<i64>>>,
}

fn cech_slice(gens: &[VarSet], a: &Multidegree) -> CechSlice {
    let k = gens.len();
    let neg = negative_part(a);
    let bases: Vec<Vec<Vec<usize>>> = (0..=k)
        .map(|t| {
            subsets_of_size(k, t)
                .into_iter()
                .filter(|s| neg.is_subset(union_of(gens, s)))
                .collect()
        })
        .collect();
    let maps = (0..k)
        .map(|t| {
            let (src, tgt) = (&bases[t], &bases[t + 1]);
            let mut m = alloc::vec![alloc::vec![0i64; src.len()]; tgt.len()];
            for (r, big) in tgt.iter().enumerate() {
                for (pos, &i) in big.iter().enumerate() {
                    let small: Vec<usize> = big.iter().copied().filter(|&x| x != i).collect();
                    if let Some(c) = src.iter().position(|s| *s == small) {
                        m[r][c] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            m
        })
        .collect();
    CechSlice { bases, maps }
}

/// Rank of an integer matrix over `Q` (Bareiss) or `GF(p)`.
pub fn integer_rank(field: BaseField, m: &[Vec<i64>]) -> usize {
    match field {
        BaseField::Rationals => bareiss_rank(m),
        BaseField::Prime(p) => modular_rank(p, m),
    }
}

fn bareiss_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = &a[rank][c] * &a[r][cc] - &a[r][c] * &a[rank][cc];
                a[r][cc] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn modular_rank(p: u64, m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let pi = p as i128;
    let mut a: Vec<Vec<u64>> =
        m.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(pi) as u64).collect()).collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        // Fermat
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let scale = inv(a[rank][c]);
        for r in rank + 1..rows {
            if a[r][c] == 0 {
                continue;
            }
            let f = mul(a[r][c], scale);
            for cc in c..cols {
                let sub = mul(f, a[rank][cc]);
                a[r][cc] = (a[r][cc] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over an arbitrary [`Field`] by elimination with full pivot search.
fn field_rank<F: Field>(field: &F, mut a: Vec<Vec<F::Elem>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let pivot = (rank..rows)
            .flat_map(|r| (rank..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !field.is_zero(&a[r][c]));
        let Some((pr, pc)) = pivot else {
            break;
        };
        a.swap(rank, pr);
        for row in a.iter_mut() {
            row.swap(rank, pc);
        }
        let inv = field.inv(&a[rank][rank]);
        for r in rank + 1..rows {
            if field.is_zero(&a[r][rank]) {
                continue;
            }
            let f = field.mul(&a[r][rank], &inv);
            for c in rank..cols {
                let v = field.sub(&a[r][c], &field.mul(&f, &a[rank][c]));
                a[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

fn check_ring(ideal: &SquarefreeMonomialIdeal, region: &DegreeBox) -> Result<(), Error> {
    if ideal.n() != region.n() {
        return Err(Error::RingMismatch { left: ideal.n(), right: region.n() });
    }
    Ok(())
}

/// `dim H^i_I(R)_a` for every `a` in the box.
pub fn boxed_local_cohomology(
    field: BaseField,
    ideal: &SquarefreeMonomialIdeal,
    i: usize,
    region: &DegreeBox,
) -> Result<BoxedModule, Error> {
    check_ring(ideal, region)?;
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::ZeroOrUnitIdeal);
    }
    let gens = ideal.generators();
    let points = region.points();
    let dims = par::map_vec(&points, |a| {
        let slice = cech_slice(gens, a);
        let Some(basis) = slice.bases.get(i) else {
            return 0;
        };
        let r_out = slice.maps.get(i).map_or(0, |m| integer_rank(field, m));
        let r_in = if i == 0 { 0 } else { integer_rank(field, &slice.maps[i - 1]) };
        basis.len() - r_out - r_in
    });
    Ok(BoxedModule { region: region.clone(), pieces: points.into_iter().zip(dims).collect() })
}

/// Human-readable dump of the Čech slice at one degree.
pub fn describe_cech_slice(ideal: &SquarefreeMonomialIdeal, a: &Multidegree) -> String {
    let slice = cech_slice(ideal.generators(), a);
    let mut out = String::new();
    let _ = writeln!(out, "Čech slice of {ideal} at {:?}", a.0);
    for (t, basis) in slice.bases.iter().enumerate() {
        let names: Vec<String> = basis
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|i| format!("{}", i + 1)).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(out, "  C^{t}: [{}]", names.join(" "));
        if let Some(m) = slice.maps.get(t) {
            for row in m {
                let _ = writeln!(out, "    {row:?}");
            }
        }
    }
    out
}

/// Multiplication `M_from -> M_to` for `from <= to`, one variable step at a
/// time through the degree lattice.
fn multiply<F: Field>(module: &PatternModule<F>, from: &Multidegree, to: &Multidegree) -> Vec<Vec<F::Elem>> {
    let field = module.field();
    let start = module.piece_dim(from);
    let mut acc: Vec<Vec<F::Elem>> =
        (0..start).map(|r| (0..start).map(|c| if r == c { field.one() } else { field.zero() }).collect()).collect();
    let mut cur = from.clone();
    for j in 0..cur.n() {
        while cur.0[j] < to.0[j] {
            let mut next = cur.clone();
            next.0[j] += 1;
            if cur.0[j] == -1 {
                let step = module.umap(negative_part(&cur), j);
                acc = (0..step.rows())
                    .map(|r| {
                        (0..start)
                            .map(|c| {
                                (0..step.cols()).fold(field.zero(), |s, k| {
                                    field.add(&s, &field.mul(step.get(r, k), &acc[k][c]))
                                })
                            })
                            .collect()
                    })
                    .collect();
            }
            cur = next;
        }
    }
    acc
}

/// `dim Ext^l(R/J, M)_a` for every `a` in the box, from the degree-`a`
/// slice of `Hom(Taylor(J), M)`: the term for `T` is `M_{a + e_{U_T}}`.
pub fn boxed_ext<F: Field>(
    ideal: &SquarefreeMonomialIdeal,
    module: &PatternModule<F>,
    l: usize,
    region: &DegreeBox,
) -> Result<BoxedModule, Error> {
    check_ring(ideal, region)?;
    if module.n() != region.n() {
        return Err(Error::RingMismatch { left: module.n(), right: region.n() });
    }
    let gens = ideal.generators();
    let k = gens.len();
    let field = module.field();
    let shifted = |a: &Multidegree, u: VarSet| {
        Multidegree(a.0.iter().enumerate().map(|(j, &x)| x + i64::from(u.contains(j))).collect())
    };
    let points = region.points();
    let dims = par::map_vec(&points, |a| {
        if l > k {
            return 0;
        }
        let term_dim = |t: usize| -> usize {
            subsets_of_size(k, t).iter().map(|s| module.piece_dim(&shifted(a, union_of(gens, s)))).sum()
        };
        // d: slot t -> slot t+1, block (T ∪ i, T) = sign * multiplication
        let differential = |t: usize| -> Vec<Vec<F::Elem>> {
            let src = subsets_of_size(k, t);
            let tgt = subsets_of_size(k, t + 1);
            let src_off: Vec<usize> = src
                .iter()
                .scan(0, |o, s| {
                    let here = *o;
                    *o += module.piece_dim(&shifted(a, union_of(gens, s)));
                    Some(here)
                })
                .collect();
            let cols = term_dim(t);
            let mut m = Vec::new();
            for big in &tgt {
                let to = shifted(a, union_of(gens, big));
                let rows = module.piece_dim(&to);
                let mut block = alloc::vec![alloc::vec![field.zero(); cols]; rows];
                for (pos, &i) in big.iter().enumerate() {
                    let small: Vec<usize> = big.iter().copied().filter(|&x| x != i).collect();
                    let c = src.iter().position(|s| *s == small).expect("face of a subset");
                    let from = shifted(a, union_of(gens, &small));
                    let mult = multiply(module, &from, &to);
                    for (r, row) in mult.iter().enumerate() {
                        for (cc, v) in row.iter().enumerate() {
                            block[r][src_off[c] + cc] = if pos % 2 == 0 { v.clone() } else { field.neg(v) };
                        }
                    }
                }
                m.extend(block);
            }
            m
        };
        let dim = term_dim(l);
        if dim == 0 {
            return 0;
        }
        let r_out = if l < k { field_rank(field, differential(l)) } else { 0 };
        let r_in = if l > 0 { field_rank(field, differential(l - 1)) } else { 0 };
        dim - r_out - r_in
    });
    Ok(BoxedModule { region: region.clone(), pieces: points.into_iter().zip(dims).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: Multidegree,
    pub expected: usize,
    pub boxed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub points_checked: usize,
    pub mismatch: Option<Mismatch>,
}

impl CrossValidation {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn compare(boxed: &BoxedModule, expected: impl Fn(&Multidegree) -> usize) -> CrossValidation {
    let mismatch = boxed.pieces.iter().find_map(|(a, d)| {
        let e = expected(a);
        (e != *d).then(|| Mismatch { degree: a.clone(), expected: e, boxed: *d })
    });
    CrossValidation { points_checked: boxed.pieces.len(), mismatch }
}

/// Piece-by-piece agreement of a pattern module with boxed data.
pub fn cross_validate<F: Field>(module: &PatternModule<F>, boxed: &BoxedModule) -> Result<CrossValidation, Error> {
    if module.n() != boxed.region.n() {
        return Err(Error::RingMismatch { left: module.n(), right: boxed.region.n() });
    }
    Ok(compare(boxed, |a| module.piece_dim(a)))
}

/// Piece-by-piece agreement of a class module with boxed data.
pub fn cross_validate_classes(module: &GradedClassModule, boxed: &BoxedModule) -> Result<CrossValidation, Error> {
    if module.n() != boxed.region.n() {
        return Err(Error::RingMismatch { left: module.n(), right: boxed.region.n() });
    }
    Ok(compare(boxed, |a| module.dim(&ClassVector::of_degree(a))))
}

/// Whether boxed dimensions are constant on degrees sharing a key.
pub fn constant_on<K: Ord>(boxed: &BoxedModule, key: impl Fn(&Multidegree) -> K) -> bool {
    let mut seen = alloc::collections::BTreeMap::new();
    boxed.pieces.iter().all(|(a, d)| *seen.entry(key(a)).or_insert(*d) == *d)
}
