//! Base fields for the exact linear algebra.
//!
//! Two backends: the rationals (exact, with an `i64` fast path that promotes
//! to big rationals on overflow) and prime fields `F_p` with `p < 2^32`.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;

/// Identifies a base field independently of its element representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_characteristic(p: u64) -> Result<Self, Error> {
        if p == 0 {
            return Ok(BaseField::Rationals);
        }
        PrimeField::new(p).map(|f| BaseField::Prime(f.p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => f.write_str("QQ"),
            BaseField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field given as a value; elements are plain data and every operation
/// goes through the field object.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> BaseField;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `a - b * c`, the elimination inner loop.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::NotAPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> BaseField {
        BaseField::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = b * c % self.p;
        (a + self.p - bc) % self.p
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// An exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are always stored as
/// `Small`; `Big` only holds values that do not, so derived equality is
/// value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    pub fn integer(v: i64) -> Self {
        Rat::Small(v, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut num, mut den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational keeps lowest terms with positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(r) => r.is_zero(),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(r) => write!(f, "{r}"),
        }
    }
}

impl Field for Rationals {
    type Elem = Rat;

    fn descriptor(&self) -> BaseField {
        BaseField::Rationals
    }
    fn zero(&self) -> Rat {
        Rat::Small(0, 1)
    }
    fn one(&self) -> Rat {
        Rat::Small(1, 1)
    }
    fn from_i64(&self, v: i64) -> Rat {
        Rat::Small(v, 1)
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(0, _), _) => b.clone(),
            (_, Rat::Small(0, _)) => a.clone(),
            (Rat::Small(n1, d1), Rat::Small(n2, d2)) => {
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                if d1 == d2 {
                    return Rat::from_i128(n1 + n2, d1);
                }
                match (n1 * d2).checked_add(n2 * d1) {
                    Some(num) => Rat::from_i128(num, d1 * d2),
                    None => Rat::from_big(a.to_big() + b.to_big()),
                }
            }
            _ => Rat::from_big(a.to_big() + b.to_big()),
        }
    }
    fn neg(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Rat::from_big(-a.to_big()),
            },
            Rat::Big(r) => Rat::from_big(-r.clone()),
        }
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => self.zero(),
            (Rat::Small(n1, d1), Rat::Small(n2, d2)) => Rat::from_i128(
                *n1 as i128 * *n2 as i128,
                *d1 as i128 * *d2 as i128,
            ),
            _ => Rat::from_big(a.to_big() * b.to_big()),
        }
    }
    fn inv(&self, a: &Rat) -> Rat {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        match a {
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }
    fn is_one(&self, a: &Rat) -> bool {
        matches!(a, Rat::Small(1, 1))
    }
    fn sub_mul(&self, a: &Rat, b: &Rat, c: &Rat) -> Rat {
        if b.is_zero() || c.is_zero() {
            return a.clone();
        }
        self.sub(a, &self.mul(b, c))
    }
}
