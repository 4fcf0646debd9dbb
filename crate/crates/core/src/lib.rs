//! Local cohomology of squarefree monomial ideals in `k[x_1, ..., x_n]`,
//! computed in the `Z^n`-graded category.
//!
//! Graded pieces of `H^i_I(R)` depend only on the negativity pattern of the
//! degree, so every module in play is a finite [`PatternModule`]. On top of
//! that representation the crate computes Hom/Ext against `R/J`, Bass numbers
//! at monomial primes, injective dimension, support dimension and
//! cofiniteness verdicts. An independent brute-force evaluator over explicit
//! degree boxes lives in [`oracle`].
//!
//! The crate is `no_std` + `alloc` unless the `parallel` feature (default)
//! is enabled, which evaluates patterns on the rayon pool.
#![cfg_attr(not(feature = "parallel"), no_std)]

extern crate alloc;

pub mod cech;
pub mod combinatorics;
pub mod complex;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod mayer_vietoris;
pub mod oracle;
pub mod par;
pub mod pattern;

pub use cech::{cech_complex, local_cohomology, local_cohomology_of, CechComplex};
pub use combinatorics::{MonomialPrime, RingConfig, SquarefreeMonomialIdeal, VarSet};
pub use error::Error;
pub use field::{BaseField, Field, PrimeField, Rationals};
pub use pattern::{module_equal, Multidegree, PatternModule};
