//! Homological invariants of pattern modules: Hom/Ext against `R/J`,
//! finite generation, Bass numbers, injective and support dimension,
//! cofiniteness.

pub mod bass;
pub mod class;
pub mod cofinite;

pub use bass::{
    associated_primes, bass_levels, bass_number, bass_table, injective_dimension, resolution_shape,
    support_dimension, BassTable, BassValue, ResolutionShape,
};
pub use class::{
    ext_against, is_finitely_generated, taylor_complex, ClassVector, DegreeClass,
    FiniteGeneration, GradedClassModule, TaylorComplex,
};
pub use cofinite::{
    check_gen_bass, check_hom_vanishing, check_nonfg_thresholds, check_on_ext,
    cohomological_dimension, is_cofinite, CofiniteOptions, CofinitenessVerdict, PropertyReport,
    Verdict,
};
