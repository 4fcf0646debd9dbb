//! Cofiniteness verdicts and the property checks built on them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::bass::{injective_dimension, support_dimension};
use super::class::{ext_against, is_finitely_generated, ClassVector, GradedClassModule};
use crate::cech::{local_cohomology, nonvanishing_degrees};
use crate::combinatorics::{SquarefreeMonomialIdeal, VarSet};
use crate::error::Error;
use crate::field::Field;
use crate::pattern::PatternModule;

/// A nonzero piece that some generator of `I` fails to kill.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportWitness {
    pub pattern: VarSet,
    pub generator: VarSet,
}

/// `Supp M ⊆ V(I)` holds iff `M` is `I`-torsion. A high power of a
/// generator `g` carries pattern `N` to `N \ g`, so the test is that every
/// such transition out of a nonzero piece vanishes.
pub fn support_witness<F: Field>(
    ideal: &SquarefreeMonomialIdeal,
    module: &PatternModule<F>,
) -> Option<SupportWitness> {
    let field = module.field();
    module.support_patterns().find_map(|pattern| {
        ideal.generators().iter().find_map(|&g| {
            let target = pattern.minus(g);
            let killed = module.dim(target) == 0
                || (target != pattern
                    && crate::linalg::is_zero_matrix(field, &module.transition(pattern, target)));
            (!killed).then_some(SupportWitness { pattern, generator: g })
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub level: usize,
    pub finitely_generated: bool,
    pub witness: Option<ClassVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Cofinite,
    NotCofinite,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Cofinite => "cofinite",
            Verdict::NotCofinite => "not-cofinite",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinitenessVerdict {
    pub supp_ok: bool,
    pub support_witness: Option<SupportWitness>,
    pub checked_levels: Vec<LevelCheck>,
    pub verdict: Verdict,
}

impl CofinitenessVerdict {
    /// The first failing Ext level with its deep-class witness.
    pub fn ext_witness(&self) -> Option<(usize, &ClassVector)> {
        self.checked_levels
            .iter()
            .find_map(|c| c.witness.as_ref().map(|w| (c.level, w)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CofiniteOptions {
    /// Highest Ext level examined; `None` means `n + 1`.
    pub max_level: Option<usize>,
    /// Treat levels above `min(#generators, n)` as zero.
    pub structural_cutoff: bool,
}

impl Default for CofiniteOptions {
    fn default() -> Self {
        CofiniteOptions { max_level: None, structural_cutoff: true }
    }
}

/// Levels past this vanish: the Taylor complex has length `#generators` and
/// `R/I` has projective dimension at most `n`.
pub fn structural_cutoff(ideal: &SquarefreeMonomialIdeal) -> usize {
    ideal.generators().len().min(ideal.n())
}

pub fn is_cofinite<F: Field>(
    ideal: &SquarefreeMonomialIdeal,
    module: &PatternModule<F>,
    options: CofiniteOptions,
) -> Result<CofinitenessVerdict, Error> {
    if ideal.n() != module.n() {
        return Err(Error::RingMismatch { left: ideal.n(), right: module.n() });
    }
    let support_witness = support_witness(ideal, module);
    let max_level = options.max_level.unwrap_or(module.n() + 1);
    let cutoff = structural_cutoff(ideal);
    let last = if options.structural_cutoff { max_level.min(cutoff) } else { max_level };
    let mut checked_levels = Vec::new();
    let mut failed = false;
    for level in 0..=last {
        let ext = ext_against(ideal, module, level)?;
        let fg = is_finitely_generated(&ext);
        let witness = fg.witness().cloned();
        checked_levels.push(LevelCheck { level, finitely_generated: witness.is_none(), witness });
        if !fg.is_finite() {
            failed = true;
            break;
        }
    }
    let verdict = if failed || support_witness.is_some() {
        Verdict::NotCofinite
    } else if options.structural_cutoff && max_level >= cutoff {
        Verdict::Cofinite
    } else {
        Verdict::Inconclusive
    };
    Ok(CofinitenessVerdict {
        supp_ok: support_witness.is_none(),
        support_witness,
        checked_levels,
        verdict,
    })
}

/// Largest `i` with `H^i_I(R) ≠ 0`.
pub fn cohomological_dimension<F: Field>(field: &F, ideal: &SquarefreeMonomialIdeal) -> Result<usize, Error> {
    nonvanishing_degrees(field, ideal)?
        .last()
        .copied()
        .ok_or_else(|| Error::Precondition(String::from("all local cohomology vanishes")))
}

/// Outcome of one of the property checks below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl PropertyReport {
    fn new(property: &'static str, holds: bool, detail: String) -> Self {
        PropertyReport { property, holds, detail }
    }
}

fn require_cofinite<F: Field>(ideal: &SquarefreeMonomialIdeal, module: &PatternModule<F>) -> Result<(), Error> {
    let verdict = is_cofinite(ideal, module, CofiniteOptions::default())?;
    if verdict.verdict != Verdict::Cofinite {
        return Err(Error::Precondition(format!("module is not certified {ideal}-cofinite")));
    }
    Ok(())
}

/// `dim M ≤ injdim M` for a certified cofinite module.
pub fn check_gen_bass<F: Field>(
    module: &PatternModule<F>,
    ideal: &SquarefreeMonomialIdeal,
) -> Result<PropertyReport, Error> {
    require_cofinite(ideal, module)?;
    let dim = support_dimension(module)?;
    let injdim = injective_dimension(module)?;
    Ok(PropertyReport::new("dim <= injdim", dim <= injdim, format!("dim = {dim}, injdim = {injdim}")))
}

/// `H^cd_I(R)` and `H^height_I(R)` are not finitely generated when the
/// respective index is positive.
pub fn check_nonfg_thresholds<F: Field>(field: &F, ideal: &SquarefreeMonomialIdeal) -> Result<PropertyReport, Error> {
    let cd = cohomological_dimension(field, ideal)?;
    let height = ideal.height()?;
    let mut holds = true;
    let mut detail = String::new();
    for (name, index) in [("cd", cd), ("height", height)] {
        if index == 0 {
            detail.push_str(&format!("{name} = 0 skipped; "));
            continue;
        }
        let h = local_cohomology(field, ideal, index)?;
        let fg = is_finitely_generated(&GradedClassModule::from_pattern_module(&h)?);
        match fg.witness() {
            Some(w) => detail.push_str(&format!("H^{index} ({name}) not f.g., witness {w}; ")),
            None => {
                holds = false;
                detail.push_str(&format!("H^{index} ({name}) is finitely generated; "));
            }
        }
    }
    Ok(PropertyReport::new("H^cd and H^height not finitely generated", holds, String::from(detail.trim_end_matches("; "))))
}

/// `Ext^l(R/J, M)` is finitely generated for `J ⊇ I` and cofinite `M`.
pub fn check_on_ext<F: Field>(
    ideal: &SquarefreeMonomialIdeal,
    module: &PatternModule<F>,
    j: &SquarefreeMonomialIdeal,
    levels: core::ops::RangeInclusive<usize>,
) -> Result<PropertyReport, Error> {
    if !j.contains_ideal(ideal) {
        return Err(Error::Precondition(format!("{j} does not contain {ideal}")));
    }
    require_cofinite(ideal, module)?;
    let mut failures = Vec::new();
    for l in levels.clone() {
        if let Some(w) = is_finitely_generated(&ext_against(j, module, l)?).witness() {
            failures.push(format!("Ext^{l} witness {w}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("levels {}..={} finitely generated", levels.start(), levels.end())
    } else {
        failures.join(", ")
    };
    Ok(PropertyReport::new("Ext against larger ideals finitely generated", failures.is_empty(), detail))
}

/// For `l > bigheight(I)`: `Hom(R/I, H^l_I(R))` finitely generated forces
/// `H^l_I(R) = 0`.
pub fn check_hom_vanishing<F: Field>(field: &F, ideal: &SquarefreeMonomialIdeal) -> Result<PropertyReport, Error> {
    let (_, bigheight) = ideal.height_and_bigheight()?;
    let mut violations = Vec::new();
    for l in bigheight + 1..=ideal.n() {
        let h = local_cohomology(field, ideal, l)?;
        if h.is_zero() {
            continue;
        }
        if is_finitely_generated(&ext_against(ideal, &h, 0)?).is_finite() {
            violations.push(l);
        }
    }
    let detail = if violations.is_empty() {
        format!("checked levels above bigheight {bigheight}")
    } else {
        format!("f.g. Hom into nonzero H^l at l = {violations:?}")
    };
    Ok(PropertyReport::new("Hom f.g. above bigheight only for zero modules", violations.is_empty(), detail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::invariants::class::DegreeClass;

    fn ideal(n: usize, gens: &[&[usize]]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::normalize(n, gens.iter().map(|g| VarSet::from_vars(g))).unwrap()
    }

    #[test]
    fn mixed_example_not_cofinite_at_level_zero() {
        let i = ideal(3, &[&[1, 2], &[1, 3]]);
        let h = local_cohomology(&Rationals, &i, 2).unwrap();
        let v = is_cofinite(&i, &h, CofiniteOptions::default()).unwrap();
        assert!(v.supp_ok);
        assert_eq!(v.verdict, Verdict::NotCofinite);
        let (level, w) = v.ext_witness().unwrap();
        assert_eq!(level, 0);
        assert!(w.has_deep());
        assert_eq!(v.checked_levels.len(), 1);
    }

    #[test]
    fn top_cohomology_of_maximal_ideal_is_cofinite() {
        let m = SquarefreeMonomialIdeal::maximal(3);
        let h = local_cohomology(&Rationals, &m, 3).unwrap();
        let v = is_cofinite(&m, &h, CofiniteOptions::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Cofinite);
        assert_eq!(v.checked_levels.len(), 4);
        assert!(check_gen_bass(&h, &m).unwrap().holds);
        assert!(check_on_ext(&m, &h, &m, 0..=3).unwrap().holds);
    }

    #[test]
    fn ring_fails_support() {
        let i = ideal(2, &[&[1]]);
        let r = PatternModule::ring(Rationals, 2);
        let v = is_cofinite(&i, &r, CofiniteOptions::default()).unwrap();
        assert!(!v.supp_ok);
        assert_eq!(v.support_witness.unwrap().pattern, VarSet::EMPTY);
        assert_eq!(v.verdict, Verdict::NotCofinite);
    }

    #[test]
    fn cutoff_disabled_is_inconclusive() {
        let m = SquarefreeMonomialIdeal::maximal(2);
        let h = local_cohomology(&Rationals, &m, 2).unwrap();
        let opts = CofiniteOptions { max_level: Some(1), structural_cutoff: false };
        assert_eq!(is_cofinite(&m, &h, opts).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn prime_cohomology_on_ext() {
        let p = ideal(3, &[&[2], &[3]]);
        let h = local_cohomology(&Rationals, &p, 2).unwrap();
        let report = check_on_ext(&p, &h, &SquarefreeMonomialIdeal::maximal(3), 0..=3).unwrap();
        assert!(report.holds, "{}", report.detail);
        let gb = check_gen_bass(&h, &p).unwrap();
        assert!(gb.holds);
        assert_eq!(gb.detail, "dim = 1, injdim = 1");
    }

    #[test]
    fn on_ext_rejects_smaller_ideal() {
        let p = ideal(3, &[&[2], &[3]]);
        let h = local_cohomology(&Rationals, &p, 2).unwrap();
        assert!(matches!(check_on_ext(&p, &h, &ideal(3, &[&[2]]), 0..=1), Err(Error::Precondition(_))));
    }

    #[test]
    fn cd_of_primes() {
        for s in [&[1][..], &[1, 2], &[1, 2, 3]] {
            let p = SquarefreeMonomialIdeal::prime(3, VarSet::from_vars(s));
            assert_eq!(cohomological_dimension(&Rationals, &p).unwrap(), s.len());
        }
    }

    #[test]
    fn thresholds_and_hom_vanishing() {
        let i = ideal(3, &[&[1, 2], &[1, 3]]);
        assert!(check_nonfg_thresholds(&Rationals, &i).unwrap().holds);
        assert!(check_hom_vanishing(&Rationals, &i).unwrap().holds);
        assert_eq!(DegreeClass::of(-7), DegreeClass::Deep);
    }
}
