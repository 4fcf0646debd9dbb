//! Named worked instances with their expected values.
//!
//! Every check pairs an expected value with the computed one and a short
//! statement of the claim it backs. Values are compared as rendered strings
//! so a report can print the diff directly.

use std::fmt::Display;

use gradedlc_core::combinatorics::MonomialPrime;
use gradedlc_core::invariants::{
    associated_primes, bass_levels, cohomological_dimension, ext_against, injective_dimension, is_cofinite,
    is_finitely_generated, resolution_shape, support_dimension, CofiniteOptions, CofinitenessVerdict,
};
use gradedlc_core::mayer_vietoris::mayer_vietoris_check;
use gradedlc_core::{
    local_cohomology, local_cohomology_of, module_equal, Error as CoreError, Field, PatternModule, RingConfig,
    SquarefreeMonomialIdeal, VarSet,
};

use crate::parser::parse_and_evaluate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub name: &'static str,
    pub n: usize,
    pub ideal: &'static str,
    pub i: usize,
    pub summary: &'static str,
}

pub const SCENARIOS: &[ScenarioSpec] = &[
    ScenarioSpec {
        name: "mixed",
        n: 3,
        ideal: "(x1*x2, x1*x3)",
        i: 2,
        summary: "H^2 of (x1*x2, x1*x3): an injective hull that is not cofinite",
    },
    ScenarioSpec {
        name: "series-1",
        n: 5,
        ideal: "V(x1,x2) & V(x3,x4) & V(x5,x1)",
        i: 3,
        summary: "three codimension-2 components in five variables, top cohomology in degree 3",
    },
    ScenarioSpec {
        name: "series-2",
        n: 6,
        ideal: "V(x1,x2) & V(x3,x4) & V(x5,x6)",
        i: 4,
        summary: "three disjoint codimension-2 components, degree 4",
    },
    ScenarioSpec {
        name: "series-3",
        n: 6,
        ideal: "V(x1,x2) & V(x3,x4) & V(x5,x6)",
        i: 3,
        summary: "three disjoint codimension-2 components, degree 3",
    },
    ScenarioSpec {
        name: "series-4",
        n: 7,
        ideal: "V(x1,x2,x3) & V(x4,x5,x6) & V(x7,x1,x2)",
        i: 5,
        summary: "three codimension-3 components in seven variables, degree 5",
    },
    ScenarioSpec {
        name: "series-5",
        n: 7,
        ideal: "V(x1,x2,x3) & V(x4,x5,x6) & V(x7,x1,x4)",
        i: 5,
        summary: "three codimension-3 components with injdim 0 and dim 1",
    },
    ScenarioSpec {
        name: "remark-fails",
        n: 1,
        ideal: "(x1)",
        i: 1,
        summary: "one variable: injdim differs from depth",
    },
    ScenarioSpec {
        name: "gor-ci",
        n: 4,
        ideal: "(x1*x2, x3*x4)",
        i: 2,
        summary: "single nonvanishing degree: injdim = dim = dim R/I",
    },
    ScenarioSpec {
        name: "lyubeznik-cd",
        n: 5,
        ideal: "V(x1,x2) & V(x3,x4) & V(x5,x1)",
        i: 3,
        summary: "cd = d - s over the series ideals",
    },
];

pub fn find(name: &str) -> Option<&'static ScenarioSpec> {
    SCENARIOS.iter().find(|s| s.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    SCENARIOS.iter().map(|s| s.name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub citation: &'static str,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub spec: &'static ScenarioSpec,
    pub checks: Vec<Check>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn eq(&mut self, label: impl Into<String>, expected: impl Display, computed: impl Display, citation: &'static str) {
        self.0.push(Check {
            label: label.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            citation,
        });
    }

    fn holds(&mut self, label: impl Into<String>, computed: bool, citation: &'static str) {
        self.eq(label, true, computed, citation);
    }
}

fn ideal(text: &str, n: usize) -> Result<SquarefreeMonomialIdeal, CoreError> {
    parse_and_evaluate(text, n).map_err(|e| CoreError::Precondition(e.to_string()))
}

fn hull<F: Field>(field: &F, n: usize, vars: &[usize]) -> PatternModule<F> {
    PatternModule::injective_hull(field.clone(), n, VarSet::from_vars(vars))
}

fn shown<T: Display>(r: Result<T, CoreError>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn prime_list(primes: &[MonomialPrime]) -> String {
    let parts: Vec<String> = primes.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn verdict_of<F: Field>(ideal: &SquarefreeMonomialIdeal, m: &PatternModule<F>) -> Result<CofinitenessVerdict, CoreError> {
    is_cofinite(ideal, m, CofiniteOptions::default())
}

pub fn run<F: Field>(field: &F, spec: &'static ScenarioSpec) -> Result<ScenarioOutcome, CoreError> {
    let mut c = Checks(Vec::new());
    let n = spec.n;
    let i_ideal = ideal(spec.ideal, n)?;
    let h = local_cohomology(field, &i_ideal, spec.i)?;
    match spec.name {
        "mixed" => mixed(field, &mut c, &i_ideal, &h)?,
        "series-1" => series_one(field, &mut c, &i_ideal, &h)?,
        "series-2" => series_two(field, &mut c, &i_ideal, &h)?,
        "series-3" => series_three(field, &mut c, &i_ideal, &h)?,
        "series-4" => series_four(field, &mut c, &i_ideal, &h)?,
        "series-5" => series_five(field, &mut c, &i_ideal, &h)?,
        "remark-fails" => remark_fails(&mut c, &i_ideal, &h)?,
        "gor-ci" => gor_ci(field, &mut c, &h)?,
        "lyubeznik-cd" => lyubeznik(field, &mut c)?,
        other => return Err(CoreError::Precondition(format!("unknown scenario {other}"))),
    }
    Ok(ScenarioOutcome { spec, checks: c.0 })
}

fn mixed<F: Field>(
    field: &F,
    c: &mut Checks,
    i: &SquarefreeMonomialIdeal,
    h: &PatternModule<F>,
) -> Result<(), CoreError> {
    const CITE: &str = "mixed example: H = H^2_I(R) is E(R/(x2,x3)), injdim 0, dim 1";
    const CITE_COF: &str = "mixed example: Hom(R/(x2,x3), H) is not finitely generated, so H is not I-cofinite";
    c.eq("dim H", 1, shown(support_dimension(h)), CITE);
    c.eq("injdim H", 0, shown(injective_dimension(h)), CITE);
    c.holds("H = E(R/(x2,x3))", module_equal(h, &hull(field, 3, &[2, 3])), CITE);
    c.eq("Ass H", "{(x2,x3)}", prime_list(&associated_primes(h)), CITE);
    let v = verdict_of(i, h)?;
    c.eq("cofiniteness verdict", "not-cofinite", v.verdict.as_str(), CITE_COF);
    c.eq(
        "first failing Ext level and witness",
        "0 (deep,-1,-1)",
        v.ext_witness().map_or_else(|| "none".to_string(), |(l, w)| format!("{l} {w}")),
        CITE_COF,
    );
    let q = SquarefreeMonomialIdeal::prime(3, VarSet::from_vars(&[2, 3]));
    let hom = ext_against(&q, h, 0)?;
    c.holds("Hom(R/(x2,x3), H) not finitely generated", !is_finitely_generated(&hom).is_finite(), CITE_COF);

    const CITE_MV: &str = "mixed example: Mayer-Vietoris for (x1) and (x2,x3) identifies H with H^2_{(x2,x3)}(R)_x1";
    let x1 = SquarefreeMonomialIdeal::prime(3, VarSet::from_vars(&[1]));
    let mv = mayer_vietoris_check(field, &x1, &q)?;
    c.holds("Mayer-Vietoris sequence exact", mv.is_exact() && mv.engine_agrees(), CITE_MV);
    let h2q = local_cohomology(field, &q, 2)?;
    c.holds("H = H^2_{(x2,x3)}(R) with x1 inverted", module_equal(h, &h2q.invert_variables(VarSet::from_vars(&[1]))), CITE_MV);
    c.holds(
        "Ext^1(R/(x2,x3), H^2_{(x2,x3)}(R)) = 0",
        ext_against(&q, &h2q, 1)?.is_zero(),
        "mixed example: the Ext^1 term of the sequence vanishes",
    );
    Ok(())
}

fn series_one<F: Field>(
    field: &F,
    c: &mut Checks,
    i: &SquarefreeMonomialIdeal,
    h: &PatternModule<F>,
) -> Result<(), CoreError> {
    const CITE: &str = "series instance 1: cd = 5 - s = 3 and H = H^3_I(R) has injdim = dim = 1";
    const CITE_RES: &str = "series instance 1: minimal injective resolution E(R/(x1,x2,x3,x4)) + E(R/(x1,x3,x4,x5)) -> E(R/m)";
    let n = 5;
    c.eq("cd(I)", 3, shown(cohomological_dimension(field, i)), CITE);
    c.eq("dim H", 1, shown(support_dimension(h)), CITE);
    c.eq("injdim H", 1, shown(injective_dimension(h)), CITE);
    c.eq(
        "resolution of H",
        "E(R/(x1,x2,x3,x4)) + E(R/(x1,x3,x4,x5)) -> E(R/(x1,x2,x3,x4,x5))",
        shown(resolution_shape(h)),
        CITE_RES,
    );
    c.eq("Ass H", "{(x1,x2,x3,x4), (x1,x3,x4,x5)}", prime_list(&associated_primes(h)), CITE_RES);
    c.eq("cofiniteness verdict", "not-cofinite", verdict_of(i, h)?.verdict.as_str(), CITE);

    const CITE_ID: &str = "series instance 1: H = H^4 of (x1,x2,x3,x4) & (x1,x3,x4,x5), with Gamma_{(x2,x5)}(H) = 0 and H^1_{(x2,x5)}(H) = E(R/m)";
    let aux = ideal("V(x1,x2,x3,x4) & V(x1,x3,x4,x5)", n)?;
    c.holds("H = H^4_{(x1,x2,x3,x4) & (x1,x3,x4,x5)}(R)", module_equal(h, &local_cohomology(field, &aux, 4)?), CITE_ID);
    let q = ideal("(x2, x5)", n)?;
    c.holds("Gamma_{(x2,x5)}(H) = 0", local_cohomology_of(&q, h, 0)?.is_zero(), CITE_ID);
    c.holds(
        "H^1_{(x2,x5)}(H) = E(R/m)",
        module_equal(&local_cohomology_of(&q, h, 1)?, &hull(field, n, &[1, 2, 3, 4, 5])),
        CITE_ID,
    );
    Ok(())
}

fn series_two<F: Field>(
    field: &F,
    c: &mut Checks,
    i: &SquarefreeMonomialIdeal,
    h: &PatternModule<F>,
) -> Result<(), CoreError> {
    const CITE: &str = "series instance 2: cd = 6 - s = 4 and H = H^4_I(R) has injdim = dim = 0";
    const CITE_MV: &str = "series instance 2: Mayer-Vietoris gives H = H^5 of (x1,x2,x5,x6) & (x3,x4,x5,x6)";
    let n = 6;
    c.eq("cd(I)", 4, shown(cohomological_dimension(field, i)), CITE);
    c.eq("dim H", 0, shown(support_dimension(h)), CITE);
    c.eq("injdim H", 0, shown(injective_dimension(h)), CITE);
    let aux = ideal("V(x1,x2,x5,x6) & V(x3,x4,x5,x6)", n)?;
    c.holds("H = H^5_{(x1,x2,x5,x6) & (x3,x4,x5,x6)}(R)", module_equal(h, &local_cohomology(field, &aux, 5)?), CITE_MV);
    let mv = mayer_vietoris_check(field, &ideal("V(x1,x2) & V(x3,x4)", n)?, &ideal("V(x5,x6)", n)?)?;
    c.holds("sequence exact", mv.is_exact() && mv.engine_agrees(), CITE_MV);
    c.holds("connecting map H^4_I -> H^5_sum is an isomorphism", mv.connecting_is_isomorphism(4), CITE_MV);
    c.eq(
        "cofiniteness verdict",
        "not-cofinite",
        verdict_of(i, h)?.verdict.as_str(),
        "H^l_I(R) with l above bigheight is I-cofinite only if it vanishes",
    );
    Ok(())
}

fn series_three<F: Field>(
    field: &F,
    c: &mut Checks,
    i: &SquarefreeMonomialIdeal,
    h: &PatternModule<F>,
) -> Result<(), CoreError> {
    const CITE: &str = "series instance 3: H = H^3_I(R) has injdim = dim = 2 and H^2_m(H) != 0";
    let n = 6;
    c.eq("dim H", 2, shown(support_dimension(h)), CITE);
    c.eq("injdim H", 2, shown(injective_dimension(h)), CITE);
    let m = SquarefreeMonomialIdeal::maximal(n);
    c.holds("H^2_m(H) != 0", !local_cohomology_of(&m, h, 2)?.is_zero(), CITE);
    let h4 = local_cohomology(field, &ideal("V(x1,x2,x5,x6)", n)?, 4)?;
    c.holds(
        "H^2_m(H^4_{(x1,x2,x5,x6)}(R)) = H^6_m(R)",
        module_equal(&local_cohomology_of(&m, &h4, 2)?, &local_cohomology(field, &m, 6)?),
        CITE,
    );
    c.eq("cofiniteness verdict", "not-cofinite", verdict_of(i, h)?.verdict.as_str(), CITE);
    Ok(())
}

fn series_four<F: Field>(
    field: &F,
    c: &mut Checks,
    i: &SquarefreeMonomialIdeal,
    h: &PatternModule<F>,
) -> Result<(), CoreError> {
    const CITE: &str = "series instance 4: H = H^5_I(R) has injdim = dim = 1 and is not I-cofinite";
    c.eq("cd(I)", 5, shown(cohomological_dimension(field, i)), CITE);
    c.eq("dim H", 1, shown(support_dimension(h)), CITE);
    c.eq("injdim H", 1, shown(injective_dimension(h)), CITE);
    c.eq("cofiniteness verdict", "not-cofinite", verdict_of(i, h)?.verdict.as_str(), CITE);
    Ok(())
}

fn series_five<F: Field>(
    field: &F,
    c: &mut Checks,
    i: &SquarefreeMonomialIdeal,
    h: &PatternModule<F>,
) -> Result<(), CoreError> {
    const CITE: &str = "series instance 5: H = H^5_I(R) = E(R/(x1,...,x6)), injdim 0 while dim 1";
    const CITE_X7: &str = "series instance 5: Gamma_{x7}(H) = 0 and H^1_{x7}(H) = 0, so H = H^6_Sigma(R)";
    const CITE_RES: &str = "series instance 5: 0 -> H^6_{(x1,...,x6)}(R) -> E(R/(x1,...,x6)) -> E(R/(x1,...,x7)) -> 0";
    let n = 7;
    let x7 = ideal("(x7)", n)?;
    c.holds("Gamma_{x7}(H) = 0", local_cohomology_of(&x7, h, 0)?.is_zero(), CITE_X7);
    c.holds("H^1_{x7}(H) = 0", local_cohomology_of(&x7, h, 1)?.is_zero(), CITE_X7);
    let sigma = ideal("(V(x1,x2,x3) & V(x7,x1,x4)) + V(x4,x5,x6)", n)?;
    c.eq("Sigma", "(x1, x4, x5, x6, x2*x7, x3*x7)", &sigma, CITE_X7);
    c.holds("H = H^6_Sigma(R)", module_equal(h, &local_cohomology(field, &sigma, 6)?), CITE_X7);
    c.holds("H = E(R/(x1,...,x6))", module_equal(h, &hull(field, n, &[1, 2, 3, 4, 5, 6])), CITE);
    let p6 = ideal("V(x1,x2,x3,x4,x5,x6)", n)?;
    let h6 = local_cohomology(field, &p6, 6)?;
    c.holds("H = H^6_{(x1,...,x6)}(R) with x7 inverted", module_equal(h, &h6.invert_variables(VarSet::from_vars(&[7]))), CITE);
    c.eq("injdim H", 0, shown(injective_dimension(h)), CITE);
    c.eq("dim H", 1, shown(support_dimension(h)), CITE);
    c.eq(
        "resolution of H^6_{(x1,...,x6)}(R)",
        "E(R/(x1,x2,x3,x4,x5,x6)) -> E(R/(x1,x2,x3,x4,x5,x6,x7))",
        shown(resolution_shape(&h6)),
        CITE_RES,
    );
    c.eq("cofiniteness verdict", "not-cofinite", verdict_of(i, h)?.verdict.as_str(), CITE);
    Ok(())
}

fn remark_fails<F: Field>(c: &mut Checks, i: &SquarefreeMonomialIdeal, h: &PatternModule<F>) -> Result<(), CoreError> {
    const CITE: &str = "one-variable contrast: M = H^1_(x)(k[x]) has injdim 0 while depth R = 1";
    let ring = RingConfig::new(1, gradedlc_core::BaseField::Rationals)?;
    c.eq("injdim M", 0, shown(injective_dimension(h)), CITE);
    c.eq("dim M", 0, shown(support_dimension(h)), CITE);
    c.eq("depth R", 1, ring.depth(), CITE);
    c.eq(
        "cofiniteness verdict",
        "cofinite",
        verdict_of(i, h)?.verdict.as_str(),
        "m-cofinite modules are exactly the artinian ones",
    );
    Ok(())
}

fn gor_ci<F: Field>(field: &F, c: &mut Checks, h: &PatternModule<F>) -> Result<(), CoreError> {
    const CITE_GOR: &str = "R is Gorenstein: mu_j(p, R) = 1 if j = height p, else 0";
    const CITE: &str = "one nonvanishing H^l_I(R): injdim = dim = dim R/I";
    let n = 4;
    let ring = PatternModule::ring(field.clone(), n);
    let mut gorenstein = true;
    let mut single_degree = true;
    for s in VarSet::all(n) {
        let levels = bass_levels(MonomialPrime(s), &ring);
        gorenstein &= levels
            .iter()
            .enumerate()
            .all(|(j, mu)| mu.to_string() == usize::from(j == s.len()).to_string());
        if s.is_empty() {
            continue;
        }
        let hs = local_cohomology(field, &SquarefreeMonomialIdeal::prime(n, s), s.len())?;
        let want = n - s.len();
        single_degree &= support_dimension(&hs) == Ok(want) && injective_dimension(&hs) == Ok(want);
    }
    c.holds("mu_j(p_S, R) = delta(j, |S|) for all S, n = 4", gorenstein, CITE_GOR);
    c.holds("injdim = dim = n - |S| for H^|S|_{p_S}(R), n = 4", single_degree, CITE);
    let ci = ideal("(x1*x2, x3*x4)", n)?;
    c.eq("nonvanishing degrees for (x1*x2, x3*x4)", "[2]", format!("{:?}", gradedlc_core::cech::nonvanishing_degrees(field, &ci)?), CITE);
    c.eq("dim R/I", 2, shown(ci.quotient_dimension()), CITE);
    c.eq("dim H", 2, shown(support_dimension(h)), CITE);
    c.eq("injdim H", 2, shown(injective_dimension(h)), CITE);
    Ok(())
}

/// `(d, ideal, b)`: an ideal in `d` variables whose minimal primes all have
/// height `b`.
const LYUBEZNIK_INSTANCES: &[(usize, &str, usize)] = &[
    (5, "V(x1,x2) & V(x3,x4) & V(x5,x1)", 2),
    (6, "V(x1,x2) & V(x3,x4) & V(x5,x6)", 2),
    (7, "V(x1,x2,x3) & V(x4,x5,x6) & V(x7,x1,x2)", 3),
    (7, "V(x1,x2,x3) & V(x4,x5,x6) & V(x7,x1,x4)", 3),
];

fn lyubeznik<F: Field>(field: &F, c: &mut Checks) -> Result<(), CoreError> {
    const CITE: &str = "cd(I) = d - s with s the largest integer not exceeding (d - 1)/b";
    for &(d, text, b) in LYUBEZNIK_INSTANCES {
        let i = ideal(text, d)?;
        let primes = i.minimal_primes()?;
        let equal_height = primes.iter().all(|p| p.height() == b);
        let s = (d - 1) / b;
        c.holds(format!("{text}: components of height {b}"), equal_height, CITE);
        c.eq(format!("{text}: cd (d = {d}, b = {b}, s = {s})"), d - s, shown(cohomological_dimension(field, &i)), CITE);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gradedlc_core::{PrimeField, Rationals};

    #[test]
    fn every_scenario_passes() {
        for spec in SCENARIOS {
            let out = run(&Rationals, spec).unwrap();
            let failed: Vec<_> = out.failures().collect();
            assert!(failed.is_empty(), "{}: {failed:?}", spec.name);
            assert!(!out.checks.is_empty());
        }
    }

    #[test]
    fn scenarios_agree_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        for name in ["mixed", "series-1", "gor-ci"] {
            assert!(run(&f, find(name).unwrap()).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn checks_carry_citations() {
        let out = run(&Rationals, find("mixed").unwrap()).unwrap();
        assert!(out.checks.iter().all(|c| !c.citation.is_empty()));
    }
}
