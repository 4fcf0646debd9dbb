use gradedlc_core::cech::nonvanishing_degrees;
use gradedlc_core::invariants::{
    associated_primes, bass_table, cohomological_dimension, ext_against, injective_dimension, is_cofinite,
    resolution_shape, support_dimension, CofiniteOptions,
};
use gradedlc_core::linalg::rank;
use gradedlc_core::mayer_vietoris::{mayer_vietoris_check, MvSlot};
use gradedlc_core::oracle::{
    boxed_ext, boxed_local_cohomology, cross_validate, cross_validate_classes, describe_cech_slice, DegreeBox,
};
use gradedlc_core::{
    local_cohomology, BaseField, Error as CoreError, Field, PatternModule, PrimeField, Rationals,
    SquarefreeMonomialIdeal,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::parser::{parse_and_evaluate, ParseError};
use crate::report::{bass_json, class_json, pattern_json, ring_json, sorted_patterns, Report};
use crate::scenarios::{self, ScenarioOutcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid ideal: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// The ring and ideal a command operates on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub n: usize,
    pub ideal: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Lc { i: usize },
    Invariants { i: usize },
    Bass { i: usize },
    Resolve { i: usize },
    Cofinite { i: usize, max_level: Option<usize>, no_cutoff: bool },
    Cd,
    MvCheck { second: String, i: Option<usize> },
    OracleCheck { i: usize, bounds: Option<(i64, i64)>, dump: bool, against: Option<(String, usize)> },
    VerifyPaper { name: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lc { .. } => "lc",
            Command::Invariants { .. } => "invariants",
            Command::Bass { .. } => "bass",
            Command::Resolve { .. } => "resolve",
            Command::Cofinite { .. } => "cofinite",
            Command::Cd => "cd",
            Command::MvCheck { .. } => "mv-check",
            Command::OracleCheck { .. } => "oracle-check",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub field: BaseField,
    pub target: Option<Target>,
    pub command: Command,
}

const MONOMIAL_PRIME_NOTE: &str =
    "Bass numbers, injective dimension and associated primes are evaluated at monomial primes only";

pub fn run(request: &Request) -> Result<Report, CliError> {
    match request.field {
        BaseField::Rationals => run_with(&Rationals, request),
        BaseField::Prime(p) => run_with(&PrimeField::new(p)?, request),
    }
}

fn run_with<F: Field>(field: &F, request: &Request) -> Result<Report, CliError> {
    let mut report = Report::new(request.command.name());
    if let Command::VerifyPaper { name } = &request.command {
        verify_paper(field, request.field, name, &mut report)?;
        return Ok(report);
    }
    let target = request
        .target
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("{} needs --n and --ideal", request.command.name())))?;
    let ideal = parse_and_evaluate(&target.ideal, target.n)?;
    report.ring = ring_json(target.n, request.field);
    report.ideal = Value::from(ideal.to_string());
    let ctx = Ctx { field, base: request.field, ideal: &ideal };
    match &request.command {
        Command::Lc { i } => ctx.lc(*i, &mut report)?,
        Command::Invariants { i } => ctx.invariants(*i, &mut report)?,
        Command::Bass { i } => ctx.bass(*i, &mut report)?,
        Command::Resolve { i } => ctx.resolve(*i, &mut report)?,
        Command::Cofinite { i, max_level, no_cutoff } => ctx.cofinite(*i, *max_level, *no_cutoff, &mut report)?,
        Command::Cd => ctx.cd(&mut report)?,
        Command::MvCheck { second, i } => ctx.mv_check(second, *i, &mut report)?,
        Command::OracleCheck { i, bounds, dump, against } => {
            ctx.oracle_check(*i, *bounds, *dump, against.as_ref(), &mut report)?
        }
        Command::VerifyPaper { .. } => unreachable!("handled above"),
    }
    Ok(report)
}

struct Ctx<'a, F: Field> {
    field: &'a F,
    base: BaseField,
    ideal: &'a SquarefreeMonomialIdeal,
}

impl<F: Field> Ctx<'_, F> {
    fn n(&self) -> usize {
        self.ideal.n()
    }

    fn module(&self, i: usize) -> Result<PatternModule<F>, CliError> {
        if i > self.n() {
            return Err(CliError::Usage(format!("--i must be at most n = {}", self.n())));
        }
        Ok(local_cohomology(self.field, self.ideal, i)?)
    }

    fn header(&self, what: &str, report: &mut Report) {
        report.line(format!("{what}, I = {}, R = {}[x1..x{}]", self.ideal, self.base, self.n()));
    }

    fn lc(&self, i: usize, report: &mut Report) -> Result<(), CliError> {
        let h = self.module(i)?;
        self.header(&format!("H^{i}_I(R)"), report);
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for p in sorted_patterns(self.n()) {
            let d = h.dim(p);
            if d == 0 {
                continue;
            }
            pieces.push(json!({ "pattern": pattern_json(p), "dim": d }));
            report.line(format!("{p}: {d}"));
        }
        let mut header_done = false;
        for p in sorted_patterns(self.n()) {
            for j in p.iter() {
                let target = p.remove(j);
                if h.dim(p) == 0 || h.dim(target) == 0 {
                    continue;
                }
                if !header_done {
                    report.line("u-map ranks:");
                    header_done = true;
                }
                let r = rank(self.field, h.umap(p, j));
                report.line(format!("  {p} -> {target} (x{}): {r}", j + 1));
                maps.push(json!({ "from": pattern_json(p), "variable": j + 1, "rank": r }));
            }
        }
        if pieces.is_empty() {
            report.line("zero module");
        }
        report.result = json!({ "i": i, "pieces": pieces, "umap_ranks": maps, "total_dim": h.total_dim() });
        Ok(())
    }

    fn invariants(&self, i: usize, report: &mut Report) -> Result<(), CliError> {
        let h = self.module(i)?;
        self.header(&format!("invariants of H^{i}_I(R)"), report);
        let dim = support_dimension(&h);
        let injdim = injective_dimension(&h);
        let ass = associated_primes(&h);
        let ass_text: Vec<String> = ass.iter().map(ToString::to_string).collect();
        report.line(format!("dim: {}", dim.as_ref().map_or_else(ToString::to_string, ToString::to_string)));
        report.line(format!("injdim: {}", injdim.as_ref().map_or_else(ToString::to_string, ToString::to_string)));
        report.line(format!("ass: {{{}}}", ass_text.join(", ")));
        report.line(format!("note: {MONOMIAL_PRIME_NOTE}"));
        report.result = json!({
            "i": i,
            "zero": h.is_zero(),
            "dim": dim.as_ref().ok(),
            "injdim": match &injdim {
                Ok(v) => Value::from(*v),
                Err(CoreError::InfiniteBassNumber) => Value::from("infinite"),
                Err(_) => Value::Null,
            },
            "ass": ass_text,
            "notes": [MONOMIAL_PRIME_NOTE],
        });
        report.citations.push("dim M is the Krull dimension of Supp M; injdim M is the top level with a nonzero Bass number".into());
        Ok(())
    }

    fn bass(&self, i: usize, report: &mut Report) -> Result<(), CliError> {
        let h = self.module(i)?;
        self.header(&format!("Bass numbers of H^{i}_I(R)"), report);
        let table = bass_table(&h);
        let mut entries = Vec::new();
        for (p, j, v) in table.nonzero() {
            report.line(format!("mu_{j}({p}) = {v}"));
            entries.push(json!({ "prime": p.to_string(), "level": j, "value": bass_json(v) }));
        }
        if entries.is_empty() {
            report.line("all Bass numbers vanish");
        }
        report.line(format!("note: {MONOMIAL_PRIME_NOTE}"));
        report.result = json!({ "i": i, "entries": entries, "notes": [MONOMIAL_PRIME_NOTE] });
        Ok(())
    }

    fn resolve(&self, i: usize, report: &mut Report) -> Result<(), CliError> {
        let h = self.module(i)?;
        self.header(&format!("minimal injective resolution of H^{i}_I(R)"), report);
        let shape = resolution_shape(&h)?;
        report.line(format!("0 -> H -> {shape} -> 0"));
        let levels: Vec<Value> = shape
            .levels
            .iter()
            .map(|level| {
                Value::from(
                    level
                        .iter()
                        .map(|(p, m)| json!({ "prime": p.to_string(), "multiplicity": m }))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        report.result = json!({ "i": i, "length": shape.length(), "levels": levels, "shape": shape.to_string() });
        Ok(())
    }

    fn cofinite(&self, i: usize, max_level: Option<usize>, no_cutoff: bool, report: &mut Report) -> Result<(), CliError> {
        let h = self.module(i)?;
        let options = CofiniteOptions { max_level, structural_cutoff: !no_cutoff };
        let v = is_cofinite(self.ideal, &h, options)?;
        self.header(&format!("I-cofiniteness of H^{i}_I(R)"), report);
        match v.support_witness {
            None => report.line("support in V(I): yes"),
            Some(w) => report.line(format!(
                "support in V(I): no, piece at {} survives multiplication by {}",
                w.pattern,
                w.generator.monomial()
            )),
        }
        let mut levels = Vec::new();
        for c in &v.checked_levels {
            match &c.witness {
                None => report.line(format!("Ext^{}(R/I, H): finitely generated", c.level)),
                Some(w) => report.line(format!("Ext^{}(R/I, H): not finitely generated, witness class {w}", c.level)),
            }
            levels.push(json!({
                "level": c.level,
                "finitely_generated": c.finitely_generated,
                "witness": class_json(c.witness.as_ref()),
            }));
        }
        report.line(format!("verdict: {}", v.verdict.as_str()));
        report.result = json!({
            "i": i,
            "verdict": v.verdict.as_str(),
            "supp_ok": v.supp_ok,
            "support_witness": v.support_witness.map(|w| json!({
                "pattern": pattern_json(w.pattern),
                "generator": w.generator.monomial().to_string(),
            })),
            "checked_levels": levels,
            "max_level": max_level.unwrap_or(self.n() + 1),
            "structural_cutoff": !no_cutoff,
        });
        report.citations.push("M is I-cofinite when Supp M lies in V(I) and every Ext^l(R/I, M) is finitely generated".into());
        Ok(())
    }

    fn cd(&self, report: &mut Report) -> Result<(), CliError> {
        let cd = cohomological_dimension(self.field, self.ideal)?;
        let degrees = nonvanishing_degrees(self.field, self.ideal)?;
        let (height, bigheight) = self.ideal.height_and_bigheight()?;
        self.header("cohomological dimension", report);
        report.line(format!("cd: {cd}"));
        report.line(format!("nonvanishing degrees: {degrees:?}"));
        report.line(format!("height: {height}, bigheight: {bigheight}"));
        report.result = json!({
            "cd": cd,
            "nonvanishing_degrees": degrees,
            "height": height,
            "bigheight": bigheight,
        });
        Ok(())
    }

    fn mv_check(&self, second: &str, i: Option<usize>, report: &mut Report) -> Result<(), CliError> {
        let other = parse_and_evaluate(second, self.n())?;
        let mv = mayer_vietoris_check(self.field, self.ideal, &other)?;
        report.line(format!("Mayer-Vietoris for I = {} and J = {other}", self.ideal));
        report.line(format!("I + J = {}, I & J = {}", mv.sum, mv.intersection));
        let mut totals = Vec::new();
        for d in 0..=self.n() {
            let (s, p, x) = (mv.total(MvSlot::Sum, d), mv.total(MvSlot::Pair, d), mv.total(MvSlot::Intersection, d));
            report.line(format!("H^{d}: sum {s}, pair {p}, intersection {x}"));
            totals.push(json!({ "i": d, "sum": s, "pair": p, "intersection": x }));
        }
        let exact = mv.is_exact();
        let agrees = mv.engine_agrees();
        report.line(format!("exact: {}", if exact { "yes" } else { "no" }));
        report.line(format!("agrees with Cech engine: {}", if agrees { "yes" } else { "no" }));
        if let Some(f) = mv.first_failure() {
            report.line(f);
        }
        for m in &mv.engine_mismatches {
            report.line(format!("mismatch: {m}"));
        }
        let at = i.map(|d| {
            let conn = mv.connecting_is_isomorphism(d);
            let pair = mv.pair_map_is_isomorphism(d);
            report.line(format!("H^{d}_(I&J) -> H^{}_(I+J) isomorphism: {conn}", d + 1));
            report.line(format!("H^{d}_I + H^{d}_J -> H^{d}_(I&J) isomorphism: {pair}"));
            json!({ "i": d, "connecting_isomorphism": conn, "pair_map_isomorphism": pair })
        });
        report.ok = exact && agrees;
        report.result = json!({
            "second": other.to_string(),
            "sum": mv.sum.to_string(),
            "intersection": mv.intersection.to_string(),
            "exact": exact,
            "engine_agrees": agrees,
            "first_failure": mv.first_failure(),
            "totals": totals,
            "at": at,
        });
        Ok(())
    }

    fn oracle_check(
        &self,
        i: usize,
        bounds: Option<(i64, i64)>,
        dump: bool,
        against: Option<&(String, usize)>,
        report: &mut Report,
    ) -> Result<(), CliError> {
        let n = self.n();
        let (lo, hi) = match bounds {
            Some(b) => b,
            None if n <= 4 => (-3, 2),
            None if n <= 7 => (-2, 1),
            None => return Err(CliError::Usage(format!("--box is required for n = {n}"))),
        };
        let region = DegreeBox::cube(n, lo, hi)?;
        let h = self.module(i)?;
        let (what, boxed, validation) = match against {
            None => {
                let boxed = boxed_local_cohomology(self.base, self.ideal, i, &region)?;
                let v = cross_validate(&h, &boxed)?;
                (format!("H^{i}_I(R)"), boxed, v)
            }
            Some((text, l)) => {
                let j = parse_and_evaluate(text, n)?;
                let ext = ext_against(&j, &h, *l)?;
                let boxed = boxed_ext(&j, &h, *l, &region)?;
                let v = cross_validate_classes(&ext, &boxed)?;
                (format!("Ext^{l}(R/{j}, H^{i}_I(R))"), boxed, v)
            }
        };
        self.header(&format!("oracle check of {what} on [{lo},{hi}]^{n}"), report);
        report.line(format!("points checked: {}", validation.points_checked));
        let mismatch = validation.mismatch.as_ref().map(|m| {
            report.line(format!(
                "MISMATCH at {:?}: engine {}, oracle {}",
                m.degree.0, m.expected, m.boxed
            ));
            if against.is_none() {
                report.text.push_str(&describe_cech_slice(self.ideal, &m.degree));
            }
            json!({ "degree": m.degree.0, "engine": m.expected, "oracle": m.boxed })
        });
        if mismatch.is_none() {
            report.line("agree: yes");
        }
        let dumped = dump.then(|| boxed.dump());
        if let Some(d) = &dumped {
            report.text.push_str(d);
        }
        report.ok = validation.agrees();
        report.result = json!({
            "i": i,
            "module": what,
            "box": { "lo": lo, "hi": hi },
            "points_checked": validation.points_checked,
            "agrees": validation.agrees(),
            "mismatch": mismatch,
            "dump": dumped,
        });
        Ok(())
    }
}

fn verify_paper<F: Field>(field: &F, base: BaseField, name: &str, report: &mut Report) -> Result<(), CliError> {
    let specs: Vec<_> = if name == "all" {
        scenarios::SCENARIOS.iter().collect()
    } else {
        let spec = scenarios::find(name).ok_or_else(|| {
            let known: Vec<_> = scenarios::names().collect();
            CliError::Usage(format!("unknown scenario '{name}'; known: {}, all", known.join(", ")))
        })?;
        let ideal = parse_and_evaluate(spec.ideal, spec.n)?;
        report.ring = ring_json(spec.n, base);
        report.ideal = Value::from(ideal.to_string());
        vec![spec]
    };
    let mut outcomes: Vec<ScenarioOutcome> = Vec::new();
    for spec in specs {
        outcomes.push(scenarios::run(field, spec)?);
    }
    let mut results = Vec::new();
    for out in &outcomes {
        let s = out.spec;
        report.line(format!("== {} (n = {}, I = {}, i = {}): {}", s.name, s.n, s.ideal, s.i, s.summary));
        let mut checks = Vec::new();
        for c in &out.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            report.line(format!("{status}  {}: expected {}, computed {}", c.label, c.expected, c.computed));
            report.line(format!("      claim: {}", c.citation));
            if !report.citations.iter().any(|x| x == c.citation) {
                report.citations.push(c.citation.to_string());
            }
            checks.push(json!({
                "label": c.label,
                "expected": c.expected,
                "computed": c.computed,
                "passed": c.passed(),
                "citation": c.citation,
            }));
        }
        let passed = out.passed();
        report.line(format!("{}: {}", s.name, if passed { "PASS" } else { "FAIL" }));
        results.push(json!({
            "name": s.name,
            "n": s.n,
            "ideal": s.ideal,
            "i": s.i,
            "passed": passed,
            "checks": checks,
        }));
    }
    report.ok = outcomes.iter().all(ScenarioOutcome::passed);
    report.result = json!({ "passed": report.ok, "scenarios": results });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(command: Command, n: usize, ideal: &str) -> Request {
        Request {
            field: BaseField::Rationals,
            target: Some(Target { n, ideal: ideal.to_string() }),
            command,
        }
    }

    #[test]
    fn lc_lists_the_two_pieces() {
        let r = run(&request(Command::Lc { i: 2 }, 3, "(x1*x2,x1*x3)")).unwrap();
        assert!(r.text.contains("{2,3}: 1\n{1,2,3}: 1\n"), "{}", r.text);
        assert_eq!(r.result["total_dim"], 2);
    }

    #[test]
    fn invariants_of_mixed_example() {
        let r = run(&request(Command::Invariants { i: 2 }, 3, "(x1*x2,x1*x3)")).unwrap();
        assert_eq!(r.result["dim"], 1);
        assert_eq!(r.result["injdim"], 0);
        assert_eq!(r.result["ass"], json!(["(x2,x3)"]));
    }

    #[test]
    fn json_keys_in_fixed_order() {
        let r = run(&request(Command::Cd, 3, "(x1*x2,x1*x3)")).unwrap();
        let keys: Vec<String> = r.to_json(None).as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["ring", "ideal", "command", "result", "citations", "timing"]);
        assert_eq!(r.result["cd"], 2);
    }

    #[test]
    fn oracle_check_agrees_on_default_box() {
        let r = run(&request(Command::OracleCheck { i: 2, bounds: None, dump: false, against: None }, 3, "(x1*x2,x1*x3)"))
            .unwrap();
        assert!(r.ok);
        assert_eq!(r.result["points_checked"], 216);
    }

    #[test]
    fn missing_target_is_usage_error() {
        let req = Request { field: BaseField::Rationals, target: None, command: Command::Cd };
        assert!(matches!(run(&req), Err(CliError::Usage(_))));
    }

    #[test]
    fn unknown_scenario_is_usage_error() {
        let req = Request { field: BaseField::Rationals, target: None, command: Command::VerifyPaper { name: "nope".into() } };
        assert!(matches!(run(&req), Err(CliError::Usage(_))));
    }
}
