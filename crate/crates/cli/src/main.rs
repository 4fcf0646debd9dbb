use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gradedlc::commands::{run, CliError, Command, Request, Target};
use gradedlc_core::BaseField;

#[derive(Parser, Debug)]
#[command(name = "gradedlc", version, about = "Local cohomology of squarefree monomial ideals")]
struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Field characteristic; 0 selects the rationals.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Ring {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Ideal expression, e.g. "V(x1,x2) & (x3*x4)".
    #[arg(long)]
    ideal: String,
}

#[derive(Args, Debug)]
struct Degree {
    #[command(flatten)]
    ring: Ring,
    /// Cohomological degree.
    #[arg(long)]
    i: usize,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Pattern pieces and u-map ranks of H^i_I(R).
    Lc(Degree),
    /// dim, injdim and associated primes of H^i_I(R).
    Invariants(Degree),
    /// Nonzero Bass numbers of H^i_I(R) at monomial primes.
    Bass(Degree),
    /// Minimal injective resolution shape of H^i_I(R).
    Resolve(Degree),
    /// I-cofiniteness verdict for H^i_I(R).
    Cofinite {
        #[command(flatten)]
        degree: Degree,
        /// Highest Ext level to examine (default n + 1).
        #[arg(long)]
        max_level: Option<usize>,
        /// Do not treat levels past the Taylor length as zero.
        #[arg(long)]
        no_cutoff: bool,
    },
    /// Cohomological dimension of I.
    Cd(Ring),
    /// Mayer-Vietoris sequence of --ideal and --ideal2.
    MvCheck {
        #[command(flatten)]
        ring: Ring,
        /// The second ideal.
        #[arg(long)]
        ideal2: String,
        /// Report whether the maps at this degree are isomorphisms.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Compare the engine with brute-force degree-by-degree evaluation.
    OracleCheck {
        #[command(flatten)]
        degree: Degree,
        /// Cube bounds as lo..hi, e.g. -3..2.
        #[arg(long = "box", allow_hyphen_values = true, value_parser = parse_bounds)]
        bounds: Option<(i64, i64)>,
        /// Print every degree of the box with its dimension.
        #[arg(long)]
        dump: bool,
        /// Check Ext^level(R/J, H^i_I(R)) for this ideal J instead.
        #[arg(long, requires = "level")]
        against: Option<String>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Run a named worked instance, or all of them.
    VerifyPaper {
        name: String,
    },
}

fn parse_bounds(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound '{t}': {e}"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("empty box {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn target(ring: Ring) -> Option<Target> {
    Some(Target { n: ring.n, ideal: ring.ideal })
}

fn request(cli: Cli) -> Result<Request, CliError> {
    let field = BaseField::from_characteristic(cli.characteristic)?;
    let (target, command) = match cli.command {
        Sub::Lc(d) => (target(d.ring), Command::Lc { i: d.i }),
        Sub::Invariants(d) => (target(d.ring), Command::Invariants { i: d.i }),
        Sub::Bass(d) => (target(d.ring), Command::Bass { i: d.i }),
        Sub::Resolve(d) => (target(d.ring), Command::Resolve { i: d.i }),
        Sub::Cofinite { degree, max_level, no_cutoff } => {
            (target(degree.ring), Command::Cofinite { i: degree.i, max_level, no_cutoff })
        }
        Sub::Cd(ring) => (target(ring), Command::Cd),
        Sub::MvCheck { ring, ideal2, i } => (target(ring), Command::MvCheck { second: ideal2, i }),
        Sub::OracleCheck { degree, bounds, dump, against, level } => {
            let against = against.zip(level);
            (target(degree.ring), Command::OracleCheck { i: degree.i, bounds, dump, against })
        }
        Sub::VerifyPaper { name } => (None, Command::VerifyPaper { name }),
    };
    Ok(Request { field, target, command })
}

/// `GRADEDLC_THREADS`: worker count for the global pool, 0 or unset for
/// rayon's default.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("GRADEDLC_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("GRADEDLC_THREADS must be a non-negative integer, got '{raw}'")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (json, timing) = (cli.json, cli.timing);
    let started = Instant::now();
    let outcome = configure_threads().and_then(|()| request(cli)).and_then(|r| run(&r));
    let report = match outcome {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if json {
        let elapsed = timing.then(|| started.elapsed().as_secs_f64() * 1e3);
        let text = serde_json::to_string_pretty(&report.to_json(elapsed)).expect("report is valid JSON");
        println!("{text}");
    } else {
        print!("{}", report.text);
        if timing {
            println!("elapsed: {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
        }
    }
    ExitCode::from(if report.ok { 0 } else { 2 })
}
