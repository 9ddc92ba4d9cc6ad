//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage/parse/I-O/constructor precondition,
//! 3 semantic failure (invalid spec, not field-like), 1 internal error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{check_theorem, decompose, trace_image_check, Theorem, TraceMode};
use crate::aut::FieldAut;
use crate::census::{emit_report, run_census, Backend, CensusConfig, ReportFormat};
use crate::construct::{coinduce, extract_bottom, extract_top, fixed_point_functor, glue, GlueData};
use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::spec::TambaraSpec;
use crate::validate::{validate, SamplingPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tambara", version, about = "Field-like Tambara functors for cyclic p-groups")]
struct Cli {
    /// Sampling seed (the TAMBARA_SEED environment variable takes precedence).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a spec file; exit 3 if it is not a field-like Tambara functor.
    Validate { path: PathBuf },
    /// Build a spec from one of the standard constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Write a field-like spec as a coinduced clarified spec.
    Decompose {
        path: PathBuf,
        /// Also re-coinduce and compare levelwise, failing on mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Enumerate catalog specs and cross-check the classification.
    Census(CensusArgs),
    /// Print the levels of a spec.
    Explain { path: PathBuf },
    /// Check one classification statement on a spec.
    Check {
        #[arg(long)]
        theorem: String,
        path: PathBuf,
    },
    /// Decide or certify surjectivity of the trace of an automorphism.
    Trace {
        #[arg(long)]
        field: String,
        #[arg(long)]
        action: String,
        #[arg(long, default_value = "sampled")]
        mode: String,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    FixedPoint {
        #[arg(long)]
        field: String,
        #[arg(long)]
        action: String,
        #[arg(long)]
        n: u32,
        /// Group prime; defaults to the field characteristic.
        #[arg(long)]
        p: Option<u64>,
    },
    Coinduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: u32,
    },
    Glue {
        #[arg(long)]
        input: PathBuf,
    },
    ExtractTop {
        #[arg(long)]
        input: PathBuf,
    },
    ExtractBottom {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    /// Field shorthand; repeat for several backends.
    #[arg(long, required = true)]
    field: Vec<String>,
    /// Action shorthand, one per field (or one for all).
    #[arg(long, required = true)]
    action: Vec<String>,
    #[arg(long)]
    max_frob: Option<u32>,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotFieldLike(_) | Error::Closure { .. } => EXIT_REJECTED,
        Error::Consistency(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage!("cannot read {}: {e}", path.display()))
}

fn load_spec(path: &Path) -> Result<TambaraSpec> {
    TambaraSpec::from_json(&read(path)?)
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs the CLI with the given arguments (including the program name),
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let seed = match std::env::var("TAMBARA_SEED") {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(s) => Some(s),
            Err(_) => {
                let _ = writeln!(err, "error: TAMBARA_SEED must be an unsigned integer, got {v:?}");
                return EXIT_USAGE;
            }
        },
        Err(_) => cli.seed,
    };
    let policy = seed.map(SamplingPolicy::with_seed).unwrap_or_default();
    let (code, text) = match execute(&cli.command, &policy) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    code
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn execute(cmd: &Command, policy: &SamplingPolicy) -> Result<(i32, String)> {
    match cmd {
        Command::Validate { path } => {
            let spec = load_spec(path)?;
            let report = validate(&spec, policy)?;
            let code = if report.is_field_like() { EXIT_OK } else { EXIT_REJECTED };
            Ok((code, pretty(&report)))
        }
        Command::Construct(c) => {
            let spec = construct(c)?;
            let report = validate(&spec, policy)?;
            if !report.is_field_like() {
                return Err(Error::NotFieldLike(format!("constructed spec fails validation: {:?}", report.failures)));
            }
            Ok((EXIT_OK, pretty(&spec)))
        }
        Command::Decompose { path, verify } => {
            let spec = load_spec(path)?;
            let cert = decompose(&spec, true, policy)?;
            if *verify {
                let back = coinduce(&cert.ell, spec.n)?;
                if !back.same_functor(&spec) || !cert.verified() {
                    return Err(Error::Consistency("coinduced certificate does not reproduce the input".into()));
                }
            }
            Ok((EXIT_OK, pretty(&cert)))
        }
        Command::Census(a) => census(a, policy),
        Command::Explain { path } => Ok((EXIT_OK, explain(&load_spec(path)?))),
        Command::Check { theorem, path } => {
            let t: Theorem = theorem.parse()?;
            let r = check_theorem(t, &load_spec(path)?, policy)?;
            let code = if !r.hypotheses_met || r.conclusion_holds { EXIT_OK } else { EXIT_REJECTED };
            Ok((code, pretty(&r)))
        }
        Command::Trace { field, action, mode } => {
            let f = Field::parse_shorthand(field)?;
            let a = FieldAut::parse_shorthand(action)?;
            let r = trace_image_check(&f, &a, mode.parse::<TraceMode>()?)?;
            Ok((EXIT_OK, pretty(&r)))
        }
    }
}

fn construct(c: &Construct) -> Result<TambaraSpec> {
    match c {
        Construct::FixedPoint { field, action, n, p } => {
            let f = Field::parse_shorthand(field)?;
            let a = FieldAut::parse_shorthand(action)?;
            fixed_point_functor(&f, &a, p.unwrap_or(f.characteristic()), *n)
        }
        Construct::Coinduce { input, n } => coinduce(&load_spec(input)?, *n),
        Construct::Glue { input } => {
            let g: GlueData = serde_json::from_str(&read(input)?).map_err(|e| Error::Parse(e.to_string()))?;
            glue(&g)
        }
        Construct::ExtractTop { input } => extract_top(&load_spec(input)?),
        Construct::ExtractBottom { input } => extract_bottom(&load_spec(input)?),
    }
}

fn census(a: &CensusArgs, policy: &SamplingPolicy) -> Result<(i32, String)> {
    let fields = a.field.iter().map(|s| Field::parse_shorthand(s)).collect::<Result<Vec<_>>>()?;
    let actions = a.action.iter().map(|s| FieldAut::parse_shorthand(s)).collect::<Result<Vec<_>>>()?;
    let backends: Vec<Backend> = match (fields.len(), actions.len()) {
        (_, 1) => fields
            .into_iter()
            .map(|field| Backend { field, action: actions[0].clone() })
            .collect(),
        (f, g) if f == g => fields
            .into_iter()
            .zip(actions)
            .map(|(field, action)| Backend { field, action })
            .collect(),
        (f, g) => return Err(usage!("{f} fields but {g} actions")),
    };
    let mut cfg = CensusConfig::new(a.p, a.n, backends);
    if let Some(m) = a.max_frob {
        cfg.max_frob = m;
    }
    cfg.seed = policy.seed;
    cfg.threads = a.threads;
    let report = run_census(&cfg)?;
    let code = if report.all_checks_pass() { EXIT_OK } else { EXIT_REJECTED };
    Ok((code, emit_report(&report, a.format.parse::<ReportFormat>()?)))
}

fn explain(k: &TambaraSpec) -> String {
    let mut s = String::new();
    let g = k.gring();
    let _ = writeln!(s, "C_{}^{} Tambara functor over {}", k.p, k.n, k.field);
    let _ = writeln!(
        s,
        "bottom: {} coordinate(s), stabilizer C_{}^{}, wrap {}",
        g.coord_count(),
        k.p,
        k.s,
        k.action
    );
    let _ = writeln!(s, "characteristic {}", k.characteristic());
    let _ = writeln!(s, "\n| level | subgroup | free coordinates | coordinate field |");
    let _ = writeln!(s, "|---|---|---|---|");
    for i in (0..=k.n).rev() {
        let _ = writeln!(
            s,
            "| {i} | C_{}^{i} | {} | {:?} |",
            k.p,
            k.free_coords(i),
            k.level_field(i)
        );
    }
    let _ = writeln!(
        s,
        "\nrestrictions are inclusions; transfers and norms are sums and products over C_{}^i/C_{}^j translates",
        k.p, k.p
    );
    s
}
