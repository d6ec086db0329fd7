//! Command-line interface.
//!
//! Every command prints one JSON [`RunReport`] on standard output and a short
//! summary on standard error. Exit status: 0 success, 1 verification failure,
//! 2 resource cap exceeded, 3 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symstring_core::polytope::{build_polytope_with, DIAMOND_SAMPLE, POLYTOPE_CAP};
use symstring_core::strings::{
    build_orthogonal_string, build_sp4_rank4, build_string_generators, build_symmetric_demo, build_symplectic_string,
    scalar_set_a, scalar_set_a0,
};
use symstring_core::verify::{verify_generators, verify_with};
use symstring_core::{
    build_phi, Field, GeneratorString, IpMode, OrderMethod, QuadraticSpace, VerifyOptions, WittType, DEFAULT_CAP,
};

use crate::error::Error;
use crate::export::export_incidence;
use crate::parallel::Parallel;
use crate::report::{Construction, Outcome, Params, Polytope, RunReport, ScalarSets, Verification};
use crate::text::{parse_elements, GeneratorFile};

#[derive(Debug, Parser)]
#[command(name = "symstring", version, about = "Construct and verify characteristic-2 string C-groups")]
pub struct Cli {
    /// Record wall-clock time in the report (reports are otherwise reproducible byte for byte).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the admissible scalar sets A0 and A for GF(q).
    Scalars {
        #[arg(long)]
        q: u32,
    },
    /// Build a generator string and print its matrices.
    Construct {
        #[command(flatten)]
        build: BuildArgs,
        /// Also write the generators to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build (or read) a generator string and check every string C-group property.
    Verify {
        #[command(flatten)]
        build: BuildArgs,
        /// Read generators from a file instead of constructing them.
        #[arg(long, conflicts_with_all = ["d", "kind", "scalars"])]
        gens: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Build the coset polytope of a generator string.
    Polytope {
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write the incidence file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorthand for `construct --type sp4`.
    Sp4 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringType {
    Plus,
    Minus,
    Sp,
    Sp4,
    Demo,
}

impl StringType {
    pub fn name(self) -> &'static str {
        match self {
            StringType::Plus => "+",
            StringType::Minus => "-",
            StringType::Sp => "sp",
            StringType::Sp4 => "sp4",
            StringType::Demo => "demo",
        }
    }
}

fn parse_type(s: &str) -> Result<StringType, String> {
    match s {
        "+" | "plus" => Ok(StringType::Plus),
        "-" | "minus" => Ok(StringType::Minus),
        "sp" => Ok(StringType::Sp),
        "sp4" => Ok(StringType::Sp4),
        "demo" => Ok(StringType::Demo),
        _ => Err(format!("unknown type {s:?}; expected +, -, sp, sp4 or demo")),
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Field order 2^k.
    #[arg(long)]
    pub q: Option<u32>,
    /// Dimension of the quadratic space (the rank of the string).
    #[arg(long)]
    pub d: Option<usize>,
    /// +, - (orthogonal, even d), sp (odd d), sp4 (rank 4) or demo (q = 2).
    #[arg(long = "type", value_parser = parse_type, allow_hyphen_values = true)]
    pub kind: Option<StringType>,
    /// Comma-separated form scalars, overriding the automatic choice.
    #[arg(long)]
    pub scalars: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Auto,
    Enumeration,
    Chain,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Intersection-property check.
    #[arg(long, value_enum, default_value = "recursive")]
    pub mode: ModeArg,
    /// Largest group that may be enumerated.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Worker threads for enumeration (default: all cores). Results do not depend on it.
    #[arg(long)]
    pub threads: Option<NonZeroUsize>,
    /// How to compute the group order.
    #[arg(long, value_enum, default_value = "auto")]
    pub order: OrderArg,
}

impl EngineArgs {
    fn engine(&self) -> Parallel {
        self.threads.map_or_else(Parallel::available, Parallel::new)
    }
}

type Failure = (Outcome, Error);

fn usage(e: impl Into<Error>) -> Failure {
    (Outcome::UsageError, e.into())
}

fn check(e: impl Into<Error>) -> Failure {
    let e = e.into();
    (if e.is_cap() { Outcome::CapExceeded } else { Outcome::Fail }, e)
}

fn usage_msg(msg: impl Into<String>) -> Failure {
    usage(Error::Usage(msg.into()))
}

const SMALL_FIELD: &str = "over GF(2) the symmetries generate a symmetric group, not the orthogonal or \
                           symplectic group: that needs q = 2^k with k >= 2 (use --type demo for q = 2)";

fn field_of(q: Option<u32>) -> Result<Field, Failure> {
    let q = q.ok_or_else(|| usage_msg("--q is required"))?;
    Field::from_order(q).map_err(usage)
}

/// Builds the generator string described by the command-line arguments.
pub fn construct(b: &BuildArgs) -> Result<GeneratorString, Failure> {
    let field = field_of(b.q)?;
    let q = field.q();
    let small = q == 2;
    if small && matches!(b.kind, Some(StringType::Plus | StringType::Minus | StringType::Sp | StringType::Sp4)) {
        return Err(usage_msg(SMALL_FIELD));
    }
    if b.kind == Some(StringType::Demo) && !small {
        return Err(usage_msg("--type demo needs q = 2"));
    }
    if let Some(list) = &b.scalars {
        if b.kind == Some(StringType::Sp4) {
            return Err(usage_msg("--scalars does not apply to --type sp4"));
        }
        let scalars = parse_elements(&field, list).map_err(usage)?;
        let d = scalars.len() + 1;
        if b.d.is_some_and(|want| want != d) {
            return Err(usage_msg(format!("{} scalars give d = {d}, not {}", scalars.len(), b.d.unwrap_or(0))));
        }
        match b.kind {
            Some(StringType::Plus | StringType::Minus) if d % 2 != 0 => {
                return Err(usage_msg("orthogonal types need even d"))
            }
            Some(StringType::Sp) if d % 2 == 0 => return Err(usage_msg("type sp needs odd d")),
            _ => {}
        }
        let space = build_phi(&field, &scalars).map_err(usage)?;
        return build_string_generators(&space).map_err(usage);
    }
    let kind = b.kind.ok_or_else(|| usage_msg("--type is required"))?;
    if kind == StringType::Sp4 {
        if b.d.is_some_and(|d| d != 4) {
            return Err(usage_msg("type sp4 has d = 4"));
        }
        return build_sp4_rank4(&field).map_err(usage);
    }
    let d = b.d.ok_or_else(|| usage_msg("--d is required"))?;
    let built = match kind {
        StringType::Plus | StringType::Minus if d % 2 != 0 || d < 2 => {
            return Err(usage_msg("orthogonal types need even d >= 2"))
        }
        StringType::Sp if d % 2 == 0 || d < 3 => return Err(usage_msg("type sp needs odd d >= 3")),
        StringType::Plus => build_orthogonal_string(&field, d, WittType::Plus),
        StringType::Minus => build_orthogonal_string(&field, d, WittType::Minus),
        StringType::Sp => build_symplectic_string(&field, d),
        StringType::Demo => build_symmetric_demo(&field, d),
        StringType::Sp4 => unreachable!("handled above"),
    };
    built.map_err(usage)
}

fn params(cmd: &Command) -> Params {
    let mut p = Params::default();
    let fill_build = |p: &mut Params, b: &BuildArgs| {
        p.q = b.q;
        p.d = b.d;
        p.kind = b.kind.map(|k| k.name().to_string());
        p.scalars = b.scalars.as_ref().map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    };
    let fill_engine = |p: &mut Params, e: &EngineArgs, default_cap: usize| {
        p.mode = Some(format!("{:?}", e.mode).to_ascii_lowercase());
        p.cap = Some(e.cap.unwrap_or(default_cap));
        p.threads = e.threads.map(NonZeroUsize::get);
    };
    let path = |o: &Option<PathBuf>| o.as_ref().map(|p| p.display().to_string());
    match cmd {
        Command::Scalars { q } => p.q = Some(*q),
        Command::Construct { build, out } => {
            fill_build(&mut p, build);
            p.out = path(out);
        }
        Command::Verify { build, gens, engine } => {
            fill_build(&mut p, build);
            fill_engine(&mut p, engine, DEFAULT_CAP);
            p.gens = path(gens);
        }
        Command::Polytope { build, engine, out } => {
            fill_build(&mut p, build);
            fill_engine(&mut p, engine, POLYTOPE_CAP);
            p.out = path(out);
        }
        Command::Sp4 { q, out } => {
            p.q = Some(*q);
            p.d = Some(4);
            p.kind = Some("sp4".to_string());
            p.out = path(out);
        }
    }
    p
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(Error::Io { path: path.to_path_buf(), source: e }))
}

fn verify_options(e: &EngineArgs) -> VerifyOptions {
    VerifyOptions {
        mode: match e.mode {
            ModeArg::Full => IpMode::Full,
            ModeArg::Recursive => IpMode::Recursive,
        },
        cap: e.cap.unwrap_or(DEFAULT_CAP),
        order_method: match e.order {
            OrderArg::Auto => OrderMethod::Auto,
            OrderArg::Enumeration => OrderMethod::Enumeration,
            OrderArg::Chain => OrderMethod::StabilizerChain,
        },
        ..VerifyOptions::default()
    }
}

fn execute(cmd: &Command, report: &mut RunReport) -> Result<(), Failure> {
    match cmd {
        Command::Scalars { q } => {
            let field = Field::from_order(*q).map_err(usage)?;
            let note = (field.q() == 2).then(|| {
                "over GF(2), N = {0}, so the only nonzero scalar 1 is admissible; its symmetries \
                 generate a symmetric group rather than an orthogonal or symplectic one"
                    .to_string()
            });
            report.scalars = Some(ScalarSets {
                q: field.q(),
                a0: scalar_set_a0(&field).iter().map(|x| x.0).collect(),
                a: scalar_set_a(&field).iter().map(|x| x.0).collect(),
                note,
            });
        }
        Command::Construct { build, out } => {
            let gs = construct(build)?;
            report.construction = Some(Construction::new(&gs));
            if let Some(path) = out {
                write_file(path, &GeneratorFile::from_string(&gs).render())?;
            }
        }
        Command::Sp4 { q, out } => {
            let build = BuildArgs { q: Some(*q), d: None, kind: Some(StringType::Sp4), scalars: None };
            return execute(&Command::Construct { build, out: out.clone() }, report);
        }
        Command::Verify { build, gens, engine } => {
            let opts = verify_options(engine);
            let par = engine.engine();
            let r = match gens {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| usage(Error::Io { path: path.clone(), source: e }))?;
                    let file = GeneratorFile::parse(&text, build.q).map_err(usage)?;
                    let space = file.phi.clone().map(QuadraticSpace::from_form_matrix).transpose().map_err(usage)?;
                    let quad = file.quadratic_required();
                    verify_generators(&file.gens, space.as_ref(), Some(&quad), file.kind, &opts, &par).map_err(check)?
                }
                None => {
                    let gs = construct(build)?;
                    report.construction = Some(Construction::new(&gs));
                    verify_with(&gs, &opts, &par).map_err(check)?
                }
            };
            report.verification = Some(Verification::from(&r));
            if !r.passed() {
                report.outcome = Outcome::Fail;
            }
        }
        Command::Polytope { build, engine, out } => {
            let gs = construct(build)?;
            report.construction = Some(Construction::new(&gs));
            let p =
                build_polytope_with(&gs.gens, engine.cap.unwrap_or(POLYTOPE_CAP), &engine.engine()).map_err(check)?;
            let diamond = p.check_diamond(DIAMOND_SAMPLE);
            if let Some(path) = out {
                export_incidence(&p, path).map_err(usage)?;
            }
            report.polytope = Some(Polytope::new(&p, diamond, out.as_ref().map(|p| p.display().to_string())));
            if !diamond {
                report.outcome = Outcome::Fail;
            }
        }
    }
    Ok(())
}

/// Runs one command line (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let command = std::iter::once("symstring".into())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy()))
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            let mut report = RunReport::new(command, Params::default());
            report.outcome = Outcome::UsageError;
            report.error = Some(e.kind().to_string());
            let _ = out.write_all(report.to_json().as_bytes());
            return Outcome::UsageError.exit_code();
        }
    };
    let start = Instant::now();
    let mut report = RunReport::new(command, params(&cli.command));
    if let Err((outcome, e)) = execute(&cli.command, &mut report) {
        report.outcome = outcome;
        report.error = Some(e.to_string());
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let _ = out.write_all(report.to_json().as_bytes());
    let _ = err.write_all(report.summary().as_bytes());
    report.outcome.exit_code()
}
