use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use idealforge::config::{read_points, write_points};
use idealforge::generators::{build_generator_set, CONFIG_NAMES};
use idealforge::groebner::DEFAULT_BUDGET;
use idealforge::sampling::DEFAULT_SEED;
use idealforge::suite::{
    run_build, run_enumerate, run_gamma, run_groebner, run_verify, verify_build, with_points,
    Report, RunOptions, SuiteError,
};

const EXIT_CHECK: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Exact verification of vanishing ideals of lattice shells and small
/// spherical codes.
#[derive(Parser, Debug)]
#[command(name = "idealforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a configuration and its generating set.
    Build {
        #[command(flatten)]
        common: Common,
        /// Write the point set here.
        #[arg(long)]
        points_out: Option<PathBuf>,
        /// Write the generating set here.
        #[arg(long)]
        generators_out: Option<PathBuf>,
    },
    /// Run every check for a configuration.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check the points in this file instead of the built ones.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Also attempt the E7 Groebner basis.
        #[arg(long)]
        groebner_e7: bool,
    },
    /// Bounds and exact values for the least non-trivial degree.
    Gamma {
        #[command(flatten)]
        common: Common,
    },
    /// Groebner certification (desk-scale configurations).
    Groebner {
        #[command(flatten)]
        common: Common,
        /// Write the reduced basis here.
        #[arg(long)]
        basis_out: Option<PathBuf>,
    },
    /// Short-vector enumeration on an extracted lattice basis.
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
    /// Verify several configurations and emit one combined document.
    Report {
        /// Configurations to include (all when omitted).
        names: Vec<String>,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// One of icosahedron, e6, e7, e8, leech, cube4, ngon, knn.
    name: String,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Run per-point passes over every point.
    #[arg(long, conflicts_with = "sampled")]
    full: bool,
    /// Sample points for the large passes (the default).
    #[arg(long)]
    sampled: bool,
    /// Seed for sampled passes (decimal or 0x-prefixed hex).
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of sampled points for the vanishing pass.
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Reduction budget for Buchberger's algorithm.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Size of the polygon or of K_{n,n}.
    #[arg(long)]
    n: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// No progress lines on standard error.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

impl Options {
    fn run_options(&self) -> RunOptions {
        RunOptions {
            full: self.full,
            seed: self.seed,
            sample_points: self.samples,
            budget: self.budget,
            n: self.n,
            progress: !self.quiet,
            ..RunOptions::default()
        }
    }
}

enum Failure {
    Usage(String),
    Suite(SuiteError),
    Io(String),
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        Failure::Suite(e)
    }
}

fn io<T>(r: std::io::Result<T>, path: &std::path::Path) -> Result<T, Failure> {
    r.map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn check_name(name: &str) -> Result<(), Failure> {
    if CONFIG_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "unknown configuration `{name}`; expected one of {}",
            CONFIG_NAMES.join(", ")
        )))
    }
}

fn emit(text: &str, opts: &Options) -> Result<(), Failure> {
    match &opts.out {
        Some(path) => io(fs::write(path, text), path),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Io(format!("stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn render(r: &Report, f: Format) -> String {
    match f {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    }
}

/// Writes the report and converts its verdict into an exit code.
fn finish(r: &Report, opts: &Options) -> Result<u8, Failure> {
    emit(&render(r, opts.format), opts)?;
    Ok(if r.passed() { 0 } else { EXIT_CHECK })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Build {
            common,
            points_out,
            generators_out,
        } => {
            check_name(&common.name)?;
            let ro = common.opts.run_options();
            let r = run_build(&common.name, &ro)?;
            if points_out.is_some() || generators_out.is_some() {
                let b = build_generator_set(&common.name, ro.n).map_err(SuiteError::from)?;
                if let Some(p) = &points_out {
                    io(fs::write(p, write_points(&b.config)), p)?;
                }
                if let Some(p) = &generators_out {
                    io(fs::write(p, b.generators.export_text()), p)?;
                }
            }
            finish(&r, &common.opts)
        }
        Command::Verify {
            common,
            points,
            groebner_e7,
        } => {
            check_name(&common.name)?;
            let ro = RunOptions {
                groebner_e7,
                ..common.opts.run_options()
            };
            let r = match points {
                Some(path) => {
                    let text = io(fs::read_to_string(&path), &path)?;
                    let file = read_points(&text).map_err(SuiteError::from)?;
                    let b = build_generator_set(&common.name, ro.n).map_err(SuiteError::from)?;
                    verify_build(&common.name, &with_points(b, &file)?, &ro)?
                }
                None => run_verify(&common.name, &ro)?,
            };
            finish(&r, &common.opts)
        }
        Command::Gamma { common } => {
            check_name(&common.name)?;
            finish(
                &run_gamma(&common.name, &common.opts.run_options())?,
                &common.opts,
            )
        }
        Command::Groebner { common, basis_out } => {
            check_name(&common.name)?;
            let (r, basis) = run_groebner(&common.name, &common.opts.run_options())?;
            if let Some(p) = &basis_out {
                io(fs::write(p, basis), p)?;
            }
            finish(&r, &common.opts)
        }
        Command::Enumerate { common } => {
            check_name(&common.name)?;
            if !matches!(common.name.as_str(), "e8" | "leech") {
                return Err(Failure::Usage(format!(
                    "enumeration is available for e8 and leech, not `{}`",
                    common.name
                )));
            }
            finish(
                &run_enumerate(&common.name, &common.opts.run_options())?,
                &common.opts,
            )
        }
        Command::Report { names, opts } => {
            let names: Vec<String> = if names.is_empty() {
                CONFIG_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                names
            };
            for n in &names {
                check_name(n)?;
            }
            let ro = opts.run_options();
            let mut reports = Vec::new();
            for n in &names {
                reports.push(run_verify(n, &ro)?);
            }
            let text = match opts.format {
                Format::Json => serde_json::to_string_pretty(&reports).expect("serialisable"),
                Format::Text => reports
                    .iter()
                    .map(Report::to_text)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&text, &opts)?;
            Ok(if reports.iter().all(Report::passed) {
                0
            } else {
                EXIT_CHECK
            })
        }
    }
}

fn threads(cli: &Cli) -> Option<u32> {
    match &cli.command {
        Command::Build { common, .. }
        | Command::Verify { common, .. }
        | Command::Gamma { common }
        | Command::Groebner { common, .. }
        | Command::Enumerate { common } => common.opts.threads,
        Command::Report { opts, .. } => opts.threads,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = threads(&cli) {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RESOURCE);
        }
    }
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            EXIT_RESOURCE
        }
        Err(Failure::Suite(e)) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else if e.is_resource() {
                EXIT_RESOURCE
            } else {
                EXIT_CHECK
            }
        }
    };
    ExitCode::from(code)
}
