//! The `gapkit` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 for usage and
//! input errors, 3 when a request exceeds the feasibility cap.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use gapkit_core::census::{Verdict, DEFAULT_CAP};
use gapkit_core::families::{self, Family, Mode};
use gapkit_core::gap::classify;
use gapkit_core::scform::{parse_expr, print_sc, write_compact, write_table};
use gapkit_core::{BigCount, Error};

use crate::driver;
use crate::io::{load_table, InputError};

/// Environment variable overriding the default feasibility cap.
pub const CAP_ENV: &str = "GAPKIT_CAP";

#[derive(Debug, Parser)]
#[command(name = "gapkit", version, about = "Essential arity gap of finite k-valued functions")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Largest number of tables a command may enumerate.
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Essential variables, gap and class membership of a table file.
    Analyze { file: PathBuf },
    /// The identification minor f_{i<-j}.
    Minor {
        file: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// (ess, gap) distribution of a whole function space, as TSV.
    Census {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        sample: Option<u64>,
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Tables of a family, one compact `k n : v ...` line each.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Runs a generator and checks every table against its class.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Evaluates a counting formula. `--m` counts functions with exactly m
    /// essential variables.
    Count {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(Family::TAGS))]
        family: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "m")]
        p: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Splits f = h + g along a collapsing minor.
    Decompose { file: PathBuf },
    /// Evaluates a sum-of-conjunctions expression to a table file.
    Parse {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// The canonical sum-of-conjunctions form of a table file.
    Print { file: PathBuf },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(Family::TAGS))]
    family: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
}

#[derive(Debug, Args)]
struct ModeArgs {
    #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
    all: bool,
    #[arg(long, requires = "seed")]
    sample: Option<u64>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        match (self.all, self.sample, self.seed) {
            (false, Some(count), Some(seed)) => Mode::Sample { count, seed },
            _ => Mode::All,
        }
    }
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, Error> {
        Family::from_tag(&self.family, self.k, self.n, self.p)
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Core(Error::Infeasible { .. }) => 3,
            CliError::Verification => 1,
            _ => 2,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(cli, stdin, stdout) {
        Ok(()) => 0,
        Err(CliError::Verification) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status()
        }
    }
}

fn cap(cli_cap: Option<u64>) -> Result<u64, CliError> {
    if let Some(c) = cli_cap {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_ENV} must be a natural number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cap = cap(cli.cap)?;
    let mut file;
    let out: &mut dyn Write = match &cli.output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let result = dispatch(cli.command, cap, stdin, out);
    out.flush()?;
    result
}

fn dispatch(command: Command, cap: u64, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Analyze { file } => {
            let f = load_table(&file, stdin)?;
            let r = classify(&f);
            writeln!(out, "k: {}", f.k())?;
            writeln!(out, "n: {}", f.n())?;
            writeln!(out, "essential: {}", r.essential)?;
            writeln!(out, "ess: {}", r.ess)?;
            match r.gap {
                Some(g) => writeln!(out, "gap: {g}")?,
                None => writeln!(out, "gap: undefined")?,
            }
            match r.best_minor {
                Some(((i, j), e)) => writeln!(out, "best_minor: {i}<-{j} (ess {e})")?,
                None => writeln!(out, "best_minor: -")?,
            }
            writeln!(out, "plus: {}", yes_no(r.plus_member))?;
            writeln!(out, "minus: {}", yes_no(r.minus_member))?;
            writeln!(out, "gnn: {}", yes_no(r.gnn_member))?;
            match &r.decomposition {
                Some(d) => writeln!(out, "decomposition: {}<-{}", d.pair.0, d.pair.1)?,
                None => writeln!(out, "decomposition: none")?,
            }
        }
        Command::Minor { file, i, j } => {
            let f = load_table(&file, stdin)?;
            out.write_all(write_table(&f.identify(i, j)?).as_bytes())?;
        }
        Command::Census {
            k,
            n,
            sample,
            seed,
            jobs,
            ..
        } => {
            let jobs = jobs.unwrap_or_else(driver::default_jobs);
            let dist = match (sample, seed) {
                (Some(count), Some(seed)) => {
                    if count == 0 {
                        return Err(CliError::Usage("--sample needs at least one sample".into()));
                    }
                    driver::census_sample(k, n, count, seed, jobs)?
                }
                _ => driver::census_exhaustive(k, n, jobs, cap)?,
            };
            write!(out, "{dist}")?;
        }
        Command::Generate { family, mode } => {
            let family = family.family()?;
            let mode = mode.mode();
            check_budget(&family, mode, cap)?;
            for f in family.generate(mode)? {
                writeln!(out, "{}", write_compact(&f))?;
            }
        }
        Command::Verify { family, mode } => {
            let report = gapkit_core::census::verify_family(family.family()?, mode.mode(), cap)?;
            write!(out, "{report}")?;
            if report.verdict != Verdict::Pass {
                return Err(CliError::Verification);
            }
        }
        Command::Count { family, k, n, p, m } => {
            writeln!(out, "{}", count(family.as_deref(), k, n, p, m)?)?;
        }
        Command::Decompose { file } => {
            let f = load_table(&file, stdin)?;
            match classify(&f).decomposition {
                Some(d) => {
                    writeln!(out, "# pair {}<-{}", d.pair.0, d.pair.1)?;
                    writeln!(out, "# h")?;
                    out.write_all(write_table(&d.h).as_bytes())?;
                    writeln!(out, "# g")?;
                    out.write_all(write_table(&d.g).as_bytes())?;
                }
                None => writeln!(out, "no collapsing pair")?,
            }
        }
        Command::Parse { k, n, expr } => {
            let f = parse_expr(&expr, k, n).map_err(|e| CliError::Usage(format!("expression {e}")))?;
            out.write_all(write_table(&f).as_bytes())?;
        }
        Command::Print { file } => {
            let f = load_table(&file, stdin)?;
            writeln!(out, "{}", print_sc(&f))?;
        }
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_budget(family: &Family, mode: Mode, cap: u64) -> Result<(), CliError> {
    let needed = match mode {
        Mode::All => family.all_mode_len()?,
        Mode::Sample { count, .. } => BigCount::from(count),
    };
    if needed > BigCount::from(cap) {
        return Err(Error::Infeasible { required: needed, cap }.into());
    }
    Ok(())
}

fn count(
    family: Option<&str>,
    k: usize,
    n: Option<usize>,
    p: Option<usize>,
    m: Option<usize>,
) -> Result<BigCount, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage("--n is required".into()));
    if let Some(m) = m {
        if family.is_some() {
            return Err(CliError::Usage("--m counts all functions with m essential variables; omit --family".into()));
        }
        return Ok(families::count_exact_ess(k, need_n()?, m)?);
    }
    let Some(family) = family else {
        return Err(CliError::Usage("either --family or --m is required".into()));
    };
    Ok(match family {
        "gnn" => families::count_gnn(k, need_n()?)?,
        "repfree" => families::count_repfree(k, need_n()?)?,
        "gpk" => {
            let p = p.ok_or_else(|| CliError::Usage("--p is required for gpk".into()))?;
            families::count_gpk(k, need_n()?, p)?
        }
        "g2plus" => families::count_g2_plus(k, need_n()?)?,
        "g2k3" => {
            if n.is_some_and(|n| n != 3) {
                return Err(CliError::Usage("g2k3 has arity 3".into()));
            }
            families::count_g2k3(k)?
        }
        "g2minus" => return Err(CliError::Usage("the g2minus class has no closed-form count".into())),
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    })
}
