//! `dhtrand` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, inconsistent
//! options, malformed config), 2 when generation, I/O or computation fails.

mod config;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use dhtrand::experiments::{
    self, comparison_report, dseq_table, figure_series, prng_table, reference, switch_table,
    table_csv, FigureSource,
};
use dhtrand::transform::format_real_sequence;
use dhtrand::{
    apply_switches, base_switch_sequence, dht, dsequence, format_bitstring, measure,
    parse_bitstring, prng_bits, BitSequence, DhtKernel, SwitchSpec,
};

pub use config::TableConfig;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] dhtrand::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) | CliError::Io { .. } => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dhtrand",
    version,
    about = "Discrete Hilbert transform randomness measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a bit sequence
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Transform a bitstring file
    Dht {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kernel: KernelArg,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compute r, R, r' and R' for a bitstring file
    Measure {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Defaults to `fast`, or `matrix` for sequences of at most 64 bits
        #[arg(long, value_enum)]
        kernel: Option<KernelArg>,
        /// Print reals with 17 significant digits
        #[arg(long)]
        machine: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Reproduce a result table as CSV
    Table(TableArgs),
    /// Emit a sequence and its transform as CSV or SVG
    Plot {
        #[command(subcommand)]
        source: PlotSource,
        #[arg(long, global = true)]
        svg: bool,
        #[arg(long, value_name = "FILE", global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Binary expansion of 1/P
    Dseq {
        #[arg(long)]
        prime: u64,
        /// Defaults to one full period
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Balanced 0/1 block sequence with switched bits
    Switch {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        switches: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit 1-indexed positions (S in each half)
        #[arg(long, value_delimiter = ',')]
        positions: Option<Vec<usize>>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Pseudo-random bits
    Prng {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableKind,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads (default: available cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// dseq only: print computed values next to the published column
    #[arg(long)]
    deviation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Switch,
    Dseq,
    Prng,
    /// 1/331 against length-300 switch sequences at 13 and 20 switches
    Compare,
}

#[derive(Debug, Subcommand)]
enum PlotSource {
    Dseq {
        #[arg(long)]
        prime: u64,
    },
    Switch {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        switches: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        positions: Option<Vec<usize>>,
    },
    File {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    Direct,
    Matrix,
    Fast,
}

impl From<KernelArg> for DhtKernel {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Direct => DhtKernel::DirectSum,
            KernelArg::Matrix => DhtKernel::Matrix,
            KernelArg::Fast => DhtKernel::FastConvolution,
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, path: &Path) -> Result<String, CliError> {
        if path == Path::new("-") {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })
        }
    }

    fn read_bits(&mut self, path: &Path) -> Result<BitSequence, CliError> {
        Ok(parse_bitstring(&self.read_input(path)?)?)
    }

    fn emit(&mut self, out: Option<&Path>, data: &str) -> Result<(), CliError> {
        match out {
            Some(path) => fs::write(path, data).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            }),
            None => self
                .stdout
                .write_all(data.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                }),
        }
    }
}

fn switch_spec(
    length: usize,
    switches: usize,
    seed: u64,
    positions: Option<Vec<usize>>,
) -> Result<SwitchSpec, CliError> {
    let Some(positions) = positions else {
        return Ok(SwitchSpec::Random { switches, seed });
    };
    let half = length / 2;
    let first = positions.iter().filter(|&&p| p >= 1 && p <= half).count();
    let second = positions
        .iter()
        .filter(|&&p| p > half && p <= length)
        .count();
    if first != switches || second != switches || positions.len() != 2 * switches {
        return Err(CliError::Usage(format!(
            "--positions must list {switches} positions in each half of the sequence"
        )));
    }
    Ok(SwitchSpec::Positions(positions))
}

fn switched(length: usize, spec: &SwitchSpec) -> Result<BitSequence, CliError> {
    let base = base_switch_sequence(length)?;
    Ok(apply_switches(&base, spec)?)
}

fn run_gen(kind: GenKind, io: &mut Io) -> Result<(), CliError> {
    let (seq, out) = match kind {
        GenKind::Dseq { prime, length, out } => (dsequence(prime, length)?, out),
        GenKind::Switch {
            length,
            switches,
            seed,
            positions,
            out,
        } => {
            let spec = switch_spec(length, switches, seed, positions)?;
            (switched(length, &spec)?, out)
        }
        GenKind::Prng { length, seed, out } => (prng_bits(seed, length), out),
    };
    io.emit(out.as_deref(), &format_bitstring(&seq))
}

fn load_config(path: &Option<PathBuf>, io: &mut Io) -> Result<TableConfig, CliError> {
    match path {
        None => Ok(TableConfig::default()),
        Some(p) => io
            .read_input(p)?
            .parse()
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
    }
}

fn run_table(args: TableArgs, io: &mut Io) -> Result<(), CliError> {
    let cfg = load_config(&args.config, io)?;
    let trials = args
        .trials
        .or(cfg.trials)
        .unwrap_or(experiments::DEFAULT_TRIALS);
    let seed = args.seed.or(cfg.seed).unwrap_or(experiments::DEFAULT_SEED);
    if args.deviation && args.kind != TableKind::Dseq {
        return Err(CliError::Usage(
            "--deviation only applies to `table dseq`".into(),
        ));
    }
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }

    let compute = || -> Result<String, CliError> {
        Ok(match args.kind {
            TableKind::Switch => {
                let lengths = cfg
                    .lengths
                    .clone()
                    .unwrap_or(experiments::SWITCH_LENGTHS.to_vec());
                let counts = cfg
                    .switches
                    .clone()
                    .unwrap_or(experiments::SWITCH_COUNTS.to_vec());
                table_csv(&switch_table(&lengths, &counts, trials, seed)?)
            }
            TableKind::Dseq => {
                let primes = cfg
                    .primes
                    .clone()
                    .unwrap_or(experiments::PAPER_PRIMES.to_vec());
                let rows = dseq_table(&primes, DhtKernel::FastConvolution)?;
                if args.deviation {
                    reference::deviation_csv(&rows)
                } else {
                    table_csv(&rows)
                }
            }
            TableKind::Prng => {
                let lengths = cfg
                    .lengths
                    .clone()
                    .unwrap_or(experiments::PRNG_LENGTHS.to_vec());
                table_csv(&prng_table(&lengths, trials, seed)?)
            }
            TableKind::Compare => comparison_report(trials, seed)?.to_string(),
        })
    };

    let text = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?
            .install(compute)?,
        None => compute()?,
    };
    io.emit(args.out.as_deref(), &text)
}

fn run_plot(
    source: PlotSource,
    svg: bool,
    out: Option<PathBuf>,
    io: &mut Io,
) -> Result<(), CliError> {
    let source = match source {
        PlotSource::Dseq { prime } => FigureSource::DSequence { prime },
        PlotSource::Switch {
            length,
            switches,
            seed,
            positions,
        } => FigureSource::Switch {
            length,
            spec: switch_spec(length, switches, seed, positions)?,
        },
        PlotSource::File { input } => FigureSource::Bits(io.read_bits(&input)?),
    };
    let fig = figure_series(&source)?;
    let text = if svg { fig.to_svg() } else { fig.to_csv() };
    io.emit(out.as_deref(), &text)
}

fn dispatch(cli: Cli, io: &mut Io) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { kind } => run_gen(kind, io),
        Command::Dht { input, kernel, out } => {
            let bits = io.read_bits(&input)?;
            let g = dht(&bits.to_real()?, kernel.into())?;
            io.emit(out.as_deref(), &format_real_sequence(&g))
        }
        Command::Measure {
            input,
            kernel,
            machine,
            out,
        } => {
            let bits = io.read_bits(&input)?;
            let kernel = kernel
                .map(DhtKernel::from)
                .unwrap_or_else(|| DhtKernel::auto_for(bits.len()));
            let rep = measure(&bits, kernel)?;
            let text = if machine {
                rep.to_machine_text()
            } else {
                rep.to_text()
            };
            io.emit(out.as_deref(), &text)
        }
        Command::Table(args) => run_table(args, io),
        Command::Plot { source, svg, out } => run_plot(source, svg, out, io),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli, &mut io) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
