//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when verification finds a mismatch or a
//! command fails at run time, 2 on usage errors. Data goes to standard
//! output, diagnostics to standard error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::counting;
use crate::engine::{self, Boundary, Grid, Rule};
use crate::neighborhood::{self, NeighborhoodSpec};
use crate::sequences::{self, SequenceId};
use crate::verify;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "kneighborhood",
    version,
    about = "Count, enumerate and simulate k-neighborhoods on Z^d"
)]
struct Cli {
    #[command(subcommand)]
    command: RawCommand,
}

#[derive(Debug, Subcommand)]
enum RawCommand {
    /// Print the number of neighbors
    Count(SpecArgs),
    /// Print the neighbor offsets, one per line
    Enumerate(SpecArgs),
    /// Print terms of an OEIS sequence
    Sequence {
        #[arg(long)]
        id: String,
        #[arg(long)]
        terms: usize,
        /// Emit "n a(n)" lines
        #[arg(long)]
        bfile: bool,
    },
    /// Cross-check formulas, recurrences, enumeration and brute force
    Verify {
        #[arg(long = "max-d")]
        max_d: u32,
        #[arg(long = "max-k")]
        max_k: u32,
        #[arg(long = "max-r")]
        max_r: u32,
    },
    /// Run a totalistic cellular automaton
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    d: u32,
    /// Required unless --diamond
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    diamond: bool,
    #[arg(long = "sharp-k")]
    sharp_k: bool,
    #[arg(long = "sharp-r")]
    sharp_r: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Grid size per axis, e.g. 16,16
    #[arg(long)]
    dims: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    diamond: bool,
    /// e.g. B3/S23 or B1/S0..26
    #[arg(long)]
    rule: String,
    #[arg(long)]
    steps: usize,
    /// Live cells, one comma-separated coordinate per line
    #[arg(long)]
    pattern: PathBuf,
    /// torus or dead
    #[arg(long, default_value = "torus")]
    boundary: String,
    #[arg(long = "snapshot-every")]
    snapshot_every: Option<usize>,
}

/// A validated simulation request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub dims: Vec<usize>,
    pub spec: NeighborhoodSpec,
    pub rule: Rule,
    pub steps: usize,
    pub pattern: PathBuf,
    pub boundary: Boundary,
    pub snapshot_every: Option<usize>,
}

/// A parsed and validated command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Count(NeighborhoodSpec),
    Enumerate(NeighborhoodSpec),
    Sequence {
        id: SequenceId,
        terms: usize,
        bfile: bool,
    },
    Verify {
        max_d: u32,
        max_k: u32,
        max_r: u32,
    },
    Simulate(Simulation),
}

/// Why [`parse_args`] did not produce a command.
#[derive(Debug)]
pub enum ParseOutcome {
    /// `--help` or `--version`: print the text and exit successfully.
    Info(String),
    /// Bad flags or values; exit code 2.
    Usage(String),
}

fn build_spec(
    d: u32,
    k: Option<u32>,
    r: u32,
    diamond: bool,
    sharp_k: bool,
    sharp_r: bool,
) -> Result<NeighborhoodSpec, String> {
    let spec = if diamond {
        if sharp_k {
            return Err("--sharp-k does not apply to --diamond".into());
        }
        NeighborhoodSpec::diamond(d, r)
    } else {
        let k = k.ok_or("--k is required unless --diamond is given")?;
        NeighborhoodSpec::k_radius(d, k, r)
    };
    spec.map(|s| s.with_sharp_k(sharp_k).with_sharp_r(sharp_r))
        .map_err(|e| e.to_string())
}

fn validate(raw: RawCommand) -> Result<Command, String> {
    Ok(match raw {
        RawCommand::Count(a) => {
            Command::Count(build_spec(a.d, a.k, a.r, a.diamond, a.sharp_k, a.sharp_r)?)
        }
        RawCommand::Enumerate(a) => {
            Command::Enumerate(build_spec(a.d, a.k, a.r, a.diamond, a.sharp_k, a.sharp_r)?)
        }
        RawCommand::Sequence { id, terms, bfile } => {
            let id = id.parse::<SequenceId>().map_err(|e| e.to_string())?;
            if terms == 0 {
                return Err("--terms must be at least 1".into());
            }
            Command::Sequence { id, terms, bfile }
        }
        RawCommand::Verify {
            max_d,
            max_k,
            max_r,
        } => {
            if max_d == 0 || max_k == 0 || max_r == 0 {
                return Err("--max-d, --max-k and --max-r must be at least 1".into());
            }
            Command::Verify {
                max_d,
                max_k,
                max_r,
            }
        }
        RawCommand::Simulate(a) => {
            let dims = a
                .dims
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| format!("--dims: bad size {t:?}: {e}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if dims.contains(&0) {
                return Err("--dims: sizes must be positive".into());
            }
            let spec = build_spec(dims.len() as u32, a.k, a.r, a.diamond, false, false)?;
            let rule = a.rule.parse::<Rule>().map_err(|e| e.to_string())?;
            let neighbors = counting::count(&spec).map_err(|e| e.to_string())?.value;
            if let Some(m) = rule.max_count() {
                if num_bigint::BigUint::from(m) > neighbors {
                    return Err(format!(
                        "rule {rule} mentions {m} live neighbors but {spec} has only {neighbors}"
                    ));
                }
            }
            let boundary = a.boundary.parse::<Boundary>().map_err(|e| e.to_string())?;
            if a.snapshot_every == Some(0) {
                return Err("--snapshot-every must be at least 1".into());
            }
            Command::Simulate(Simulation {
                dims,
                spec,
                rule,
                steps: a.steps,
                pattern: a.pattern,
                boundary,
                snapshot_every: a.snapshot_every,
            })
        }
    })
}

/// Parses `argv` (including the program name) into a validated command.
pub fn parse_args<I, T>(argv: I) -> Result<Command, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Info(e.to_string()),
        _ => ParseOutcome::Usage(e.to_string()),
    })?;
    validate(cli.command).map_err(|msg| ParseOutcome::Usage(format!("error: {msg}\n")))
}

/// Runs a command, writing data to `out` and diagnostics to `err`.
pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match run_command(cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn run_command(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<u8> {
    match cmd {
        Command::Count(spec) => {
            let c = counting::count(spec)?;
            if !c.method.is_published() {
                writeln!(err, "note: {spec} counted with the {}", c.method)?;
            }
            writeln!(out, "{}", c.value)?;
        }
        Command::Enumerate(spec) => {
            let offsets = neighborhood::enumerate_offsets(spec)?;
            out.write_all(neighborhood::format_offsets(&offsets).as_bytes())?;
        }
        Command::Sequence { id, terms, bfile } => {
            if *bfile {
                sequences::emit_bfile(*id, *terms, out)?;
            } else {
                for e in sequences::generate(*id, *terms)? {
                    writeln!(out, "{}", e.value)?;
                }
            }
        }
        Command::Verify {
            max_d,
            max_k,
            max_r,
        } => {
            let checks = verify::verify(*max_d, *max_k, *max_r, &neighborhood::Limits::default());
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            writeln!(
                out,
                "{} checks, {} passed, {} failed",
                checks.len(),
                checks.len() - failed,
                failed
            )?;
            if failed > 0 {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Simulate(sim) => simulate(sim, out)?,
    }
    Ok(EXIT_OK)
}

fn write_snapshot(out: &mut dyn Write, generation: usize, grid: &Grid) -> crate::Result<()> {
    writeln!(out, "# generation {generation}")?;
    out.write_all(grid.snapshot().as_bytes())?;
    Ok(())
}

fn simulate(sim: &Simulation, out: &mut dyn Write) -> crate::Result<()> {
    let text = fs::read_to_string(&sim.pattern)?;
    let cells = engine::parse_pattern(&text)?;
    let mut grid = engine::make_grid(&sim.dims, sim.boundary, &cells)?;
    let offsets = neighborhood::enumerate_offsets(&sim.spec)?;
    writeln!(out, "generation 0 population {}", engine::population(&grid))?;
    if sim.snapshot_every.is_some() {
        write_snapshot(out, 0, &grid)?;
    }
    for generation in 1..=sim.steps {
        grid = engine::step(&grid, &sim.rule, &offsets)?;
        writeln!(
            out,
            "generation {generation} population {}",
            engine::population(&grid)
        )?;
        if sim.snapshot_every.is_some_and(|n| generation % n == 0) {
            write_snapshot(out, generation, &grid)?;
        }
    }
    Ok(())
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cmd) => execute(&cmd, out, err),
        Err(ParseOutcome::Info(text)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(ParseOutcome::Usage(text)) => {
            let _ = err.write_all(text.as_bytes());
            EXIT_USAGE
        }
    }
}
