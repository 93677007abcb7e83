//! Command-line front end: convergence tables, CFL sweeps, mass tracking and
//! single solves, written as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eldg::harness::runs::{cfl_table, convergence_table, mass_table};
use eldg::harness::{run_cfl_sweep, run_convergence, run_mass_tracking, solve, CsvTable, ProblemId, RunConfig, SchemeName, SplitOrder};
use eldg::{EldgError, TableauTag};

#[derive(Parser)]
#[command(name = "eldg", version, about = "Eulerian-Lagrangian RK-DG solver for transport and wave equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Error table over a list of meshes.
    Converge(Opts),
    /// Errors versus CFL on a fixed mesh.
    CflSweep(Opts),
    /// Mass error after every step.
    MassTrack(Opts),
    /// Single run; writes cell means.
    Solve(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    problem: String,
    #[arg(long, default_value = "eldg")]
    scheme: String,
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Mesh size (cells per direction); repeatable.
    #[arg(long = "nx")]
    nx: Vec<usize>,
    /// CFL number; repeatable.
    #[arg(long = "cfl")]
    cfl: Vec<f64>,
    #[arg(long)]
    tfinal: Option<f64>,
    #[arg(long, default_value = "rk4", value_parser = ["fe", "ssprk2", "rk2", "rk4"])]
    rk: String,
    /// TVB constant of the minmod limiter, or `off`.
    #[arg(long = "limiter-m", default_value = "off")]
    limiter_m: String,
    #[arg(long, default_value = "off", value_parser = ["on", "off"])]
    postprocess: String,
    #[arg(long, default_value = "strang", value_parser = ["strang", "fourth"])]
    split: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(o: &Opts) -> Result<RunConfig, EldgError> {
    let problem: ProblemId = o.problem.parse()?;
    let mut cfg = RunConfig::new(problem);
    cfg.scheme = o.scheme.parse::<SchemeName>()?;
    cfg.degree = o.degree;
    if !o.nx.is_empty() {
        cfg.meshes = o.nx.clone();
    }
    if !o.cfl.is_empty() {
        cfg.cfls = o.cfl.clone();
    }
    if let Some(t) = o.tfinal {
        cfg.t_final = t;
    }
    cfg.rk = o.rk.parse::<TableauTag>()?;
    cfg.limiter_m = match o.limiter_m.as_str() {
        "off" => None,
        s => Some(
            s.parse::<f64>()
                .map_err(|_| EldgError::InvalidArgument(format!("bad limiter constant '{s}'")))?,
        ),
    };
    cfg.postprocess = o.postprocess == "on";
    cfg.split = o.split.parse::<SplitOrder>()?;
    cfg.out = o.out.clone();
    cfg.validate()?;
    Ok(cfg)
}

fn emit(table: &CsvTable, out: &Option<PathBuf>) -> io::Result<()> {
    match out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            table.write_to(&mut w)?;
            w.flush()
        }
        None => table.write_to(&mut io::stdout().lock()),
    }
}

fn run(cmd: &Command) -> Result<(), EldgError> {
    let (opts, name) = match cmd {
        Command::Converge(o) => (o, "converge"),
        Command::CflSweep(o) => (o, "cfl-sweep"),
        Command::MassTrack(o) => (o, "mass-track"),
        Command::Solve(o) => (o, "solve"),
    };
    let cfg = config(opts)?;
    let table = match name {
        "converge" => convergence_table(&cfg, &run_convergence(&cfg)?),
        "cfl-sweep" => cfl_table(&cfg, &run_cfl_sweep(&cfg)?),
        "mass-track" => {
            let (rows, out) = run_mass_tracking(&cfg)?;
            mass_table(&cfg, &rows, out.initial_mass.len())
        }
        _ => {
            let s = solve(&cfg)?;
            if let Some(e) = &s.errors {
                eprintln!("t = {} steps = {} L1(u1) = {:e}", s.outcome.time, s.outcome.steps, e[0].l1);
            }
            s.table
        }
    };
    emit(&table, &cfg.out).map_err(|e| EldgError::InvalidArgument(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_solver_failure() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
