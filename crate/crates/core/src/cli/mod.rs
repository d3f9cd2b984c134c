// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Batch command-line front end.
//!
//! Every subcommand reads a TOML [`RunConfig`], writes CSV tables into the
//! output directory and maps its outcome to one [`ExitStatus`]. The output
//! directory is, in order of precedence, `$NHQSIM_OUT`, `--out`, then
//! `output.directory` from the configuration.

mod config;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dynamics::Propagator;
use crate::entanglement::reports_table;
use crate::error::{Error, Result};
use crate::experiments::{
    entanglement_map, entanglement_traces, fidelity_traces, find_optimal, reproduce_scenario,
    SearchOptions, SweepGrid, SCENARIOS,
};
use crate::hamiltonian::build_hamiltonian;
use crate::spectral::{ep_scan, ep_scan_table, locate_eps, located_eps_table, spectrum_sweep};
use crate::table::{Cell, Table};

pub use config::{
    targets, CouplingSpec, EvolveTask, FidelityTask, GridSpec, InitialStateBlock, MapTask,
    OptimizeTask, Ordering, OutputBlock, PerQubit, RangeGrid, RunConfig, Scale, SpectrumTask,
    StateKind, StepGrid, SystemBlock, TaskBlock, ValuesGrid, SCHEMA_VERSION, TARGET_NAMES,
};

/// Environment variable that overrides `--out`.
pub const OUT_ENV: &str = "NHQSIM_OUT";

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// Bad command line or configuration.
    Usage = 1,
    /// Eigensolver, propagation or other numerical failure.
    Numerical = 2,
    /// A reproduced scenario failed one of its manifest checks.
    ManifestFailed = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn from_error(e: &Error) -> Self {
        if e.is_numerical() {
            ExitStatus::Numerical
        } else {
            ExitStatus::Usage
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nhqsim",
    version,
    about = "Non-Hermitian qubit simulator: spectra, dynamics and entanglement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output directory; `NHQSIM_OUT` takes precedence.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
    /// Reserved; every computation is deterministic.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue sweep and exceptional-point scan.
    Spectrum(CommonArgs),
    /// Normalized time evolution with per-time entanglement reports.
    Evolve(CommonArgs),
    /// Entanglement map over a (t, J) grid.
    Map(CommonArgs),
    /// Maximize the entanglement objective over a (t, J[, Ω]) box.
    Optimize(CommonArgs),
    /// Fidelity to target states over time.
    Fidelity(CommonArgs),
    /// Regenerate a named data set and check it against its manifest.
    Reproduce {
        /// Scenario label, or `all`.
        label: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the parsed configuration with unit comments.
    ShowConfig(CommonArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Spectrum(c)
            | Command::Evolve(c)
            | Command::Map(c)
            | Command::Optimize(c)
            | Command::Fidelity(c)
            | Command::ShowConfig(c) => c,
            Command::Reproduce { common, .. } => common,
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// reports errors on stderr.
pub fn run<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::Usage
            } else {
                ExitStatus::Success
            };
        }
    };
    let out_override = std::env::var_os(OUT_ENV).map(PathBuf::from);
    match execute(&cli.command, out_override.as_deref()) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::from_error(&e)
        }
    }
}

/// Runs a parsed command; `out_override` plays the role of `NHQSIM_OUT`.
pub fn execute(command: &Command, out_override: Option<&Path>) -> Result<ExitStatus> {
    let common = command.common();
    if common.seed.is_some() {
        log::debug!("--seed is reserved and has no effect");
    }
    let cfg = RunConfig::load(&common.config)?;
    let out = out_override
        .map(Path::to_path_buf)
        .or_else(|| common.out.clone())
        .unwrap_or_else(|| PathBuf::from(&cfg.output.directory));
    let mut builder = rayon::ThreadPoolBuilder::new();
    match common.threads {
        Some(0) => return Err(Error::Config("--threads must be at least 1".into())),
        Some(n) => builder = builder.num_threads(n),
        None => {}
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker threads: {e}")))?;
    let ctx = Context {
        cfg: &cfg,
        out: &out,
    };
    pool.install(|| match command {
        Command::Spectrum(_) => ctx.spectrum(),
        Command::Evolve(_) => ctx.evolve(),
        Command::Map(_) => ctx.map(),
        Command::Optimize(_) => ctx.optimize(),
        Command::Fidelity(_) => ctx.fidelity(),
        Command::Reproduce { label, .. } => ctx.reproduce(label),
        Command::ShowConfig(_) => {
            print!("{}", cfg.to_toml()?);
            Ok(ExitStatus::Success)
        }
    })
}

struct Context<'a> {
    cfg: &'a RunConfig,
    out: &'a Path,
}

fn missing(task: &str) -> Error {
    Error::Config(format!("missing [task.{task}] block"))
}

impl Context<'_> {
    fn write(&self, name: &str, table: &Table) -> Result<()> {
        let path = self.out.join(name);
        table.write_digits(&path, self.cfg.output.precision)?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn spectrum(&self) -> Result<ExitStatus> {
        let task = self
            .cfg
            .task
            .spectrum
            .as_ref()
            .ok_or_else(|| missing("spectrum"))?;
        let template = self.cfg.system()?;
        let parameter = task.parameter()?;
        let tol = task.tolerances()?;
        let grid = task.grid.values("task.spectrum.grid")?;
        let sweep = spectrum_sweep(&template, parameter, &grid)?;
        self.write("spectrum.csv", &sweep.to_table())?;
        let scan = ep_scan(&template, parameter, &grid, tol)?;
        self.write("ep_scan.csv", &ep_scan_table(parameter, &scan))?;
        if task.locate {
            let located = locate_eps(&template, parameter, &grid, tol)?;
            self.write("located_eps.csv", &located_eps_table(parameter, &located))?;
        }
        let failed = sweep.spectra.iter().filter(|s| s.is_none()).count();
        if failed > 0 {
            return Err(Error::Numerical(format!(
                "eigensolver failed at {failed} grid point(s)"
            )));
        }
        Ok(ExitStatus::Success)
    }

    fn evolve(&self) -> Result<ExitStatus> {
        let task = self
            .cfg
            .task
            .evolve
            .as_ref()
            .ok_or_else(|| missing("evolve"))?;
        let sys = self.cfg.system()?;
        let psi0 = self.cfg.initial_state(sys.n())?;
        let times = task.times.values("task.evolve.times")?;
        let targets = targets(&task.targets, &psi0)?;
        let traj = Propagator::new(&build_hamiltonian(&sys))?.series(&psi0, &times)?;
        self.write(
            "trajectory.csv",
            &traj.to_table(&task.ordering.basis(sys.n()))?,
        )?;
        let reports = entanglement_traces(&sys, &psi0, &times, &targets)?;
        self.write("reports.csv", &reports_table(sys.n(), &targets, &reports))?;
        Ok(ExitStatus::Success)
    }

    fn map(&self) -> Result<ExitStatus> {
        let task = self.cfg.task.map.clone().unwrap_or_default();
        let sys = self.cfg.system()?;
        let psi0 = self.cfg.initial_state(sys.n())?;
        let default = SweepGrid::default_map();
        let times = match &task.times {
            Some(g) => g.values("task.map.times")?,
            None => default.times,
        };
        let couplings = match &task.couplings {
            Some(g) => g.values("task.map.couplings")?,
            None => default.couplings,
        };
        let map = entanglement_map(&sys, &psi0, &SweepGrid::new(times, couplings)?)?;
        self.write("map.csv", &map.to_table())?;
        match map.argmax() {
            Some(best) => println!(
                "best {}: t = {} µs, J = {} rad/µs",
                map.objective.name(),
                best.time,
                best.coupling
            ),
            None => return Err(Error::Numerical("every map cell failed".into())),
        }
        Ok(ExitStatus::Success)
    }

    fn optimize(&self) -> Result<ExitStatus> {
        let task = self
            .cfg
            .task
            .optimize
            .as_ref()
            .ok_or_else(|| missing("optimize"))?;
        let sys = self.cfg.system()?;
        let psi0 = self.cfg.initial_state(sys.n())?;
        let objective = task.objective(sys.n())?;
        let mut options = SearchOptions::default();
        if let Some(r) = task.rel_tol {
            options.rel_tol = r;
        }
        let best = find_optimal(&sys, &psi0, task.search_box(), objective, options)?;
        let mut t = Table::new(["objective", "value", "time", "J", "omega"]);
        t.push(vec![
            objective.name().into(),
            best.value.into(),
            best.time.into(),
            best.coupling.into(),
            best.omega.map_or(Cell::Empty, Cell::Real),
        ]);
        self.write("optimum.csv", &t)?;
        self.write(
            "optimum_report.csv",
            &reports_table(sys.n(), &[], std::slice::from_ref(&best.report)),
        )?;
        println!(
            "{} = {} at t = {} µs, J = {} rad/µs",
            objective.name(),
            best.value,
            best.time,
            best.coupling
        );
        Ok(ExitStatus::Success)
    }

    fn fidelity(&self) -> Result<ExitStatus> {
        let task = self
            .cfg
            .task
            .fidelity
            .as_ref()
            .ok_or_else(|| missing("fidelity"))?;
        let sys = self.cfg.system()?;
        let psi0 = self.cfg.initial_state(sys.n())?;
        let names = task
            .targets
            .clone()
            .unwrap_or_else(|| vec!["ghz_minus_i".into(), "ghz_plus_i".into()]);
        let targets = targets(&names, &psi0)?;
        let times = task.times.values("task.fidelity.times")?;
        let traces = fidelity_traces(&sys, &psi0, &targets, &times)?;
        self.write("fidelity.csv", &traces.to_table())?;
        for label in &traces.labels {
            if let Some((t, f)) = traces.peak(label, f64::NEG_INFINITY, f64::INFINITY) {
                println!("peak {label}: {f} at t = {t} µs");
            }
        }
        Ok(ExitStatus::Success)
    }

    fn reproduce(&self, label: &str) -> Result<ExitStatus> {
        let labels: Vec<&str> = if label == "all" {
            SCENARIOS.to_vec()
        } else {
            vec![label]
        };
        let mut status = ExitStatus::Success;
        for label in labels {
            let outcome = reproduce_scenario(label, self.out)?;
            let failures: Vec<_> = outcome.manifest.failures().collect();
            if failures.is_empty() {
                println!("{label}: PASS ({})", outcome.directory.display());
            } else {
                status = ExitStatus::ManifestFailed;
                println!("{label}: FAIL ({})", outcome.directory.display());
                for f in failures {
                    println!(
                        "  {}: expected {}, observed {}",
                        f.name, f.expected, f.observed
                    );
                }
            }
        }
        Ok(status)
    }
}
