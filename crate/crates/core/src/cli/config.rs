// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! TOML run configuration.
//!
//! ```toml
//! schema_version = 1
//!
//! [system]
//! n = 3
//! omega = 1.576        # rad/µs; a list gives per-qubit values
//! delta = 0.0          # rad/µs
//! gamma = 6.0          # rad/µs
//! coupling = 1e-3      # rad/µs; uniform J or a full n×n matrix
//! convention = "unordered_pairs"
//!
//! [initial_state]
//! kind = "coherent"    # coherent | all_f | custom (with amplitudes = [[re, im], …])
//!
//! [task.evolve]
//! times = { start = 0.0, stop = 6.5, points = 651 }   # µs
//! targets = ["ghz_minus_i", "ghz_plus_i"]
//!
//! [output]
//! directory = "out"
//! precision = 17
//! ```
//!
//! Unknown keys anywhere are rejected.

use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dynamics::{initial_state, BasisOrdering, InitialState, QuantumState};
use crate::entanglement::Target;
use crate::error::{Error, Result};
use crate::experiments::{linspace, logspace, stepped, Objective, SearchBox};
use crate::hamiltonian::{CouplingConvention, QubitParams, SystemConfig};
use crate::linalg::c;
use crate::spectral::{EpTolerances, SweepParameter};
use crate::table::FULL_PRECISION;

/// The only schema version this build reads.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<InitialStateBlock>,
    #[serde(default, skip_serializing_if = "TaskBlock::is_empty")]
    pub task: TaskBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

/// A value shared by all qubits or listed per qubit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, expecting = "a number or a list of per-qubit numbers")]
pub enum PerQubit {
    Uniform(f64),
    Each(Vec<f64>),
}

impl PerQubit {
    fn resolve(&self, name: &str, n: usize) -> Result<Vec<f64>> {
        match self {
            PerQubit::Uniform(x) => Ok(vec![*x; n]),
            PerQubit::Each(v) if v.len() == n => Ok(v.clone()),
            PerQubit::Each(v) => Err(Error::Config(format!(
                "system.{name}: expected {n} per-qubit values, got {}",
                v.len()
            ))),
        }
    }
}

fn zero() -> PerQubit {
    PerQubit::Uniform(0.0)
}

/// Uniform coupling on every pair, or a full symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, expecting = "a number or an n×n matrix")]
pub enum CouplingSpec {
    Uniform(f64),
    Matrix(Vec<Vec<f64>>),
}

impl Default for CouplingSpec {
    fn default() -> Self {
        CouplingSpec::Uniform(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemBlock {
    pub n: usize,
    pub omega: PerQubit,
    #[serde(default = "zero")]
    pub delta: PerQubit,
    pub gamma: PerQubit,
    #[serde(default)]
    pub coupling: CouplingSpec,
    #[serde(default)]
    pub convention: CouplingConvention,
}

impl SystemBlock {
    pub fn to_system(&self) -> Result<SystemConfig> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Config("system.n: must be at least 1".into()));
        }
        let omega = self.omega.resolve("omega", n)?;
        let delta = self.delta.resolve("delta", n)?;
        let gamma = self.gamma.resolve("gamma", n)?;
        if let Some(j) = gamma.iter().position(|g| !(*g >= 0.0)) {
            return Err(Error::Config(format!(
                "system.gamma: must be >= 0, got {} for qubit {j}",
                gamma[j]
            )));
        }
        let qubits = (0..n)
            .map(|j| QubitParams::new(omega[j], delta[j], gamma[j]))
            .collect();
        let coupling = match &self.coupling {
            CouplingSpec::Uniform(x) => {
                DMatrix::from_fn(n, n, |a, b| if a == b { 0.0 } else { *x })
            }
            CouplingSpec::Matrix(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Config(format!(
                        "system.coupling: matrix must be {n}×{n}"
                    )));
                }
                DMatrix::from_fn(n, n, |a, b| rows[a][b])
            }
        };
        SystemConfig::new(qubits, coupling)
            .map(|s| s.with_convention(self.convention))
            .map_err(|e| Error::Config(format!("system: {e}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    #[default]
    Coherent,
    AllF,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialStateBlock {
    pub kind: StateKind,
    /// `[re, im]` pairs in standard basis order; only for `custom`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

impl InitialStateBlock {
    pub fn to_state(&self, n: usize) -> Result<QuantumState> {
        let kind = match (self.kind, &self.amplitudes) {
            (StateKind::Coherent, None) => InitialState::Coherent,
            (StateKind::AllF, None) => InitialState::AllF,
            (StateKind::Custom, Some(a)) => {
                if a.len() != 1 << n {
                    return Err(Error::Config(format!(
                        "initial_state.amplitudes: expected {} entries, got {}",
                        1usize << n,
                        a.len()
                    )));
                }
                InitialState::Custom {
                    amplitudes: a.iter().map(|[re, im]| c(*re, *im)).collect(),
                }
            }
            (StateKind::Custom, None) => {
                return Err(Error::Config(
                    "initial_state.amplitudes: required for kind = \"custom\"".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(Error::Config(
                    "initial_state.amplitudes: only allowed for kind = \"custom\"".into(),
                ))
            }
        };
        initial_state(&kind, n).map_err(|e| Error::Config(format!("initial_state: {e}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesGrid {
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

/// A one-dimensional grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    untagged,
    expecting = "a grid: { values = [...] }, { start, stop, points[, scale] } or { start, stop, step }"
)]
pub enum GridSpec {
    Values(ValuesGrid),
    Range(RangeGrid),
    Step(StepGrid),
}

impl GridSpec {
    pub fn range(start: f64, stop: f64, points: usize) -> Self {
        GridSpec::Range(RangeGrid {
            start,
            stop,
            points,
            scale: Scale::Linear,
        })
    }

    pub fn values(&self, field: &str) -> Result<Vec<f64>> {
        let err = |e: Error| Error::Config(format!("{field}: {e}"));
        let v = match self {
            GridSpec::Values(g) => g.values.clone(),
            GridSpec::Range(g) if g.points == 0 => {
                return Err(Error::Config(format!("{field}: points must be >= 1")))
            }
            GridSpec::Range(g) if g.scale == Scale::Linear => linspace(g.start, g.stop, g.points),
            GridSpec::Range(g) => logspace(g.start, g.stop, g.points).map_err(err)?,
            GridSpec::Step(g) => stepped(g.start, g.stop, g.step).map_err(err)?,
        };
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) || v.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!(
                "{field}: grid must be non-empty, finite and strictly increasing"
            )));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimize: Option<OptimizeTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<FidelityTask>,
}

impl TaskBlock {
    fn is_empty(&self) -> bool {
        *self == TaskBlock::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumTask {
    /// `omega`, `delta`, `gamma` or `coupling`.
    pub parameter: String,
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eig_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vec_tol: Option<f64>,
    /// Refine exceptional points between grid values.
    #[serde(default)]
    pub locate: bool,
}

impl SpectrumTask {
    pub fn parameter(&self) -> Result<SweepParameter> {
        SweepParameter::from_str(&self.parameter).map_err(|_| {
            Error::Config(format!(
                "task.spectrum.parameter: unknown parameter `{}`",
                self.parameter
            ))
        })
    }

    pub fn tolerances(&self) -> Result<EpTolerances> {
        let d = EpTolerances::default();
        let tol = EpTolerances {
            eig_tol: self.eig_tol.unwrap_or(d.eig_tol),
            vec_tol: self.vec_tol.unwrap_or(d.vec_tol),
        };
        tol.validate()
            .map_err(|e| Error::Config(format!("task.spectrum: {e}")))?;
        Ok(tol)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// By excitation number, then lexicographically.
    #[default]
    Grouped,
    Standard,
}

impl Ordering {
    pub fn basis(self, n: usize) -> BasisOrdering {
        match self {
            Ordering::Grouped => BasisOrdering::excitation_grouped(n),
            Ordering::Standard => BasisOrdering::standard(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveTask {
    pub times: GridSpec,
    #[serde(default)]
    pub targets: Vec<String>,
    #[serde(default)]
    pub ordering: Ordering,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapTask {
    /// Defaults to 400 points over [0, 6.5] µs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<GridSpec>,
    /// Defaults to 60 log-spaced points over [1e-6, 1e-1] rad/µs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub couplings: Option<GridSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeTask {
    pub time: [f64; 2],
    pub coupling: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<[f64; 2]>,
    /// `tau123` or `min_entropy`; defaults by qubit count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

impl OptimizeTask {
    pub fn search_box(&self) -> SearchBox {
        SearchBox {
            time: (self.time[0], self.time[1]),
            coupling: (self.coupling[0], self.coupling[1]),
            omega: self.omega.map(|w| (w[0], w[1])),
        }
    }

    pub fn objective(&self, n: usize) -> Result<Objective> {
        match &self.objective {
            None => Ok(Objective::default_for(n)),
            Some(s) => Objective::parse(s)
                .map_err(|e| Error::Config(format!("task.optimize.objective: {e}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FidelityTask {
    pub times: GridSpec,
    /// Defaults to both `±i` GHZ targets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
}

/// Target names accepted in `targets` lists.
pub const TARGET_NAMES: [&str; 4] = ["ghz_minus_i", "ghz_plus_i", "w", "initial"];

/// Builds named targets; `initial` is the run's initial state.
pub fn targets(names: &[String], psi0: &QuantumState) -> Result<Vec<Target>> {
    let n = psi0.n();
    names
        .iter()
        .map(|name| match name.as_str() {
            "ghz_minus_i" => Target::ghz_minus_i(n),
            "ghz_plus_i" => Target::ghz_plus_i(n),
            "w" => Ok(Target::new("w", QuantumState::w(n)?)),
            "initial" => Ok(Target::new("initial", psi0.clone())),
            other => Err(Error::Config(format!(
                "unknown target `{other}`; valid targets: {}",
                TARGET_NAMES.join(", ")
            ))),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default = "default_directory")]
    pub directory: String,
    /// Significant digits of reals in output tables (1 to 17).
    #[serde(default = "default_precision")]
    pub precision: usize,
}

fn default_directory() -> String {
    "out".into()
}

fn default_precision() -> usize {
    FULL_PRECISION
}

impl Default for OutputBlock {
    fn default() -> Self {
        OutputBlock {
            directory: default_directory(),
            precision: default_precision(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text)
            .map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Checks everything that does not require running a task.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version: unsupported version {}, expected {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        if !(1..=FULL_PRECISION).contains(&self.output.precision) {
            return Err(Error::Config(format!(
                "output.precision: must be in 1..={FULL_PRECISION}, got {}",
                self.output.precision
            )));
        }
        let Some(system) = &self.system else {
            if self.initial_state.is_some() || !self.task.is_empty() {
                return Err(Error::Config("missing [system] block".into()));
            }
            return Ok(());
        };
        let sys = system.to_system()?;
        let psi0 = self.initial_state(sys.n())?;
        if let Some(t) = &self.task.spectrum {
            t.parameter()?;
            t.tolerances()?;
            t.grid.values("task.spectrum.grid")?;
        }
        if let Some(t) = &self.task.evolve {
            t.times.values("task.evolve.times")?;
            targets(&t.targets, &psi0)?;
        }
        if let Some(t) = &self.task.map {
            if let Some(g) = &t.times {
                g.values("task.map.times")?;
            }
            if let Some(g) = &t.couplings {
                g.values("task.map.couplings")?;
            }
        }
        if let Some(t) = &self.task.optimize {
            t.objective(sys.n())?;
        }
        if let Some(t) = &self.task.fidelity {
            t.times.values("task.fidelity.times")?;
            if let Some(names) = &t.targets {
                targets(names, &psi0)?;
            }
        }
        Ok(())
    }

    pub fn system(&self) -> Result<SystemConfig> {
        self.system
            .as_ref()
            .ok_or_else(|| Error::Config("missing [system] block".into()))?
            .to_system()
    }

    /// The configured initial state; coherent when the block is absent.
    pub fn initial_state(&self, n: usize) -> Result<QuantumState> {
        match &self.initial_state {
            Some(b) => b.to_state(n),
            None => initial_state(&InitialState::Coherent, n),
        }
    }

    /// TOML text with unit comments that parses back to `self`.
    pub fn to_toml(&self) -> Result<String> {
        let body = toml::to_string(self)
            .map_err(|e| Error::Config(format!("cannot serialize configuration: {e}")))?;
        let mut out = String::from(
            "# nhqsim run configuration\n# units: drives, detunings, decay rates and couplings in rad/µs; times in µs\n",
        );
        let mut section: Vec<String> = Vec::new();
        for line in body.lines() {
            let trimmed = line.trim();
            if let Some(header) = trimmed.strip_prefix('[') {
                section = header
                    .trim_matches(|ch| ch == '[' || ch == ']')
                    .split('.')
                    .map(String::from)
                    .collect();
                out.push_str(line);
            } else if let Some((key, _)) = trimmed.split_once('=') {
                let key = key.trim();
                out.push_str(line);
                if let Some(unit) = unit_of(&section, key) {
                    out.push_str("  # ");
                    out.push_str(unit);
                }
            } else {
                out.push_str(line);
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Unit of the value at `section.key`, judged from the innermost quantity
/// name (grid bounds take the unit of the grid they belong to).
fn unit_of(section: &[String], key: &str) -> Option<&'static str> {
    const GRID_KEYS: [&str; 4] = ["start", "stop", "step", "values"];
    let path = section
        .iter()
        .map(String::as_str)
        .chain(std::iter::once(key));
    let mut names: Vec<&str> = path.collect();
    if GRID_KEYS.contains(&key) {
        names.pop();
    } else if section.first().map(String::as_str) == Some("task") && section.len() > 2 {
        // keys such as `points` or `scale` inside a grid table carry no unit
        return None;
    }
    let quantity = *names.last()?;
    let in_spectrum_grid =
        section.get(1).map(String::as_str) == Some("spectrum") && quantity == "grid";
    match quantity {
        "omega" | "delta" | "gamma" | "coupling" | "couplings" => Some("rad/µs"),
        "time" | "times" => Some("µs"),
        _ if in_spectrum_grid => Some("rad/µs"),
        _ => None,
    }
}
