// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::decomposition::{eigendecompose, SpectralDecomposition};
use super::ep::{detect_eps, eigenvector_coalescence, EpCluster, EpTolerances};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, SystemConfig};
use crate::linalg::C64;
use crate::table::{Cell, Table};

/// Relative bracket width at which golden-section refinement stops.
const LOCATE_REL_WIDTH: f64 = 1e-15;
const LOCATE_MAX_STEPS: usize = 200;
/// Coalescence measure treated as zero (merged eigenvectors leave only
/// rounding noise).
const PLATEAU_FLOOR: f64 = 1e-12;

/// Physical parameter varied uniformly across all qubits (or pairs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    Omega,
    Delta,
    Gamma,
    Coupling,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 4] = [
        SweepParameter::Omega,
        SweepParameter::Delta,
        SweepParameter::Gamma,
        SweepParameter::Coupling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Omega => "omega",
            SweepParameter::Delta => "delta",
            SweepParameter::Gamma => "gamma",
            SweepParameter::Coupling => "coupling",
        }
    }

    /// The template with this parameter set to `value` on every qubit/pair.
    pub fn apply(self, template: &SystemConfig, value: f64) -> Result<SystemConfig> {
        match self {
            SweepParameter::Omega => template.with_omega(value),
            SweepParameter::Delta => template.with_delta(value),
            SweepParameter::Gamma => template.with_gamma(value),
            SweepParameter::Coupling => template.with_uniform_coupling(value),
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omega" => Ok(SweepParameter::Omega),
            "delta" => Ok(SweepParameter::Delta),
            "gamma" => Ok(SweepParameter::Gamma),
            "coupling" | "j" => Ok(SweepParameter::Coupling),
            _ => Err(Error::invalid(
                "parameter",
                format!("unknown sweep parameter `{s}` (expected omega, delta, gamma or coupling)"),
            )),
        }
    }
}

pub(crate) fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("grid", "must be non-empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("grid", "values must be finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("grid", "must be strictly increasing"));
    }
    Ok(())
}

/// Sorts eigenvalues by real part, then imaginary part.
pub fn sort_spectrum(values: &mut [C64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Eigenvalues over a one-parameter grid.
#[derive(Debug, Clone)]
pub struct SpectrumSweep {
    pub parameter: SweepParameter,
    pub grid: Vec<f64>,
    /// Sorted spectra; `None` marks a point where the eigensolver failed.
    pub spectra: Vec<Option<Vec<C64>>>,
    pub dim: usize,
}

impl SpectrumSweep {
    /// Columns: parameter, `re_1..re_D`, `im_1..im_D`; failed points are blank.
    pub fn to_table(&self) -> Table {
        let mut header = vec![self.parameter.name().to_string()];
        header.extend((1..=self.dim).map(|k| format!("E{k}_re")));
        header.extend((1..=self.dim).map(|k| format!("E{k}_im")));
        let mut t = Table::new(header);
        for (x, spectrum) in self.grid.iter().zip(&self.spectra) {
            let mut row: Vec<Cell> = vec![(*x).into()];
            match spectrum {
                Some(s) => {
                    row.extend(s.iter().map(|e| Cell::Real(e.re)));
                    row.extend(s.iter().map(|e| Cell::Real(e.im)));
                }
                None => row.extend(std::iter::repeat_n(Cell::Empty, 2 * self.dim)),
            }
            t.push(row);
        }
        t
    }
}

fn decompose_at(
    template: &SystemConfig,
    parameter: SweepParameter,
    x: f64,
) -> Result<SpectralDecomposition> {
    let cfg = parameter.apply(template, x)?;
    eigendecompose(&build_hamiltonian(&cfg))
}

/// Applies every grid value first so that invalid physical values are
/// reported as errors rather than as gaps.
fn check_grid_values(
    template: &SystemConfig,
    parameter: SweepParameter,
    grid: &[f64],
) -> Result<()> {
    validate_grid(grid)?;
    for &x in grid {
        parameter.apply(template, x)?;
    }
    Ok(())
}

/// Spectra across `grid`, evaluated in parallel and assembled in grid order.
pub fn spectrum_sweep(
    template: &SystemConfig,
    parameter: SweepParameter,
    grid: &[f64],
) -> Result<SpectrumSweep> {
    check_grid_values(template, parameter, grid)?;
    let spectra = grid
        .par_iter()
        .map(|&x| match decompose_at(template, parameter, x) {
            Ok(d) => {
                let mut ev = d.eigenvalues().to_vec();
                sort_spectrum(&mut ev);
                Some(ev)
            }
            Err(e) => {
                log::warn!("eigensolver failed at {parameter} = {x}: {e}");
                None
            }
        })
        .collect();
    Ok(SpectrumSweep {
        parameter,
        grid: grid.to_vec(),
        spectra,
        dim: template.dim(),
    })
}

/// Exceptional points found at one grid value.
#[derive(Debug, Clone)]
pub struct EpScanPoint {
    pub value: f64,
    /// `None` marks an eigensolver failure.
    pub clusters: Option<Vec<EpCluster>>,
}

/// `detect_eps` applied at every point of a sweep.
pub fn ep_scan(
    template: &SystemConfig,
    parameter: SweepParameter,
    grid: &[f64],
    tol: EpTolerances,
) -> Result<Vec<EpScanPoint>> {
    tol.validate()?;
    check_grid_values(template, parameter, grid)?;
    Ok(grid
        .par_iter()
        .map(|&x| EpScanPoint {
            value: x,
            clusters: decompose_at(template, parameter, x)
                .and_then(|d| detect_eps(&d, tol))
                .map_err(|e| log::warn!("EP detection failed at {parameter} = {x}: {e}"))
                .ok(),
        })
        .collect())
}

/// An exceptional point refined between grid values.
#[derive(Debug, Clone)]
pub struct LocatedEp {
    pub value: f64,
    pub clusters: Vec<EpCluster>,
    /// Smallest eigenvector-pair sine at `value`.
    pub coalescence: f64,
}

fn coalescence_at(template: &SystemConfig, parameter: SweepParameter, x: f64) -> f64 {
    decompose_at(template, parameter, x)
        .map(|d| eigenvector_coalescence(&d))
        .unwrap_or(f64::INFINITY)
}

fn golden_section(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..LOCATE_MAX_STEPS {
        if (b - a) <= LOCATE_REL_WIDTH * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Midpoint of the interval around `x` on which `f` vanishes (is at most
/// [`PLATEAU_FLOOR`]).
///
/// Near a high-order exceptional point the eigenvalues merge over a small
/// parameter interval, where the coalescence measure is exactly zero;
/// golden-section search stops anywhere inside it, while the splitting is
/// symmetric about the exceptional point itself.
fn plateau_center(a: f64, b: f64, x: f64, f: impl Fn(f64) -> f64) -> f64 {
    let edge = |mut inside: f64, mut outside: f64| {
        if f(outside) <= PLATEAU_FLOOR {
            return outside;
        }
        for _ in 0..LOCATE_MAX_STEPS {
            let mid = 0.5 * (inside + outside);
            if mid == inside || mid == outside {
                break;
            }
            if f(mid) <= PLATEAU_FLOOR {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    0.5 * (edge(x, a) + edge(x, b))
}

/// Locates exceptional points that fall between grid values.
///
/// Exceptional points are isolated in parameter space, so a grid almost never
/// hits one. The smallest angle between right eigenvectors drops to zero at an
/// exceptional point; every local minimum of that measure on the grid is
/// refined by golden-section search on its neighbouring bracket (and, where
/// the measure vanishes on an interval, moved to that interval's midpoint);
/// the refined value is kept when `detect_eps` reports a cluster there.
pub fn locate_eps(
    template: &SystemConfig,
    parameter: SweepParameter,
    grid: &[f64],
    tol: EpTolerances,
) -> Result<Vec<LocatedEp>> {
    tol.validate()?;
    check_grid_values(template, parameter, grid)?;
    let measure: Vec<f64> = grid
        .par_iter()
        .map(|&x| coalescence_at(template, parameter, x))
        .collect();
    let n = grid.len();
    let brackets: Vec<(f64, f64)> = (0..n)
        .filter(|&i| {
            let left = i == 0 || measure[i] <= measure[i - 1];
            let right = i + 1 == n || measure[i] <= measure[i + 1];
            left && right && measure[i].is_finite()
        })
        .map(|i| (grid[i.saturating_sub(1)], grid[(i + 1).min(n - 1)]))
        .collect();

    let mut found: Vec<LocatedEp> = brackets
        .par_iter()
        .filter_map(|&(a, b)| {
            let f = |x| coalescence_at(template, parameter, x);
            let (mut x, mut fx) = if b > a {
                golden_section(a, b, f)
            } else {
                (a, f(a))
            };
            if fx <= PLATEAU_FLOOR && b > a {
                let center = plateau_center(a, b, x, f);
                let fc = f(center);
                if fc <= PLATEAU_FLOOR {
                    (x, fx) = (center, fc);
                }
            }
            let clusters = decompose_at(template, parameter, x)
                .and_then(|d| detect_eps(&d, tol))
                .ok()?;
            (!clusters.is_empty()).then_some(LocatedEp {
                value: x,
                clusters,
                coalescence: fx,
            })
        })
        .collect();
    found.sort_by(|a, b| a.value.total_cmp(&b.value));
    found.dedup_by(|b, a| (b.value - a.value).abs() <= 1e-12 * a.value.abs().max(1.0));
    Ok(found)
}

fn cluster_cells(c: &EpCluster) -> Vec<Cell> {
    vec![
        c.center.re.into(),
        c.center.im.into(),
        c.algebraic_multiplicity.into(),
        c.geometric_rank.into(),
        c.order_estimate.into(),
    ]
}

const CLUSTER_COLUMNS: [&str; 5] = [
    "center_re",
    "center_im",
    "size",
    "geometric_rank",
    "order_estimate",
];

/// One row per reported cluster; a failed point gives one blank row.
pub fn ep_scan_table(parameter: SweepParameter, points: &[EpScanPoint]) -> Table {
    let mut t = Table::new(std::iter::once(parameter.name()).chain(CLUSTER_COLUMNS));
    for p in points {
        match &p.clusters {
            Some(clusters) => {
                for c in clusters {
                    let mut row = vec![Cell::Real(p.value)];
                    row.extend(cluster_cells(c));
                    t.push(row);
                }
            }
            None => {
                let mut row = vec![Cell::Real(p.value)];
                row.extend(std::iter::repeat_n(Cell::Empty, CLUSTER_COLUMNS.len()));
                t.push(row);
            }
        }
    }
    t
}

/// One row per cluster of each located exceptional point.
pub fn located_eps_table(parameter: SweepParameter, located: &[LocatedEp]) -> Table {
    let mut t = Table::new(
        std::iter::once(parameter.name())
            .chain(CLUSTER_COLUMNS)
            .chain(std::iter::once("coalescence")),
    );
    for l in located {
        for c in &l.clusters {
            let mut row = vec![Cell::Real(l.value)];
            row.extend(cluster_cells(c));
            row.push(l.coalescence.into());
            t.push(row);
        }
    }
    t
}
