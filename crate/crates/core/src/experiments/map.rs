// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;

use rayon::prelude::*;

use super::grid::{linspace, logspace, SweepGrid};
use crate::dynamics::{Propagator, QuantumState};
use crate::entanglement::{report, EntanglementReport};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, SystemConfig};
use crate::table::{Cell, Table};

/// Quantity maximized by maps and optimum searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Residual three-tangle (three qubits only).
    Tau123,
    /// Smallest single-qubit entropy.
    MinEntropy,
}

impl Objective {
    /// Three-tangle for three qubits, minimum entropy otherwise.
    pub fn default_for(n: usize) -> Self {
        if n == 3 {
            Objective::Tau123
        } else {
            Objective::MinEntropy
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Tau123 => "tau123",
            Objective::MinEntropy => "min_entropy",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tau123" => Ok(Objective::Tau123),
            "min_entropy" => Ok(Objective::MinEntropy),
            _ => Err(Error::invalid(
                "objective",
                format!("unknown objective `{s}` (tau123 or min_entropy)"),
            )),
        }
    }

    fn check(self, n: usize) -> Result<()> {
        if self == Objective::Tau123 && n != 3 {
            return Err(Error::invalid("objective", "tau123 requires three qubits"));
        }
        Ok(())
    }

    pub fn evaluate(self, r: &EntanglementReport) -> f64 {
        match self {
            Objective::Tau123 => r.three_tangle.unwrap_or(f64::NAN),
            Objective::MinEntropy => r.min_entropy(),
        }
    }
}

/// Outcome at one `(t, J)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct MapCell {
    pub time: f64,
    pub coupling: f64,
    /// Failure message when propagation or evaluation failed.
    pub result: std::result::Result<EntanglementReport, String>,
}

/// Entanglement measures over a `(t, J)` grid.
#[derive(Debug, Clone)]
pub struct EntanglementMap {
    pub grid: SweepGrid,
    pub n: usize,
    pub objective: Objective,
    /// Coupling-major: cell `(jt, jj)` is at `jj * times.len() + jt`.
    pub cells: Vec<MapCell>,
}

/// Larger value first; ties go to smaller `t`, then smaller `J`.
fn better(a: (f64, f64, f64), b: (f64, f64, f64)) -> bool {
    match a.0.partial_cmp(&b.0) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => (a.1, a.2) < (b.1, b.2),
    }
}

impl EntanglementMap {
    pub fn cell(&self, time_index: usize, coupling_index: usize) -> &MapCell {
        &self.cells[coupling_index * self.grid.times.len() + time_index]
    }

    /// Cell maximizing the objective (failed cells are skipped).
    pub fn argmax(&self) -> Option<&MapCell> {
        let mut best: Option<(&MapCell, f64)> = None;
        for cell in &self.cells {
            if let Ok(r) = &cell.result {
                let v = self.objective.evaluate(r);
                if v.is_nan() {
                    continue;
                }
                if best.is_none_or(|(b, bv)| {
                    better((v, cell.time, cell.coupling), (bv, b.time, b.coupling))
                }) {
                    best = Some((cell, v));
                }
            }
        }
        best.map(|(c, _)| c)
    }

    /// One row per cell: `time, J, S_1..S_n, tau123` (blank when not three
    /// qubits or when the cell failed).
    pub fn to_table(&self) -> Table {
        let mut header = vec!["time".to_string(), "J".to_string()];
        header.extend((1..=self.n).map(|j| format!("S_{j}")));
        header.push("tau123".into());
        let mut t = Table::new(header);
        for c in &self.cells {
            let mut row: Vec<Cell> = vec![c.time.into(), c.coupling.into()];
            match &c.result {
                Ok(r) => {
                    row.extend(r.entropies.iter().map(|&s| Cell::Real(s)));
                    row.push(r.three_tangle.map_or(Cell::Empty, Cell::Real));
                }
                Err(_) => row.extend(std::iter::repeat_n(Cell::Empty, self.n + 1)),
            }
            t.push(row);
        }
        t
    }
}

/// Propagates `psi0` to every `(t, J)` cell and reports its entanglement.
///
/// Each coupling row is independent and evaluated in parallel; results are
/// assembled by index, so the map does not depend on the schedule. A cell
/// equals a direct `propagate` + `report` computation bit for bit.
pub fn entanglement_map(
    config: &SystemConfig,
    psi0: &QuantumState,
    grid: &SweepGrid,
) -> Result<EntanglementMap> {
    let grid = SweepGrid::new(grid.times.clone(), grid.couplings.clone())?;
    if psi0.n() != config.n() {
        return Err(Error::DimensionMismatch {
            expected: config.n(),
            found: psi0.n(),
        });
    }
    let configs: Vec<SystemConfig> = grid
        .couplings
        .iter()
        .map(|&j| config.with_uniform_coupling(j))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<MapCell>> = configs
        .par_iter()
        .zip(grid.couplings.par_iter())
        .map(|(cfg, &j)| {
            let prop = Propagator::new(&build_hamiltonian(cfg));
            grid.times
                .iter()
                .map(|&t| MapCell {
                    time: t,
                    coupling: j,
                    result: prop.as_ref().map_err(|e| e.to_string()).and_then(|p| {
                        p.propagate(psi0, t)
                            .and_then(|(s, _)| report(&s, t, &[]))
                            .map_err(|e| e.to_string())
                    }),
                })
                .collect()
        })
        .collect();
    Ok(EntanglementMap {
        grid,
        n: config.n(),
        objective: Objective::default_for(config.n()),
        cells: rows.into_iter().flatten().collect(),
    })
}

/// Closed search ranges; a range with equal ends pins that coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub time: (f64, f64),
    pub coupling: (f64, f64),
    /// Drive amplitude range; `None` keeps the configuration's value.
    pub omega: Option<(f64, f64)>,
}

/// Coarse-scan resolution and refinement tolerance of [`find_optimal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub time_points: usize,
    pub coupling_points: usize,
    pub omega_points: usize,
    /// Relative step at which axis refinement stops.
    pub rel_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            time_points: 131,
            coupling_points: 61,
            omega_points: 21,
            rel_tol: 1e-4,
        }
    }
}

/// Best point found by [`find_optimal`].
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub time: f64,
    pub coupling: f64,
    pub omega: Option<f64>,
    pub value: f64,
    pub report: EntanglementReport,
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::invalid(name, "bounds must be finite"));
    }
    if lo > hi {
        return Err(Error::invalid(
            name,
            format!("inverted bounds [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

/// Coordinates in search space: time, coupling (log10 when the range is
/// positive) and optionally Ω.
struct Space {
    config: SystemConfig,
    psi0: QuantumState,
    objective: Objective,
    log_coupling: bool,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl Space {
    fn point(&self, x: &[f64]) -> (f64, f64, Option<f64>) {
        let j = if self.log_coupling {
            10f64.powf(x[1])
        } else {
            x[1]
        };
        (x[0], j, x.get(2).copied())
    }

    fn evaluate(&self, x: &[f64]) -> Result<(f64, EntanglementReport)> {
        let (t, j, omega) = self.point(x);
        let mut cfg = self.config.with_uniform_coupling(j)?;
        if let Some(w) = omega {
            cfg = cfg.with_omega(w)?;
        }
        let (state, _) = Propagator::new(&build_hamiltonian(&cfg))?.propagate(&self.psi0, t)?;
        let r = report(&state, t, &[])?;
        Ok((self.objective.evaluate(&r), r))
    }

    fn axis_grid(&self, k: usize, points: usize) -> Vec<f64> {
        if self.lo[k] == self.hi[k] {
            vec![self.lo[k]]
        } else {
            linspace(self.lo[k], self.hi[k], points.max(2))
        }
    }
}

/// Maximizes the objective over a box in `(t, J[, Ω])`.
///
/// A coarse grid scan (log-spaced in `J` when `J > 0`) is followed by an
/// axis-wise pattern search whose step halves until it falls below
/// `rel_tol` relative to the coordinate. Ties resolve to the smallest `t`,
/// then the smallest `J`.
pub fn find_optimal(
    config: &SystemConfig,
    psi0: &QuantumState,
    bounds: SearchBox,
    objective: Objective,
    options: SearchOptions,
) -> Result<Optimum> {
    check_range("time", bounds.time)?;
    check_range("coupling", bounds.coupling)?;
    if bounds.time.0 < 0.0 {
        return Err(Error::invalid("time", "must be non-negative"));
    }
    if let Some(w) = bounds.omega {
        check_range("omega", w)?;
    }
    if !(options.rel_tol > 0.0) {
        return Err(Error::invalid("rel_tol", "must be positive"));
    }
    objective.check(config.n())?;
    if psi0.n() != config.n() {
        return Err(Error::DimensionMismatch {
            expected: config.n(),
            found: psi0.n(),
        });
    }
    let log_coupling = bounds.coupling.0 > 0.0;
    let cj = |v: f64| if log_coupling { v.log10() } else { v };
    let mut lo = vec![bounds.time.0, cj(bounds.coupling.0)];
    let mut hi = vec![bounds.time.1, cj(bounds.coupling.1)];
    if let Some((a, b)) = bounds.omega {
        lo.push(a);
        hi.push(b);
    }
    let space = Space {
        config: config.clone(),
        psi0: psi0.clone(),
        objective,
        log_coupling,
        lo,
        hi,
    };
    let dims = space.lo.len();

    let t_axis = space.axis_grid(0, options.time_points);
    let j_axis = if log_coupling && bounds.coupling.0 < bounds.coupling.1 {
        logspace(
            bounds.coupling.0,
            bounds.coupling.1,
            options.coupling_points.max(2),
        )?
        .into_iter()
        .map(f64::log10)
        .collect()
    } else {
        space.axis_grid(1, options.coupling_points)
    };
    let w_axis = if dims == 3 {
        space.axis_grid(2, options.omega_points)
    } else {
        vec![f64::NAN]
    };

    let mut candidates = Vec::new();
    for &w in &w_axis {
        for &j in &j_axis {
            for &t in &t_axis {
                let mut x = vec![t, j];
                if dims == 3 {
                    x.push(w);
                }
                candidates.push(x);
            }
        }
    }
    let scores: Vec<f64> = candidates
        .par_iter()
        .map(|x| space.evaluate(x).map(|(v, _)| v).unwrap_or(f64::NAN))
        .collect();
    let key = |x: &[f64], v: f64| {
        let (t, j, _) = space.point(x);
        (v, t, j)
    };
    let mut best_idx = None;
    for (i, &v) in scores.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        if best_idx
            .is_none_or(|b: usize| better(key(&candidates[i], v), key(&candidates[b], scores[b])))
        {
            best_idx = Some(i);
        }
    }
    let best_idx = best_idx.ok_or_else(|| {
        Error::Numerical("objective undefined everywhere in the search box".into())
    })?;
    let mut x = candidates[best_idx].clone();
    let mut fx = scores[best_idx];

    // Axis-wise shrinking pattern search.
    let axes: [&Vec<f64>; 3] = [&t_axis, &j_axis, &w_axis];
    let mut steps: Vec<f64> = (0..dims)
        .map(|k| {
            if axes[k].len() > 1 {
                axes[k][1] - axes[k][0]
            } else {
                0.0
            }
        })
        .collect();
    let min_step = |k: usize, xk: f64| {
        let scale = if k == 1 && log_coupling {
            1.0
        } else {
            xk.abs().max(1e-12)
        };
        options.rel_tol * scale
    };
    for _ in 0..10_000 {
        if (0..dims).all(|k| steps[k] <= min_step(k, x[k])) {
            break;
        }
        for k in 0..dims {
            if steps[k] <= min_step(k, x[k]) {
                continue;
            }
            let mut moved = false;
            for dir in [-1.0, 1.0] {
                let mut y = x.clone();
                y[k] = (x[k] + dir * steps[k]).clamp(space.lo[k], space.hi[k]);
                if y[k] == x[k] {
                    continue;
                }
                if let Ok((fy, _)) = space.evaluate(&y) {
                    if better(key(&y, fy), key(&x, fx)) {
                        x = y;
                        fx = fy;
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                steps[k] *= 0.5;
            }
        }
    }
    let (value, report) = space.evaluate(&x)?;
    let (time, coupling, omega) = space.point(&x);
    Ok(Optimum {
        time,
        coupling,
        omega,
        value,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_state, propagate, InitialState};

    fn optimum_config(j: f64) -> SystemConfig {
        SystemConfig::uniform(3, 1.576, 0.0, 6.0, j).unwrap()
    }

    #[test]
    fn single_cell_matches_direct_report() {
        let cfg = optimum_config(1e-3);
        let psi = initial_state(&InitialState::Coherent, 3).unwrap();
        let grid = SweepGrid::new(vec![3.2], vec![1e-3]).unwrap();
        let m = entanglement_map(&cfg, &psi, &grid).unwrap();
        let (s, _) = propagate(&build_hamiltonian(&cfg), &psi, 3.2).unwrap();
        assert_eq!(
            m.cells[0].result.as_ref().unwrap(),
            &report(&s, 3.2, &[]).unwrap()
        );
    }

    #[test]
    fn uncoupled_rows_stay_product() {
        let psi = initial_state(&InitialState::Coherent, 3).unwrap();
        let grid = SweepGrid::new(linspace(0.0, 6.5, 27), vec![0.0]).unwrap();
        let m = entanglement_map(&optimum_config(0.0), &psi, &grid).unwrap();
        for c in &m.cells {
            assert!(c.result.as_ref().unwrap().three_tangle.unwrap() <= 0.01);
        }
    }

    #[test]
    fn degenerate_box_returns_point() {
        let psi = initial_state(&InitialState::Coherent, 3).unwrap();
        let b = SearchBox {
            time: (2.0, 2.0),
            coupling: (1e-3, 1e-3),
            omega: None,
        };
        let o = find_optimal(
            &optimum_config(0.0),
            &psi,
            b,
            Objective::Tau123,
            SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(o.time, 2.0);
        assert!((o.coupling - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn inverted_box_is_rejected() {
        let psi = initial_state(&InitialState::Coherent, 3).unwrap();
        let b = SearchBox {
            time: (3.0, 2.0),
            coupling: (1e-3, 1e-3),
            omega: None,
        };
        assert!(matches!(
            find_optimal(
                &optimum_config(0.0),
                &psi,
                b,
                Objective::Tau123,
                SearchOptions::default()
            ),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn tie_break_prefers_small_time_then_coupling() {
        assert!(better((1.0, 0.5, 2.0), (1.0, 0.6, 1.0)));
        assert!(better((1.0, 0.5, 1.0), (1.0, 0.5, 2.0)));
        assert!(!better((0.9, 0.1, 0.1), (1.0, 0.5, 2.0)));
    }
}
