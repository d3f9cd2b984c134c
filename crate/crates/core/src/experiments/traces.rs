// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use crate::dynamics::{
    initial_state, BasisOrdering, InitialState, Propagator, QuantumState, Trajectory,
};
use crate::entanglement::{
    bloch_vector, ghz_class_fidelity, ghz_fidelity, partial_trace, purity, report,
    EntanglementReport, Target,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, SystemConfig};
use crate::table::{Cell, Table};

fn trajectory(config: &SystemConfig, psi0: &QuantumState, times: &[f64]) -> Result<Trajectory> {
    if psi0.n() != config.n() {
        return Err(Error::DimensionMismatch {
            expected: config.n(),
            found: psi0.n(),
        });
    }
    crate::spectral::validate_grid(times)?;
    Propagator::new(&build_hamiltonian(config))?.series(psi0, times)
}

/// Amplitude moduli and phases over time, grouped by excitation number.
pub fn amplitude_traces(
    config: &SystemConfig,
    psi0: &QuantumState,
    times: &[f64],
) -> Result<Table> {
    trajectory(config, psi0, times)?.to_table(&BasisOrdering::excitation_grouped(config.n()))
}

/// Full entanglement reports along a time grid.
pub fn entanglement_traces(
    config: &SystemConfig,
    psi0: &QuantumState,
    times: &[f64],
    targets: &[Target],
) -> Result<Vec<EntanglementReport>> {
    let traj = trajectory(config, psi0, times)?;
    traj.times
        .par_iter()
        .zip(traj.states.par_iter())
        .map(|(&t, s)| report(s, t, targets))
        .collect()
}

/// Bloch-vector path of one reduced qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochTrajectory {
    pub qubit: usize,
    pub times: Vec<f64>,
    pub points: Vec<[f64; 3]>,
    pub purities: Vec<f64>,
}

impl BlochTrajectory {
    pub fn final_purity(&self) -> f64 {
        *self.purities.last().expect("non-empty trajectory")
    }

    pub fn final_radius(&self) -> f64 {
        let p = self.points.last().expect("non-empty trajectory");
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["time", "x", "y", "z", "radius", "purity"]);
        for ((time, p), pur) in self.times.iter().zip(&self.points).zip(&self.purities) {
            let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            t.push(vec![
                (*time).into(),
                p[0].into(),
                p[1].into(),
                p[2].into(),
                r.into(),
                (*pur).into(),
            ]);
        }
        t
    }
}

/// Bloch vector and purity of qubit `qubit` (0-based) along `times`.
pub fn bloch_trajectory(
    config: &SystemConfig,
    psi0: &QuantumState,
    times: &[f64],
    qubit: usize,
) -> Result<BlochTrajectory> {
    if qubit >= config.n() {
        return Err(Error::IndexOutOfRange {
            index: qubit,
            n: config.n(),
        });
    }
    let traj = trajectory(config, psi0, times)?;
    let mut points = Vec::with_capacity(traj.len());
    let mut purities = Vec::with_capacity(traj.len());
    for s in &traj.states {
        let rho = partial_trace(s, &[qubit])?;
        points.push(bloch_vector(&rho)?);
        purities.push(purity(&rho));
    }
    Ok(BlochTrajectory {
        qubit,
        times: traj.times,
        points,
        purities,
    })
}

/// Fidelities to labelled targets and the best GHZ-class fidelity over time.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTraces {
    pub times: Vec<f64>,
    pub labels: Vec<String>,
    /// `values[k][i]`: target `k` at time `i`.
    pub values: Vec<Vec<f64>>,
    pub ghz_class: Vec<(f64, f64)>,
}

impl FidelityTraces {
    /// Largest fidelity to `label` within `[lo, hi]` and its time.
    pub fn peak(&self, label: &str, lo: f64, hi: f64) -> Option<(f64, f64)> {
        let k = self.labels.iter().position(|l| l == label)?;
        self.times
            .iter()
            .zip(&self.values[k])
            .filter(|(t, _)| **t >= lo && **t <= hi)
            .fold(None, |best: Option<(f64, f64)>, (&t, &f)| match best {
                Some((bt, bf)) if bf >= f => Some((bt, bf)),
                _ => Some((t, f)),
            })
    }

    pub fn to_table(&self) -> Table {
        let mut header = vec!["time".to_string()];
        header.extend(self.labels.iter().map(|l| format!("F_{l}")));
        header.push("ghz_class_fidelity".into());
        header.push("ghz_class_phase".into());
        let mut t = Table::new(header);
        for (i, time) in self.times.iter().enumerate() {
            let mut row: Vec<Cell> = vec![(*time).into()];
            row.extend(self.values.iter().map(|v| Cell::Real(v[i])));
            row.push(self.ghz_class[i].0.into());
            row.push(self.ghz_class[i].1.into());
            t.push(row);
        }
        t
    }
}

pub fn fidelity_traces(
    config: &SystemConfig,
    psi0: &QuantumState,
    targets: &[Target],
    times: &[f64],
) -> Result<FidelityTraces> {
    let traj = trajectory(config, psi0, times)?;
    let values = targets
        .iter()
        .map(|t| {
            traj.states
                .iter()
                .map(|s| ghz_fidelity(s, &t.state))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FidelityTraces {
        times: traj.times.clone(),
        labels: targets.iter().map(|t| t.label.clone()).collect(),
        values,
        ghz_class: traj.states.iter().map(ghz_class_fidelity).collect(),
    })
}

/// Drive and coupling of one four-qubit run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRun {
    pub omega: f64,
    pub coupling: f64,
}

/// The three `(Ω, J)` pairs near the four-qubit exceptional point:
/// `(1.514, 1e-5)`, `(1.537, 1e-4)` and `(1.598, 1e-3)` rad/µs.
pub const FOUR_QUBIT_RUNS: [EntropyRun; 3] = [
    EntropyRun {
        omega: 1.514,
        coupling: 1e-5,
    },
    EntropyRun {
        omega: 1.537,
        coupling: 1e-4,
    },
    EntropyRun {
        omega: 1.598,
        coupling: 1e-3,
    },
];

/// Default time horizon (µs) of the four-qubit entropy traces.
pub const FOUR_QUBIT_HORIZON: f64 = 40.0;

/// Single-qubit entropies of a four-qubit coherent start for several runs.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyTraces {
    pub runs: Vec<EntropyRun>,
    pub times: Vec<f64>,
    /// `entropies[run][time][qubit]`.
    pub entropies: Vec<Vec<Vec<f64>>>,
}

impl EntropyTraces {
    /// Maximum over `[lo, hi]` of `min_j S_j` for `run`, with its time.
    pub fn peak_min_entropy(&self, run: usize, lo: f64, hi: f64) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.entropies[run])
            .filter(|(t, _)| **t >= lo && **t <= hi)
            .map(|(&t, s)| (t, s.iter().copied().fold(f64::INFINITY, f64::min)))
            .fold(None, |best: Option<(f64, f64)>, (t, v)| match best {
                Some((bt, bv)) if bv >= v => Some((bt, bv)),
                _ => Some((t, v)),
            })
    }

    /// Largest spread `max_j S_j − min_j S_j` over all runs and times.
    pub fn max_asymmetry(&self) -> f64 {
        self.entropies
            .iter()
            .flatten()
            .map(|s| {
                let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = s.iter().copied().fold(f64::INFINITY, f64::min);
                hi - lo
            })
            .fold(0.0, f64::max)
    }

    pub fn to_table(&self) -> Table {
        let n = self
            .entropies
            .first()
            .and_then(|r| r.first())
            .map_or(0, Vec::len);
        let mut header = vec!["time".to_string()];
        for (k, _) in self.runs.iter().enumerate() {
            header.extend((1..=n).map(|j| format!("run{}_S_{j}", k + 1)));
        }
        let mut t = Table::new(header);
        for (i, time) in self.times.iter().enumerate() {
            let mut row: Vec<Cell> = vec![(*time).into()];
            for run in &self.entropies {
                row.extend(run[i].iter().map(|&s| Cell::Real(s)));
            }
            t.push(row);
        }
        t
    }

    pub fn runs_table(&self) -> Table {
        let mut t = Table::new(["run", "omega", "J"]);
        for (k, r) in self.runs.iter().enumerate() {
            t.push(vec![(k + 1).into(), r.omega.into(), r.coupling.into()]);
        }
        t
    }
}

/// Entropy traces of the four-qubit coherent state `2^{-2}(|f⟩ − i|e⟩)^{⊗4}`
/// under uniform `γ` and each `(Ω, J)` run.
pub fn four_qubit_entropy_traces(
    runs: &[EntropyRun],
    gamma: f64,
    times: &[f64],
) -> Result<EntropyTraces> {
    let psi0 = initial_state(&InitialState::Coherent, 4)?;
    let entropies = runs
        .iter()
        .map(|r| {
            let cfg = SystemConfig::uniform(4, r.omega, 0.0, gamma, r.coupling)?;
            Ok(entanglement_traces(&cfg, &psi0, times, &[])?
                .into_iter()
                .map(|rep| rep.entropies)
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyTraces {
        runs: runs.to_vec(),
        times: times.to_vec(),
        entropies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::grid::linspace;

    #[test]
    fn hermitian_bloch_stays_on_surface() {
        let cfg = SystemConfig::uniform(3, 1.576, 0.0, 0.0, 0.0).unwrap();
        let psi = initial_state(&InitialState::Coherent, 3).unwrap();
        let b = bloch_trajectory(&cfg, &psi, &linspace(0.0, 4.0, 81), 0).unwrap();
        for p in &b.points {
            assert!((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() >= 1.0 - 1e-6);
        }
        assert!(bloch_trajectory(&cfg, &psi, &[0.0], 3).is_err());
    }

    #[test]
    fn fidelity_to_initial_state_at_zero() {
        let cfg = SystemConfig::uniform(3, 10.0, 0.0, 0.0, 0.4).unwrap();
        let psi = QuantumState::basis(3, 0).unwrap();
        let f = fidelity_traces(
            &cfg,
            &psi,
            &[Target::new("start", psi.clone())],
            &[0.0, 0.1],
        )
        .unwrap();
        assert_eq!(f.values[0][0], 1.0);
        assert_eq!(f.peak("start", 0.0, 0.0), Some((0.0, 1.0)));
    }

    #[test]
    fn amplitude_table_columns() {
        let cfg = SystemConfig::uniform(3, 1.576, 0.0, 6.0, 1e-3).unwrap();
        let psi = initial_state(&InitialState::Coherent, 3).unwrap();
        let t = amplitude_traces(&cfg, &psi, &[0.0, 1.0]).unwrap();
        assert_eq!(t.header().len(), 2 + 16);
        assert_eq!(t.header()[2], "abs_fff");
        assert_eq!(t.header()[17], "arg_eee");
    }
}
