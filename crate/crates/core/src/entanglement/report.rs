// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::FRAC_1_SQRT_2;

use super::concurrence::{bipartition_concurrence, pair_concurrence, three_tangle};
use super::density::{bloch_vector, entanglement_entropy, partial_trace, purity};
use crate::dynamics::QuantumState;
use crate::error::Result;
use crate::linalg::{principal_arg, wrap_angle};
use crate::table::{Cell, Table};

/// A named reference state for fidelity reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub label: String,
    pub state: QuantumState,
}

impl Target {
    pub fn new(label: impl Into<String>, state: QuantumState) -> Self {
        Target {
            label: label.into(),
            state,
        }
    }

    /// `(|f…f⟩ − i|e…e⟩)/√2`, labelled `ghz_minus_i`.
    pub fn ghz_minus_i(n: usize) -> Result<Self> {
        Ok(Self::new(
            "ghz_minus_i",
            QuantumState::ghz(n, -std::f64::consts::FRAC_PI_2)?,
        ))
    }

    /// `(|f…f⟩ + i|e…e⟩)/√2`, labelled `ghz_plus_i`.
    pub fn ghz_plus_i(n: usize) -> Result<Self> {
        Ok(Self::new(
            "ghz_plus_i",
            QuantumState::ghz(n, std::f64::consts::FRAC_PI_2)?,
        ))
    }

    /// Both `±i` GHZ targets.
    pub fn ghz_pair(n: usize) -> Result<Vec<Self>> {
        Ok(vec![Self::ghz_minus_i(n)?, Self::ghz_plus_i(n)?])
    }
}

/// `|⟨target|ψ⟩|`.
pub fn ghz_fidelity(state: &QuantumState, target: &QuantumState) -> Result<f64> {
    target.fidelity(state)
}

/// Best overlap with `(|f…f⟩ + e^{iθ}|e…e⟩)/√2` over all `θ`, and the
/// maximizing `θ ∈ (−π, π]`.
pub fn ghz_class_fidelity(state: &QuantumState) -> (f64, f64) {
    let a = state.amplitudes();
    let first = a[0];
    let last = a[a.len() - 1];
    let best = ((first.norm() + last.norm()) * FRAC_1_SQRT_2).min(1.0);
    let theta = wrap_angle(principal_arg(last) - principal_arg(first));
    (best, theta)
}

/// Entanglement measures of a pure state at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub time: f64,
    /// Single-qubit entropies in nats.
    pub entropies: Vec<f64>,
    pub purities: Vec<f64>,
    pub bloch: Vec<[f64; 3]>,
    /// `((j, k), C_jk)` for `j < k`.
    pub pair_concurrences: Vec<((usize, usize), f64)>,
    /// `C_{j(rest)} = √(2 − 2P_j)`.
    pub bipartition_concurrences: Vec<f64>,
    /// Only for three qubits.
    pub three_tangle: Option<f64>,
    /// Best GHZ-class fidelity and its relative phase.
    pub ghz_class: (f64, f64),
    pub fidelities: Vec<(String, f64)>,
}

impl EntanglementReport {
    pub fn min_entropy(&self) -> f64 {
        self.entropies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn fidelity(&self, label: &str) -> Option<f64> {
        self.fidelities
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, f)| *f)
    }

    /// Column names; qubits and pairs are numbered from 1.
    pub fn header(n: usize, target_labels: &[String]) -> Vec<String> {
        let mut h = vec!["time".to_string()];
        h.extend((1..=n).map(|j| format!("S_{j}")));
        h.extend((1..=n).map(|j| format!("P_{j}")));
        for j in 1..=n {
            h.extend(["x", "y", "z"].iter().map(|a| format!("bloch{a}_{j}")));
        }
        for j in 1..=n {
            for k in j + 1..=n {
                h.push(format!("C_{j}{k}"));
            }
        }
        h.extend((1..=n).map(|j| format!("C_{j}rest")));
        h.push("tau123".into());
        h.push("ghz_class_fidelity".into());
        h.push("ghz_class_phase".into());
        h.extend(target_labels.iter().map(|l| format!("F_{l}")));
        h
    }

    pub fn row(&self) -> Vec<Cell> {
        let mut r: Vec<Cell> = vec![self.time.into()];
        r.extend(self.entropies.iter().map(|&v| Cell::Real(v)));
        r.extend(self.purities.iter().map(|&v| Cell::Real(v)));
        for b in &self.bloch {
            r.extend(b.iter().map(|&v| Cell::Real(v)));
        }
        r.extend(self.pair_concurrences.iter().map(|&(_, v)| Cell::Real(v)));
        r.extend(self.bipartition_concurrences.iter().map(|&v| Cell::Real(v)));
        r.push(self.three_tangle.map_or(Cell::Empty, Cell::Real));
        r.push(self.ghz_class.0.into());
        r.push(self.ghz_class.1.into());
        r.extend(self.fidelities.iter().map(|(_, v)| Cell::Real(*v)));
        r
    }
}

/// Table of reports that share qubit count and targets.
pub fn reports_table(n: usize, targets: &[Target], reports: &[EntanglementReport]) -> Table {
    let labels: Vec<String> = targets.iter().map(|t| t.label.clone()).collect();
    let mut t = Table::new(EntanglementReport::header(n, &labels));
    for r in reports {
        t.push(r.row());
    }
    t
}

/// All measures of `state`; the three-tangle only when `n = 3`.
pub fn report(state: &QuantumState, time: f64, targets: &[Target]) -> Result<EntanglementReport> {
    let n = state.n();
    let mut entropies = Vec::with_capacity(n);
    let mut purities = Vec::with_capacity(n);
    let mut bloch = Vec::with_capacity(n);
    let mut bipartition = Vec::with_capacity(n);
    for j in 0..n {
        let rho = partial_trace(state, &[j])?;
        let p = purity(&rho);
        entropies.push(entanglement_entropy(&rho)?);
        purities.push(p);
        bloch.push(bloch_vector(&rho)?);
        bipartition.push(bipartition_concurrence(p)?);
    }
    let mut pairs = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            pairs.push(((j, k), pair_concurrence(state, j, k)?));
        }
    }
    let fidelities = targets
        .iter()
        .map(|t| Ok((t.label.clone(), ghz_fidelity(state, &t.state)?)))
        .collect::<Result<_>>()?;
    Ok(EntanglementReport {
        time,
        entropies,
        purities,
        bloch,
        pair_concurrences: pairs,
        bipartition_concurrences: bipartition,
        three_tangle: if n == 3 {
            Some(three_tangle(state)?)
        } else {
            None
        },
        ghz_class: ghz_class_fidelity(state),
        fidelities,
    })
}
