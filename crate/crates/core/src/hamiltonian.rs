// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Effective non-Hermitian Hamiltonian of `n` driven, dissipative qubits.
//!
//! Each qubit lives in the `{|f⟩, |e⟩}` manifold with `|f⟩ ↦ 0`, `|e⟩ ↦ 1`.
//! Basis states use the standard tensor-product order: qubit 0 is the most
//! significant factor, so index `b` has qubit `j` excited iff bit
//! `n − 1 − j` of `b` is set. Units: ħ = 1, rates in rad/µs, times in µs.
//!
//! ```text
//! H = Σ_j [(Δ_j − iγ_j/2) |e⟩_j⟨e| + Ω_j σ^x_j] + Σ_pairs J_jk (σ_j†σ_k + σ_jσ_k†)
//! ```
//!
//! with `σ_j† = |f⟩_j⟨e|`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, frobenius_norm, ComplexMatrix, ONE, ZERO};

/// Largest supported register (dense 1024 × 1024 matrices).
pub const MAX_QUBITS: usize = 10;

/// Drive, detuning and decay of one qubit, all in rad/µs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitParams {
    pub omega: f64,
    pub delta: f64,
    pub gamma: f64,
}

impl QubitParams {
    pub fn new(omega: f64, delta: f64, gamma: f64) -> Self {
        QubitParams {
            omega,
            delta,
            gamma,
        }
    }

    fn validate(&self, j: usize) -> Result<()> {
        if !self.omega.is_finite() {
            return Err(Error::invalid(
                format!("qubits[{j}].omega"),
                "must be finite",
            ));
        }
        if !self.delta.is_finite() {
            return Err(Error::invalid(
                format!("qubits[{j}].delta"),
                "must be finite",
            ));
        }
        if !self.gamma.is_finite() || self.gamma < 0.0 {
            return Err(Error::invalid(
                format!("qubits[{j}].gamma"),
                format!("must be finite and >= 0, got {}", self.gamma),
            ));
        }
        Ok(())
    }
}

/// How the coupling double sum over `j ≠ k` is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingConvention {
    /// Each unordered pair contributes `J_jk (σ_j†σ_k + h.c.)` once.
    #[default]
    UnorderedPairs,
    /// Literal ordered sum: each unordered pair contributes twice.
    OrderedPairs,
}

impl CouplingConvention {
    fn multiplicity(self) -> f64 {
        match self {
            CouplingConvention::UnorderedPairs => 1.0,
            CouplingConvention::OrderedPairs => 2.0,
        }
    }
}

/// Validated physical description of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    qubits: Vec<QubitParams>,
    coupling: DMatrix<f64>,
    convention: CouplingConvention,
}

impl SystemConfig {
    /// Builds a configuration from per-qubit parameters and a symmetric
    /// coupling matrix with zero diagonal.
    pub fn new(qubits: Vec<QubitParams>, coupling: DMatrix<f64>) -> Result<Self> {
        let cfg = SystemConfig {
            qubits,
            coupling,
            convention: CouplingConvention::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Identical qubits with all-to-all coupling `j`.
    pub fn uniform(n: usize, omega: f64, delta: f64, gamma: f64, j: f64) -> Result<Self> {
        let coupling = DMatrix::from_fn(n, n, |a, b| if a == b { 0.0 } else { j });
        Self::new(vec![QubitParams::new(omega, delta, gamma); n], coupling)
    }

    pub fn with_convention(mut self, convention: CouplingConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn qubits(&self) -> &[QubitParams] {
        &self.qubits
    }

    pub fn coupling(&self) -> &DMatrix<f64> {
        &self.coupling
    }

    pub fn convention(&self) -> CouplingConvention {
        self.convention
    }

    /// True when every detuning is exactly zero.
    pub fn is_resonant(&self) -> bool {
        self.qubits.iter().all(|q| q.delta == 0.0)
    }

    /// Copy with `Ω_j = omega` on every qubit.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        self.map_qubits(|q| q.omega = omega)
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        self.map_qubits(|q| q.delta = delta)
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        self.map_qubits(|q| q.gamma = gamma)
    }

    /// Copy with every off-diagonal coupling set to `j`.
    pub fn with_uniform_coupling(&self, j: f64) -> Result<Self> {
        let n = self.n();
        let mut cfg = self.clone();
        cfg.coupling = DMatrix::from_fn(n, n, |a, b| if a == b { 0.0 } else { j });
        cfg.validate()?;
        Ok(cfg)
    }

    fn map_qubits(&self, f: impl Fn(&mut QubitParams)) -> Result<Self> {
        let mut cfg = self.clone();
        cfg.qubits.iter_mut().for_each(f);
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.qubits.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::invalid(
                "qubits",
                format!("qubit count must be in 1..={MAX_QUBITS}, got {n}"),
            ));
        }
        for (j, q) in self.qubits.iter().enumerate() {
            q.validate(j)?;
        }
        if self.coupling.shape() != (n, n) {
            return Err(Error::invalid(
                "coupling",
                format!("expected {n}x{n} matrix, got {:?}", self.coupling.shape()),
            ));
        }
        for a in 0..n {
            if self.coupling[(a, a)] != 0.0 {
                return Err(Error::invalid(
                    format!("coupling[{a}][{a}]"),
                    "diagonal must be exactly zero",
                ));
            }
            for b in 0..n {
                let v = self.coupling[(a, b)];
                if !v.is_finite() {
                    return Err(Error::invalid(
                        format!("coupling[{a}][{b}]"),
                        "must be finite",
                    ));
                }
                if v != self.coupling[(b, a)] {
                    return Err(Error::invalid(
                        format!("coupling[{a}][{b}]"),
                        "coupling matrix must be symmetric",
                    ));
                }
            }
        }
        Ok(())
    }
}

#[inline]
fn bit(n: usize, j: usize) -> usize {
    1 << (n - 1 - j)
}

/// Embedding of `σ_j = |e⟩⟨f|` (or `σ_j† = |f⟩⟨e|` when `dagger`) into the
/// `2^n`-dimensional register. `j` is zero-based.
pub fn ladder_operator(n: usize, j: usize, dagger: bool) -> Result<ComplexMatrix> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::invalid("n", format!("must be in 1..={MAX_QUBITS}")));
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let dim = 1 << n;
    let mask = bit(n, j);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let excited = col & mask != 0;
        // σ† moves e → f, σ moves f → e.
        if dagger && excited {
            m[(col & !mask, col)] = ONE;
        } else if !dagger && !excited {
            m[(col | mask, col)] = ONE;
        }
    }
    Ok(m)
}

/// Dense Hamiltonian of the register.
pub fn build_hamiltonian(config: &SystemConfig) -> ComplexMatrix {
    let n = config.n();
    let dim = config.dim();
    let mut h = ComplexMatrix::zeros(dim, dim);
    let pair_weight = config.convention.multiplicity();

    for b in 0..dim {
        let mut diag = ZERO;
        for (j, q) in config.qubits.iter().enumerate() {
            let mask = bit(n, j);
            if b & mask != 0 {
                diag += c(q.delta, -q.gamma / 2.0);
            }
            h[(b ^ mask, b)] += c(q.omega, 0.0);
        }
        h[(b, b)] += diag;

        // Exchange between a pair in opposite states.
        for j in 0..n {
            for k in (j + 1)..n {
                let jk = config.coupling[(j, k)];
                if jk == 0.0 {
                    continue;
                }
                let (mj, mk) = (bit(n, j), bit(n, k));
                if ((b & mj) != 0) != ((b & mk) != 0) {
                    h[(b ^ mj ^ mk, b)] += c(pair_weight * jk, 0.0);
                }
            }
        }
    }
    h
}

/// Passive-PT-symmetric Hamiltonian `H + i(Σ_j γ_j/4)·I` (requires `Δ = 0`).
pub fn pt_hamiltonian(config: &SystemConfig) -> Result<ComplexMatrix> {
    require_resonant(config)?;
    let shift: f64 = config.qubits.iter().map(|q| q.gamma / 4.0).sum();
    let mut h = build_hamiltonian(config);
    for k in 0..h.nrows() {
        h[(k, k)] += c(0.0, shift);
    }
    Ok(h)
}

/// Frobenius norm of `P·conj(H_PT)·P − H_PT`, with `P` the product of
/// single-qubit `|e⟩ ↔ |f⟩` exchanges.
pub fn pt_symmetry_residual(config: &SystemConfig) -> Result<f64> {
    let h = pt_hamiltonian(config)?;
    let dim = h.nrows();
    // P flips every qubit, i.e. maps index b to its bitwise complement.
    let flip = dim - 1;
    let transformed = ComplexMatrix::from_fn(dim, dim, |r, s| h[(r ^ flip, s ^ flip)].conj());
    Ok(frobenius_norm(&(transformed - h)))
}

fn require_resonant(config: &SystemConfig) -> Result<()> {
    if let Some((j, q)) = config
        .qubits
        .iter()
        .enumerate()
        .find(|(_, q)| q.delta != 0.0)
    {
        return Err(Error::invalid(
            format!("qubits[{j}].delta"),
            format!("PT-symmetric form requires zero detuning, got {}", q.delta),
        ));
    }
    Ok(())
}
