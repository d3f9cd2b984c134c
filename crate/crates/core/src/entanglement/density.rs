// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::SymmetricEigen;

use crate::dynamics::QuantumState;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, ZERO};

/// Eigenvalues of a density matrix in `[−NEGATIVE_TOL, 0)` are clamped to
/// zero; anything more negative is non-physical.
pub const NEGATIVE_TOL: f64 = 1e-10;

const HERMITICITY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;

/// Hermitian, unit-trace density matrix of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    rho: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace; positivity is checked lazily by the
    /// spectral functions.
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        let dim = rho.nrows();
        if dim != rho.ncols() {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rho.ncols(),
            });
        }
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::invalid(
                "rho",
                format!("dimension {dim} is not a power of two ≥ 2"),
            ));
        }
        let herm = (&rho - rho.adjoint()).norm();
        if !(herm <= HERMITICITY_TOL) {
            return Err(Error::NonPhysical(format!("‖ρ − ρ†‖ = {herm:.3e}")));
        }
        let tr = rho.trace();
        if !((tr - c(1.0, 0.0)).norm() <= TRACE_TOL) {
            return Err(Error::NonPhysical(format!("Tr ρ = {tr}")));
        }
        Ok(DensityMatrix {
            n: dim.trailing_zeros() as usize,
            rho,
        })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(state: &QuantumState) -> Self {
        let a = state.amplitudes();
        DensityMatrix {
            n: state.n(),
            rho: a * a.adjoint(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// Eigenvalues (ascending) and eigenvectors, with small negative
    /// eigenvalues clamped to zero.
    pub(crate) fn eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        let eig = SymmetricEigen::new(self.rho.clone());
        let mut pairs: Vec<(f64, usize)> = eig.eigenvalues.iter().copied().zip(0..).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(&(lowest, _)) = pairs.first() {
            if lowest < -NEGATIVE_TOL {
                return Err(Error::NonPhysical(format!(
                    "eigenvalue {lowest:.3e} below −{NEGATIVE_TOL:e}"
                )));
            }
        }
        let values = pairs.iter().map(|&(v, _)| v.max(0.0)).collect();
        let vectors = ComplexMatrix::from_columns(
            &pairs
                .iter()
                .map(|&(_, k)| eig.eigenvectors.column(k).into_owned())
                .collect::<Vec<_>>(),
        );
        Ok((values, vectors))
    }

    /// `B` with `ρ = B·B†`, from the clamped eigen-decomposition.
    pub(crate) fn factor(&self) -> Result<ComplexMatrix> {
        let (values, mut vectors) = self.eigen()?;
        for (k, v) in values.iter().enumerate() {
            let s = c(v.sqrt(), 0.0);
            vectors.column_mut(k).iter_mut().for_each(|z| *z *= s);
        }
        Ok(vectors)
    }
}

pub(crate) fn validate_keep(n: usize, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::invalid("keep", "at least one qubit must be kept"));
    }
    let mut k = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.len() != keep.len() {
        return Err(Error::invalid("keep", "qubit indices must be distinct"));
    }
    if let Some(&bad) = k.iter().find(|&&q| q >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    Ok(k)
}

/// Amplitudes rearranged as a matrix `M[kept, rest]` so that `ρ_keep = M·M†`.
/// `keep` must be sorted and valid.
pub(crate) fn amplitude_matrix(state: &QuantumState, keep: &[usize]) -> ComplexMatrix {
    let n = state.n();
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let sub = |index: usize, qubits: &[usize]| {
        qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((index >> (n - 1 - q)) & 1))
    };
    let mut m = ComplexMatrix::from_element(1 << keep.len(), 1 << rest.len(), ZERO);
    for (i, a) in state.amplitudes().iter().enumerate() {
        m[(sub(i, keep), sub(i, &rest))] = *a;
    }
    m
}

/// Reduced density matrix of the `keep` qubits (0-based), in standard order
/// of the kept qubits sorted ascending.
pub fn partial_trace(state: &QuantumState, keep: &[usize]) -> Result<DensityMatrix> {
    let keep = validate_keep(state.n(), keep)?;
    let m = amplitude_matrix(state, &keep);
    Ok(DensityMatrix {
        n: keep.len(),
        rho: &m * m.adjoint(),
    })
}

fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Single-qubit eigenvalues `λ± = ½ ± ½√((ρ_ff − ρ_ee)² + 4ρ_fe ρ_ef)`.
pub fn qubit_eigenvalues(rho: &DensityMatrix) -> Result<(f64, f64)> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    let d = (m[(0, 0)] - m[(1, 1)]).re;
    let disc = (d * d + 4.0 * (m[(0, 1)] * m[(1, 0)]).re).max(0.0);
    let r = 0.5 * disc.sqrt();
    Ok(((0.5 - r).max(0.0), (0.5 + r).min(1.0)))
}

/// Von Neumann entropy (nats) of a single qubit from the closed-form
/// eigenvalues.
pub fn entanglement_entropy(rho: &DensityMatrix) -> Result<f64> {
    let (lm, lp) = qubit_eigenvalues(rho)?;
    Ok(0.0 - xlogx(lm) - xlogx(lp))
}

/// Von Neumann entropy (nats) of a density matrix of any size.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let (values, _) = rho.eigen()?;
    Ok((-values.iter().map(|&v| xlogx(v)).sum::<f64>()).max(0.0))
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` with `|f⟩` at the north pole.
pub fn bloch_vector(rho: &DensityMatrix) -> Result<[f64; 3]> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    Ok([
        2.0 * m[(0, 1)].re,
        -2.0 * m[(0, 1)].im,
        (m[(0, 0)] - m[(1, 1)]).re,
    ])
}
