// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use super::density::{amplitude_matrix, partial_trace, purity, validate_keep, DensityMatrix};
use crate::dynamics::QuantumState;
use crate::error::{Error, Result};
use crate::linalg::{c, singular_values, ComplexMatrix, ZERO};

/// Purity tolerance accepted by [`bipartition_concurrence`].
const PURITY_TOL: f64 = 1e-9;

/// Three-tangle excursions outside `[0, 1]` larger than this are logged.
const TANGLE_CLAMP_LOG: f64 = 1e-8;

/// `σy ⊗ σy`, which is real: anti-diagonal `(−1, 1, 1, −1)`.
fn sigma_yy() -> ComplexMatrix {
    let mut y = ComplexMatrix::from_element(4, 4, ZERO);
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        y[(i, 3 - i)] = c(s, 0.0);
    }
    y
}

/// Wootters concurrence from any factor `B` with `ρ = B·B†`.
///
/// The nonzero eigenvalues of `ρ·ρ̃` are the squared singular values of the
/// complex-symmetric matrix `Bᵀ·(σy⊗σy)·B`, which avoids both the
/// non-Hermitian eigenproblem and matrix square roots.
fn concurrence_from_factor(b: &ComplexMatrix) -> Result<f64> {
    let m = b.transpose() * sigma_yy() * b;
    let mut lambda = singular_values(&m)?;
    lambda.resize(lambda.len().max(4), 0.0);
    let value = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    Ok(value.clamp(0.0, 1.0))
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)` of a two-qubit density
/// matrix.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    concurrence_from_factor(&rho.factor()?)
}

/// Concurrence of qubits `a` and `b` of a pure state, using the state's own
/// amplitudes as the factor of the reduced matrix.
pub fn pair_concurrence(state: &QuantumState, a: usize, b: usize) -> Result<f64> {
    let keep = validate_keep(state.n(), &[a, b])?;
    concurrence_from_factor(&amplitude_matrix(state, &keep))
}

/// `C_{j(rest)} = √(2 − 2P_j)` for a single-qubit purity `P_j ∈ [½, 1]`.
pub fn bipartition_concurrence(purity: f64) -> Result<f64> {
    if !(0.5 - PURITY_TOL..=1.0 + PURITY_TOL).contains(&purity) {
        return Err(Error::invalid(
            "purity",
            format!("{purity} outside [0.5, 1]"),
        ));
    }
    Ok((2.0 - 2.0 * purity).clamp(0.0, 1.0).sqrt())
}

/// Residual tangle `τ = C²_{1(23)} − C²_{12} − C²_{13}` of a three-qubit pure
/// state, clamped to `[0, 1]`.
pub fn three_tangle(state: &QuantumState) -> Result<f64> {
    if state.n() != 3 {
        return Err(Error::invalid(
            "state",
            format!("three-tangle needs 3 qubits, got {}", state.n()),
        ));
    }
    let p1 = purity(&partial_trace(state, &[0])?);
    let c12 = pair_concurrence(state, 0, 1)?;
    let c13 = pair_concurrence(state, 0, 2)?;
    let raw = 2.0 - 2.0 * p1 - c12 * c12 - c13 * c13;
    let clamped = raw.clamp(0.0, 1.0);
    if (raw - clamped).abs() > TANGLE_CLAMP_LOG {
        log::warn!("three-tangle {raw:.3e} clamped to {clamped}");
    }
    Ok(clamped)
}
