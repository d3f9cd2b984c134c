// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical or numerical parameter violates its contract.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A qubit index lies outside `0..n`.
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    /// An iterative eigensolver or SVD failed to converge.
    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    /// The decomposition is too close to defective for modal propagation.
    #[error("decomposition is defective-adjacent (eigenvector condition number {condition:.3e})")]
    DefectiveAdjacent { condition: f64 },

    /// Overflow, underflow or a non-finite intermediate result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A density matrix violates positivity beyond tolerance.
    #[error("non-physical density matrix: {0}")]
    NonPhysical(String),

    /// Configuration file or command-line problem.
    #[error("configuration error: {0}")]
    Config(String),

    /// Unknown scenario label.
    #[error("unknown scenario `{label}`; valid labels: {valid}")]
    UnknownScenario { label: String, valid: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for failures that originate in numerics rather than in user input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::DefectiveAdjacent { .. }
                | Error::Numerical(_)
                | Error::NonPhysical(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
