// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Non-Hermitian eigendecomposition with biorthonormal left covectors,
//! parameter sweeps of the spectrum, and exceptional-point detection.
//!
//! Near an exceptional point of order `k` a perturbation of size `ε` splits the
//! eigenvalues by roughly `ε^{1/k}`, so the eigenvalues a floating-point solver
//! returns for a high-order EP scatter far beyond machine precision.
//! [`eigendecompose`] therefore merges eigenvalues that are indistinguishable
//! at a fixed pseudospectral level; see its documentation.

mod decomposition;
mod ep;
mod schur;
mod sweep;

pub use decomposition::{
    eigendecompose, SpectralDecomposition, COALESCENCE_TOL, DEFECTIVE_CONDITION,
    MODAL_CONDITION_LIMIT,
};
pub use ep::{
    detect_eps, eigenvalue_clusters, eigenvalue_groups, eigenvector_coalescence, EpCluster,
    EpTolerances,
};
pub use sweep::{
    ep_scan, ep_scan_table, locate_eps, located_eps_table, sort_spectrum, spectrum_sweep,
    EpScanPoint, LocatedEp, SpectrumSweep, SweepParameter,
};

pub(crate) use sweep::validate_grid;
