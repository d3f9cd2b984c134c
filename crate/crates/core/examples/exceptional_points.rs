// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Eigenvalue coalescence of identical driven, lossy qubits.
//!
//! Uncoupled qubits share a single exceptional point of order `2^n` at
//! `Ω = γ/4`; a weak uniform coupling splits it into lower-order points,
//! which are then located to high precision.

use nhqsim::experiments::linspace;
use nhqsim::spectral::{detect_eps, eigendecompose, locate_eps, EpTolerances, SweepParameter};
use nhqsim::{build_hamiltonian, SystemConfig};

fn main() -> nhqsim::Result<()> {
    let tol = EpTolerances::default();
    for n in 1..=3 {
        let config = SystemConfig::uniform(n, 1.5, 0.0, 6.0, 0.0)?;
        let decomp = eigendecompose(&build_hamiltonian(&config))?;
        for ep in detect_eps(&decomp, tol)? {
            println!(
                "n = {n}: order {} at E = {:.6}{:+.6}i (geometric rank {})",
                ep.order_estimate, ep.center.re, ep.center.im, ep.geometric_rank
            );
        }
    }

    let coupled = SystemConfig::uniform(3, 1.5, 0.0, 6.0, 1e-3)?;
    for ep in locate_eps(
        &coupled,
        SweepParameter::Omega,
        &linspace(1.45, 1.55, 201),
        tol,
    )? {
        let orders: Vec<usize> = ep.clusters.iter().map(|c| c.order_estimate).collect();
        println!(
            "J = 1e-3: EP at Ω = {:.9} rad/µs, orders {orders:?}",
            ep.value
        );
    }
    Ok(())
}
