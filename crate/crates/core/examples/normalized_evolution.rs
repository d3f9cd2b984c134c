// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Normalized non-unitary evolution from the coherent product state, printing
//! the grouped amplitude moduli and the norm lost to dissipation.

use nhqsim::dynamics::{initial_state, BasisOrdering, InitialState, Propagator};
use nhqsim::experiments::linspace;
use nhqsim::{build_hamiltonian, SystemConfig};

fn main() -> nhqsim::Result<()> {
    let config = SystemConfig::uniform(3, 1.576, 0.0, 6.0, 1e-3)?;
    let psi0 = initial_state(&InitialState::Coherent, 3)?;
    let propagator = Propagator::new(&build_hamiltonian(&config))?;
    let trajectory = propagator.series(&psi0, &linspace(0.0, 6.5, 14))?;

    let ordering = BasisOrdering::excitation_grouped(3);
    println!(
        "{:>6} {:>11}  {}",
        "t",
        "prenorm",
        ordering.labels().join("    ")
    );
    for ((t, state), prenorm) in trajectory
        .times
        .iter()
        .zip(&trajectory.states)
        .zip(&trajectory.prenorms)
    {
        let moduli: Vec<String> = ordering
            .order()
            .iter()
            .map(|&k| format!("{:.4}", state.amplitudes()[k].norm()))
            .collect();
        println!("{t:>6.3} {prenorm:>11.4e}  {}", moduli.join(" "));
    }
    Ok(())
}
