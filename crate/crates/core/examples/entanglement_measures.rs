// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entropies, purities, concurrences and the three-tangle of reference states
//! and of an evolved state at the three-tangle optimum.

use nhqsim::dynamics::{initial_state, propagate, InitialState, QuantumState};
use nhqsim::entanglement::{report, EntanglementReport};
use nhqsim::{build_hamiltonian, SystemConfig};

fn show(name: &str, r: &EntanglementReport) {
    let pairs: Vec<String> = r
        .pair_concurrences
        .iter()
        .map(|((a, b), c)| format!("C{}{}={c:.4}", a + 1, b + 1))
        .collect();
    println!(
        "{name:<10} S_1={:.4} P_1={:.4} {} tau={:.4} GHZ-class={:.4}",
        r.entropies[0],
        r.purities[0],
        pairs.join(" "),
        r.three_tangle.unwrap_or(f64::NAN),
        r.ghz_class.0
    );
}

fn main() -> nhqsim::Result<()> {
    show("GHZ", &report(&QuantumState::ghz(3, 0.0)?, 0.0, &[])?);
    show("W", &report(&QuantumState::w(3)?, 0.0, &[])?);
    show(
        "coherent",
        &report(&initial_state(&InitialState::Coherent, 3)?, 0.0, &[])?,
    );

    let config = SystemConfig::uniform(3, 1.576, 0.0, 6.0, 1e-3)?;
    let t = 3.226;
    let (state, _) = propagate(
        &build_hamiltonian(&config),
        &initial_state(&InitialState::Coherent, 3)?,
        t,
    )?;
    show("t = 3.226", &report(&state, t, &[])?);
    Ok(())
}
