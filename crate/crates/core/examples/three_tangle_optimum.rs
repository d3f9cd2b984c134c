// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Three-tangle over a (time, coupling) grid and the refined optimum inside a
//! search box.

use nhqsim::dynamics::{initial_state, InitialState};
use nhqsim::experiments::{
    entanglement_map, find_optimal, linspace, logspace, Objective, SearchBox, SearchOptions,
    SweepGrid,
};
use nhqsim::SystemConfig;

fn main() -> nhqsim::Result<()> {
    let config = SystemConfig::uniform(3, 1.576, 0.0, 6.0, 1e-3)?;
    let psi0 = initial_state(&InitialState::Coherent, 3)?;

    let grid = SweepGrid::new(linspace(0.0, 6.5, 131), logspace(1e-6, 1e-1, 31)?)?;
    let map = entanglement_map(&config, &psi0, &grid)?;
    if let Some(cell) = map.argmax() {
        println!(
            "grid maximum: t = {:.4} µs, J = {:.3e} rad/µs",
            cell.time, cell.coupling
        );
    }

    let bounds = SearchBox {
        time: (3.0, 3.5),
        coupling: (5e-4, 2e-3),
        omega: None,
    };
    let best = find_optimal(
        &config,
        &psi0,
        bounds,
        Objective::Tau123,
        SearchOptions::default(),
    )?;
    println!(
        "refined: tau123 = {:.5} at t = {:.5} µs, J = {:.4e} rad/µs; S_j = {:.4}",
        best.value, best.time, best.coupling, best.report.entropies[0]
    );
    Ok(())
}
