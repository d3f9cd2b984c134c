// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Lossless, strongly driven qubits prepared in |f…f⟩ pass close to GHZ states
//! with relative phases ∓i; this prints the peak fidelities.

use nhqsim::dynamics::{initial_state, InitialState};
use nhqsim::entanglement::Target;
use nhqsim::experiments::{fidelity_traces, stepped};
use nhqsim::SystemConfig;

fn main() -> nhqsim::Result<()> {
    let config = SystemConfig::uniform(3, 10.0, 0.0, 0.0, 0.4)?;
    let psi0 = initial_state(&InitialState::AllF, 3)?;
    let targets = Target::ghz_pair(3)?;
    let traces = fidelity_traces(&config, &psi0, &targets, &stepped(7.6, 8.1, 1e-4)?)?;
    for (target, (lo, hi)) in targets.iter().zip([(7.70, 7.85), (7.85, 8.00)]) {
        if let Some((t, f)) = traces.peak(&target.label, lo, hi) {
            println!("{}: {f:.6} at t = {t:.4} µs", target.label);
        }
    }
    Ok(())
}
