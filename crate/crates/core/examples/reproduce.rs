// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Regenerates one bundled scenario into a temporary directory and prints its
//! manifest. Pass a label (default `fig1_spectra`) as the first argument.

use nhqsim::experiments::{reproduce_scenario, EntryKind, SCENARIOS};

fn main() -> nhqsim::Result<()> {
    let label = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fig1_spectra".into());
    println!("available: {}", SCENARIOS.join(", "));
    let dir = tempfile::tempdir()?;
    let outcome = reproduce_scenario(&label, dir.path())?;
    for entry in &outcome.manifest.entries {
        let verdict = match (entry.kind, entry.pass) {
            (EntryKind::Info, _) => "info",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        };
        println!(
            "{verdict:>4}  {:<40} {} (expected {})",
            entry.name, entry.observed, entry.expected
        );
    }
    println!(
        "{label}: {}",
        if outcome.passed() { "PASS" } else { "FAIL" }
    );
    Ok(())
}
