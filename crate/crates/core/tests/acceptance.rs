// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::f64::consts::{LN_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::{c, direction_distance, dormand_prince, rng, GROUPED_3};
use nhqsim::dynamics::{
    initial_state, modal_propagate, propagate, InitialState, Propagator, QuantumState,
};
use nhqsim::entanglement::{
    concurrence, entanglement_entropy, partial_trace, report, three_tangle, DensityMatrix, Target,
};
use nhqsim::experiments::{
    find_optimal, four_qubit_entropy_traces, linspace, stepped, EntropyRun, Objective, SearchBox,
    SearchOptions,
};
use nhqsim::spectral::{
    detect_eps, eigendecompose, eigenvalue_groups, locate_eps, EpTolerances, SweepParameter,
};
use nhqsim::{build_hamiltonian, ComplexVector, SystemConfig};

/// Outcome of one criterion: pass flag and a one-line account of observations.
type Outcome = (bool, String);

/// Identifier, title and check of one criterion.
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn cfg(n: usize, omega: f64, gamma: f64, j: f64) -> SystemConfig {
    SystemConfig::uniform(n, omega, 0.0, gamma, j).unwrap()
}

fn coherent(n: usize) -> QuantumState {
    initial_state(&InitialState::Coherent, n).unwrap()
}

fn all_f(n: usize) -> QuantumState {
    initial_state(&InitialState::AllF, n).unwrap()
}

fn state_at(config: &SystemConfig, psi0: &QuantumState, t: f64) -> QuantumState {
    propagate(&build_hamiltonian(config), psi0, t).unwrap().0
}

/// AC-1: coalescence at Ω = γ/4 for n = 1, 2, 3 uncoupled qubits.
fn ac1() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=3usize {
        let d = eigendecompose(&build_hamiltonian(&cfg(n, 1.5, 6.0, 0.0))).unwrap();
        let e_ep = c(0.0, -1.5 * n as f64);
        let spread = d
            .eigenvalues()
            .iter()
            .map(|e| (e - e_ep).norm())
            .fold(0.0, f64::max);
        let eps = detect_eps(&d, EpTolerances::default()).unwrap();
        let orders: Vec<usize> = eps.iter().map(|e| e.order_estimate).collect();
        let expected = 1usize << n;
        ok &= spread <= 1e-8 && orders == vec![expected];
        notes.push(format!(
            "n={n}: max|E-E_EP|={spread:.1e}, orders={orders:?}"
        ));
    }
    (ok, notes.join("; "))
}

/// AC-2: three-tangle optimum of the three-qubit coherent start at J = 1e-3.
fn ac2() -> Outcome {
    let config = cfg(3, 1.576, 6.0, 1e-3);
    let psi0 = coherent(3);
    let bounds = SearchBox {
        time: (3.0, 3.5),
        coupling: (1e-3, 1e-3),
        omega: None,
    };
    let best = find_optimal(
        &config,
        &psi0,
        bounds,
        Objective::Tau123,
        SearchOptions::default(),
    )
    .unwrap();
    let s = &best.report.entropies;
    let p = report(&state_at(&config, &psi0, 3.232), 3.232, &[])
        .unwrap()
        .purities;
    let ok = (3.21..=3.26).contains(&best.time)
        && (best.value - 0.980).abs() <= 0.010
        && s.iter().all(|x| (x - 0.690).abs() <= 0.005)
        && p.iter().all(|x| (x - 0.5033).abs() <= 0.0020);
    (
        ok,
        format!(
            "t*={:.5}, tau123={:.5}, S_j={:.5}, P_j(3.232)={:.6}",
            best.time, best.value, s[0], p[0]
        ),
    )
}

/// AC-3: revival periods without coupling.
fn ac3() -> Outcome {
    let omega: f64 = 1.576;
    let psi0 = coherent(3);
    let t_nh = 4.0 * PI / (16.0 * omega * omega - 36.0).sqrt();
    let step = 0.01;
    let f_nh = [t_nh - step, t_nh, t_nh + step]
        .iter()
        .map(|&t| {
            state_at(&cfg(3, omega, 6.0, 0.0), &psi0, t)
                .fidelity(&psi0)
                .unwrap()
        })
        .fold(0.0, f64::max);
    let t_h = PI / omega;
    let f_h = state_at(&cfg(3, omega, 0.0, 0.0), &psi0, t_h)
        .fidelity(&psi0)
        .unwrap();
    (
        f_nh >= 0.999 && f_h >= 0.9999,
        format!("T={t_nh:.4}: F={f_nh:.6}; Hermitian T={t_h:.4}: F={f_h:.8}"),
    )
}

/// AC-4: purity after starting from |fff⟩.
fn ac4() -> Outcome {
    let s = state_at(&cfg(3, 1.576, 6.0, 1e-3), &all_f(3), 5.325);
    let p = report(&s, 5.325, &[]).unwrap().purities;
    (
        p.iter().all(|x| (x - 0.512).abs() <= 0.005),
        format!("P_j(5.325)={:.6} (expected 0.512 ± 0.005)", p[0]),
    )
}

fn peak(
    config: &SystemConfig,
    psi0: &QuantumState,
    targets: &[Target],
    lo: f64,
    hi: f64,
) -> (f64, f64) {
    let times = stepped(lo, hi, 1e-4).unwrap();
    let traj = Propagator::new(&build_hamiltonian(config))
        .unwrap()
        .series(psi0, &times)
        .unwrap();
    let mut best = (lo, 0.0);
    for (t, s) in times.iter().zip(&traj.states) {
        for target in targets {
            let f = target.state.fidelity(s).unwrap();
            if f > best.1 {
                best = (*t, f);
            }
        }
    }
    best
}

/// AC-5: Hermitian-limit GHZ fidelities for three and four qubits.
fn ac5() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let c3 = cfg(3, 10.0, 0.0, 0.4);
    let minus = [Target::ghz_minus_i(3).unwrap()];
    let plus = [Target::ghz_plus_i(3).unwrap()];
    for (label, targets, lo, hi) in [
        ("n=3 -i", &minus, 7.70, 7.85),
        ("n=3 +i", &plus, 7.85, 8.00),
    ] {
        let (t, f) = peak(&c3, &all_f(3), targets, lo, hi);
        ok &= f >= 0.9995;
        notes.push(format!("{label}: {f:.6} at {t:.4}"));
    }
    let c4 = cfg(4, 10.0, 0.0, 0.4);
    let both = Target::ghz_pair(4).unwrap();
    for center in [7.852, 8.009] {
        let (t, f) = peak(&c4, &all_f(4), &both, center - 0.075, center + 0.075);
        ok &= f >= 0.9995;
        notes.push(format!("n=4 near {center}: {f:.6} at {t:.4}"));
    }
    (ok, notes.join("; "))
}

/// AC-6: four-qubit entropy peak near the exceptional point.
fn ac6() -> Outcome {
    let run = [EntropyRun {
        omega: 1.598,
        coupling: 1e-3,
    }];
    let traces = four_qubit_entropy_traces(&run, 6.0, &stepped(2.5, 3.2, 1e-3).unwrap()).unwrap();
    let (t, s) = traces.peak_min_entropy(0, 2.5, 3.2).unwrap();
    (
        s >= 0.65 && (t - 2.85).abs() <= 0.10,
        format!("max min_j S_j={s:.5} at t={t:.3}"),
    )
}

/// AC-7: second-order exceptional points on either side of Ω = 1.5 at J = 1e-3.
fn ac7() -> Outcome {
    let template = cfg(3, 1.5, 6.0, 1e-3);
    let tol = EpTolerances::default();
    let located = locate_eps(
        &template,
        SweepParameter::Omega,
        &linspace(1.45, 1.55, 201),
        tol,
    )
    .unwrap();
    let second: Vec<f64> = located
        .iter()
        .filter(|l| l.clusters.iter().any(|c| c.order_estimate == 2))
        .map(|l| l.value)
        .collect();
    let bracket = second.iter().any(|&x| x < 1.5) && second.iter().any(|&x| x > 1.5);
    let d = eigendecompose(&build_hamiltonian(&template)).unwrap();
    let sizes: Vec<usize> = eigenvalue_groups(&d, tol)
        .unwrap()
        .iter()
        .filter(|g| g.algebraic_multiplicity > 1)
        .map(|g| g.algebraic_multiplicity)
        .collect();
    (
        bracket && !sizes.is_empty(),
        format!("order-2 EPs at {second:.6?}; cluster sizes at 1.5: {sizes:?} (reference 4 and 3, logged only)"),
    )
}

fn permute_qubits(psi: &ComplexVector, perm: [usize; 3]) -> ComplexVector {
    let mut out = ComplexVector::zeros(8);
    for idx in 0..8usize {
        let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
        let new = (bits[perm[0]] << 2) | (bits[perm[1]] << 1) | bits[perm[2]];
        out[new] = psi[idx];
    }
    out
}

/// AC-8: entanglement measures against independent oracles.
fn ac8() -> Outcome {
    let mut r = rng(0x5eed_0008);
    // (a) closed-form single-qubit matrices
    let mut dev_a: f64 = 0.0;
    for _ in 0..1000 {
        let v = common::random_state(&mut r, 8);
        let alpha: [_; 8] = std::array::from_fn(|m| v[GROUPED_3[m]]);
        let state = QuantumState::new(3, v.clone()).unwrap();
        for q in 0..3 {
            let lib = partial_trace(&state, &[q]).unwrap();
            dev_a = dev_a.max((lib.matrix() - common::closed_form_reduced(&alpha, q)).camax());
            dev_a = dev_a.max((lib.matrix() - common::brute_partial_trace(&v, 3, &[q])).camax());
        }
    }
    // (b) reference states
    let ghz = QuantumState::ghz(3, 0.0).unwrap();
    let w = QuantumState::w(3).unwrap();
    let tau_ghz = three_tangle(&ghz).unwrap();
    let tau_w = three_tangle(&w).unwrap();
    let s_w = entanglement_entropy(&partial_trace(&w, &[0]).unwrap()).unwrap();
    let s_w_ref = 3f64.ln() - 2.0 / 3.0 * LN_2;
    let ok_b =
        (tau_ghz - 1.0).abs() <= 1e-9 && tau_w.abs() <= 1e-9 && (s_w - s_w_ref).abs() <= 1e-10;
    // (c) permutation invariance
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut dev_c: f64 = 0.0;
    for _ in 0..200 {
        let v = common::random_state(&mut r, 8);
        let base = three_tangle(&QuantumState::new(3, v.clone()).unwrap()).unwrap();
        for p in perms {
            let t = three_tangle(&QuantumState::new(3, permute_qubits(&v, p)).unwrap()).unwrap();
            dev_c = dev_c.max((t - base).abs());
        }
    }
    // (d) concurrence against the R-matrix definition
    let mut dev_d: f64 = 0.0;
    for _ in 0..200 {
        let rho = common::random_density(&mut r);
        let lib = concurrence(&DensityMatrix::new(rho.clone()).unwrap()).unwrap();
        dev_d = dev_d.max((lib - common::r_matrix_concurrence(&rho)).abs());
    }
    (
        dev_a <= 1e-12 && ok_b && dev_c <= 1e-9 && dev_d <= 1e-8,
        format!(
            "(a) {dev_a:.1e}; (b) tau(GHZ)={tau_ghz:.12}, tau(W)={tau_w:.1e}, S(W)-ref={:.1e}; (c) {dev_c:.1e}; (d) {dev_d:.1e}",
            s_w - s_w_ref
        ),
    )
}

/// AC-9: propagator cross-checks.
fn ac9() -> Outcome {
    // modal expansion at well-conditioned points
    let mut dev_modal: f64 = 0.0;
    for (n, omega, gamma, j) in [
        (1, 3.0, 6.0, 0.0),
        (2, 2.0, 6.0, 0.01),
        (3, 1.576, 6.0, 1e-3),
        (3, 10.0, 0.0, 0.4),
    ] {
        let h = build_hamiltonian(&cfg(n, omega, gamma, j));
        let d = eigendecompose(&h).unwrap();
        assert!(
            d.condition_number() <= 1e8,
            "well-conditioned point expected"
        );
        let psi0 = coherent(n);
        for t in [0.3, 1.7, 3.2] {
            let a = modal_propagate(&d, &psi0, t).unwrap();
            let (b, _) = propagate(&h, &psi0, t).unwrap();
            dev_modal = dev_modal.max((a.amplitudes() - b.amplitudes()).norm());
        }
    }
    // adaptive ODE oracle on the three-qubit optimum scenario
    let h = build_hamiltonian(&cfg(3, 1.576, 6.0, 1e-3));
    let psi0 = coherent(3);
    let times = linspace(0.0, 6.5, 66);
    let oracle = dormand_prince(
        &common::uniform_hamiltonian(3, 1.576, 6.0, 1e-3),
        psi0.amplitudes(),
        &times,
        1e-12,
    );
    let traj = Propagator::new(&h).unwrap().series(&psi0, &times).unwrap();
    let dev_ode = traj
        .states
        .iter()
        .zip(&oracle)
        .map(|(s, o)| (s.amplitudes() - o).norm())
        .fold(0.0, f64::max);
    // split-step
    let (whole, _) = propagate(&h, &psi0, 3.0).unwrap();
    let (half, _) = propagate(&h, &psi0, 1.7).unwrap();
    let (split, _) = propagate(&h, &half, 1.3).unwrap();
    let dev_split = direction_distance(whole.amplitudes(), split.amplitudes());
    // Hermitian prenorm
    let hh = build_hamiltonian(&cfg(3, 10.0, 0.0, 0.4));
    let p = Propagator::new(&hh).unwrap();
    let dev_norm = [0.5, 7.775, 42.0, 100.0]
        .iter()
        .map(|&t| (p.propagate(&coherent(3), t).unwrap().1 - 1.0).abs())
        .fold(0.0, f64::max);
    (
        dev_modal <= 1e-8 && dev_ode <= 1e-7 && dev_split <= 1e-9 && dev_norm <= 1e-9,
        format!("modal {dev_modal:.1e}; ODE {dev_ode:.1e}; split-step {dev_split:.1e}; Hermitian prenorm {dev_norm:.1e}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC-1", "exceptional points of order 2^n at Ω = γ/4", ac1),
        ("AC-2", "three-qubit three-tangle optimum", ac2),
        ("AC-3", "revival periods", ac3),
        ("AC-4", "purity from |fff⟩ at t = 5.325", ac4),
        ("AC-5", "Hermitian-limit GHZ fidelities", ac5),
        ("AC-6", "four-qubit entropy peak", ac6),
        ("AC-7", "split exceptional points at J = 1e-3", ac7),
        ("AC-8", "entanglement measure oracles", ac8),
        ("AC-9", "propagator cross-checks", ac9),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        println!(
            "{id} {title}: {} ({detail})",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
