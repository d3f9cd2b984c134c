// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's numerics.

#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type M = DMatrix<C>;
pub type V = DVector<C>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn kron(a: &M, b: &M) -> M {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    M::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `op` on qubit `j` of `n` (qubit 0 is the leftmost tensor factor).
pub fn embed(op: &M, j: usize, n: usize) -> M {
    let mut out = M::identity(1, 1);
    for k in 0..n {
        let f = if k == j {
            op.clone()
        } else {
            M::identity(2, 2)
        };
        out = kron(&out, &f);
    }
    out
}

/// Basis `(|f⟩, |e⟩)`.
pub fn sigma_x() -> M {
    M::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn sigma_y() -> M {
    M::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

/// `|f⟩⟨e|`.
pub fn lowering() -> M {
    M::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
}

/// `|e⟩⟨e|`.
pub fn excited() -> M {
    M::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
}

/// Single-qubit block `(Δ − iγ/2)|e⟩⟨e| + Ω σx`.
pub fn qubit_block(omega: f64, delta: f64, gamma: f64) -> M {
    excited() * c(delta, -gamma / 2.0) + sigma_x() * c(omega, 0.0)
}

/// Hamiltonian from Kronecker products; each unordered pair `j < k`
/// contributes `J_jk (σ_j†σ_k + σ_k†σ_j)` once.
pub fn hamiltonian(omega: &[f64], delta: &[f64], gamma: &[f64], coupling: &[Vec<f64>]) -> M {
    let n = omega.len();
    let dim = 1 << n;
    let mut h = M::zeros(dim, dim);
    for j in 0..n {
        h += embed(&qubit_block(omega[j], delta[j], gamma[j]), j, n);
    }
    let lower = lowering();
    for j in 0..n {
        for k in (j + 1)..n {
            let sj = embed(&lower, j, n);
            let sk = embed(&lower, k, n);
            let hop = sj.adjoint() * &sk + sk.adjoint() * &sj;
            h += hop * c(coupling[j][k], 0.0);
        }
    }
    h
}

pub fn uniform_hamiltonian(n: usize, omega: f64, gamma: f64, j: f64) -> M {
    let coupling = vec![vec![j; n]; n];
    hamiltonian(&vec![omega; n], &vec![0.0; n], &vec![gamma; n], &coupling)
}

/// Truncated Taylor series of `exp(a)`.
pub fn taylor_expm(a: &M, terms: usize) -> M {
    let dim = a.nrows();
    let mut sum = M::identity(dim, dim);
    let mut term = M::identity(dim, dim);
    for k in 1..=terms {
        term = &term * a * c(1.0 / k as f64, 0.0);
        sum += &term;
    }
    sum
}

pub fn normalized(v: &V) -> V {
    v / c(v.norm(), 0.0)
}

/// Distance between state directions after removing the relative phase.
pub fn direction_distance(a: &V, b: &V) -> f64 {
    let a = normalized(a);
    let b = normalized(b);
    let overlap = b.dotc(&a);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        c(1.0, 0.0)
    };
    (a - b * phase).norm()
}

/// Adaptive Dormand–Prince 5(4) integration of `dψ/dt = −iHψ` from 0 to each
/// of `times`, returning normalized states. `H` is shifted by the imaginary
/// part of its mean diagonal, which rescales `ψ` without changing its
/// direction and keeps the norm of order one.
pub fn dormand_prince(h: &M, psi0: &V, times: &[f64], rtol: f64) -> Vec<V> {
    let dim = h.nrows();
    let shift = h.trace().im / dim as f64;
    let a = (h - M::identity(dim, dim) * c(0.0, shift)) * c(0.0, -1.0);
    let f = |y: &V| &a * y;
    let b = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    let bs = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let mut out = Vec::with_capacity(times.len());
    let mut t: f64 = 0.0;
    let mut y = psi0.clone();
    let mut dt: f64 = 1e-3;
    for &target in times {
        while t < target {
            let step = dt.min(target - t);
            let k1 = f(&y);
            let k2 = f(&(&y + &k1 * c(step / 5.0, 0.0)));
            let k3 =
                f(&(&y + (&k1 * c(3.0 / 40.0, 0.0) + &k2 * c(9.0 / 40.0, 0.0)) * c(step, 0.0)));
            let k4 = f(&(&y
                + (&k1 * c(44.0 / 45.0, 0.0) - &k2 * c(56.0 / 15.0, 0.0)
                    + &k3 * c(32.0 / 9.0, 0.0))
                    * c(step, 0.0)));
            let k5 = f(&(&y
                + (&k1 * c(19372.0 / 6561.0, 0.0) - &k2 * c(25360.0 / 2187.0, 0.0)
                    + &k3 * c(64448.0 / 6561.0, 0.0)
                    - &k4 * c(212.0 / 729.0, 0.0))
                    * c(step, 0.0)));
            let k6 = f(&(&y
                + (&k1 * c(9017.0 / 3168.0, 0.0) - &k2 * c(355.0 / 33.0, 0.0)
                    + &k3 * c(46732.0 / 5247.0, 0.0)
                    + &k4 * c(49.0 / 176.0, 0.0)
                    - &k5 * c(5103.0 / 18656.0, 0.0))
                    * c(step, 0.0)));
            let y5 = &y
                + (&k1 * c(b[0], 0.0)
                    + &k3 * c(b[2], 0.0)
                    + &k4 * c(b[3], 0.0)
                    + &k5 * c(b[4], 0.0)
                    + &k6 * c(b[5], 0.0))
                    * c(step, 0.0);
            let k7 = f(&y5);
            let y4 = &y
                + (&k1 * c(bs[0], 0.0)
                    + &k3 * c(bs[2], 0.0)
                    + &k4 * c(bs[3], 0.0)
                    + &k5 * c(bs[4], 0.0)
                    + &k6 * c(bs[5], 0.0)
                    + &k7 * c(bs[6], 0.0))
                    * c(step, 0.0);
            let err = (&y5 - &y4).norm() / (rtol * y5.norm().max(1e-300));
            if err <= 1.0 {
                t += step;
                y = y5;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            dt = step * factor;
        }
        out.push(normalized(&y));
    }
    out
}

/// Reduced density matrix by explicit summation over basis indices:
/// `ρ[a, b] = Σ_r ψ(a ⊕ r) ψ(b ⊕ r)*` with `a, b` on the kept qubits.
pub fn brute_partial_trace(psi: &V, n: usize, keep: &[usize]) -> M {
    let k = keep.len();
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let index = |kept_bits: usize, rest_bits: usize| {
        let mut idx = 0usize;
        for (p, &q) in keep.iter().enumerate() {
            let bit = (kept_bits >> (k - 1 - p)) & 1;
            idx |= bit << (n - 1 - q);
        }
        for (p, &q) in traced.iter().enumerate() {
            let bit = (rest_bits >> (traced.len() - 1 - p)) & 1;
            idx |= bit << (n - 1 - q);
        }
        idx
    };
    let mut rho = M::zeros(1 << k, 1 << k);
    for a in 0..(1 << k) {
        for b in 0..(1 << k) {
            for r in 0..(1 << traced.len()) {
                rho[(a, b)] += psi[index(a, r)] * psi[index(b, r)].conj();
            }
        }
    }
    rho
}

/// The three-qubit single-site reduced matrices written out entry by entry
/// in the grouped amplitude order `α_1 … α_8` =
/// `fff, ffe, fef, eff, fee, efe, eef, eee`.
pub fn closed_form_reduced(alpha: &[C; 8], qubit: usize) -> M {
    let a = |m: usize| alpha[m - 1];
    let sq = |m: usize| a(m).norm_sqr();
    let (diag_f, diag_e, pairs): ([usize; 4], [usize; 4], [(usize, usize); 4]) = match qubit {
        0 => ([1, 2, 3, 5], [4, 6, 7, 8], [(1, 4), (2, 6), (3, 7), (5, 8)]),
        1 => ([1, 2, 4, 6], [3, 5, 7, 8], [(1, 3), (2, 5), (4, 7), (6, 8)]),
        2 => ([1, 3, 4, 7], [2, 5, 6, 8], [(1, 2), (3, 5), (4, 6), (7, 8)]),
        _ => panic!("three qubits only"),
    };
    let xx: f64 = diag_f.iter().map(|&m| sq(m)).sum();
    let yy: f64 = diag_e.iter().map(|&m| sq(m)).sum();
    let xy: C = pairs.iter().map(|&(p, q)| a(p) * a(q).conj()).sum();
    M::from_row_slice(2, 2, &[c(xx, 0.0), xy, xy.conj(), c(yy, 0.0)])
}

/// Standard-order index of grouped position `m` (0-based) for three qubits.
pub const GROUPED_3: [usize; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

/// Entropy from the 2×2 eigenvalue closed form `λ± = ½ ± ½√((ρxx−ρyy)² + 4ρxyρyx)`.
pub fn closed_form_entropy(rho: &M) -> f64 {
    let d = (rho[(0, 0)] - rho[(1, 1)]).re;
    let off = (rho[(0, 1)] * rho[(1, 0)]).re;
    let root = (d * d + 4.0 * off).max(0.0).sqrt();
    [0.5 + 0.5 * root, 0.5 - 0.5 * root]
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Hermitian square root; eigenvalues at rounding level are treated as zero
/// so that rank-deficient inputs do not pick up `√ε` noise.
fn hermitian_sqrt(rho: &M) -> M {
    let eig = nalgebra::SymmetricEigen::new(rho.clone());
    let floor = 1e-14 * eig.eigenvalues.amax();
    let d = M::from_diagonal(
        &eig.eigenvalues
            .map(|l| c(if l > floor { l.sqrt() } else { 0.0 }, 0.0)),
    );
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Concurrence from the eigenvalues of `R = √(√ρ ρ̃ √ρ)`, evaluated as the
/// singular values of `√ρ √ρ̃` (since `√ρ ρ̃ √ρ = (√ρ √ρ̃)(√ρ √ρ̃)†`).
pub fn r_matrix_concurrence(rho: &M) -> f64 {
    let yy = kron(&sigma_y(), &sigma_y());
    let s = hermitian_sqrt(rho);
    let s_tilde = &yy * s.map(|z| z.conj()) * &yy;
    let mut lambda: Vec<f64> = (&s * s_tilde).singular_values().iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    (lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0)
}

/// Three-tangle `4|d1 − 2d2 + 4d3|` from the Cayley hyperdeterminant of the
/// amplitude tensor `a_ijk` (standard order).
pub fn hyperdeterminant_tangle(psi: &V) -> f64 {
    let a = |i: usize, j: usize, k: usize| psi[(i << 2) | (j << 1) | k];
    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm()
}

/// Haar-like random pure state (normalized complex Gaussian vector).
pub fn random_state(rng: &mut impl Rng, dim: usize) -> V {
    let mut gauss = || {
        let u: f64 = rng.gen::<f64>().max(1e-300);
        let v: f64 = rng.gen();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    };
    let v = V::from_fn(dim, |_, _| c(gauss(), gauss()));
    normalized(&v)
}

/// Random two-qubit density matrix of random rank.
pub fn random_density(rng: &mut impl Rng) -> M {
    let rank = rng.gen_range(1..=4);
    let mut rho = M::zeros(4, 4);
    let mut total = 0.0;
    for _ in 0..rank {
        let w: f64 = rng.gen::<f64>() + 1e-3;
        let v = random_state(rng, 4);
        rho += &v * v.adjoint() * c(w, 0.0);
        total += w;
    }
    rho / c(total, 0.0)
}
