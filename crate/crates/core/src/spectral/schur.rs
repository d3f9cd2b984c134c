// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Complex Schur decomposition `A = Z·T·Z†` by Householder reduction to
//! Hessenberg form followed by single-shift implicit QR sweeps, and
//! eigenvectors of the triangular factor by back-substitution.

use crate::error::{Error, Result};
use crate::linalg::{c, identity, ComplexMatrix, ComplexVector, C64, ONE, ZERO};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

#[derive(Debug, Clone)]
pub(crate) struct Schur {
    /// Unitary Schur vectors.
    pub z: ComplexMatrix,
    /// Upper-triangular factor.
    pub t: ComplexMatrix,
}

#[inline]
fn abs1(z: C64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Rotation `G = [c s; −s̄ c]` with `G·[a; b] = [r; 0]`.
#[derive(Debug, Clone, Copy)]
struct Givens {
    c: f64,
    s: C64,
}

impl Givens {
    fn new(a: C64, b: C64) -> Self {
        let na = a.norm();
        let nb = b.norm();
        if nb == 0.0 {
            return Givens { c: 1.0, s: ZERO };
        }
        if na == 0.0 {
            return Givens {
                c: 0.0,
                s: b.conj() / nb,
            };
        }
        let rho = na.hypot(nb);
        let phase = a / na;
        Givens {
            c: na / rho,
            s: phase * b.conj() / rho,
        }
    }

    /// Rows `i`, `i+1` ← G · rows, over columns `cols`.
    fn rotate_rows(&self, m: &mut ComplexMatrix, i: usize, cols: std::ops::Range<usize>) {
        for col in cols {
            let x = m[(i, col)];
            let y = m[(i + 1, col)];
            m[(i, col)] = x * self.c + self.s * y;
            m[(i + 1, col)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `i`, `i+1` ← columns · G†, over rows `rows`.
    fn rotate_cols(&self, m: &mut ComplexMatrix, i: usize, rows: std::ops::Range<usize>) {
        for row in rows {
            let x = m[(row, i)];
            let y = m[(row, i + 1)];
            m[(row, i)] = x * self.c + self.s.conj() * y;
            m[(row, i + 1)] = -self.s * x + y * self.c;
        }
    }
}

/// Reduces `a` to upper Hessenberg form, returning `(H, Q)` with `A = Q·H·Q†`.
fn hessenberg(mut a: ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.nrows();
    let mut q = identity(n);
    for k in 0..n.saturating_sub(2) {
        let alpha_norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            ONE
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * alpha_norm;
        // v = x − α e1, reflector P = I − 2 v v† / (v† v)
        let mut v: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // A ← P A
        for col in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * a[(k + 1 + r, col)])
                .sum();
            let f = dot * beta;
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, col)] -= vr * f;
            }
        }
        // A ← A P, Q ← Q P
        for m in [&mut a, &mut q] {
            for row in 0..n {
                let dot: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(r, vr)| m[(row, k + 1 + r)] * vr)
                    .sum();
                let f = dot * beta;
                for (r, vr) in v.iter().enumerate() {
                    m[(row, k + 1 + r)] -= f * vr.conj();
                }
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
    (a, q)
}

/// Eigenvalue of the 2×2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, cc: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * cc).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

pub(crate) fn schur(a: &ComplexMatrix) -> Result<Schur> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.ncols(),
        });
    }
    if n == 0 {
        return Ok(Schur {
            z: identity(0),
            t: identity(0),
        });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }

    let (mut h, mut z) = hessenberg(a.clone());
    let eps = f64::EPSILON;
    let small = f64::MIN_POSITIVE * (n as f64) / eps;
    let norm_scale = h.iter().map(|x| abs1(*x)).fold(0.0, f64::max).max(small);

    let mut hi = n - 1;
    let mut iter_since_deflation = 0usize;
    let mut total_iter = 0usize;
    let max_total = MAX_SWEEPS_PER_EIGENVALUE * n.max(1) * 2;

    while hi > 0 {
        // Locate the active unreduced block [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let sub = abs1(h[(lo, lo - 1)]);
            let mut diag = abs1(h[(lo - 1, lo - 1)]) + abs1(h[(lo, lo)]);
            if diag == 0.0 {
                diag = norm_scale;
            }
            if sub <= eps * diag || sub <= small {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter_since_deflation = 0;
            continue;
        }

        total_iter += 1;
        iter_since_deflation += 1;
        if total_iter > max_total {
            return Err(Error::NoConvergence("complex Schur QR iteration"));
        }

        let mu = if iter_since_deflation.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + c(0.75 * abs1(h[(hi, hi - 1)]), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        // Implicit single-shift QR sweep with bulge chasing.
        for k in lo..hi {
            let (x, y) = if k == lo {
                (h[(lo, lo)] - mu, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let g = Givens::new(x, y);
            let first_col = if k == lo { lo } else { k - 1 };
            g.rotate_rows(&mut h, k, first_col..n);
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
            let last_row = (k + 2).min(hi);
            g.rotate_cols(&mut h, k, 0..last_row + 1);
            g.rotate_cols(&mut z, k, 0..n);
        }
    }

    // Clean the strictly lower part.
    for j in 0..n {
        for i in j + 1..n {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { z, t: h })
}

/// Eigenvectors of `Z·T·Z†` from back-substitution on `T`, unit 2-norm.
pub(crate) fn eigenvectors(s: &Schur) -> Vec<ComplexVector> {
    let n = s.t.nrows();
    let t = &s.t;
    let tnorm = t.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE * 1e10);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut x = vec![ZERO; n];
        x[k] = ONE;
        for i in (0..k).rev() {
            let rhs: C64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
            let mut d = t[(i, i)] - lambda;
            if d.norm() < smin {
                d = c(smin, 0.0);
            }
            x[i] = -rhs / d;
            let big = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if big > 1e150 {
                x.iter_mut().for_each(|v| *v /= big);
            }
        }
        let xv = ComplexVector::from_vec(x);
        let mut v = &s.z * xv;
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            v /= c(nrm, 0.0);
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius_norm;

    fn pseudo_random(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    fn check(a: &ComplexMatrix) {
        let s = schur(a).unwrap();
        let n = a.nrows();
        let recon = &s.z * &s.t * s.z.adjoint();
        let scale = frobenius_norm(a).max(1.0);
        assert!(frobenius_norm(&(recon - a)) < 1e-12 * scale * n as f64);
        let unit = s.z.adjoint() * &s.z - identity(n);
        assert!(frobenius_norm(&unit) < 1e-12 * n as f64);
        for j in 0..n {
            for i in j + 1..n {
                assert_eq!(s.t[(i, j)], ZERO);
            }
        }
    }

    #[test]
    fn random_matrices_decompose() {
        for (n, seed) in [(1, 1), (2, 2), (3, 3), (8, 4), (16, 5), (33, 6)] {
            check(&pseudo_random(n, seed));
        }
    }

    #[test]
    fn defective_and_degenerate_inputs() {
        let jordan =
            ComplexMatrix::from_row_slice(2, 2, &[ZERO, c(1.5, 0.0), c(1.5, 0.0), c(0.0, -3.0)]);
        check(&jordan);
        check(&identity(5));
        check(&ComplexMatrix::zeros(4, 4));
        let mut shift = ComplexMatrix::zeros(6, 6);
        for i in 0..5 {
            shift[(i, i + 1)] = ONE;
        }
        shift[(5, 0)] = ONE;
        check(&shift);
    }

    #[test]
    fn eigenvectors_have_small_residual() {
        let a = pseudo_random(12, 9);
        let s = schur(&a).unwrap();
        for (k, v) in eigenvectors(&s).iter().enumerate() {
            let r = &a * v - v * s.t[(k, k)];
            assert!(r.norm() < 1e-12, "residual {}", r.norm());
        }
    }
}
