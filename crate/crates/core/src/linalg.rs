// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear-algebra helpers shared by the other modules.

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex square matrix (row/column index = computational basis index).
pub type ComplexMatrix = DMatrix<C64>;

pub type ComplexVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

const SVD_MAX_ITER: usize = 10_000;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    ComplexMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum absolute column sum.
pub fn one_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn vector_norm(v: &ComplexVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩`, conjugating the first argument.
pub fn inner(a: &ComplexVector, b: &ComplexVector) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Singular values in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or(Error::NoConvergence("singular value decomposition"))?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Right singular vectors belonging to singular values `<= tol`, smallest first.
///
/// Returns the singular values that were accepted alongside the vectors.
pub fn null_space(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, Vec<ComplexVector>)> {
    let svd = SVD::try_new(m.clone(), false, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or(Error::NoConvergence("singular value decomposition"))?;
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or(Error::NoConvergence("singular value decomposition"))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let mut values = Vec::new();
    let mut vectors = Vec::new();
    for idx in order {
        let s = svd.singular_values[idx];
        if s > tol {
            break;
        }
        values.push(s);
        vectors.push(v_t.row(idx).transpose().map(|z| z.conj()));
    }
    Ok((values, vectors))
}

/// Smallest singular value of `m − z·I`.
pub fn shifted_min_singular_value(m: &ComplexMatrix, z: C64) -> Result<f64> {
    let mut shifted = m.clone();
    for k in 0..m.nrows() {
        shifted[(k, k)] -= z;
    }
    Ok(singular_values(&shifted)?.last().copied().unwrap_or(0.0))
}

/// Principal argument in `(−π, π]`.
pub fn principal_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    use std::f64::consts::PI;
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}
