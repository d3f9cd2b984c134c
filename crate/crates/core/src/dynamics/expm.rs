// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::linalg::{c, identity, is_finite, one_norm, ComplexMatrix};

/// Padé-13 coefficients and the 1-norm bound below which the approximant is
/// accurate to double precision without scaling.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// More squarings than this means the result cannot be finite anyway.
const MAX_SQUARINGS: i32 = 1000;

/// `exp(A)` by scaling and squaring with a degree-13 Padé approximant.
pub fn matrix_exponential(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.ncols(),
        });
    }
    if !is_finite(a) {
        return Err(Error::Numerical(
            "matrix exponential of non-finite matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(identity(0));
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    if squarings > MAX_SQUARINGS {
        return Err(Error::Numerical(format!(
            "matrix exponential overflow (1-norm {norm:.3e})"
        )));
    }
    let a = a * c(0.5f64.powi(squarings), 0.0);

    let b = |k: usize| c(PADE13[k], 0.0);
    let id = identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let mut r = (&v - &u)
        .lu()
        .solve(&(&v + &u))
        .ok_or_else(|| Error::Numerical("singular Padé denominator".into()))?;
    for _ in 0..squarings {
        r = &r * &r;
        if !is_finite(&r) {
            return Err(Error::Numerical("matrix exponential overflow".into()));
        }
    }
    if !is_finite(&r) {
        return Err(Error::Numerical("matrix exponential overflow".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_norm, I, ONE, ZERO};

    fn taylor(a: &ComplexMatrix, terms: usize) -> ComplexMatrix {
        let mut sum = identity(a.nrows());
        let mut term = identity(a.nrows());
        for k in 1..terms {
            term = &term * a / c(k as f64, 0.0);
            sum += &term;
        }
        sum
    }

    #[test]
    fn zero_gives_identity() {
        assert_eq!(
            matrix_exponential(&ComplexMatrix::zeros(3, 3)).unwrap(),
            identity(3)
        );
    }

    #[test]
    fn half_turn_rotation() {
        let sx = ComplexMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let e = matrix_exponential(&(&sx * (-I * std::f64::consts::FRAC_PI_2))).unwrap();
        let expected = &sx * (-I);
        assert!(frobenius_norm(&(e - expected)) < 1e-14);
    }

    #[test]
    fn matches_taylor_series_for_single_qubit_ep() {
        let h =
            ComplexMatrix::from_row_slice(2, 2, &[ZERO, c(1.5, 0.0), c(1.5, 0.0), c(0.0, -3.0)]);
        let a = &h * (-I);
        let e = matrix_exponential(&a).unwrap();
        let t = taylor(&a, 40);
        assert!(frobenius_norm(&(&e - &t)) <= 1e-10 * frobenius_norm(&t));
    }

    #[test]
    fn scaled_input_matches_diagonal() {
        let d = ComplexMatrix::from_diagonal(&crate::linalg::ComplexVector::from_vec(vec![
            c(-20.0, 3.0),
            c(1.0, -40.0),
        ]));
        let e = matrix_exponential(&d).unwrap();
        assert!((e[(0, 0)] - c(-20.0, 3.0).exp()).norm() <= 1e-12 * c(-20.0, 3.0).exp().norm());
        assert!((e[(1, 1)] - c(1.0, -40.0).exp()).norm() <= 1e-11 * c(1.0, -40.0).exp().norm());
    }

    #[test]
    fn overflow_is_reported() {
        let big = ComplexMatrix::from_diagonal_element(2, 2, c(1e6, 0.0));
        assert!(matrix_exponential(&big).unwrap_err().is_numerical());
    }
}
