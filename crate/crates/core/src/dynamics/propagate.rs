// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use super::expm::matrix_exponential;
use super::state::{amplitudes_and_phases, BasisOrdering, QuantumState};
use crate::error::{Error, Result};
use crate::linalg::{c, one_norm, vector_norm, ComplexMatrix, ComplexVector, C64, I};
use crate::spectral::{eigendecompose, SpectralDecomposition, MODAL_CONDITION_LIMIT};
use crate::table::{Cell, Table};

/// Propagator for a fixed Hamiltonian.
///
/// `exp(−iHt)` decays as `exp(α t)` where `α = max_m Im E_m` is the spectral
/// abscissa; `α t` is removed from the exponent and restored in log space for
/// the pre-normalization norm, so neither overflow nor underflow occurs.
///
/// Near an exceptional point `‖exp(−iHt)‖` can exceed `‖exp(−iHt)ψ₀‖` by many
/// orders of magnitude, and a single matrix exponential then loses the state
/// to rounding. The time is therefore split into equal substeps with
/// `‖(H − iαI)Δt‖₁ ≤ 1/2`; one exponential is applied repeatedly and the
/// vector is renormalized after every step.
///
/// When `H` commutes with qubit permutations, states in the symmetric (Dicke)
/// subspace are propagated with the `(n+1)`-dimensional restriction of `H`.
/// This is exact for the true dynamics, and it keeps rounding noise from
/// breaking the permutation symmetry near exceptional points, where such
/// noise is strongly amplified.
#[derive(Debug, Clone)]
pub struct Propagator {
    h: ComplexMatrix,
    abscissa: f64,
    symmetric: Option<Restriction>,
}

#[derive(Debug, Clone)]
struct Restriction {
    basis: ComplexMatrix,
    h: ComplexMatrix,
    abscissa: f64,
}

const SUBSPACE_TOL: f64 = 1e-13;

fn spectral_abscissa(h: &ComplexMatrix) -> Result<f64> {
    Ok(eigendecompose(h)?
        .eigenvalues()
        .iter()
        .map(|e| e.im)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Orthonormal Dicke basis: column `k` is the normalized uniform
/// superposition of all basis states with `k` excited qubits.
pub fn dicke_basis(n: usize) -> ComplexMatrix {
    let dim = 1usize << n;
    let mut counts = vec![0usize; n + 1];
    for x in 0..dim {
        counts[x.count_ones() as usize] += 1;
    }
    ComplexMatrix::from_fn(dim, n + 1, |x, k| {
        if x.count_ones() as usize == k {
            c(1.0 / (counts[k] as f64).sqrt(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

impl Restriction {
    fn detect(h: &ComplexMatrix) -> Result<Option<Self>> {
        let dim = h.nrows();
        if dim < 4 || !dim.is_power_of_two() {
            return Ok(None);
        }
        let basis = dicke_basis(dim.trailing_zeros() as usize);
        let hv = h * &basis;
        let reduced = basis.adjoint() * &hv;
        let leak = (hv - &basis * &reduced).norm();
        if !(leak <= SUBSPACE_TOL * h.norm().max(1.0)) {
            return Ok(None);
        }
        let abscissa = spectral_abscissa(&reduced)?;
        Ok(Some(Restriction {
            basis,
            h: reduced,
            abscissa,
        }))
    }

    fn coordinates(&self, psi: &ComplexVector) -> Option<ComplexVector> {
        let coords = self.basis.adjoint() * psi;
        let leak = vector_norm(&(psi - &self.basis * &coords));
        (leak <= SUBSPACE_TOL * vector_norm(psi)).then_some(coords)
    }
}

const STEP_NORM: f64 = 0.5;
const MAX_STEPS: f64 = 1e8;

/// `exp(−i(H − iαI)t)ψ` normalized, and the log of its norm.
fn stepped_evolution(
    h: &ComplexMatrix,
    abscissa: f64,
    psi: &ComplexVector,
    t: f64,
) -> Result<(ComplexVector, f64)> {
    let mut shifted = h.clone();
    for k in 0..shifted.nrows() {
        shifted[(k, k)] -= I * abscissa;
    }
    let steps = (one_norm(&shifted) * t / STEP_NORM).ceil().max(1.0);
    if !(steps <= MAX_STEPS) {
        return Err(Error::Numerical(format!(
            "t = {t} needs {steps} propagation steps"
        )));
    }
    let u = matrix_exponential(&(shifted * (-I * (t / steps))))?;
    let mut v = psi.clone();
    let mut log_norm = 0.0;
    for _ in 0..steps as usize {
        v = &u * v;
        let norm = vector_norm(&v);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Numerical(format!(
                "propagated norm is {norm} at t = {t}"
            )));
        }
        v.unscale_mut(norm);
        log_norm += norm.ln();
    }
    Ok((v, log_norm))
}

impl Propagator {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        Ok(Propagator {
            h: h.clone(),
            abscissa: spectral_abscissa(h)?,
            symmetric: Restriction::detect(h)?,
        })
    }

    /// Whether permutation-symmetric states use the reduced propagator.
    pub fn is_permutation_symmetric(&self) -> bool {
        self.symmetric.is_some()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.h
    }

    /// Normalized `exp(−iHt)ψ₀` and the norm `‖exp(−iHt)ψ₀‖`.
    pub fn propagate(&self, psi0: &QuantumState, t: f64) -> Result<(QuantumState, f64)> {
        if psi0.dim() != self.h.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.h.nrows(),
                found: psi0.dim(),
            });
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::invalid("t", "time must be finite and non-negative"));
        }
        if t == 0.0 {
            return Ok((psi0.clone(), 1.0));
        }
        let reduced = self
            .symmetric
            .as_ref()
            .and_then(|r| r.coordinates(psi0.amplitudes()).map(|coords| (r, coords)));
        let (phi, log_norm, abscissa) = match reduced {
            Some((r, coords)) => {
                let (v, l) = stepped_evolution(&r.h, r.abscissa, &coords, t)?;
                (&r.basis * v, l, r.abscissa)
            }
            None => {
                let (v, l) = stepped_evolution(&self.h, self.abscissa, psi0.amplitudes(), t)?;
                (v, l, self.abscissa)
            }
        };
        let prenorm = (log_norm + abscissa * t).exp();
        Ok((QuantumState::new(psi0.n(), phi)?, prenorm))
    }

    /// Independent propagation to each time, evaluated in parallel.
    pub fn series(&self, psi0: &QuantumState, times: &[f64]) -> Result<Trajectory> {
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("times", "must be strictly increasing"));
        }
        let results: Vec<(QuantumState, f64)> = times
            .par_iter()
            .map(|&t| self.propagate(psi0, t))
            .collect::<Result<_>>()?;
        let (states, prenorms) = results.into_iter().unzip();
        Ok(Trajectory {
            times: times.to_vec(),
            states,
            prenorms,
        })
    }
}

/// Normalized non-unitary evolution `exp(−iHt)ψ₀ / ‖exp(−iHt)ψ₀‖`.
///
/// Returns the state and the pre-normalization norm. Uses the matrix
/// exponential, so it is valid at and near exceptional points.
pub fn propagate(h: &ComplexMatrix, psi0: &QuantumState, t: f64) -> Result<(QuantumState, f64)> {
    Propagator::new(h)?.propagate(psi0, t)
}

/// [`propagate`] at every time of an increasing grid.
pub fn propagate_series(
    h: &ComplexMatrix,
    psi0: &QuantumState,
    times: &[f64],
) -> Result<Trajectory> {
    Propagator::new(h)?.series(psi0, times)
}

/// Biorthogonal expansion `Σ_m ⟨φ̃_m|ψ₀⟩ e^{−iE_m t} |φ_m⟩`, normalized.
///
/// Refuses decompositions whose eigenvector condition number exceeds
/// [`MODAL_CONDITION_LIMIT`].
pub fn modal_propagate(
    decomp: &SpectralDecomposition,
    psi0: &QuantumState,
    t: f64,
) -> Result<QuantumState> {
    if decomp.is_defective_adjacent() || !(decomp.condition_number() <= MODAL_CONDITION_LIMIT) {
        return Err(Error::DefectiveAdjacent {
            condition: decomp.condition_number(),
        });
    }
    if psi0.dim() != decomp.dim() {
        return Err(Error::DimensionMismatch {
            expected: decomp.dim(),
            found: psi0.dim(),
        });
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", "time must be finite and non-negative"));
    }
    let abscissa = decomp
        .eigenvalues()
        .iter()
        .map(|e| e.im)
        .fold(f64::NEG_INFINITY, f64::max);
    let coeffs = decomp.left_covectors() * psi0.amplitudes();
    let evolved = ComplexVector::from_fn(decomp.dim(), |m, _| {
        let e = decomp.eigenvalues()[m];
        coeffs[m] * (-I * (e - I * abscissa) * t).exp()
    });
    QuantumState::new(psi0.n(), decomp.right_vectors() * evolved)
}

/// States along a time grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
    /// `‖exp(−iHt)ψ₀‖` before normalization.
    pub prenorms: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Columns `time, prenorm, abs_<label>, arg_<label>, …` in `ordering`.
    pub fn to_table(&self, ordering: &BasisOrdering) -> Result<Table> {
        let mut header = vec!["time".to_string(), "prenorm".to_string()];
        for label in ordering.labels() {
            header.push(format!("abs_{label}"));
            header.push(format!("arg_{label}"));
        }
        let mut table = Table::new(header);
        for ((t, s), p) in self.times.iter().zip(&self.states).zip(&self.prenorms) {
            let mut row: Vec<Cell> = vec![(*t).into(), (*p).into()];
            for ap in amplitudes_and_phases(s, ordering)? {
                row.push(ap.modulus.into());
                row.push(ap.phase.into());
            }
            table.push(row);
        }
        Ok(table)
    }
}

/// Direction distance `‖a − b‖` after removing the relative global phase.
pub fn phase_aligned_distance(a: &QuantumState, b: &QuantumState) -> f64 {
    let overlap: C64 = a.amplitudes().dotc(b.amplitudes());
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        c(1.0, 0.0)
    };
    vector_norm(&(a.amplitudes() * phase - b.amplitudes()))
}
