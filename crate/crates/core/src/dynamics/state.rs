// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::hamiltonian::MAX_QUBITS;
use crate::linalg::{c, inner, principal_arg, vector_norm, ComplexVector, C64, I, ONE, ZERO};

/// Unit-norm pure state of `n` qubits in standard tensor-product order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n: usize,
    amplitudes: ComplexVector,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::invalid("n", format!("must lie in 1..={MAX_QUBITS}")));
    }
    Ok(())
}

impl QuantumState {
    /// Normalizes `amplitudes` (length `2^n`).
    pub fn new(n: usize, amplitudes: ComplexVector) -> Result<Self> {
        check_qubits(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        let norm = vector_norm(&amplitudes);
        if !norm.is_finite() {
            return Err(Error::Numerical("state has non-finite amplitudes".into()));
        }
        if norm == 0.0 {
            return Err(Error::invalid(
                "amplitudes",
                "zero vector cannot be normalized",
            ));
        }
        Ok(QuantumState {
            n,
            amplitudes: amplitudes / c(norm, 0.0),
        })
    }

    /// Basis state with the given standard index.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::invalid(
                "index",
                format!("basis index {index} exceeds 2^{n} − 1"),
            ));
        }
        let mut v = ComplexVector::zeros(1 << n);
        v[index] = ONE;
        Self::new(n, v)
    }

    /// `(|f…f⟩ + e^{iθ}|e…e⟩)/√2`.
    pub fn ghz(n: usize, theta: f64) -> Result<Self> {
        check_qubits(n)?;
        let mut v = ComplexVector::zeros(1 << n);
        v[0] = ONE;
        v[(1 << n) - 1] += C64::from_polar(1.0, theta);
        Self::new(n, v)
    }

    /// Equal superposition of all single-excitation basis states.
    pub fn w(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut v = ComplexVector::zeros(1 << n);
        for q in 0..n {
            v[1 << q] = ONE;
        }
        Self::new(n, v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &QuantumState) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(inner(&self.amplitudes, &other.amplitudes).norm().min(1.0))
    }
}

/// Kind of initial state.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    /// `2^{-n/2}(|f⟩ − i|e⟩)^{⊗n}`.
    Coherent,
    /// `|f…f⟩`.
    AllF,
    /// Arbitrary amplitudes in standard order, normalized on construction.
    Custom { amplitudes: Vec<C64> },
}

pub fn initial_state(kind: &InitialState, n: usize) -> Result<QuantumState> {
    check_qubits(n)?;
    match kind {
        InitialState::Coherent => {
            let scale = 0.5f64.powf(n as f64 / 2.0);
            let phases = [ONE, -I, c(-1.0, 0.0), I];
            let v = ComplexVector::from_fn(1 << n, |idx, _| {
                phases[idx.count_ones() as usize % 4] * scale
            });
            QuantumState::new(n, v)
        }
        InitialState::AllF => QuantumState::basis(n, 0),
        InitialState::Custom { amplitudes } => {
            QuantumState::new(n, ComplexVector::from_vec(amplitudes.clone()))
        }
    }
}

/// Basis label with qubit 0 first, e.g. `"ffe"` for standard index 1, n = 3.
pub fn basis_label(n: usize, index: usize) -> String {
    (0..n)
        .map(|q| {
            if index >> (n - 1 - q) & 1 == 1 {
                'e'
            } else {
                'f'
            }
        })
        .collect()
}

/// Reporting order of the computational basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrdering {
    n: usize,
    /// Position in reporting order → standard index.
    order: Vec<usize>,
}

impl BasisOrdering {
    /// Binary order `0, 1, …, 2^n − 1`.
    pub fn standard(n: usize) -> Self {
        BasisOrdering {
            n,
            order: (0..1 << n).collect(),
        }
    }

    /// Grouped by excitation number, standard order within a group; for
    /// n = 3 this is `fff, ffe, fef, eff, fee, efe, eef, eee`.
    pub fn excitation_grouped(n: usize) -> Self {
        let mut order: Vec<usize> = (0..1 << n).collect();
        order.sort_by_key(|&i| (i.count_ones(), i));
        BasisOrdering { n, order }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Standard indices in reporting order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Reporting position of a standard index.
    pub fn position(&self, standard: usize) -> Option<usize> {
        self.order.iter().position(|&i| i == standard)
    }

    pub fn labels(&self) -> Vec<String> {
        self.order.iter().map(|&i| basis_label(self.n, i)).collect()
    }
}

/// Modulus and principal argument of one basis amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudePhase {
    pub label: String,
    pub modulus: f64,
    /// In `(−π, π]`.
    pub phase: f64,
}

/// `(|α_m|, Arg α_m)` in the given ordering, without any global-phase gauge.
pub fn amplitudes_and_phases(
    state: &QuantumState,
    ordering: &BasisOrdering,
) -> Result<Vec<AmplitudePhase>> {
    if ordering.n() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: state.n(),
            found: ordering.n(),
        });
    }
    Ok(ordering
        .order()
        .iter()
        .map(|&i| {
            let a = state.amplitudes()[i];
            AmplitudePhase {
                label: basis_label(state.n(), i),
                modulus: a.norm(),
                phase: if a == ZERO { 0.0 } else { principal_arg(a) },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn coherent_amplitudes() {
        let s = initial_state(&InitialState::Coherent, 3).unwrap();
        let ap = amplitudes_and_phases(&s, &BasisOrdering::excitation_grouped(3)).unwrap();
        for a in &ap {
            assert!((a.modulus - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        }
        assert_eq!(ap[0].phase, 0.0);
        assert!((ap[1].phase + FRAC_PI_2).abs() < 1e-15);
        assert!((ap[4].phase - PI).abs() < 1e-15);
        assert!((ap[7].phase - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn grouped_order_for_three_qubits() {
        let o = BasisOrdering::excitation_grouped(3);
        assert_eq!(
            o.labels(),
            ["fff", "ffe", "fef", "eff", "fee", "efe", "eef", "eee"]
        );
        assert_eq!(o.order(), [0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn simple_initial_states() {
        let s = initial_state(&InitialState::AllF, 4).unwrap();
        assert_eq!(s.amplitudes()[0], ONE);
        let s = initial_state(
            &InitialState::Custom {
                amplitudes: vec![ONE, ONE],
            },
            1,
        )
        .unwrap();
        assert!((s.amplitudes()[1].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(initial_state(
            &InitialState::Custom {
                amplitudes: vec![ZERO, ZERO]
            },
            1
        )
        .is_err());
        assert!(initial_state(
            &InitialState::Custom {
                amplitudes: vec![ONE]
            },
            1
        )
        .is_err());
    }

    #[test]
    fn ghz_overlaps() {
        let g = QuantumState::ghz(3, -FRAC_PI_2).unwrap();
        let f = QuantumState::basis(3, 0).unwrap();
        assert!((g.fidelity(&f).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((g.fidelity(&g).unwrap() - 1.0).abs() < 1e-15);
        assert!(g.fidelity(&QuantumState::basis(2, 0).unwrap()).is_err());
    }
}
