// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::SVD;

use super::schur::{eigenvectors, schur, Schur};
use crate::error::{Error, Result};
use crate::linalg::{
    c, frobenius_norm, null_space, singular_values, ComplexMatrix, ComplexVector, C64, ONE, ZERO,
};

/// Above this eigenvector condition number a decomposition is flagged
/// defective-adjacent.
pub const DEFECTIVE_CONDITION: f64 = 1e12;

/// Modal propagation and biorthonormality are only guaranteed below this.
pub const MODAL_CONDITION_LIMIT: f64 = 1e8;

/// Relative level (times `max(1, ‖H‖_F)`) of the pseudospectrum used to decide
/// that computed eigenvalues belong to one numerically coalesced group.
pub const COALESCENCE_TOL: f64 = 1e-11;

/// Relative singular-value cut-off for eigenvectors of a coalesced group.
const NULL_SPACE_TOL: f64 = 1e-9;

/// Pairs farther apart than this (relative) are never tested for coalescence.
const CANDIDATE_RADIUS: f64 = 1e-2;

const INVERSE_ITERATIONS: usize = 8;

/// Eigenvalues of a (generally non-Hermitian) matrix with right eigenvectors
/// and biorthonormal left covectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<C64>,
    /// Column `m` is the unit-norm right eigenvector `|φ_m⟩`.
    right: ComplexMatrix,
    /// Row `m` is the covector `⟨φ̃_m|`, scaled so that `left · right = I`.
    left: ComplexMatrix,
    condition_number: f64,
    residual: f64,
    matrix_norm: f64,
    defective: bool,
    coalesced: Vec<Vec<usize>>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Right eigenvectors as columns.
    pub fn right_vectors(&self) -> &ComplexMatrix {
        &self.right
    }

    pub fn right_vector(&self, m: usize) -> ComplexVector {
        self.right.column(m).into_owned()
    }

    /// Left covectors as rows; `⟨φ̃_m|x⟩ = Σ_i left[(m, i)]·x_i`.
    pub fn left_covectors(&self) -> &ComplexMatrix {
        &self.left
    }

    /// 2-norm condition number of the right-eigenvector matrix (∞ when singular).
    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    /// `max_m ‖H φ_m − E_m φ_m‖`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Frobenius norm of the decomposed matrix.
    pub fn matrix_norm(&self) -> f64 {
        self.matrix_norm
    }

    /// Set when `condition_number > DEFECTIVE_CONDITION`; left covectors are
    /// then only a pseudo-inverse and need not be biorthonormal.
    pub fn is_defective_adjacent(&self) -> bool {
        self.defective
    }

    /// Index groups whose computed eigenvalues were merged to their mean.
    pub fn coalesced_groups(&self) -> &[Vec<usize>] {
        &self.coalesced
    }

    /// `max_{m,k} |⟨φ̃_m|φ_k⟩ − δ_mk|`.
    pub fn biorthonormality_error(&self) -> f64 {
        let p = &self.left * &self.right;
        let mut worst: f64 = 0.0;
        for m in 0..p.nrows() {
            for k in 0..p.ncols() {
                let target = if m == k { ONE } else { ZERO };
                worst = worst.max((p[(m, k)] - target).norm());
            }
        }
        worst
    }
}

/// Estimates `σ_min(T − zI)` for upper-triangular `T` by inverse iteration on
/// `(T − zI)†(T − zI)`.
fn min_singular_triangular(t: &ComplexMatrix, z: C64) -> f64 {
    let n = t.nrows();
    if n == 0 {
        return 0.0;
    }
    let diag_shift = |i: usize| t[(i, i)] - z;
    if (0..n).any(|i| diag_shift(i) == ZERO) {
        return 0.0;
    }
    // Deterministic start vector with no special alignment.
    let mut x: Vec<C64> = (0..n)
        .map(|i| c(1.0 + 0.37 * i as f64, 0.11 * ((i * 7) % 5) as f64))
        .collect();
    let mut estimate = f64::INFINITY;
    for _ in 0..INVERSE_ITERATIONS {
        let xn = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= xn);
        // w = (T − z)^{-1} x, back substitution.
        let mut w = vec![ZERO; n];
        for i in (0..n).rev() {
            let s: C64 = (i + 1..n).map(|j| t[(i, j)] * w[j]).sum();
            w[i] = (x[i] - s) / diag_shift(i);
        }
        // y = (T − z)^{-†} w, forward substitution with the adjoint.
        let mut y = vec![ZERO; n];
        for i in 0..n {
            let s: C64 = (0..i).map(|j| t[(j, i)].conj() * y[j]).sum();
            y[i] = (w[i] - s) / diag_shift(i).conj();
        }
        let yn = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if !yn.is_finite() || yn == 0.0 {
            return 0.0;
        }
        estimate = 1.0 / yn.sqrt();
        x = y;
    }
    estimate
}

struct DisjointSet(Vec<usize>);

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut k = i;
        while self.0[k] != r {
            let next = self.0[k];
            self.0[k] = r;
            k = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Groups computed eigenvalues that cannot be told apart at the working
/// pseudospectral level: a pair is linked when the midpoint between them lies
/// in the ε-pseudospectrum of `T`.
fn coalescence_candidates(s: &Schur, eigenvalues: &[C64], scale: f64) -> Vec<Vec<usize>> {
    let n = eigenvalues.len();
    let level = COALESCENCE_TOL * scale;
    let radius = CANDIDATE_RADIUS * scale;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigenvalues[a].re.total_cmp(&eigenvalues[b].re));
    let mut sets = DisjointSet::new(n);
    for (pos, &a) in order.iter().enumerate() {
        for &b in &order[pos + 1..] {
            if eigenvalues[b].re - eigenvalues[a].re > radius {
                break;
            }
            if (eigenvalues[a] - eigenvalues[b]).norm() > radius {
                continue;
            }
            if sets.find(a) == sets.find(b) {
                continue;
            }
            let mid = (eigenvalues[a] + eigenvalues[b]) * 0.5;
            if min_singular_triangular(&s.t, mid) <= level {
                sets.union(a, b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = sets.find(i);
        groups[r].push(i);
    }
    groups.into_iter().filter(|g| g.len() >= 2).collect()
}

/// Full eigendecomposition of a square complex matrix.
///
/// Eigenvalues come from a complex Schur form. Groups of computed eigenvalues
/// that are coalesced at the level `COALESCENCE_TOL·max(1, ‖H‖_F)` (for
/// example the scatter produced by a Jordan block) are replaced by their mean,
/// which is well conditioned, and their eigenvectors are taken from the
/// numerical null space of `H − mean·I`. A group with fewer independent
/// eigenvectors than members repeats vectors, which makes the eigenvector
/// matrix singular and sets the defective-adjacent flag.
pub fn eigendecompose(h: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.ncols(),
        });
    }
    if n == 0 {
        return Err(Error::invalid("matrix", "must be non-empty"));
    }
    let s = schur(h)?;
    let mut eigenvalues: Vec<C64> = (0..n).map(|k| s.t[(k, k)]).collect();
    let mut vectors = eigenvectors(&s);
    let matrix_norm = frobenius_norm(h);
    let scale = matrix_norm.max(1.0);

    let mut coalesced = Vec::new();
    for group in coalescence_candidates(&s, &eigenvalues, scale) {
        let mean = group.iter().map(|&i| eigenvalues[i]).sum::<C64>() / c(group.len() as f64, 0.0);
        let mut shifted = h.clone();
        for k in 0..n {
            shifted[(k, k)] -= mean;
        }
        let (values, null) = null_space(&shifted, NULL_SPACE_TOL * scale)?;
        if values.is_empty() || values[0] > COALESCENCE_TOL * scale {
            continue;
        }
        let g = null.len().min(group.len());
        for (slot, &idx) in group.iter().enumerate() {
            eigenvalues[idx] = mean;
            vectors[idx] = null[slot % g].clone();
        }
        coalesced.push(group);
    }

    let right = ComplexMatrix::from_columns(&vectors);
    let sv = singular_values(&right)?;
    let smax = sv.first().copied().unwrap_or(0.0);
    let smin = sv.last().copied().unwrap_or(0.0);
    let condition_number = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    let defective = !(condition_number <= DEFECTIVE_CONDITION);

    let left = if defective {
        SVD::try_new(right.clone(), true, true, f64::EPSILON, 10_000)
            .ok_or(Error::NoConvergence("singular value decomposition"))?
            .pseudo_inverse(f64::EPSILON * smax * n as f64)
            .map_err(|e| Error::Numerical(e.to_string()))?
    } else {
        right
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numerical("eigenvector matrix is singular".into()))?
    };

    let residual = (0..n)
        .map(|m| {
            let v = right.column(m);
            (h * v - v * eigenvalues[m]).norm()
        })
        .fold(0.0, f64::max);

    Ok(SpectralDecomposition {
        eigenvalues,
        right,
        left,
        condition_number,
        residual,
        matrix_norm,
        defective,
        coalesced,
    })
}
