// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use super::decomposition::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{c, singular_values, ComplexMatrix, C64};

/// Clustering and eigenvector-rank tolerances for exceptional-point detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpTolerances {
    /// Complete-linkage eigenvalue distance, relative to `max(1, ‖H‖_F)`.
    pub eig_tol: f64,
    /// Singular values of stacked unit eigenvectors above this count as rank.
    pub vec_tol: f64,
}

impl Default for EpTolerances {
    fn default() -> Self {
        EpTolerances {
            eig_tol: 1e-6,
            vec_tol: 1e-3,
        }
    }
}

impl EpTolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("eig_tol", self.eig_tol), ("vec_tol", self.vec_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, "must be positive and finite"));
            }
        }
        Ok(())
    }
}

/// A group of coalesced eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EpCluster {
    pub center: C64,
    /// Indices into the decomposition's eigenvalue list, ascending.
    pub members: Vec<usize>,
    pub algebraic_multiplicity: usize,
    pub geometric_rank: usize,
    pub order_estimate: usize,
}

impl EpCluster {
    /// True when the eigenvectors coalesce as well as the eigenvalues.
    pub fn is_exceptional(&self) -> bool {
        self.geometric_rank < self.algebraic_multiplicity
    }
}

fn complete_distance(ev: &[C64], a: &[usize], b: &[usize]) -> f64 {
    a.iter()
        .flat_map(|&i| b.iter().map(move |&j| (ev[i] - ev[j]).norm()))
        .fold(0.0, f64::max)
}

/// Complete-linkage clusters (size ≥ 2) of eigenvalues with absolute
/// threshold `threshold`.
pub fn eigenvalue_clusters(eigenvalues: &[C64], threshold: f64) -> Vec<Vec<usize>> {
    let n = eigenvalues.len();
    // Single-linkage components first; complete linkage can only split them.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigenvalues[a].re.total_cmp(&eigenvalues[b].re));
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for &j in &order {
                if component[j] == usize::MAX
                    && (eigenvalues[i] - eigenvalues[j]).norm() <= threshold
                {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        components.push(members);
    }

    let mut out = Vec::new();
    for members in components.into_iter().filter(|m| m.len() >= 2) {
        let mut clusters: Vec<Vec<usize>> = members.into_iter().map(|i| vec![i]).collect();
        loop {
            let mut best: Option<(f64, usize, usize)> = None;
            for a in 0..clusters.len() {
                for b in a + 1..clusters.len() {
                    let d = complete_distance(eigenvalues, &clusters[a], &clusters[b]);
                    if d <= threshold && best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, a, b));
                    }
                }
            }
            match best {
                Some((_, a, b)) => {
                    let merged = clusters.swap_remove(b);
                    clusters[a].extend(merged);
                }
                None => break,
            }
        }
        out.extend(clusters.into_iter().filter(|cl| cl.len() >= 2));
    }
    for cl in &mut out {
        cl.sort_unstable();
    }
    out
}

/// Every eigenvalue cluster of size ≥ 2 with its geometric rank, ordered by
/// the real then imaginary part of its center.
pub fn eigenvalue_groups(
    decomp: &SpectralDecomposition,
    tol: EpTolerances,
) -> Result<Vec<EpCluster>> {
    tol.validate()?;
    let ev = decomp.eigenvalues();
    let threshold = tol.eig_tol * decomp.matrix_norm().max(1.0);
    let mut out = Vec::new();
    for members in eigenvalue_clusters(ev, threshold) {
        let k = members.len();
        let center = members.iter().map(|&i| ev[i]).sum::<C64>() / c(k as f64, 0.0);
        let stacked = ComplexMatrix::from_columns(
            &members
                .iter()
                .map(|&i| decomp.right_vector(i))
                .collect::<Vec<_>>(),
        );
        let rank = singular_values(&stacked)?
            .iter()
            .filter(|&&s| s > tol.vec_tol)
            .count()
            .max(1);
        out.push(EpCluster {
            center,
            members,
            algebraic_multiplicity: k,
            geometric_rank: rank,
            order_estimate: k,
        });
    }
    out.sort_by(|a, b| {
        a.center
            .re
            .total_cmp(&b.center.re)
            .then(a.center.im.total_cmp(&b.center.im))
    });
    Ok(out)
}

/// Exceptional points of a decomposition: eigenvalue clusters whose member
/// eigenvectors span fewer dimensions than the cluster size.
///
/// Diagonalizable degeneracies (full geometric rank) are not reported.
pub fn detect_eps(decomp: &SpectralDecomposition, tol: EpTolerances) -> Result<Vec<EpCluster>> {
    Ok(eigenvalue_groups(decomp, tol)?
        .into_iter()
        .filter(EpCluster::is_exceptional)
        .collect())
}

/// Smallest sine of the angle between any two right eigenvectors; zero when
/// two eigenvectors coincide, one for an orthonormal eigenbasis.
pub fn eigenvector_coalescence(decomp: &SpectralDecomposition) -> f64 {
    let v = decomp.right_vectors();
    let n = v.ncols();
    let mut worst: f64 = 1.0;
    for a in 0..n {
        let va = v.column(a);
        for b in a + 1..n {
            let vb = v.column(b);
            let overlap = va.dotc(&vb);
            let perp = vb - va * overlap;
            worst = worst.min(perp.norm().min(1.0));
        }
    }
    worst
}
