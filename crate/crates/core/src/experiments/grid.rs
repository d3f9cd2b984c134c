// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// `points` evenly spaced values from `start` to `stop` inclusive.
///
/// Values are computed as `start + (stop − start)·k/(points − 1)` so grid
/// points that should be exact (e.g. the midpoint) are.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..points)
            .map(|k| {
                if k + 1 == points {
                    stop
                } else {
                    start + (stop - start) * k as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

/// `points` log-spaced values from `start` to `stop` inclusive (both > 0).
pub fn logspace(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && stop > 0.0) {
        return Err(Error::invalid("grid", "log-spaced bounds must be positive"));
    }
    let mut v: Vec<f64> = linspace(start.log10(), stop.log10(), points)
        .into_iter()
        .map(|e| 10f64.powf(e))
        .collect();
    if let Some(first) = v.first_mut() {
        *first = start;
    }
    if points > 1 {
        if let Some(last) = v.last_mut() {
            *last = stop;
        }
    }
    Ok(v)
}

/// `[start, stop]` sampled with spacing at most `step`.
pub fn stepped(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite() && stop >= start) {
        return Err(Error::invalid("grid", "need step > 0 and stop ≥ start"));
    }
    let points = ((stop - start) / step - 1e-9).ceil().max(0.0) as usize + 1;
    Ok(linspace(start, stop, points))
}

/// Time and coupling axes of an entanglement map.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub times: Vec<f64>,
    pub couplings: Vec<f64>,
}

impl SweepGrid {
    pub fn new(times: Vec<f64>, couplings: Vec<f64>) -> Result<Self> {
        crate::spectral::validate_grid(&times)
            .map_err(|e| Error::invalid("times", e.to_string()))?;
        crate::spectral::validate_grid(&couplings)
            .map_err(|e| Error::invalid("couplings", e.to_string()))?;
        if times[0] < 0.0 {
            return Err(Error::invalid("times", "must be non-negative"));
        }
        Ok(SweepGrid { times, couplings })
    }

    /// 400 times over `[0, 6.5]` µs and 60 log-spaced couplings over
    /// `[1e-6, 1e-1]` rad/µs.
    pub fn default_map() -> Self {
        SweepGrid {
            times: linspace(0.0, 6.5, 400),
            couplings: logspace(1e-6, 1e-1, 60).expect("positive bounds"),
        }
    }

    pub fn cells(&self) -> usize {
        self.times.len() * self.couplings.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing() {
        assert_eq!(linspace(1.0, 2.0, 201)[100], 1.5);
        assert_eq!(linspace(0.0, 1.0, 1), vec![0.0]);
        let l = logspace(1e-6, 1e-1, 6).unwrap();
        assert_eq!(l[0], 1e-6);
        assert_eq!(l[5], 1e-1);
        assert!((l[3] - 1e-3).abs() < 1e-15);
        assert!(logspace(0.0, 1.0, 3).is_err());
        let s = stepped(0.0, 1.0, 0.25).unwrap();
        assert_eq!(s, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn grid_validation() {
        assert!(SweepGrid::new(vec![], vec![1.0]).is_err());
        assert!(SweepGrid::new(vec![-1.0, 0.0], vec![1.0]).is_err());
        assert!(SweepGrid::new(vec![0.0], vec![2.0, 1.0]).is_err());
        assert_eq!(SweepGrid::default_map().cells(), 24000);
    }
}
