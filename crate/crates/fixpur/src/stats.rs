//! Small statistical helpers used by tests, experiments and the CLI.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// One-sample Kolmogorov–Smirnov distance `sup |F_n − F|`.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs: Vec<f64> = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic critical KS distance at level `alpha` for `n` samples:
/// `√(−ln(α/2)/2)/√n`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Asymptotic p-value of a one-sample KS distance `d` with `n` samples
/// (Kolmogorov distribution with the Stephens small-sample correction).
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=200 {
        let jf = j as f64;
        let term = 2.0 * (-1f64).powi(j - 1) * (-2.0 * jf * jf * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Pearson χ² statistic and its p-value for observed counts against
/// expected probabilities.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> Result<(f64, f64)> {
    if observed.len() != probs.len() || observed.len() < 2 {
        return Err(Error::Domain("chi-square needs matching bins (>= 2)".into()));
    }
    let total: u64 = observed.iter().sum();
    let t = total as f64;
    let stat: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * t;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).map_err(|e| Error::Numerical(e.to_string()))?;
    Ok((stat, 1.0 - dist.cdf(stat)))
}

/// Sample mean and unbiased variance.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (m, v)
}

/// Fixed-width histogram with inclusive-left bins `[e_i, e_{i+1})`; the
/// last bin is closed on the right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// Bin edges (`bins + 1` values).
    pub edges: Vec<f64>,
    /// Counts per bin.
    pub counts: Vec<u64>,
    /// Values outside `[edges[0], edges[last]]`.
    pub outside: u64,
}

impl Histogram {
    /// Empty histogram on `[lo, hi]` with `bins` equal bins.
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 || !(hi > lo) {
            return Err(Error::Domain(format!("bad histogram range [{lo}, {hi}] x {bins}")));
        }
        let edges = (0..=bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect();
        Ok(Self {
            edges,
            counts: vec![0; bins],
            outside: 0,
        })
    }

    /// Histogram on `[lo, hi]` with bins of (approximately) the given
    /// width; the bin count is rounded to the nearest integer.
    pub fn with_width(lo: f64, hi: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Domain("bin width must be positive".into()));
        }
        let bins = (((hi - lo) / width).round() as usize).max(1);
        Self::new(lo, hi, bins)
    }

    /// Adds one observation.
    pub fn add(&mut self, x: f64) {
        let lo = self.edges[0];
        let hi = *self.edges.last().expect("edges are non-empty");
        if !(x >= lo && x <= hi) {
            self.outside += 1;
            return;
        }
        let bins = self.counts.len();
        let idx = (((x - lo) / (hi - lo)) * bins as f64).floor() as usize;
        let mut idx = idx.min(bins - 1);
        // Correct floating-point misplacement at the edges.
        while idx > 0 && x < self.edges[idx] {
            idx -= 1;
        }
        while idx + 1 < bins && x >= self.edges[idx + 1] {
            idx += 1;
        }
        self.counts[idx] += 1;
    }

    /// Total number of binned observations.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}
