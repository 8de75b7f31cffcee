//! Fixed-purity sampling.
//!
//! A draw at purity `μ` proceeds top-down: `r = √(μ − 1/N)` fixes the
//! radius, `X_{N−1}` is drawn from its conditional law given `r`, then
//! `X_{N−2}, …, X_3` each given the previous cosine, and finally `φ_2`
//! given `X_3`. The chamber point is assembled from these coordinates,
//! randomly permuted (covering all `N!` chambers of the simplex) and
//! conjugated by a fresh Haar unitary.

use crate::cdf::table::fmt17;
use crate::cdf::{invert_cdf, AngleCdf};
use crate::chamber::{eigs_from_polar, radius_from_purity, PolarCoords, SimplexPoint};
use crate::matrixcore::{haar_unitary, random_density, ComplexMatrix, DensityMatrix};
use crate::rng::RngStream;
use crate::stats::Histogram;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Tolerance on the achieved purity of every sampled state.
pub const PURITY_TOL: f64 = 1e-11;

/// Parameters of a fixed-purity batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Dimension `N ≥ 2`.
    pub dim: usize,
    /// Target purity in `[1/N, 1]`.
    pub mu: f64,
    /// Number of samples.
    pub count: usize,
    /// Seed; sample `i` uses the stream `(seed, i)`.
    pub seed: u64,
    /// Include dense matrices in the output.
    pub emit_matrix: bool,
    /// Randomly permute chamber eigenvalues (default on).
    pub permute: bool,
}

impl SampleConfig {
    /// Configuration with matrices omitted and permutation on.
    pub fn new(dim: usize, mu: f64, count: usize, seed: u64) -> Self {
        Self {
            dim,
            mu,
            count,
            seed,
            emit_matrix: false,
            permute: true,
        }
    }

    /// Validates dimension and purity.
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidDimension(format!("dimension {} < 2", self.dim)));
        }
        radius_from_purity(self.dim, self.mu).map(|_| ())
    }
}

/// Dense matrix as separate real and imaginary row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    /// Real parts, row-major.
    pub re: Vec<Vec<f64>>,
    /// Imaginary parts, row-major.
    pub im: Vec<Vec<f64>>,
}

impl DenseMatrix {
    /// Splits a complex matrix.
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    /// Reassembles the complex matrix.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.re.len();
        let m = self.re.first().map_or(0, Vec::len);
        if self.im.len() != n || self.re.iter().chain(&self.im).any(|r| r.len() != m) {
            return Err(Error::Format("ragged matrix arrays".into()));
        }
        Ok(ComplexMatrix::from_fn(n, m, |i, j| Complex64::new(self.re[i][j], self.im[i][j])))
    }
}

/// One sampled state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    /// Chamber (descending) eigenvalues.
    pub eigs_desc: Vec<f64>,
    /// Eigenvalues in the permuted order placed on the diagonal.
    pub eigs_permuted: Vec<f64>,
    /// Polar coordinates of the chamber point.
    pub polar: PolarCoords,
    /// Achieved purity `Tr ρ²`.
    pub purity: f64,
    /// Dense `ρ` when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<DenseMatrix>,
}

/// A batch of fixed-purity samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    /// Configuration echo.
    pub config: SampleConfig,
    /// Records in sample-index order.
    pub samples: Vec<SampleRecord>,
}

impl SampleBatch {
    /// Serialises to JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("batches always serialise")
    }

    /// Parses JSON produced by [`Self::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
    }

    /// CSV with one row per sample and flattened eigenvalues/coordinates.
    pub fn to_csv(&self) -> String {
        let n = self.config.dim;
        let mut out = String::from("index,purity,r,phi2");
        for k in 3..n {
            let _ = write!(out, ",X{k}");
        }
        for i in 1..=n {
            let _ = write!(out, ",eig_desc_{i}");
        }
        for i in 1..=n {
            let _ = write!(out, ",eig_perm_{i}");
        }
        out.push_str("\r\n");
        for (idx, s) in self.samples.iter().enumerate() {
            let _ = write!(out, "{idx},{},{},{}", fmt17(s.purity), fmt17(s.polar.r), fmt17(s.polar.phi2));
            for v in s.polar.x.iter().chain(&s.eigs_desc).chain(&s.eigs_permuted) {
                let _ = write!(out, ",{}", fmt17(*v));
            }
            out.push_str("\r\n");
        }
        out
    }

    /// Density matrices of records carrying one.
    pub fn states(&self) -> Result<Vec<DensityMatrix>> {
        self.samples
            .iter()
            .map(|s| {
                let m = s
                    .matrix
                    .as_ref()
                    .ok_or_else(|| Error::Format("record has no matrix".into()))?;
                DensityMatrix::new(m.to_matrix()?)
            })
            .collect()
    }
}

/// Draws polar coordinates of a uniform chamber point at purity `mu`.
pub fn sample_polar(n: usize, mu: f64, rng: &mut RngStream) -> Result<PolarCoords> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("dimension {n} < 2")));
    }
    let r = radius_from_purity(n, mu)?;
    let mut p = PolarCoords {
        dim: n,
        r,
        phi2: if n == 2 { 0.0 } else { std::f64::consts::FRAC_PI_3 },
        x: (3..n).map(|k| 1.0 / k as f64).collect(),
    };
    if n == 2 || r == 0.0 {
        return Ok(p);
    }
    let mut context = r;
    for k in (3..n).rev() {
        let f = AngleCdf::new(n, k, context)?;
        let x = invert_cdf(&f, rng.uniform())?;
        p.x[k - 3] = x;
        context = x;
    }
    let f = AngleCdf::new(n, 2, context)?;
    p.phi2 = invert_cdf(&f, rng.uniform())?;
    Ok(p)
}

/// Draws a uniform chamber point at purity `mu`.
pub fn sample_wc_eigs(n: usize, mu: f64, rng: &mut RngStream) -> Result<SimplexPoint> {
    eigs_from_polar(&sample_polar(n, mu, rng)?)
}

/// Uniformly random permutation (Fisher–Yates).
pub fn random_permutation(n: usize, rng: &mut RngStream) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        p.swap(i, j);
    }
    p
}

/// One full sample: record plus the state itself.
pub fn sample_one(n: usize, mu: f64, permute: bool, rng: &mut RngStream) -> Result<(SampleRecord, DensityMatrix)> {
    let polar = sample_polar(n, mu, rng)?;
    let wc = eigs_from_polar(&polar)?;
    let desc = wc.into_lambdas();
    let permuted: Vec<f64> = if permute {
        random_permutation(n, rng).into_iter().map(|i| desc[i]).collect()
    } else {
        desc.clone()
    };
    let u = haar_unitary(n, rng)?;
    let rho = DensityMatrix::from_spectrum(&u, &permuted)?;
    let purity = rho.purity();
    if (purity - mu).abs() > PURITY_TOL {
        return Err(Error::Numerical(format!(
            "achieved purity {purity} misses target {mu} by {:e}",
            (purity - mu).abs()
        )));
    }
    Ok((
        SampleRecord {
            eigs_desc: desc,
            eigs_permuted: permuted,
            polar,
            purity,
            matrix: None,
        },
        rho,
    ))
}

/// Samples a batch in parallel; sample `i` uses the stream `(seed, i)`, so
/// results do not depend on scheduling.
pub fn sample_density(cfg: &SampleConfig) -> Result<SampleBatch> {
    cfg.validate()?;
    let samples = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(cfg.seed, i as u64);
            let (mut rec, rho) = sample_one(cfg.dim, cfg.mu, cfg.permute, &mut rng)?;
            if cfg.emit_matrix {
                rec.matrix = Some(DenseMatrix::from_matrix(rho.matrix()));
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch {
        config: cfg.clone(),
        samples,
    })
}

/// Fixed-purity states only (parallel, stream `(seed, i)` per sample).
pub fn sample_states(n: usize, mu: f64, count: usize, seed: u64) -> Result<Vec<DensityMatrix>> {
    radius_from_purity(n, mu)?;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(seed, i as u64);
            sample_one(n, mu, true, &mut rng).map(|x| x.1)
        })
        .collect()
}

/// Histogram on `[1/N, 1]` of the purities of unconstrained
/// [`random_density`] draws.
pub fn haar_purity_histogram(n: usize, count: usize, bins: usize, rng: &mut RngStream) -> Result<Histogram> {
    if count == 0 {
        return Err(Error::Domain("count must be >= 1".into()));
    }
    let mut h = Histogram::new(1.0 / n as f64, 1.0, bins)?;
    for _ in 0..count {
        h.add(random_density(n, rng)?.purity());
    }
    Ok(h)
}

/// Purities of unconstrained draws in parallel (stream `(seed, i)`).
pub fn haar_purities(n: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(seed, i as u64);
            random_density(n, &mut rng).map(|r| r.purity())
        })
        .collect()
}
