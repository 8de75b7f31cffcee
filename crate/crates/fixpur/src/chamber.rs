//! Weyl-chamber geometry.
//!
//! The eigenvalue vector `λ` of an `N`-level state is expressed in an
//! orthonormal basis whose first vector is the normalised maximally mixed
//! state `(1,…,1)/√N` and whose remaining vectors are normalised successive
//! differences of the simplex vertices `P^(k) = (1/k,…,1/k,0,…,0)`.
//! In that basis every unit-trace vector has first coordinate `1/√N`, and
//! the remaining `N−1` coordinates are written in hyperspherical form
//!
//! ```text
//! (r cos φ_{N−1}, r sin φ_{N−1} cos φ_{N−2}, …, r sin φ_{N−1}…sin φ_3 cos φ_2,
//!  r sin φ_{N−1}…sin φ_2)
//! ```
//!
//! with purity radius `r = √(μ − 1/N)`. Writing `X_k = cos φ_k`, the chamber
//! (descending, non-negative eigenvalues) is exactly the set
//!
//! ```text
//! 1/k ≤ X_k ≤ U_k,   U_{N−1} = min(1/(r√(N(N−1))), 1),
//!                    U_k     = min(√((k+2)/k) · X_{k+1}/√(1−X_{k+1}²), 1),
//! ```
//!
//! for `k = N−1, …, 2` (for `k = 2` this is `φ_2 ∈ [arccos U_2, π/3]`).

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Tolerance used when snapping bound arguments onto region breakpoints.
pub const BOUND_SNAP: f64 = 1e-14;
/// Tolerance used when validating polar coordinates against the bounds.
pub const BOUND_CHECK: f64 = 1e-12;

/// Descending probability vector (a point of the Weyl chamber).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    lambdas: Vec<f64>,
}

impl SimplexPoint {
    /// Validates a descending, non-negative, unit-sum vector.
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::InvalidDimension("simplex points need N >= 2".into()));
        }
        if lambdas.windows(2).any(|w| w[0] < w[1] - 1e-14) {
            return Err(Error::OutOfChamber("eigenvalues are not descending".into()));
        }
        if lambdas.iter().any(|&l| l < -1e-14 || !l.is_finite()) {
            return Err(Error::OutOfChamber("negative eigenvalue".into()));
        }
        let s: f64 = lambdas.iter().sum();
        if (s - 1.0).abs() > 1e-13 {
            return Err(Error::Domain(format!("eigenvalues sum to {s}")));
        }
        Ok(Self { lambdas })
    }

    /// Sorts an arbitrary probability vector into descending order.
    pub fn from_unsorted(mut lambdas: Vec<f64>) -> Result<Self> {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        Self::new(lambdas)
    }

    /// Dimension `N`.
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    /// Eigenvalues, descending.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Consumes the point, returning the eigenvalues.
    pub fn into_lambdas(self) -> Vec<f64> {
        self.lambdas
    }

    /// Purity `Σ λᵢ²`.
    pub fn purity(&self) -> f64 {
        self.lambdas.iter().map(|l| l * l).sum()
    }
}

/// Spherical-polar chamber coordinates.
///
/// `x` holds `X_3, …, X_{N−1}` (index 0 is `X_3`). For `N = 2` there are no
/// angles and `phi2` is 0 by convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarCoords {
    /// Dimension `N`.
    pub dim: usize,
    /// Purity radius `r = √(μ − 1/N)`.
    pub r: f64,
    /// Lowest angle `φ_2` in radians.
    pub phi2: f64,
    /// Cosines `X_3, …, X_{N−1}`.
    #[serde(rename = "X")]
    pub x: Vec<f64>,
}

impl PolarCoords {
    /// Purity `1/N + r²`.
    pub fn purity(&self) -> f64 {
        1.0 / self.dim as f64 + self.r * self.r
    }

    /// `X_k` for `3 ≤ k ≤ N−1`.
    pub fn x_k(&self, k: usize) -> f64 {
        self.x[k - 3]
    }

    /// The cosine `X_k` for any `2 ≤ k ≤ N−1` (`X_2 = cos φ_2`).
    pub fn cosine(&self, k: usize) -> f64 {
        if k == 2 {
            self.phi2.cos()
        } else {
            self.x_k(k)
        }
    }
}

/// Closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    /// Lower end.
    pub lo: f64,
    /// Upper end.
    pub hi: f64,
}

impl Interval {
    /// Width `hi − lo`.
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Whether `x` lies in the interval up to `tol`.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }
}

/// Conditioning value for an angle bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundContext {
    /// The purity radius (used for the highest angle `k = N−1`).
    Radius(f64),
    /// The cosine `X_{k+1}` of the next-higher angle.
    Cosine(f64),
}

/// Simplex vertices and the orthonormal chamber basis.
#[derive(Debug, Clone)]
pub struct ChamberBasis {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    e_matrix: Vec<Vec<f64>>,
}

impl ChamberBasis {
    /// Dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices `P^(1), …, P^(N)`; `P^(k)` has its first `k` entries `1/k`.
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Rows of the orthogonal basis matrix (row 0 is `P^(N)/|P^(N)|`).
    pub fn e_matrix(&self) -> &[Vec<f64>] {
        &self.e_matrix
    }

    /// `max |E Eᵀ − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d: f64 = (0..n).map(|k| self.e_matrix[i][k] * self.e_matrix[j][k]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}

/// Builds the simplex vertices and chamber basis for dimension `n ≥ 2`.
///
/// Row `j ≥ 1` of the basis matrix is the normalised difference
/// `P^(N−j) − P^(N−j+1)`.
pub fn chamber_basis(n: usize) -> Result<ChamberBasis> {
    if n < 2 {
        return Err(Error::InvalidDimension("chamber basis needs n >= 2".into()));
    }
    let vertices: Vec<Vec<f64>> = (1..=n)
        .map(|k| (0..n).map(|i| if i < k { 1.0 / k as f64 } else { 0.0 }).collect())
        .collect();
    let normalise = |v: Vec<f64>| {
        let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / s).collect::<Vec<f64>>()
    };
    let mut e_matrix = vec![normalise(vertices[n - 1].clone())];
    for j in 1..n {
        let m = n - j;
        let diff = (0..n).map(|i| vertices[m - 1][i] - vertices[m][i]).collect();
        e_matrix.push(normalise(diff));
    }
    Ok(ChamberBasis {
        dim: n,
        vertices,
        e_matrix,
    })
}

/// Coordinates `c_1, …, c_{N−1}` of `λ` in the chamber basis (the constant
/// first coordinate `1/√N` is omitted).
pub fn chamber_coordinates(lambdas: &[f64]) -> Vec<f64> {
    let n = lambdas.len();
    let mut prefix = 0.0;
    let mut prefix_sums = Vec::with_capacity(n);
    for &l in lambdas {
        prefix_sums.push(prefix);
        prefix += l;
    }
    (1..n)
        .map(|j| {
            let m = n - j;
            let mf = m as f64;
            (prefix_sums[m] - mf * lambdas[m]) / (mf * (mf + 1.0)).sqrt()
        })
        .collect()
}

/// Inverse of [`chamber_coordinates`]: `λ = Eᵀ (1/√N, c_1, …)`.
pub fn lambdas_from_coordinates(c: &[f64]) -> Vec<f64> {
    let n = c.len() + 1;
    let mut lambdas = vec![1.0 / n as f64; n];
    for (j, &cj) in c.iter().enumerate() {
        let m = n - (j + 1);
        let mf = m as f64;
        let off = cj / (mf * (mf + 1.0)).sqrt();
        for l in lambdas.iter_mut().take(m) {
            *l += off;
        }
        lambdas[m] -= cj * (mf / (mf + 1.0)).sqrt();
    }
    lambdas
}

fn snap_unit(v: f64) -> f64 {
    if v >= 1.0 - BOUND_SNAP {
        1.0
    } else {
        v
    }
}

/// Upper cosine bound `U_{N−1}(r) = min(1/(r√(N(N−1))), 1)`.
pub fn top_cosine_bound(n: usize, r: f64) -> f64 {
    let nf = n as f64;
    if r <= 0.0 {
        return 1.0;
    }
    snap_unit((1.0 / (r * (nf * (nf - 1.0)).sqrt())).min(1.0))
}

/// Upper cosine bound `U_k(y) = min(√((k+2)/k)·y/√(1−y²), 1)` for `X_k`
/// given `X_{k+1} = y`.
pub fn level_cosine_bound(k: usize, y: f64) -> f64 {
    if y >= 1.0 {
        return 1.0;
    }
    let kf = k as f64;
    let v = ((kf + 2.0) / kf).sqrt() * y / (1.0 - y * y).sqrt();
    snap_unit(v.min(1.0))
}

/// Inverse of [`level_cosine_bound`] on its increasing branch: the `y` with
/// `√((k+2)/k)·y/√(1−y²) = v`.
pub fn level_cosine_bound_inverse(k: usize, v: f64) -> f64 {
    let a = (k as f64 + 2.0) / k as f64;
    (v * v / (a + v * v)).sqrt()
}

/// Radius at which `1/(r√(N(N−1))) = v`.
pub fn top_cosine_bound_inverse(n: usize, v: f64) -> f64 {
    let nf = n as f64;
    1.0 / (v * (nf * (nf - 1.0)).sqrt())
}

/// Largest purity radius `√(1 − 1/N)`.
pub fn max_radius(n: usize) -> f64 {
    (1.0 - 1.0 / n as f64).sqrt()
}

/// Purity radius `√(μ − 1/N)`, validating the purity range.
pub fn radius_from_purity(n: usize, mu: f64) -> Result<f64> {
    let lo = 1.0 / n as f64;
    if !(mu >= lo - 1e-12 && mu <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("purity {mu} outside [1/{n}, 1]")));
    }
    Ok((mu - lo).max(0.0).min(1.0 - lo).sqrt())
}

/// Interval of the cosine `X_k` (or of the angle `φ_2` when `k = 2`).
///
/// For `k = N−1` the context is the radius; otherwise it is `X_{k+1}`.
pub fn angle_bounds(n: usize, k: usize, context: BoundContext) -> Result<Interval> {
    if n < 3 || k < 2 || k > n - 1 {
        return Err(Error::InvalidDimension(format!("no angle {k} in dimension {n}")));
    }
    let upper = match (k == n - 1, context) {
        (true, BoundContext::Radius(r)) => {
            if !(0.0..=max_radius(n) + 1e-14).contains(&r) {
                return Err(Error::Domain(format!("radius {r} outside chamber")));
            }
            top_cosine_bound(n, r)
        }
        (false, BoundContext::Cosine(y)) => {
            let lo = 1.0 / (k + 1) as f64;
            if !(y >= lo - 1e-14 && y <= 1.0) {
                return Err(Error::Domain(format!("X_{} = {y} outside [{lo}, 1]", k + 1)));
            }
            level_cosine_bound(k, y)
        }
        _ => {
            return Err(Error::Domain(format!(
                "angle {k} of dimension {n} needs a {} context",
                if k == n - 1 { "radius" } else { "cosine" }
            )))
        }
    };
    let lower = 1.0 / k as f64;
    if upper < lower - BOUND_SNAP {
        return Err(Error::Infeasible(format!("empty interval for X_{k}")));
    }
    let upper = upper.max(lower);
    if k == 2 {
        Ok(Interval {
            lo: upper.min(1.0).acos(),
            hi: PI / 3.0,
        })
    } else {
        Ok(Interval { lo: lower, hi: upper })
    }
}

/// Validates polar coordinates against the coupled chamber bounds.
pub fn check_polar(p: &PolarCoords) -> Result<()> {
    let n = p.dim;
    if n < 2 {
        return Err(Error::InvalidDimension("dimension must be >= 2".into()));
    }
    if p.x.len() != n.saturating_sub(3) {
        return Err(Error::InvalidDimension(format!(
            "expected {} cosines for N = {n}, got {}",
            n.saturating_sub(3),
            p.x.len()
        )));
    }
    if !(p.r >= 0.0 && p.r <= max_radius(n) + 1e-14) {
        return Err(Error::OutOfChamber(format!("radius {} out of range", p.r)));
    }
    if n == 2 {
        return Ok(());
    }
    let mut ctx = BoundContext::Radius(p.r);
    for k in (2..n).rev() {
        let iv = angle_bounds(n, k, ctx)?;
        let value = if k == 2 { p.phi2 } else { p.x_k(k) };
        if !iv.contains(value, BOUND_CHECK) {
            return Err(Error::OutOfChamber(format!(
                "coordinate {k} = {value} outside [{}, {}]",
                iv.lo, iv.hi
            )));
        }
        if k > 2 {
            ctx = BoundContext::Cosine(value);
        }
    }
    Ok(())
}

/// Maps polar coordinates to descending chamber eigenvalues.
pub fn eigs_from_polar(p: &PolarCoords) -> Result<SimplexPoint> {
    check_polar(p)?;
    let n = p.dim;
    let mut c = Vec::with_capacity(n - 1);
    if n == 2 {
        c.push(p.r);
    } else {
        let mut tail = p.r;
        for k in (3..n).rev() {
            let x = p.x_k(k).clamp(-1.0, 1.0);
            c.push(tail * x);
            tail *= (1.0 - x * x).max(0.0).sqrt();
        }
        c.push(tail * p.phi2.cos());
        c.push(tail * p.phi2.sin());
    }
    let mut lambdas = lambdas_from_coordinates(&c);
    for l in lambdas.iter_mut() {
        if *l < 0.0 {
            if *l < -1e-12 {
                return Err(Error::OutOfChamber(format!("negative eigenvalue {l}")));
            }
            *l = 0.0;
        }
    }
    if lambdas.windows(2).any(|w| w[0] < w[1] - 1e-12) {
        return Err(Error::OutOfChamber("eigenvalues not descending".into()));
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok(SimplexPoint { lambdas })
}

/// Recovers polar coordinates from chamber eigenvalues.
///
/// Where an angle is undefined (a vanishing tail of coordinates, including
/// `r = 0`) the cosines are set to their lower bounds `1/k`, which forces
/// `φ_2 = π/3`.
pub fn polar_from_eigs(s: &SimplexPoint) -> PolarCoords {
    let n = s.dim();
    let c = chamber_coordinates(s.lambdas());
    let mut tails = vec![0.0f64; c.len() + 1];
    for j in (0..c.len()).rev() {
        tails[j] = tails[j + 1].hypot(c[j]);
    }
    let r = tails[0].min(max_radius(n));
    if n == 2 {
        return PolarCoords {
            dim: 2,
            r: c[0].abs(),
            phi2: 0.0,
            x: vec![],
        };
    }
    let scale = r.max(1e-300);
    let mut x = vec![0.0; n - 3];
    let mut degenerate = false;
    for (j, k) in (3..n).rev().enumerate() {
        let lo = 1.0 / k as f64;
        if degenerate || tails[j] <= 1e-15 * scale.max(1e-15) || tails[j] == 0.0 {
            degenerate = true;
            x[k - 3] = lo;
        } else {
            x[k - 3] = (c[j] / tails[j]).clamp(lo, 1.0);
        }
    }
    let j = n - 3;
    let phi2 = if degenerate || tails[j] == 0.0 {
        PI / 3.0
    } else {
        c[j + 1].atan2(c[j]).clamp(0.0, PI / 3.0)
    };
    PolarCoords { dim: n, r, phi2, x }
}

/// `x_k = √((kμ_k − 1)/(kμ_{k−1} − 1))` (with `μ_1 = 1`).
pub fn x_from_purities(k: usize, mu_k: f64, mu_km1: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidDimension("k must be >= 2".into()));
    }
    let kf = k as f64;
    let tol = 1e-12;
    if mu_k < 1.0 / kf - tol || mu_km1 > 1.0 + tol || mu_k > mu_km1 + tol {
        return Err(Error::Domain(format!(
            "need 1/{k} <= mu_k <= mu_(k-1) <= 1, got {mu_k}, {mu_km1}"
        )));
    }
    let num = (kf * mu_k - 1.0).max(0.0);
    let den = kf * mu_km1 - 1.0;
    if num <= tol {
        return Ok(0.0);
    }
    if den <= 1e-15 {
        return Err(Error::Degenerate("mu_(k-1) = 1/k with mu_k > 1/k".into()));
    }
    Ok((num / den).sqrt().min(1.0))
}

/// `(tan φ_k, sin φ_k, cos φ_k)` from the sub-chain purity `μ_k`.
pub fn angle_from_purity(k: usize, mu_k: f64) -> Result<(f64, f64, f64)> {
    if k < 2 {
        return Err(Error::InvalidDimension("k must be >= 2".into()));
    }
    let kf = k as f64;
    if mu_k < 1.0 / kf - 1e-12 || mu_k > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("mu_{k} = {mu_k} outside [1/{k}, 1]")));
    }
    let a = (kf * mu_k - 1.0).max(0.0);
    let tan = (kf + 1.0).sqrt() * a.sqrt();
    let cos = 1.0 / (kf.sqrt() * ((kf + 1.0) * mu_k - 1.0).sqrt());
    let sin = tan * cos;
    Ok((tan, sin, cos))
}

/// Direct convex-combination construction of the chamber point:
/// `p^(k) = x_k p^(k−1) + (1 − x_k) P^(k,k)` with
/// `x_N = √(N(N−1)) r X_{N−1}`, `x_k = X_{k−1} tan φ_k / √((k+1)/(k−1))`
/// for `3 ≤ k ≤ N−1` and `x_2 = tan φ_2 / √3`.
pub fn eigs_by_vertex_recursion(p: &PolarCoords) -> Vec<f64> {
    let n = p.dim;
    let nf = n as f64;
    let tan_of = |x: f64| (1.0 - x * x).max(0.0).sqrt() / x;
    let xs: Vec<f64> = (2..=n)
        .map(|k| {
            let kf = k as f64;
            if k == n {
                let top = if n == 2 { 1.0 } else { p.cosine(n - 1) };
                (nf * (nf - 1.0)).sqrt() * p.r * top
            } else if k == 2 {
                p.phi2.tan() / 3f64.sqrt()
            } else {
                p.cosine(k - 1) * tan_of(p.cosine(k)) / ((kf + 1.0) / (kf - 1.0)).sqrt()
            }
        })
        .collect();
    let mut v = vec![1.0];
    for (idx, &xk) in xs.iter().enumerate() {
        let k = idx + 2;
        v.push(0.0);
        for l in v.iter_mut() {
            *l = xk * *l + (1.0 - xk) / k as f64;
        }
    }
    v
}

/// Purity-radius boundaries `r_i = √(1/(N−i) − 1/N)` of the regions
/// `μ ∈ [1/(N−i+1), 1/(N−i)]`, `i = 1, …, N−1` (the last is `r_max`).
pub fn region_radii(n: usize) -> Vec<f64> {
    (1..n)
        .map(|i| (1.0 / (n - i) as f64 - 1.0 / n as f64).max(0.0).sqrt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn basis_rows_match_known_matrices() {
        let b3 = chamber_basis(3).unwrap();
        let row = &b3.e_matrix()[1];
        assert!(close(row[0], 1.0 / 6f64.sqrt(), 1e-15));
        assert!(close(row[1], 1.0 / 6f64.sqrt(), 1e-15));
        assert!(close(row[2], -(2.0f64 / 3.0).sqrt(), 1e-15));
        let b4 = chamber_basis(4).unwrap();
        assert!(b4.e_matrix()[0].iter().all(|&x| close(x, 0.5, 1e-15)));
        let b2 = chamber_basis(2).unwrap();
        assert_eq!(b2.vertices(), &[vec![1.0, 0.0], vec![0.5, 0.5]]);
        assert!(chamber_basis(1).is_err());
    }

    #[test]
    fn fast_coordinates_match_basis_matrix() {
        let lambdas = [0.4, 0.3, 0.2, 0.1, 0.0];
        let b = chamber_basis(5).unwrap();
        let c = chamber_coordinates(&lambdas);
        for j in 1..5 {
            let d: f64 = (0..5).map(|i| b.e_matrix()[j][i] * lambdas[i]).sum();
            assert!(close(d, c[j - 1], 1e-15));
        }
        let back = lambdas_from_coordinates(&c);
        for (a, b) in back.iter().zip(&lambdas) {
            assert!(close(*a, *b, 1e-15));
        }
    }

    #[test]
    fn x_from_purities_examples() {
        assert_eq!(x_from_purities(3, 1.0 / 3.0, 0.6).unwrap(), 0.0);
        assert!(close(x_from_purities(2, 0.75, 1.0).unwrap(), 0.5f64.sqrt(), 1e-15));
        assert!(close(x_from_purities(4, 1.0, 1.0).unwrap(), 1.0, 1e-15));
        assert!(matches!(x_from_purities(3, 0.5, 1.0 / 3.0), Err(Error::Domain(_))));
        assert!(matches!(
            x_from_purities(3, 1.0 / 3.0 + 5e-13, 1.0 / 3.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn angle_from_purity_examples() {
        let (t, _, c) = angle_from_purity(2, 0.5).unwrap();
        assert!(close(t, 0.0, 1e-15) && close(c, 1.0, 1e-15));
        let (t, _, c) = angle_from_purity(2, 1.0).unwrap();
        assert!(close(t, 3f64.sqrt(), 1e-15));
        assert!(close(c.acos(), PI / 3.0, 1e-12));
        let (_, _, c) = angle_from_purity(3, 1.0).unwrap();
        assert!(close(c, 1.0 / 3.0, 1e-15));
        for &mu in &[0.34, 0.5, 0.77, 1.0] {
            let (t, _, c) = angle_from_purity(3, mu).unwrap();
            assert!(close(t * t + 1.0, 1.0 / (c * c), 1e-12));
        }
        assert!(angle_from_purity(3, 0.2).is_err());
    }

    #[test]
    fn angle_bound_examples() {
        let iv = angle_bounds(4, 3, BoundContext::Radius(0.5)).unwrap();
        assert!(close(iv.hi, 1.0 / 3f64.sqrt(), 1e-15));
        let iv = angle_bounds(4, 3, BoundContext::Radius(1.0 / (2.0 * 3f64.sqrt()))).unwrap();
        assert_eq!(iv.hi, 1.0);
        let iv = angle_bounds(5, 3, BoundContext::Cosine(0.25)).unwrap();
        assert!(close(iv.hi, 1.0 / 3.0, 1e-15) && close(iv.lo, 1.0 / 3.0, 1e-15));
        assert!(angle_bounds(4, 3, BoundContext::Cosine(0.5)).is_err());
        assert!(angle_bounds(4, 1, BoundContext::Radius(0.1)).is_err());
    }

    #[test]
    fn polar_examples() {
        let mms = eigs_from_polar(&PolarCoords { dim: 4, r: 0.0, phi2: PI / 3.0, x: vec![1.0 / 3.0] }).unwrap();
        assert!(mms.lambdas().iter().all(|&l| close(l, 0.25, 1e-15)));
        let pure = eigs_from_polar(&PolarCoords { dim: 3, r: (2.0f64 / 3.0).sqrt(), phi2: PI / 3.0, x: vec![] }).unwrap();
        assert!(close(pure.lambdas()[0], 1.0, 1e-15));
        assert!(close(pure.lambdas()[1], 0.0, 1e-15));
        let corner = polar_from_eigs(&SimplexPoint::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(close(corner.r, 0.75f64.sqrt(), 1e-15));
        assert!(close(corner.x[0], 1.0 / 3.0, 1e-15));
        assert!(close(corner.phi2, PI / 3.0, 1e-15));
        let centre = polar_from_eigs(&SimplexPoint::new(vec![0.2; 5]).unwrap());
        assert_eq!(centre.r, 0.0);
    }

    #[test]
    fn out_of_chamber_rejected() {
        let bad = PolarCoords { dim: 4, r: 0.6, phi2: 0.1, x: vec![0.9] };
        assert!(matches!(eigs_from_polar(&bad), Err(Error::OutOfChamber(_))));
    }

    #[test]
    fn vertex_recursion_agrees_on_n4_edge() {
        let r = 0.5f64.sqrt() * 0.999;
        let ub = top_cosine_bound(4, 0.25f64.sqrt());
        let p = PolarCoords { dim: 4, r: 0.5, phi2: 0.7, x: vec![ub] };
        let direct = eigs_from_polar(&p).unwrap();
        let vr = eigs_by_vertex_recursion(&p);
        for (a, b) in direct.lambdas().iter().zip(&vr) {
            assert!(close(*a, *b, 1e-12));
        }
        assert!(r > 0.0);
    }

    #[test]
    fn region_radii_n4() {
        let r = region_radii(4);
        assert!(close(r[0], 1.0 / (2.0 * 3f64.sqrt()), 1e-15));
        assert!(close(r[1], 0.5, 1e-15));
        assert!(close(r[2], 0.75f64.sqrt(), 1e-15));
    }
}
