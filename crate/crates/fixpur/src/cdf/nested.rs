//! Direct nested quadrature of the chamber volume functions.
//!
//! Evaluates the same integrals as the level tables but by straightforward
//! recursion: every level is an adaptive Gauss–Kronrod integral whose
//! integrand calls the level below, down to the closed-form `C_3`. It is
//! slow (cost grows geometrically with depth) and serves as an independent
//! cross-check of the tabulated backend for small dimensions.

use super::closed::{c2, c3};
use crate::chamber::{
    level_cosine_bound, level_cosine_bound_inverse, max_radius, region_radii, top_cosine_bound,
    top_cosine_bound_inverse,
};
use crate::quad::{integrate, Estimate, QuadOptions};
use crate::{Error, Result};

/// Interior non-smooth points of `C_k` on `(1/k, 1)`.
pub fn singular_points(k: usize) -> Vec<f64> {
    if k <= 3 {
        return if k == 3 { vec![1.0 / 3f64.sqrt()] } else { vec![] };
    }
    let mut src = singular_points(k - 1);
    src.push(1.0);
    let lo = 1.0 / k as f64;
    let mut out: Vec<f64> = src
        .iter()
        .map(|&s| level_cosine_bound_inverse(k - 1, s))
        .filter(|&y| y > lo + 1e-12 && y < 1.0 - 1e-12)
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    out
}

/// Options of the nested evaluation.
#[derive(Debug, Clone, Copy)]
pub struct NestedOptions {
    /// Absolute tolerance per integration level.
    pub abs_tol: f64,
    /// Subinterval budget per integration.
    pub max_intervals: usize,
}

impl Default for NestedOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            max_intervals: 200,
        }
    }
}

/// `C_k(u)` by direct recursion.
pub fn level_value(k: usize, u: f64, opts: NestedOptions) -> f64 {
    match k {
        1 => 1.0,
        2 => c2(u),
        3 => c3(u),
        _ => {
            let lo = 1.0 / k as f64;
            let u = u.min(1.0);
            if u <= lo {
                return 0.0;
            }
            let e = (k as f64 - 3.0) / 2.0;
            let pts: Vec<f64> = singular_points(k).into_iter().filter(|&s| s < u).collect();
            integrate(
                |x| (1.0 - x * x).max(0.0).powf(e) * level_value(k - 1, level_cosine_bound(k - 1, x), opts),
                lo,
                u,
                &pts,
                QuadOptions {
                    abs_tol: opts.abs_tol,
                    rel_tol: 1e-13,
                    max_intervals: opts.max_intervals,
                },
            )
            .value
        }
    }
}

/// Unnormalised radial mass `∫_0^r s^{N−2} C_{N−1}(U_{N−1}(s)) ds`.
pub fn radial_mass(n: usize, r: f64, opts: NestedOptions) -> Result<Estimate> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("dimension {n}")));
    }
    let rmax = max_radius(n);
    if !(0.0..=rmax + 1e-14).contains(&r) {
        return Err(Error::Domain(format!("radius {r} outside [0, {rmax}]")));
    }
    let mut pts = region_radii(n);
    if n >= 3 {
        let mut src = singular_points(n - 1);
        src.push(1.0);
        pts.extend(src.iter().map(|&v| top_cosine_bound_inverse(n, v)));
    }
    let pts: Vec<f64> = pts.into_iter().filter(|&p| p > 1e-12 && p < r - 1e-12).collect();
    let p = n as i32 - 2;
    Ok(integrate(
        |s| {
            let t = if n == 2 { 1.0 } else { level_value(n - 1, top_cosine_bound(n, s), opts) };
            s.powi(p) * t
        },
        0.0,
        r.min(rmax),
        &pts,
        QuadOptions {
            abs_tol: opts.abs_tol,
            rel_tol: 1e-13,
            max_intervals: opts.max_intervals,
        },
    ))
}

/// Normalised radial CDF by direct nested quadrature.
pub fn radial_cdf(n: usize, r: f64, opts: NestedOptions) -> Result<f64> {
    let num = radial_mass(n, r, opts)?.value;
    let den = radial_mass(n, max_radius(n), opts)?.value;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn level4_total() {
        let v = level_value(4, 1.0, NestedOptions::default());
        assert!((v - PI * PI / 60.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn n4_radial_total_is_one_seventy_second() {
        let v = radial_mass(4, max_radius(4), NestedOptions::default()).unwrap().value;
        assert!((v - 1.0 / 72.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn singular_points_of_level4() {
        let s = singular_points(4);
        assert!((s[0] - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((s[1] - (3.0f64 / 8.0).sqrt()).abs() < 1e-15);
    }
}
