//! Tabulated level functions for arbitrary dimension.
//!
//! For `k ≥ 3` the level function
//! `C_k(u) = ∫_{1/k}^{u} (1−X²)^{(k−3)/2} A_{k−1}(X) dX`, with
//! `A_{k−1}(X) = C_{k−1}(U_{k−1}(X))`, does not depend on the ambient
//! dimension. Every conditional CDF of the sampler is a ratio
//! `C_k(x)/C_k(upper)`, so one table per level serves every context.
//!
//! Tables are built bottom-up from the closed-form `C_2`. Knots are graded
//! towards every point where the integrand is not smooth (the images of the
//! lower levels' singular points under the bound maps), cell integrals come
//! from adaptive Gauss–Kronrod quadrature, and values are interpolated by
//! monotone quintic Hermite pieces using exact first and second derivatives.

use super::closed::{c2, c2_tail};
use super::hermite::Hermite;
use crate::chamber::{
    level_cosine_bound, level_cosine_bound_inverse, max_radius, region_radii, top_cosine_bound,
    top_cosine_bound_inverse,
};
use crate::quad::{integrate, QuadOptions};
use crate::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::FRAC_PI_3;
use std::sync::{Arc, Mutex, OnceLock};

/// Knot layout of a tabulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Knots per smooth piece (between consecutive breakpoints).
    pub knots_per_piece: usize,
    /// Grading exponent: spacing near a piece edge scales like `t^grading`.
    pub grading: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            knots_per_piece: 160,
            grading: 4.0,
        }
    }
}

impl GridSpec {
    /// Layout suited to radial tables, whose pieces are smooth apart from
    /// mild kinks at the region radii (about 200 knots for `N = 4`).
    pub fn radial() -> Self {
        Self {
            knots_per_piece: 67,
            grading: 2.5,
        }
    }
}

/// Knots on `[edges[0], edges[last]]`, graded towards every edge.
pub fn graded_knots(edges: &[f64], spec: GridSpec) -> Vec<f64> {
    let m = spec.knots_per_piece.max(2);
    let q = spec.grading.max(1.0);
    let mut out: Vec<f64> = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        for j in 0..m {
            let t = j as f64 / (m - 1) as f64;
            let g = t.powf(q);
            let h = (1.0 - t).powf(q);
            let s = g / (g + h);
            let x = if j == m - 1 { b } else { a + (b - a) * s };
            if out.last().is_none_or(|&l| x > l) {
                out.push(x);
            }
        }
    }
    out
}

/// A tabulated cumulative integral with its upper tail.
#[derive(Debug, Clone)]
pub struct Tabulated {
    /// `∫_{x_0}^{x} f`.
    pub head: Hermite,
    /// `∫_{x}^{x_last} f`.
    pub tail: Hermite,
    /// Total integral.
    pub total: f64,
    /// Sum of the quadrature error estimates.
    pub quad_err: f64,
    /// Largest deviation between interpolant and direct quadrature at cell
    /// midpoints.
    pub interp_err: f64,
}

impl Tabulated {
    /// Achieved absolute tolerance (quadrature plus interpolation).
    pub fn abs_err(&self) -> f64 {
        self.quad_err + self.interp_err
    }
}

/// Tabulates the cumulative integral of `f` on the given knots; `df` is the
/// derivative of `f` (used as curvature data; may return NaN).
pub fn tabulate<F, D>(f: F, df: D, knots: Vec<f64>) -> Result<Tabulated>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-14,
        max_intervals: 64,
    };
    tabulate_with(f, df, knots, opts)
}

/// [`tabulate`] with explicit per-cell quadrature options (for integrands
/// that are themselves computed by quadrature and carry noise above the
/// default relative tolerance).
pub fn tabulate_with<F, D>(f: F, df: D, knots: Vec<f64>, opts: QuadOptions) -> Result<Tabulated>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    if knots.len() < 2 {
        return Err(Error::Domain("tabulation needs at least two knots".into()));
    }
    let cells: Vec<(f64, f64)> = knots
        .par_windows(2)
        .map(|w| {
            let e = integrate(&f, w[0], w[1], &[], opts);
            (e.value.max(0.0), e.abs_err)
        })
        .collect();
    let n = knots.len();
    let mut head = vec![0.0; n];
    for i in 0..n - 1 {
        head[i + 1] = head[i] + cells[i].0;
    }
    let mut tail = vec![0.0; n];
    for i in (0..n - 1).rev() {
        tail[i] = tail[i + 1] + cells[i].0;
    }
    let total = head[n - 1];
    let quad_err: f64 = cells.iter().map(|c| c.1).sum();
    let d: Vec<f64> = knots.iter().map(|&x| f(x)).collect();
    let s: Vec<f64> = knots.iter().map(|&x| df(x)).collect();
    let head_h = Hermite::with_curvature(knots.clone(), head.clone(), d.clone(), s.clone())?;
    let tail_h = Hermite::with_curvature(
        knots.clone(),
        tail,
        d.iter().map(|v| -v).collect(),
        s.iter().map(|v| -v).collect(),
    )?;
    let interp_err = knots
        .par_windows(2)
        .enumerate()
        .map(|(i, w)| {
            let mid = 0.5 * (w[0] + w[1]);
            let direct = head[i] + integrate(&f, w[0], mid, &[], opts).value;
            (head_h.eval(mid) - direct).abs()
        })
        .reduce(|| 0.0, f64::max);
    Ok(Tabulated {
        head: head_h,
        tail: tail_h,
        total,
        quad_err,
        interp_err,
    })
}

/// Angular weight `(1 − X²)^{(k−3)/2}` of level `k`.
pub fn weight(k: usize, x: f64) -> f64 {
    let v = (1.0 - x * x).max(0.0);
    match k {
        3 => 1.0,
        _ => v.powf((k as f64 - 3.0) / 2.0),
    }
}

/// Derivative of [`weight`].
pub fn weight_prime(k: usize, x: f64) -> f64 {
    if k == 3 {
        return 0.0;
    }
    let e = (k as f64 - 3.0) / 2.0;
    let v = (1.0 - x * x).max(0.0);
    -2.0 * e * x * v.powf(e - 1.0)
}

/// Level-function tables `C_3, …, C_max`.
#[derive(Debug, Clone)]
pub struct LevelTables {
    max_level: usize,
    tables: Vec<Tabulated>,
    singular: Vec<Vec<f64>>,
    spec: GridSpec,
}

impl LevelTables {
    /// Builds tables up to and including level `max_level ≥ 2`.
    pub fn build(max_level: usize, spec: GridSpec) -> Result<Self> {
        if max_level < 2 {
            return Err(Error::InvalidDimension("levels start at 2".into()));
        }
        let mut me = Self {
            max_level: 2,
            tables: Vec::new(),
            singular: vec![vec![], vec![], vec![]],
            spec,
        };
        for k in 3..=max_level {
            let sing = me.propagate_singular(k);
            let mut edges = vec![1.0 / k as f64];
            edges.extend(sing.iter().copied());
            edges.push(1.0);
            let knots = graded_knots(&edges, spec);
            let t = {
                let lower = &me;
                tabulate(
                    |x| weight(k, x) * lower.a(k - 1, x),
                    |x| weight_prime(k, x) * lower.a(k - 1, x) + weight(k, x) * lower.a_prime(k - 1, x),
                    knots,
                )?
            };
            me.tables.push(t);
            me.singular.push(sing);
            me.max_level = k;
        }
        Ok(me)
    }

    /// Interior points of `(1/k, 1)` where `C_k` is not smooth.
    fn propagate_singular(&self, k: usize) -> Vec<f64> {
        let mut sources: Vec<f64> = self.singular[k - 1].clone();
        sources.push(1.0);
        let lo = 1.0 / k as f64;
        let mut out: Vec<f64> = sources
            .iter()
            .map(|&s| level_cosine_bound_inverse(k - 1, s))
            .filter(|&y| y > lo + 1e-12 && y < 1.0 - 1e-12)
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        out
    }

    /// Highest tabulated level.
    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// Grid used for the tables.
    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    /// Interior singular points of `C_k`.
    pub fn singular_points(&self, k: usize) -> &[f64] {
        &self.singular[k]
    }

    fn table(&self, k: usize) -> &Tabulated {
        assert!(k >= 3 && k <= self.max_level, "level {k} not tabulated");
        &self.tables[k - 3]
    }

    /// Achieved absolute tolerance of level `k`'s table.
    pub fn abs_err(&self, k: usize) -> f64 {
        if k <= 2 {
            0.0
        } else {
            self.table(k).abs_err()
        }
    }

    /// `C_k(1)`.
    pub fn total(&self, k: usize) -> f64 {
        match k {
            1 => 1.0,
            2 => FRAC_PI_3,
            _ => self.table(k).total,
        }
    }

    /// `C_k(u)` (`C_1 ≡ 1`).
    pub fn c(&self, k: usize, u: f64) -> f64 {
        match k {
            1 => 1.0,
            2 => c2(u),
            _ => {
                if u <= 1.0 / k as f64 {
                    0.0
                } else if u >= 1.0 {
                    self.table(k).total
                } else {
                    self.table(k).head.eval(u)
                }
            }
        }
    }

    /// `C_k(1) − C_k(u)`.
    pub fn c_tail(&self, k: usize, u: f64) -> f64 {
        match k {
            1 => 0.0,
            2 => c2_tail(u),
            _ => {
                if u >= 1.0 {
                    0.0
                } else if u <= 1.0 / k as f64 {
                    self.table(k).total
                } else {
                    self.table(k).tail.eval(u)
                }
            }
        }
    }

    /// `C_k'(u) = (1−u²)^{(k−3)/2} A_{k−1}(u)`.
    pub fn c_prime(&self, k: usize, u: f64) -> f64 {
        if k == 1 || u < 1.0 / k as f64 || u > 1.0 {
            return 0.0;
        }
        if k == 2 {
            return 1.0 / (1.0 - u * u).sqrt();
        }
        weight(k, u) * self.a(k - 1, u)
    }

    /// `A_k(y) = C_k(U_k(y))` (`A_1 ≡ 1`).
    pub fn a(&self, k: usize, y: f64) -> f64 {
        if k == 1 {
            return 1.0;
        }
        self.c(k, level_cosine_bound(k, y))
    }

    /// Derivative of [`Self::a`].
    pub fn a_prime(&self, k: usize, y: f64) -> f64 {
        if k == 1 || y >= 1.0 {
            return 0.0;
        }
        let kf = k as f64;
        let scale = ((kf + 2.0) / kf).sqrt();
        let raw = scale * y / (1.0 - y * y).sqrt();
        if raw >= 1.0 {
            return 0.0;
        }
        let du = scale * (1.0 - y * y).powf(-1.5);
        self.c_prime(k, raw) * du
    }

    /// Solves `C_k(u) = target`.
    pub fn inverse(&self, k: usize, target: f64) -> f64 {
        match k {
            2 => (FRAC_PI_3 - target.clamp(0.0, FRAC_PI_3)).cos(),
            _ => self.table(k).head.inverse(target),
        }
    }

    /// Solves `C_k(1) − C_k(u) = target`.
    pub fn inverse_tail(&self, k: usize, target: f64) -> f64 {
        match k {
            2 => target.clamp(0.0, FRAC_PI_3).cos(),
            _ => self.table(k).tail.inverse(target),
        }
    }

    /// Breakpoints of the radial integrand for dimension `n`: the region
    /// radii together with the images of the top level's singular points.
    pub fn radial_breakpoints(&self, n: usize) -> Vec<f64> {
        let rmax = max_radius(n);
        let mut pts: Vec<f64> = region_radii(n);
        if n >= 3 {
            let mut sources = self.singular[n - 1].clone();
            sources.push(1.0);
            pts.extend(sources.iter().map(|&v| top_cosine_bound_inverse(n, v)));
        }
        let mut pts: Vec<f64> = pts.into_iter().filter(|&r| r > 1e-12 && r < rmax - 1e-12).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        pts
    }

    /// Angular volume `T_N(r)` available at radius `r`.
    pub fn top_volume(&self, n: usize, r: f64) -> f64 {
        if n == 2 {
            1.0
        } else {
            self.c(n - 1, top_cosine_bound(n, r))
        }
    }

    /// Derivative of [`Self::top_volume`] with respect to `r`.
    pub fn top_volume_prime(&self, n: usize, r: f64) -> f64 {
        if n == 2 || r <= 0.0 {
            return 0.0;
        }
        let nf = n as f64;
        let raw = 1.0 / (r * (nf * (nf - 1.0)).sqrt());
        if raw >= 1.0 {
            return 0.0;
        }
        -self.c_prime(n - 1, raw) * raw / r
    }

    /// Radial density numerator `r^{N−2} T_N(r)`.
    pub fn radial_integrand(&self, n: usize, r: f64) -> f64 {
        r.powi(n as i32 - 2) * self.top_volume(n, r)
    }

    /// Derivative of [`Self::radial_integrand`].
    pub fn radial_integrand_prime(&self, n: usize, r: f64) -> f64 {
        let p = n as i32 - 2;
        let lead = if p == 0 { 0.0 } else { p as f64 * r.powi(p - 1) };
        lead * self.top_volume(n, r) + r.powi(p) * self.top_volume_prime(n, r)
    }
}

static SHARED: OnceLock<Mutex<Option<Arc<LevelTables>>>> = OnceLock::new();

/// Process-wide level tables covering at least `max_level` (built lazily
/// with the default grid, rebuilt when a higher level is requested).
pub fn shared_levels(max_level: usize) -> Result<Arc<LevelTables>> {
    let cell = SHARED.get_or_init(|| Mutex::new(None));
    let mut guard = cell.lock().map_err(|_| Error::Numerical("level cache poisoned".into()))?;
    if let Some(t) = guard.as_ref() {
        if t.max_level() >= max_level {
            return Ok(Arc::clone(t));
        }
    }
    let want = max_level.max(guard.as_ref().map_or(2, |t| t.max_level())).max(7);
    let t = Arc::new(LevelTables::build(want, GridSpec::default())?);
    *guard = Some(Arc::clone(&t));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::super::closed::{c3, c3_tail};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn graded_knots_cover_edges() {
        let k = graded_knots(&[0.0, 0.5, 1.0], GridSpec { knots_per_piece: 10, grading: 3.0 });
        assert_eq!(k.first(), Some(&0.0));
        assert_eq!(k.last(), Some(&1.0));
        assert!(k.contains(&0.5));
        assert!(k.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn level3_table_matches_closed_form() {
        let t = LevelTables::build(4, GridSpec::default()).unwrap();
        for i in 0..=500 {
            let u = 1.0 / 3.0 + (2.0 / 3.0) * i as f64 / 500.0;
            assert!((t.c(3, u) - c3(u)).abs() < 1e-12, "u={u}: {} vs {}", t.c(3, u), c3(u));
            assert!((t.c_tail(3, u) - c3_tail(u)).abs() < 1e-12);
        }
        assert!((t.total(3) - PI / 6.0).abs() < 1e-13);
        assert!((t.singular_points(3)[0] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let s4 = t.singular_points(4);
        assert!((s4[0] - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((s4[1] - (3.0f64 / 8.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn level4_total_is_pi_squared_over_sixty() {
        let t = LevelTables::build(4, GridSpec::default()).unwrap();
        assert!((t.total(4) - PI * PI / 60.0).abs() < 1e-12, "{}", t.total(4));
    }

    #[test]
    fn inverses_roundtrip() {
        let t = LevelTables::build(5, GridSpec::default()).unwrap();
        for k in 2..=5 {
            for i in 1..50 {
                let u = 1.0 / k as f64 + (1.0 - 1.0 / k as f64) * i as f64 / 50.0;
                let v = t.c(k, u);
                assert!((t.inverse(k, v) - u).abs() < 1e-10, "k={k} u={u}");
                let w = t.c_tail(k, u);
                assert!((t.inverse_tail(k, w) - u).abs() < 1e-10, "k={k} u={u}");
            }
        }
    }
}
