//! Marginal CDFs of the fixed-purity construction and their inverses.
//!
//! - [`closed`]: closed forms for `N ≤ 4` and the universal `C_2`, `C_3`.
//! - [`levels`]: tabulated level functions `C_k` for arbitrary `k`.
//! - [`nested`]: direct nested quadrature (independent cross-check).
//! - [`table`]: persistable monotone tables and the inversion interface.
//!
//! The radial marginal of dimension `N` is
//! `F_N(r) = ∫_0^r s^{N−2} T_N(s) ds / ∫_0^{r_max} s^{N−2} T_N(s) ds`
//! with `T_N(s) = C_{N−1}(U_{N−1}(s))`. The conditional law of `X_k` given
//! its context is `C_k(x)/C_k(upper)`, and `φ_2` is uniform on its interval.

pub mod closed;
pub mod hermite;
pub mod levels;
pub mod nested;
pub mod table;

pub use levels::{shared_levels, GridSpec, LevelTables};
pub use table::{bisect, invert_cdf, CdfKind, CdfMethod, CdfTable, MonotoneCdf, TAIL_SWITCH};

use crate::chamber::{
    angle_bounds, max_radius, radius_from_purity, region_radii, BoundContext,
};
use crate::{Error, Result};
use closed::{
    a2, c3, c3_tail, phi2_lower_n3, phi2_lower_n4, radial_n2_purity, radial_n3, radial_n3_density,
    radial_n3_tail, radial_n4, radial_n4_density, radial_n4_tail, uniform_phi2, x3_given_r4,
    x3_upper_n4,
};
use levels::{graded_knots, tabulate, Tabulated};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::FRAC_PI_3;
use std::sync::{Arc, Mutex, OnceLock};

/// Tolerance used when validating that a probe lies in its legal interval.
pub const PROBE_TOL: f64 = 1e-12;

/// Reported tolerance above which numeric results carry a warning.
pub const NUMERIC_TARGET: f64 = 1e-8;

fn check_in(x: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if !x.is_finite() || x < lo - PROBE_TOL || x > hi + PROBE_TOL {
        return Err(Error::Domain(format!("{what} = {x} outside [{lo}, {hi}]")));
    }
    Ok(x.clamp(lo, hi))
}

/// Radial CDF of `N = 2` as a function of purity: `√(2μ − 1)`.
pub fn cdf_r2(mu2: f64) -> Result<f64> {
    let mu = check_in(mu2, 0.5, 1.0, "purity")?;
    Ok(radial_n2_purity(mu))
}

/// Conditional CDF of `φ_2` given `r_3` (`N = 3`).
pub fn cdf_phi2_n3(phi2: f64, r3: f64) -> Result<f64> {
    let r = check_in(r3, 0.0, max_radius(3), "r_3")?;
    let lo = phi2_lower_n3(r);
    let phi = check_in(phi2, lo, FRAC_PI_3, "phi_2")?;
    Ok(uniform_phi2(phi, lo))
}

/// Radial CDF of `N = 3`.
pub fn cdf_r3(r3: f64) -> Result<f64> {
    let r = check_in(r3, 0.0, max_radius(3), "r_3")?;
    Ok(radial_n3(r))
}

/// Conditional CDF of `φ_2` given `X_3` (`N = 4`).
pub fn cdf_phi2_n4(phi2: f64, x3: f64) -> Result<f64> {
    let x = check_in(x3, 1.0 / 3.0, 1.0, "X_3")?;
    let lo = phi2_lower_n4(x);
    let phi = check_in(phi2, lo, FRAC_PI_3, "phi_2")?;
    Ok(uniform_phi2(phi, lo))
}

/// Conditional CDF of `X_3` given `r_4` (`N = 4`).
pub fn cdf_x3_n4(x3: f64, r4: f64) -> Result<f64> {
    let r = check_in(r4, 0.0, max_radius(4), "r_4")?;
    let x = check_in(x3, 1.0 / 3.0, x3_upper_n4(r), "X_3")?;
    Ok(x3_given_r4(x, r))
}

/// Radial CDF of `N = 4`.
pub fn cdf_r4(r4: f64) -> Result<f64> {
    let r = check_in(r4, 0.0, max_radius(4), "r_4")?;
    Ok(radial_n4(r))
}

/// Result of a numeric CDF evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericCdf {
    /// CDF value.
    pub value: f64,
    /// Achieved absolute tolerance.
    pub abs_tol: f64,
    /// Set when `abs_tol` exceeds the target `1e-8`.
    pub warning: bool,
}

/// Radial tabulation of one dimension (unnormalised).
#[derive(Debug)]
struct RadialTab {
    tab: Tabulated,
    abs_tol: f64,
}

fn radial_tab(n: usize) -> Result<Arc<RadialTab>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RadialTab>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().map_err(|_| poisoned())?.get(&n) {
        return Ok(Arc::clone(t));
    }
    let lv = shared_levels(n.max(3) - 1)?;
    let mut edges = vec![0.0];
    edges.extend(lv.radial_breakpoints(n));
    edges.push(max_radius(n));
    let knots = graded_knots(&edges, lv.spec());
    let tab = tabulate(
        |r| lv.radial_integrand(n, r),
        |r| lv.radial_integrand_prime(n, r),
        knots,
    )?;
    let level_rel = if n >= 4 {
        lv.abs_err(n - 1) / lv.total(n - 1).max(f64::MIN_POSITIVE)
    } else {
        0.0
    };
    let abs_tol = tab.abs_err() / tab.total + level_rel;
    let t = Arc::new(RadialTab { tab, abs_tol });
    cache
        .lock()
        .map_err(|_| poisoned())?
        .insert(n, Arc::clone(&t));
    Ok(t)
}

fn poisoned() -> Error {
    Error::Numerical("cache lock poisoned".into())
}

#[derive(Debug, Clone)]
enum RadialBackend {
    Closed,
    Table(Arc<RadialTab>),
}

/// Radial marginal `F_N(r)` of dimension `N` (closed form for `N ≤ 4`,
/// tabulated nested quadrature otherwise).
#[derive(Debug, Clone)]
pub struct RadialCdf {
    n: usize,
    backend: RadialBackend,
}

impl RadialCdf {
    /// Radial CDF with the automatic backend.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("dimension {n} < 2")));
        }
        if n <= 4 {
            Ok(Self {
                n,
                backend: RadialBackend::Closed,
            })
        } else {
            Self::numeric(n)
        }
    }

    /// Radial CDF forced onto the tabulated numeric backend (`N ≥ 3`).
    pub fn numeric(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(format!(
                "numeric radial CDF needs N >= 3, got {n}"
            )));
        }
        Ok(Self {
            n,
            backend: RadialBackend::Table(radial_tab(n)?),
        })
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Backend in use.
    pub fn method(&self) -> CdfMethod {
        match self.backend {
            RadialBackend::Closed => CdfMethod::ClosedForm,
            RadialBackend::Table(_) => CdfMethod::Quadrature,
        }
    }

    /// Achieved absolute tolerance.
    pub fn abs_tol(&self) -> f64 {
        match &self.backend {
            RadialBackend::Closed => 1e-14,
            RadialBackend::Table(t) => t.abs_tol,
        }
    }

    /// Density `F_N'(r)`.
    pub fn density(&self, r: f64) -> f64 {
        let rmax = max_radius(self.n);
        if !(0.0..=rmax).contains(&r) {
            return 0.0;
        }
        match &self.backend {
            RadialBackend::Closed => match self.n {
                2 => 1.0 / rmax,
                3 => radial_n3_density(r),
                _ => radial_n4_density(r),
            },
            RadialBackend::Table(t) => t.tab.head.derivative(r) / t.tab.total,
        }
    }

    /// CDF as a function of purity.
    pub fn cdf_purity(&self, mu: f64) -> Result<f64> {
        Ok(self.cdf(radius_from_purity(self.n, mu)?))
    }

    /// Upper tail `P(μ' ≥ μ)` as a function of purity.
    pub fn tail_purity(&self, mu: f64) -> Result<f64> {
        Ok(self.tail(radius_from_purity(self.n, mu)?))
    }
}

impl MonotoneCdf for RadialCdf {
    fn support(&self) -> (f64, f64) {
        (0.0, max_radius(self.n))
    }

    fn cdf(&self, r: f64) -> f64 {
        let rmax = max_radius(self.n);
        let r = r.clamp(0.0, rmax);
        match &self.backend {
            RadialBackend::Closed => match self.n {
                2 => r / rmax,
                3 => radial_n3(r),
                _ => radial_n4(r),
            },
            RadialBackend::Table(t) => (t.tab.head.eval(r) / t.tab.total).clamp(0.0, 1.0),
        }
    }

    fn tail(&self, r: f64) -> f64 {
        let rmax = max_radius(self.n);
        let r = r.clamp(0.0, rmax);
        match &self.backend {
            RadialBackend::Closed => match self.n {
                2 => (rmax - r) / rmax,
                3 => radial_n3_tail(r),
                _ => radial_n4_tail(r),
            },
            RadialBackend::Table(t) => (t.tab.tail.eval(r) / t.tab.total).clamp(0.0, 1.0),
        }
    }

    fn quantile(&self, p: f64) -> f64 {
        match &self.backend {
            RadialBackend::Table(t) => t.tab.head.inverse(p * t.tab.total),
            RadialBackend::Closed => {
                let (lo, hi) = self.support();
                bisect(|x| self.cdf(x) - p, lo, hi)
            }
        }
    }

    fn tail_quantile(&self, q: f64) -> f64 {
        match &self.backend {
            RadialBackend::Table(t) => t.tab.tail.inverse(q * t.tab.total),
            RadialBackend::Closed => {
                let (lo, hi) = self.support();
                bisect(|x| q - self.tail(x), lo, hi)
            }
        }
    }
}

/// Conditional law of one angle coordinate: `X_k` for `k ≥ 3`, `φ_2` for
/// `k = 2`.
#[derive(Debug, Clone)]
pub struct AngleCdf {
    k: usize,
    lo: f64,
    hi: f64,
    kind: AngleKind,
}

#[derive(Debug, Clone)]
enum AngleKind {
    /// Uniform on `[lo, hi]` (`φ_2`, or a numerically degenerate interval).
    Uniform,
    /// `C_3` ratio in closed form.
    Closed3 { den: f64, tail_hi: f64, levels: Arc<LevelTables> },
    /// Tabulated `C_k` ratio.
    Table { den: f64, tail_hi: f64, levels: Arc<LevelTables> },
}

/// Interval widths below this are sampled uniformly.
const DEGENERATE_WIDTH: f64 = 1e-13;

impl AngleCdf {
    /// Law of angle `k` in dimension `n`. The context is `r_N` when
    /// `k = N−1` and `X_{k+1}` otherwise.
    pub fn new(n: usize, k: usize, context: f64) -> Result<Self> {
        Self::build(n, k, context, n <= 4)
    }

    /// As [`Self::new`] but always using the tabulated level functions.
    pub fn numeric(n: usize, k: usize, context: f64) -> Result<Self> {
        Self::build(n, k, context, false)
    }

    fn build(n: usize, k: usize, context: f64, closed: bool) -> Result<Self> {
        let ctx = if k + 1 == n {
            BoundContext::Radius(context)
        } else {
            BoundContext::Cosine(context)
        };
        let iv = angle_bounds(n, k, ctx)?;
        if k == 2 || iv.width() < DEGENERATE_WIDTH {
            return Ok(Self {
                k,
                lo: iv.lo,
                hi: iv.hi,
                kind: AngleKind::Uniform,
            });
        }
        let levels = shared_levels(k.max(3))?;
        let (den, tail_hi) = if closed && k == 3 {
            (c3(iv.hi), c3_tail(iv.hi))
        } else {
            (levels.c(k, iv.hi), levels.c_tail(k, iv.hi))
        };
        if den <= f64::MIN_POSITIVE * 1e10 {
            return Ok(Self {
                k,
                lo: iv.lo,
                hi: iv.hi,
                kind: AngleKind::Uniform,
            });
        }
        let kind = if closed && k == 3 {
            AngleKind::Closed3 { den, tail_hi, levels }
        } else {
            AngleKind::Table { den, tail_hi, levels }
        };
        Ok(Self {
            k,
            lo: iv.lo,
            hi: iv.hi,
            kind,
        })
    }

    /// Angle index.
    pub fn level(&self) -> usize {
        self.k
    }

    /// Backend in use.
    pub fn method(&self) -> CdfMethod {
        match self.kind {
            AngleKind::Table { .. } => CdfMethod::Quadrature,
            _ => CdfMethod::ClosedForm,
        }
    }

    /// Achieved absolute tolerance.
    pub fn abs_tol(&self) -> f64 {
        match &self.kind {
            AngleKind::Table { den, levels, .. } => levels.abs_err(self.k) / den,
            _ => 1e-14,
        }
    }

    /// Whether the interval carries less than half of the level's total
    /// mass. Its tail is then better computed from the head: differencing
    /// two tail values close to the total would cancel.
    fn head_based(&self) -> bool {
        match &self.kind {
            AngleKind::Uniform => false,
            AngleKind::Closed3 { den, .. } => *den < 0.5 * c3(1.0),
            AngleKind::Table { den, levels, .. } => *den < 0.5 * levels.total(self.k),
        }
    }

    fn newton_closed3(&self, mut x: f64, g: impl Fn(f64) -> f64, sign: f64) -> f64 {
        for _ in 0..3 {
            let d = a2(x) * sign;
            if d.abs() < 1e-300 {
                break;
            }
            let step = g(x) / d;
            x = (x - step).clamp(self.lo, self.hi);
            if step.abs() < 1e-16 {
                break;
            }
        }
        x
    }
}

impl MonotoneCdf for AngleCdf {
    fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn cdf(&self, x: f64) -> f64 {
        let x = x.clamp(self.lo, self.hi);
        match &self.kind {
            AngleKind::Uniform => {
                if self.hi - self.lo <= 0.0 {
                    1.0
                } else {
                    (x - self.lo) / (self.hi - self.lo)
                }
            }
            AngleKind::Closed3 { den, .. } => (c3(x) / den).clamp(0.0, 1.0),
            AngleKind::Table { den, levels, .. } => (levels.c(self.k, x) / den).clamp(0.0, 1.0),
        }
    }

    fn tail(&self, x: f64) -> f64 {
        let x = x.clamp(self.lo, self.hi);
        match &self.kind {
            AngleKind::Uniform => {
                if self.hi - self.lo <= 0.0 {
                    0.0
                } else {
                    (self.hi - x) / (self.hi - self.lo)
                }
            }
            _ if self.head_based() => 1.0 - self.cdf(x),
            AngleKind::Closed3 { den, tail_hi, .. } => ((c3_tail(x) - tail_hi) / den).clamp(0.0, 1.0),
            AngleKind::Table { den, tail_hi, levels } => {
                ((levels.c_tail(self.k, x) - tail_hi) / den).clamp(0.0, 1.0)
            }
        }
    }

    fn quantile(&self, p: f64) -> f64 {
        match &self.kind {
            AngleKind::Uniform => self.lo + p * (self.hi - self.lo),
            AngleKind::Closed3 { den, levels, .. } => {
                let target = p * den;
                let x0 = levels.inverse(3, target).clamp(self.lo, self.hi);
                self.newton_closed3(x0, |x| c3(x) - target, 1.0)
            }
            AngleKind::Table { den, levels, .. } => {
                levels.inverse(self.k, p * den).clamp(self.lo, self.hi)
            }
        }
    }

    fn tail_quantile(&self, q: f64) -> f64 {
        match &self.kind {
            AngleKind::Uniform => self.hi - q * (self.hi - self.lo),
            _ if self.head_based() => self.quantile(1.0 - q),
            AngleKind::Closed3 { den, tail_hi, levels } => {
                let target = tail_hi + q * den;
                let x0 = levels.inverse_tail(3, target).clamp(self.lo, self.hi);
                self.newton_closed3(x0, |x| c3_tail(x) - target, -1.0)
            }
            AngleKind::Table { den, tail_hi, levels } => levels
                .inverse_tail(self.k, tail_hi + q * den)
                .clamp(self.lo, self.hi),
        }
    }
}

/// Numeric (tabulated-quadrature) evaluation of a marginal CDF.
///
/// `kind = Radial` evaluates `F_N(point)` with `point = r_N` and no
/// context. `kind = Angle(k)` evaluates the conditional CDF of `X_k`
/// (`φ_2` for `k = 2`) at `point`, with `context = r_N` when `k = N−1`
/// and `X_{k+1}` otherwise.
pub fn cdf_numeric(n: usize, kind: CdfKind, point: f64, context: Option<f64>) -> Result<NumericCdf> {
    let (value, abs_tol) = match kind {
        CdfKind::Radial => {
            let f = RadialCdf::numeric(n)?;
            let r = check_in(point, 0.0, max_radius(n), "radius")?;
            (f.cdf(r), f.abs_tol())
        }
        CdfKind::Angle(k) => {
            let ctx = context.ok_or_else(|| Error::Domain(format!("angle {k} needs a context")))?;
            let f = AngleCdf::numeric(n, k, ctx)?;
            let (lo, hi) = f.support();
            let x = check_in(point, lo, hi, "angle coordinate")?;
            (f.cdf(x), f.abs_tol())
        }
    };
    Ok(NumericCdf {
        value,
        abs_tol,
        warning: !(abs_tol <= NUMERIC_TARGET),
    })
}

/// Builds a persistable monotone table of a marginal. `N ≤ 4` uses the
/// closed forms for values and densities.
pub fn build_table(n: usize, kind: CdfKind, context: Option<f64>, spec: GridSpec) -> Result<CdfTable> {
    match kind {
        CdfKind::Radial => {
            let f = RadialCdf::new(n)?;
            let rmax = max_radius(n);
            let lv = shared_levels(n.max(3) - 1)?;
            let mut edges = vec![0.0];
            edges.extend(lv.radial_breakpoints(n));
            edges.push(rmax);
            let knots = graded_knots(&edges, spec);
            let total = if n > 4 { radial_tab(n)?.tab.total } else { 1.0 };
            let values = monotone_up(knots.iter().map(|&r| f.cdf(r)).collect());
            let tails = monotone_down(knots.iter().map(|&r| f.tail(r)).collect());
            let slopes: Vec<f64> = knots.iter().map(|&r| f.density(r)).collect();
            let curv: Vec<f64> = knots
                .iter()
                .map(|&r| match n {
                    2 => 0.0,
                    3 => closed::radial_n3_density_prime(r),
                    4 => closed::radial_n4_density_prime(r),
                    _ => lv.radial_integrand_prime(n, r) / total,
                })
                .collect();
            CdfTable::new(n, kind, None, f.method(), f.abs_tol(), knots, values, tails, slopes, curv)
        }
        CdfKind::Angle(k) => {
            let ctx = context.ok_or_else(|| Error::Domain(format!("angle {k} needs a context")))?;
            let f = AngleCdf::new(n, k, ctx)?;
            let (lo, hi) = f.support();
            let (knots, slopes, curv) = match &f.kind {
                AngleKind::Uniform => {
                    let m = spec.knots_per_piece.max(2);
                    let knots: Vec<f64> = if hi > lo {
                        (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64).collect()
                    } else {
                        vec![lo, lo + f64::EPSILON.max(lo.abs() * f64::EPSILON)]
                    };
                    let w = (knots[knots.len() - 1] - knots[0]).max(f64::MIN_POSITIVE);
                    let s = vec![1.0 / w; knots.len()];
                    let c = vec![0.0; knots.len()];
                    (knots, s, c)
                }
                AngleKind::Closed3 { den, levels, .. } | AngleKind::Table { den, levels, .. } => {
                    let mut edges = vec![lo];
                    edges.extend(levels.singular_points(k).iter().copied().filter(|&s| s > lo && s < hi));
                    edges.push(hi);
                    let knots = graded_knots(&edges, spec);
                    let s = knots.iter().map(|&x| levels.c_prime(k, x) / den).collect();
                    let c = knots.iter().map(|&x| c_second(levels, k, x) / den).collect();
                    (knots, s, c)
                }
            };
            let values = monotone_up(knots.iter().map(|&x| f.cdf(x)).collect());
            let tails = monotone_down(knots.iter().map(|&x| f.tail(x)).collect());
            CdfTable::new(n, kind, Some(ctx), f.method(), f.abs_tol(), knots, values, tails, slopes, curv)
        }
    }
}

/// Running maximum: removes rounding-level (~1e-16) decreases between
/// tightly clustered knots.
fn monotone_up(mut v: Vec<f64>) -> Vec<f64> {
    for i in 1..v.len() {
        v[i] = v[i].max(v[i - 1]);
    }
    v
}

/// Running minimum (for tail values).
fn monotone_down(mut v: Vec<f64>) -> Vec<f64> {
    for i in 1..v.len() {
        v[i] = v[i].min(v[i - 1]);
    }
    v
}

fn c_second(levels: &LevelTables, k: usize, x: f64) -> f64 {
    if k == 2 {
        return x * (1.0 - x * x).powf(-1.5);
    }
    levels::weight_prime(k, x) * levels.a(k - 1, x) + levels::weight(k, x) * levels.a_prime(k - 1, x)
}

/// Purity region label `i ∈ {1, …, N−1}`: `μ ∈ [1/(N−i+1), 1/(N−i)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegionId(pub usize);

impl RegionId {
    /// Purity interval of the region in dimension `n`.
    pub fn purity_range(self, n: usize) -> (f64, f64) {
        let i = self.0;
        (1.0 / (n - i + 1) as f64, 1.0 / (n - i) as f64)
    }
}

/// Probability mass of each purity region under the uniform measure.
pub fn region_shares(n: usize) -> Result<Vec<(RegionId, f64)>> {
    let f = RadialCdf::new(n)?;
    let radii = region_radii(n);
    let mut out = Vec::with_capacity(radii.len());
    let mut prev = 0.0;
    for (i, &r) in radii.iter().enumerate() {
        let cur = if i + 1 == radii.len() { 1.0 } else { f.cdf(r) };
        out.push((RegionId(i + 1), cur - prev));
        prev = cur;
    }
    Ok(out)
}

/// `P(μ ≥ mu)` under the uniform measure in dimension `n`.
pub fn tail_mass(n: usize, mu: f64) -> Result<f64> {
    if n == 2 {
        let m = check_in(mu, 0.5, 1.0, "purity")?;
        return Ok(closed::radial_n2_purity_tail(m));
    }
    RadialCdf::new(n)?.tail_purity(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_endpoints() {
        assert_eq!(cdf_r2(0.5).unwrap(), 0.0);
        assert_eq!(cdf_r2(1.0).unwrap(), 1.0);
        assert!((cdf_r2(0.75).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(cdf_r2(0.4).is_err());
        assert!((cdf_phi2_n3(FRAC_PI_3 / 2.0, 0.3).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(cdf_phi2_n3(FRAC_PI_3, max_radius(3)).unwrap(), 1.0);
        assert!(cdf_x3_n4(1.0 / 3.0, 0.2).unwrap().abs() < 1e-15);
        assert!((cdf_x3_n4(1.0, 0.2).unwrap() - 1.0).abs() < 1e-15);
        assert!(cdf_x3_n4(0.9, 0.7).is_err());
    }

    #[test]
    fn radial_inverse_roundtrip_all_backends() {
        for n in 2..=6 {
            let f = RadialCdf::new(n).unwrap();
            for &p in &[0.0, 1e-6, 0.1, 0.5, 0.85, 0.95, 0.999999, 1.0] {
                let r = invert_cdf(&f, p).unwrap();
                assert!((f.cdf(r) - p).abs() < 1e-10, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn region_shares_sum_to_one() {
        for n in 2..=6 {
            let s: f64 = region_shares(n).unwrap().iter().map(|x| x.1).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn angle_quantiles_invert() {
        for (n, k, ctx) in [(4, 3, 0.6), (4, 3, 0.3), (5, 4, 0.5), (5, 3, 0.5), (6, 4, 0.7), (4, 2, 0.5)] {
            let f = AngleCdf::new(n, k, ctx).unwrap();
            for &p in &[0.01, 0.3, 0.7, 0.95, 0.9999] {
                let x = invert_cdf(&f, p).unwrap();
                assert!((f.cdf(x) - p).abs() < 1e-10, "n={n} k={k} p={p}");
            }
        }
    }
}
