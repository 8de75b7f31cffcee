//! Induced eigenvalue measures: Hilbert–Schmidt and partial-trace.
//!
//! The partial-trace measure of a system of dimension `N` coupled to a
//! reservoir of dimension `K ≥ N` has eigenvalue density
//! `C_{N,K} Π_{j<k}(λ_j − λ_k)² Π_i λ_i^{K−N}` on the simplex (with respect
//! to `dλ_1 ⋯ dλ_{N−1}`); `K = N` gives the Hilbert–Schmidt measure.
//!
//! Purity marginals for `N = 3, 4` integrate the density over the chamber
//! angles in the coordinates of [`crate::chamber`], with Jacobian
//! `dλ_1 ⋯ dλ_{N−1} = r^{N−2} dr dΩ/√N` and a factor `N!` for the chambers.

use crate::cdf::levels::{graded_knots, tabulate_with, GridSpec, Tabulated};
use crate::chamber::{
    eigs_from_polar, level_cosine_bound, radius_from_purity, region_radii, top_cosine_bound,
    PolarCoords, SimplexPoint,
};
use crate::matrixcore::{ComplexMatrix, DensityMatrix};
use crate::quad::{gk15, QuadOptions};
use crate::rng::RngStream;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;
use std::collections::HashMap;
use std::f64::consts::FRAC_PI_3;
use std::sync::{Arc, Mutex, OnceLock};

/// System and reservoir dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedSpec {
    /// System dimension `N`.
    pub n: usize,
    /// Reservoir dimension `K`.
    pub k: usize,
}

impl InducedSpec {
    /// Validated spec (`K ≥ N ≥ 2`).
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("system dimension {n} < 2")));
        }
        if k < n {
            return Err(Error::Domain(format!("reservoir dimension {k} < system dimension {n}")));
        }
        Ok(Self { n, k })
    }
}

/// `ln C_{N,K} = ln Γ(NK) − Σ_{j=0}^{N−1} [ln Γ(K−j) + ln Γ(N−j+1)]`.
///
/// For `K = N` this is the Hilbert–Schmidt constant. The second gamma
/// factor depends on `N`, not `K`: with `Γ(K−j+1)` instead the density is
/// only normalised at `K = N` (the `N = 2` closed form fixes the choice).
pub fn ln_norm(spec: InducedSpec) -> f64 {
    let (n, k) = (spec.n, spec.k);
    let mut v = ln_gamma((n * k) as f64);
    for j in 0..n {
        v -= ln_gamma((k - j) as f64) + ln_gamma((n - j + 1) as f64);
    }
    v
}

/// Hilbert–Schmidt constant `Γ(N²)/Π_{k=1}^N Γ(k)Γ(k+1)`.
pub fn hs_norm(n: usize) -> f64 {
    ln_norm(InducedSpec { n, k: n }).exp()
}

/// Squared Vandermonde `Π_{j<k}(λ_j − λ_k)²`.
pub fn vandermonde_sq(lambdas: &[f64]) -> f64 {
    let mut v = 1.0;
    for j in 0..lambdas.len() {
        for k in j + 1..lambdas.len() {
            let d = lambdas[j] - lambdas[k];
            v *= d * d;
        }
    }
    v
}

/// Unnormalised partial-trace density `Π(λ_j − λ_k)² Π λ_i^{K−N}`.
pub fn trace_kernel(spec: InducedSpec, lambdas: &[f64]) -> f64 {
    let e = (spec.k - spec.n) as i32;
    let prod: f64 = if e == 0 { 1.0 } else { lambdas.iter().map(|&l| l.max(0.0).powi(e)).product() };
    vandermonde_sq(lambdas) * prod
}

/// Hilbert–Schmidt eigenvalue density.
pub fn p_hs(lambdas: &SimplexPoint) -> f64 {
    let n = lambdas.dim();
    hs_norm(n) * vandermonde_sq(lambdas.lambdas())
}

/// Partial-trace induced eigenvalue density.
pub fn p_trace(spec: InducedSpec, lambdas: &SimplexPoint) -> Result<f64> {
    let spec = InducedSpec::new(spec.n, spec.k)?;
    if lambdas.dim() != spec.n {
        return Err(Error::InvalidDimension(format!(
            "eigenvalue vector of length {} for N = {}",
            lambdas.dim(),
            spec.n
        )));
    }
    Ok(ln_norm(spec).exp() * trace_kernel(spec, lambdas.lambdas()))
}

/// Reduced state of a random pure state on `C^N ⊗ C^K` (Haar measure):
/// `ρ = G G†/Tr(G G†)` with `G` an `N × K` complex Gaussian matrix.
pub fn induced_state(spec: InducedSpec, rng: &mut RngStream) -> Result<DensityMatrix> {
    let (n, k) = (spec.n, spec.k);
    let g: Vec<Complex64> = (0..n * k).map(|_| Complex64::new(rng.normal(), rng.normal())).collect();
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (0..k).map(|l| g[i * k + l] * g[j * k + l].conj()).sum());
    let tr = m.trace().re;
    m = m.scale(Complex64::new(1.0 / tr, 0.0));
    DensityMatrix::new(m.hermitian_part())
}

/// Composite 15-point Kronrod rule on `pieces` equal panels; the angular
/// integrands are analytic on each integration piece.
fn panels(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, pieces: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / pieces as f64;
    (0..pieces).map(|i| gk15(&mut f, a + i as f64 * h, a + (i + 1) as f64 * h).0).sum()
}

const PANELS: usize = 3;

const OUTER: QuadOptions = QuadOptions {
    abs_tol: 1e-300,
    rel_tol: 1e-11,
    max_intervals: 16,
};

fn lambdas_at(n: usize, r: f64, phi2: f64, x: Vec<f64>) -> Option<Vec<f64>> {
    eigs_from_polar(&PolarCoords { dim: n, r, phi2, x }).ok().map(SimplexPoint::into_lambdas)
}

/// Angular integral of the kernel at radius `r`, times `r^{N−2}`.
fn radial_kernel(spec: InducedSpec, r: f64) -> f64 {
    let n = spec.n;
    match n {
        3 => {
            let lo = top_cosine_bound(3, r).acos();
            let v = panels(
                |phi| lambdas_at(3, r, phi, vec![]).map_or(0.0, |l| trace_kernel(spec, &l)),
                lo,
                FRAC_PI_3,
                PANELS,
            );
            r * v
        }
        4 => {
            let hi = top_cosine_bound(4, r);
            let kink = 1.0 / 3f64.sqrt();
            let inner = |x3: f64| {
                let lo = level_cosine_bound(2, x3).acos();
                panels(
                    |phi| lambdas_at(4, r, phi, vec![x3]).map_or(0.0, |l| trace_kernel(spec, &l)),
                    lo,
                    FRAC_PI_3,
                    PANELS,
                )
            };
            let v = if kink < hi {
                panels(inner, 1.0 / 3.0, kink, PANELS) + panels(inner, kink, hi, PANELS)
            } else {
                panels(inner, 1.0 / 3.0, hi, PANELS)
            };
            r * r * v
        }
        _ => f64::NAN,
    }
}

/// Purity marginal of the partial-trace measure.
#[derive(Debug, Clone)]
pub struct InducedMarginal {
    spec: InducedSpec,
    table: Option<(Tabulated, f64)>,
}

impl InducedMarginal {
    /// Builds the marginal (closed form for `N = 2`, tabulated quadrature
    /// for `N = 3, 4`).
    pub fn new(spec: InducedSpec) -> Result<Self> {
        let spec = InducedSpec::new(spec.n, spec.k)?;
        match spec.n {
            2 => Ok(Self { spec, table: None }),
            3 | 4 => {
                let n = spec.n;
                let scale = factorial(n) / (n as f64).sqrt() * ln_norm(spec).exp();
                let mut edges = vec![0.0];
                edges.extend(region_radii(n));
                let knots = graded_knots(&edges, GridSpec { knots_per_piece: 24, grading: 2.5 });
                let tab = tabulate_with(move |r| scale * radial_kernel(spec, r), |_| f64::NAN, knots, OUTER)?;
                Ok(Self {
                    spec,
                    table: Some((tab, scale)),
                })
            }
            _ => Err(Error::Unsupported(format!(
                "induced purity marginals are implemented for N <= 4, got {}",
                spec.n
            ))),
        }
    }

    /// Spec.
    pub fn spec(&self) -> InducedSpec {
        self.spec
    }

    /// Total probability mass of the implemented density (≈ 1; a
    /// normalisation self-check of the constants and Jacobians).
    pub fn total_mass(&self) -> f64 {
        match &self.table {
            None => 1.0,
            Some((t, _)) => t.total,
        }
    }

    /// Density in purity.
    pub fn pdf(&self, mu: f64) -> Result<f64> {
        let n = self.spec.n;
        let r = radius_from_purity(n, mu)?;
        match &self.table {
            None => {
                let k = self.spec.k as f64;
                let t = (2.0 * mu - 1.0).max(0.0);
                let ln_c = ln_gamma(2.0 * k) - (k - 1.0) * 2f64.ln() - ln_gamma(k) - ln_gamma(k - 1.0);
                let base = (1.0 - mu).max(0.0).powi(self.spec.k as i32 - 2);
                Ok(ln_c.exp() * base * t.sqrt())
            }
            Some((_, scale)) => {
                if r == 0.0 {
                    return Ok(0.0);
                }
                Ok(scale * radial_kernel(self.spec, r) / (2.0 * r))
            }
        }
    }

    /// CDF in purity.
    pub fn cdf(&self, mu: f64) -> Result<f64> {
        let n = self.spec.n;
        let r = radius_from_purity(n, mu)?;
        match &self.table {
            None => {
                let x = (2.0 * mu - 1.0).clamp(0.0, 1.0);
                Ok(beta_reg(1.5, self.spec.k as f64 - 1.0, x))
            }
            Some((t, _)) => Ok((t.head.eval(r) / t.total).clamp(0.0, 1.0)),
        }
    }

    /// Density of the Rényi-2 entropy `S₂ = −ln μ` (natural log):
    /// `P(μ = e^{−S₂}) e^{−S₂}`.
    pub fn renyi_pdf(&self, s2: f64) -> Result<f64> {
        let smax = (self.spec.n as f64).ln();
        if !(s2 >= -1e-12 && s2 <= smax + 1e-12) {
            return Err(Error::Domain(format!("Renyi entropy {s2} outside [0, ln {}]", self.spec.n)));
        }
        let mu = (-s2.clamp(0.0, smax)).exp().max(1.0 / self.spec.n as f64);
        Ok(self.pdf(mu)? * mu)
    }

    /// `(μ, pdf, cdf)` on `points` equally spaced purities.
    pub fn curve(&self, points: usize) -> Result<Vec<(f64, f64, f64)>> {
        let lo = 1.0 / self.spec.n as f64;
        (0..points.max(2))
            .map(|i| {
                let mu = lo + (1.0 - lo) * i as f64 / (points.max(2) - 1) as f64;
                Ok((mu, self.pdf(mu)?, self.cdf(mu)?))
            })
            .collect()
    }
}

/// Process-wide cache of built marginals.
pub fn marginal(spec: InducedSpec) -> Result<Arc<InducedMarginal>> {
    static CACHE: OnceLock<Mutex<HashMap<InducedSpec, Arc<InducedMarginal>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("induced cache poisoned").get(&spec) {
        return Ok(Arc::clone(m));
    }
    let m = Arc::new(InducedMarginal::new(spec)?);
    cache.lock().expect("induced cache poisoned").insert(spec, Arc::clone(&m));
    Ok(m)
}

/// Purity density of the partial-trace measure.
pub fn p_trace_mu(spec: InducedSpec, mu: f64) -> Result<f64> {
    marginal(spec)?.pdf(mu)
}

/// Purity CDF of the partial-trace measure.
pub fn f_trace_mu(spec: InducedSpec, mu: f64) -> Result<f64> {
    marginal(spec)?.cdf(mu)
}

/// Rényi-2 density for `N = 2` (closed form).
pub fn p_trace_renyi(spec: InducedSpec, s2: f64) -> Result<f64> {
    if spec.n != 2 {
        return Err(Error::Unsupported("the Renyi-entropy density is implemented for N = 2".into()));
    }
    marginal(spec)?.renyi_pdf(s2)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hs_constants() {
        assert!((hs_norm(2) - 3.0).abs() < 1e-12);
        // Γ(9)/(Γ1Γ2 · Γ2Γ3 · Γ3Γ4) = 40320/(1·2·12) = 1680.
        assert!((hs_norm(3) - 1680.0).abs() < 1e-8);
    }

    #[test]
    fn n2_examples() {
        let s = SimplexPoint::new(vec![1.0, 0.0]).unwrap();
        let t = SimplexPoint::new(vec![0.75, 0.25]).unwrap();
        assert!((p_hs(&s) / p_hs(&t) - 4.0).abs() < 1e-12);
        assert_eq!(p_trace(InducedSpec::new(2, 4).unwrap(), &s).unwrap(), 0.0);
        let m = InducedMarginal::new(InducedSpec::new(2, 2).unwrap()).unwrap();
        assert!((m.pdf(1.0).unwrap() - 3.0).abs() < 1e-12);
        assert!((m.cdf(1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((m.cdf(0.75).unwrap() - 0.5f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn n3_vandermonde_in_polar_form() {
        // With the alternative radius ρ = √6 r (eigenvalues
        // λ_{1,2} = (2 + ρ cos φ ± √3 ρ sin φ)/6, λ_3 = (1 − ρ cos φ)/3)
        // the squared Vandermonde reads ρ⁶ sin²(3φ)/432.
        let spec = InducedSpec::new(3, 3).unwrap();
        for &(r, phi) in &[(0.1f64, 0.3f64), (0.3, 0.9), (0.5, 1.0), (0.8, 1.04)] {
            let rho: f64 = 6f64.sqrt() * r;
            let expect = rho.powi(6) * (3.0 * phi).sin().powi(2) / 432.0;
            if let Some(l) = lambdas_at(3, r, phi, vec![]) {
                assert!((trace_kernel(spec, &l) - expect).abs() < 1e-14, "{r} {phi}");
            }
            let (c, s) = (phi.cos(), phi.sin());
            let alt = [
                (2.0 + rho * c + 3f64.sqrt() * rho * s) / 6.0,
                (2.0 + rho * c - 3f64.sqrt() * rho * s) / 6.0,
                (1.0 - rho * c) / 3.0,
            ];
            assert!((vandermonde_sq(&alt) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn reservoir_equal_to_system_is_hilbert_schmidt() {
        let mut rng = RngStream::new(3, 1);
        for n in 2..=4 {
            for _ in 0..100 {
                let x: Vec<f64> = (0..n).map(|_| rng.uniform().max(1e-3)).collect();
                let t: f64 = x.iter().sum();
                let s = SimplexPoint::from_unsorted(x.iter().map(|v| v / t).collect()).unwrap();
                let a = p_trace(InducedSpec::new(n, n).unwrap(), &s).unwrap();
                let b = p_hs(&s);
                assert!((a - b).abs() <= 1e-10 * b.max(1.0));
            }
        }
    }

    #[test]
    fn n2_normalisation_and_renyi() {
        for k in [2, 3, 4, 7] {
            let spec = InducedSpec::new(2, k).unwrap();
            let m = marginal(spec).unwrap();
            let mass = crate::quad::integrate(|mu| m.pdf(mu).unwrap(), 0.5, 1.0, &[], QuadOptions::default());
            assert!((mass.value - 1.0).abs() < 1e-8, "K={k}: {}", mass.value);
            let rmass = crate::quad::integrate(
                |s| p_trace_renyi(spec, s).unwrap(),
                0.0,
                2f64.ln(),
                &[],
                QuadOptions::default(),
            );
            assert!((rmass.value - 1.0).abs() < 1e-9, "K={k}: {}", rmass.value);
            assert!((m.cdf(1.0).unwrap() - 1.0).abs() < 1e-10);
            if k > 2 {
                assert_eq!(p_trace_renyi(spec, 0.0).unwrap(), 0.0);
            }
        }
        assert!(p_trace_renyi(InducedSpec::new(2, 2).unwrap(), 1.0).is_err());
    }

    #[test]
    fn n2_renyi_mode_maps_from_purity_mode() {
        // K = 3: P(μ) ∝ (1−μ)√(2μ−1), mode at μ = 2/3; in S₂ the extra
        // factor e^{−S₂} moves it; compare against a dense scan of both.
        let spec = InducedSpec::new(2, 3).unwrap();
        let m = marginal(spec).unwrap();
        let scan = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
            (0..=200_000)
                .map(|i| lo + (hi - lo) * i as f64 / 200_000.0)
                .max_by(|a, b| f(*a).partial_cmp(&f(*b)).unwrap())
                .unwrap()
        };
        let s_mode = scan(&|s| m.renyi_pdf(s).unwrap(), 0.0, 2f64.ln());
        // The S₂-mode is the maximiser of μ·P(μ) mapped through −ln μ.
        let mu_mode = scan(&|mu| mu * m.pdf(mu).unwrap(), 0.5, 1.0);
        assert!((s_mode + mu_mode.ln()).abs() < 1e-4);
        let plain = scan(&|mu| m.pdf(mu).unwrap(), 0.5, 1.0);
        assert!((plain - 2.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn n3_normalisation_and_dominance() {
        let ms: Vec<_> = [3, 6, 9].iter().map(|&k| marginal(InducedSpec::new(3, k).unwrap()).unwrap()).collect();
        for m in &ms {
            assert!((m.total_mass() - 1.0).abs() < 1e-8);
        }
        let mut prev = vec![0.0; 3];
        for i in 0..=100 {
            let mu = 1.0 / 3.0 + (2.0 / 3.0) * i as f64 / 100.0;
            let f: Vec<f64> = ms.iter().map(|m| m.cdf(mu).unwrap()).collect();
            assert!(f[2] >= f[1] - 1e-12 && f[1] >= f[0] - 1e-12, "{mu} {f:?}");
            for j in 0..3 {
                assert!(f[j] >= prev[j] - 1e-12);
            }
            prev = f;
        }
    }

    #[test]
    fn k_below_n_rejected() {
        assert!(InducedSpec::new(3, 2).is_err());
        assert!(matches!(InducedMarginal::new(InducedSpec { n: 5, k: 5 }), Err(Error::Unsupported(_))));
    }
}
