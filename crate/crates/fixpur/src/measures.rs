//! Entanglement and correlation measures on bipartite density matrices.
//!
//! Entropies are in bits. Eigenvalues below `1e-14` contribute nothing to
//! entropies (`0 log 0 = 0`).

use crate::matrixcore::{eigvalsh, ginibre, hermitian_function, unitary_exp, ComplexMatrix, DensityMatrix};
use crate::rng::RngStream;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Eigenvalues below this are ignored by entropies.
pub const ENTROPY_FLOOR: f64 = 1e-14;

/// Bipartition `N = d_a · d_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteSplit {
    /// Dimension of subsystem a.
    pub dim_a: usize,
    /// Dimension of subsystem b.
    pub dim_b: usize,
}

impl BipartiteSplit {
    /// Validated split (both factors at least 2).
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a < 2 || dim_b < 2 {
            return Err(Error::InvalidDimension(format!("split {dim_a}x{dim_b}: factors must be >= 2")));
        }
        Ok(Self { dim_a, dim_b })
    }

    /// Two qubits.
    pub fn qubits() -> Self {
        Self { dim_a: 2, dim_b: 2 }
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    fn check(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::InvalidDimension(format!(
                "split {}x{} does not match dimension {}",
                self.dim_a,
                self.dim_b,
                rho.dim()
            )));
        }
        Ok(())
    }
}

/// Which subsystem to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    /// Keep a (trace out b).
    A,
    /// Keep b (trace out a).
    B,
}

/// Purity `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Shannon entropy (bits) of a probability vector.
pub fn shannon(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > ENTROPY_FLOOR)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy in bits.
pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    shannon(&rho.eigenvalues())
}

/// Partial trace over the subsystem not kept.
pub fn partial_trace(rho: &DensityMatrix, split: BipartiteSplit, keep: Keep) -> Result<DensityMatrix> {
    split.check(rho)?;
    let (da, db) = (split.dim_a, split.dim_b);
    let m = rho.matrix();
    let out = match keep {
        Keep::A => ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()),
        Keep::B => ComplexMatrix::from_fn(db, db, |i, j| (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()),
    };
    DensityMatrix::new(out)
}

/// Partial transpose over subsystem b.
pub fn partial_transpose(rho: &DensityMatrix, split: BipartiteSplit) -> Result<ComplexMatrix> {
    split.check(rho)?;
    let db = split.dim_b;
    let m = rho.matrix();
    let n = split.dim();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (ia, ib) = (r / db, r % db);
        let (ja, jb) = (c / db, c % db);
        m[(ia * db + jb, ja * db + ib)]
    }))
}

/// Two-qubit concurrence (Wootters).
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension(format!("concurrence needs a 4x4 state, got {}", rho.dim())));
    }
    // σ_y ⊗ σ_y is real with entries ±1 on the anti-diagonal.
    let yy = ComplexMatrix::from_fn(4, 4, |i, j| {
        if i + j == 3 {
            Complex64::new(if i == 0 || i == 3 { -1.0 } else { 1.0 }, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let m = rho.matrix();
    let tilde = &(&yy * &m.conj()) * &yy;
    let sq = hermitian_function(m, |x| x.max(0.0).sqrt())?;
    let r = (&(&sq * &tilde) * &sq).hermitian_part();
    let mut s: Vec<f64> = eigvalsh(&r)?.into_iter().map(|x| x.max(0.0).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

/// Negativity: sum of the magnitudes of the negative eigenvalues of the
/// partial transpose.
pub fn negativity(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    let pt = partial_transpose(rho, split)?;
    Ok(eigvalsh(&pt)?.into_iter().filter(|&x| x < 0.0).map(|x| -x).sum())
}

/// Logarithmic negativity `log₂(1 + 2𝒩)`.
pub fn log_negativity(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    Ok((1.0 + 2.0 * negativity(rho, split)?).log2())
}

/// Linear-entropy witness
/// `max(0, [(μ_ab − 1/N) − (μ_a − 1/N_a)]/(1 − 1/N))`.
pub fn delta_le(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    let rho_a = partial_trace(rho, split, Keep::A)?;
    let n = split.dim() as f64;
    let na = split.dim_a as f64;
    let v = ((rho.purity() - 1.0 / n) - (rho_a.purity() - 1.0 / na)) / (1.0 - 1.0 / n);
    Ok(v.max(0.0))
}

/// Concave variant `√(2(1 − μ_a)·ΔLE)`.
pub fn delta_le_prime(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    let rho_a = partial_trace(rho, split, Keep::A)?;
    let d = delta_le(rho, split)?;
    Ok((2.0 * (1.0 - rho_a.purity()).max(0.0) * d).sqrt())
}

/// Quantum mutual information `S(A) + S(B) − S(AB)`.
pub fn qmi(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    let a = partial_trace(rho, split, Keep::A)?;
    let b = partial_trace(rho, split, Keep::B)?;
    Ok((vn_entropy(&a) + vn_entropy(&b) - vn_entropy(rho)).max(0.0))
}

/// Orthonormal projective measurement basis (vectors as rows).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<Vec<Complex64>>,
}

/// Tolerance on orthonormality of a measurement basis.
pub const BASIS_TOL: f64 = 1e-12;

impl MeasurementBasis {
    /// Validates completeness and orthonormality.
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidDimension("basis must be d vectors of length d".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let ip: Complex64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a.conj() * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (ip - want).norm() > BASIS_TOL {
                    return Err(Error::InvalidMatrix("basis is not orthonormal".into()));
                }
            }
        }
        Ok(Self { vectors })
    }

    /// Computational basis (`Z` eigenbasis for a qubit).
    pub fn computational(d: usize) -> Self {
        Self {
            vectors: (0..d)
                .map(|i| (0..d).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
                .collect(),
        }
    }

    /// Discrete Fourier basis (`X` eigenbasis for a qubit); mutually
    /// unbiased with the computational basis.
    pub fn fourier(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        Self {
            vectors: (0..d)
                .map(|k| {
                    (0..d)
                        .map(|j| Complex64::from_polar(s, 2.0 * PI * (j * k) as f64 / d as f64))
                        .collect()
                })
                .collect(),
        }
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Basis vectors.
    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }
}

/// Joint outcome distribution `P(i, j) = ⟨a_i b_j|ρ|a_i b_j⟩`.
pub fn joint_distribution(
    rho: &DensityMatrix,
    split: BipartiteSplit,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<Vec<Vec<f64>>> {
    split.check(rho)?;
    if basis_a.dim() != split.dim_a || basis_b.dim() != split.dim_b {
        return Err(Error::InvalidDimension("basis dimensions do not match the split".into()));
    }
    let m = rho.matrix();
    let mut out = vec![vec![0.0; split.dim_b]; split.dim_a];
    for (i, a) in basis_a.vectors.iter().enumerate() {
        for (j, b) in basis_b.vectors.iter().enumerate() {
            let v: Vec<Complex64> = a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect();
            let mv = m.mul_vec(&v);
            let p: Complex64 = v.iter().zip(&mv).map(|(x, y)| x.conj() * y).sum();
            out[i][j] = p.re.max(0.0);
        }
    }
    Ok(out)
}

/// Classical mutual information of joint local measurements.
pub fn cmi(
    rho: &DensityMatrix,
    split: BipartiteSplit,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<f64> {
    let p = joint_distribution(rho, split, basis_a, basis_b)?;
    let pa: Vec<f64> = p.iter().map(|r| r.iter().sum()).collect();
    let pb: Vec<f64> = (0..split.dim_b).map(|j| p.iter().map(|r| r[j]).sum()).collect();
    let pab: Vec<f64> = p.iter().flatten().copied().collect();
    Ok((shannon(&pa) + shannon(&pb) - shannon(&pab)).max(0.0))
}

/// `CMI(Z,Z) + CMI(X,X)` with the computational basis and its Fourier
/// conjugate on each side.
pub fn cmi_zx(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    let (za, zb) = (MeasurementBasis::computational(split.dim_a), MeasurementBasis::computational(split.dim_b));
    let (xa, xb) = (MeasurementBasis::fourier(split.dim_a), MeasurementBasis::fourier(split.dim_b));
    Ok(cmi(rho, split, &za, &zb)? + cmi(rho, split, &xa, &xb)?)
}

/// Quantum discord and classical correlation with the measurement on b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discord {
    /// Discord `𝒬 = I − 𝒥`.
    pub discord: f64,
    /// Classical correlation `𝒥`.
    pub classical: f64,
    /// Mutual information `I(A:B)`.
    pub qmi: f64,
    /// Optimal Bloch angles `(θ, φ)` of the measurement on b.
    pub angles: (f64, f64),
}

fn conditional_entropy_after(m: &ComplexMatrix, da: usize, theta: f64, phi: f64) -> f64 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = Complex64::from_polar(1.0, phi);
    let kets = [[Complex64::new(c, 0.0), e * s], [Complex64::new(s, 0.0), -e * c]];
    let mut total = 0.0;
    for psi in &kets {
        let sigma = ComplexMatrix::from_fn(da, da, |a, a2| {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..2 {
                for b2 in 0..2 {
                    acc += psi[b].conj() * m[(a * 2 + b, a2 * 2 + b2)] * psi[b2];
                }
            }
            acc
        });
        let ev = eigvalsh(&sigma.hermitian_part()).expect("Jacobi converges on Hermitian input");
        let p: f64 = ev.iter().map(|x| x.max(0.0)).sum();
        if p > ENTROPY_FLOOR {
            total += ev
                .iter()
                .filter(|&&x| x > ENTROPY_FLOOR)
                .map(|&x| -x * (x / p).log2())
                .sum::<f64>();
        }
    }
    total
}

/// Nelder–Mead minimisation in two dimensions.
fn nelder_mead(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], step: f64, tol: f64, max_iter: usize) -> ([f64; 2], f64) {
    let mut simplex = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut vals = simplex.map(&f);
    for _ in 0..max_iter {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = idx.map(|i| simplex[i]);
        vals = idx.map(|i| vals[i]);
        if (vals[2] - vals[0]).abs() < tol {
            break;
        }
        let cen = [(simplex[0][0] + simplex[1][0]) / 2.0, (simplex[0][1] + simplex[1][1]) / 2.0];
        let at = |t: f64| [cen[0] + t * (simplex[2][0] - cen[0]), cen[1] + t * (simplex[2][1] - cen[1])];
        let xr = at(-1.0);
        let fr = f(xr);
        if fr < vals[0] {
            let xe = at(-2.0);
            let fe = f(xe);
            if fe < fr {
                simplex[2] = xe;
                vals[2] = fe;
            } else {
                simplex[2] = xr;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = xr;
            vals[2] = fr;
        } else {
            let xc = if fr < vals[2] { at(-0.5) } else { at(0.5) };
            let fc = f(xc);
            if fc < vals[2].min(fr) {
                simplex[2] = xc;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        (simplex[0][0] + simplex[i][0]) / 2.0,
                        (simplex[0][1] + simplex[i][1]) / 2.0,
                    ];
                    vals[i] = f(simplex[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).expect("simplex has 3 points");
    (simplex[best], vals[best])
}

/// Grid resolution of the discord search (θ × φ).
pub const DISCORD_GRID: (usize, usize) = (48, 96);

/// Discord and classical correlation for a state whose subsystem b is a
/// qubit, optimising projective measurements on b over the Bloch sphere.
pub fn discord_and_classical(rho: &DensityMatrix, split: BipartiteSplit) -> Result<Discord> {
    split.check(rho)?;
    if split.dim_b != 2 {
        return Err(Error::Unsupported("discord needs a qubit on the measured side".into()));
    }
    let da = split.dim_a;
    let m = rho.matrix().clone();
    let s_a = vn_entropy(&partial_trace(rho, split, Keep::A)?);
    let i_ab = qmi(rho, split)?;
    let cost = |x: [f64; 2]| conditional_entropy_after(&m, da, x[0], x[1]);
    let (nt, np) = DISCORD_GRID;
    let mut grid: Vec<([f64; 2], f64)> = Vec::with_capacity(nt * np);
    for i in 0..nt {
        let theta = PI * i as f64 / (nt - 1) as f64;
        for j in 0..np {
            let phi = 2.0 * PI * j as f64 / np as f64;
            grid.push(([theta, phi], cost([theta, phi])));
        }
    }
    grid.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut best = grid[0];
    for g in grid.iter().take(3) {
        let (x, v) = nelder_mead(cost, g.0, PI / nt as f64, 1e-12, 400);
        if v < best.1 {
            best = (x, v);
        }
    }
    let classical = (s_a - best.1).clamp(0.0, i_ab);
    Ok(Discord {
        discord: i_ab - classical,
        classical,
        qmi: i_ab,
        angles: (best.0[0], best.0[1]),
    })
}

/// Minimum joint entropy (bits) compatible with purity `mu`:
/// `[−(1−g) log((1−g)/(1+κ)) − (κ+g) log((κ+g)/(κ(1+κ)))]/(1+κ)` with
/// `κ = ⌊1/μ⌋` and `g = √(κ(μ(κ+1) − 1))`.
pub fn s_min_bound(mu: f64, n: usize) -> Result<f64> {
    let lo = 1.0 / n as f64;
    if !(mu >= lo - 1e-12 && mu <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("purity {mu} outside [1/{n}, 1]")));
    }
    let mu = mu.clamp(lo, 1.0);
    let kappa = (1.0 / mu + 1e-12).floor().min(n as f64);
    let g = (kappa * (mu * (kappa + 1.0) - 1.0)).max(0.0).sqrt().min(1.0);
    let term = |a: f64, b: f64| if a <= 0.0 { 0.0 } else { -a * (a / b).log2() };
    let v = (term(1.0 - g, 1.0 + kappa) + term(kappa + g, kappa * (1.0 + kappa))) / (1.0 + kappa);
    Ok(v.max(0.0))
}

/// Upper bound on the two-qubit QMI at joint purity `mu`:
/// `2 − S_min(μ)`.
pub fn max_qmi_curve(mu: f64) -> Result<f64> {
    Ok(2.0 - s_min_bound(mu, 4)?)
}

/// Werner state parameters: local dimension `d` and weight `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerSpec {
    /// Local dimension.
    pub d: usize,
    /// Weight of the maximally entangled state.
    pub p: f64,
}

impl WernerSpec {
    /// Validated spec.
    pub fn new(d: usize, p: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(format!("local dimension {d} < 2")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("weight {p} outside [0, 1]")));
        }
        Ok(Self { d, p })
    }
}

/// `p |Φ⁺⟩⟨Φ⁺| + (1 − p) I/d²` with `|Φ⁺⟩ = Σ_i |ii⟩/√d`.
pub fn werner_state(spec: WernerSpec) -> Result<DensityMatrix> {
    let WernerSpec { d, p } = WernerSpec::new(spec.d, spec.p)?;
    let n = d * d;
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        let mut v = 0.0;
        if r % (d + 1) == 0 && c % (d + 1) == 0 {
            v += p / d as f64;
        }
        if r == c {
            v += (1.0 - p) / n as f64;
        }
        Complex64::new(v, 0.0)
    });
    DensityMatrix::new(m)
}

/// Analytic Werner negativity `max(0, ½((d−1)/d)((d+1)p − 1))`.
pub fn werner_negativity(spec: WernerSpec) -> Result<f64> {
    let WernerSpec { d, p } = WernerSpec::new(spec.d, spec.p)?;
    let df = d as f64;
    Ok((0.5 * ((df - 1.0) / df) * ((df + 1.0) * p - 1.0)).max(0.0))
}

/// Analytic Werner logarithmic negativity.
pub fn werner_ln(spec: WernerSpec) -> Result<f64> {
    Ok((1.0 + 2.0 * werner_negativity(spec)?).log2())
}

/// Werner purity `(1 + (d² − 1)p²)/d²`.
pub fn werner_purity(spec: WernerSpec) -> Result<f64> {
    let WernerSpec { d, p } = WernerSpec::new(spec.d, spec.p)?;
    let d2 = (d * d) as f64;
    Ok((1.0 + (d2 - 1.0) * p * p) / d2)
}

/// Weight `p = √((d²μ − 1)/(d² − 1))` of the Werner state with purity `mu`.
pub fn werner_p_of_mu(d: usize, mu: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!("local dimension {d} < 2")));
    }
    let d2 = (d * d) as f64;
    if !(mu >= 1.0 / d2 - 1e-12 && mu <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("purity {mu} outside [1/{d2}, 1]")));
    }
    Ok(((d2 * mu - 1.0) / (d2 - 1.0)).max(0.0).sqrt().min(1.0))
}

/// Purity `2/(d(d+1))` at which the Werner state becomes separable.
pub fn werner_mu_star(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!("local dimension {d} < 2")));
    }
    let df = d as f64;
    Ok(2.0 / (df * (df + 1.0)))
}

/// Gaussian Hermitian matrix `(G + G†)/2` with `G` Ginibre.
pub fn gaussian_hermitian(n: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    Ok(ginibre(n, rng)?.hermitian_part())
}

/// `U ρ U†` with `U = exp(−iεH)` for a fresh Gaussian Hermitian `H`.
pub fn perturb_unitarily(rho: &DensityMatrix, eps: f64, rng: &mut RngStream) -> Result<DensityMatrix> {
    let h = gaussian_hermitian(rho.dim(), rng)?;
    rho.conjugate(&unitary_exp(&h, eps)?)
}

/// Maximally entangled state `Σ_i |ii⟩/√d`.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    let mut psi = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        psi[i * (d + 1)] = Complex64::new(1.0, 0.0);
    }
    DensityMatrix::pure(&psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> DensityMatrix {
        max_entangled(2).unwrap()
    }

    fn product(a: [f64; 2], b: [f64; 2]) -> DensityMatrix {
        let ka = DensityMatrix::pure(&[Complex64::new(a[0], 0.0), Complex64::new(a[1], 0.0)]).unwrap();
        let kb = DensityMatrix::pure(&[Complex64::new(b[0], 0.0), Complex64::new(b[1], 0.0)]).unwrap();
        ka.kron(&kb)
    }

    #[test]
    fn entropy_examples() {
        assert!((vn_entropy(&DensityMatrix::maximally_mixed(4)) - 2.0).abs() < 1e-12);
        assert!(vn_entropy(&bell()).abs() < 1e-12);
        let d = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0])).unwrap();
        assert!((vn_entropy(&d) - 1.0).abs() < 1e-12);
        assert!((purity(&d) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn bell_fixture() {
        let s = BipartiteSplit::qubits();
        let b = bell();
        let ra = partial_trace(&b, s, Keep::A).unwrap();
        assert!(ra.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
        assert!((concurrence(&b).unwrap() - 1.0).abs() < 1e-7);
        assert!((log_negativity(&b, s).unwrap() - 1.0).abs() < 1e-12);
        assert!((qmi(&b, s).unwrap() - 2.0).abs() < 1e-12);
        assert!((cmi_zx(&b, s).unwrap() - 2.0).abs() < 1e-12);
        assert!((delta_le(&b, s).unwrap() - 1.0).abs() < 1e-12);
        let dc = discord_and_classical(&b, s).unwrap();
        assert!((dc.discord - 1.0).abs() < 1e-7 && (dc.classical - 1.0).abs() < 1e-7);
    }

    #[test]
    fn product_state_fixture() {
        let s = BipartiteSplit::qubits();
        let p = product([0.6, 0.8], [1.0, 0.0]);
        let ra = partial_trace(&p, s, Keep::A).unwrap();
        let want = DensityMatrix::pure(&[Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)]).unwrap();
        assert!(ra.matrix().max_abs_diff(want.matrix()) < 1e-15);
        assert!(qmi(&p, s).unwrap().abs() < 1e-12);
        assert!(negativity(&p, s).unwrap().abs() < 1e-12);
        // A pure product state is not entangled, yet the witness reads 1/3.
        assert!((delta_le(&p, s).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn classical_state_discord() {
        let s = BipartiteSplit::qubits();
        let d = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        let dc = discord_and_classical(&d, s).unwrap();
        assert!(dc.discord.abs() < 1e-7 && (dc.classical - 1.0).abs() < 1e-7);
        let m = discord_and_classical(&DensityMatrix::maximally_mixed(4), s).unwrap();
        assert!(m.discord.abs() < 1e-9 && m.classical.abs() < 1e-9);
    }

    #[test]
    fn werner_oracles() {
        for &d in &[2usize, 3, 4] {
            for i in 0..=10 {
                let p = i as f64 / 10.0;
                let spec = WernerSpec::new(d, p).unwrap();
                let w = werner_state(spec).unwrap();
                let split = BipartiteSplit::new(d, d).unwrap();
                assert!((negativity(&w, split).unwrap() - werner_negativity(spec).unwrap()).abs() < 1e-10);
                let mu = werner_purity(spec).unwrap();
                assert!((w.purity() - mu).abs() < 1e-14);
                assert!((werner_p_of_mu(d, mu).unwrap() - p).abs() < 1e-7);
            }
        }
        assert!((werner_mu_star(2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(werner_p_of_mu(2, 1.0).unwrap(), 1.0);
        let c = concurrence(&werner_state(WernerSpec::new(2, 0.5).unwrap()).unwrap()).unwrap();
        assert!((c - 0.25).abs() < 1e-10);
    }

    #[test]
    fn s_min_examples() {
        assert!(s_min_bound(1.0, 4).unwrap().abs() < 1e-12);
        assert!((s_min_bound(0.25, 4).unwrap() - 2.0).abs() < 1e-12);
        assert!((s_min_bound(0.5, 4).unwrap() - 1.0).abs() < 1e-12);
        assert!((max_qmi_curve(1.0 / 3.0).unwrap() - (2.0 - 3f64.log2())).abs() < 1e-12);
        assert!(s_min_bound(0.2, 4).is_err());
    }

    #[test]
    fn bases_are_unbiased() {
        for d in 2..5 {
            let z = MeasurementBasis::computational(d);
            let x = MeasurementBasis::fourier(d);
            assert!(MeasurementBasis::new(x.vectors().to_vec()).is_ok());
            for a in z.vectors() {
                for b in x.vectors() {
                    let ip: Complex64 = a.iter().zip(b).map(|(p, q)| p.conj() * q).sum();
                    assert!((ip.norm_sqr() - 1.0 / d as f64).abs() < 1e-12);
                }
            }
        }
    }
}
