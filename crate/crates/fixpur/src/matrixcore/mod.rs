//! Complex linear algebra primitives and random-matrix generators.
//!
//! Provides Ginibre matrices, Haar-distributed unitaries (QR of a Ginibre
//! matrix with the phase fix that makes `R` positive on its diagonal),
//! uniformly distributed simplex eigenvalues and unconstrained random
//! density matrices.

mod linalg;
mod matrix;

pub use linalg::{
    determinant, eigh, eigvalsh, hermitian_function, householder_qr, unitary_exp, Eigh, Qr,
    JACOBI_TOL,
};
pub use matrix::ComplexMatrix;

use crate::chamber::SimplexPoint;
use crate::rng::RngStream;
use crate::{Error, Result};
use num_complex::Complex64;

/// Tolerance on Hermiticity and trace accepted when wrapping a matrix.
pub const STRUCTURE_TOL: f64 = 1e-10;
/// Most negative eigenvalue that is silently clipped to zero.
pub const NEGATIVE_CLIP: f64 = 1e-10;

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a matrix.
    ///
    /// The matrix is symmetrised, eigenvalues in `[−1e-10, 0)` are clipped to
    /// zero and the trace is renormalised; larger violations are errors.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::InvalidDimension("density matrix must be square and non-empty".into()));
        }
        let defect = matrix.hermiticity_defect();
        if defect > STRUCTURE_TOL {
            return Err(Error::InvalidMatrix(format!("not Hermitian (defect {defect:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURE_TOL || tr.im.abs() > STRUCTURE_TOL {
            return Err(Error::InvalidMatrix(format!("trace {tr} is not 1")));
        }
        let h = matrix.hermitian_part();
        let e = eigh(&h)?;
        let min = e.values.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -NEGATIVE_CLIP {
            return Err(Error::InvalidMatrix(format!("negative eigenvalue {min:e}")));
        }
        if min < 0.0 {
            let mut d: Vec<f64> = e.values.iter().map(|&x| x.max(0.0)).collect();
            let s: f64 = d.iter().sum();
            d.iter_mut().for_each(|x| *x /= s);
            return Ok(Self {
                matrix: ComplexMatrix::conjugate_diagonal(&e.vectors, &d).hermitian_part(),
            });
        }
        let s = h.trace().re;
        Ok(Self {
            matrix: h.scale(Complex64::new(1.0 / s, 0.0)),
        })
    }

    /// Builds `U · diag(p) · U†` from a unitary and a probability vector.
    pub fn from_spectrum(u: &ComplexMatrix, p: &[f64]) -> Result<Self> {
        if p.iter().any(|&x| x < -NEGATIVE_CLIP) {
            return Err(Error::InvalidMatrix("negative spectrum entry".into()));
        }
        let mut d: Vec<f64> = p.iter().map(|&x| x.max(0.0)).collect();
        let s: f64 = d.iter().sum();
        if (s - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::InvalidMatrix(format!("spectrum sums to {s}")));
        }
        d.iter_mut().for_each(|x| *x /= s);
        Ok(Self {
            matrix: ComplexMatrix::conjugate_diagonal(u, &d).hermitian_part(),
        })
    }

    /// Pure state `|ψ⟩⟨ψ|` (the vector is normalised first).
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Domain("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self {
            matrix: ComplexMatrix::projector(&v),
        })
    }

    /// Maximally mixed state of dimension `n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale(Complex64::new(1.0 / n as f64, 0.0)),
        }
    }

    /// Dimension `N`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.matrix).expect("Jacobi converges on Hermitian input")
    }

    /// Purity `Tr ρ²`, computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Conjugation `U ρ U†`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = &(u * &self.matrix) * &u.adjoint();
        DensityMatrix::new(m)
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

/// `n × n` Ginibre matrix with entries `(g₁ + i g₂)/√2`.
pub fn ginibre(n: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension("n must be at least 1".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.normal() * s, rng.normal() * s)
    }))
}

/// Maximum number of redraws when a Ginibre matrix is numerically singular.
pub const HAAR_RETRIES: usize = 3;

/// Haar-distributed unitary via QR of a Ginibre matrix.
///
/// The columns of `Q` are multiplied by `R_ii/|R_ii|`, which makes the
/// decomposition unique (positive diagonal of the triangular factor) and the
/// result exactly Haar distributed.
pub fn haar_unitary(n: usize, rng: &mut RngStream) -> Result<ComplexMatrix> {
    for _ in 0..=HAAR_RETRIES {
        let z = ginibre(n, rng)?;
        match householder_qr(&z) {
            Ok(Qr { q, r }) => {
                let phases: Vec<Complex64> = (0..n).map(|i| r[(i, i)] / r[(i, i)].norm()).collect();
                return Ok(ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]));
            }
            Err(Error::Numerical(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Numerical("QR failed repeatedly on fresh Ginibre draws".into()))
}

/// Uniformly distributed point of the eigenvalue simplex, sorted into the
/// Weyl chamber.
///
/// Uses the stick-breaking construction
/// `λ_k = (1 − ξ_k^{1/(n−k)})(1 − Σ_{i<k} λ_i)`.
pub fn simplex_eigs(n: usize, rng: &mut RngStream) -> Result<SimplexPoint> {
    let raw = simplex_eigs_unsorted(n, rng)?;
    SimplexPoint::from_unsorted(raw)
}

/// The stick-breaking draw before sorting (uniform on the full simplex).
pub fn simplex_eigs_unsorted(n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidDimension("simplex sampling needs n >= 2".into()));
    }
    let mut lambdas = Vec::with_capacity(n);
    let mut remaining = 1.0;
    for k in 1..n {
        let xi = rng.uniform();
        let l = (1.0 - xi.powf(1.0 / (n - k) as f64)) * remaining;
        lambdas.push(l);
        remaining -= l;
    }
    lambdas.push(1.0 - lambdas.iter().sum::<f64>());
    Ok(lambdas)
}

/// Unconstrained random density matrix `U diag(|row of U′|²) U†`.
pub fn random_density(n: usize, rng: &mut RngStream) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::InvalidDimension("random_density needs n >= 2".into()));
    }
    let (u, p) = random_density_parts(n, rng)?;
    DensityMatrix::from_spectrum(&u, &p)
}

/// The unitary and spectrum used by [`random_density`].
pub fn random_density_parts(n: usize, rng: &mut RngStream) -> Result<(ComplexMatrix, Vec<f64>)> {
    let v = haar_unitary(n, rng)?;
    let row = rng.below(n);
    let p: Vec<f64> = v.row(row).iter().map(|z| z.norm_sqr()).collect();
    let u = haar_unitary(n, rng)?;
    Ok((u, p))
}
