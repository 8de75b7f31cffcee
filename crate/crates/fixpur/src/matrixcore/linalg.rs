//! Dense decompositions: Householder QR, Hermitian Jacobi eigensolver,
//! LU determinant and Hermitian matrix functions.

use super::ComplexMatrix;
use crate::{Error, Result};
use num_complex::Complex64;

/// Result of a QR factorisation `A = Q R`.
#[derive(Debug, Clone)]
pub struct Qr {
    /// Unitary factor.
    pub q: ComplexMatrix,
    /// Upper-triangular factor.
    pub r: ComplexMatrix,
}

/// Householder QR of a square matrix.
///
/// Returns an error if a column is numerically zero (rank deficiency),
/// which for Gaussian input happens with probability zero.
pub fn householder_qr(a: &ComplexMatrix) -> Result<Qr> {
    if !a.is_square() {
        return Err(Error::InvalidDimension("QR requires a square matrix".into()));
    }
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let norm = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-14 * scale {
            return Err(Error::Numerical(format!("QR breakdown at column {k}")));
        }
        if k == n - 1 {
            break;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        for j in k..n {
            let s: Complex64 = (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum();
            let s = s * beta;
            for i in k..n {
                r[(i, j)] -= s * v[i - k];
            }
        }
        for i in 0..n {
            let s: Complex64 = (k..n).map(|j| q[(i, j)] * v[j - k]).sum();
            let s = s * beta;
            for j in k..n {
                q[(i, j)] -= s * v[j - k].conj();
            }
        }
        for i in k + 1..n {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(Qr { q, r })
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Off-diagonal tolerance (relative to the Frobenius norm) used by [`eigh`].
pub const JACOBI_TOL: f64 = 1e-13;

/// Hermitian eigen-decomposition by cyclic complex Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm falls below
/// `JACOBI_TOL · max(1, ‖A‖_F)`.
pub fn eigh(a: &ComplexMatrix) -> Result<Eigh> {
    if !a.is_square() {
        return Err(Error::InvalidDimension("eigh requires a square matrix".into()));
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * a.frobenius().max(1.0) * 1e-2;
    let off = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut converged = n < 2;
    for _sweep in 0..100 {
        if off(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = m[(p, q)];
                let mag = b.norm();
                if mag <= f64::MIN_POSITIVE * 1e10 {
                    continue;
                }
                let delta = (b / mag).conj();
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Columns: M ← M J, V ← V J.
                for i in 0..n {
                    let mp = m[(i, p)];
                    let mq = m[(i, q)];
                    m[(i, p)] = mp * c - mq * delta * s;
                    m[(i, q)] = mp * s + mq * delta * c;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * delta * s;
                    v[(i, q)] = vp * s + vq * delta * c;
                }
                // Rows: M ← J† M.
                for j in 0..n {
                    let mp = m[(p, j)];
                    let mq = m[(q, j)];
                    m[(p, j)] = mp * c - mq * delta.conj() * s;
                    m[(q, j)] = mp * s + mq * delta.conj() * c;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
            }
        }
    }
    if !converged && off(&m) > threshold * 1e3 {
        return Err(Error::Numerical("Jacobi eigensolver did not converge".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigh { values, vectors })
}

/// Eigenvalues (descending) of a Hermitian matrix.
pub fn eigvalsh(a: &ComplexMatrix) -> Result<Vec<f64>> {
    eigh(a).map(|e| e.values)
}

/// Determinant by LU factorisation with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::InvalidDimension("determinant requires a square matrix".into()));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm()))
            .unwrap_or(k);
        if m[(piv, k)].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if piv != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(piv, j)];
                m[(piv, j)] = tmp;
            }
            det = -det;
        }
        let pivot = m[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            for j in k..n {
                let mk = m[(k, j)];
                m[(i, j)] -= f * mk;
            }
        }
    }
    Ok(det)
}

/// Applies a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_function(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let e = eigh(a)?;
    let d: Vec<f64> = e.values.iter().map(|&x| f(x)).collect();
    Ok(ComplexMatrix::conjugate_diagonal(&e.vectors, &d))
}

/// `exp(−i ε H)` for Hermitian `H`.
pub fn unitary_exp(h: &ComplexMatrix, eps: f64) -> Result<ComplexMatrix> {
    let e = eigh(h)?;
    let n = h.rows();
    let u = &e.vectors;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| u[(i, k)] * u[(j, k)].conj() * Complex64::from_polar(1.0, -eps * e.values[k]))
            .sum()
    }))
}
