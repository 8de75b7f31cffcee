//! Monotone piecewise Hermite interpolation with inversion.
//!
//! Each cell uses the quintic Hermite interpolant when first and second
//! derivatives are available and the quintic is monotone on the cell;
//! otherwise it falls back to a cubic Hermite interpolant whose slopes are
//! limited à la Fritsch–Carlson, which is always monotone.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cell {
    quintic: bool,
    // Slopes used at the left/right end of the cell (limited if cubic).
    dl: f64,
    dr: f64,
}

/// Piecewise Hermite interpolant of a monotone function.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermite {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
    s: Vec<f64>,
    cells: Vec<Cell>,
    increasing: bool,
}

fn quintic_basis(t: f64) -> [f64; 6] {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    [
        1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
        t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
        0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5),
        0.5 * (t3 - 2.0 * t4 + t5),
        -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
        10.0 * t3 - 15.0 * t4 + 6.0 * t5,
    ]
}

fn quintic_basis_slope(t: f64) -> [f64; 6] {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    [
        -30.0 * t2 + 60.0 * t3 - 30.0 * t4,
        1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
        0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4),
        0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4),
        -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
        30.0 * t2 - 60.0 * t3 + 30.0 * t4,
    ]
}

/// Number of probes per cell used to certify monotonicity of a quintic.
const MONOTONE_PROBES: usize = 48;

impl Hermite {
    /// Cubic Hermite interpolant from values and slopes.
    pub fn new(x: Vec<f64>, y: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        let n = x.len();
        Self::build(x, y, d, vec![f64::NAN; n])
    }

    /// Quintic Hermite interpolant from values, slopes and curvatures.
    /// Cells whose curvature data are non-finite, or on which the quintic is
    /// not monotone, fall back to limited cubics.
    pub fn with_curvature(x: Vec<f64>, y: Vec<f64>, d: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        Self::build(x, y, d, s)
    }

    fn build(x: Vec<f64>, y: Vec<f64>, mut d: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n || d.len() != n || s.len() != n {
            return Err(Error::Domain("Hermite table needs >= 2 matching knots".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("knots must be strictly increasing".into()));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite table value".into()));
        }
        let increasing = y[n - 1] >= y[0];
        let sign = if increasing { 1.0 } else { -1.0 };
        if y.windows(2).any(|w| sign * (w[1] - w[0]) < 0.0) {
            return Err(Error::Domain("values are not monotone".into()));
        }
        for v in d.iter_mut() {
            if sign * *v < 0.0 || !v.is_finite() {
                *v = if v.is_finite() { 0.0 } else { f64::NAN };
            }
        }
        let mut cells = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let h = x[i + 1] - x[i];
            let delta = (y[i + 1] - y[i]) / h;
            let mut cell = Cell {
                quintic: false,
                dl: d[i],
                dr: d[i + 1],
            };
            if delta == 0.0 {
                cell.dl = 0.0;
                cell.dr = 0.0;
                cells.push(cell);
                continue;
            }
            let finite = d[i].is_finite() && d[i + 1].is_finite() && s[i].is_finite() && s[i + 1].is_finite();
            if finite {
                cell.quintic = true;
                let probe = Self::quintic_cell_is_monotone(&x, &y, &d, &s, i, sign);
                if probe {
                    cells.push(cell);
                    continue;
                }
                cell.quintic = false;
            }
            let dl = if cell.dl.is_finite() { cell.dl } else { 3.0 * delta };
            let dr = if cell.dr.is_finite() { cell.dr } else { 3.0 * delta };
            let a = dl / delta;
            let b = dr / delta;
            let q = a * a + b * b;
            let (dl, dr) = if q > 9.0 {
                let tau = 3.0 / q.sqrt();
                (tau * a * delta, tau * b * delta)
            } else {
                (dl, dr)
            };
            cell.dl = dl;
            cell.dr = dr;
            cells.push(cell);
        }
        Ok(Self {
            x,
            y,
            d,
            s,
            cells,
            increasing,
        })
    }

    fn quintic_cell_is_monotone(x: &[f64], y: &[f64], d: &[f64], s: &[f64], i: usize, sign: f64) -> bool {
        let h = x[i + 1] - x[i];
        let scale = (y[i + 1] - y[i]).abs() / h;
        (0..=MONOTONE_PROBES).all(|j| {
            let t = j as f64 / MONOTONE_PROBES as f64;
            let b = quintic_basis_slope(t);
            let slope = (b[0] * y[i] + b[5] * y[i + 1]) / h
                + b[1] * d[i]
                + b[4] * d[i + 1]
                + h * (b[2] * s[i] + b[3] * s[i + 1]);
            sign * slope >= -1e-14 * scale
        })
    }

    /// Knots.
    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    /// Values at the knots.
    pub fn values(&self) -> &[f64] {
        &self.y
    }

    /// Slopes at the knots as supplied.
    pub fn slopes(&self) -> &[f64] {
        &self.d
    }

    /// Curvatures at the knots as supplied (NaN where unavailable).
    pub fn curvatures(&self) -> &[f64] {
        &self.s
    }

    /// Number of cells that use the quintic interpolant.
    pub fn quintic_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.quintic).count()
    }

    /// Domain `[x_0, x_last]`.
    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    fn cell_index(&self, x: f64) -> usize {
        let n = self.x.len();
        let j = self.x.partition_point(|&k| k <= x);
        j.clamp(1, n - 1) - 1
    }

    fn local(&self, i: usize, t: f64) -> f64 {
        let h = self.x[i + 1] - self.x[i];
        let c = self.cells[i];
        if c.quintic {
            let b = quintic_basis(t);
            b[0] * self.y[i]
                + b[5] * self.y[i + 1]
                + h * (b[1] * self.d[i] + b[4] * self.d[i + 1])
                + h * h * (b[2] * self.s[i] + b[3] * self.s[i + 1])
        } else {
            let t2 = t * t;
            let t3 = t2 * t;
            let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
            let h10 = t3 - 2.0 * t2 + t;
            let h01 = -2.0 * t3 + 3.0 * t2;
            let h11 = t3 - t2;
            h00 * self.y[i] + h10 * h * c.dl + h01 * self.y[i + 1] + h11 * h * c.dr
        }
    }

    /// Derivative with respect to `t` (i.e. `h · d/dx`).
    fn local_slope(&self, i: usize, t: f64) -> f64 {
        let h = self.x[i + 1] - self.x[i];
        let c = self.cells[i];
        if c.quintic {
            let b = quintic_basis_slope(t);
            b[0] * self.y[i]
                + b[5] * self.y[i + 1]
                + h * (b[1] * self.d[i] + b[4] * self.d[i + 1])
                + h * h * (b[2] * self.s[i] + b[3] * self.s[i + 1])
        } else {
            let t2 = t * t;
            let d00 = 6.0 * t2 - 6.0 * t;
            let d10 = 3.0 * t2 - 4.0 * t + 1.0;
            let d01 = -6.0 * t2 + 6.0 * t;
            let d11 = 3.0 * t2 - 2.0 * t;
            d00 * self.y[i] + d01 * self.y[i + 1] + h * (d10 * c.dl + d11 * c.dr)
        }
    }

    /// Evaluates the interpolant (clamped to the end values outside the domain).
    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.domain();
        if x <= lo {
            return self.y[0];
        }
        if x >= hi {
            return self.y[self.y.len() - 1];
        }
        let i = self.cell_index(x);
        let t = (x - self.x[i]) / (self.x[i + 1] - self.x[i]);
        let v = self.local(i, t);
        let (a, b) = (self.y[i].min(self.y[i + 1]), self.y[i].max(self.y[i + 1]));
        v.clamp(a, b)
    }

    /// Derivative of the interpolant.
    pub fn derivative(&self, x: f64) -> f64 {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return 0.0;
        }
        let i = self.cell_index(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        self.local_slope(i, t) / h
    }

    /// Solves `eval(x) = target`, clamping the target into the value range.
    pub fn inverse(&self, target: f64) -> f64 {
        let n = self.y.len();
        let (first, last) = (self.y[0], self.y[n - 1]);
        let inc = self.increasing;
        if (inc && target <= first) || (!inc && target >= first) {
            return self.x[0];
        }
        if (inc && target >= last) || (!inc && target <= last) {
            return self.x[n - 1];
        }
        let j = if inc {
            self.y.partition_point(|&v| v < target)
        } else {
            self.y.partition_point(|&v| v > target)
        };
        let i = j.clamp(1, n - 1) - 1;
        if self.y[i] == target {
            return self.x[i];
        }
        let h = self.x[i + 1] - self.x[i];
        let sign = if inc { 1.0 } else { -1.0 };
        let g = |t: f64| sign * (self.local(i, t) - target);
        let (mut a, mut b) = (0.0f64, 1.0f64);
        let span = self.y[i + 1] - self.y[i];
        let mut t = if span != 0.0 {
            ((target - self.y[i]) / span).clamp(0.0, 1.0)
        } else {
            0.5
        };
        for _ in 0..200 {
            let gt = g(t);
            if gt == 0.0 {
                break;
            }
            if gt < 0.0 {
                a = t;
            } else {
                b = t;
            }
            if b - a <= 4.0 * f64::EPSILON {
                break;
            }
            let slope = sign * self.local_slope(i, t);
            let newton = if slope > 0.0 { t - gt / slope } else { f64::NAN };
            let next = if newton.is_finite() && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
            if (next - t).abs() <= 1e-17 {
                t = next;
                break;
            }
            t = next;
        }
        self.x[i] + t * h
    }
}
