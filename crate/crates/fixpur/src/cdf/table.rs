//! Persistable monotone CDF tables and the inversion interface.

use super::hermite::Hermite;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Schema version of the JSON representation.
pub const TABLE_VERSION: u32 = 1;

/// Which marginal a table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CdfKind {
    /// CDF of the purity radius `r`.
    Radial,
    /// Conditional CDF of the cosine `X_k` (or of `φ_2` for `k = 2`).
    Angle(usize),
}

/// How the tabulated values were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CdfMethod {
    /// Closed-form expressions (possibly with a 1-D quadrature of a
    /// closed-form integrand).
    ClosedForm,
    /// Tabulated nested quadrature.
    Quadrature,
}

/// One-dimensional monotone CDF with an accurate upper tail.
pub trait MonotoneCdf {
    /// Support `[lo, hi]`.
    fn support(&self) -> (f64, f64);
    /// `F(x)`.
    fn cdf(&self, x: f64) -> f64;
    /// `1 − F(x)`, computed without cancellation where possible.
    fn tail(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
    /// Solves `F(x) = p` (default: bisection to adjacent doubles).
    fn quantile(&self, p: f64) -> f64 {
        let (lo, hi) = self.support();
        bisect(|x| self.cdf(x) - p, lo, hi)
    }
    /// Solves `1 − F(x) = q` (default: bisection on the tail).
    fn tail_quantile(&self, q: f64) -> f64 {
        let (lo, hi) = self.support();
        bisect(|x| q - self.tail(x), lo, hi)
    }
}

/// Bisection for an increasing function `g` on `[lo, hi]`.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    if g(lo) >= 0.0 {
        return lo;
    }
    if g(hi) <= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Probability above which inversions switch to the tail representation.
pub const TAIL_SWITCH: f64 = 0.9;

/// Inverts a CDF: returns `x` with `F(x) = p`. For `p > 0.9` the tail
/// `1 − F` is inverted instead, preserving relative accuracy near `F ≈ 1`.
pub fn invert_cdf(cdf: &dyn MonotoneCdf, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    let (lo, hi) = cdf.support();
    if p == 0.0 {
        return Ok(lo);
    }
    if p == 1.0 {
        return Ok(hi);
    }
    Ok(if p > TAIL_SWITCH {
        cdf.tail_quantile(1.0 - p)
    } else {
        cdf.quantile(p)
    })
}

/// Monotone interpolation table of a marginal CDF.
#[derive(Debug, Clone)]
pub struct CdfTable {
    dim: usize,
    kind: CdfKind,
    context: Option<f64>,
    method: CdfMethod,
    abs_tol: f64,
    head: Hermite,
    tail: Hermite,
}

impl CdfTable {
    /// Assembles a table from knot data. `values`/`tails` are `F` and
    /// `1 − F`; `slopes` and `curvatures` are `F'` and `F''` (NaN allowed).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dim: usize,
        kind: CdfKind,
        context: Option<f64>,
        method: CdfMethod,
        abs_tol: f64,
        knots: Vec<f64>,
        values: Vec<f64>,
        tails: Vec<f64>,
        slopes: Vec<f64>,
        curvatures: Vec<f64>,
    ) -> Result<Self> {
        let head = Hermite::with_curvature(knots.clone(), values, slopes.clone(), curvatures.clone())?;
        let tail = Hermite::with_curvature(
            knots,
            tails,
            slopes.iter().map(|v| -v).collect(),
            curvatures.iter().map(|v| -v).collect(),
        )?;
        Ok(Self {
            dim,
            kind,
            context,
            method,
            abs_tol,
            head,
            tail,
        })
    }

    /// Dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Marginal described.
    pub fn kind(&self) -> CdfKind {
        self.kind
    }

    /// Conditioning value (for angle tables).
    pub fn context(&self) -> Option<f64> {
        self.context
    }

    /// Backend used.
    pub fn method(&self) -> CdfMethod {
        self.method
    }

    /// Achieved absolute tolerance.
    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    /// Knots.
    pub fn knots(&self) -> &[f64] {
        self.head.knots()
    }

    /// `F` at the knots.
    pub fn values(&self) -> &[f64] {
        self.head.values()
    }

    /// `1 − F` at the knots.
    pub fn tail_values(&self) -> &[f64] {
        self.tail.values()
    }

    /// Interpolated density `F'`.
    pub fn density(&self, x: f64) -> f64 {
        self.head.derivative(x)
    }

    /// Serialises to the versioned JSON document (17 significant digits).
    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            version: TABLE_VERSION,
            dim: self.dim,
            kind: self.kind,
            context: self.context.map(fmt17),
            knots: self.head.knots().iter().map(|&v| fmt17(v)).collect(),
            values: self.head.values().iter().map(|&v| fmt17(v)).collect(),
            tail_values: self.tail.values().iter().map(|&v| fmt17(v)).collect(),
            slopes: self.head.slopes().iter().map(|&v| fmt17(v)).collect(),
            curvatures: self.head.curvatures().iter().map(|&v| fmt17(v)).collect(),
            method: self.method,
            abs_tol: fmt17(self.abs_tol),
        };
        serde_json::to_string_pretty(&doc).expect("table documents always serialise")
    }

    /// Parses a document produced by [`Self::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if doc.version != TABLE_VERSION {
            return Err(Error::Format(format!("unsupported table version {}", doc.version)));
        }
        let parse = |v: &[String]| -> Result<Vec<f64>> {
            v.iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Format(format!("{s}: {e}"))))
                .collect()
        };
        let context = match doc.context {
            Some(c) => Some(c.parse::<f64>().map_err(|e| Error::Format(e.to_string()))?),
            None => None,
        };
        let abs_tol = doc.abs_tol.parse::<f64>().map_err(|e| Error::Format(e.to_string()))?;
        Self::new(
            doc.dim,
            doc.kind,
            context,
            doc.method,
            abs_tol,
            parse(&doc.knots)?,
            parse(&doc.values)?,
            parse(&doc.tail_values)?,
            parse(&doc.slopes)?,
            parse(&doc.curvatures)?,
        )
    }
}

impl MonotoneCdf for CdfTable {
    fn support(&self) -> (f64, f64) {
        self.head.domain()
    }
    fn cdf(&self, x: f64) -> f64 {
        self.head.eval(x)
    }
    fn tail(&self, x: f64) -> f64 {
        self.tail.eval(x)
    }
    fn quantile(&self, p: f64) -> f64 {
        self.head.inverse(p)
    }
    fn tail_quantile(&self, q: f64) -> f64 {
        self.tail.inverse(q)
    }
}

/// Formats a double with 17 significant digits (bit-faithful round trip).
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TableDoc {
    version: u32,
    dim: usize,
    kind: CdfKind,
    context: Option<String>,
    knots: Vec<String>,
    values: Vec<String>,
    tail_values: Vec<String>,
    slopes: Vec<String>,
    curvatures: Vec<String>,
    method: CdfMethod,
    abs_tol: String,
}
