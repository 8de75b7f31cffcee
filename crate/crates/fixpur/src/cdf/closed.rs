//! Closed-form level functions and CDFs for `N ≤ 4`.
//!
//! The level functions `C_k(u) = ∫_{1/k}^{u} (1−X²)^{(k−3)/2} A_{k−1}(X) dX`
//! measure the chamber volume below the cosine `X_k = u` (with the lower
//! levels integrated out); `A_{k−1}(y) = C_{k−1}(U_{k−1}(y))`. The first two
//! are elementary:
//!
//! - `C_2(u) = π/3 − arccos u` (length of the admissible `φ_2` interval),
//! - `C_3(u) = f_NL(u)` for `u ≤ 1/√3`, `f_NL(1/√3) + (π/3)(u − 1/√3)` above,
//!   with `f_NL(X) = X(π/3 − y) + arcsin(sin y/√3) − π/6`,
//!   `y = arccos(√2 X/√(1−X²))`.

use crate::chamber::{level_cosine_bound, max_radius, top_cosine_bound};
use crate::quad::{integrate, QuadOptions};
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `C_2(u) = π/3 − arccos u` on `[1/2, 1]`, evaluated without cancellation
/// near `u = 1/2`.
pub fn c2(u: f64) -> f64 {
    let u = u.clamp(0.5, 1.0);
    let s = (1.0 - u * u).max(0.0).sqrt();
    // sin(π/3 − arccos u) = (√3 u − √(1−u²))/2 = (2u−1)(2u+1)/(2(√3u + √(1−u²)))
    let sin = (2.0 * u - 1.0) * (2.0 * u + 1.0) / (2.0 * (SQRT3 * u + s));
    let cos = 0.5 * (u + SQRT3 * s);
    sin.atan2(cos)
}

/// `π/3 − C_2(u) = arccos u`: the complementary length (tail of `C_2`).
pub fn c2_tail(u: f64) -> f64 {
    u.clamp(0.5, 1.0).acos()
}

/// Length of the admissible `φ_2` interval when `X_3 = y` (for `N ≥ 4`).
pub fn a2(y: f64) -> f64 {
    c2(level_cosine_bound(2, y))
}

/// `f_NL(X)` for `X ∈ [1/3, 1/√3]`.
pub fn f_nl(x: f64) -> f64 {
    let x = x.clamp(1.0 / 3.0, 1.0 / SQRT3);
    let v = (2f64.sqrt() * x / (1.0 - x * x).sqrt()).min(1.0);
    let y = v.acos();
    x * (FRAC_PI_3 - y) + (y.sin() / SQRT3).asin() - FRAC_PI_6
}

/// `C_3(u)` on `[1/3, 1]`; `C_3(1) = π/6`.
pub fn c3(u: f64) -> f64 {
    let kink = 1.0 / SQRT3;
    if u <= kink {
        f_nl(u)
    } else {
        f_nl(kink) + FRAC_PI_3 * (u.min(1.0) - kink)
    }
}

/// `C_3(1) − C_3(u)`.
pub fn c3_tail(u: f64) -> f64 {
    let kink = 1.0 / SQRT3;
    if u >= kink {
        FRAC_PI_3 * (1.0 - u.min(1.0))
    } else {
        FRAC_PI_6 - f_nl(u)
    }
}

/// CDF of `μ_2` for `N = 2`: `√(2μ − 1)`.
pub fn radial_n2_purity(mu: f64) -> f64 {
    (2.0 * mu - 1.0).max(0.0).sqrt().min(1.0)
}

/// Upper tail `1 − √(2μ − 1)` for `N = 2`, without cancellation.
pub fn radial_n2_purity_tail(mu: f64) -> f64 {
    let s = (2.0 * mu - 1.0).max(0.0).sqrt();
    (2.0 * (1.0 - mu)).max(0.0) / (1.0 + s)
}

/// `g_3(r) = (2πr² + √(6r²−1) − 6r² arccos(1/(√6 r)))/12` (valid for
/// `r ≥ 1/√6`).
pub fn g3(r: f64) -> f64 {
    // arccos(1/(√6 r)) = arctan(√(6r²−1)); the arctan form keeps the
    // first-order cancellation with the square root exact near r = 1/√6.
    let r2 = r * r;
    let t = (6.0 * r2 - 1.0).max(0.0).sqrt();
    (2.0 * PI * r2 + t - 6.0 * r2 * t.atan()) / 12.0
}

/// Radial normaliser for `N = 3`: `1/(4√3)`.
pub const RADIAL_NORM_N3: f64 = 0.144_337_567_297_406_43;

/// Unnormalised radial CDF for `N = 3`.
pub fn radial_n3_numerator(r: f64) -> f64 {
    let r = r.clamp(0.0, max_radius(3));
    if r < 1.0 / 6f64.sqrt() {
        PI * r * r / 6.0
    } else {
        g3(r)
    }
}

/// Radial CDF for `N = 3`: `2πr²/√3` in region 1, `g_3(r)/(1/(4√3))` in region 2.
pub fn radial_n3(r: f64) -> f64 {
    let r = r.clamp(0.0, max_radius(3));
    if r < 1.0 / 6f64.sqrt() {
        2.0 * PI * r * r / SQRT3
    } else {
        (g3(r) / RADIAL_NORM_N3).min(1.0)
    }
}

/// Radial density (in `r`) for `N = 3`.
pub fn radial_n3_density(r: f64) -> f64 {
    r * c2(top_cosine_bound(3, r)) / RADIAL_NORM_N3
}

/// Derivative of [`radial_n3_density`].
pub fn radial_n3_density_prime(r: f64) -> f64 {
    let u = top_cosine_bound(3, r);
    let mut v = c2(u);
    if u < 1.0 {
        v -= u / (1.0 - u * u).sqrt();
    }
    v / RADIAL_NORM_N3
}

/// Upper tail `1 − F_3(r)`, computed as a direct integral of the density.
pub fn radial_n3_tail(r: f64) -> f64 {
    let rmax = max_radius(3);
    let r = r.clamp(0.0, rmax);
    if r < 1.0 / 6f64.sqrt() {
        return 1.0 - radial_n3(r);
    }
    integrate(radial_n3_density, r, rmax, &[], QuadOptions::abs(1e-17)).value.max(0.0)
}

/// Radial normaliser for `N = 4` (exactly `1/72`).
pub const RADIAL_NORM_N4: f64 = 1.0 / 72.0;

fn n4_region3_integrand(s: f64) -> f64 {
    s * s * f_nl(1.0 / (2.0 * SQRT3 * s))
}

/// Unnormalised radial CDF for `N = 4`, region by region.
pub fn radial_n4_numerator(r: f64) -> f64 {
    let r = r.clamp(0.0, max_radius(4));
    let r1 = 1.0 / (2.0 * SQRT3);
    if r <= r1 {
        PI * r.powi(3) / 18.0
    } else if r <= 0.5 {
        (2.0 * SQRT3 * PI * r * r - 4.0 * PI * r.powi(3) - PI / (6.0 * SQRT3)) / 72.0
    } else {
        let base = (2.0 * SQRT3 * PI * 0.25 - 4.0 * PI * 0.125 - PI / (6.0 * SQRT3)) / 72.0;
        base + integrate(n4_region3_integrand, 0.5, r, &[], QuadOptions::abs(1e-17)).value
    }
}

/// Radial CDF for `N = 4`: `4πr³`, `2√3πr² − 4πr³ − π/(6√3)`, and the
/// integral form in region 3.
pub fn radial_n4(r: f64) -> f64 {
    if r > 0.5 {
        // Complement of the directly integrated tail: keeps `F + (1 − F)`
        // exact and `F` monotone up to the endpoint.
        return 1.0 - radial_n4_tail(r);
    }
    (radial_n4_numerator(r) / RADIAL_NORM_N4).min(1.0)
}

/// Radial density (in `r`) for `N = 4`.
pub fn radial_n4_density(r: f64) -> f64 {
    r * r * c3(top_cosine_bound(4, r)) / RADIAL_NORM_N4
}

/// Derivative of [`radial_n4_density`].
pub fn radial_n4_density_prime(r: f64) -> f64 {
    let u = top_cosine_bound(4, r);
    let mut v = 2.0 * r * c3(u);
    if u < 1.0 {
        v -= r * u * a2(u);
    }
    v / RADIAL_NORM_N4
}

/// Upper tail `1 − F_4(r)` computed directly from the density.
pub fn radial_n4_tail(r: f64) -> f64 {
    let rmax = max_radius(4);
    let r = r.clamp(0.0, rmax);
    if r <= 0.5 {
        return 1.0 - radial_n4_numerator(r) / RADIAL_NORM_N4;
    }
    integrate(n4_region3_integrand, r, rmax, &[], QuadOptions::abs(1e-18)).value.max(0.0)
        / RADIAL_NORM_N4
}

/// Total unnormalised measure for `N = 4` obtained by integration (used to
/// check the exact value `1/72`).
pub fn radial_n4_total() -> f64 {
    radial_n4_numerator(max_radius(4))
}

/// Lower end of the `φ_2` interval for `N = 3` at radius `r`.
pub fn phi2_lower_n3(r: f64) -> f64 {
    top_cosine_bound(3, r).acos()
}

/// Lower end of the `φ_2` interval for `N = 4` given `X_3`.
pub fn phi2_lower_n4(x3: f64) -> f64 {
    level_cosine_bound(2, x3).acos()
}

/// Upper end `X̄_3(r)` of the `X_3` interval for `N = 4`.
pub fn x3_upper_n4(r: f64) -> f64 {
    top_cosine_bound(4, r)
}

/// Conditional CDF of `X_3` given `r_4`: `C_3(X_3)/C_3(X̄_3(r_4))`.
pub fn x3_given_r4(x3: f64, r4: f64) -> f64 {
    let hi = x3_upper_n4(r4);
    let den = c3(hi);
    if den <= 0.0 {
        return 1.0;
    }
    (c3(x3.min(hi)) / den).clamp(0.0, 1.0)
}

/// Upper tail of [`x3_given_r4`].
pub fn x3_given_r4_tail(x3: f64, r4: f64) -> f64 {
    let hi = x3_upper_n4(r4);
    let den = c3(hi);
    if den <= 0.0 {
        return 0.0;
    }
    ((c3_tail(x3.min(hi)) - c3_tail(hi)) / den).clamp(0.0, 1.0)
}

/// Uniform CDF on `[lo, π/3]`; a degenerate interval evaluates to 1.
pub fn uniform_phi2(phi2: f64, lo: f64) -> f64 {
    let w = FRAC_PI_3 - lo;
    if w <= 1e-15 {
        return 1.0;
    }
    ((phi2 - lo) / w).clamp(0.0, 1.0)
}
