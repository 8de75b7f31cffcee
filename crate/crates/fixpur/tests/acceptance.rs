//! Acceptance checks. Run with `cargo test -p fixpur --test acceptance`.
//!
//! Prints one `PASS`/`FAIL` line per criterion and exits non-zero when any
//! criterion fails.

use fixpur::cdf::closed::{c3, phi2_lower_n4, radial_n4_total};
use fixpur::cdf::{
    cdf_numeric, cdf_phi2_n3, cdf_phi2_n4, cdf_r3, cdf_r4, cdf_x3_n4, region_shares, tail_mass, CdfKind,
};
use fixpur::chamber::{
    angle_bounds, chamber_basis, check_polar, eigs_from_polar, max_radius, polar_from_eigs, BoundContext,
    PolarCoords,
};
use fixpur::induced::{induced_state, marginal, p_hs, p_trace, InducedSpec};
use fixpur::matrixcore::{random_density, simplex_eigs};
use fixpur::measures::{
    cmi_zx, concurrence, log_negativity, max_entangled, negativity, qmi, werner_state, BipartiteSplit, WernerSpec,
};
use fixpur::quad::{integrate, QuadOptions};
use fixpur::rng::RngStream;
use fixpur::sampler::{sample_polar, sample_states};
use fixpur::stats::ks_distance;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_3, PI};
use std::process::ExitCode;
use std::time::Instant;

/// Outcome of one criterion: `Ok(summary)` or `Err(reason)`.
type Check = Result<String, String>;

/// A named acceptance criterion.
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Region shares and high-purity tails of the uniform measure.
fn region_table() -> Check {
    let t0 = Instant::now();
    let expected_shares: [(usize, &[f64]); 3] =
        [(2, &[100.0]), (3, &[60.46, 39.54]), (4, &[30.23, 54.54, 15.23])];
    let expected_tails: [(usize, f64, f64); 3] = [(2, 5.13, 1.01), (3, 0.20, 7.5e-3), (4, 6.6e-3, 5.1e-5)];
    let mut failures = Vec::new();
    let mut worst_share = 0.0f64;
    for (n, want) in expected_shares {
        let got = region_shares(n).map_err(e)?;
        for ((_, share), w) in got.iter().zip(want) {
            let pct = 100.0 * share;
            worst_share = worst_share.max((pct - w).abs());
            if (pct - w).abs() > 0.01 {
                failures.push(format!("N={n} share {pct:.5} vs {w}"));
            }
        }
    }
    let mut worst_tail = 0.0f64;
    for (n, t95, t99) in expected_tails {
        for (mu, want) in [(0.95, t95), (0.99, t99)] {
            let pct = 100.0 * tail_mass(n, mu).map_err(e)?;
            let rel = (pct - want).abs() / want;
            worst_tail = worst_tail.max(rel);
            if rel > 0.02 {
                failures.push(format!("N={n} tail[{mu},1] {pct:.6e}% vs {want}% ({:.2}% rel)", 100.0 * rel));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    if secs >= 1.0 {
        failures.push(format!("runtime {secs:.2}s"));
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "max share error {worst_share:.4} pp, max tail error {:.2}% rel, {secs:.3}s",
        100.0 * worst_tail
    ))
}

/// The two N=4 normalisers, closed form and by independent quadrature.
fn normalisers() -> Check {
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-14,
        max_intervals: 2000,
    };
    let s3 = 1.0 / 3f64.sqrt();
    let angular = |u: f64| integrate(|x| FRAC_PI_3 - phi2_lower_n4(x), 1.0 / 3.0, u, &[s3], opts).value;
    let angular_total = angular(1.0);
    let top = |r: f64| (1.0 / (r * 12f64.sqrt())).min(1.0);
    let radial = integrate(|r| r * r * angular(top(r)), 0.0, max_radius(4), &[1.0 / 12f64.sqrt(), 0.5], opts).value;
    let checks = [
        ("closed radial", radial_n4_total(), 1.0 / 72.0),
        ("quadrature radial", radial, 1.0 / 72.0),
        ("closed angular", c3(1.0), PI / 6.0),
        ("quadrature angular", angular_total, PI / 6.0),
    ];
    let mut worst = 0.0f64;
    for (name, got, want) in checks {
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-12, || format!("{name}: {got:.16} vs {want:.16}"))?;
    }
    Ok(format!("1/72 and pi/6 reproduced, max error {worst:.1e}"))
}

/// Limiting discontinuity of `f` at `b`, from a fit
/// `|f(b+h) − f(b−h)| ≈ D + A√h + B h` over `h ∈ [1e-12, 1e-7]`.
fn jump(f: impl Fn(f64) -> f64, b: f64) -> f64 {
    let hs: Vec<f64> = (14..=24).map(|i| 10f64.powf(-(i as f64) / 2.0)).collect();
    let mut m = [[0.0; 3]; 3];
    let mut v = [0.0; 3];
    for &h in &hs {
        let row = [1.0, h.sqrt(), h];
        let j = (f(b + h) - f(b - h)).abs();
        for a in 0..3 {
            v[a] += row[a] * j;
            for c in 0..3 {
                m[a][c] += row[a] * row[c];
            }
        }
    }
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let mut md = m;
    for a in 0..3 {
        md[a][0] = v[a];
    }
    (det(&md) / det(&m)).abs()
}

/// Continuity of every piecewise closed form at its breakpoints.
fn continuity() -> Check {
    let s6 = 1.0 / 6f64.sqrt();
    let s3 = 1.0 / 3f64.sqrt();
    let s12 = 1.0 / 12f64.sqrt();
    let mut probes: Vec<(String, f64)> = Vec::new();
    probes.push(("F_r(N=3) @ 1/sqrt6".into(), jump(|r| cdf_r3(r).unwrap(), s6)));
    for phi in [0.3, 0.7, 1.0] {
        probes.push((format!("F_phi2(N=3 | phi={phi}) @ r=1/sqrt6"), jump(|r| cdf_phi2_n3(phi, r).unwrap(), s6)));
        probes.push((format!("F_phi2(N=4 | phi={phi}) @ X3=1/sqrt3"), jump(|x| cdf_phi2_n4(phi, x).unwrap(), s3)));
    }
    for b in [s12, 0.5] {
        probes.push((format!("F_r(N=4) @ {b:.4}"), jump(|r| cdf_r4(r).unwrap(), b)));
        for x in [0.34, 0.4, 0.5, 0.55] {
            probes.push((format!("F_X3(N=4 | X3={x}) @ r={b:.4}"), jump(|r| cdf_x3_n4(x, r).unwrap(), b)));
        }
    }
    for r in [0.1, 0.2, 0.3, 0.45] {
        probes.push((format!("F_X3(N=4 | r={r}) @ X3=1/sqrt3"), jump(|x| cdf_x3_n4(x, r).unwrap(), s3)));
    }
    let worst = probes.iter().map(|p| p.1).fold(0.0, f64::max);
    let bad: Vec<String> = probes.iter().filter(|p| !(p.1 < 1e-9)).map(|p| format!("{} jump {:.2e}", p.0, p.1)).collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} junctions, max jump {worst:.1e}", probes.len()))
}

/// Numeric N=5 radial CDF and its Region-1 power-law coefficient.
fn n5_oracle() -> Check {
    let t0 = Instant::now();
    let b = 1.0 / 20f64.sqrt();
    let at = cdf_numeric(5, CdfKind::Radial, b, None).map_err(e)?.value;
    ensure((at - 0.1324146).abs() <= 1e-4, || format!("F5(1/sqrt20) = {at:.10}"))?;
    // Inside Region 1 the law is a pure power c r⁴; least-squares fit of c.
    let (mut num, mut den) = (0.0, 0.0);
    for i in 1..=20 {
        let r = b * i as f64 / 20.0;
        let f = cdf_numeric(5, CdfKind::Radial, r, None).map_err(e)?.value;
        num += f * r.powi(4);
        den += r.powi(8);
    }
    let coef = num / den;
    ensure((coef - 52.96586).abs() <= 1e-3, || format!("coefficient {coef:.6}"))?;
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("runtime {secs:.1}s"))?;
    Ok(format!("F5 = {at:.10}, coefficient {coef:.7}, {secs:.2}s"))
}

/// Exact purity of sampled density matrices.
fn exact_purity() -> Check {
    let mut worst = 0.0f64;
    let mut slowest = 0.0f64;
    for n in 2..=8usize {
        let lo = 1.0 / n as f64;
        let purities = [lo + 1e-4, lo + 0.25 * (1.0 - lo), lo + 0.5 * (1.0 - lo), lo + 0.75 * (1.0 - lo), 0.99];
        for (j, &mu) in purities.iter().enumerate() {
            let t0 = Instant::now();
            let states = sample_states(n, mu, 1000, 100 + j as u64).map_err(e)?;
            let secs = t0.elapsed().as_secs_f64();
            slowest = slowest.max(secs);
            let dev = states.iter().map(|s| (s.purity() - mu).abs()).fold(0.0, f64::max);
            worst = worst.max(dev);
            ensure(states.len() == 1000, || format!("N={n} mu={mu}: {} samples", states.len()))?;
            ensure(dev <= 1e-11, || format!("N={n} mu={mu}: deviation {dev:.2e}"))?;
            ensure(secs <= 10.0, || format!("N={n} mu={mu}: {secs:.1}s"))?;
        }
    }
    Ok(format!("max |Tr rho^2 - mu| = {worst:.1e}, slowest batch {slowest:.3}s"))
}

/// Marginal laws of the N=4 sampler at μ = 0.55.
fn marginal_laws() -> Check {
    let mu = 0.55;
    let r = (mu - 0.25f64).sqrt();
    let pts: Vec<PolarCoords> = (0..10_000u64)
        .into_par_iter()
        .map(|i| sample_polar(4, mu, &mut RngStream::new(2024, i)).unwrap())
        .collect();
    let x3: Vec<f64> = pts.iter().map(|p| p.x[0]).collect();
    let dx = ks_distance(&x3, |x| cdf_x3_n4(x, r).unwrap());
    let u: Vec<f64> = pts
        .iter()
        .map(|p| {
            let lo = phi2_lower_n4(p.x[0]);
            (p.phi2 - lo) / (FRAC_PI_3 - lo)
        })
        .collect();
    let dphi = ks_distance(&u, |t| t.clamp(0.0, 1.0));
    ensure(dx < 0.015 && dphi < 0.015, || format!("KS X3 {dx:.4}, phi2 {dphi:.4}"))?;
    Ok(format!("KS X3 {dx:.4}, KS phi2 {dphi:.4}"))
}

/// Werner-state negativity and concurrence against closed forms.
fn werner() -> Check {
    let mut worst = 0.0f64;
    for d in [2usize, 4, 9, 19] {
        let split = BipartiteSplit::new(d, d).map_err(e)?;
        let edge = 1.0 / (d as f64 + 1.0);
        for p in [0.0, 0.5 * edge, edge] {
            let rho = werner_state(WernerSpec::new(d, p).map_err(e)?).map_err(e)?;
            let ln = log_negativity(&rho, split).map_err(e)?;
            worst = worst.max(ln.abs());
            ensure(ln.abs() <= 1e-12, || format!("d={d} p={p}: LN {ln:.3e}"))?;
        }
        let rho = werner_state(WernerSpec::new(d, 1.0).map_err(e)?).map_err(e)?;
        let ln = log_negativity(&rho, split).map_err(e)?;
        let want = (d as f64).log2();
        worst = worst.max((ln - want).abs());
        ensure((ln - want).abs() <= 1e-12, || format!("d={d} p=1: LN {ln} vs {want}"))?;
    }
    let mut worst_c = 0.0f64;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let rho = werner_state(WernerSpec::new(2, p).map_err(e)?).map_err(e)?;
        let c = concurrence(&rho).map_err(e)?;
        let want = ((3.0 * p - 1.0) / 2.0).max(0.0);
        worst_c = worst_c.max((c - want).abs());
    }
    ensure(worst_c <= 1e-10, || format!("concurrence error {worst_c:.2e}"))?;
    Ok(format!("LN error {worst:.1e}, concurrence error {worst_c:.1e}"))
}

/// Entanglement of fixed-purity two-qubit samples.
fn entanglement_vs_purity() -> Check {
    let split = BipartiteSplit::qubits();
    let mut summary = Vec::new();
    for (j, mu) in [0.26, 0.30, 0.99].into_iter().enumerate() {
        let states = sample_states(4, mu, 2500, 500 + j as u64).map_err(e)?;
        let rows: Vec<(f64, f64)> = states
            .par_iter()
            .map(|s| (concurrence(s).unwrap(), negativity(s, split).unwrap()))
            .collect();
        let cmax = rows.iter().map(|r| r.0).fold(0.0, f64::max);
        let disagree = rows.iter().filter(|r| (r.0 > 1e-12) != (r.1 > 1e-12)).count();
        ensure(disagree == 0, || format!("mu={mu}: {disagree} PPT sign disagreements"))?;
        if mu < 0.5 {
            ensure(cmax <= 1e-12, || format!("mu={mu}: max concurrence {cmax:.3e}"))?;
        } else {
            ensure(cmax >= 0.9, || format!("mu={mu}: max concurrence {cmax:.4}"))?;
        }
        summary.push(format!("mu={mu} max C {cmax:.4}"));
    }
    Ok(summary.join(", "))
}

/// QMI ≥ CMI_{Z+X} and triangle containment at fixed purities.
fn cqc_relation() -> Check {
    let split = BipartiteSplit::qubits();
    let purities = [0.26, 0.3, 0.35, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99];
    let mut closest = f64::INFINITY;
    for (j, &mu) in purities.iter().enumerate() {
        let states = sample_states(4, mu, 500, 900 + j as u64).map_err(e)?;
        let pts: Vec<(f64, f64)> = states
            .par_iter()
            .map(|s| (cmi_zx(s, split).unwrap(), qmi(s, split).unwrap()))
            .collect();
        for &(x, y) in &pts {
            closest = closest.min(y - x);
            ensure(y >= x - 1e-9, || format!("mu={mu}: QMI {y} < CMI {x}"))?;
            ensure(x >= -1e-9 && y <= 2.0 + 1e-9, || format!("mu={mu}: ({x}, {y}) outside triangle"))?;
        }
    }
    let bell = max_entangled(2).map_err(e)?;
    let (x, y) = (cmi_zx(&bell, split).map_err(e)?, qmi(&bell, split).map_err(e)?);
    ensure((x - 2.0).abs() < 1e-9 && (y - 2.0).abs() < 1e-9, || format!("Bell at ({x}, {y})"))?;
    Ok(format!("5000 points, min QMI - CMI {closest:.3e}, Bell at ({x:.12}, {y:.12})"))
}

/// Partial-trace induced measures.
fn induced() -> Check {
    let mut worst = 0.0f64;
    for n in 2..=4usize {
        let spec = InducedSpec::new(n, n).map_err(e)?;
        for i in 0..100u64 {
            let pt = simplex_eigs(n, &mut RngStream::new(31, i)).map_err(e)?;
            let (a, b) = (p_trace(spec, &pt).map_err(e)?, p_hs(&pt));
            worst = worst.max((a - b).abs() / b.abs().max(1.0));
            ensure((a - b).abs() <= 1e-10 * b.abs().max(1.0), || format!("N={n}: {a} vs {b}"))?;
        }
    }
    let mut worst_mass = 0.0f64;
    for (n, ks) in [(2usize, &[2usize, 3, 4, 6][..]), (3, &[3, 4, 5, 6, 9]), (4, &[4, 5, 6, 8])] {
        for &k in ks {
            let m = marginal(InducedSpec::new(n, k).map_err(e)?).map_err(e)?;
            let dm = (m.total_mass() - 1.0).abs();
            worst_mass = worst_mass.max(dm);
            ensure(dm <= 1e-8, || format!("(N,K)=({n},{k}): mass {}", m.total_mass()))?;
        }
    }
    let mut ks_parts = Vec::new();
    for (n, k) in [(2usize, 2usize), (2, 4), (3, 3)] {
        let spec = InducedSpec::new(n, k).map_err(e)?;
        let m = marginal(spec).map_err(e)?;
        let mus: Vec<f64> = (0..10_000u64)
            .into_par_iter()
            .map(|i| induced_state(spec, &mut RngStream::new(4242, i)).unwrap().purity())
            .collect();
        let d = ks_distance(&mus, |x| m.cdf(x).unwrap());
        ensure(d < 0.02, || format!("(N,K)=({n},{k}): KS {d:.4}"))?;
        ks_parts.push(format!("({n},{k}) KS {d:.4}"));
    }
    Ok(format!(
        "K=N rel error {worst:.1e}, max mass error {worst_mass:.1e}, {}",
        ks_parts.join(", ")
    ))
}

/// High-purity fraction of unconstrained random states.
fn haar_histogram() -> Check {
    let count = 100_000u64;
    let hits = (0..count)
        .into_par_iter()
        .filter(|&i| random_density(4, &mut RngStream::new(77_777, i)).unwrap().purity() >= 0.95)
        .count() as f64;
    let expected = 6.6e-5 * count as f64;
    let band = 3.0 * expected.sqrt();
    ensure((hits - expected).abs() <= band, || format!("{hits} hits, expected {expected:.1} ± {band:.1}"))?;
    Ok(format!("{hits} of {count} in [0.95,1] (expected {expected:.1} ± {band:.1})"))
}

/// Feasible polar coordinates drawn top-down through the angle bounds.
fn feasible_polar(n: usize, rng: &mut RngStream) -> PolarCoords {
    let r = rng.uniform() * max_radius(n);
    let mut x = vec![0.0; n.saturating_sub(3)];
    let mut ctx = BoundContext::Radius(r);
    for k in (3..n).rev() {
        let iv = angle_bounds(n, k, ctx).unwrap();
        x[k - 3] = iv.lo + rng.uniform() * iv.width();
        ctx = BoundContext::Cosine(x[k - 3]);
    }
    let phi2 = if n >= 3 {
        let iv = angle_bounds(n, 2, ctx).unwrap();
        iv.lo + rng.uniform() * iv.width()
    } else {
        0.0
    };
    PolarCoords { dim: n, r, phi2, x }
}

/// Chamber geometry: basis, purity identity, round trips, feasibility.
fn geometry() -> Check {
    let cases = 10_000u64;
    for n in 2..=8usize {
        let b = chamber_basis(n).map_err(e)?;
        ensure(b.orthogonality_defect() < 1e-13, || format!("N={n}: defect {}", b.orthogonality_defect()))?;
        let bad = (0..cases)
            .into_par_iter()
            .map(|i| -> Result<(), String> {
                let mut rng = RngStream::new(n as u64, i);
                let s = simplex_eigs(n, &mut rng).map_err(e)?;
                let p = polar_from_eigs(&s);
                let id = 1.0 / n as f64 + p.r * p.r;
                ensure((s.purity() - id).abs() < 1e-13, || format!("purity identity {} vs {id}", s.purity()))?;
                let back = eigs_from_polar(&p).map_err(e)?;
                let dev = back.lambdas().iter().zip(s.lambdas()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                ensure(dev < 1e-12, || format!("round trip error {dev:.2e}"))?;
                if n >= 3 {
                    let q = feasible_polar(n, &mut rng);
                    check_polar(&q).map_err(e)?;
                    let l = eigs_from_polar(&q).map_err(e)?;
                    let l = l.lambdas();
                    ensure(l.iter().all(|&v| v >= -1e-12), || format!("negative eigenvalue in {l:?}"))?;
                    ensure(l.windows(2).all(|w| w[0] >= w[1] - 1e-12), || format!("unordered {l:?}"))?;
                }
                Ok(())
            })
            .find_any(|r| r.is_err());
        if let Some(Err(msg)) = bad {
            return Err(format!("N={n}: {msg}"));
        }
    }
    Ok(format!("N=2..8, {cases} cases each"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("region shares and tails", region_table),
        ("N=4 normalisers", normalisers),
        ("piecewise continuity", continuity),
        ("N=5 numeric oracle", n5_oracle),
        ("exact-purity sampling", exact_purity),
        ("N=4 marginal laws", marginal_laws),
        ("Werner analytics", werner),
        ("entanglement vs purity", entanglement_vs_purity),
        ("CQC relation", cqc_relation),
        ("induced measures", induced),
        ("Haar histogram", haar_histogram),
        ("geometry suite", geometry),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = check();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
