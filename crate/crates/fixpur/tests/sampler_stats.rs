//! Statistical and reproducibility checks of the fixed-purity sampler.

use fixpur::cdf::{cdf_x3_n4, closed::phi2_lower_n4};
use fixpur::chamber::polar_from_eigs;
use fixpur::matrixcore::simplex_eigs;
use fixpur::rng::RngStream;
use fixpur::sampler::{sample_density, sample_polar, SampleBatch, SampleConfig, PURITY_TOL};
use fixpur::stats::{ks_critical, ks_distance, ks_two_sample};
use rayon::prelude::*;
use std::f64::consts::FRAC_PI_3;

fn polar_batch(n: usize, mu: f64, count: usize, seed: u64) -> Vec<fixpur::chamber::PolarCoords> {
    (0..count)
        .into_par_iter()
        .map(|i| sample_polar(n, mu, &mut RngStream::new(seed, i as u64)).unwrap())
        .collect()
}

#[test]
fn every_sample_has_the_requested_purity() {
    for n in 2..=8 {
        let lo = 1.0 / n as f64;
        for mu in [lo + 1e-3, 0.5 * (lo + 1.0), 0.99] {
            let mut cfg = SampleConfig::new(n, mu, 200, 11);
            cfg.emit_matrix = true;
            let b = sample_density(&cfg).unwrap();
            for (s, rho) in b.samples.iter().zip(b.states().unwrap()) {
                assert!((s.purity - mu).abs() <= PURITY_TOL);
                assert!((rho.purity() - mu).abs() <= PURITY_TOL);
                let mut e = s.eigs_permuted.clone();
                e.sort_by(|a, b| b.total_cmp(a));
                assert_eq!(e, s.eigs_desc);
            }
        }
    }
}

#[test]
fn batches_are_reproducible_and_thread_count_independent() {
    let mut cfg = SampleConfig::new(5, 0.4, 64, 3);
    cfg.emit_matrix = true;
    let a = sample_density(&cfg).unwrap();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = one.install(|| sample_density(&cfg)).unwrap();
    assert_eq!(a, b);
    let c = SampleBatch::from_json(&a.to_json()).unwrap();
    assert_eq!(a, c);
    assert!(a.to_csv().starts_with("index,purity,r,phi2,X3,X4,eig_desc_1"));
    cfg.seed = 4;
    assert_ne!(sample_density(&cfg).unwrap(), a);
}

#[test]
fn n4_angle_laws_match_their_cdfs() {
    let mu = 0.55;
    let r = (mu - 0.25f64).sqrt();
    let pts = polar_batch(4, mu, 10_000, 21);
    let x3: Vec<f64> = pts.iter().map(|p| p.x[0]).collect();
    let d = ks_distance(&x3, |x| cdf_x3_n4(x, r).unwrap());
    assert!(d < ks_critical(x3.len(), 1e-3), "X3 KS {d}");
    let u: Vec<f64> = pts
        .iter()
        .map(|p| {
            let lo = phi2_lower_n4(p.x[0]);
            (p.phi2 - lo) / (FRAC_PI_3 - lo)
        })
        .collect();
    let d = ks_distance(&u, |t| t.clamp(0.0, 1.0));
    assert!(d < ks_critical(u.len(), 1e-3), "phi2 KS {d}");
}

/// Uniform simplex points whose purity falls in a thin shell around `mu`.
fn shell_oracle(n: usize, mu: f64, width: f64, want: usize, seed: u64) -> Vec<fixpur::chamber::PolarCoords> {
    let mut out = Vec::new();
    let mut chunk = 0u64;
    while out.len() < want {
        let got: Vec<_> = (0..200_000u64)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = RngStream::new(seed, chunk * 200_000 + i);
                let s = simplex_eigs(n, &mut rng).unwrap();
                ((s.purity() - mu).abs() < width).then(|| polar_from_eigs(&s))
            })
            .collect();
        out.extend(got);
        chunk += 1;
    }
    out
}

#[test]
fn sampler_matches_rejection_from_the_uniform_simplex() {
    for (n, mu) in [(4, 0.4), (5, 0.35), (6, 0.3)] {
        let oracle = shell_oracle(n, mu, 1e-3, 3000, 99);
        let ours = polar_batch(n, mu, 6000, 5);
        for k in 3..n {
            let a: Vec<f64> = oracle.iter().map(|p| p.x[k - 3]).collect();
            let b: Vec<f64> = ours.iter().map(|p| p.x[k - 3]).collect();
            let d = ks_two_sample(&a, &b);
            let crit = 1.95 * ((a.len() + b.len()) as f64 / (a.len() * b.len()) as f64).sqrt();
            assert!(d < crit, "N={n} X{k}: KS {d} >= {crit}");
        }
        let a: Vec<f64> = oracle.iter().map(|p| p.phi2).collect();
        let b: Vec<f64> = ours.iter().map(|p| p.phi2).collect();
        let d = ks_two_sample(&a, &b);
        let crit = 1.95 * ((a.len() + b.len()) as f64 / (a.len() * b.len()) as f64).sqrt();
        assert!(d < crit, "N={n} phi2: KS {d} >= {crit}");
    }
}
