//! Command implementations.

use crate::output::{cache_dir, f17, sha256_hex, tag, write_atomic, Csv, Run};
use crate::{
    CdfArgs, CliError, CurveArgs, Experiment, HaarArgs, InducedArgs, InvCdfArgs, LevelArgs, MeasuresArgs,
    RegionsArgs, SampleArgs, ScanArgs, WernerArgs,
};
use fixpur::cdf::levels::GridSpec;
use fixpur::cdf::{build_table, invert_cdf, region_shares, tail_mass, AngleCdf, CdfKind, MonotoneCdf, RadialCdf};
use fixpur::cdf::table::TABLE_VERSION;
use fixpur::chamber::{max_radius, radius_from_purity};
use fixpur::induced::{marginal, InducedSpec};
use fixpur::matrixcore::DensityMatrix;
use fixpur::measures::{
    cmi_zx, concurrence, delta_le, delta_le_prime, discord_and_classical, log_negativity, max_qmi_curve, negativity,
    partial_trace, purity, qmi, s_min_bound, werner_ln, werner_negativity, werner_purity, werner_state,
    BipartiteSplit, Keep, WernerSpec,
};
use fixpur::sampler::{haar_purities, sample_density, sample_states, DenseMatrix, SampleBatch, SampleConfig};
use fixpur::stats::Histogram;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

type Res<T> = Result<T, CliError>;

/// Slack used when checking the CQC relation and triangle containment.
const CQC_SLACK: f64 = 1e-9;

/// `sample`.
pub fn sample(a: &SampleArgs) -> Res<()> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let mut run = Run::new("sample", &a.out_dir, a);
    for (j, &mu) in a.purities.iter().enumerate() {
        let cfg = SampleConfig {
            dim: a.dim,
            mu,
            count: a.count,
            seed: a.seed.wrapping_add(j as u64),
            emit_matrix: a.emit_matrix,
            permute: !a.no_permute,
        };
        cfg.validate()?;
        let batch = sample_density(&cfg)?;
        let dev = batch.samples.iter().map(|s| (s.purity - mu).abs()).fold(0.0, f64::max);
        let stem = format!("sample_n{}_mu{}", a.dim, tag(mu));
        let path = run.write(&format!("{stem}.json"), batch.to_json().as_bytes())?;
        if a.csv {
            run.write(&format!("{stem}.csv"), batch.to_csv().as_bytes())?;
        }
        println!(
            "N={} mu={} count={} max|Tr rho^2 - mu|={:.3e} -> {}",
            a.dim,
            mu,
            batch.samples.len(),
            dev,
            path.display()
        );
    }
    run.finish()?;
    Ok(())
}

enum Level {
    Radial,
    Angle(usize),
}

fn parse_level(l: &LevelArgs) -> Res<Level> {
    if l.dim < 2 {
        return Err(CliError::Lib(fixpur::Error::InvalidDimension(format!("dimension {} < 2", l.dim))));
    }
    if l.level.eq_ignore_ascii_case("radial") {
        return Ok(Level::Radial);
    }
    let k: usize = l
        .level
        .parse()
        .map_err(|_| CliError::Usage(format!("--level must be 'radial' or an integer, got '{}'", l.level)))?;
    if k < 2 || k + 1 > l.dim {
        return Err(CliError::Lib(fixpur::Error::Unsupported(format!(
            "angle level {k} does not exist for N = {} (valid: 2..{})",
            l.dim,
            l.dim.saturating_sub(1)
        ))));
    }
    Ok(Level::Angle(k))
}

fn context_of(l: &LevelArgs, k: usize) -> Res<f64> {
    match (l.context, l.context_purity) {
        (Some(c), _) => Ok(c),
        (None, Some(mu)) if k + 1 == l.dim => Ok(radius_from_purity(l.dim, mu)?),
        (None, Some(_)) => Err(CliError::Usage("--context-purity applies only to the top angle k = N-1".into())),
        (None, None) => Err(CliError::Usage(format!("angle level {k} needs --context"))),
    }
}

fn radial(l: &LevelArgs) -> Res<RadialCdf> {
    Ok(if l.numeric { RadialCdf::numeric(l.dim)? } else { RadialCdf::new(l.dim)? })
}

fn angle(l: &LevelArgs, k: usize, ctx: f64) -> Res<AngleCdf> {
    Ok(if l.numeric { AngleCdf::numeric(l.dim, k, ctx)? } else { AngleCdf::new(l.dim, k, ctx)? })
}

fn check_tol(tol: f64, max: Option<f64>) -> Res<()> {
    match max {
        Some(m) if !(tol <= m) => Err(CliError::Tolerance(format!("achieved tolerance {tol:.3e} exceeds {m:.3e}"))),
        _ => Ok(()),
    }
}

/// `cdf`.
pub fn cdf(a: &CdfArgs) -> Res<()> {
    let level = parse_level(&a.level)?;
    let n = a.level.dim;
    if a.build_table {
        let (kind, ctx) = match level {
            Level::Radial => (CdfKind::Radial, None),
            Level::Angle(k) => (CdfKind::Angle(k), Some(context_of(&a.level, k)?)),
        };
        let spec = GridSpec {
            knots_per_piece: a.knots.max(2),
            ..GridSpec::default()
        };
        let key = format!(
            "v{TABLE_VERSION}|n={n}|kind={kind:?}|ctx={}|knots={}|grading={}",
            ctx.map_or("none".to_string(), f17),
            spec.knots_per_piece,
            f17(spec.grading)
        );
        let digest = sha256_hex(key.as_bytes());
        let path = cache_dir().join(format!("cdf-{}.json", &digest[..16]));
        let cached = path.exists();
        if !cached {
            let table = build_table(n, kind, ctx, spec)?;
            check_tol(table.abs_tol(), a.max_tol)?;
            write_atomic(&path, table.to_json().as_bytes())?;
        }
        let bytes = std::fs::read(&path)?;
        println!(
            "{}",
            json!({ "table": path.display().to_string(), "cached": cached, "sha256": sha256_hex(&bytes) })
        );
        return Ok(());
    }
    let out = match level {
        Level::Radial => {
            let f = radial(&a.level)?;
            let r = match (a.at, a.at_purity) {
                (Some(r), _) => r,
                (None, Some(mu)) => radius_from_purity(n, mu)?,
                (None, None) => return Err(CliError::Usage("give --at, --at-purity or --build-table".into())),
            };
            if !(r >= 0.0 && r <= max_radius(n) + 1e-14) {
                return Err(CliError::Lib(fixpur::Error::Domain(format!(
                    "radius {r} outside [0, {}]",
                    max_radius(n)
                ))));
            }
            json!({
                "dim": n, "level": "radial", "r": r, "purity": 1.0 / n as f64 + r * r,
                "value": f.cdf(r), "tail": f.tail(r), "abs_tol": f.abs_tol(), "method": f.method(),
            })
        }
        Level::Angle(k) => {
            if a.at_purity.is_some() {
                return Err(CliError::Usage("--at-purity applies only to the radial level".into()));
            }
            let x = a.at.ok_or_else(|| CliError::Usage("give --at or --build-table".into()))?;
            let ctx = context_of(&a.level, k)?;
            let f = angle(&a.level, k, ctx)?;
            let (lo, hi) = f.support();
            if !(x >= lo - 1e-14 && x <= hi + 1e-14) {
                return Err(CliError::Lib(fixpur::Error::Domain(format!("point {x} outside [{lo}, {hi}]"))));
            }
            json!({
                "dim": n, "level": k, "context": ctx, "at": x, "support": [lo, hi],
                "value": f.cdf(x), "tail": f.tail(x), "abs_tol": f.abs_tol(), "method": f.method(),
            })
        }
    };
    println!("{out}");
    check_tol(out["abs_tol"].as_f64().unwrap_or(f64::NAN), a.max_tol)
}

/// `invcdf`.
pub fn invcdf(a: &InvCdfArgs) -> Res<()> {
    let level = parse_level(&a.level)?;
    let n = a.level.dim;
    for &p in &a.probs {
        let out = match level {
            Level::Radial => {
                let f = radial(&a.level)?;
                let r = invert_cdf(&f, p)?;
                json!({ "dim": n, "level": "radial", "p": p, "r": r, "purity": 1.0 / n as f64 + r * r,
                        "abs_tol": f.abs_tol() })
            }
            Level::Angle(k) => {
                let ctx = context_of(&a.level, k)?;
                let f = angle(&a.level, k, ctx)?;
                let x = invert_cdf(&f, p)?;
                json!({ "dim": n, "level": k, "context": ctx, "p": p, "value": x, "abs_tol": f.abs_tol() })
            }
        };
        println!("{out}");
    }
    Ok(())
}

/// Region shares and tails of one dimension, in percent.
#[derive(Debug, Serialize)]
struct RegionReport {
    dim: usize,
    regions: Vec<RegionRow>,
    tail_095_percent: f64,
    tail_099_percent: f64,
}

#[derive(Debug, Serialize)]
struct RegionRow {
    region: usize,
    purity_lo: f64,
    purity_hi: f64,
    percent: f64,
}

/// `regions`.
pub fn regions(a: &RegionsArgs) -> Res<()> {
    if !(2..=8).contains(&a.dim) {
        return Err(CliError::Lib(fixpur::Error::Unsupported(format!(
            "region tables are available for N in 2..=8, got {}",
            a.dim
        ))));
    }
    let n = a.dim;
    let regions = region_shares(n)?
        .into_iter()
        .map(|(id, s)| {
            let (lo, hi) = id.purity_range(n);
            RegionRow {
                region: id.0,
                purity_lo: lo,
                purity_hi: hi,
                percent: 100.0 * s,
            }
        })
        .collect();
    let rep = RegionReport {
        dim: n,
        regions,
        tail_095_percent: 100.0 * tail_mass(n, 0.95)?,
        tail_099_percent: 100.0 * tail_mass(n, 0.99)?,
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rep).expect("report serialises"));
    } else {
        println!("N = {n}");
        for r in &rep.regions {
            println!(
                "  region {}  mu in [{:.6}, {:.6}]  {:>10.5} %",
                r.region, r.purity_lo, r.purity_hi, r.percent
            );
        }
        println!("  mu in [0.95, 1]  {:.5e} %", rep.tail_095_percent);
        println!("  mu in [0.99, 1]  {:.5e} %", rep.tail_099_percent);
    }
    Ok(())
}

/// Explicit list of states with labels (e.g. a parameter sweep).
#[derive(Debug, Serialize, Deserialize)]
pub struct StateSet {
    /// Matrix dimension.
    pub dim: usize,
    /// One label per state (sweep parameter).
    pub labels: Vec<f64>,
    /// Dense matrices.
    pub states: Vec<DenseMatrix>,
}

fn load_states(text: &str) -> Res<(Vec<f64>, Vec<DensityMatrix>)> {
    if let Ok(batch) = SampleBatch::from_json(text) {
        let states = batch.states().map_err(|_| {
            CliError::Lib(fixpur::Error::Format(
                "batch has no dense matrices; re-run `sample` with --emit-matrix".into(),
            ))
        })?;
        return Ok((vec![batch.config.mu; states.len()], states));
    }
    let set: StateSet = serde_json::from_str(text)
        .map_err(|e| CliError::Lib(fixpur::Error::Format(format!("unrecognised state file: {e}"))))?;
    if set.labels.len() != set.states.len() {
        return Err(CliError::Lib(fixpur::Error::Format("labels and states differ in length".into())));
    }
    let states = set
        .states
        .iter()
        .map(|m| Ok(DensityMatrix::new(m.to_matrix()?)?))
        .collect::<Res<Vec<_>>>()?;
    Ok((set.labels, states))
}

fn parse_split(s: &str) -> Res<BipartiteSplit> {
    let parts: Vec<&str> = s.split(['x', 'X', '×']).collect();
    let bad = || CliError::Usage(format!("--split must look like 2x2, got '{s}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: usize = parts[0].trim().parse().map_err(|_| bad())?;
    let b: usize = parts[1].trim().parse().map_err(|_| bad())?;
    Ok(BipartiteSplit::new(a, b)?)
}

const MEASURES: [&str; 9] = [
    "purity_a",
    "concurrence",
    "ln",
    "negativity",
    "dle",
    "dle_prime",
    "qmi",
    "cmi_zx",
    "discord",
];

fn eval_measures(rho: &DensityMatrix, split: BipartiteSplit, set: &[String]) -> fixpur::Result<Vec<f64>> {
    let mut out = Vec::with_capacity(set.len() + 1);
    for m in set {
        match m.as_str() {
            "purity_a" => out.push(purity(&partial_trace(rho, split, Keep::A)?)),
            "concurrence" => out.push(concurrence(rho)?),
            "ln" => out.push(log_negativity(rho, split)?),
            "negativity" => out.push(negativity(rho, split)?),
            "dle" => out.push(delta_le(rho, split)?),
            "dle_prime" => out.push(delta_le_prime(rho, split)?),
            "qmi" => out.push(qmi(rho, split)?),
            "cmi_zx" => out.push(cmi_zx(rho, split)?),
            "discord" => {
                let d = discord_and_classical(rho, split)?;
                out.push(d.discord);
                out.push(d.classical);
            }
            other => unreachable!("validated measure name {other}"),
        }
    }
    Ok(out)
}

/// `measures`.
pub fn measures(a: &MeasuresArgs) -> Res<()> {
    let set: Vec<String> = a.set.iter().map(|s| s.trim().to_ascii_lowercase()).filter(|s| !s.is_empty()).collect();
    if let Some(bad) = set.iter().find(|s| !MEASURES.contains(&s.as_str())) {
        return Err(CliError::Usage(format!("unknown measure '{bad}' (known: {})", MEASURES.join(", "))));
    }
    let split = parse_split(&a.split)?;
    let text = std::fs::read_to_string(&a.input)?;
    let (labels, states) = load_states(&text)?;
    if let Some(s) = states.iter().find(|s| s.dim() != split.dim()) {
        return Err(CliError::Lib(fixpur::Error::InvalidDimension(format!(
            "state of dimension {} does not match split {}x{}",
            s.dim(),
            split.dim_a,
            split.dim_b
        ))));
    }
    let rows: Vec<Vec<f64>> = states
        .par_iter()
        .map(|rho| eval_measures(rho, split, &set))
        .collect::<fixpur::Result<_>>()?;
    let mut header = vec!["index".to_string(), "label".to_string(), "purity".to_string()];
    for m in &set {
        if m == "discord" {
            header.push("discord".into());
            header.push("classical".into());
        } else {
            header.push(m.clone());
        }
    }
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&h);
    for (i, (row, rho)) in rows.iter().zip(&states).enumerate() {
        let mut cells = vec![i.to_string(), f17(labels[i]), f17(rho.purity())];
        cells.extend(row.iter().map(|&v| f17(v)));
        csv.row(&cells);
    }
    let (dir, name) = match &a.out {
        Some(p) => (
            p.parent().map(|d| d.to_path_buf()).unwrap_or_default(),
            p.file_name().and_then(|n| n.to_str()).unwrap_or("measures.csv").to_string(),
        ),
        None => (a.out_dir.clone(), "measures.csv".to_string()),
    };
    let mut run = Run::new("measures", &dir, a);
    let path = run.write(&name, csv.into_string().as_bytes())?;
    run.finish()?;
    println!("{} states, {} measure columns -> {}", states.len(), header.len() - 3, path.display());
    Ok(())
}

/// `experiment …`.
pub fn experiment(e: &Experiment) -> Res<()> {
    match e {
        Experiment::CqcScan(a) => cqc_scan(a),
        Experiment::EntVsPurity(a) => ent_vs_purity(a),
        Experiment::HaarHist(a) => haar_hist(a),
        Experiment::InducedMarginal(a) => induced_marginal(a),
        Experiment::MaxQmiCurve(a) => max_qmi(a),
        Experiment::WernerSweep(a) => werner_sweep(a),
    }
}

fn two_qubits(dim: usize) -> Res<BipartiteSplit> {
    if dim != 4 {
        return Err(CliError::Lib(fixpur::Error::Unsupported(format!(
            "this experiment needs two qubits (dim 4), got {dim}"
        ))));
    }
    Ok(BipartiteSplit::qubits())
}

fn scan_states(a: &ScanArgs, j: usize, mu: f64) -> Res<Vec<DensityMatrix>> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    Ok(sample_states(a.dim, mu, a.count, a.seed.wrapping_add(j as u64))?)
}

fn cqc_scan(a: &ScanArgs) -> Res<()> {
    let split = two_qubits(a.dim)?;
    let mut run = Run::new("cqc-scan", &a.out_dir, a);
    for (j, &mu) in a.purities.iter().enumerate() {
        let states = scan_states(a, j, mu)?;
        let pts: Vec<(f64, f64)> = states
            .par_iter()
            .map(|r| Ok((cmi_zx(r, split)?, qmi(r, split)?)))
            .collect::<fixpur::Result<_>>()?;
        let mut csv = Csv::new(&["index", "cmi_zx", "qmi"]);
        let (mut violations, mut outside) = (0usize, 0usize);
        for (i, &(x, y)) in pts.iter().enumerate() {
            csv.row(&[i.to_string(), f17(x), f17(y)]);
            if y < x - CQC_SLACK {
                violations += 1;
            }
            if x < -CQC_SLACK || y > 2.0 + CQC_SLACK || y < x - CQC_SLACK {
                outside += 1;
            }
        }
        run.write(&format!("cqc_mu{}.csv", tag(mu)), csv.into_string().as_bytes())?;
        println!("mu={mu}: {} points, {violations} CQC violations, {outside} outside triangle", pts.len());
    }
    run.finish()?;
    Ok(())
}

fn ent_vs_purity(a: &ScanArgs) -> Res<()> {
    let split = two_qubits(a.dim)?;
    let mut run = Run::new("ent-vs-purity", &a.out_dir, a);
    for (j, &mu) in a.purities.iter().enumerate() {
        let states = scan_states(a, j, mu)?;
        let rows: Vec<[f64; 6]> = states
            .par_iter()
            .map(|r| {
                Ok([
                    r.purity(),
                    concurrence(r)?,
                    negativity(r, split)?,
                    log_negativity(r, split)?,
                    delta_le(r, split)?,
                    delta_le_prime(r, split)?,
                ])
            })
            .collect::<fixpur::Result<_>>()?;
        let mut csv = Csv::new(&["index", "purity", "concurrence", "negativity", "ln", "dle", "dle_prime"]);
        for (i, row) in rows.iter().enumerate() {
            let mut cells = vec![i.to_string()];
            cells.extend(row.iter().map(|&v| f17(v)));
            csv.row(&cells);
        }
        let cmax = rows.iter().map(|r| r[1]).fold(0.0, f64::max);
        let entangled = rows.iter().filter(|r| r[1] > 1e-12).count();
        run.write(&format!("ent_mu{}.csv", tag(mu)), csv.into_string().as_bytes())?;
        println!("mu={mu}: {} samples, {entangled} entangled, max concurrence {cmax:.6}", rows.len());
    }
    run.finish()?;
    Ok(())
}

fn haar_hist(a: &HaarArgs) -> Res<()> {
    if a.dim < 2 {
        return Err(CliError::Lib(fixpur::Error::InvalidDimension(format!("dimension {} < 2", a.dim))));
    }
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let mus = haar_purities(a.dim, a.count, a.seed)?;
    let mut h = Histogram::with_width(1.0 / a.dim as f64, 1.0, a.bin)?;
    for &m in &mus {
        h.add(m);
    }
    let mut csv = Csv::new(&["bin_lo", "bin_hi", "count", "density"]);
    let total = h.total().max(1) as f64;
    for (i, &c) in h.counts.iter().enumerate() {
        let (lo, hi) = (h.edges[i], h.edges[i + 1]);
        csv.row(&[f17(lo), f17(hi), c.to_string(), f17(c as f64 / (total * (hi - lo)))]);
    }
    let mut run = Run::new("haar-hist", &a.out_dir, a);
    let path = run.write(&format!("haar_hist_n{}.csv", a.dim), csv.into_string().as_bytes())?;
    run.finish()?;
    let hits = mus.iter().filter(|&&m| m >= 0.95).count();
    let expect = if a.dim <= 8 { tail_mass(a.dim, 0.95).ok() } else { None };
    match expect {
        Some(p) => println!(
            "{} draws; fraction in [0.95, 1] = {:.3e} (uniform-measure expectation {:.3e}) -> {}",
            a.count,
            hits as f64 / a.count as f64,
            p,
            path.display()
        ),
        None => println!(
            "{} draws; fraction in [0.95, 1] = {:.3e} -> {}",
            a.count,
            hits as f64 / a.count as f64,
            path.display()
        ),
    }
    Ok(())
}

fn induced_marginal(a: &InducedArgs) -> Res<()> {
    let mut run = Run::new("induced-marginal", &a.out_dir, a);
    for &k in &a.reservoir {
        let spec = InducedSpec::new(a.dim, k)?;
        let m = marginal(spec)?;
        let mut csv = Csv::new(&["mu", "pdf", "cdf"]);
        for (mu, p, c) in m.curve(a.points)? {
            csv.floats(&[mu, p, c]);
        }
        run.write(&format!("induced_n{}_k{k}.csv", a.dim), csv.into_string().as_bytes())?;
        if a.dim == 2 {
            let mut r = Csv::new(&["s2", "pdf"]);
            let smax = 2f64.ln();
            for i in 0..a.points.max(2) {
                let s = smax * i as f64 / (a.points.max(2) - 1) as f64;
                r.floats(&[s, m.renyi_pdf(s)?]);
            }
            run.write(&format!("induced_renyi_n2_k{k}.csv"), r.into_string().as_bytes())?;
        }
        println!("N={} K={k}: total mass {:.12}", a.dim, m.total_mass());
    }
    run.finish()?;
    Ok(())
}

fn max_qmi(a: &CurveArgs) -> Res<()> {
    two_qubits(a.dim)?;
    let mut csv = Csv::new(&["mu", "s_min", "max_qmi"]);
    let pts = a.points.max(2);
    for i in 0..pts {
        let mu = 0.25 + 0.75 * i as f64 / (pts - 1) as f64;
        csv.floats(&[mu, s_min_bound(mu, 4)?, max_qmi_curve(mu)?]);
    }
    let mut run = Run::new("max-qmi-curve", &a.out_dir, a);
    let path = run.write("max_qmi_curve.csv", csv.into_string().as_bytes())?;
    run.finish()?;
    println!("{pts} points -> {}", path.display());
    Ok(())
}

fn werner_sweep(a: &WernerArgs) -> Res<()> {
    let mut run = Run::new("werner-sweep", &a.out_dir, a);
    let pts = a.points.max(2);
    for &d in &a.d {
        let mut csv = if d == 2 {
            Csv::new(&["p", "purity", "negativity", "ln", "concurrence"])
        } else {
            Csv::new(&["p", "purity", "negativity", "ln"])
        };
        let mut labels = Vec::new();
        let mut states = Vec::new();
        for i in 0..pts {
            let p = i as f64 / (pts - 1) as f64;
            let spec = WernerSpec::new(d, p)?;
            let mut row = vec![p, werner_purity(spec)?, werner_negativity(spec)?, werner_ln(spec)?];
            let need_state = d == 2 || a.emit_states;
            if need_state {
                let rho = werner_state(spec)?;
                if d == 2 {
                    row.push(concurrence(&rho)?);
                }
                if a.emit_states {
                    labels.push(p);
                    states.push(DenseMatrix::from_matrix(rho.matrix()));
                }
            }
            csv.floats(&row);
        }
        run.write(&format!("werner_d{d}.csv"), csv.into_string().as_bytes())?;
        if a.emit_states {
            let set = StateSet { dim: d * d, labels, states };
            let text = serde_json::to_string(&set).expect("state set serialises");
            run.write(&format!("werner_states_d{d}.json"), text.as_bytes())?;
        }
        println!("d={d}: {pts} grid points");
    }
    run.finish()?;
    Ok(())
}
