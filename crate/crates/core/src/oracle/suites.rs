use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{enumerate_labeled_trees, tree_instance, verify_schur_identity, VerificationRecord};
use crate::bounds::{a_t_universal_bounds, ratio_sandwich, BoundMode, HORIZON_SLACK};
use crate::error::{Error, Result};
use crate::fiedler::{caterpillar_extrema, check_pendant_extrema, fiedler_report, rose_analysis, Fed, EXTREMA_TOL};
use crate::linalg::{laplacian, reduced_laplacian, sym_eigen};
use crate::schur::perron_bounds;
use crate::tree::{decompose_along_path, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Schur,
    Bounds,
    Fiedler,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "all" => Ok(Suite::All),
            "schur" => Ok(Suite::Schur),
            "bounds" => Ok(Suite::Bounds),
            "fiedler" => Ok(Suite::Fiedler),
            _ => Err(Error::Parse(format!("unknown suite '{s}' (all|schur|bounds|fiedler)"))),
        }
    }
}

/// Random trees checked by the sampled parts of the suites.
const RANDOM_SAMPLES: usize = 500;
const RANDOM_MAX_N: usize = 30;

/// Runs `suite` exhaustively over all trees with `n ≤ max_n`, plus a fixed
/// random sample seeded by `seed`. Passing batches are aggregated into one
/// record per claim and size; every failure gets its own record.
pub fn run_suite(suite: Suite, max_n: usize, seed: u64, jobs: usize) -> Result<Vec<VerificationRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?;
    let mut out = Vec::new();
    if matches!(suite, Suite::All | Suite::Schur) {
        pool.install(|| schur_suite(max_n, seed, &mut out))?;
    }
    if matches!(suite, Suite::All | Suite::Bounds) {
        pool.install(|| bounds_suite(max_n, seed, &mut out))?;
    }
    if matches!(suite, Suite::All | Suite::Fiedler) {
        pool.install(|| fiedler_suite(max_n, seed, &mut out))?;
    }
    Ok(out)
}

/// Folds per-instance records into one summary (worst observed values)
/// followed by every failing record.
fn aggregate(claim: &str, instance: serde_json::Value, tolerance: f64, recs: Vec<VerificationRecord>, out: &mut Vec<VerificationRecord>) {
    let mut summary = VerificationRecord::new(claim, instance, tolerance);
    summary.observe("instances", recs.len() as f64);
    let mut fails = Vec::new();
    for r in recs {
        for (k, &v) in &r.observed {
            let e = summary.observed.entry(format!("worst_{k}")).or_insert(v);
            // "min_*" quantities are worst when small, the rest when large.
            *e = if k.starts_with("min_") { e.min(v) } else { e.max(v) };
        }
        if !r.pass {
            fails.push(r);
        }
    }
    summary.observe("failures", fails.len() as f64);
    summary.pass = fails.is_empty();
    out.push(summary);
    out.extend(fails);
}

fn exhaustive(n: usize) -> Result<Vec<Tree>> {
    Ok(enumerate_labeled_trees(n)?.collect())
}

fn random_trees(seed: u64) -> Result<Vec<(u64, Tree)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_SAMPLES)
        .map(|_| {
            let n = rng.gen_range(2..=RANDOM_MAX_N);
            let s: u64 = rng.gen();
            Ok((s, Tree::random(n, s)?))
        })
        .collect()
}

fn random_path(t: &Tree, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = rng.gen_range(0..t.n());
    let v = rng.gen_range(0..t.n());
    t.path_between(u, v)
}

fn schur_suite(max_n: usize, seed: u64, out: &mut Vec<VerificationRecord>) -> Result<()> {
    for n in 2..=max_n {
        let trees = exhaustive(n)?;
        for kind in ["spine", "random"] {
            let recs: Vec<VerificationRecord> = trees
                .par_iter()
                .enumerate()
                .map(|(i, t)| {
                    let path = match kind {
                        "spine" => t.longest_path(),
                        _ => random_path(t, seed ^ ((n as u64) << 32) ^ i as u64),
                    };
                    verify_schur_identity(t, &path)
                })
                .collect::<Result<_>>()?;
            aggregate(
                "schur_equivalence",
                json!({ "n": n, "path": kind, "seed": seed }),
                crate::schur::KERNEL_TOL,
                recs,
                out,
            );
        }
    }
    Ok(())
}

/// `a(T)` and the Perron values, recomputed from scratch.
fn oracle_perron(t: &Tree, v: usize) -> Result<f64> {
    let sp = sym_eigen(&reduced_laplacian(t, v)?)?;
    Ok(1.0 / sp.values[0])
}

fn oracle_a(t: &Tree) -> Result<f64> {
    Ok(sym_eigen(&laplacian(t))?.values[1])
}

fn universal_record(t: &Tree) -> Result<VerificationRecord> {
    let a = oracle_a(t)?;
    let (lo, hi) = a_t_universal_bounds(t)?;
    let tol = 1e-9;
    let mut r = VerificationRecord::new("a_t_universal_bounds", tree_instance(t, &[]), tol);
    r.observe("max_excess", (lo - a).max(a - hi));
    if t.diameter() + 1 == t.n() {
        r.observe("path_upper_gap", (hi - a).abs());
    }
    r.pass = lo <= a + tol && a <= hi + tol && r.observed.get("path_upper_gap").is_none_or(|&g| g < tol);
    Ok(r)
}

fn perron_record(t: &Tree) -> Result<VerificationRecord> {
    let tol = 1e-9;
    let mut r = VerificationRecord::new("perron_bounds", tree_instance(t, &[]), tol);
    let mut excess = f64::NEG_INFINITY;
    for v in 0..t.n() {
        let p = oracle_perron(t, v)?;
        let (lo, hi) = perron_bounds(t, v)?;
        excess = excess.max((lo - p) / p).max((p - hi) / p);
    }
    r.observe("max_relative_excess", excess);
    r.pass = excess <= tol;
    Ok(r)
}

fn sandwich_record(t: &Tree, s: u64) -> Result<Option<VerificationRecord>> {
    let sp = sym_eigen(&laplacian(t))?;
    let n = t.n();
    if n < 3 || sp.values[2] - sp.values[1] <= 1e-8 * sp.values[n - 1] {
        return Ok(None);
    }
    let path = random_path(t, s);
    let d = decompose_along_path(t, &path)?;
    let a = sp.values[1];
    let env = match ratio_sandwich(&d, a, BoundMode::Exact) {
        Ok(e) => e,
        Err(_) => return Ok(None),
    };
    let x: Vec<f64> = path.iter().map(|&v| sp.vectors[1][v]).collect();
    if x[0].abs() < 1e-8 {
        return Ok(None);
    }
    let mut r = VerificationRecord::new("ratio_sandwich", json!({ "n": n, "seed": s, "path": path }), HORIZON_SLACK);
    let v = env.max_violation(&x);
    r.observe("max_violation", v);
    r.pass = v <= HORIZON_SLACK;
    Ok(Some(r))
}

fn bounds_suite(max_n: usize, seed: u64, out: &mut Vec<VerificationRecord>) -> Result<()> {
    for n in 2..=max_n {
        let trees = exhaustive(n)?;
        let u: Vec<_> = trees.par_iter().map(universal_record).collect::<Result<_>>()?;
        aggregate("a_t_universal_bounds", json!({ "n": n }), 1e-9, u, out);
        let p: Vec<_> = trees.par_iter().map(perron_record).collect::<Result<_>>()?;
        aggregate("perron_bounds", json!({ "n": n }), 1e-9, p, out);
    }
    let sample = random_trees(seed)?;
    let recs: Vec<Option<VerificationRecord>> =
        sample.par_iter().map(|(s, t)| sandwich_record(t, *s)).collect::<Result<_>>()?;
    aggregate(
        "ratio_sandwich",
        json!({ "random": RANDOM_SAMPLES, "max_n": RANDOM_MAX_N, "seed": seed }),
        HORIZON_SLACK,
        recs.into_iter().flatten().collect(),
        out,
    );
    Ok(())
}

fn extrema_record(t: &Tree) -> Result<Option<VerificationRecord>> {
    let rep = fiedler_report(t)?;
    if !rep.simple || t.diameter() < 2 {
        return Ok(None);
    }
    let mut r = VerificationRecord::new("pendant_extrema", tree_instance(t, &[]), EXTREMA_TOL);
    let v = check_pendant_extrema(&rep, t)?;
    r.observe("offending", v.offending.len() as f64);
    r.pass = v.pass;
    // Caterpillars: the extrema sit among the end leaves.
    if let Ok(Some(ok)) = caterpillar_extrema(t).map(|c| c.consistent) {
        r.observe("caterpillar_mismatch", if ok { 0.0 } else { 1.0 });
        r.pass &= ok;
    }
    // A reported FED witness must really be an extremal non-endpoint, or
    // expose a tie, according to a fresh eigendecomposition.
    if let Fed::Fails { witness } = rep.fed {
        let sp = sym_eigen(&laplacian(t))?;
        let x = &sp.vectors[1];
        let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = x.iter().copied().fold(f64::INFINITY, f64::min);
        let extremal = x[witness] >= max - EXTREMA_TOL || x[witness] <= min + EXTREMA_TOL;
        r.observe("witness_not_extremal", if extremal { 0.0 } else { 1.0 });
        r.pass &= extremal;
    }
    Ok(Some(r))
}

fn fiedler_suite(max_n: usize, seed: u64, out: &mut Vec<VerificationRecord>) -> Result<()> {
    for n in 3..=max_n {
        let trees = exhaustive(n)?;
        let recs: Vec<Option<VerificationRecord>> = trees.par_iter().map(extrema_record).collect::<Result<_>>()?;
        aggregate("fiedler_extrema", json!({ "n": n }), EXTREMA_TOL, recs.into_iter().flatten().collect(), out);
    }
    let sample = random_trees(seed)?;
    let recs: Vec<Option<VerificationRecord>> =
        sample.par_iter().map(|(_, t)| if t.n() < 3 { Ok(None) } else { extrema_record(t) }).collect::<Result<_>>()?;
    aggregate(
        "fiedler_extrema",
        json!({ "random": RANDOM_SAMPLES, "max_n": RANDOM_MAX_N, "seed": seed }),
        EXTREMA_TOL,
        recs.into_iter().flatten().collect(),
        out,
    );

    let mut roses = Vec::new();
    for l in 3..=5 {
        for r in 2..=3 {
            let an = rose_analysis(l, l, r)?;
            let predicted = an.predicted_a.unwrap_or(f64::NAN);
            let a = oracle_a(&crate::tree::RoseLayout::new(l, l, r)?.build())?;
            let mut rec = VerificationRecord::new("perfect_rose", json!({ "l": l, "t": l, "r": r }), 1e-8);
            rec.observe("a_error", (a - predicted).abs());
            let star = an.star_max_abs.unwrap_or(f64::INFINITY);
            rec.observe("star_max_abs", star);
            rec.pass = !an.alsosuff || ((a - predicted).abs() < 1e-8 && star < 1e-8);
            roses.push(rec);
        }
    }
    aggregate("perfect_rose", json!({ "l": "3..5", "r": "2..3" }), 1e-8, roses, out);
    Ok(())
}
