//! Brute-force ground truth: exhaustive labeled-tree enumeration, dense
//! eigendecomposition cross-checks and finite-difference derivatives.

mod suites;

pub use suites::{run_suite, Suite};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{clears_margin, distance_up_to_sign, laplacian, normalized, sym_eigen};
use crate::schur::{SchurReduction, KERNEL_TOL};
use crate::tree::{decompose_along_path, Tree};

/// Largest `n` accepted by [`enumerate_labeled_trees`].
pub const ENUMERATION_CAP: usize = 9;

/// All `n^(n−2)` labeled trees on `n` vertices, in lexicographic Prüfer
/// order.
pub struct LabeledTrees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let t = if self.n == 1 { Tree::singleton() } else { Tree::from_pruefer(&self.seq).expect("odometer digits stay below n") };
        // Odometer step.
        self.done = true;
        for d in self.seq.iter_mut().rev() {
            *d += 1;
            if *d < self.n {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(t)
    }
}

pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees> {
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge { n, cap: ENUMERATION_CAP });
    }
    Ok(LabeledTrees { n, seq: vec![0; n.saturating_sub(2)], done: false })
}

/// Outcome of one checked claim on one instance (or one aggregated batch).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub claim: String,
    /// Tree, parameters and seed; enough to rerun the check.
    pub instance: serde_json::Value,
    pub observed: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationRecord {
    pub fn new(claim: &str, instance: serde_json::Value, tolerance: f64) -> VerificationRecord {
        VerificationRecord { claim: claim.into(), instance, observed: BTreeMap::new(), tolerance, pass: true }
    }

    pub fn observe(&mut self, key: &str, value: f64) {
        self.observed.insert(key.into(), value);
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Serializes `records` as JSON lines.
pub fn to_jsonl(records: &[VerificationRecord]) -> String {
    records.iter().map(|r| r.to_json_line() + "\n").collect()
}

/// Instance descriptor for a tree plus a path.
pub fn tree_instance(t: &Tree, path: &[usize]) -> serde_json::Value {
    serde_json::json!({ "n": t.n(), "edges": t.edges(), "path": path })
}

/// Grid points closer than this (relatively) to an eigenvalue are skipped
/// in the converse check.
const GRID_SEPARATION: f64 = 1e-3;
/// `σ_min(S(λ))` must exceed this at grid points away from `σ(L(T))`.
pub const GRID_SIGMA_FLOOR: f64 = 1e-6;

/// Checks the Schur equivalence on `(t, path)`:
///
/// * at every eigenvalue of `L(T)` clearing the block margins, `S(λ)` is
///   singular, annihilates the path-restricted eigenvector, and the
///   reconstruction from the path recovers the eigenvector;
/// * at midpoints between well-separated eigenvalues, `S(λ)` is not
///   singular.
pub fn verify_schur_identity(t: &Tree, path: &[usize]) -> Result<VerificationRecord> {
    let d = decompose_along_path(t, path)?;
    let red = SchurReduction::new(&d)?;
    let sp = sym_eigen(&laplacian(t))?;
    let mut rec = VerificationRecord::new("schur_equivalence", tree_instance(t, path), KERNEL_TOL);
    let (mut sigma, mut resid, mut recon, mut checked) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    for (idx, &lambda) in sp.values.iter().enumerate() {
        if red.check_shift(lambda).is_err() {
            continue;
        }
        // Reconstruction is only unique for simple eigenvalues.
        let simple = sp.values.iter().enumerate().all(|(j, &mu)| j == idx || clears_margin(lambda, mu));
        let s = red.matrix(lambda)?;
        sigma = sigma.max(s.sigma_min()?);
        let x = &sp.vectors[idx];
        let x_path: Vec<f64> = path.iter().map(|&v| x[v]).collect();
        let scale = x_path.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if scale > 1e-8 {
            resid = resid.max(s.relative_residual(&x_path));
            if simple {
                match red.reconstruct(lambda, &x_path) {
                    Ok(y) => recon = recon.max(distance_up_to_sign(&normalized(&y), x)),
                    Err(_) => recon = f64::INFINITY,
                }
            }
        }
        checked += 1;
    }

    let mut grid_min = f64::INFINITY;
    for w in sp.values.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= GRID_SEPARATION * hi.max(1.0) {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let clear = red
            .blocks()
            .iter()
            .all(|b| b.solver().spectrum().values.iter().all(|&mu| (mid - mu).abs() > GRID_SEPARATION * mu.max(1.0)));
        if clear {
            grid_min = grid_min.min(red.matrix(mid)?.sigma_min()?);
        }
    }

    rec.observe("eigenvalues_checked", checked as f64);
    rec.observe("max_sigma_min", sigma);
    rec.observe("max_kernel_residual", resid);
    rec.observe("max_reconstruction_error", recon);
    rec.observe("min_grid_sigma", if grid_min.is_finite() { grid_min } else { -1.0 });
    rec.pass = sigma < KERNEL_TOL
        && resid < KERNEL_TOL
        && recon < KERNEL_TOL
        && (!grid_min.is_finite() || grid_min > GRID_SIGMA_FLOOR);
    Ok(rec)
}

/// Central difference at `x0` of order 1 or 2 with one Richardson step
/// (steps `1e−5` and `1e−4` respectively).
pub fn finite_difference(f: impl Fn(f64) -> f64, x0: f64, order: usize) -> Result<f64> {
    let d = |h: f64| match order {
        1 => Ok((f(x0 + h) - f(x0 - h)) / (2.0 * h)),
        2 => Ok((f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h)),
        _ => Err(Error::BadParams(format!("finite differences of order {order} are not supported"))),
    };
    let h = if order == 1 { 1e-5 } else { 1e-4 };
    Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::PendantRatio;
    use crate::tree::{generate, FamilySpec};

    #[test]
    fn counts() {
        assert_eq!(enumerate_labeled_trees(1).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_trees(3).unwrap().count(), 3);
        assert_eq!(enumerate_labeled_trees(4).unwrap().count(), 16);
        assert_eq!(enumerate_labeled_trees(6).unwrap().count(), 1296);
        assert!(matches!(enumerate_labeled_trees(10), Err(Error::TooLarge { n: 10, cap: 9 })));
    }

    #[test]
    fn enumeration_is_distinct() {
        let mut seen: Vec<Vec<(usize, usize)>> = enumerate_labeled_trees(5)
            .unwrap()
            .map(|t| {
                let mut e: Vec<_> = t.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                e.sort_unstable();
                e
            })
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn schur_identity_on_small_cases() {
        let p5 = generate(&FamilySpec::Path(5)).unwrap();
        let r = verify_schur_identity(&p5, &[0, 1, 2, 3, 4]).unwrap();
        assert!(r.pass, "{r:?}");
        let t = Tree::random(20, 5).unwrap();
        let r = verify_schur_identity(&t, &t.path_between(3, 17)).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.observed["min_grid_sigma"] > GRID_SIGMA_FLOOR);
    }

    #[test]
    fn finite_differences() {
        let m = 7.0;
        let d = finite_difference(|x| m / (1.0 - x), 0.0, 1).unwrap();
        assert!((d - m).abs() < 1e-6 * m);
        assert!(finite_difference(|_| 3.0, 0.2, 1).unwrap().abs() < 1e-10);
        assert!((finite_difference(|x| x * x * x, 1.0, 2).unwrap() - 6.0).abs() < 1e-6);
        assert!(finite_difference(|x| x, 0.0, 3).is_err());
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        let g = PendantRatio::new(&p3, 0, 2).unwrap();
        let d = finite_difference(|l| g.value(l).unwrap(), 0.0, 1).unwrap();
        assert!((d + 3.0).abs() < 1e-4);
    }

    #[test]
    fn records_serialize_as_lines() {
        let mut r = VerificationRecord::new("demo", serde_json::json!({"n": 2}), 1e-9);
        r.observe("x", 0.5);
        let text = to_jsonl(&[r.clone(), r]);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("{\"claim\":\"demo\",\"instance\":{\"n\":2},\"observed\":{\"x\":0.5}"));
    }
}
