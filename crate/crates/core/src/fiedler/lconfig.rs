use serde::Serialize;

use super::SIMPLE_GAP;
use crate::bounds::{eps_bounds_exact_leading, zeta_from_eps};
use crate::error::{Error, Result};
use crate::linalg::{laplacian, sym_eigen};
use crate::schur::SchurReduction;
use crate::tree::{decompose_along_path, Tree};

/// Tolerance for the oracle comparison of entries.
const ORACLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LConfigVerdict {
    /// `x_1 ≥ x^{(i)} ≥ 0` along the vertical path; strict from
    /// `strict_from` (1-based) on, when present.
    Certified { strict_from: Option<usize> },
    HypothesisUnmet { reason: String },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LConfigReport {
    pub lambda: f64,
    pub k: usize,
    pub l: usize,
    pub zeta_lower: Option<f64>,
    /// `π/(2ζ_lower) + ½`.
    pub horizon: Option<f64>,
    /// For each `i = 1..l−1`: whether the vertical attached tree embeds in
    /// `T_i`, and whether the embedding is proper.
    pub embeds: Vec<(bool, bool)>,
    pub verdict: LConfigVerdict,
    /// Whether the certificate extends to every vertex of `T_k`.
    pub extension: bool,
    /// Oracle check of every certified inequality.
    pub oracle_confirms: Option<bool>,
}

/// Rooted subtree of `t` at `root`, avoiding `blocked` at the root.
struct Rooted<'a> {
    t: &'a Tree,
    root: usize,
    blocked: &'a [usize],
}

impl Rooted<'_> {
    fn children(&self, v: usize, parent: usize) -> Vec<usize> {
        self.t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| u != parent && !(v == self.root && self.blocked.contains(&u)))
            .collect()
    }

    fn size(&self, v: usize, parent: usize) -> usize {
        1 + self.children(v, parent).into_iter().map(|c| self.size(c, v)).sum::<usize>()
    }
}

/// Whether the rooted tree `a` is a root-preserving subtree of `b`, i.e.
/// `a` arises from `b` by repeatedly deleting pendant vertices other than
/// the root.
fn embeds(a: &Rooted, av: usize, ap: usize, b: &Rooted, bv: usize, bp: usize) -> bool {
    let ca = a.children(av, ap);
    let cb = b.children(bv, bp);
    if ca.len() > cb.len() {
        return false;
    }
    let ok: Vec<Vec<bool>> = ca.iter().map(|&x| cb.iter().map(|&y| embeds(a, x, av, b, y, bv)).collect()).collect();
    // Kuhn's augmenting paths on the children bipartite graph.
    let mut matched: Vec<Option<usize>> = vec![None; cb.len()];
    fn augment(i: usize, ok: &[Vec<bool>], seen: &mut [bool], matched: &mut [Option<usize>]) -> bool {
        for j in 0..matched.len() {
            if ok[i][j] && !seen[j] {
                seen[j] = true;
                if matched[j].is_none_or(|m| augment(m, ok, seen, matched)) {
                    matched[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    (0..ca.len()).all(|i| augment(i, &ok, &mut vec![false; cb.len()], &mut matched))
}

/// Checks the L-configuration certificate for the horizontal path
/// `v_1 … v_k` and the vertical path `u_1 … u_l = v_k` inside `T_k`, at the
/// eigenvalue with (0-based) index `eig_index`.
pub fn l_configuration_check(t: &Tree, path: &[usize], vertical: &[usize], eig_index: usize) -> Result<LConfigReport> {
    let d = decompose_along_path(t, path)?;
    let k = path.len();
    let l = vertical.len();
    t.check_path(vertical)?;
    if k < 2 || l < 2 || l > k {
        return Err(Error::BadGeometry(format!("need 2 <= l <= k, got k = {k}, l = {l}")));
    }
    let vk = path[k - 1];
    if vertical[l - 1] != vk {
        return Err(Error::BadGeometry("vertical path must end at v_k".into()));
    }
    if vertical[..l - 1].iter().any(|&u| d.owner(u) != k - 1) {
        return Err(Error::BadGeometry("vertical path must lie in T_k".into()));
    }
    if eig_index >= t.n() {
        return Err(Error::BadParams(format!("eigenvalue index {eig_index} out of range")));
    }

    let sp = sym_eigen(&laplacian(t))?;
    let lambda = sp.values[eig_index];
    let mut report = LConfigReport {
        lambda,
        k,
        l,
        zeta_lower: None,
        horizon: None,
        embeds: Vec::new(),
        verdict: LConfigVerdict::Inconclusive { reason: String::new() },
        extension: false,
        oracle_confirms: None,
    };

    // Embedding hypothesis for i = 1..l−1.
    let hypothesis = |upath: &[usize]| -> Vec<(bool, bool)> {
        (0..upath.len() - 1)
            .map(|i| {
                let a = Rooted { t, root: upath[i], blocked: upath };
                let b = Rooted { t, root: path[i], blocked: path };
                let e = embeds(&a, upath[i], usize::MAX, &b, path[i], usize::MAX);
                let proper = e && a.size(upath[i], usize::MAX) < b.size(path[i], usize::MAX);
                (e, proper)
            })
            .collect()
    };
    report.embeds = hypothesis(vertical);
    if let Some(i) = report.embeds.iter().position(|e| !e.0) {
        report.verdict = LConfigVerdict::HypothesisUnmet {
            reason: format!("attached tree at u_{} does not embed in T_{}", i + 1, i + 1),
        };
        return Ok(report);
    }

    let inconclusive = |mut r: LConfigReport, reason: String| {
        r.verdict = LConfigVerdict::Inconclusive { reason };
        Ok(r)
    };
    let n = t.n();
    let scale = SIMPLE_GAP * sp.values[n - 1];
    let isolated = (eig_index == 0 || lambda - sp.values[eig_index - 1] > scale)
        && (eig_index + 1 == n || sp.values[eig_index + 1] - lambda > scale);
    if !isolated {
        return inconclusive(report, "eigenvalue is not simple".into());
    }
    let mut x = sp.vectors[eig_index].clone();
    if x[path[0]].abs() <= ORACLE_TOL {
        return inconclusive(report, "x_1 vanishes".into());
    }
    if x[path[0]] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }

    let red = SchurReduction::new(&d)?;
    let limit = red.blocks()[..k - 1].iter().map(|b| b.lambda_min()).fold(f64::INFINITY, f64::min);
    if !(lambda < limit) {
        return inconclusive(report, format!("λ = {lambda} is not below λ_min = {limit} of the blocks"));
    }
    let eps_max = match eps_bounds_exact_leading(&red, lambda, k - 1) {
        Ok((_, hi)) => hi,
        Err(e) => return inconclusive(report, format!("ε bounds unavailable: {e}")),
    };
    let zeta = match zeta_from_eps(eps_max) {
        Ok(z) if z > 0.0 => z,
        _ => return inconclusive(report, format!("no angle for ε_max = {eps_max}")),
    };
    let horizon = std::f64::consts::FRAC_PI_2 / zeta + 0.5;
    report.zeta_lower = Some(zeta);
    report.horizon = Some(horizon);
    if !((k as f64) < horizon * (1.0 - crate::bounds::HORIZON_SLACK)) {
        return inconclusive(report, format!("k = {k} is not below the horizon {horizon}"));
    }

    let strict_from = report.embeds.iter().position(|e| e.1).map(|i| i + 1);
    report.verdict = LConfigVerdict::Certified { strict_from };

    // Extension to all of T_k: every vertex within k−1 of v_k, and the
    // hypothesis along each of their paths.
    let dist = t.distances_from(vk);
    let tk: Vec<usize> = d.subtree(k - 1).iter().copied().filter(|&v| v != vk).collect();
    report.extension = tk.iter().all(|&v| dist[v] < k)
        && tk.iter().all(|&v| {
            let p = t.path_between(v, vk);
            hypothesis(&p).iter().all(|e| e.0)
        });

    let x1 = x[path[0]];
    let mut confirmed = vertical.iter().all(|&u| x1 >= x[u] - ORACLE_TOL && x[u] >= -ORACLE_TOL);
    if let Some(s) = strict_from {
        confirmed &= vertical[s - 1..].iter().all(|&u| x1 > x[u]);
    }
    if report.extension {
        confirmed &= tk.iter().all(|&v| x1 >= x[v] - ORACLE_TOL && x[v] >= -ORACLE_TOL);
    }
    report.oracle_confirms = Some(confirmed);
    Ok(report)
}
