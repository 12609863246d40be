use serde::Serialize;

use super::{fiedler_report, SIMPLE_GAP};
use crate::error::{Error, Result};
use crate::linalg::{clears_margin, laplacian, laplacian_principal, lambda_min, sym_eigen};
use crate::schur::pendant_ratio;
use crate::tree::{PathDecomposition, Tree};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaterpillarPrediction {
    /// Non-pendant vertices in path order.
    pub spine: Vec<usize>,
    /// Pendant vertices hanging from the first and last spine vertex.
    pub first_leaves: Vec<usize>,
    pub last_leaves: Vec<usize>,
    /// Oracle extrema (max then min), when `a(T)` is simple.
    pub oracle_argmax: Option<Vec<usize>>,
    pub oracle_argmin: Option<Vec<usize>>,
    /// Whether every oracle extremum lies in the predicted leaf sets, with
    /// the maximum and minimum on opposite ends.
    pub consistent: Option<bool>,
}

impl CaterpillarPrediction {
    pub fn predicted(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.first_leaves.iter().chain(&self.last_leaves).copied().collect();
        v.sort_unstable();
        v
    }
}

/// Extremal entries of a caterpillar's Fiedler vector sit among the leaves
/// of the two end vertices of the spine.
pub fn caterpillar_extrema(t: &Tree) -> Result<CaterpillarPrediction> {
    if t.n() < 4 || t.diameter() < 3 {
        return Err(Error::NotCaterpillar);
    }
    let core: Vec<usize> = (0..t.n()).filter(|&v| !t.is_pendant(v)).collect();
    let is_core = |v: usize| !t.is_pendant(v);
    if core.iter().any(|&v| t.neighbors(v).iter().filter(|&&u| is_core(u)).count() > 2) {
        return Err(Error::NotCaterpillar);
    }
    let lp = t.longest_path();
    let spine = lp[1..lp.len() - 1].to_vec();
    if spine.len() != core.len() {
        return Err(Error::NotCaterpillar);
    }
    let leaves_of = |v: usize| -> Vec<usize> { t.neighbors(v).iter().copied().filter(|&u| t.is_pendant(u)).collect() };
    let mut first_leaves = leaves_of(spine[0]);
    let mut last_leaves = leaves_of(*spine.last().unwrap());
    first_leaves.sort_unstable();
    last_leaves.sort_unstable();

    let rep = fiedler_report(t)?;
    let (oracle_argmax, oracle_argmin, consistent) = match rep.vector {
        Some(_) => {
            let inside = |set: &[usize], side: &[usize]| set.iter().all(|v| side.contains(v));
            let ok = (inside(&rep.argmax, &first_leaves) && inside(&rep.argmin, &last_leaves))
                || (inside(&rep.argmax, &last_leaves) && inside(&rep.argmin, &first_leaves));
            (Some(rep.argmax), Some(rep.argmin), Some(ok))
        }
        None => (None, None, None),
    };
    Ok(CaterpillarPrediction { spine, first_leaves, last_leaves, oracle_argmax, oracle_argmin, consistent })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GencaterVerdict {
    /// Hypotheses met and the oracle places opposite-sign extrema at the two
    /// candidates. `fed` is set when both extrema are unique.
    Holds { fed: bool },
    /// The g-minimality hypothesis fails; no claim is made.
    Fails { violated: String },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GencaterReport {
    pub a: f64,
    pub gap: f64,
    /// Smallest `λ_min(L_{v_i}(T_{i,j}))` over all branches.
    pub min_branch_lambda: f64,
    pub g_first: f64,
    pub g_last: f64,
    /// Smallest `g_{v,v_i}(a)` over pendants of the other blocks, per end.
    pub min_other_first: f64,
    pub min_other_last: f64,
    pub hypothesis_met: bool,
    pub verdict: GencaterVerdict,
}

/// Pendants of the host lying in block `i`; the root counts when it is a
/// pendant of the whole tree.
fn block_pendants(d: &PathDecomposition, i: usize) -> Vec<usize> {
    d.subtree(i).iter().copied().filter(|&v| d.host().is_pendant(v)).collect()
}

/// Smallest `λ_min` over the branches `T_{i,j}` of every block, with the
/// block index attaining it.
fn branch_lambda_min(d: &PathDecomposition) -> Result<(f64, usize)> {
    let mut best = (f64::INFINITY, 0);
    for i in 0..d.k() {
        let root = d.root(i);
        for b in d.branches(i) {
            let verts: Vec<usize> = b.into_iter().filter(|&v| v != root).collect();
            let lm = lambda_min(&laplacian_principal(d.host(), &verts))?;
            if lm < best.0 {
                best = (lm, i);
            }
        }
    }
    Ok(best)
}

/// Checks the generalized-caterpillar criterion on the decomposition `d`
/// with candidate pendants `w1 ∈ T_1`, `wk ∈ T_k`, then compares with the
/// oracle Fiedler vector.
pub fn gencater_check(t: &Tree, d: &PathDecomposition, w1: usize, wk: usize) -> Result<GencaterReport> {
    let k = d.k();
    if k < 3 {
        return Err(Error::BadParams("the criterion needs k >= 3".into()));
    }
    if d.host() != t {
        return Err(Error::BadGeometry("decomposition belongs to another tree".into()));
    }
    for (w, i) in [(w1, 0), (wk, k - 1)] {
        t.check_vertex(w)?;
        if d.owner(w) != i || !t.is_pendant(w) {
            return Err(Error::BadGeometry(format!("{w} is not a pendant vertex of block {}", i + 1)));
        }
    }
    let sp = sym_eigen(&laplacian(t))?;
    let a = sp.values[1];
    let gap = sp.values[2] - sp.values[1];
    let (min_branch_lambda, index) = branch_lambda_min(d)?;
    if !(a < min_branch_lambda && clears_margin(a, min_branch_lambda)) {
        return Err(Error::AssumptionAViolated { a, lambda_min: min_branch_lambda, index: index + 1 });
    }

    let g = |w: usize, i: usize| pendant_ratio(t, w, d.root(i), a);
    let min_other = |skip: usize| -> Result<(f64, usize)> {
        let mut best = (f64::INFINITY, usize::MAX);
        for i in (0..k).filter(|&i| i != skip) {
            for v in block_pendants(d, i) {
                let gv = g(v, i)?;
                if gv < best.0 {
                    best = (gv, v);
                }
            }
        }
        Ok(best)
    };
    let evaluated = (|| -> Result<_> { Ok((g(w1, 0)?, g(wk, k - 1)?, min_other(0)?, min_other(k - 1)?)) })();
    let (g_first, g_last, (mo_first, v_first), (mo_last, v_last)) = match evaluated {
        Ok(v) => v,
        Err(e) => {
            return Ok(GencaterReport {
                a,
                gap,
                min_branch_lambda,
                g_first: f64::NAN,
                g_last: f64::NAN,
                min_other_first: f64::NAN,
                min_other_last: f64::NAN,
                hypothesis_met: false,
                verdict: GencaterVerdict::Inconclusive { reason: format!("g evaluation failed: {e}") },
            })
        }
    };

    let mut violated = Vec::new();
    for (name, gw, mo, v) in [("w_1", g_first, mo_first, v_first), ("w_k", g_last, mo_last, v_last)] {
        if !(gw > 0.0) {
            violated.push(format!("g({name}) = {gw} is not positive"));
        } else if gw > mo + 1e-12 * mo.abs().max(1.0) {
            violated.push(format!("g({name}) = {gw} > g({v}) = {mo}"));
        }
    }
    let hypothesis_met = violated.is_empty();
    let verdict = if !hypothesis_met {
        GencaterVerdict::Fails { violated: violated.join("; ") }
    } else {
        let n = t.n();
        if gap <= SIMPLE_GAP * sp.values[n - 1] {
            GencaterVerdict::Inconclusive { reason: "a(T) numerically not simple".into() }
        } else {
            let rep = fiedler_report(t)?;
            let x = rep.vector.as_ref().expect("simple");
            let (hi, lo) = if x[w1] > 0.0 { (w1, wk) } else { (wk, w1) };
            let opposite = x[w1] * x[wk] < 0.0;
            if opposite && rep.argmax.contains(&hi) && rep.argmin.contains(&lo) {
                let fed = rep.argmax.len() == 1 && rep.argmin.len() == 1;
                GencaterVerdict::Holds { fed }
            } else {
                GencaterVerdict::Inconclusive { reason: "oracle extrema differ from the candidates".into() }
            }
        }
    };
    Ok(GencaterReport {
        a,
        gap,
        min_branch_lambda,
        g_first,
        g_last,
        min_other_first: mo_first,
        min_other_last: mo_last,
        hypothesis_met,
        verdict,
    })
}
