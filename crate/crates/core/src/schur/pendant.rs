//! The pendant ratio `g_{w,v}(λ) = x_v/x_w` for a pendant `w` and a vertex
//! `v` at distance at least two.
//!
//! With `w = v_1, …, v_k = v` and `T̂` the tree spanned by the attached
//! trees `T_1 … T_{k−1}` plus `v`, let `M = L_{w,v}(T̂)` (the principal
//! submatrix of `L(T)` on `V(T̂) \ {w, v}`) and `R = (M − λ)^{-1}`. Then
//!
//! `g(λ) = (1 − λ − R[v_2, v_2]) / R[v_{k−1}, v_2]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{laplacian_principal, Lu, ShiftedSolver};
use crate::tree::{decompose_along_path, PathDecomposition, Tree};

/// `|R[v_{k−1}, v_2]|` at or below this (relative to `R e_{v_2}`) leaves
/// `x_v` undetermined by the pendant side.
pub const DEGENERATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct PendantRatio {
    path: Vec<usize>,
    sizes: Vec<usize>,
    first: usize,
    last: usize,
    solver: ShiftedSolver,
}

impl PendantRatio {
    pub fn new(t: &Tree, w: usize, v: usize) -> Result<PendantRatio> {
        t.check_vertex(w)?;
        t.check_vertex(v)?;
        if !t.is_pendant(w) {
            return Err(Error::BadGeometry(format!("{w} is not a pendant vertex")));
        }
        if w == v || t.is_adjacent(w, v) {
            return Err(Error::BadGeometry(format!("{w} and {v} must be at distance at least two")));
        }
        let path = t.path_between(w, v);
        let d = decompose_along_path(t, &path)?;
        let k = path.len();
        let inner: Vec<usize> =
            (0..t.n()).filter(|&u| u != w && u != v && d.owner(u) < k - 1).collect();
        let first = inner.binary_search(&path[1]).unwrap();
        let last = inner.binary_search(&path[k - 2]).unwrap();
        let sizes = (0..k).map(|i| d.subtree_size(i)).collect();
        let solver = ShiftedSolver::new(laplacian_principal(t, &inner))?;
        Ok(PendantRatio { path, sizes, first, last, solver })
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn k(&self) -> usize {
        self.path.len()
    }

    /// Right end of the admissible interval `[0, λ_min(L_{w,v}(T̂)))`.
    pub fn lambda_min(&self) -> f64 {
        self.solver.lambda_min()
    }

    pub fn value(&self, lambda: f64) -> Result<f64> {
        let mut e = vec![0.0; self.solver.dim()];
        e[self.first] = 1.0;
        let r = self.solver.solve(lambda, &e)?;
        let scale = r.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if r[self.last].abs() <= DEGENERATE_TOL * scale {
            return Err(Error::DegenerateRatio { lambda });
        }
        Ok((1.0 - lambda - r[self.first]) / r[self.last])
    }

    /// Taylor coefficients of `g` at zero, `g(λ) = Σ c_j λ^j`, from the
    /// expansion `R = Σ λ^j M^{-(j+1)}` and one power-series division.
    pub fn taylor(&self, order: usize) -> Vec<f64> {
        let lu = Lu::factor(self.solver.matrix());
        let mut e = vec![0.0; self.solver.dim()];
        e[self.first] = 1.0;
        let mut num = Vec::with_capacity(order + 1);
        let mut den = Vec::with_capacity(order + 1);
        let mut u = e;
        for j in 0..=order {
            u = lu.solve(&u);
            let base = match j {
                0 => 1.0,
                1 => -1.0,
                _ => 0.0,
            };
            num.push(base - u[self.first]);
            den.push(u[self.last]);
        }
        series_divide(&num, &den)
    }

    /// `g^{(j)}(0)` for `j = 0..=order`.
    pub fn derivatives_at_zero(&self, order: usize) -> Vec<f64> {
        taylor_to_derivatives(&self.taylor(order))
    }

    /// `g'(0) = 1 − k − Σ_{i=1}^{k−2} i|V(T_{i+1})|`.
    pub fn derivative_closed_form(&self) -> f64 {
        closed_form_slope(&self.sizes)
    }
}

/// `1 − k − Σ_{i=1}^{k−2} (k−1−i)|V(T_{i+1})|`: attached trees nearer the
/// pendant weigh more.
fn closed_form_slope(sizes: &[usize]) -> f64 {
    let k = sizes.len();
    let sum: usize = (1..k - 1).map(|i| (k - 1 - i) * sizes[i]).sum();
    1.0 - k as f64 - sum as f64
}

/// Coefficients of `num/den`; `den[0]` must be nonzero.
fn series_divide(num: &[f64], den: &[f64]) -> Vec<f64> {
    let mut c: Vec<f64> = Vec::with_capacity(num.len());
    for n in 0..num.len() {
        let mut acc = num[n];
        for m in 1..=n {
            acc -= den[m] * c[n - m];
        }
        c.push(acc / den[0]);
    }
    c
}

fn taylor_to_derivatives(c: &[f64]) -> Vec<f64> {
    let mut fact = 1.0;
    c.iter()
        .enumerate()
        .map(|(j, &x)| {
            if j > 0 {
                fact *= j as f64;
            }
            x * fact
        })
        .collect()
}

/// `g_{w,v}(λ)`.
pub fn g_ratio(t: &Tree, w: usize, v: usize, lambda: f64) -> Result<f64> {
    PendantRatio::new(t, w, v)?.value(lambda)
}

/// `g'(0)` in closed form for a decomposition whose first vertex is
/// pendant in the host and with `k ≥ 3`.
pub fn g_derivative_at_zero(d: &PathDecomposition) -> Result<f64> {
    if d.k() < 3 {
        return Err(Error::BadGeometry(format!("slope formula needs k >= 3, got {}", d.k())));
    }
    if !d.host().is_pendant(d.root(0)) {
        return Err(Error::BadGeometry(format!("{} is not a pendant vertex", d.root(0))));
    }
    let sizes: Vec<usize> = (0..d.k()).map(|i| d.subtree_size(i)).collect();
    Ok(closed_form_slope(&sizes))
}

/// `x_v/x_w` for a pendant `w`, extended to short distances: `1` when
/// `w = v` and `1 − λ` when `w` hangs directly off `v`.
pub fn pendant_ratio(t: &Tree, w: usize, v: usize, lambda: f64) -> Result<f64> {
    match t.distance(w, v) {
        0 => Ok(1.0),
        1 if t.is_pendant(w) => Ok(1.0 - lambda),
        _ => g_ratio(t, w, v, lambda),
    }
}

/// Taylor coefficients of [`pendant_ratio`] at zero.
pub fn pendant_taylor(t: &Tree, w: usize, v: usize, order: usize) -> Result<Vec<f64>> {
    let mut c = vec![0.0; order + 1];
    match t.distance(w, v) {
        0 => c[0] = 1.0,
        1 if t.is_pendant(w) => {
            c[0] = 1.0;
            if order >= 1 {
                c[1] = -1.0;
            }
        }
        _ => c = PendantRatio::new(t, w, v)?.taylor(order),
    }
    Ok(c)
}

/// Which of two pendant entries is larger in the ratio sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// `x_{w'}/x_w ≤ 1`.
    First,
    /// `x_{w'}/x_w ≥ 1`.
    Second,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ComparisonVerdict {
    Confirmed { dominance: Dominance },
    Inconclusive { reason: String },
}

/// Comparison of the entries at two pendants `w`, `w'` through a common
/// vertex `v`, from `g_{w,v}(λ) x_w = g_{w',v}(λ) x_{w'}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PendantComparison {
    pub lambda: f64,
    /// Derivatives `g_{w,v}^{(j)}(0)`.
    pub derivatives_first: Vec<f64>,
    /// Derivatives `g_{w',v}^{(j)}(0)`.
    pub derivatives_second: Vec<f64>,
    /// Lowest order at which the derivatives differ.
    pub deciding_order: Option<usize>,
    pub predicted: Option<Dominance>,
    /// `x_{w'}/x_w = g_{w,v}(λ)/g_{w',v}(λ)`.
    pub direct_ratio: Option<f64>,
    pub verdict: ComparisonVerdict,
}

/// Small-`λ` comparison: the first differing derivative at zero decides,
/// and the prediction only stands if direct evaluation at `λ` agrees.
pub fn compare_pendants(
    t: &Tree,
    w: usize,
    w2: usize,
    v: usize,
    lambda: f64,
    max_order: usize,
) -> Result<PendantComparison> {
    let d1 = taylor_to_derivatives(&pendant_taylor(t, w, v, max_order)?);
    let d2 = taylor_to_derivatives(&pendant_taylor(t, w2, v, max_order)?);
    let mut deciding_order = None;
    let mut predicted = None;
    for j in 0..=max_order {
        let scale = 1.0f64.max(d1[j].abs()).max(d2[j].abs());
        if (d1[j] - d2[j]).abs() > 1e-9 * scale {
            deciding_order = Some(j);
            predicted = Some(if d1[j] > d2[j] { Dominance::Second } else { Dominance::First });
            break;
        }
    }
    let g1 = pendant_ratio(t, w, v, lambda);
    let g2 = pendant_ratio(t, w2, v, lambda);
    let direct_ratio = match (&g1, &g2) {
        (Ok(a), Ok(b)) if *b != 0.0 => Some(a / b),
        _ => None,
    };
    let verdict = match (predicted, direct_ratio, &g1, &g2) {
        (None, ..) => ComparisonVerdict::Inconclusive {
            reason: format!("derivatives agree up to order {max_order}"),
        },
        (_, None, ..) => ComparisonVerdict::Inconclusive {
            reason: "direct evaluation not admissible at this λ".into(),
        },
        (Some(_), Some(_), Ok(a), Ok(b)) if *a <= 0.0 || *b <= 0.0 => ComparisonVerdict::Inconclusive {
            reason: "λ not small enough: a ratio is non-positive".into(),
        },
        (Some(p), Some(r), ..) => {
            let agrees = match p {
                Dominance::Second => r >= 1.0,
                Dominance::First => r <= 1.0,
            };
            if agrees {
                ComparisonVerdict::Confirmed { dominance: p }
            } else {
                ComparisonVerdict::Inconclusive {
                    reason: format!("derivative prediction {p:?} contradicted at λ (ratio {r})"),
                }
            }
        }
    };
    Ok(PendantComparison {
        lambda,
        derivatives_first: d1,
        derivatives_second: d2,
        deciding_order,
        predicted,
        direct_ratio,
        verdict,
    })
}
