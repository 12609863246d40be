use std::f64::consts::PI;

use serde::Serialize;

use super::{fiedler_report, gencater_check, Fed, GencaterVerdict};
use crate::error::{Error, Result};
use crate::schur::{pendant_ratio, PendantRatio};
use crate::tree::{decompose_along_path, RoseLayout};

/// `g` from the far end of a path with `m` vertices to its other end:
/// `2/√(4−λ) · cos((m − ½)·arccos(1 − λ/2))`.
pub fn g_path_closed_form(m: usize, lambda: f64) -> f64 {
    let zeta = (1.0 - lambda / 2.0).acos();
    2.0 / (4.0 - lambda).sqrt() * ((m as f64 - 0.5) * zeta).cos()
}

/// `g` from a star leaf to the glue vertex: `λ² − rλ + 1` for `r ≥ 3`;
/// for `r = 2` the leaf is adjacent to the glue vertex and `g = 1 − λ`.
pub fn g_star_closed_form(r: usize, lambda: f64) -> f64 {
    if r == 2 {
        1.0 - lambda
    } else {
        lambda * lambda - r as f64 * lambda + 1.0
    }
}

fn lambda_of(denominator: usize) -> f64 {
    2.0 - 2.0 * (PI / denominator as f64).cos()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoseAnalysis {
    pub l: usize,
    pub t: usize,
    pub r: usize,
    pub n: usize,
    /// Oracle `a(T)`.
    pub a: f64,
    pub simple: bool,
    /// `2 − 2cos(π/(l+t−1))`, the diameter bound on `a(T)`.
    pub a_upper: f64,
    /// `2 − 2cos(π/(l+t+r−1))`, the vertex-count bound on `a(T)`.
    pub a_lower: f64,
    /// `g` from the end of `P_l` to the glue vertex, at `a` and at `a_upper`.
    pub g_path_at_a: f64,
    pub g_path_at_upper: f64,
    /// `g` from a star leaf to the glue vertex, at `a` and at `a_upper`.
    pub g_star_at_a: f64,
    pub g_star_at_upper: f64,
    /// Largest gap between the closed forms and the numeric ratios.
    pub closed_form_error: f64,
    /// `1 − 1/(2r) ≤ cos(π/(l+t−1))`.
    pub alsosuff: bool,
    /// The `a(T)`-dependent sufficient condition, as stated.
    pub sufffirst: bool,
    /// The parameter-only condition, as stated.
    pub suffsnd_literal: bool,
    /// The parameter-only condition with both sides at the sound ends of
    /// `[a_lower, a_upper]`.
    pub suffsnd_sound: bool,
    /// `t = l`.
    pub perfect: bool,
    /// `2 − 2cos(π/(2l−1))` when perfect.
    pub predicted_a: Option<f64>,
    /// Largest `|x|` over the star vertices other than the glue vertex.
    pub star_max_abs: Option<f64>,
    /// `g'(0)` from the end of `P_l` and from a star leaf to the glue vertex.
    pub slope_path_end: f64,
    pub slope_star_leaf: f64,
    /// Large-`t` prediction from the slopes: "star_leaf", "path_end" or "tie".
    pub large_t_prediction: String,
    /// Extremum on the glue side of the tree (opposite in sign to the far
    /// end of `P_t`).
    pub glue_side_extremum: Option<usize>,
    pub glue_side_is_star_leaf: Option<bool>,
    /// Vertex of largest `|x|` (smallest label among ties).
    pub max_abs_vertex: Option<usize>,
    pub max_abs_is_star_leaf: Option<bool>,
    /// Whether the end of `P_l` attains the glue-side extremum.
    pub path_end_extremal: Option<bool>,
    pub fed: String,
    pub fed_witness: Option<usize>,
    /// Generalized-caterpillar criterion on [`rose_gencater_path`] with the
    /// two path ends as candidates (only for `t > l`).
    pub gencater: Option<GencaterVerdict>,
}

/// Path `v_1 … v_k` splitting the rose into `T_1 = P_{l−1}`, the star at the
/// glue vertex, `t − l` singletons and a final `P_{l−1}`.
pub fn rose_gencater_path(layout: &RoseLayout) -> Vec<usize> {
    let spine = layout.p_t_spine();
    let mut path = vec![layout.l - 2];
    path.extend_from_slice(&spine[..=layout.t - layout.l + 1]);
    path
}

impl RoseAnalysis {
    /// FED is implied here: `t > l` with both sufficient conditions (the
    /// sound reading of the parameter-only one).
    pub fn sufficient_for_fed(&self) -> bool {
        self.t > self.l && self.alsosuff && self.suffsnd_sound
    }
}

pub fn rose_analysis(l: usize, t: usize, r: usize) -> Result<RoseAnalysis> {
    let layout = RoseLayout::new(l, t, r).map_err(|e| Error::BadParams(e.to_string()))?;
    let tree = layout.build();
    let rep = fiedler_report(&tree)?;
    let a = rep.a;
    let a_upper = lambda_of(l + t - 1);
    let a_lower = lambda_of(l + t + r - 1);

    let g_path_at_a = g_path_closed_form(l, a);
    let g_path_at_upper = g_path_closed_form(l, a_upper);
    let g_star_at_a = g_star_closed_form(r, a);
    let g_star_at_upper = g_star_closed_form(r, a_upper);

    let glue = layout.glue();
    let leaf = layout.star_pendants()[0];
    let mut closed_form_error = 0.0f64;
    for lam in [a, a_upper, 0.5 * a, 0.0] {
        let gp = pendant_ratio(&tree, layout.p_l_end(), glue, lam);
        let gs = pendant_ratio(&tree, leaf, glue, lam);
        if let (Ok(gp), Ok(gs)) = (gp, gs) {
            closed_form_error = closed_form_error
                .max((gp - g_path_closed_form(l, lam)).abs())
                .max((gs - g_star_closed_form(r, lam)).abs());
        }
    }

    let alsosuff = 1.0 - 1.0 / (2.0 * r as f64) <= (PI / (l + t - 1) as f64).cos();
    let star_poly = |lam: f64| lam * lam - r as f64 * lam + 1.0;
    let sufffirst = g_path_closed_form(l - 1, a) < star_poly(a);
    let suffsnd_literal = g_path_closed_form(l - 1, a_upper) < star_poly(a_lower);
    let suffsnd_sound = g_path_closed_form(l - 1, a_lower) < star_poly(a_upper);

    let perfect = t == l;
    let predicted_a = perfect.then(|| lambda_of(2 * l - 1));
    let star_max_abs = rep
        .vector
        .as_ref()
        .map(|x| layout.star_vertices().iter().map(|&v| x[v].abs()).fold(0.0, f64::max));

    let slope = |w: usize| -> Result<f64> {
        Ok(match tree.distance(w, glue) {
            1 => -1.0,
            _ => PendantRatio::new(&tree, w, glue)?.derivatives_at_zero(1)[1],
        })
    };
    let slope_path_end = slope(layout.p_l_end())?;
    let slope_star_leaf = slope(leaf)?;
    let large_t_prediction = if (slope_path_end - slope_star_leaf).abs() < 1e-9 {
        "tie"
    } else if slope_path_end > slope_star_leaf {
        "star_leaf"
    } else {
        "path_end"
    }
    .to_string();

    let pendants = layout.star_pendants();
    let (glue_side_extremum, glue_side_is_star_leaf, path_end_extremal) = match &rep.vector {
        Some(x) => {
            let s = -x[layout.p_t_end()].signum();
            let v = glue_side_argmax(x, s);
            let end_extremal = s * x[layout.p_l_end()] >= s * x[v] - super::EXTREMA_TOL;
            (Some(v), Some(pendants.contains(&v)), Some(end_extremal))
        }
        None => (None, None, None),
    };
    let max_abs_vertex = rep.vector.as_ref().map(|x| {
        let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        glue_side_argmax(&abs, 1.0)
    });
    let max_abs_is_star_leaf = max_abs_vertex.map(|v| pendants.contains(&v));
    let fed_witness = match rep.fed {
        Fed::Fails { witness } => Some(witness),
        _ => None,
    };
    let gencater = (t > l).then(|| {
        let run = || -> Result<GencaterVerdict> {
            let d = decompose_along_path(&tree, &rose_gencater_path(&layout))?;
            Ok(gencater_check(&tree, &d, layout.p_l_end(), layout.p_t_end())?.verdict)
        };
        run().unwrap_or_else(|e| GencaterVerdict::Inconclusive { reason: e.to_string() })
    });
    Ok(RoseAnalysis {
        l,
        t,
        r,
        n: layout.n(),
        a,
        simple: rep.simple,
        a_upper,
        a_lower,
        g_path_at_a,
        g_path_at_upper,
        g_star_at_a,
        g_star_at_upper,
        closed_form_error,
        alsosuff,
        sufffirst,
        suffsnd_literal,
        suffsnd_sound,
        perfect,
        predicted_a,
        star_max_abs,
        slope_path_end,
        slope_star_leaf,
        large_t_prediction,
        glue_side_extremum,
        glue_side_is_star_leaf,
        max_abs_vertex,
        max_abs_is_star_leaf,
        path_end_extremal,
        fed: rep.fed.label().to_string(),
        fed_witness,
        gencater,
    })
}

/// First vertex maximizing `s·x`, preferring the smallest label among
/// entries within rounding of the maximum.
fn glue_side_argmax(x: &[f64], s: f64) -> usize {
    let best = x.iter().map(|v| s * v).fold(f64::NEG_INFINITY, f64::max);
    (0..x.len()).find(|&v| s * x[v] >= best - super::EXTREMA_TOL).unwrap()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoseSweep {
    pub l: usize,
    pub r: usize,
    pub rows: Vec<RoseAnalysis>,
    /// Smallest swept `t` from which on every row has its glue-side
    /// extremum at a star leaf.
    pub threshold: Option<usize>,
    /// Same, for the vertex of largest `|x|` over the whole tree.
    pub global_threshold: Option<usize>,
}

/// Analyses `rose(l, t, r)` for every `t` in `ts`.
pub fn rose_sweep(l: usize, r: usize, ts: std::ops::RangeInclusive<usize>) -> Result<RoseSweep> {
    let rows: Vec<RoseAnalysis> = ts.map(|t| rose_analysis(l, t, r)).collect::<Result<_>>()?;
    let tail = |hit: fn(&RoseAnalysis) -> bool| {
        let mut first = None;
        for row in rows.iter().rev() {
            if !hit(row) {
                break;
            }
            first = Some(row.t);
        }
        first
    };
    let threshold = tail(|row| row.glue_side_is_star_leaf == Some(true));
    let global_threshold = tail(|row| row.max_abs_is_star_leaf == Some(true));
    Ok(RoseSweep { l, r, rows, threshold, global_threshold })
}
