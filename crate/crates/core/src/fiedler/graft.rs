use serde::Serialize;

use super::fiedler_report;
use crate::error::{Error, Result};
use crate::schur::{compare_pendants, PendantComparison};
use crate::tree::{decompose_along_path, Tree};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarGraft {
    #[serde(skip)]
    pub tree: Tree,
    /// Longest path `v_1 … v_k` of the host.
    pub host_path: Vec<usize>,
    pub graft_vertex: usize,
    /// New star vertices (center first for `r ≥ 3`).
    pub star_vertices: Vec<usize>,
    pub star_pendants: Vec<usize>,
    /// `−(r+1)` and `−3 − |V(T_2)| − 2|V(T_3)|`.
    pub condition_lhs: f64,
    pub condition_rhs: f64,
    /// `g'(0)` from `v_1` and from a star pendant to `v_4` in the grafted
    /// tree.
    pub slope_path_end: f64,
    pub slope_star_pendant: f64,
    /// Small-`λ` comparison of `x_{v_S}` against `x_{v_1}` at the grafted
    /// tree's `a(T)`.
    pub comparison: PendantComparison,
    /// The prediction `x_{v_S}/x_{v_1} ≥ 1` only applies for `a(T)`
    /// sufficiently small.
    pub prediction_note: String,
    /// Oracle `x_{v_S}/x_{v_1}` (sign fixed by `x_{v_1} > 0`).
    pub oracle_ratio: Option<f64>,
    pub oracle_confirms: Option<bool>,
}

/// Glues `S_r` to `v_4` of the host's longest path by identifying a pendant
/// vertex of the star with `v_4`.
pub fn star_graft(t: &Tree, r: usize) -> Result<StarGraft> {
    if r < 2 {
        return Err(Error::PreconditionViolated("S_r needs r >= 2".into()));
    }
    let path = t.longest_path();
    let k = path.len();
    if k < 7 {
        return Err(Error::PreconditionViolated(format!("longest path has k = {k} < 7 vertices")));
    }
    let d = decompose_along_path(t, &path)?;
    let condition_lhs = -(r as f64 + 1.0);
    let condition_rhs = -3.0 - d.subtree_size(1) as f64 - 2.0 * d.subtree_size(2) as f64;
    if !(condition_lhs < condition_rhs) {
        return Err(Error::PreconditionViolated(format!(
            "-(r+1) = {condition_lhs} is not below {condition_rhs}"
        )));
    }

    let n = t.n();
    let v4 = path[3];
    let center = n;
    let mut edges = vec![(v4, center)];
    let star_vertices: Vec<usize> = (n..n + r - 1).collect();
    for &leaf in &star_vertices[1..] {
        edges.push((center, leaf));
    }
    let star_pendants = if r == 2 { vec![center] } else { star_vertices[1..].to_vec() };
    let tree = t.extended(r - 1, &edges)?;

    let rep = fiedler_report(&tree)?;
    let v1 = path[0];
    let vs = star_pendants[0];
    let comparison = compare_pendants(&tree, v1, vs, v4, rep.a, 4)?;
    let slope_path_end = comparison.derivatives_first[1];
    let slope_star_pendant = comparison.derivatives_second[1];
    let (oracle_ratio, oracle_confirms) = match &rep.vector {
        Some(x) if x[v1] != 0.0 => {
            let ratio = x[vs] / x[v1];
            (Some(ratio), Some(ratio >= 1.0))
        }
        _ => (None, None),
    };
    Ok(StarGraft {
        tree,
        host_path: path,
        graft_vertex: v4,
        star_vertices,
        star_pendants,
        condition_lhs,
        condition_rhs,
        slope_path_end,
        slope_star_pendant,
        comparison,
        prediction_note: "x_vS/x_v1 >= 1 requires a(T) sufficiently small".into(),
        oracle_ratio,
        oracle_confirms,
    })
}
