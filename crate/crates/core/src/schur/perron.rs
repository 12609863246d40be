use crate::error::{Error, Result};
use crate::linalg::{lambda_min, reduced_laplacian};
use crate::tree::{decompose_along_path, Tree};

/// Bounds on the Perron value `‖L_v(T)^{-1}‖` from the path structure
/// towards each pendant `w`: with `T_1, …` the attached trees along
/// `v → w`,
///
/// `max_w sqrt(Σ_i i²|V(T_{i+1})|) ≤ ‖L_v^{-1}‖ ≤ max_w Σ_i i|V(T_{i+1})|`.
pub fn perron_bounds(t: &Tree, v: usize) -> Result<(f64, f64)> {
    t.check_vertex(v)?;
    if t.n() < 2 {
        return Err(Error::BadParams("Perron bounds need at least two vertices".into()));
    }
    let mut lower = 0.0f64;
    let mut upper = 0.0f64;
    for w in t.pendant_vertices() {
        if w == v {
            continue;
        }
        let d = decompose_along_path(t, &t.path_between(v, w))?;
        let (mut sq, mut lin) = (0.0, 0.0);
        for i in 1..d.k() {
            let s = d.subtree_size(i) as f64;
            let i = i as f64;
            sq += i * i * s;
            lin += i * s;
        }
        lower = lower.max(sq.sqrt());
        upper = upper.max(lin);
    }
    Ok((lower, upper))
}

/// `‖L_v(T)^{-1}‖ = 1/λ_min(L_v(T))` from the eigensolver.
pub fn perron_value(t: &Tree, v: usize) -> Result<f64> {
    Ok(1.0 / lambda_min(&reduced_laplacian(t, v)?)?)
}
