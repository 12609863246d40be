use super::SymMatrix;
use crate::error::{Error, Result};
use crate::tree::Tree;

/// `L = D − A`.
pub fn laplacian(t: &Tree) -> SymMatrix {
    let mut l = SymMatrix::zeros(t.n());
    for v in 0..t.n() {
        l.set(v, v, t.degree(v) as f64);
    }
    for &(u, v) in t.edges() {
        l.set(u, v, -1.0);
    }
    l
}

/// `L` with row and column `v` removed. Remaining vertices keep ascending
/// label order.
pub fn reduced_laplacian(t: &Tree, v: usize) -> Result<SymMatrix> {
    t.check_vertex(v)?;
    let keep: Vec<usize> = (0..t.n()).filter(|&u| u != v).collect();
    Ok(laplacian_principal(t, &keep))
}

/// `L` with rows and columns `v` and `w` removed.
pub fn doubly_reduced(t: &Tree, v: usize, w: usize) -> Result<SymMatrix> {
    t.check_vertex(v)?;
    t.check_vertex(w)?;
    if v == w {
        return Err(Error::BadVertex(w));
    }
    let keep: Vec<usize> = (0..t.n()).filter(|&u| u != v && u != w).collect();
    Ok(laplacian_principal(t, &keep))
}

/// Principal submatrix of `L(t)` on `vertices` (in the given order),
/// assembled without forming the full Laplacian.
pub fn laplacian_principal(t: &Tree, vertices: &[usize]) -> SymMatrix {
    let mut pos = vec![usize::MAX; t.n()];
    for (i, &v) in vertices.iter().enumerate() {
        pos[v] = i;
    }
    let mut m = SymMatrix::zeros(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        m.set(i, i, t.degree(v) as f64);
        for &u in t.neighbors(v) {
            if pos[u] != usize::MAX {
                m.set(i, pos[u], -1.0);
            }
        }
    }
    m
}

/// `L_v(T)^{-1}` without inversion: entry `(u, w)` counts the edges shared
/// by the paths from `u` and `w` to `v`, i.e. the depth of their lowest
/// common ancestor when the tree hangs from `v`. Same ordering as
/// [`reduced_laplacian`].
pub fn reduced_inverse_closed_form(t: &Tree, v: usize) -> Result<SymMatrix> {
    t.check_vertex(v)?;
    let parent = t.parents_from(v);
    let depth = t.distances_from(v);
    let keep: Vec<usize> = (0..t.n()).filter(|&u| u != v).collect();
    Ok(SymMatrix::from_fn(keep.len(), |i, j| {
        let (mut a, mut b) = (keep[i], keep[j]);
        while depth[a] > depth[b] {
            a = parent[a];
        }
        while depth[b] > depth[a] {
            b = parent[b];
        }
        while a != b {
            a = parent[a];
            b = parent[b];
        }
        depth[a] as f64
    }))
}
