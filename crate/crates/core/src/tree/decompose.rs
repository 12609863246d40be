//! Splitting a tree along a path `v_1 … v_k` into the maximal subtrees
//! `T_1 … T_k` that meet the path in exactly one vertex each.

use std::collections::VecDeque;

use super::Tree;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct PathDecomposition {
    host: Tree,
    path: Vec<usize>,
    /// `subtrees[i]` is `V(T_{i+1})`, sorted, root included.
    subtrees: Vec<Vec<usize>>,
    /// Path index (0-based) owning each host vertex.
    owner: Vec<usize>,
}

/// Decomposes `t` along `path`; subtree membership comes from cutting the
/// path edges and taking components.
pub fn decompose_along_path(t: &Tree, path: &[usize]) -> Result<PathDecomposition> {
    t.check_path(path)?;
    let mut owner = vec![usize::MAX; t.n()];
    let mut queue = VecDeque::new();
    for (i, &v) in path.iter().enumerate() {
        owner[v] = i;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        for &w in t.neighbors(u) {
            if owner[w] == usize::MAX {
                owner[w] = owner[u];
                queue.push_back(w);
            }
        }
    }
    let mut subtrees = vec![Vec::new(); path.len()];
    for (v, &o) in owner.iter().enumerate() {
        subtrees[o].push(v);
    }
    Ok(PathDecomposition { host: t.clone(), path: path.to_vec(), subtrees, owner })
}

impl PathDecomposition {
    pub fn host(&self) -> &Tree {
        &self.host
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    /// Number of path vertices `k`.
    pub fn k(&self) -> usize {
        self.path.len()
    }

    /// Root `v_{i+1}` of the `i`-th (0-based) subtree.
    pub fn root(&self, i: usize) -> usize {
        self.path[i]
    }

    /// `V(T_{i+1})`, sorted, root included.
    pub fn subtree(&self, i: usize) -> &[usize] {
        &self.subtrees[i]
    }

    pub fn subtrees(&self) -> &[Vec<usize>] {
        &self.subtrees
    }

    /// `|V(T_{i+1})|`.
    pub fn subtree_size(&self, i: usize) -> usize {
        self.subtrees[i].len()
    }

    /// Path index (0-based) of the subtree containing `v`.
    pub fn owner(&self, v: usize) -> usize {
        self.owner[v]
    }

    /// Vertices of `T_{i+1}` other than its root, in ascending order. This is
    /// the row/column order of the reduced Laplacian `L_{v_i}(T_i)` and of
    /// the incidence vector `f_i`.
    pub fn non_root_vertices(&self, i: usize) -> Vec<usize> {
        let root = self.path[i];
        self.subtrees[i].iter().copied().filter(|&v| v != root).collect()
    }

    /// `deg_{T_i}(v_i)`.
    pub fn root_degree_in_subtree(&self, i: usize) -> usize {
        let root = self.path[i];
        self.host.neighbors(root).iter().filter(|&&w| self.owner[w] == i).count()
    }

    /// Incidence vector `f_i` over the non-root vertices of `T_i`: `-1` at
    /// neighbors of the root, `0` elsewhere.
    pub fn f_vector(&self, i: usize) -> Vec<f64> {
        let root = self.path[i];
        self.non_root_vertices(i)
            .into_iter()
            .map(|v| if self.host.is_adjacent(root, v) { -1.0 } else { 0.0 })
            .collect()
    }

    /// The branches `T_{i,j}` of `T_i` at its root: one vertex set per root
    /// neighbor inside `T_i`, each including the root, sorted.
    pub fn branches(&self, i: usize) -> Vec<Vec<usize>> {
        let root = self.path[i];
        self.host
            .neighbors(root)
            .iter()
            .filter(|&&w| self.owner[w] == i)
            .map(|&w| {
                let mut b = self.host.component_avoiding(w, &[root]);
                b.push(root);
                b.sort_unstable();
                b
            })
            .collect()
    }

    /// `T_{i+1}` as a standalone tree, relabeled in ascending host order,
    /// together with the local label of its root.
    pub fn subtree_tree(&self, i: usize) -> (Tree, usize) {
        let verts = &self.subtrees[i];
        let t = self.host.induced(verts).expect("attached subtrees are connected");
        let root = verts.binary_search(&self.path[i]).unwrap();
        (t, root)
    }
}
