//! Labeled trees on the vertex set `0..n`.
//!
//! A [`Tree`] is validated once at construction and immutable afterwards.
//! Everything downstream (Laplacians, path decompositions, Fiedler reports)
//! addresses vertices by their dense integer label.

mod decompose;
mod family;
mod io;
mod pruefer;

pub use decompose::{decompose_along_path, PathDecomposition};
pub use family::{generate, FamilySpec, RoseLayout};
pub use io::{parse_edge_list, to_dot, to_edge_list};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected tree with vertices labeled `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct Tree {
    n: usize,
    /// Normalized `(min, max)` pairs, sorted.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists.
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<TreeRepr> for Tree {
    type Error = Error;
    fn try_from(r: TreeRepr) -> Result<Self> {
        Tree::new(r.n, &r.edges)
    }
}

impl From<Tree> for TreeRepr {
    fn from(t: Tree) -> Self {
        TreeRepr { n: t.n, edges: t.edges }
    }
}

impl Tree {
    /// Builds and validates a tree.
    ///
    /// Fails with [`Error::BadLabel`] for labels outside `0..n` and with
    /// [`Error::NotATree`] for self-loops, duplicate edges, a wrong edge
    /// count, cycles or disconnection.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::NotATree("a tree needs at least one vertex".into()));
        }
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::BadLabel { label: x, n });
                }
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges for {} vertices (expected {})",
                edges.len(),
                n,
                n - 1
            )));
        }
        let mut norm: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotATree(format!("duplicate edge {:?}", w[0])));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let t = Tree { n, edges: norm, adj };
        // n - 1 edges plus connectivity rules out cycles.
        let reached = t.bfs_distances(0).iter().filter(|d| d.is_some()).count();
        if reached != n {
            return Err(Error::NotATree("graph is disconnected (contains a cycle)".into()));
        }
        Ok(t)
    }

    /// The single-vertex tree.
    pub fn singleton() -> Tree {
        Tree { n: 1, edges: Vec::new(), adj: vec![Vec::new()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::BadVertex(v))
        }
    }

    /// All degree-one vertices, ascending. A single vertex has degree zero
    /// and is not pendant.
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_pendant(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Hop distances from `src`; every entry is `Some` for a valid tree.
    fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distances from `src` to every vertex.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        self.bfs_distances(src).into_iter().map(|d| d.unwrap()).collect()
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.distances_from(u)[v]
    }

    /// Parent pointers of the tree rooted at `root` (`parent[root] == root`).
    pub fn parents_from(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// The unique path from `u` to `v`, both included.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let parent = self.parents_from(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).into_iter().max().unwrap_or(0)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> usize {
        // Double BFS is exact on trees.
        let d0 = self.distances_from(0);
        let far = argmax_first(&d0);
        self.eccentricity(far)
    }

    /// All unordered vertex pairs `(a, b)`, `a < b`, realizing the diameter.
    pub fn diametral_pairs(&self) -> Vec<(usize, usize)> {
        let d = self.diameter();
        if self.n == 1 {
            return Vec::new();
        }
        let mut pairs = Vec::new();
        for a in 0..self.n {
            let da = self.distances_from(a);
            for (b, &dist) in da.iter().enumerate().skip(a + 1) {
                if dist == d {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// True when exactly one path (up to reversal) realizes the diameter.
    pub fn has_unique_longest_path(&self) -> bool {
        self.diametral_pairs().len() == 1
    }

    /// A longest path, oriented from its smaller endpoint to its larger one.
    ///
    /// Among all diametral endpoint pairs the lexicographically smallest
    /// `(a, b)` with `a < b` is chosen; paths in a tree are determined by
    /// their endpoints, so this fixes the internal labels as well.
    pub fn longest_path(&self) -> Vec<usize> {
        if self.n == 1 {
            return vec![0];
        }
        let (a, b) = self.diametral_pairs()[0];
        self.path_between(a, b)
    }

    /// Checks that `seq` is a nonempty sequence of distinct, consecutively
    /// adjacent vertices.
    pub fn check_path(&self, seq: &[usize]) -> Result<()> {
        if seq.is_empty() {
            return Err(Error::NotAPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; self.n];
        for &v in seq {
            if v >= self.n {
                return Err(Error::BadVertex(v));
            }
            if seen[v] {
                return Err(Error::NotAPath(format!("vertex {v} repeats")));
            }
            seen[v] = true;
        }
        if let Some(w) = seq.windows(2).find(|w| !self.is_adjacent(w[0], w[1])) {
            return Err(Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(())
    }

    /// Vertices of the component of `start` after deleting `blocked`.
    pub fn component_avoiding(&self, start: usize, blocked: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for &b in blocked {
            seen[b] = true;
        }
        seen[start] = true;
        let mut out = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subtree induced by `vertices` (which must induce a connected
    /// subgraph), relabeled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Tree> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            local[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        Tree::new(vertices.len(), &edges)
    }

    /// Prüfer sequence of the tree (empty for `n <= 2`).
    pub fn to_pruefer(&self) -> Vec<usize> {
        pruefer::encode(self)
    }

    /// Decodes a Prüfer sequence over `0..n` with `n = seq.len() + 2`.
    pub fn from_pruefer(seq: &[usize]) -> Result<Tree> {
        pruefer::decode(seq)
    }

    /// Uniformly random labeled tree on `n` vertices from a 64-bit seed.
    pub fn random(n: usize, seed: u64) -> Result<Tree> {
        pruefer::random(n, seed)
    }

    /// Returns a copy with extra vertices `n..n + extra` and extra edges.
    pub fn extended(&self, extra: usize, new_edges: &[(usize, usize)]) -> Result<Tree> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(new_edges);
        Tree::new(self.n + extra, &edges)
    }
}

fn argmax_first(v: &[usize]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}
