//! Tree families with fixed canonical labelings.
//!
//! | family | labeling |
//! |---|---|
//! | `path(n)` | spine `0, 1, …, n-1` |
//! | `star(n)` | center `0`, leaves `1..n` |
//! | `caterpillar(m_1..m_k)` | spine `0..k`, then the `m_1` leaves of vertex 0, the `m_2` leaves of vertex 1, … |
//! | `s_caterpillar(S, v0, k)` | spine `0..k`; then for each spine vertex in order, the non-root vertices of one copy of `S` in increasing `S` label |
//! | `fiedler_rose(l, t, r)` | `P_l` spine `0..l` ending at the glue vertex `l-1`; star center `l` and the remaining `r-2` star leaves; then the `t-1` further `P_t` vertices walking away from the glue vertex |
//! | `random_pruefer(n, seed)` | labels from the decoded Prüfer sequence |

use std::str::FromStr;

use super::Tree;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path(usize),
    Star(usize),
    /// Leaf counts `m_1..m_k` along a spine of `k` vertices.
    Caterpillar(Vec<usize>),
    /// One copy of `s` hung from each of `k` spine vertices by identifying
    /// the pendant vertex `root` of `s` with the spine vertex.
    SCaterpillar { s: Tree, root: usize, k: usize },
    /// Paths `P_l`, `P_t` and the star `S_r` (on `r` vertices) glued at a
    /// common vertex that is an endpoint of both paths and a leaf of the star.
    FiedlerRose { l: usize, t: usize, r: usize },
    RandomPruefer { n: usize, seed: u64 },
}

/// Vertex roles of a generated Fiedler rose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoseLayout {
    pub l: usize,
    pub t: usize,
    pub r: usize,
}

impl RoseLayout {
    pub fn new(l: usize, t: usize, r: usize) -> Result<RoseLayout> {
        if l < 2 || t < 2 || r < 2 {
            return Err(Error::BadSpec(format!(
                "rose needs l, t, r >= 2 (got l={l}, t={t}, r={r})"
            )));
        }
        Ok(RoseLayout { l, t, r })
    }

    pub fn n(&self) -> usize {
        self.l + self.t + self.r - 2
    }

    /// Far endpoint of `P_l`.
    pub fn p_l_end(&self) -> usize {
        0
    }

    pub fn glue(&self) -> usize {
        self.l - 1
    }

    /// The star vertex adjacent to the glue vertex. For `r = 2` this is the
    /// single remaining star vertex, itself a leaf.
    pub fn star_center(&self) -> usize {
        self.l
    }

    /// Star vertices other than the glue vertex.
    pub fn star_vertices(&self) -> Vec<usize> {
        (self.l..self.l + self.r - 1).collect()
    }

    /// Pendant vertices of the whole rose that belong to the star.
    pub fn star_pendants(&self) -> Vec<usize> {
        if self.r == 2 {
            vec![self.l]
        } else {
            (self.l + 1..self.l + self.r - 1).collect()
        }
    }

    /// The `t` vertices of `P_t` starting at the glue vertex.
    pub fn p_t_spine(&self) -> Vec<usize> {
        let first = self.l + self.r - 1;
        std::iter::once(self.glue()).chain(first..first + self.t - 1).collect()
    }

    pub fn p_l_spine(&self) -> Vec<usize> {
        (0..self.l).collect()
    }

    pub fn p_t_end(&self) -> usize {
        self.n() - 1
    }

    pub fn build(&self) -> Tree {
        let mut edges = Vec::with_capacity(self.n() - 1);
        for i in 0..self.l - 1 {
            edges.push((i, i + 1));
        }
        let c = self.star_center();
        edges.push((self.glue(), c));
        for leaf in c + 1..c + self.r - 1 {
            edges.push((c, leaf));
        }
        let spine = self.p_t_spine();
        for w in spine.windows(2) {
            edges.push((w[0], w[1]));
        }
        Tree::new(self.n(), &edges).expect("rose construction is a tree")
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Tree> {
    match spec {
        FamilySpec::Path(n) => {
            if *n == 0 {
                return Err(Error::BadSpec("path needs n >= 1".into()));
            }
            let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
            Tree::new(*n, &edges)
        }
        FamilySpec::Star(n) => {
            if *n < 2 {
                return Err(Error::BadSpec("star needs n >= 2".into()));
            }
            let edges: Vec<_> = (1..*n).map(|i| (0, i)).collect();
            Tree::new(*n, &edges)
        }
        FamilySpec::Caterpillar(m) => {
            let k = m.len();
            if k == 0 {
                return Err(Error::BadSpec("caterpillar needs a spine".into()));
            }
            let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
            let mut next = k;
            for (i, &mi) in m.iter().enumerate() {
                for _ in 0..mi {
                    edges.push((i, next));
                    next += 1;
                }
            }
            Tree::new(next, &edges)
        }
        FamilySpec::SCaterpillar { s, root, k } => {
            if *k == 0 {
                return Err(Error::BadSpec("s-caterpillar needs k >= 1".into()));
            }
            if !s.contains(*root) || !s.is_pendant(*root) {
                return Err(Error::BadSpec(format!("root {root} is not a pendant vertex of S")));
            }
            let mut edges: Vec<_> = (1..*k).map(|i| (i - 1, i)).collect();
            let mut next = *k;
            for spine in 0..*k {
                let mut map = vec![usize::MAX; s.n()];
                map[*root] = spine;
                for v in (0..s.n()).filter(|v| v != root) {
                    map[v] = next;
                    next += 1;
                }
                edges.extend(s.edges().iter().map(|&(u, v)| (map[u], map[v])));
            }
            Tree::new(next, &edges)
        }
        FamilySpec::FiedlerRose { l, t, r } => Ok(RoseLayout::new(*l, *t, *r)?.build()),
        FamilySpec::RandomPruefer { n, seed } => Tree::random(*n, *seed),
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|x| !x.is_empty())
        .map(|x| x.trim().parse().map_err(|_| Error::BadSpec(format!("bad integer {x:?}"))))
        .collect()
}

impl FamilySpec {
    /// Parses `path:N`, `star:N`, `caterpillar:M1,M2,…`, `rose:L,T,R`,
    /// `random:N` (seeded with `seed`) and `scaterpillar:K:ROOT:u-v,u-v,…`
    /// (the edge list of `S`).
    pub fn parse(s: &str, seed: u64) -> Result<FamilySpec> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::BadSpec(format!("expected <family>:<params>, got {s:?}")))?;
        let one = |rest: &str| -> Result<usize> {
            rest.trim().parse().map_err(|_| Error::BadSpec(format!("bad integer {rest:?}")))
        };
        match kind {
            "path" => Ok(FamilySpec::Path(one(rest)?)),
            "star" => Ok(FamilySpec::Star(one(rest)?)),
            "caterpillar" => Ok(FamilySpec::Caterpillar(parse_list(rest)?)),
            "rose" | "fiedler_rose" => match parse_list(rest)?.as_slice() {
                &[l, t, r] => Ok(FamilySpec::FiedlerRose { l, t, r }),
                _ => Err(Error::BadSpec("rose expects L,T,R".into())),
            },
            "random" | "random_pruefer" => Ok(FamilySpec::RandomPruefer { n: one(rest)?, seed }),
            "scaterpillar" | "s_caterpillar" => {
                let parts: Vec<&str> = rest.splitn(3, ':').collect();
                let [k, root, edges] = parts.as_slice() else {
                    return Err(Error::BadSpec("scaterpillar expects K:ROOT:u-v,…".into()));
                };
                let mut pairs = Vec::new();
                for e in edges.split(',').filter(|e| !e.is_empty()) {
                    let (u, v) = e
                        .split_once('-')
                        .ok_or_else(|| Error::BadSpec(format!("bad edge {e:?}")))?;
                    pairs.push((one(u)?, one(v)?));
                }
                let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
                let s = Tree::new(n, &pairs).map_err(|e| Error::BadSpec(e.to_string()))?;
                Ok(FamilySpec::SCaterpillar { s, root: one(root)?, k: one(k)? })
            }
            other => Err(Error::BadSpec(format!("unknown family {other:?}"))),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilySpec::parse(s, 0)
    }
}
