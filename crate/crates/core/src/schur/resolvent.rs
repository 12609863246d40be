use crate::error::{Error, Result};
use crate::linalg::{laplacian_principal, Lu, ShiftedSolver};
use crate::tree::{PathDecomposition, Tree};

/// `f_T(λ) = fᵀ (L_v(T) − λ)^{-1} f` for a rooted tree `(T, v)`, with the
/// reduced Laplacian, its spectrum and the incidence vector `f` cached.
///
/// Row order of the cached matrix is the ascending order of the non-root
/// vertices. A singleton tree has an empty `f` and `f_T ≡ 0`.
#[derive(Debug, Clone)]
pub struct ResolventFn {
    root: usize,
    vertices: Vec<usize>,
    root_degree: usize,
    f: Vec<f64>,
    solver: ShiftedSolver,
}

impl ResolventFn {
    /// The whole of `t`, rooted at `root`.
    pub fn new(t: &Tree, root: usize) -> Result<ResolventFn> {
        t.check_vertex(root)?;
        let all: Vec<usize> = (0..t.n()).collect();
        ResolventFn::on_subtree(t, root, &all)
    }

    /// The attached tree `T_{i+1}` of a path decomposition.
    pub fn from_decomposition(d: &PathDecomposition, i: usize) -> Result<ResolventFn> {
        ResolventFn::on_subtree(d.host(), d.root(i), d.subtree(i))
    }

    /// The subtree of `host` spanned by `vertices` (which must contain
    /// `root`), rooted at `root`. Non-root vertices may only have host
    /// neighbors inside the set, as for the attached trees of a path
    /// decomposition; the block is assembled from host degrees.
    pub fn on_subtree(host: &Tree, root: usize, vertices: &[usize]) -> Result<ResolventFn> {
        host.check_vertex(root)?;
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.binary_search(&root).is_err() {
            return Err(Error::BadVertex(root));
        }
        let non_root: Vec<usize> = sorted.iter().copied().filter(|&u| u != root).collect();
        for &u in &non_root {
            host.check_vertex(u)?;
            if host.neighbors(u).iter().any(|w| sorted.binary_search(w).is_err()) {
                return Err(Error::BadGeometry(format!(
                    "vertex {u} has neighbors outside the rooted subtree at {root}"
                )));
            }
        }
        let f: Vec<f64> =
            non_root.iter().map(|&u| if host.is_adjacent(root, u) { -1.0 } else { 0.0 }).collect();
        let root_degree = f.iter().filter(|&&x| x != 0.0).count();
        let solver = ShiftedSolver::new(laplacian_principal(host, &non_root))?;
        Ok(ResolventFn { root, vertices: sorted, root_degree, f, solver })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Host labels of the subtree, ascending, root included.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `|V(T)|`.
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// `deg_T(v)`: neighbors of the root inside the subtree.
    pub fn root_degree(&self) -> usize {
        self.root_degree
    }

    pub fn f_vector(&self) -> &[f64] {
        &self.f
    }

    pub fn solver(&self) -> &ShiftedSolver {
        &self.solver
    }

    /// `λ_min(L_v(T))`; `+∞` for a singleton.
    pub fn lambda_min(&self) -> f64 {
        self.solver.lambda_min()
    }

    /// `‖L_v(T)‖`; zero for a singleton.
    pub fn reduced_norm(&self) -> f64 {
        self.solver.spectrum().values.last().copied().unwrap_or(0.0)
    }

    /// `‖L_v(T)^{-1}‖ = 1/λ_min`; zero for a singleton.
    pub fn inverse_norm(&self) -> f64 {
        if self.f.is_empty() {
            0.0
        } else {
            1.0 / self.lambda_min()
        }
    }

    pub fn check_shift(&self, lambda: f64) -> Result<()> {
        self.solver.check_shift(lambda)
    }

    /// `f_T(λ)`.
    pub fn value(&self, lambda: f64) -> Result<f64> {
        if self.f.is_empty() {
            return Ok(0.0);
        }
        let x = self.solver.solve(lambda, &self.f)?;
        Ok(crate::linalg::dot(&self.f, &x))
    }

    /// Taylor coefficients `c_m = f^{(m)}(0)/m! = fᵀ L_v^{-(m+1)} f` for
    /// `m = 0..=order`, from repeated solves against one factorization.
    pub fn taylor_at_zero(&self, order: usize) -> Vec<f64> {
        if self.f.is_empty() {
            return vec![0.0; order + 1];
        }
        let lu = Lu::factor(self.solver.matrix());
        // With u_j = L^{-(j+1)} f, c_0 = f·u_0 and c_m = u_a·u_{m−1−a};
        // splitting the power evenly keeps the vectors short.
        let mut u = vec![lu.solve(&self.f)];
        while u.len() <= order / 2 {
            let next = lu.solve(u.last().unwrap());
            u.push(next);
        }
        (0..=order)
            .map(|m| {
                if m == 0 {
                    return crate::linalg::dot(&self.f, &u[0]);
                }
                let a = (m - 1) / 2;
                crate::linalg::dot(&u[a], &u[m - 1 - a])
            })
            .collect()
    }

    /// `f^{(k)}(0) = k! fᵀ L_v^{-(k+1)} f`.
    pub fn derivative_at_zero(&self, k: usize) -> f64 {
        let c = self.taylor_at_zero(k)[k];
        c * (1..=k).map(|j| j as f64).product::<f64>()
    }

    /// Bracket for `f_T(λ)` on `0 < λ < λ_min(L_v(T))` from the extreme
    /// eigenvalues of the reduced Laplacian:
    ///
    /// `deg + λ(|V|−1)/(1 − λ/‖L_v‖) ≤ f_T(λ) ≤ deg + λ(|V|−1)/(1 − λ‖L_v^{-1}‖)`.
    pub fn bounds(&self, lambda: f64) -> Result<(f64, f64)> {
        let upper_lim = self.lambda_min();
        if !(lambda > 0.0 && lambda < upper_lim) {
            return Err(Error::ShiftOutOfRange { lambda, lower: 0.0, upper: upper_lim });
        }
        let deg = self.root_degree as f64;
        if self.f.is_empty() {
            return Ok((deg, deg));
        }
        let m = (self.size() - 1) as f64;
        let lower = deg + lambda * m / (1.0 - lambda / self.reduced_norm());
        let den = 1.0 - lambda * self.inverse_norm();
        let upper = if den <= 0.0 { f64::INFINITY } else { deg + lambda * m / den };
        Ok((lower, upper))
    }
}
