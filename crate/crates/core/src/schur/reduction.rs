use serde::Serialize;

use super::ResolventFn;
use crate::error::{Error, Result};
use crate::linalg::{norm, sym_eigen, SymMatrix};
use crate::tree::PathDecomposition;

/// Residual tolerance for treating a path vector as a kernel element.
pub const KERNEL_TOL: f64 = 1e-7;

/// `S(λ)`: tridiagonal with diagonal `s_i(λ) = deg_T(v_i) − λ − f_{T_i}(λ)`
/// and constant off-diagonal `−1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchurTridiagonal {
    pub lambda: f64,
    pub diag: Vec<f64>,
}

impl SchurTridiagonal {
    pub fn k(&self) -> usize {
        self.diag.len()
    }

    pub fn to_matrix(&self) -> SymMatrix {
        SymMatrix::tridiagonal(&self.diag, -1.0)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let k = self.k();
        assert_eq!(x.len(), k);
        (0..k)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y -= x[i - 1];
                }
                if i + 1 < k {
                    y -= x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Singular values, ascending (absolute eigenvalues of the symmetric
    /// matrix).
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let mut s: Vec<f64> =
            sym_eigen(&self.to_matrix())?.values.into_iter().map(f64::abs).collect();
        s.sort_by(f64::total_cmp);
        Ok(s)
    }

    pub fn sigma_min(&self) -> Result<f64> {
        Ok(self.singular_values()?[0])
    }

    /// Unit vector of the smallest singular value: the kernel direction
    /// whenever `λ` is an eigenvalue of `L(T)`.
    pub fn kernel_vector(&self) -> Result<Vec<f64>> {
        let spec = sym_eigen(&self.to_matrix())?;
        let i = (0..spec.dim())
            .min_by(|&a, &b| spec.values[a].abs().total_cmp(&spec.values[b].abs()))
            .expect("k >= 1");
        Ok(spec.vectors[i].clone())
    }

    /// `‖S x‖ / ‖x‖`.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let nx = norm(x);
        if nx == 0.0 {
            return f64::INFINITY;
        }
        norm(&self.apply(x)) / nx
    }
}

/// A path decomposition with one cached [`ResolventFn`] per attached tree.
#[derive(Debug, Clone)]
pub struct SchurReduction {
    decomposition: PathDecomposition,
    blocks: Vec<ResolventFn>,
}

impl SchurReduction {
    pub fn new(d: &PathDecomposition) -> Result<SchurReduction> {
        let blocks =
            (0..d.k()).map(|i| ResolventFn::from_decomposition(d, i)).collect::<Result<_>>()?;
        Ok(SchurReduction { decomposition: d.clone(), blocks })
    }

    pub fn decomposition(&self) -> &PathDecomposition {
        &self.decomposition
    }

    pub fn k(&self) -> usize {
        self.decomposition.k()
    }

    pub fn block(&self, i: usize) -> &ResolventFn {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[ResolventFn] {
        &self.blocks
    }

    /// `deg_T(v_{i+1})`.
    pub fn host_degree(&self, i: usize) -> usize {
        self.decomposition.host().degree(self.decomposition.root(i))
    }

    /// Checks the shift against the first `count` blocks, naming the block
    /// at fault.
    pub fn check_shift_leading(&self, lambda: f64, count: usize) -> Result<()> {
        for (i, b) in self.blocks.iter().take(count).enumerate() {
            if let Err(Error::NearSingularShift { lambda, eigenvalue, .. }) = b.check_shift(lambda) {
                return Err(Error::NearSingularShift { lambda, eigenvalue, block: Some(i) });
            }
        }
        Ok(())
    }

    pub fn check_shift(&self, lambda: f64) -> Result<()> {
        self.check_shift_leading(lambda, self.k())
    }

    /// `f_{T_{i+1}}(λ)` with the block index attached to any margin error.
    pub fn f_value(&self, i: usize, lambda: f64) -> Result<f64> {
        self.blocks[i].value(lambda).map_err(|e| match e {
            Error::NearSingularShift { lambda, eigenvalue, .. } => {
                Error::NearSingularShift { lambda, eigenvalue, block: Some(i) }
            }
            other => other,
        })
    }

    /// `s_{T_{i+1}}(λ)`.
    pub fn s_value(&self, i: usize, lambda: f64) -> Result<f64> {
        Ok(self.host_degree(i) as f64 - lambda - self.f_value(i, lambda)?)
    }

    pub fn matrix(&self, lambda: f64) -> Result<SchurTridiagonal> {
        self.check_shift(lambda)?;
        let diag = (0..self.k()).map(|i| self.s_value(i, lambda)).collect::<Result<_>>()?;
        Ok(SchurTridiagonal { lambda, diag })
    }

    /// Extends a kernel element of `S(λ)` to an eigenvector of `L(T)`: the
    /// entries on `T_i \ {v_i}` are `−(L_{v_i}(T_i) − λ)^{-1} f_i x_i`.
    pub fn reconstruct(&self, lambda: f64, x_path: &[f64]) -> Result<Vec<f64>> {
        let s = self.matrix(lambda)?;
        if x_path.len() != self.k() {
            return Err(Error::BadParams(format!(
                "path vector has {} entries, path has {}",
                x_path.len(),
                self.k()
            )));
        }
        let residual = s.relative_residual(x_path);
        if !(residual < KERNEL_TOL) {
            return Err(Error::NotInKernel { residual });
        }
        let d = &self.decomposition;
        let mut x = vec![0.0; d.host().n()];
        for (i, b) in self.blocks.iter().enumerate() {
            x[d.root(i)] = x_path[i];
            if b.f_vector().is_empty() {
                continue;
            }
            let y = b.solver().solve(lambda, b.f_vector())?;
            for (&v, yv) in d.non_root_vertices(i).iter().zip(y) {
                x[v] = -yv * x_path[i];
            }
        }
        Ok(x)
    }
}

/// `S(λ)` for the decomposition `d`.
pub fn schur_matrix(d: &PathDecomposition, lambda: f64) -> Result<SchurTridiagonal> {
    SchurReduction::new(d)?.matrix(lambda)
}

/// Full eigenvector of `L(T)` from its restriction to the path.
pub fn reconstruct_eigenvector(d: &PathDecomposition, lambda: f64, x_path: &[f64]) -> Result<Vec<f64>> {
    SchurReduction::new(d)?.reconstruct(lambda, x_path)
}

/// `x_2/x_1 = s_{T_1}(λ)` on a two-vertex path; at an eigenvalue this also
/// equals `1/s_{T_2}(λ)`.
pub fn ratio_adjacent(d: &PathDecomposition, lambda: f64) -> Result<f64> {
    if d.k() != 2 {
        return Err(Error::BadGeometry(format!("adjacent ratio needs k = 2, got {}", d.k())));
    }
    SchurReduction::new(d)?.matrix(lambda).map(|s| s.diag[0])
}

/// Both `s` values below this are treated as a `0/0` quotient.
const DEGENERATE_S: f64 = 1e-10;

/// `x_3/x_1 = s_{T_1}(λ)/s_{T_3}(λ)` on a three-vertex path. When both
/// values vanish (`x_2 = 0`) the quotient carries no information and the
/// ratio is read off the kernel of `S(λ)` instead.
pub fn ratio_distance_two(d: &PathDecomposition, lambda: f64) -> Result<f64> {
    if d.k() != 3 {
        return Err(Error::BadGeometry(format!("distance-two ratio needs k = 3, got {}", d.k())));
    }
    let s = SchurReduction::new(d)?.matrix(lambda)?;
    let scale = s.diag.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    if s.diag[0].abs() <= DEGENERATE_S * scale && s.diag[2].abs() <= DEGENERATE_S * scale {
        let x = s.kernel_vector()?;
        return Ok(x[2] / x[0]);
    }
    Ok(s.diag[0] / s.diag[2])
}
