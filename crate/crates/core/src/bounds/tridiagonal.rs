use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// Pivots at or below this magnitude stop the quotient recursion.
pub const ZERO_PIVOT: f64 = 1e-12;

/// Kernel entry `x_j = x_1 √2 cos((j − ½)ζ) / √(1 + cos ζ)` of the
/// constant-perturbation system with `ε = 2(1 − cos ζ)`; `j` is 1-based.
pub fn toeplitz_kernel_entry(x1: f64, zeta: f64, j: usize) -> f64 {
    x1 * std::f64::consts::SQRT_2 * ((j as f64 - 0.5) * zeta).cos() / (1.0 + zeta.cos()).sqrt()
}

/// `L(P_n)` minus `diag(ε_1 … ε_n)` with `ε_i ≥ 0`: diagonal
/// `1 − ε_1, 2 − ε_2, …, 2 − ε_{n−1}, 1 − ε_n`, off-diagonal `−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedTridiagonal {
    eps: Vec<f64>,
}

impl PerturbedTridiagonal {
    pub fn new(eps: Vec<f64>) -> Result<PerturbedTridiagonal> {
        if eps.is_empty() {
            return Err(Error::BadParams("empty perturbation".into()));
        }
        if let Some(&e) = eps.iter().find(|&&e| !(e >= 0.0)) {
            return Err(Error::BadParams(format!("perturbations must be non-negative, got {e}")));
        }
        Ok(PerturbedTridiagonal { eps })
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let n = self.n();
        self.eps
            .iter()
            .enumerate()
            .map(|(i, e)| if i == 0 || i == n - 1 { 1.0 - e } else { 2.0 - e })
            .collect()
    }

    pub fn to_matrix(&self) -> SymMatrix {
        SymMatrix::tridiagonal(&self.diagonal(), -1.0)
    }

    /// `F_1 = 1 − ε_1`, `F_i = 2 − ε_i − 1/F_{i−1}` for `i = 2..n−1`: the
    /// quotients `x_{i+1}/x_i` of a kernel element.
    pub fn kernel_ratio_recursion(&self) -> Result<Vec<f64>> {
        let mut out: Vec<f64> = Vec::with_capacity(self.n().saturating_sub(1));
        for i in 0..self.n().saturating_sub(1) {
            let f = match out.last() {
                None => 1.0 - self.eps[0],
                Some(&prev) => {
                    if prev.abs() <= ZERO_PIVOT {
                        return Err(Error::ZeroPivot { index: i, value: prev });
                    }
                    2.0 - self.eps[i] - 1.0 / prev
                }
            };
            out.push(f);
        }
        Ok(out)
    }
}
