use super::{sym_eigen, Spectrum, SymMatrix};
use crate::error::{Error, Result};

/// Relative gap a shift must keep from every eigenvalue.
pub const SHIFT_MARGIN: f64 = 1e-8;

/// `|λ − μ| > 1e-8 · max(1, |μ|)`.
pub fn clears_margin(lambda: f64, mu: f64) -> bool {
    (lambda - mu).abs() > SHIFT_MARGIN * mu.abs().max(1.0)
}

/// Shifted solves against one fixed matrix. The spectrum is computed once
/// and used to reject shifts that sit too close to an eigenvalue; the solve
/// itself is Gaussian elimination with partial pivoting.
#[derive(Debug, Clone)]
pub struct ShiftedSolver {
    matrix: SymMatrix,
    spectrum: Spectrum,
}

impl ShiftedSolver {
    pub fn new(matrix: SymMatrix) -> Result<ShiftedSolver> {
        let spectrum = sym_eigen(&matrix)?;
        Ok(ShiftedSolver { matrix, spectrum })
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn lambda_min(&self) -> f64 {
        self.spectrum.values.first().copied().unwrap_or(f64::INFINITY)
    }

    /// Errors with [`Error::NearSingularShift`] naming the nearest offending
    /// eigenvalue.
    pub fn check_shift(&self, lambda: f64) -> Result<()> {
        let bad = self
            .spectrum
            .values
            .iter()
            .filter(|&&mu| !clears_margin(lambda, mu))
            .min_by(|a, b| (*a - lambda).abs().total_cmp(&(*b - lambda).abs()));
        match bad {
            Some(&eigenvalue) => Err(Error::NearSingularShift { lambda, eigenvalue, block: None }),
            None => Ok(()),
        }
    }

    /// `(M − λI)^{-1} rhs`.
    pub fn solve(&self, lambda: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        self.check_shift(lambda)?;
        Ok(gepp(&self.matrix.shifted(lambda), rhs))
    }

    /// `(M − λI)^{-1}` applied to several right-hand sides sharing one
    /// factorization.
    pub fn solve_many(&self, lambda: f64, rhs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        self.check_shift(lambda)?;
        let lu = Lu::factor(&self.matrix.shifted(lambda));
        Ok(rhs.iter().map(|b| lu.solve(b)).collect())
    }
}

/// `(M − λI)^{-1} rhs` for a one-off solve.
pub fn solve_shifted(m: &SymMatrix, lambda: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    ShiftedSolver::new(m.clone())?.solve(lambda, rhs)
}

fn gepp(a: &SymMatrix, rhs: &[f64]) -> Vec<f64> {
    Lu::factor(a).solve(rhs)
}

/// Row-pivoted LU factors packed in one array.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub(crate) fn factor(a: &SymMatrix) -> Lu {
        let n = a.dim();
        let mut lu: Vec<f64> = (0..n).flat_map(|i| a.row(i).to_vec()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| lu[i * n + col].abs().total_cmp(&lu[j * n + col].abs()))
                .unwrap();
            if pivot != col {
                for k in 0..n {
                    lu.swap(pivot * n + k, col * n + k);
                }
                perm.swap(pivot, col);
            }
            let d = lu[col * n + col];
            if d == 0.0 {
                continue;
            }
            for r in col + 1..n {
                let factor = lu[r * n + col] / d;
                lu[r * n + col] = factor;
                if factor != 0.0 {
                    for k in col + 1..n {
                        lu[r * n + k] -= factor * lu[col * n + k];
                    }
                }
            }
        }
        Lu { n, lu, perm }
    }

    pub(crate) fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(rhs.len(), n);
        let mut y: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| self.lu[i * n + k] * y[k]).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.lu[i * n + k] * y[k]).sum();
            y[i] = (y[i] - s) / self.lu[i * n + i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{reduced_inverse_closed_form, reduced_laplacian};
    use crate::tree::Tree;

    #[test]
    fn margin_is_relative_above_one() {
        assert!(clears_margin(0.0, 1e-7));
        assert!(!clears_margin(0.0, 1e-9));
        assert!(!clears_margin(1000.0, 1000.0 + 1e-6));
        assert!(clears_margin(1000.0, 1000.0 + 1e-4));
    }

    #[test]
    fn zero_shift_matches_closed_form() {
        let t = Tree::random(11, 5).unwrap();
        let l = reduced_laplacian(&t, 2).unwrap();
        let inv = reduced_inverse_closed_form(&t, 2).unwrap();
        let solver = ShiftedSolver::new(l).unwrap();
        for j in 0..solver.dim() {
            let mut e = vec![0.0; solver.dim()];
            e[j] = 1.0;
            let x = solver.solve(0.0, &e).unwrap();
            for (i, xi) in x.iter().enumerate() {
                assert!((xi - inv.get(i, j)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn shift_at_eigenvalue_is_rejected() {
        let m = SymMatrix::tridiagonal(&[2.0, 2.0], -1.0);
        match solve_shifted(&m, 1.0, &[1.0, 0.0]) {
            Err(Error::NearSingularShift { eigenvalue, .. }) => assert!((eigenvalue - 1.0).abs() < 1e-12),
            other => panic!("expected rejection, got {other:?}"),
        }
        let x = solve_shifted(&m, 0.5, &[1.0, 0.0]).unwrap();
        let r = m.shifted(0.5).mul_vec(&x);
        assert!((r[0] - 1.0).abs() < 1e-12 && r[1].abs() < 1e-12);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let x = solve_shifted(&m, 0.0, &[2.0, 3.0]).unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
        let many = ShiftedSolver::new(m).unwrap().solve_many(0.0, &[vec![1.0, 0.0]]).unwrap();
        assert_eq!(many, vec![vec![0.0, 1.0]]);
    }
}
