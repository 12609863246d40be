use super::SymMatrix;
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Convergence threshold on the off-diagonal Frobenius norm, relative to
/// the Frobenius norm of the input.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order with orthonormal eigenvectors;
/// `vectors[i]` pairs with `values[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `max_i ‖A v_i − λ_i v_i‖`.
    pub fn max_residual(&self, a: &SymMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&l, v)| {
                let av = a.mul_vec(v);
                av.iter().zip(v).map(|(x, y)| (x - l * y).powi(2)).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|VᵀV − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let g = super::dot(&self.vectors[i], &self.vectors[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm falls below
/// `1e-12 · ‖A‖_F`; more than [`JACOBI_MAX_SWEEPS`] sweeps is reported as
/// [`Error::NoConvergence`]. A `0 × 0` input yields an empty spectrum.
pub fn sym_eigen(a: &SymMatrix) -> Result<Spectrum> {
    let n = a.dim();
    let mut m: Vec<f64> = (0..n).flat_map(|i| a.row(i).to_vec()).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let thresh = OFF_DIAGONAL_TOL * a.frobenius_norm();

    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += m[p * n + q] * m[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&m) <= thresh {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    m[k * n + p] = new_kp;
                    m[p * n + k] = new_kp;
                    m[k * n + q] = new_kq;
                    m[q * n + k] = new_kq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off = off_norm(&m);
        if off > thresh {
            return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS, off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let vectors = order.iter().map(|&j| (0..n).map(|k| v[k * n + j]).collect()).collect();
    Ok(Spectrum { values, vectors })
}

/// Smallest eigenvalue; `+∞` for an empty matrix.
pub fn lambda_min(a: &SymMatrix) -> Result<f64> {
    Ok(sym_eigen(a)?.values.first().copied().unwrap_or(f64::INFINITY))
}

/// Largest eigenvalue magnitude (the spectral norm of a symmetric matrix).
pub fn spectral_norm(a: &SymMatrix) -> Result<f64> {
    Ok(sym_eigen(a)?.values.iter().fold(0.0, |acc: f64, x| acc.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::laplacian;
    use crate::tree::{generate, FamilySpec, Tree};

    fn assert_invariants(a: &SymMatrix, s: &Spectrum) {
        let scale = 1.0 + spectral_norm_of(s);
        assert!(s.max_residual(a) <= 1e-9 * scale, "residual {}", s.max_residual(a));
        assert!(s.orthonormality_error() <= 1e-9);
        assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
    }

    fn spectral_norm_of(s: &Spectrum) -> f64 {
        s.values.iter().fold(0.0, |a: f64, x| a.max(x.abs()))
    }

    #[test]
    fn p2_and_p3() {
        let l2 = laplacian(&generate(&FamilySpec::Path(2)).unwrap());
        let s = sym_eigen(&l2).unwrap();
        assert!((s.values[0]).abs() < 1e-12 && (s.values[1] - 2.0).abs() < 1e-12);
        // Characteristic polynomial of L(P_3) is λ(λ − 1)(λ − 3).
        let l3 = laplacian(&generate(&FamilySpec::Path(3)).unwrap());
        let s = sym_eigen(&l3).unwrap();
        for (got, want) in s.values.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_invariants(&l3, &s);
    }

    #[test]
    fn path_closed_form() {
        let n = 10;
        let l = laplacian(&generate(&FamilySpec::Path(n)).unwrap());
        let s = sym_eigen(&l).unwrap();
        for (k, got) in s.values.iter().enumerate() {
            let want = 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos();
            assert!((got - want).abs() < 1e-9, "k={k}: {got} vs {want}");
        }
        assert_invariants(&l, &s);
    }

    #[test]
    fn laplacian_kernel_is_constant() {
        for seed in 0..20 {
            let t = Tree::random(25, seed).unwrap();
            let l = laplacian(&t);
            let s = sym_eigen(&l).unwrap();
            assert!(s.values[0].abs() < 1e-9);
            let v0 = &s.vectors[0];
            let c = 1.0 / (t.n() as f64).sqrt();
            assert!(v0.iter().all(|x| (x.abs() - c).abs() < 1e-9));
            assert_invariants(&l, &s);
        }
    }

    #[test]
    fn empty_and_scalar() {
        let s = sym_eigen(&SymMatrix::zeros(0)).unwrap();
        assert!(s.values.is_empty());
        assert_eq!(lambda_min(&SymMatrix::zeros(0)).unwrap(), f64::INFINITY);
        let one = SymMatrix::identity(1);
        assert_eq!(lambda_min(&one).unwrap(), 1.0);
        assert_eq!(spectral_norm(&one).unwrap(), 1.0);
    }

    #[test]
    fn indefinite_and_repeated() {
        let a = SymMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 });
        let s = sym_eigen(&a).unwrap();
        for (got, want) in s.values.iter().zip([-1.0, -1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_invariants(&a, &s);
        assert!((spectral_norm(&a).unwrap() - 2.0).abs() < 1e-12);
    }
}
