//! Eigenvalue-only bounds on eigenvector-entry ratios along a path.
//!
//! The Schur tridiagonal `S(λ)` has the shape of `L(P_k)` perturbed on the
//! diagonal by `ε_i = λ + f_{T_i}(λ) − deg_{T_i}(v_i)`. Writing
//! `ε = 2(1 − cos ζ)`, kernel entries of the constant-`ε` matrix are
//! cosines, and the extreme `ε` values sandwich the actual ratios.

mod envelope;
mod tridiagonal;

pub use envelope::{ratio_sandwich, BoundMode, EnvelopeRow, RatioEnvelope, HORIZON_SLACK};
pub use tridiagonal::{toeplitz_kernel_entry, PerturbedTridiagonal, ZERO_PIVOT};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::schur::SchurReduction;
use crate::tree::{PathDecomposition, Tree};

/// `ζ = arccos(1 − ε/2)` for `ε ∈ [0, 2]`.
pub fn zeta_from_eps(eps: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&eps) {
        return Err(Error::OutOfRange(eps));
    }
    Ok((1.0 - eps / 2.0).acos())
}

/// `ε = 2(1 − cos ζ)`.
pub fn eps_from_zeta(zeta: f64) -> f64 {
    2.0 * (1.0 - zeta.cos())
}

/// `ε_i` for the first `count` attached trees.
pub fn eps_terms_exact(red: &SchurReduction, lambda: f64, count: usize) -> Result<Vec<f64>> {
    red.check_shift_leading(lambda, count)?;
    (0..count)
        .map(|i| Ok(lambda + red.f_value(i, lambda)? - red.block(i).root_degree() as f64))
        .collect()
}

/// `(min, max)` of `ε_i` over the first `count` attached trees.
pub fn eps_bounds_exact_leading(red: &SchurReduction, lambda: f64, count: usize) -> Result<(f64, f64)> {
    let eps = eps_terms_exact(red, lambda, count)?;
    min_max_checked(&eps)
}

/// `(ε_min, ε_max)` over the whole path.
pub fn eps_bounds_exact(d: &PathDecomposition, lambda: f64) -> Result<(f64, f64)> {
    let red = SchurReduction::new(d)?;
    eps_bounds_exact_leading(&red, lambda, d.k())
}

/// Norm-only bracket for `ε_i` over the first `count` attached trees:
/// `(|V|λ − aλ²)/(1 − aλ)` with `a = ‖L_{v_i}(T_i)‖^{-1}` for the lower and
/// `a = ‖L_{v_i}(T_i)^{-1}‖` for the upper end. Singletons contribute `λ`.
pub fn eps_bounds_norm_leading(red: &SchurReduction, lambda: f64, count: usize) -> Result<(f64, f64)> {
    let limit = (0..count).map(|i| red.block(i).lambda_min()).fold(f64::INFINITY, f64::min);
    if !(lambda < limit) {
        return Err(Error::ShiftOutOfRange { lambda, lower: 0.0, upper: limit });
    }
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for i in 0..count {
        let b = red.block(i);
        let size = b.size() as f64;
        let (lo, hi) = if b.size() == 1 {
            (lambda, lambda)
        } else {
            let term = |a: f64| -> Result<f64> {
                let den = 1.0 - a * lambda;
                if den <= 0.0 {
                    return Err(Error::ShiftOutOfRange { lambda, lower: 0.0, upper: 1.0 / a });
                }
                Ok((size * lambda - a * lambda * lambda) / den)
            };
            (term(1.0 / b.reduced_norm())?, term(b.inverse_norm())?)
        };
        lower = lower.min(lo);
        upper = upper.max(hi);
    }
    Ok((lower, upper))
}

pub fn eps_bounds_norm(d: &PathDecomposition, lambda: f64) -> Result<(f64, f64)> {
    let red = SchurReduction::new(d)?;
    eps_bounds_norm_leading(&red, lambda, d.k())
}

fn min_max_checked(eps: &[f64]) -> Result<(f64, f64)> {
    let lo = eps.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for e in [lo, hi] {
        if !(0.0..=2.0).contains(&e) {
            return Err(Error::NoValidZeta(e));
        }
    }
    Ok((lo, hi))
}

/// `(2 − 2cos(π/(n+1)), 2 − 2cos(π/(d(T)+1)))`, the interval that holds
/// `a(T)` for every tree with `n ≥ 2`.
pub fn a_t_universal_bounds(t: &Tree) -> Result<(f64, f64)> {
    if t.n() < 2 {
        return Err(Error::BadParams("a(T) needs at least two vertices".into()));
    }
    let lo = 2.0 - 2.0 * (PI / (t.n() + 1) as f64).cos();
    let hi = 2.0 - 2.0 * (PI / (t.diameter() + 1) as f64).cos();
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{laplacian, sym_eigen};
    use crate::tree::{decompose_along_path, generate, FamilySpec};

    #[test]
    fn zeta_anchors() {
        assert_eq!(zeta_from_eps(0.0).unwrap(), 0.0);
        assert!((zeta_from_eps(2.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((zeta_from_eps(1.0).unwrap() - PI / 3.0).abs() < 1e-15);
        assert!(matches!(zeta_from_eps(2.5), Err(Error::OutOfRange(_))));
        assert!(matches!(zeta_from_eps(-0.1), Err(Error::OutOfRange(_))));
        assert!((eps_from_zeta(PI / 3.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn path_graph_eps_is_lambda() {
        let t = generate(&FamilySpec::Path(10)).unwrap();
        let d = decompose_along_path(&t, &t.longest_path()).unwrap();
        for &l in &[0.05, 0.3] {
            let (lo, hi) = eps_bounds_exact(&d, l).unwrap();
            assert!((lo - l).abs() < 1e-15 && (hi - l).abs() < 1e-15);
            assert_eq!(eps_bounds_norm(&d, l).unwrap(), (l, l));
        }
    }

    #[test]
    fn caterpillar_star_terms() {
        let t = generate(&FamilySpec::Caterpillar(vec![0, 3, 0, 2, 0])).unwrap();
        let d = decompose_along_path(&t, &[0, 1, 2, 3, 4]).unwrap();
        let l = 0.1;
        let (lo, hi) = eps_bounds_exact(&d, l).unwrap();
        assert!((lo - l).abs() < 1e-14);
        assert!((hi - (l + 3.0 * l / (1.0 - l))).abs() < 1e-12);
        // Stars make the norm bracket tight.
        let (nlo, nhi) = eps_bounds_norm(&d, l).unwrap();
        assert!((nlo - lo).abs() < 1e-12 && (nhi - hi).abs() < 1e-12);
    }

    #[test]
    fn norm_brackets_exact() {
        for seed in 0..40 {
            let t = Tree::random(18, seed).unwrap();
            let d = decompose_along_path(&t, &t.longest_path()).unwrap();
            let red = SchurReduction::new(&d).unwrap();
            let limit = red.blocks().iter().map(|b| b.lambda_min()).fold(f64::INFINITY, f64::min);
            let l = 0.5 * limit.min(1.0);
            let Ok((nlo, nhi)) = eps_bounds_norm(&d, l) else { continue };
            let Ok((lo, hi)) = eps_bounds_exact(&d, l) else { continue };
            assert!(nlo <= lo + 1e-12 && hi <= nhi + 1e-12, "{nlo} {lo} {hi} {nhi}");
        }
    }

    #[test]
    fn universal_bounds() {
        let p = generate(&FamilySpec::Path(9)).unwrap();
        let (_, hi) = a_t_universal_bounds(&p).unwrap();
        let a = sym_eigen(&laplacian(&p)).unwrap().values[1];
        assert!((hi - a).abs() < 1e-9);
        let s = generate(&FamilySpec::Star(6)).unwrap();
        let (lo, hi) = a_t_universal_bounds(&s).unwrap();
        assert!(lo <= 1.0 && 1.0 <= hi + 1e-12);
        assert!(a_t_universal_bounds(&Tree::singleton()).is_err());
    }
}
