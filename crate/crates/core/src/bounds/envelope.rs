use serde::Serialize;

use super::{eps_bounds_exact_leading, eps_bounds_norm_leading, zeta_from_eps};
use crate::error::{Error, Result};
use crate::schur::SchurReduction;
use crate::tree::PathDecomposition;

/// Source of the `ε` bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// `ε_i` evaluated from the resolvent functions.
    Exact,
    /// `ε_i` bracketed from block norms only.
    Norm,
}

impl std::str::FromStr for BoundMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<BoundMode> {
        match s {
            "exact" => Ok(BoundMode::Exact),
            "norm" => Ok(BoundMode::Norm),
            other => Err(Error::BadParams(format!("unknown bound mode '{other}'"))),
        }
    }
}

/// Bounds at one path index `i` (1-based): on `x_{i+1}/x_i` and `x_{i+1}/x_1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeRow {
    pub i: usize,
    pub ratio_lower: f64,
    pub ratio_upper: f64,
    pub cumulative_lower: f64,
    pub cumulative_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioEnvelope {
    pub mode: BoundMode,
    pub lambda: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    /// Angle from `ε_max`; drives the lower bounds.
    pub zeta_lower: f64,
    /// Angle from `ε_min`; drives the upper bounds.
    pub zeta_upper: f64,
    /// `min(π/(2ζ_lower) + ½, k)`; rows cover every `i` strictly below it.
    pub horizon: f64,
    pub rows: Vec<EnvelopeRow>,
}

/// Relative guard band below the horizon.
pub const HORIZON_SLACK: f64 = 1e-9;

fn cos_quotient(zeta: f64, num: f64, den: f64) -> f64 {
    (num * zeta).cos() / (den * zeta).cos()
}

impl RatioEnvelope {
    /// Envelope for a path of `k` vertices from a bracket `[ε_min, ε_max]`.
    pub fn from_eps(mode: BoundMode, lambda: f64, eps_min: f64, eps_max: f64, k: usize) -> Result<RatioEnvelope> {
        let zeta_lower = zeta_from_eps(eps_max).map_err(|_| Error::NoValidZeta(eps_max))?;
        let zeta_upper = zeta_from_eps(eps_min).map_err(|_| Error::NoValidZeta(eps_min))?;
        let horizon = (std::f64::consts::FRAC_PI_2 / zeta_lower + 0.5).min(k as f64);
        // Indices that touch the boundary up to rounding are excluded too.
        let cutoff = horizon * (1.0 - HORIZON_SLACK);
        let rows: Vec<EnvelopeRow> = (1..k)
            .take_while(|&i| (i as f64) < cutoff)
            .map(|i| {
                let h = i as f64 + 0.5;
                EnvelopeRow {
                    i,
                    ratio_lower: cos_quotient(zeta_lower, h, h - 1.0),
                    ratio_upper: cos_quotient(zeta_upper, h, h - 1.0),
                    cumulative_lower: cos_quotient(zeta_lower, h, 0.5),
                    cumulative_upper: cos_quotient(zeta_upper, h, 0.5),
                }
            })
            .collect();
        if rows.is_empty() {
            return Err(Error::HorizonEmpty);
        }
        Ok(RatioEnvelope { mode, lambda, eps_min, eps_max, zeta_lower, zeta_upper, horizon, rows })
    }

    /// Largest amount by which the path entries `x` (any sign or scale)
    /// leave the envelope; zero when every bound holds.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let Some(&x1) = x.first() else { return f64::INFINITY };
        if x1 == 0.0 {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for row in &self.rows {
            let (prev, next) = match (x.get(row.i - 1), x.get(row.i)) {
                (Some(&p), Some(&q)) => (p / x1, q / x1),
                _ => return f64::INFINITY,
            };
            if prev == 0.0 {
                return f64::INFINITY;
            }
            let r = next / prev;
            worst = worst.max(row.ratio_lower - r).max(r - row.ratio_upper);
            worst = worst.max(row.cumulative_lower - next).max(next - row.cumulative_upper);
        }
        worst
    }

    pub fn max_width(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio_upper - r.ratio_lower).fold(0.0, f64::max)
    }
}

/// Envelope for the eigenvector entries `x_{i+1}/x_i` along `d`'s path at
/// the eigenvalue `λ`, built from `ε_1 … ε_{k−1}`.
pub fn ratio_sandwich(d: &PathDecomposition, lambda: f64, mode: BoundMode) -> Result<RatioEnvelope> {
    let k = d.k();
    if k < 2 {
        return Err(Error::HorizonEmpty);
    }
    let red = SchurReduction::new(d)?;
    let (lo, hi) = match mode {
        BoundMode::Exact => eps_bounds_exact_leading(&red, lambda, k - 1)?,
        BoundMode::Norm => {
            let (lo, hi) = eps_bounds_norm_leading(&red, lambda, k - 1)?;
            for e in [lo, hi] {
                if !(0.0..=2.0).contains(&e) {
                    return Err(Error::NoValidZeta(e));
                }
            }
            (lo, hi)
        }
    };
    RatioEnvelope::from_eps(mode, lambda, lo, hi, k)
}
