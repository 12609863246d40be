//! Number normalization for reproducible text output.

/// Significant digits kept in JSON and CSV output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to twelve significant digits and maps `-0.0` to `0.0`.
/// Non-finite values pass through unchanged.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let y: f64 = s.parse().expect("formatted float parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

pub fn round_vec(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(round_sig).collect()
}
