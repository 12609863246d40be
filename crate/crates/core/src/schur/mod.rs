//! Schur reduction of `L(T) − λI` onto a path, and the quantities built
//! from it: the resolvent functions `f_{T_i}`, eigenvector reconstruction,
//! entry ratios, Perron-value bounds and the pendant ratio `g`.

mod pendant;
mod perron;
mod reduction;
mod resolvent;

pub use pendant::{
    compare_pendants, g_derivative_at_zero, g_ratio, pendant_ratio, pendant_taylor, ComparisonVerdict,
    Dominance, PendantComparison, PendantRatio, DEGENERATE_TOL,
};
pub use perron::{perron_bounds, perron_value};
pub use reduction::{
    ratio_adjacent, ratio_distance_two, reconstruct_eigenvector, schur_matrix, SchurReduction,
    SchurTridiagonal, KERNEL_TOL,
};
pub use resolvent::ResolventFn;
