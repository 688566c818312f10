//! Classical gamma, Bessel and Hankel functions, and the `p → 1⁻` limits
//! that carry the q-objects onto them.

mod bessel;
mod dd;
mod gamma;
mod limits;

pub use bessel::{asymptotic_coefficient, bessel_j, f01, hankel, hankel_asymptotic, AsymptoticParams, HankelKind};
pub use gamma::{gamma, rgamma};
pub use limits::{
    dyadic_grid, gamma_limit_scan, limiting_combination, main_limit_mirror_target, main_limit_parts, main_limit_scan,
    main_limit_target, onephione_limit_scan, qbessel_classical_limit_scan, theta_power_limit_scan,
    theta_ratio_limit_scan, theta_split_corollary_residuals, theta_split_identity_residual,
    theta_sum_representation_residuals, LimitScanRow, LimitingCombination, MainLimitParts,
};
