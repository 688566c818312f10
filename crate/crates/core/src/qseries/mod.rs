//! q-series primitives: Pochhammer symbols, theta, q-gamma, basic
//! hypergeometric series, principal powers and q-spirals.

mod hypergeometric;
mod pochhammer;
mod power;
mod qgamma;
mod spiral;
mod theta;

pub use hypergeometric::{phi11, rphis};
pub use pochhammer::{qpoch_finite, qpoch_inf, qpoch_multi};
pub use power::{is_integer, on_negative_axis, principal_power};
pub use qgamma::q_gamma;
pub use spiral::{q_spiral_locate, theta_zero_distance, SpiralLocation};
pub use theta::{reduce_argument, theta, theta_ratio, theta_scaled, theta_with_route, ScaledValue, ThetaRoute};
