//! q-Borel and q-Laplace transforms, the Borel image of the formal
//! solution at infinity and its residue resummation.

mod formal;
mod image;
mod laplace;
mod resum;

pub use formal::{
    b4_coefficient_residuals, borel_operational_check, f_coeffs_recurrence, q_borel, q_borel_inverse_roundtrip,
    q_laplace_formal, FormalSeries, MAX_ORDER,
};
pub use image::{g_closed_form, g_recurrence_residual};
pub use laplace::{circle_mean, circle_residue, q_laplace_numeric, ContourSpec};
pub use resum::{f_resummed, pochhammer_shift_identity_residual, residue_lemma_value};

pub(crate) use resum::{check_order, resummed_terms};
