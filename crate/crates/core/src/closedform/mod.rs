//! High-precision evaluation of the parametric closed forms at the dominant
//! singularity, and every constant derived from them.

mod constants;
mod format;
mod real;
mod regularity;
mod rho;
mod roots;
mod scalar;
mod tpoint;

pub use constants::{
    gamma_minus_five_halves, last_digit_unit, singular_coefficients_at, ConstantEntry,
    ConstantRecord, ConstantsBundle, SingularCoefficients,
};
pub use format::decimal;
pub use real::{HpDual, HpScalar, Real, DEFAULT_PREC};
pub use regularity::{regularity_margin, verify_psi_regular, RegularityReport};
pub use rho::{
    edge_density, edge_variance, r_of_y, rho_central_difference, rho_jet, rho_of_y,
    solve_rho_equals, tpoint_of_y,
};
pub use roots::{newton_bracketed, solve_t_of_y, t_of_y_dual, SCAN_POINTS};
pub use scalar::{
    b_x_derivatives, beta_regular, eval_b_num, eval_c_num, network_residual, solve_d_scalar,
    solve_network, NetworkPoint,
};
pub use tpoint::TPoint;
pub use tpoint::{
    a_fn, alpha_poly, b0, b2, b4, b5, beta_poly, big_y, d0, d2, d3, p_poly, q_poly, q_rho,
    s_poly, t_poly, u0, u1, u2, xi,
};
