//! Numerical foundation: special functions, quadrature, root finding, and the
//! noncentral-t distribution function.
//!
//! Everything in the crate that touches a distribution goes through this
//! module, so the accuracy contracts live here:
//!
//! * special functions (normal, gamma, beta families) are good to a few ulps
//!   in their stable regions and to ~1e-13 absolute elsewhere,
//! * [`integrate`] is adaptive Gauss-Kronrod with user tolerances,
//! * [`noncentral_t_cdf`] evaluates the defining chi-square mixture by
//!   high-order quadrature over the bulk of the mixing density rather than a
//!   series expansion, so its error is governed by the same quadrature
//!   machinery as everything else.

mod nct;
mod quad;
mod roots;
mod special;

pub use nct::{noncentral_t_cdf, ChiMixture};
pub use quad::{integrate, gauss_legendre_nodes, QuadResult, QuadratureSpec};
pub use roots::{find_root, maximize_1d};
pub use special::{
    chi2_bulk, chi2_pdf, erf, erfc, inc_beta, inc_gamma_p, inc_gamma_q, inv_inc_gamma_p,
    inv_inc_gamma_q, lgamma, std_normal_cdf, std_normal_pdf, std_normal_quantile, sym_beta_cdf,
    sym_beta_inv, sym_beta_pdf, BetaParams,
};
