//! Acceptance-sampling plans by variables for a normally distributed quality
//! characteristic with unknown standard deviation and a two-sided
//! specification interval `[L, U]`.
//!
//! The crate covers the full pipeline:
//!
//! * exact operating characteristics of single plans under the maximum
//!   likelihood (ML) and minimum variance unbiased (MVU) estimators of the
//!   fraction defective ([`oc_single`]),
//! * one-sided single and double plans for the noncentral-t formulation,
//!   including double plans that minimize the maximum average sample number
//!   (ASN) subject to the usual two risk constraints ([`onesided`]),
//! * the mapping of one-sided plans to two-sided acceptance constants and the
//!   risk calibration loop that makes the mapped plans honor the two-sided
//!   producer and consumer risks ([`twosided_double`]),
//! * a seeded Monte Carlo oracle used to cross-check every analytic
//!   probability in the crate ([`mc_oracle`]).
//!
//! All distribution evaluations bottom out in [`numerics`], which provides the
//! special functions and the quadrature, root-finding, and maximization
//! primitives the plan computations are specified against.

pub mod estimators;
pub mod mc_oracle;
pub mod numerics;
pub mod oc_single;
pub mod onesided;
pub mod twosided_double;

/// Crate-wide error type.
///
/// `InvalidArgument` covers domain violations detectable from the inputs
/// alone; `NoConvergence` covers iteration caps and infeasible searches.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
