//! Numerical kernels: gamma-family functions, the incomplete beta ratio and
//! its inverse, ₂F₁, quadrature, and a few reference distributions.
//!
//! Everything here is a pure function of its arguments. Tolerances are fixed
//! constants, not configuration.

mod beta;
mod gamma;
mod hypergeometric;
mod probability;
mod quadrature;

pub use beta::{
    inv_reg_inc_beta, log_beta, reg_inc_beta, INC_BETA_EPS, INC_BETA_MAX_ITER, INV_INC_BETA_TOL,
};
pub use gamma::{digamma, ln_gamma, ln_gamma_signed, reg_inc_gamma, trigamma};
pub use hypergeometric::{gauss_2f1, HYP2F1_MAX_TERMS, HYP2F1_REL_TOL};
pub use probability::{chi_square_sf, erfc, kolmogorov_sf, normal_cdf, normal_quantile};
pub use quadrature::{
    gauss_legendre, integrate_adaptive, QuadratureRule, MAX_GAUSS_LEGENDRE_ORDER, MAX_SUBDIVISIONS,
};

pub(crate) use beta::{inc_beta_pair, inv_inc_beta_pair, ln_inc_beta_pair, log_beta_unchecked};
pub(crate) use gamma::ln_gamma_unchecked;
