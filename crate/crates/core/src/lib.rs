//! The beta-linear failure rate (BLFR) lifetime distribution and its nested
//! sub-models: evaluation, series expansions, sampling, maximum likelihood,
//! goodness of fit and Monte Carlo studies.

pub mod data;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod gof;
pub mod moments;
pub mod params;
pub mod rng;
pub mod sampling;
pub mod special;
pub mod study;

pub use data::Dataset;
pub use distribution::{
    blfr_cdf, blfr_hazard, blfr_logpdf, blfr_mode, blfr_pdf, blfr_quantile, blfr_sf,
    classify_hazard_shape, lfr_cdf, HazardShape, Mode,
};
pub use error::{Error, Result};
pub use estimation::{fit, FitOptions, FitResult};
pub use params::{BlfrParams, Family, Param};
