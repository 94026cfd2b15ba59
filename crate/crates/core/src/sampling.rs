//! Gamma, beta and BLFR variates.
//!
//! A BLFR draw is X = G⁻¹(Y) with Y ~ Beta(α, β). Gamma variates are carried
//! in log form so that beta draws with very small shapes neither underflow
//! nor lose the complement 1 − Y.

use crate::distribution::{blfr_from_beta_pair, ln_complement};
use crate::error::{domain, Error, Result};
use crate::params::BlfrParams;
use crate::rng::RngState;

/// ln of a Gamma(shape, 1) variate.
///
/// Marsaglia–Tsang squeeze for shape ≥ 1; for shape < 1 the draw is
/// Gamma(shape + 1)·U^{1/shape}.
pub(crate) fn ln_gamma_variate(shape: f64, rng: &mut RngState) -> f64 {
    if shape < 1.0 {
        let g = ln_gamma_variate(shape + 1.0, rng);
        return g + rng.next_open01().ln() / shape;
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = rng.next_normal();
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = rng.next_open01();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d.ln() + v.ln();
        }
    }
}

fn check_shape(func: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain(
            func,
            format!("shape must be positive and finite, got {v}"),
        ));
    }
    Ok(())
}

/// Gamma(shape, 1) variate.
pub fn sample_gamma(shape: f64, rng: &mut RngState) -> Result<f64> {
    check_shape("sample_gamma", shape)?;
    Ok(ln_gamma_variate(shape, rng).exp())
}

/// Beta variate as the pair (Y, 1 − Y), each member computed directly.
pub(crate) fn beta_pair_variate(alpha: f64, beta: f64, rng: &mut RngState) -> (f64, f64) {
    let l1 = ln_gamma_variate(alpha, rng);
    let l2 = ln_gamma_variate(beta, rng);
    // Y = G1/(G1+G2) = 1/(1 + e^{l2−l1})
    let y = 1.0 / (1.0 + (l2 - l1).exp());
    let yc = 1.0 / (1.0 + (l1 - l2).exp());
    (y, yc)
}

/// Beta(α, β) variate Y = G₁/(G₁ + G₂).
pub fn sample_beta(alpha: f64, beta: f64, rng: &mut RngState) -> Result<f64> {
    check_shape("sample_beta", alpha)?;
    check_shape("sample_beta", beta)?;
    Ok(beta_pair_variate(alpha, beta, rng).0)
}

/// n independent BLFR draws.
///
/// A draw whose Y is numerically 1 (so that ln(1 − Y) = −∞), or whose Y
/// underflows to 0 so that X = 0, is redrawn; more than n redraws in total
/// is a [`Error::GeneratorFault`].
pub fn sample_blfr(n: usize, p: &BlfrParams, rng: &mut RngState) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(domain("sample_blfr", "sample size must be at least 1"));
    }
    let mut out = Vec::with_capacity(n);
    let mut redraws = 0usize;
    while out.len() < n {
        let (y, yc) = beta_pair_variate(p.alpha(), p.beta(), rng);
        let usable = ln_complement(y, yc) > f64::NEG_INFINITY && y > 0.0;
        let x = if usable {
            blfr_from_beta_pair(y, yc, p)
        } else {
            0.0
        };
        if x > 0.0 && x.is_finite() {
            out.push(x);
        } else {
            redraws += 1;
            if redraws > n {
                return Err(Error::GeneratorFault {
                    redraws,
                    requested: n,
                });
            }
        }
    }
    Ok(out)
}
