//! Series representations: F as a mixture of exponentiated-LFR CDFs,
//! the hypergeometric form of F, and raw moments as mixtures of component
//! moments.
//!
//! With w_j = (−1)^j Γ(β)/(Γ(β−j) j!) the coefficients of (1 − z)^{β−1},
//! the mixture weights are p_j = w_j / (B(α,β)(α+j)) and
//!
//! F(x) = Σ_j p_j G(x)^{α+j},   E X^k = Σ_j p_j E X_j^k,
//!
//! where X_j has CDF G^{α+j}. The series terminates after β terms when β is
//! a positive integer.

use serde::{Deserialize, Serialize};

use crate::distribution::{
    blfr_pdf, blfr_quantile, lfr_inverse_log_sf, lfr_log_sf, ln_one_minus_exp,
};
use crate::error::{domain, Error, Result};
use crate::params::BlfrParams;
use crate::special::{
    gauss_2f1, integrate_adaptive, ln_gamma_signed, ln_gamma_unchecked, log_beta_unchecked,
};

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 10_000;
/// Smallest index at which the tail rule may stop a non-terminating series.
pub const MIN_SERIES_TERMS: usize = 20;
/// Survival probability left beyond the upper limit of component-moment quadrature.
pub const COMPONENT_TAIL_PROB: f64 = 1e-16;
/// Survival probability left beyond the upper limit of direct moment quadrature.
pub const DIRECT_TAIL_PROB: f64 = 1e-14;

/// Truncated mixture weights p_0..p_J.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesExpansion {
    pub coefficients: Vec<f64>,
    pub truncation_index: usize,
    /// |p_{J+1}|; zero for a terminating series.
    pub tail_bound: f64,
    pub exact: bool,
}

fn integer_shape(beta: f64) -> Option<usize> {
    if beta >= 1.0 && beta.fract() == 0.0 && beta <= (MAX_SERIES_TERMS as f64) {
        Some(beta as usize)
    } else {
        None
    }
}

fn check_shape(func: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain(
            func,
            format!("shape parameters must be positive, got {v}"),
        ));
    }
    Ok(())
}

/// ln|w_j| and sign(w_j); `None` when w_j is exactly zero.
fn ln_w(j: usize, beta: f64) -> Option<(f64, f64)> {
    if let Some(m) = integer_shape(beta) {
        if j >= m {
            return None;
        }
    }
    let jf = j as f64;
    if jf < beta {
        // all gamma arguments positive: (−1)^j Γ(β) / (Γ(β−j) Γ(j+1))
        let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
        let ln =
            ln_gamma_unchecked(beta) - ln_gamma_unchecked(beta - jf) - ln_gamma_unchecked(jf + 1.0);
        return Some((ln, sign));
    }
    // j > β (β non-integer): the reflection Γ(β)/Γ(β−j) = (−1)^j Γ(j+1−β)/Γ(1−β)
    // leaves only Γ(1−β) with a possibly negative argument.
    let (ln_g1mb, sign) = ln_gamma_signed(1.0 - beta).ok()?;
    let ln = ln_gamma_unchecked(jf + 1.0 - beta) - ln_g1mb - ln_gamma_unchecked(jf + 1.0);
    Some((ln, sign))
}

/// w_j = (−1)^j Γ(β) / (Γ(β−j) Γ(j+1)); exactly 0 for j ≥ β when β is a positive integer.
pub fn w_coeff(j: usize, beta: f64) -> Result<f64> {
    check_shape("w_coeff", beta)?;
    Ok(ln_w(j, beta).map_or(0.0, |(ln, s)| s * ln.exp()))
}

fn ln_p(j: usize, alpha: f64, beta: f64, lnb: f64) -> Option<(f64, f64)> {
    ln_w(j, beta).map(|(ln, s)| (ln - lnb - (alpha + j as f64).ln(), s))
}

/// p_j = w_j / (B(α, β)(α + j)).
pub fn p_coeff(j: usize, alpha: f64, beta: f64) -> Result<f64> {
    check_shape("p_coeff", alpha)?;
    check_shape("p_coeff", beta)?;
    let lnb = log_beta_unchecked(alpha, beta);
    Ok(ln_p(j, alpha, beta, lnb).map_or(0.0, |(ln, s)| s * ln.exp()))
}

/// Shared truncation logic: sums `term(j)` until two consecutive terms past
/// [`MIN_SERIES_TERMS`] fall below `tol·|sum|`. `None` from `term` ends a
/// terminating series.
fn sum_series<F>(func: &'static str, tol: f64, mut term: F) -> Result<(f64, usize, f64)>
where
    F: FnMut(usize) -> Result<Option<f64>>,
{
    let mut sum = 0.0;
    let mut small_run = 0;
    for j in 0..MAX_SERIES_TERMS {
        let Some(t) = term(j)? else {
            return Ok((sum, j, 0.0));
        };
        sum += t;
        if t.abs() < tol * sum.abs() || t == 0.0 {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if j + 1 >= MIN_SERIES_TERMS && small_run >= 2 {
            return Ok((sum, j + 1, t.abs()));
        }
    }
    Err(Error::Convergence {
        func,
        partial: sum,
        terms: MAX_SERIES_TERMS,
    })
}

impl SeriesExpansion {
    /// Mixture weights truncated by the tail rule on |p_j| relative to Σ p_j.
    pub fn new(alpha: f64, beta: f64, tol: f64) -> Result<Self> {
        check_shape("SeriesExpansion::new", alpha)?;
        check_shape("SeriesExpansion::new", beta)?;
        let lnb = log_beta_unchecked(alpha, beta);
        let mut coefficients = Vec::new();
        let exact = integer_shape(beta).is_some();
        let (_, _, tail) = sum_series("SeriesExpansion::new", tol, |j| {
            let v = ln_p(j, alpha, beta, lnb).map(|(ln, s)| s * ln.exp());
            if let Some(v) = v {
                coefficients.push(v);
            }
            Ok(v)
        })?;
        let truncation_index = coefficients.len().saturating_sub(1);
        let tail_bound = if exact {
            0.0
        } else {
            ln_p(coefficients.len(), alpha, beta, lnb).map_or(tail, |(ln, _)| ln.exp())
        };
        Ok(Self {
            coefficients,
            truncation_index,
            tail_bound,
            exact,
        })
    }

    pub fn sum(&self) -> f64 {
        self.coefficients.iter().sum()
    }
}

fn check_x(func: &'static str, x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(domain(func, format!("x must be non-negative, got {x}")));
    }
    Ok(())
}

/// F(x) = Σ p_j G(x)^{α+j}, truncated by the relative tail rule.
pub fn cdf_series(x: f64, p: &BlfrParams, tol: f64) -> Result<f64> {
    check_x("cdf_series", x)?;
    let t = lfr_log_sf(x, p.a(), p.b());
    let g = -t.exp_m1();
    if g == 0.0 {
        return Ok(0.0);
    }
    let ln_g = g.ln();
    let (alpha, beta) = (p.alpha(), p.beta());
    let lnb = log_beta_unchecked(alpha, beta);
    sum_series("cdf_series", tol, |j| {
        Ok(ln_p(j, alpha, beta, lnb).map(|(ln, s)| s * (ln + (alpha + j as f64) * ln_g).exp()))
    })
    .map(|r| r.0)
}

/// f(x) = Σ p_j g_j(x) with g_j = (α+j) g G^{α+j−1}.
pub fn pdf_series(x: f64, p: &BlfrParams, tol: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("pdf_series", format!("x must be positive, got {x}")));
    }
    let (a, b, alpha, beta) = (p.a(), p.b(), p.alpha(), p.beta());
    let t = lfr_log_sf(x, a, b);
    let ln_g = ln_one_minus_exp(t);
    let ln_base = (a + b * x).ln() + t;
    let lnb = log_beta_unchecked(alpha, beta);
    sum_series("pdf_series", tol, |j| {
        let e = alpha + j as f64;
        Ok(ln_p(j, alpha, beta, lnb)
            .map(|(ln, s)| s * (ln + e.ln() + ln_base + (e - 1.0) * ln_g).exp()))
    })
    .map(|r| r.0)
}

/// F(x) = G^α / (α B(α,β)) · ₂F₁(α, 1−β; α+1; G).
pub fn cdf_hypergeometric(x: f64, p: &BlfrParams) -> Result<f64> {
    check_x("cdf_hypergeometric", x)?;
    let g = -lfr_log_sf(x, p.a(), p.b()).exp_m1();
    if g == 0.0 {
        return Ok(0.0);
    }
    let (alpha, beta) = (p.alpha(), p.beta());
    let f21 = gauss_2f1(alpha, 1.0 - beta, alpha + 1.0, g)?;
    Ok((alpha * g.ln() - alpha.ln() - log_beta_unchecked(alpha, beta)).exp() * f21)
}

/// E X^k for X with CDF G^e (exponentiated LFR with exponent e), by adaptive
/// quadrature on [0, q] where 1 − G(q)^e = [`COMPONENT_TAIL_PROB`], far enough
/// out that the dropped x^k tail is below double-precision resolution for small k.
pub fn component_moment(k: u32, a: f64, b: f64, e: f64) -> Result<f64> {
    // G(q) = (1 − ε)^{1/e}  ⇒  ln(1 − G(q)) = ln(−expm1(ln(1−ε)/e))
    let ln_sf_q = (-((-COMPONENT_TAIL_PROB).ln_1p() / e).exp_m1()).ln();
    let hi = lfr_inverse_log_sf(ln_sf_q, a, b);
    let kf = k as f64;
    let ln_e = e.ln();
    integrate_adaptive(
        |x| {
            if x <= 0.0 {
                return 0.0;
            }
            let t = lfr_log_sf(x, a, b);
            (kf * x.ln() + ln_e + (a + b * x).ln() + t + (e - 1.0) * ln_one_minus_exp(t)).exp()
        },
        0.0,
        hi,
        0.0,
        1e-12,
    )
}

/// E X^k = Σ p_j E X_j^k, stopping at the first j ≥ 20 where two consecutive
/// terms are below `tol` relative to the partial sum.
pub fn raw_moment(k: u32, p: &BlfrParams, tol: f64) -> Result<f64> {
    if k == 0 {
        return Err(domain("raw_moment", "moment order must be at least 1"));
    }
    let (a, b, alpha, beta) = (p.a(), p.b(), p.alpha(), p.beta());
    let lnb = log_beta_unchecked(alpha, beta);
    sum_series("raw_moment", tol, |j| {
        let Some((ln, s)) = ln_p(j, alpha, beta, lnb) else {
            return Ok(None);
        };
        let m = component_moment(k, a, b, alpha + j as f64)?;
        Ok(Some(s * ln.exp() * m))
    })
    .map(|r| r.0)
}

/// E X^k by direct adaptive quadrature of x^k f(x) up to the
/// 1 − [`DIRECT_TAIL_PROB`] quantile.
pub fn raw_moment_quadrature(k: u32, p: &BlfrParams) -> Result<f64> {
    let hi = blfr_quantile(1.0 - DIRECT_TAIL_PROB, p)?;
    let kf = k as f64;
    integrate_adaptive(
        |x| {
            if x > 0.0 {
                x.powf(kf) * blfr_pdf(x, p).unwrap_or(0.0)
            } else {
                0.0
            }
        },
        0.0,
        hi,
        0.0,
        1e-12,
    )
}
