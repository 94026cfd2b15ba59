//! Beta function, regularized incomplete beta ratio and its inverse.

use crate::error::{domain, Result};

use super::gamma::{ln_gamma_unchecked, stirling_correction, LN_SQRT_2PI};

/// Iteration cap for the incomplete-beta continued fraction.
pub const INC_BETA_MAX_ITER: usize = 10_000;
/// Relative convergence threshold for the continued fraction.
pub const INC_BETA_EPS: f64 = 1e-16;
/// Residual target for the inverse: |I_y(α,β) − p| below this is accepted.
pub const INV_INC_BETA_TOL: f64 = 1e-12;

/// ln B(α, β).
pub fn log_beta(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(domain(
            "log_beta",
            format!("arguments must be positive and finite, got ({alpha}, {beta})"),
        ));
    }
    Ok(log_beta_unchecked(alpha, beta))
}

pub(crate) fn log_beta_unchecked(alpha: f64, beta: f64) -> f64 {
    let p = alpha.min(beta);
    let q = alpha.max(beta);
    let s = p + q;
    if p >= 10.0 {
        let corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(s);
        -0.5 * q.ln() + LN_SQRT_2PI + corr + (p - 0.5) * (p / s).ln() + q * (-p / s).ln_1p()
    } else if q >= 10.0 {
        let corr = stirling_correction(q) - stirling_correction(s);
        ln_gamma_unchecked(p) + corr + p - p * s.ln() + (q - 0.5) * (-p / s).ln_1p()
    } else {
        ln_gamma_unchecked(p) + ln_gamma_unchecked(q) - ln_gamma_unchecked(s)
    }
}

fn check_shapes(func: &'static str, alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && beta > 0.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(domain(
            func,
            format!("shape parameters must be positive, got ({alpha}, {beta})"),
        ));
    }
    Ok(())
}

/// Regularized incomplete beta ratio I_y(α, β).
pub fn reg_inc_beta(y: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_shapes("reg_inc_beta", alpha, beta)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(domain(
            "reg_inc_beta",
            format!("y must lie in [0, 1], got {y}"),
        ));
    }
    Ok(inc_beta_pair(y, 1.0 - y, alpha, beta).0)
}

/// Lower and upper regularized incomplete beta, `(I_y(α,β), 1 − I_y(α,β))`.
///
/// `y` and `yc` must satisfy `y + yc = 1`; passing both lets callers that
/// know 1 − y more precisely than `1.0 - y` (e.g. `exp(t)` for a lifetime
/// CDF) keep full relative accuracy in the upper tail.
pub(crate) fn inc_beta_pair(y: f64, yc: f64, alpha: f64, beta: f64) -> (f64, f64) {
    if y <= 0.0 {
        return (0.0, 1.0);
    }
    if yc <= 0.0 {
        return (1.0, 0.0);
    }
    let log_front = alpha * y.ln() + beta * yc.ln() - log_beta_unchecked(alpha, beta);
    if y <= (alpha + 1.0) / (alpha + beta + 2.0) {
        let lower = (log_front.exp() * beta_cf(y, alpha, beta) / alpha).clamp(0.0, 1.0);
        (lower, 1.0 - lower)
    } else {
        let upper = (log_front.exp() * beta_cf(yc, beta, alpha) / beta).clamp(0.0, 1.0);
        (1.0 - upper, upper)
    }
}

/// Natural logarithms of the pair returned by [`inc_beta_pair`], taking
/// `ln y` and `ln(1 − y)` as inputs.
///
/// Stays finite when the tail probability, or 1 − y itself, underflows.
pub(crate) fn ln_inc_beta_pair(ln_y: f64, ln_yc: f64, alpha: f64, beta: f64) -> (f64, f64) {
    if ln_y == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, 0.0);
    }
    if ln_yc == f64::NEG_INFINITY {
        return (0.0, f64::NEG_INFINITY);
    }
    let (y, yc) = (ln_y.exp(), ln_yc.exp());
    let log_front = alpha * ln_y + beta * ln_yc - log_beta_unchecked(alpha, beta);
    if y <= (alpha + 1.0) / (alpha + beta + 2.0) {
        let ln_lower = (log_front + (beta_cf(y, alpha, beta) / alpha).ln()).min(0.0);
        (ln_lower, (-ln_lower.exp()).ln_1p())
    } else {
        let ln_upper = (log_front + (beta_cf(yc, beta, alpha) / beta).ln()).min(0.0);
        ((-ln_upper.exp()).ln_1p(), ln_upper)
    }
}

/// Modified Lentz evaluation of the continued fraction for I_y(a, b).
fn beta_cf(y: f64, a: f64, b: f64) -> f64 {
    let tiny = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * y / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=INC_BETA_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * y / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * y / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < INC_BETA_EPS {
            break;
        }
    }
    h
}

/// Beta density on (0, 1) in log form.
fn log_beta_density(y: f64, yc: f64, alpha: f64, beta: f64, lnb: f64) -> f64 {
    (alpha - 1.0) * y.ln() + (beta - 1.0) * yc.ln() - lnb
}

/// Inverse of [`reg_inc_beta`] in `y`.
pub fn inv_reg_inc_beta(p: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_shapes("inv_reg_inc_beta", alpha, beta)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(
            "inv_reg_inc_beta",
            format!("p must lie in [0, 1], got {p}"),
        ));
    }
    Ok(inv_inc_beta_pair(p, alpha, beta).0)
}

/// Solves I_y(α, β) = p and returns `(y, 1 − y)`, each accurate in its own
/// relative sense.
pub(crate) fn inv_inc_beta_pair(p: f64, alpha: f64, beta: f64) -> (f64, f64) {
    if p <= 0.0 {
        return (0.0, 1.0);
    }
    if p >= 1.0 {
        return (1.0, 0.0);
    }
    let (at_half, _) = inc_beta_pair(0.5, 0.5, alpha, beta);
    if p <= at_half {
        let y = solve_lower_half(p, alpha, beta);
        (y, 1.0 - y)
    } else {
        // I_y(α,β) = p  ⇔  I_{1−y}(β,α) = 1 − p, and 1 − y ≤ ½ here.
        let w = solve_lower_half(1.0 - p, beta, alpha);
        (1.0 - w, w)
    }
}

/// Root of I_y(a, b) = p on (0, ½], assuming I_½(a, b) ≥ p.
///
/// Newton steps are taken in u = ln y, which keeps the iteration well scaled
/// when the density has a power-law singularity at zero; a step leaving the
/// current bracket is replaced by bisection in u.
fn solve_lower_half(p: f64, a: f64, b: f64) -> f64 {
    let lnb = log_beta_unchecked(a, b);
    let mut hi = 0.5_f64.ln();
    // I_y ≈ y^a / (a B) near zero gives a starting point.
    let guess = ((p.ln() + a.ln() + lnb) / a).min(hi);
    let mut lo = f64::MIN_POSITIVE.ln();
    if guess <= lo {
        return f64::MIN_POSITIVE;
    }
    // establish a valid lower bracket below the guess
    let mut probe = guess;
    loop {
        let y = probe.exp();
        let (v, _) = inc_beta_pair(y, 1.0 - y, a, b);
        if v <= p {
            lo = probe;
            break;
        }
        hi = probe;
        probe -= 2.0;
        if probe <= f64::MIN_POSITIVE.ln() {
            return f64::MIN_POSITIVE;
        }
    }
    let mut u = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..400 {
        let y = u.exp();
        let yc = 1.0 - y;
        let (v, _) = inc_beta_pair(y, yc, a, b);
        let resid = v - p;
        if resid.abs() <= INV_INC_BETA_TOL * p.min(1.0 - p).max(f64::MIN_POSITIVE) {
            return y;
        }
        if resid > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        // dI/du = y f(y)
        let slope = (u + log_beta_density(y, yc, a, b, lnb)).exp();
        let mut next = u - resid / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 4.0 * f64::EPSILON * u.abs().max(1.0) {
            return next.exp();
        }
        u = next;
    }
    u.exp()
}
