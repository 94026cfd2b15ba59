//! Log-gamma, polygamma and the regularized incomplete gamma function.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// ln √(2π)
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Iteration cap shared by the incomplete-gamma series and continued fraction.
const INC_GAMMA_MAX_ITER: usize = 10_000;
const INC_GAMMA_EPS: f64 = 1e-15;

fn ln_gamma_lanczos(x: f64) -> f64 {
    // valid for x >= 0.5
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Stirling remainder lnΓ(x) − [(x−½)ln x − x + ln√(2π)] for x ≥ 10.
pub(crate) fn stirling_correction(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0
                - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0))))))
}

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "ln_gamma",
            format!("argument must be positive and finite, got {x}"),
        ));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        (PI / (PI * x).sin()).ln() - ln_gamma_lanczos(1.0 - x)
    } else if x >= 10.0 {
        (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_correction(x)
    } else {
        ln_gamma_lanczos(x)
    }
}

/// ln|Γ(x)| together with the sign of Γ(x), for any real x that is not a
/// non-positive integer.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() || (x <= 0.0 && x == x.floor()) {
        return Err(domain(
            "ln_gamma_signed",
            format!("pole or non-finite argument {x}"),
        ));
    }
    if x > 0.0 {
        return Ok((ln_gamma_unchecked(x), 1.0));
    }
    let s = (PI * x).sin();
    let ln_abs = PI.ln() - s.abs().ln() - ln_gamma_unchecked(1.0 - x);
    // Γ(x) < 0 on (−1, 0), (−3, −2), ...
    let sign = if (-x).ceil() as i64 % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    Ok((ln_abs, sign))
}

/// Digamma ψ(x) = d/dx ln Γ(x), x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "digamma",
            format!("argument must be positive, got {x}"),
        ));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 6.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0
                        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    Ok(acc + x.ln() - 0.5 * r - series)
}

/// Trigamma ψ′(x), x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "trigamma",
            format!("argument must be positive, got {x}"),
        ));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 6.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    // 1/x + 1/(2x²) + Σ B_2k / x^(2k+1)
    let series = r
        + 0.5 * r2
        + r * r2
            * (1.0 / 6.0
                - r2 * (1.0 / 30.0
                    - r2 * (1.0 / 42.0
                        - r2 * (1.0 / 30.0
                            - r2 * (5.0 / 66.0 - r2 * (691.0 / 2730.0 - r2 * 7.0 / 6.0))))));
    Ok(acc + series)
}

/// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
pub fn reg_inc_gamma(a: f64, x: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !(x >= 0.0) {
        return Err(domain(
            "reg_inc_gamma",
            format!("need a > 0 and x >= 0, got a={a}, x={x}"),
        ));
    }
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let log_front = a * x.ln() - x - ln_gamma_unchecked(a);
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for n in 0..INC_GAMMA_MAX_ITER {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * INC_GAMMA_EPS {
                let p = (log_front.exp() * sum).min(1.0);
                return Ok((p, 1.0 - p));
            }
            if n + 1 == INC_GAMMA_MAX_ITER {
                break;
            }
        }
        Err(Error::Convergence {
            func: "reg_inc_gamma",
            partial: log_front.exp() * sum,
            terms: INC_GAMMA_MAX_ITER,
        })
    } else {
        // modified Lentz on the continued fraction for Q
        let tiny = f64::MIN_POSITIVE / INC_GAMMA_EPS;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..INC_GAMMA_MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < INC_GAMMA_EPS {
                let q = (log_front.exp() * h).min(1.0);
                return Ok((1.0 - q, q));
            }
        }
        Err(Error::Convergence {
            func: "reg_inc_gamma",
            partial: log_front.exp() * h,
            terms: INC_GAMMA_MAX_ITER,
        })
    }
}
