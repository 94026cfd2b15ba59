//! Reference distribution functions used by the inference code: standard
//! normal, chi-square upper tail and the limiting Kolmogorov distribution.

use std::f64::consts::SQRT_2;

use crate::error::{domain, Result};

use super::gamma::reg_inc_gamma;

/// Terms smaller than this stop the Kolmogorov series.
pub const KOLMOGOROV_SERIES_TOL: f64 = 1e-12;

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    // erfc(x) = Q(½, x²) for x ≥ 0
    let q = reg_inc_gamma(0.5, x * x).map(|(_, q)| q).unwrap_or(0.0);
    if x >= 0.0 {
        q
    } else {
        2.0 - q
    }
}

/// Standard normal CDF Φ(z).
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Standard normal quantile Φ⁻¹(p), p ∈ (0, 1).
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(
            "normal_quantile",
            format!("p must lie in (0, 1), got {p}"),
        ));
    }
    // Acklam's rational approximation followed by Newton refinement.
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    let p_low = 0.024_25;
    let mut z = if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    for _ in 0..3 {
        let pdf = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
        if pdf == 0.0 {
            break;
        }
        // work with the smaller tail for accuracy
        let err = if z < 0.0 {
            normal_cdf(z) - p
        } else {
            (1.0 - p) - normal_cdf(-z)
        };
        z -= err / pdf;
    }
    Ok(z)
}

/// Upper tail P(χ²_df > x).
pub fn chi_square_sf(x: f64, df: f64) -> Result<f64> {
    if !(df > 0.0) {
        return Err(domain(
            "chi_square_sf",
            format!("degrees of freedom must be positive, got {df}"),
        ));
    }
    if x <= 0.0 {
        return Ok(1.0);
    }
    Ok(reg_inc_gamma(0.5 * df, 0.5 * x)?.1)
}

/// Limiting Kolmogorov survival function Q(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if !(lambda > 0.0) {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100_000u64 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += sign * term;
        if term < KOLMOGOROV_SERIES_TOL {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
