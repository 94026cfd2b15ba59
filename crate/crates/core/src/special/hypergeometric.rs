//! Gauss hypergeometric series ₂F₁(a, b; c; z) on 0 ≤ z < 1.

use crate::error::{domain, Error, Result};

/// Relative size of the last retained term.
pub const HYP2F1_REL_TOL: f64 = 1e-14;
/// Term cap before a convergence error is raised.
pub const HYP2F1_MAX_TERMS: usize = 10_000;

/// Power-series evaluation of ₂F₁(a, b; c; z) = Σ (a)_k (b)_k / ((c)_k k!) z^k.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        return Err(domain(
            "gauss_2f1",
            format!("c must not be a non-positive integer, got {c}"),
        ));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(domain(
            "gauss_2f1",
            format!("z must lie in [0, 1), got {z}"),
        ));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..HYP2F1_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() < HYP2F1_REL_TOL * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        func: "gauss_2f1",
        partial: sum,
        terms: HYP2F1_MAX_TERMS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(gauss_2f1(0.3, -1.7, 2.2, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn log_identity() {
        // ₂F₁(1,1;2;z) = −ln(1−z)/z
        for &z in &[0.01_f64, 0.3, 0.7, 0.95] {
            let want = -(-z).ln_1p() / z;
            let got = gauss_2f1(1.0, 1.0, 2.0, z).unwrap();
            assert!((got - want).abs() < 1e-12 * want, "z={z}");
        }
    }

    #[test]
    fn direct_series_cross_check() {
        // independent evaluation through explicit Pochhammer products
        let (a, b, c, z) = (0.7_f64, -0.4_f64, 1.7_f64, 0.45_f64);
        let mut want = 0.0;
        for k in 0..200 {
            let mut t = 1.0;
            for i in 0..k {
                let i = i as f64;
                t *= (a + i) * (b + i) / ((c + i) * (i + 1.0));
            }
            want += t * z.powi(k);
        }
        assert!((gauss_2f1(a, b, c, z).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn terminating_series() {
        // (1−z)^n = ₂F₁(−n, b; b; z)
        let got = gauss_2f1(-3.0, 2.5, 2.5, 0.4).unwrap();
        assert!((got - 0.6_f64.powi(3)).abs() < 1e-15);
        // b = 0 gives 1
        assert_eq!(gauss_2f1(1.0, 0.0, 2.0, 0.9).unwrap(), 1.0);
    }

    #[test]
    fn errors() {
        assert!(gauss_2f1(1.0, 1.0, -2.0, 0.5).is_err());
        assert!(gauss_2f1(1.0, 1.0, 2.0, 1.0).is_err());
        match gauss_2f1(2.0, 2.0, 1.0, 1.0 - 1e-9) {
            Err(Error::Convergence { terms, .. }) => assert_eq!(terms, HYP2F1_MAX_TERMS),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }
}
