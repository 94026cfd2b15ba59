//! Closed-form functions of the BLFR law: F(x) = I_{G(x)}(α, β) where
//! G(x) = 1 − exp(−ax − bx²/2) is the linear-failure-rate CDF.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::params::BlfrParams;
use crate::special::{inc_beta_pair, inv_inc_beta_pair, ln_inc_beta_pair, log_beta_unchecked};

/// Grid size used when searching for a density or hazard extremum.
const SEARCH_GRID: usize = 400;
/// Upper probability of the bracket used by the numeric mode search.
pub const MODE_BRACKET_PROB: f64 = 0.999;

fn check_x(func: &'static str, x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(domain(func, format!("x must be non-negative, got {x}")));
    }
    Ok(())
}

/// t(x) = −ax − bx²/2, the log survival function of the baseline LFR law.
#[inline]
pub(crate) fn lfr_log_sf(x: f64, a: f64, b: f64) -> f64 {
    -(a * x + 0.5 * b * x * x)
}

/// G(x) = 1 − exp(−ax − bx²/2).
pub fn lfr_cdf(x: f64, a: f64, b: f64) -> Result<f64> {
    check_x("lfr_cdf", x)?;
    Ok(-lfr_log_sf(x, a, b).exp_m1())
}

/// Baseline pair (G(x), 1 − G(x)) with both members accurate.
#[inline]
fn lfr_pair(x: f64, a: f64, b: f64) -> (f64, f64) {
    let t = lfr_log_sf(x, a, b);
    (-t.exp_m1(), t.exp())
}

/// Inverse of the LFR survival function: the x with ln(1 − G(x)) = `ln_sf`.
///
/// Uses x = (−a + √(a² − 2b·ln_sf))/b in the algebraically equal
/// rationalized form −2·ln_sf/(a + √(a² − 2b·ln_sf)), which does not cancel
/// when bx is small relative to a.
pub(crate) fn lfr_inverse_log_sf(ln_sf: f64, a: f64, b: f64) -> f64 {
    debug_assert!(ln_sf <= 0.0);
    if ln_sf == 0.0 {
        return 0.0;
    }
    if b == 0.0 {
        return -ln_sf / a;
    }
    let disc = a * a - 2.0 * b * ln_sf;
    assert!(disc >= a * a, "LFR inverse discriminant below a²");
    -2.0 * ln_sf / (a + disc.sqrt())
}

/// G⁻¹(u) for the LFR law.
pub fn lfr_quantile(u: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(domain(
            "lfr_quantile",
            format!("u must lie in [0, 1), got {u}"),
        ));
    }
    Ok(lfr_inverse_log_sf((-u).ln_1p(), a, b))
}

/// F(x) = I_{G(x)}(α, β).
pub fn blfr_cdf(x: f64, p: &BlfrParams) -> Result<f64> {
    check_x("blfr_cdf", x)?;
    let (g, gc) = lfr_pair(x, p.a(), p.b());
    Ok(inc_beta_pair(g, gc, p.alpha(), p.beta()).0)
}

/// 1 − F(x), evaluated through the complementary incomplete-beta branch.
pub fn blfr_sf(x: f64, p: &BlfrParams) -> Result<f64> {
    check_x("blfr_sf", x)?;
    let (g, gc) = lfr_pair(x, p.a(), p.b());
    Ok(inc_beta_pair(g, gc, p.alpha(), p.beta()).1)
}

/// ln(1 − F(x)); finite far beyond the point where the survival function underflows.
pub fn blfr_log_sf(x: f64, p: &BlfrParams) -> Result<f64> {
    check_x("blfr_log_sf", x)?;
    let t = lfr_log_sf(x, p.a(), p.b());
    Ok(ln_inc_beta_pair(ln_one_minus_exp(t), t, p.alpha(), p.beta()).1)
}

/// ln f(x) = ln(a+bx) − ln B(α,β) + (α−1) ln(1−e^t) + βt.
///
/// At x = 0 the value is +∞ for α < 1, ln(aβ) for α = 1 and −∞ for α > 1.
pub fn blfr_logpdf(x: f64, p: &BlfrParams) -> Result<f64> {
    check_x("blfr_logpdf", x)?;
    let (a, b, alpha, beta) = (p.a(), p.b(), p.alpha(), p.beta());
    if x == 0.0 {
        return Ok(if alpha < 1.0 {
            f64::INFINITY
        } else if alpha == 1.0 {
            (a * beta).ln()
        } else {
            f64::NEG_INFINITY
        });
    }
    if x.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(logpdf_unchecked(
        x,
        a,
        b,
        alpha,
        beta,
        log_beta_unchecked(alpha, beta),
    ))
}

/// Log density for x > 0 with a precomputed ln B(α, β).
#[inline]
pub(crate) fn logpdf_unchecked(x: f64, a: f64, b: f64, alpha: f64, beta: f64, lnb: f64) -> f64 {
    let t = lfr_log_sf(x, a, b);
    let shape_term = if alpha == 1.0 {
        0.0
    } else {
        (alpha - 1.0) * ln_one_minus_exp(t)
    };
    (a + b * x).ln() - lnb + shape_term + beta * t
}

/// Density f(x).
pub fn blfr_pdf(x: f64, p: &BlfrParams) -> Result<f64> {
    Ok(blfr_logpdf(x, p)?.exp())
}

/// d/dx ln f(x) = b/(a+bx) + (a+bx)[(α−1)/expm1(ax + bx²/2) − β], for x > 0.
pub fn blfr_dlogpdf(x: f64, p: &BlfrParams) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(
            "blfr_dlogpdf",
            format!("x must be positive, got {x}"),
        ));
    }
    let (a, b, alpha, beta) = (p.a(), p.b(), p.alpha(), p.beta());
    let r = a + b * x;
    let q = if alpha == 1.0 {
        0.0
    } else {
        (alpha - 1.0) / (-lfr_log_sf(x, a, b)).exp_m1()
    };
    Ok(b / r + r * (q - beta))
}

/// h(x) = f(x)/(1 − F(x)); +∞ once the survival function is numerically zero.
pub fn blfr_hazard(x: f64, p: &BlfrParams) -> Result<f64> {
    check_x("blfr_hazard", x)?;
    let lf = blfr_logpdf(x, p)?;
    let ls = blfr_log_sf(x, p)?;
    if ls == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok((lf - ls).exp())
}

/// Quantile x_p with F(x_p) = p, via the beta quantile and G⁻¹.
pub fn blfr_quantile(prob: f64, p: &BlfrParams) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(domain(
            "blfr_quantile",
            format!("p must lie in (0, 1), got {prob}"),
        ));
    }
    let (y, yc) = inv_inc_beta_pair(prob, p.alpha(), p.beta());
    Ok(blfr_from_beta_pair(y, yc, p))
}

/// X = G⁻¹(Y) for a beta value given as the pair (Y, 1 − Y). Shared by the
/// quantile function and the sampler.
pub fn blfr_from_beta_pair(y: f64, yc: f64, p: &BlfrParams) -> f64 {
    lfr_inverse_log_sf(ln_complement(y, yc), p.a(), p.b())
}

/// ln(1 − e^t) for t ≤ 0, accurate at both ends.
#[inline]
pub(crate) fn ln_one_minus_exp(t: f64) -> f64 {
    if t > -std::f64::consts::LN_2 {
        (-t.exp_m1()).ln()
    } else {
        (-t.exp()).ln_1p()
    }
}

/// ln(1 − y) from the pair (y, 1 − y), using whichever member is exact.
#[inline]
pub(crate) fn ln_complement(y: f64, yc: f64) -> f64 {
    if y < 0.5 {
        (-y).ln_1p()
    } else {
        yc.ln()
    }
}

/// Location of the density maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "x", rename_all = "kebab-case")]
pub enum Mode {
    Interior(f64),
    BoundaryZero,
    DivergesAtZero,
}

/// Mode of f. Closed form when α = 1, numeric search when α > 1.
pub fn blfr_mode(p: &BlfrParams) -> Result<Mode> {
    let (a, b, alpha, beta) = (p.a(), p.b(), p.alpha(), p.beta());
    if alpha < 1.0 {
        return Ok(Mode::DivergesAtZero);
    }
    if alpha == 1.0 {
        let s = -a + (b / beta).sqrt();
        return Ok(if s > 0.0 {
            Mode::Interior(s / b)
        } else {
            Mode::BoundaryZero
        });
    }
    numeric_mode(p).map(Mode::Interior)
}

/// Numerical argmax of ln f on (0, x_{0.999}].
///
/// A coarse grid picks the best cell; the stationary point inside it is then
/// located by bisection on the analytic derivative. Returns 0 when the
/// density is non-increasing on the bracket.
pub fn numeric_mode(p: &BlfrParams) -> Result<f64> {
    let hi = blfr_quantile(MODE_BRACKET_PROB, p)?;
    let step = hi / SEARCH_GRID as f64;
    let mut best = (1, f64::NEG_INFINITY);
    for i in 1..=SEARCH_GRID {
        let v = blfr_logpdf(i as f64 * step, p)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let i = best.0;
    let mut lo = (i - 1) as f64 * step;
    let mut up = ((i + 1) as f64 * step).min(hi);
    if lo == 0.0 {
        lo = f64::MIN_POSITIVE;
        if blfr_dlogpdf(lo, p)? <= 0.0 && blfr_dlogpdf(step, p)? <= 0.0 {
            return Ok(0.0);
        }
    }
    if blfr_dlogpdf(up, p)? > 0.0 {
        return Ok(up);
    }
    if blfr_dlogpdf(lo, p)? < 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + up);
        if mid <= lo || mid >= up {
            break;
        }
        if blfr_dlogpdf(mid, p)? > 0.0 {
            lo = mid;
        } else {
            up = mid;
        }
    }
    Ok(0.5 * (lo + up))
}

/// Qualitative shape of the hazard function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HazardShape {
    Increasing,
    Decreasing,
    Constant,
    Bathtub,
    UpsideDownBathtub,
    Unclassified,
}

/// Analytic hazard-shape classification from the parameter region.
///
/// * b > 0, α ≥ 1: increasing.
/// * b > 0, α < 1: bathtub (h → ∞ at 0 and grows like βbx); when a = 0 the
///   hazard only diverges at 0 for α < ½, so a = 0 with ½ ≤ α < 1 is left
///   unclassified.
/// * b = 0: constant for α = 1, decreasing for α < 1, increasing for α > 1.
///
/// Upside-down bathtub shapes are never reported here; see
/// [`empirical_hazard_shape`].
pub fn classify_hazard_shape(p: &BlfrParams) -> HazardShape {
    let (a, b, alpha) = (p.a(), p.b(), p.alpha());
    if b > 0.0 {
        if alpha >= 1.0 {
            HazardShape::Increasing
        } else if a > 0.0 || alpha < 0.5 {
            HazardShape::Bathtub
        } else {
            HazardShape::Unclassified
        }
    } else if alpha == 1.0 {
        HazardShape::Constant
    } else if alpha < 1.0 {
        HazardShape::Decreasing
    } else {
        HazardShape::Increasing
    }
}

/// Log-spaced grid between the `p_lo` and `p_hi` quantiles.
pub fn log_grid(p: &BlfrParams, points: usize, p_lo: f64, p_hi: f64) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(domain("log_grid", "need at least two grid points"));
    }
    let lo = blfr_quantile(p_lo, p)?.ln();
    let hi = blfr_quantile(p_hi, p)?.ln();
    Ok((0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp())
        .collect())
}

/// Signs of successive differences; changes smaller than `rel_tol` relative
/// to the local magnitude count as flat.
pub fn difference_signs(values: &[f64], rel_tol: f64) -> Vec<i8> {
    values
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            let scale = w[0].abs().max(w[1].abs());
            if d.abs() <= rel_tol * scale {
                0
            } else if d > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Shape read off a sequence of difference signs.
pub fn shape_from_signs(signs: &[i8]) -> HazardShape {
    let mut runs: Vec<i8> = Vec::new();
    for &s in signs.iter().filter(|&&s| s != 0) {
        if runs.last() != Some(&s) {
            runs.push(s);
        }
    }
    match runs.as_slice() {
        [] => HazardShape::Constant,
        [1] => HazardShape::Increasing,
        [-1] => HazardShape::Decreasing,
        [-1, 1] => HazardShape::Bathtub,
        [1, -1] => HazardShape::UpsideDownBathtub,
        _ => HazardShape::Unclassified,
    }
}

/// Grid-based hazard shape over the central 1e−6 … 0.999 probability range,
/// for exploring regions the analytic classifier does not cover.
pub fn empirical_hazard_shape(p: &BlfrParams, points: usize) -> Result<HazardShape> {
    let grid = log_grid(p, points, 1e-6, 0.999)?;
    let h = grid
        .iter()
        .map(|&x| blfr_hazard(x, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(shape_from_signs(&difference_signs(&h, 1e-10)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{integrate_adaptive, ln_gamma};

    fn th(a: f64, b: f64, alpha: f64, beta: f64) -> BlfrParams {
        BlfrParams::new(a, b, alpha, beta).unwrap()
    }

    fn grid_sets() -> Vec<BlfrParams> {
        let mut v = Vec::new();
        for &(a, b) in &[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.2, 0.1)] {
            for &(al, be) in &[(0.3, 0.3), (1.0, 1.0), (2.0, 0.3), (3.0, 2.0), (0.5, 3.0)] {
                v.push(th(a, b, al, be));
            }
        }
        v
    }

    #[test]
    fn lfr_cdf_examples() {
        assert_eq!(lfr_cdf(0.0, 1.0, 1.0).unwrap(), 0.0);
        assert!((lfr_cdf(2f64.ln(), 1.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
        let want = 1.0 - (-0.6_f64).exp();
        assert!((lfr_cdf(2.0, 0.2, 0.1).unwrap() - want).abs() < 1e-15);
        // density a + bx times survival, integrated
        let q = integrate_adaptive(
            |x| (0.2 + 0.1 * x) * (-(0.2 * x + 0.05 * x * x)).exp(),
            0.0,
            2.0,
            1e-14,
            1e-14,
        )
        .unwrap();
        assert!((q - want).abs() < 1e-13);
        assert!(lfr_cdf(-1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn cdf_reduces_to_lfr_when_shapes_are_one() {
        let p = th(0.4, 0.3, 1.0, 1.0);
        for i in 0..50 {
            let x = i as f64 * 0.2;
            assert!((blfr_cdf(x, &p).unwrap() - lfr_cdf(x, 0.4, 0.3).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn cdf_matches_quadrature_of_pdf() {
        for p in grid_sets() {
            for &prob in &[0.05, 0.3, 0.7, 0.95] {
                let x = blfr_quantile(prob, &p).unwrap();
                let q = integrate_adaptive(
                    |s| {
                        if s > 0.0 {
                            blfr_pdf(s, &p).unwrap()
                        } else {
                            0.0
                        }
                    },
                    0.0,
                    x,
                    1e-13,
                    1e-13,
                )
                .unwrap();
                let f = blfr_cdf(x, &p).unwrap();
                assert!((q - f).abs() < 1e-8, "{p} x={x} quad={q} cdf={f}");
            }
        }
    }

    #[test]
    fn pdf_limits() {
        // α = 1: f(0) = aβ
        let p = th(0.7, 2.0, 1.0, 3.0);
        assert!((blfr_pdf(0.0, &p).unwrap() - 2.1).abs() < 1e-14);
        assert!((blfr_pdf(1e-12, &p).unwrap() - 2.1).abs() < 1e-9);
        let p = th(0.7, 2.0, 2.5, 3.0);
        assert_eq!(blfr_pdf(0.0, &p).unwrap(), 0.0);
        assert_eq!(blfr_pdf(50.0, &p).unwrap(), 0.0);
        let p = th(0.7, 2.0, 0.5, 3.0);
        assert_eq!(blfr_pdf(0.0, &p).unwrap(), f64::INFINITY);
        assert!(blfr_pdf(-0.1, &p).is_err());
    }

    #[test]
    fn pdf_integrates_to_one() {
        let mut sets = grid_sets();
        sets.push(th(0.2, 0.1, 2.0, 0.3));
        for p in sets {
            let hi = blfr_quantile(1.0 - 1e-9, &p).unwrap();
            let q = integrate_adaptive(
                |s| {
                    if s > 0.0 {
                        blfr_pdf(s, &p).unwrap()
                    } else {
                        0.0
                    }
                },
                0.0,
                hi,
                1e-13,
                1e-13,
            )
            .unwrap();
            let total = q + blfr_sf(hi, &p).unwrap();
            assert!((total - 1.0).abs() < 1e-8, "{p}: {total}");
        }
    }

    #[test]
    fn logpdf_examples() {
        assert!((blfr_logpdf(1.0, &th(1.0, 0.0, 1.0, 1.0)).unwrap() + 1.0).abs() < 1e-15);
        let p = th(0.3, 0.2, 2.2, 0.4);
        for &x in &[0.01, 0.5, 3.0, 20.0] {
            let direct = blfr_pdf(x, &p).unwrap();
            assert!((blfr_logpdf(x, &p).unwrap().exp() - direct).abs() <= 1e-12 * direct);
        }
    }

    #[test]
    fn logpdf_against_naive_formula() {
        let p = th(0.3, 0.2, 2.2, 0.4);
        let lnb = ln_gamma(2.2).unwrap() + ln_gamma(0.4).unwrap() - ln_gamma(2.6).unwrap();
        for &x in &[0.1, 1.0, 4.0] {
            let t: f64 = -0.3 * x - 0.1 * x * x;
            let naive = (0.3 + 0.2 * x) / lnb.exp() * (1.0 - t.exp()).powf(1.2) * (0.4 * t).exp();
            assert!((blfr_pdf(x, &p).unwrap() - naive).abs() < 1e-12 * naive);
        }
    }

    #[test]
    fn sub_model_densities() {
        for &x in &[0.05, 0.5, 1.3, 4.0] {
            let e = blfr_pdf(x, &th(0.8, 0.0, 1.0, 1.0)).unwrap();
            assert!((e - 0.8 * (-0.8 * x).exp()).abs() < 1e-12);
            let r = blfr_pdf(x, &th(0.0, 1.7, 1.0, 1.0)).unwrap();
            assert!((r - 1.7 * x * (-0.85 * x * x).exp()).abs() < 1e-12);
            let g = blfr_pdf(x, &th(0.8, 0.0, 2.4, 1.0)).unwrap();
            let want = 2.4 * 0.8 * (-0.8 * x).exp() * (1.0 - (-0.8 * x).exp()).powf(1.4);
            assert!((g - want).abs() < 1e-12);
        }
    }

    #[test]
    fn hazard_identities() {
        // α = 1: h = β(a + bx)
        let p = th(0.4, 0.3, 1.0, 2.5);
        for &x in &[0.0, 0.2, 1.0, 5.0, 30.0] {
            let h = blfr_hazard(x, &p).unwrap();
            let want = 2.5 * (0.4 + 0.3 * x);
            assert!((h - want).abs() < 1e-10 * want, "x={x} h={h}");
        }
        let p = th(0.6, 0.0, 1.0, 1.0);
        for &x in &[0.1, 2.0, 40.0] {
            assert!((blfr_hazard(x, &p).unwrap() - 0.6).abs() < 1e-12);
        }
        // f / (1 − F) evaluated directly
        let p = th(0.2, 0.1, 2.0, 0.3);
        for &x in &[0.3, 1.0, 3.0, 6.0] {
            let direct = blfr_pdf(x, &p).unwrap() / (1.0 - blfr_cdf(x, &p).unwrap());
            assert!((blfr_hazard(x, &p).unwrap() - direct).abs() < 1e-10 * direct);
        }
    }

    #[test]
    fn hazard_far_tail_stays_finite() {
        let p = th(1.0, 1.0, 2.0, 3.0);
        let h = blfr_hazard(100.0, &p).unwrap();
        // h(x) ~ β(a + bx) as x → ∞
        assert!((h / (3.0 * 101.0) - 1.0).abs() < 1e-6, "{h}");
    }

    #[test]
    fn quantile_examples_and_round_trip() {
        let e = th(1.0, 0.0, 1.0, 1.0);
        assert!((blfr_quantile(0.5, &e).unwrap() - 2f64.ln()).abs() < 1e-15);
        let r = th(0.0, 2.0, 1.0, 1.0);
        assert!((blfr_quantile(1.0 - (-1.0_f64).exp(), &r).unwrap() - 1.0).abs() < 1e-14);
        assert!(blfr_quantile(0.0, &e).is_err());
        assert!(blfr_quantile(1.0, &e).is_err());
        for p in grid_sets() {
            for i in 1..100 {
                let prob = i as f64 / 100.0;
                let x = blfr_quantile(prob, &p).unwrap();
                assert!(
                    (blfr_cdf(x, &p).unwrap() - prob).abs() < 1e-9,
                    "{p} p={prob}"
                );
            }
        }
    }

    #[test]
    fn transformation_law() {
        // Y = G(X) has CDF I_y(α, β)
        let p = th(0.3, 0.9, 1.7, 0.6);
        for i in 1..20 {
            let prob = i as f64 / 20.0;
            let x = blfr_quantile(prob, &p).unwrap();
            let y = lfr_cdf(x, 0.3, 0.9).unwrap();
            let i_y = crate::special::reg_inc_beta(y, 1.7, 0.6).unwrap();
            assert!((i_y - prob).abs() < 1e-9);
        }
    }

    #[test]
    fn modes() {
        assert_eq!(
            blfr_mode(&th(0.0, 1.0, 1.0, 1.0)).unwrap(),
            Mode::Interior(1.0)
        );
        assert_eq!(
            blfr_mode(&th(2.0, 1.0, 1.0, 1.0)).unwrap(),
            Mode::BoundaryZero
        );
        assert_eq!(
            blfr_mode(&th(2.0, 1.0, 0.4, 1.0)).unwrap(),
            Mode::DivergesAtZero
        );
        for p in [
            th(0.2, 0.1, 2.0, 0.3),
            th(1.0, 1.0, 3.0, 2.0),
            th(0.5, 0.0, 4.0, 0.8),
        ] {
            let Mode::Interior(m) = blfr_mode(&p).unwrap() else {
                panic!()
            };
            let h = 1e-6 * m.max(1.0);
            let d = (blfr_logpdf(m + h, &p).unwrap() - blfr_logpdf(m - h, &p).unwrap()) / (2.0 * h);
            assert!(d.abs() < 1e-6, "{p} mode={m} d={d}");
        }
    }

    #[test]
    fn closed_form_mode_matches_numeric_search() {
        for p in [
            th(0.1, 1.0, 1.0, 1.0),
            th(0.3, 2.0, 1.0, 0.5),
            th(0.0, 0.5, 1.0, 3.0),
        ] {
            let Mode::Interior(m) = blfr_mode(&p).unwrap() else {
                panic!()
            };
            assert!((numeric_mode(&p).unwrap() - m).abs() < 1e-6 * m.max(1.0));
        }
    }

    #[test]
    fn analytic_classification_examples() {
        assert_eq!(
            classify_hazard_shape(&th(1.0, 1.0, 2.0, 0.5)),
            HazardShape::Increasing
        );
        assert_eq!(
            classify_hazard_shape(&th(1.0, 0.0, 1.0, 3.0)),
            HazardShape::Constant
        );
        assert_eq!(
            classify_hazard_shape(&th(1.0, 1.0, 0.3, 1.0)),
            HazardShape::Bathtub
        );
        assert_eq!(
            classify_hazard_shape(&th(1.0, 0.0, 0.3, 1.0)),
            HazardShape::Decreasing
        );
        assert_eq!(
            classify_hazard_shape(&th(1.0, 0.0, 3.0, 1.0)),
            HazardShape::Increasing
        );
        assert_eq!(
            classify_hazard_shape(&th(0.0, 1.0, 0.8, 1.0)),
            HazardShape::Unclassified
        );
    }

    #[test]
    fn analytic_classes_agree_with_grid_behaviour() {
        for &(a, b) in &[(1.0, 1.0), (0.2, 0.1), (0.0, 1.0), (1.0, 0.0), (2.0, 0.5)] {
            for &al in &[0.2, 0.3, 0.7, 1.0, 2.0, 3.0] {
                for &be in &[0.3, 1.0, 2.0, 3.0] {
                    let p = th(a, b, al, be);
                    let analytic = classify_hazard_shape(&p);
                    if analytic == HazardShape::Unclassified {
                        continue;
                    }
                    let grid = empirical_hazard_shape(&p, 500).unwrap();
                    assert_eq!(grid, analytic, "{p}");
                }
            }
        }
    }

    #[test]
    fn sign_runs() {
        assert_eq!(shape_from_signs(&[0, 0]), HazardShape::Constant);
        assert_eq!(shape_from_signs(&[-1, 0, -1, 1, 1]), HazardShape::Bathtub);
        assert_eq!(shape_from_signs(&[1, -1]), HazardShape::UpsideDownBathtub);
        assert_eq!(shape_from_signs(&[1, -1, 1]), HazardShape::Unclassified);
    }
}
