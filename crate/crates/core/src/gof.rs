//! Goodness of fit and model selection: information criteria, EDF
//! statistics, likelihood-ratio tests, the scaled TTT transform and the
//! empirical CDF.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::distribution::blfr_cdf;
use crate::error::{domain, Error, Result};
use crate::estimation::{fit, FitOptions, FitResult};
use crate::params::{BlfrParams, Family};
use crate::special::{chi_square_sf, kolmogorov_sf};

/// Fitted CDF values are clipped to [CDF_CLIP, 1 − CDF_CLIP] before the
/// logarithms of the Anderson–Darling statistic.
pub const CDF_CLIP: f64 = 1e-15;

/// A likelihood-ratio statistic down to −LR_NEGATIVE_TOL·max(1, −2ℓ_alt) is
/// read as optimizer noise and clamped to zero.
pub const LR_NEGATIVE_TOL: f64 = 1e-6;

/// Fit summary for one family, in the layout of a model comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub family: Family,
    pub k: usize,
    pub n: usize,
    pub minus2loglik: f64,
    pub aic: f64,
    pub aicc: f64,
    pub bic: f64,
    pub ks_stat: f64,
    pub ks_pvalue: f64,
    pub ad_stat: f64,
    pub cm_stat: f64,
    /// Some fitted CDF value was 0 or 1 and had to be clipped.
    pub cdf_clipped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformationCriteria {
    pub aic: f64,
    pub aicc: f64,
    pub bic: f64,
}

/// AIC, AICc and BIC from −2ℓ, k free parameters and n observations.
pub fn information_criteria_raw(
    minus2loglik: f64,
    k: usize,
    n: usize,
) -> Result<InformationCriteria> {
    let (kf, nf) = (k as f64, n as f64);
    let aic = minus2loglik + 2.0 * kf;
    let aicc = if k == 0 {
        aic
    } else if n > k + 1 {
        aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0)
    } else {
        return Err(domain(
            "information_criteria",
            format!("AICc needs n > k + 1, got n={n}, k={k}"),
        ));
    };
    Ok(InformationCriteria {
        aic,
        aicc,
        bic: minus2loglik + kf * nf.ln(),
    })
}

pub fn information_criteria(fit: &FitResult, n: usize) -> Result<InformationCriteria> {
    information_criteria_raw(fit.minus2loglik, fit.k(), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub stat: f64,
    pub pvalue: f64,
}

/// One-sample Kolmogorov–Smirnov test with the asymptotic p-value.
///
/// The p-value ignores that parameters were estimated from the same data,
/// so it is conservative for fitted models.
pub fn ks_test(data: &Dataset, cdf: impl Fn(f64) -> f64) -> KsResult {
    let u: Vec<f64> = data.sorted().into_iter().map(&cdf).collect();
    ks_from_uniform(&u)
}

fn ks_from_uniform(u: &[f64]) -> KsResult {
    let n = u.len() as f64;
    let stat = u
        .iter()
        .enumerate()
        .map(|(i, &ui)| ((i + 1) as f64 / n - ui).max(ui - i as f64 / n))
        .fold(0.0, f64::max);
    KsResult {
        stat,
        pvalue: kolmogorov_sf(n.sqrt() * stat),
    }
}

/// An EDF statistic and whether clipping was needed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdfStatistic {
    pub value: f64,
    pub clipped: bool,
}

fn sorted_uniforms(data: &Dataset, cdf: impl Fn(f64) -> f64) -> (Vec<f64>, bool) {
    let mut clipped = false;
    let u = data
        .sorted()
        .into_iter()
        .map(|x| {
            let v = cdf(x);
            let c = v.clamp(CDF_CLIP, 1.0 - CDF_CLIP);
            clipped |= c != v;
            c
        })
        .collect();
    (u, clipped)
}

fn ad_from_uniform(u: &[f64]) -> f64 {
    let n = u.len();
    let s: f64 = (0..n)
        .map(|i| (2 * i + 1) as f64 * (u[i].ln() + (-u[n - 1 - i]).ln_1p()))
        .sum();
    -(n as f64) - s / n as f64
}

fn cm_from_uniform(u: &[f64]) -> f64 {
    let n = u.len() as f64;
    1.0 / (12.0 * n)
        + u.iter()
            .enumerate()
            .map(|(i, &ui)| {
                let d = ui - (2 * i + 1) as f64 / (2.0 * n);
                d * d
            })
            .sum::<f64>()
}

/// Anderson–Darling A² = −n − (1/n) Σ (2i−1)[ln u_(i) + ln(1 − u_(n+1−i))].
pub fn ad_statistic(data: &Dataset, cdf: impl Fn(f64) -> f64) -> EdfStatistic {
    let (u, clipped) = sorted_uniforms(data, cdf);
    EdfStatistic {
        value: ad_from_uniform(&u),
        clipped,
    }
}

/// Cramér–von Mises W² = 1/(12n) + Σ (u_(i) − (2i−1)/(2n))².
pub fn cm_statistic(data: &Dataset, cdf: impl Fn(f64) -> f64) -> EdfStatistic {
    let (u, clipped) = sorted_uniforms(data, cdf);
    EdfStatistic {
        value: cm_from_uniform(&u),
        clipped,
    }
}

/// Full report for a fitted family on the data it was fitted to.
pub fn gof_report(fit: &FitResult, data: &Dataset) -> Result<GofReport> {
    if fit.n != data.n() {
        return Err(Error::InvalidData(format!(
            "fit used {} observations but the dataset has {}",
            fit.n,
            data.n()
        )));
    }
    let theta = fit.theta_hat;
    let cdf = |x: f64| blfr_cdf(x, &theta).unwrap_or(f64::NAN);
    let raw: Vec<f64> = data.sorted().into_iter().map(cdf).collect();
    if raw.iter().any(|v| v.is_nan()) {
        return Err(domain(
            "gof_report",
            format!("fitted CDF is undefined for {theta}"),
        ));
    }
    let ks = ks_from_uniform(&raw);
    let (u, clipped) = sorted_uniforms(data, cdf);
    let ic = information_criteria(fit, data.n())?;
    Ok(GofReport {
        family: fit.family,
        k: fit.k(),
        n: data.n(),
        minus2loglik: fit.minus2loglik,
        aic: ic.aic,
        aicc: ic.aicc,
        bic: ic.bic,
        ks_stat: ks.stat,
        ks_pvalue: ks.pvalue,
        ad_stat: ad_from_uniform(&u),
        cm_stat: cm_from_uniform(&u),
        cdf_clipped: clipped,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LrTestResult {
    pub null_family: Family,
    pub alt_family: Family,
    pub lr_stat: f64,
    pub df: usize,
    pub pvalue: f64,
    /// The null pins a or b at zero, the edge of the parameter space, so
    /// the chi-square reference distribution is only nominal.
    pub boundary_nonregular: bool,
}

/// Likelihood-ratio test of a nested null against its alternative.
pub fn lr_test(null_fit: &FitResult, alt_fit: &FitResult) -> Result<LrTestResult> {
    let (null, alt) = (null_fit.family, alt_fit.family);
    if null == alt || !null.is_nested_in(alt) {
        return Err(Error::NotNested {
            null: null.tag().to_string(),
            alt: alt.tag().to_string(),
        });
    }
    if null_fit.n != alt_fit.n {
        return Err(Error::InvalidData(format!(
            "fits use different sample sizes ({} and {})",
            null_fit.n, alt_fit.n
        )));
    }
    let raw = null_fit.minus2loglik - alt_fit.minus2loglik;
    let tol = LR_NEGATIVE_TOL * alt_fit.minus2loglik.abs().max(1.0);
    if raw < -tol {
        return Err(Error::NegativeLrStat(raw));
    }
    let lr_stat = raw.max(0.0);
    let df = alt.k() - null.k();
    let boundary_nonregular = null
        .fixed()
        .iter()
        .any(|(p, v)| *v == 0.0 && alt.is_free(*p));
    Ok(LrTestResult {
        null_family: null,
        alt_family: alt,
        lr_stat,
        df,
        pvalue: chi_square_sf(lr_stat, df as f64)?,
        boundary_nonregular,
    })
}

/// Empirical scaled total-time-on-test transform:
/// T(i/n) = [Σ_{j≤i} x_(j) + (n − i) x_(i)] / Σ x_j for i = 0..n.
pub fn ttt_transform(data: &Dataset) -> Result<Vec<(f64, f64)>> {
    let n = data.n();
    if n < 2 {
        return Err(Error::InvalidData(
            "the TTT transform needs at least 2 observations".into(),
        ));
    }
    let x = data.sorted();
    let total: f64 = x.iter().sum();
    let mut out = Vec::with_capacity(n + 1);
    out.push((0.0, 0.0));
    let mut partial = 0.0;
    for i in 1..=n {
        partial += x[i - 1];
        let t = if i == n {
            1.0
        } else {
            (partial + (n - i) as f64 * x[i - 1]) / total
        };
        out.push((i as f64 / n as f64, t));
    }
    Ok(out)
}

/// Convexity pattern of a TTT curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TttShape {
    /// Decreasing hazard.
    Convex,
    /// Increasing hazard.
    Concave,
    /// Bathtub hazard.
    ConvexThenConcave,
    /// Upside-down bathtub hazard.
    ConcaveThenConvex,
    Linear,
    Irregular,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TttDiagnosis {
    pub shape: TttShape,
    /// Signs (+1 / −1) of the smoothed second differences, zeros dropped.
    pub signs: Vec<i8>,
    pub sign_changes: usize,
}

/// Sign pattern of the second differences of the TTT ordinates after a
/// centred 5-point moving average (full windows only).
pub fn ttt_shape(curve: &[(f64, f64)]) -> TttDiagnosis {
    let t: Vec<f64> = curve.iter().map(|p| p.1).collect();
    let d2: Vec<f64> = t.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();
    let smooth: Vec<f64> = d2.windows(5).map(|w| w.iter().sum::<f64>() / 5.0).collect();
    // ordinates lie in [0, 1]
    let signs: Vec<i8> = smooth
        .iter()
        .filter(|v| v.abs() > 1e-12)
        .map(|v| if *v > 0.0 { 1 } else { -1 })
        .collect();
    let mut runs: Vec<i8> = signs.clone();
    runs.dedup();
    let shape = match runs.as_slice() {
        [] => TttShape::Linear,
        [1] => TttShape::Convex,
        [-1] => TttShape::Concave,
        [1, -1] => TttShape::ConvexThenConcave,
        [-1, 1] => TttShape::ConcaveThenConvex,
        _ => TttShape::Irregular,
    };
    TttDiagnosis {
        shape,
        sign_changes: runs.len().saturating_sub(1),
        signs,
    }
}

/// (x_(i), i/n) for each order statistic.
pub fn empirical_cdf(data: &Dataset) -> Vec<(f64, f64)> {
    let n = data.n() as f64;
    data.sorted()
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, (i + 1) as f64 / n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitFailure {
    pub family: Family,
    pub error: String,
}

/// Families ranked by AIC (ties broken by the larger K-S p-value).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelComparison {
    pub reports: Vec<GofReport>,
    /// Fits in the same order as `reports`.
    pub fits: Vec<FitResult>,
    pub failures: Vec<FitFailure>,
}

/// Fits every family and ranks the ones that converged.
pub fn compare_models(
    data: &Dataset,
    families: &[Family],
    opts: &FitOptions,
) -> Result<ModelComparison> {
    if families.is_empty() {
        return Err(Error::Config("at least one family is required".into()));
    }
    let outcomes: Vec<(Family, Result<(FitResult, GofReport)>)> = families
        .par_iter()
        .map(|&f| {
            let r = fit(f, data, opts).and_then(|ft| gof_report(&ft, data).map(|g| (ft, g)));
            (f, r)
        })
        .collect();
    let mut ok = Vec::new();
    let mut failures = Vec::new();
    for (family, r) in outcomes {
        match r {
            Ok(pair) => ok.push(pair),
            Err(e) => failures.push(FitFailure {
                family,
                error: e.to_string(),
            }),
        }
    }
    ok.sort_by(|a, b| {
        a.1.aic
            .total_cmp(&b.1.aic)
            .then(b.1.ks_pvalue.total_cmp(&a.1.ks_pvalue))
    });
    let (fits, reports) = ok.into_iter().unzip();
    Ok(ModelComparison {
        reports,
        fits,
        failures,
    })
}

pub const GOF_CSV_HEADER: &str =
    "family,k,n,minus2loglik,aic,aicc,bic,ks_stat,ks_pvalue,ad_stat,cm_stat,cdf_clipped";

pub fn reports_to_csv(reports: &[GofReport]) -> String {
    let mut s = String::from(GOF_CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.family.tag(),
            r.k,
            r.n,
            r.minus2loglik,
            r.aic,
            r.aicc,
            r.bic,
            r.ks_stat,
            r.ks_pvalue,
            r.ad_stat,
            r.cm_stat,
            r.cdf_clipped
        ));
    }
    s
}

pub fn reports_to_json(reports: &[GofReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Two-column CSV of (u, T(u)).
pub fn ttt_csv(curve: &[(f64, f64)]) -> String {
    let mut s = String::from("u,ttt\n");
    for (u, t) in curve {
        s.push_str(&format!("{u},{t}\n"));
    }
    s
}

/// ECDF at the order statistics, optionally with a fitted CDF column.
pub fn ecdf_csv(data: &Dataset, fitted: Option<&BlfrParams>) -> Result<String> {
    let mut s = String::from(if fitted.is_some() {
        "x,ecdf,fitted_cdf\n"
    } else {
        "x,ecdf\n"
    });
    for (x, e) in empirical_cdf(data) {
        match fitted {
            Some(p) => s.push_str(&format!("{x},{e},{}\n", blfr_cdf(x, p)?)),
            None => s.push_str(&format!("{x},{e}\n")),
        }
    }
    Ok(s)
}
