//! Maximum likelihood for the BLFR family and its pinned sub-models.
//!
//! With t_i = −a x_i − b x_i²/2 the log-likelihood is
//!
//! ℓ(θ) = Σ ln(a + b x_i) − n ln B(α, β) + (α − 1) Σ ln(1 − e^{t_i}) + β Σ t_i.
//!
//! Score and observed information are analytic. [`fit`] maximizes ℓ over a
//! family's free parameters in log coordinates: Nelder–Mead from several
//! starts, a BFGS polish, then Newton steps with the analytic Hessian.

pub mod optimize;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::distribution::ln_one_minus_exp;
use crate::error::{domain, Error, Result};
use crate::params::{BlfrParams, Family, Param};
use crate::rng::RngState;
use crate::special::{digamma, log_beta_unchecked, normal_quantile, trigamma};

use optimize::{bfgs, nelder_mead};

/// Natural-space score sup-norm, per observation, required for convergence.
pub const GRAD_TOL_PER_OBS: f64 = 1e-6;
/// Relative change in ℓ over the final step required for convergence.
pub const REL_LOGLIK_TOL: f64 = 1e-10;
/// Scaled free parameters (a·x̄, b·x̄², α, β) outside [LOW, HIGH] mark a boundary solution.
pub const BOUNDARY_LOW: f64 = 1e-8;
pub const BOUNDARY_HIGH: f64 = 1e8;
/// The optimizer never leaves the scaled box [SEARCH_LOW, SEARCH_HIGH].
pub const SEARCH_LOW: f64 = 1e-12;
pub const SEARCH_HIGH: f64 = 1e12;
/// Standard deviation of the log-space jitter applied to restart points.
pub const JITTER_SD: f64 = 1.0;

/// Settings for [`fit`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitOptions {
    /// Number of starting points (the first is the moment-based guess).
    pub starts: usize,
    /// Seed of the generator that jitters restart points.
    pub seed: u64,
    /// Coverage of the reported confidence intervals.
    pub confidence_level: f64,
    /// Nelder–Mead iteration budget per free parameter.
    pub simplex_iterations: usize,
    pub bfgs_iterations: usize,
    pub newton_iterations: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            starts: 8,
            seed: 0x5EED_0B1F,
            confidence_level: 0.95,
            simplex_iterations: 150,
            bfgs_iterations: 200,
            newton_iterations: 50,
        }
    }
}

struct Sums {
    n: f64,
    sum_x: f64,
    sum_x2: f64,
}

impl Sums {
    fn of(x: &[f64]) -> Self {
        Self {
            n: x.len() as f64,
            sum_x: x.iter().sum(),
            sum_x2: x.iter().map(|v| v * v).sum(),
        }
    }
}

fn loglik_slice(th: &BlfrParams, x: &[f64], s: &Sums) -> f64 {
    let (a, b, alpha, beta) = (th.a(), th.b(), th.alpha(), th.beta());
    let mut s_rate = 0.0;
    let mut s_shape = 0.0;
    for &xi in x {
        let r = a + b * xi;
        if !(r > 0.0) {
            return f64::NEG_INFINITY;
        }
        s_rate += r.ln();
        if alpha != 1.0 {
            let u = a * xi + 0.5 * b * xi * xi;
            s_shape += ln_one_minus_exp(-u);
        }
    }
    let shape_term = if alpha != 1.0 {
        (alpha - 1.0) * s_shape
    } else {
        0.0
    };
    s_rate - s.n * log_beta_unchecked(alpha, beta) + shape_term
        - beta * (a * s.sum_x + 0.5 * b * s.sum_x2)
}

/// ℓ(θ) for a complete sample; −∞ if some a + b x_i is not positive.
pub fn loglik(theta: &BlfrParams, data: &Dataset) -> f64 {
    let x = data.observations();
    loglik_slice(theta, x, &Sums::of(x))
}

/// Full score (∂ℓ/∂a, ∂ℓ/∂b, ∂ℓ/∂α, ∂ℓ/∂β), valid whenever every a + b x_i > 0.
fn score_slice(th: &BlfrParams, x: &[f64], s: &Sums) -> [f64; 4] {
    let (a, b, alpha, beta) = (th.a(), th.b(), th.alpha(), th.beta());
    let am1 = alpha - 1.0;
    let (mut ua, mut ub, mut s_log_g) = (0.0, 0.0, 0.0);
    let (mut sxq, mut sx2q) = (0.0, 0.0);
    for &xi in x {
        let r = a + b * xi;
        let u = a * xi + 0.5 * b * xi * xi;
        let em1 = u.exp_m1();
        // q = e^t/(1 − e^t) = 1/expm1(u)
        let q = 1.0 / em1;
        ua += 1.0 / r;
        ub += xi / r;
        sxq += xi * q;
        sx2q += xi * xi * q;
        s_log_g += ln_one_minus_exp(-u);
    }
    let psi_ab = digamma(alpha + beta).unwrap_or(f64::NAN);
    let n = s.n;
    [
        ua + am1 * sxq - beta * s.sum_x,
        ub + 0.5 * am1 * sx2q - 0.5 * beta * s.sum_x2,
        n * (psi_ab - digamma(alpha).unwrap_or(f64::NAN)) + s_log_g,
        n * (psi_ab - digamma(beta).unwrap_or(f64::NAN)) - (a * s.sum_x + 0.5 * b * s.sum_x2),
    ]
}

/// Full Hessian of ℓ (second derivatives, not negated).
fn hessian_slice(th: &BlfrParams, x: &[f64], s: &Sums) -> [[f64; 4]; 4] {
    let (a, b, alpha, beta) = (th.a(), th.b(), th.alpha(), th.beta());
    let am1 = alpha - 1.0;
    let (mut haa, mut hab, mut hbb) = (0.0, 0.0, 0.0);
    let (mut sxq, mut sx2q) = (0.0, 0.0);
    for &xi in x {
        let r = a + b * xi;
        let u = a * xi + 0.5 * b * xi * xi;
        let q = 1.0 / u.exp_m1();
        // −dq/du = e^u/(e^u − 1)² = q(1 + q)
        let w = q * (1.0 + q);
        let x2 = xi * xi;
        let r2 = r * r;
        haa += -1.0 / r2 - am1 * x2 * w;
        hab += -xi / r2 - 0.5 * am1 * x2 * xi * w;
        hbb += -x2 / r2 - 0.25 * am1 * x2 * x2 * w;
        sxq += xi * q;
        sx2q += x2 * q;
    }
    let n = s.n;
    let tg_ab = trigamma(alpha + beta).unwrap_or(f64::NAN);
    let haal = sxq;
    let hbal = 0.5 * sx2q;
    let habe = -s.sum_x;
    let hbbe = -0.5 * s.sum_x2;
    let hal_al = n * (tg_ab - trigamma(alpha).unwrap_or(f64::NAN));
    let hal_be = n * tg_ab;
    let hbe_be = n * (tg_ab - trigamma(beta).unwrap_or(f64::NAN));
    [
        [haa, hab, haal, habe],
        [hab, hbb, hbal, hbbe],
        [haal, hbal, hal_al, hal_be],
        [habe, hbbe, hal_be, hbe_be],
    ]
}

fn check_interior(func: &'static str, theta: &BlfrParams) -> Result<()> {
    if theta.a() <= 0.0 || theta.b() <= 0.0 {
        return Err(domain(
            func,
            format!(
                "all four parameters must be positive, got {theta}; use the family-restricted form"
            ),
        ));
    }
    Ok(())
}

fn check_free_interior(func: &'static str, family: Family, theta: &BlfrParams) -> Result<()> {
    if !family.contains(theta) {
        return Err(domain(
            func,
            format!("{theta} does not satisfy the pins of {family}"),
        ));
    }
    if let Some(p) = family.free_params().iter().find(|p| theta.get(**p) <= 0.0) {
        return Err(domain(
            func,
            format!("free parameter {p} is on the boundary in {theta}"),
        ));
    }
    Ok(())
}

/// U(θ) = ∇ℓ in (a, b, α, β) order, at a point with all parameters positive.
pub fn score(theta: &BlfrParams, data: &Dataset) -> Result<[f64; 4]> {
    check_interior("score", theta)?;
    let x = data.observations();
    Ok(score_slice(theta, x, &Sums::of(x)))
}

/// Observed information J(θ) = −∇²ℓ in (a, b, α, β) order.
pub fn observed_info(theta: &BlfrParams, data: &Dataset) -> Result<[[f64; 4]; 4]> {
    check_interior("observed_info", theta)?;
    let x = data.observations();
    let h = hessian_slice(theta, x, &Sums::of(x));
    Ok(h.map(|row| row.map(|v| -v)))
}

/// Score restricted to a family's free parameters (pinned ones held fixed).
pub fn score_free(family: Family, theta: &BlfrParams, data: &Dataset) -> Result<Vec<f64>> {
    check_free_interior("score_free", family, theta)?;
    let x = data.observations();
    let u = score_slice(theta, x, &Sums::of(x));
    Ok(family.free_params().iter().map(|p| u[p.index()]).collect())
}

/// Observed information restricted to a family's free parameters.
pub fn observed_info_free(
    family: Family,
    theta: &BlfrParams,
    data: &Dataset,
) -> Result<Vec<Vec<f64>>> {
    check_free_interior("observed_info_free", family, theta)?;
    let x = data.observations();
    let h = hessian_slice(theta, x, &Sums::of(x));
    Ok(restrict(family, &h)
        .iter()
        .map(|r| r.iter().map(|v| -v).collect())
        .collect())
}

fn restrict(family: Family, m: &[[f64; 4]; 4]) -> Vec<Vec<f64>> {
    let idx: Vec<usize> = family.free_params().iter().map(|p| p.index()).collect();
    idx.iter()
        .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
        .collect()
}

/// Wald and log-scale interval for one parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub param: Param,
    pub estimate: f64,
    pub std_error: f64,
    pub level: f64,
    /// estimate ± z·se; may extend below zero.
    pub wald_lower: f64,
    pub wald_upper: f64,
    /// exp(ln estimate ± z·se/estimate); always positive.
    pub log_lower: f64,
    pub log_upper: f64,
}

/// Summary of one optimizer start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartSummary {
    pub index: usize,
    pub loglik: f64,
    pub converged: bool,
    pub boundary: bool,
    pub iterations: usize,
}

/// Maximum likelihood estimate and its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub family: Family,
    pub n: usize,
    pub theta_hat: BlfrParams,
    pub loglik: f64,
    pub minus2loglik: f64,
    /// Score at θ̂, free components in [`Family::free_params`] order.
    pub score_at_optimum: Vec<f64>,
    /// J(θ̂) over the free parameters.
    pub observed_info: Vec<Vec<f64>>,
    /// √diag(J⁻¹); `None` when J cannot be inverted to a covariance.
    pub std_errors: Option<Vec<f64>>,
    pub confidence_level: f64,
    pub conf_intervals: Option<Vec<ConfidenceInterval>>,
    pub converged: bool,
    pub iterations: usize,
    /// Per-parameter flag: free and outside the scaled interior box.
    pub boundary_flags: BTreeMap<Param, bool>,
    /// Seed of the restart jitter; reproduces every start.
    pub seed: u64,
    pub starts: Vec<StartSummary>,
}

impl FitResult {
    pub fn k(&self) -> usize {
        self.family.k()
    }

    /// Free-parameter estimates in [`Family::free_params`] order.
    pub fn estimates(&self) -> Vec<f64> {
        self.family.extract(&self.theta_hat)
    }

    /// Standard error of one free parameter.
    pub fn std_error(&self, p: Param) -> Option<f64> {
        let i = self.family.free_params().iter().position(|q| *q == p)?;
        self.std_errors.as_ref().map(|s| s[i])
    }
}

/// θ̂_i ± z_{γ/2} se_i for every free parameter, plus the log-scale interval.
pub fn confidence_intervals(fit: &FitResult, gamma: f64) -> Result<Vec<ConfidenceInterval>> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(domain(
            "confidence_intervals",
            format!("gamma must lie in (0, 1), got {gamma}"),
        ));
    }
    let se = fit.std_errors.as_ref().ok_or_else(|| {
        Error::StdErrorsUnavailable(format!("{} fit has no standard errors", fit.family))
    })?;
    let z = normal_quantile(1.0 - 0.5 * gamma)?;
    Ok(fit
        .family
        .free_params()
        .iter()
        .zip(se)
        .map(|(&p, &s)| interval(p, fit.theta_hat.get(p), s, z, 1.0 - gamma))
        .collect())
}

fn interval(param: Param, est: f64, se: f64, z: f64, level: f64) -> ConfidenceInterval {
    let half = z * se;
    let log_half = z * se / est;
    ConfidenceInterval {
        param,
        estimate: est,
        std_error: se,
        level,
        wald_lower: est - half,
        wald_upper: est + half,
        log_lower: est * (-log_half).exp(),
        log_upper: est * log_half.exp(),
    }
}

/// Inverse of a symmetric positive definite matrix, or `None`.
fn spd_inverse(m: &[Vec<f64>]) -> Option<DMatrix<f64>> {
    let k = m.len();
    let mat = DMatrix::from_fn(k, k, |i, j| m[i][j]);
    if !mat.iter().all(|v| v.is_finite()) {
        return None;
    }
    let inv = mat.cholesky()?.inverse();
    inv.iter().all(|v| v.is_finite()).then_some(inv)
}

struct Problem<'a> {
    family: Family,
    x: &'a [f64],
    sums: Sums,
    mean: f64,
}

struct StartOutcome {
    theta: Option<BlfrParams>,
    loglik: f64,
    converged: bool,
    boundary: [bool; 4],
    iterations: usize,
}

impl Problem<'_> {
    /// Natural parameters for log coordinates `z`; `None` outside the
    /// search box.
    fn theta(&self, z: &[f64]) -> Option<BlfrParams> {
        let v: Vec<f64> = z.iter().map(|v| v.exp()).collect();
        let inside = self
            .family
            .free_params()
            .iter()
            .zip(&v)
            .all(|(p, x)| (SEARCH_LOW..=SEARCH_HIGH).contains(&(x * self.scale(*p))));
        inside.then(|| self.family.assemble(&v).ok()).flatten()
    }

    fn scale(&self, p: Param) -> f64 {
        match p {
            Param::A => self.mean,
            Param::B => self.mean * self.mean,
            Param::Alpha | Param::Beta => 1.0,
        }
    }

    fn loglik(&self, th: &BlfrParams) -> f64 {
        loglik_slice(th, self.x, &self.sums)
    }

    fn neg_loglik(&self, z: &[f64]) -> f64 {
        self.theta(z).map_or(f64::INFINITY, |th| -self.loglik(&th))
    }

    /// −ℓ and its gradient in log coordinates: ∂(−ℓ)/∂z_k = −U_k θ_k.
    fn neg_loglik_grad(&self, z: &[f64]) -> (f64, Vec<f64>) {
        let Some(th) = self.theta(z) else {
            return (f64::INFINITY, vec![0.0; z.len()]);
        };
        let u = score_slice(&th, self.x, &self.sums);
        let g = self
            .family
            .free_params()
            .iter()
            .map(|p| -u[p.index()] * th.get(*p))
            .collect();
        (-self.loglik(&th), g)
    }

    fn free_score(&self, th: &BlfrParams) -> Vec<f64> {
        let u = score_slice(th, self.x, &self.sums);
        self.family
            .free_params()
            .iter()
            .map(|p| u[p.index()])
            .collect()
    }

    fn boundary(&self, th: &BlfrParams) -> [bool; 4] {
        let mut flags = [false; 4];
        for p in self.family.free_params() {
            let v = th.get(*p) * self.scale(*p);
            flags[p.index()] = !(BOUNDARY_LOW..=BOUNDARY_HIGH).contains(&v);
        }
        flags
    }

    fn grad_tol(&self) -> f64 {
        GRAD_TOL_PER_OBS * self.sums.n
    }

    /// Newton iterations in log coordinates with backtracking; returns the
    /// final point, iteration count and whether both convergence tests hold.
    fn newton_polish(&self, z0: Vec<f64>, max_iter: usize) -> (Vec<f64>, usize, bool) {
        let k = z0.len();
        let mut z = z0;
        let mut iterations = 0;
        let sup = |v: &[f64]| v.iter().fold(0.0_f64, |m, u| m.max(u.abs()));
        while iterations < max_iter {
            let Some(th) = self.theta(&z) else { break };
            let l0 = self.loglik(&th);
            let u = self.free_score(&th);
            let h = restrict(self.family, &hessian_slice(&th, self.x, &self.sums));
            let vals: Vec<f64> = self
                .family
                .free_params()
                .iter()
                .map(|p| th.get(*p))
                .collect();
            // Hessian of −ℓ in z: −(θ_i θ_j H_ij + δ_ij θ_i U_i)
            let hz = DMatrix::from_fn(k, k, |i, j| {
                let mut v = -vals[i] * vals[j] * h[i][j];
                if i == j {
                    v -= vals[i] * u[i];
                }
                v
            });
            let gz = DVector::from_fn(k, |i, _| -u[i] * vals[i]);
            let step = match hz.cholesky() {
                Some(c) => -c.solve(&gz),
                None => -gz.clone(),
            };
            iterations += 1;
            let mut t = 1.0;
            let mut moved = None;
            for _ in 0..40 {
                let zn: Vec<f64> = z.iter().zip(step.iter()).map(|(a, d)| a + t * d).collect();
                if let Some(thn) = self.theta(&zn) {
                    let ln = self.loglik(&thn);
                    if ln.is_finite() && ln >= l0 {
                        moved = Some((zn, thn, ln));
                        break;
                    }
                }
                t *= 0.5;
            }
            let (zn, thn, ln) = match moved {
                Some(m) => m,
                None => (z.clone(), th, l0),
            };
            let rel = (ln - l0).abs() / ln.abs().max(f64::MIN_POSITIVE);
            let score_ok = sup(&self.free_score(&thn)) < self.grad_tol();
            z = zn;
            if score_ok && rel < REL_LOGLIK_TOL {
                return (z, iterations, true);
            }
            if rel == 0.0 && !score_ok {
                break;
            }
        }
        (z, iterations, false)
    }

    fn run_start(&self, z0: &[f64], opts: &FitOptions) -> StartOutcome {
        let k = z0.len();
        let nm = nelder_mead(
            |z| self.neg_loglik(z),
            z0,
            0.5,
            1e-9,
            opts.simplex_iterations * k,
        );
        let bf = bfgs(
            |z| self.neg_loglik_grad(z),
            &nm.x,
            1e-2 * self.grad_tol(),
            opts.bfgs_iterations,
        );
        let (z, newton_iters, converged) = self.newton_polish(bf.x, opts.newton_iterations);
        let iterations = nm.iterations + bf.iterations + newton_iters;
        match self.theta(&z) {
            Some(th) => {
                let boundary = self.boundary(&th);
                StartOutcome {
                    theta: Some(th),
                    loglik: self.loglik(&th),
                    converged,
                    boundary,
                    iterations,
                }
            }
            None => StartOutcome {
                theta: None,
                loglik: f64::NEG_INFINITY,
                converged: false,
                boundary: [false; 4],
                iterations,
            },
        }
    }
}

/// Starting points in log coordinates: the moment-based guess
/// (a₀ = 1/x̄, b₀ = 2/x̄², α₀ = β₀ = 1) followed by jittered copies.
fn start_points(family: Family, mean: f64, opts: &FitOptions) -> Vec<Vec<f64>> {
    let base = family.pin_array([1.0 / mean, 2.0 / (mean * mean), 1.0, 1.0]);
    let z0: Vec<f64> = family
        .free_params()
        .iter()
        .map(|p| base[p.index()].ln())
        .collect();
    let mut rng = RngState::new(opts.seed);
    let mut starts = vec![z0.clone()];
    for _ in 1..opts.starts.max(1) {
        starts.push(
            z0.iter()
                .map(|v| v + JITTER_SD * rng.next_normal())
                .collect(),
        );
    }
    starts
}

/// Maximum likelihood fit of `family` to `data`.
///
/// Every start is run to completion; the result is the converged start with
/// the largest ℓ among those away from the scaled boundary box (lowest start
/// index on ties).
pub fn fit(family: Family, data: &Dataset, opts: &FitOptions) -> Result<FitResult> {
    if data.n() < family.k() {
        return Err(Error::InvalidData(format!(
            "{family} has {} free parameters but the sample has only {} observations",
            family.k(),
            data.n()
        )));
    }
    if !(opts.confidence_level > 0.0 && opts.confidence_level < 1.0) {
        return Err(Error::Config(format!(
            "confidence level must lie in (0, 1), got {}",
            opts.confidence_level
        )));
    }
    let x = data.observations();
    let problem = Problem {
        family,
        x,
        sums: Sums::of(x),
        mean: data.mean(),
    };
    let outcomes: Vec<StartOutcome> = start_points(family, problem.mean, opts)
        .iter()
        .map(|z0| problem.run_start(z0, opts))
        .collect();
    let summaries: Vec<StartSummary> = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| StartSummary {
            index: i,
            loglik: o.loglik,
            converged: o.converged,
            boundary: o.boundary.iter().any(|b| *b),
            iterations: o.iterations,
        })
        .collect();
    let mut best: Option<usize> = None;
    for (i, o) in outcomes.iter().enumerate() {
        let eligible = o.converged && !o.boundary.iter().any(|b| *b) && o.theta.is_some();
        if eligible && best.is_none_or(|j| o.loglik > outcomes[j].loglik) {
            best = Some(i);
        }
    }
    let Some(bi) = best else {
        let detail = summaries
            .iter()
            .map(|s| {
                format!(
                    "start {}: loglik={:.6}, converged={}, boundary={}",
                    s.index, s.loglik, s.converged, s.boundary
                )
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::NonConvergence {
            family: family.tag().to_string(),
            detail: format!("no start reached an interior stationary point ({detail})"),
        });
    };
    let o = &outcomes[bi];
    let theta = o.theta.expect("checked above");
    let info: Vec<Vec<f64>> = restrict(family, &hessian_slice(&theta, x, &problem.sums))
        .iter()
        .map(|r| r.iter().map(|v| -v).collect())
        .collect();
    let std_errors = spd_inverse(&info).and_then(|inv| {
        let d: Vec<f64> = (0..inv.nrows()).map(|i| inv[(i, i)]).collect();
        d.iter()
            .all(|v| *v >= 0.0)
            .then(|| d.iter().map(|v| v.sqrt()).collect::<Vec<f64>>())
    });
    let boundary_flags = Param::ALL
        .iter()
        .map(|p| (*p, o.boundary[p.index()]))
        .collect();
    let mut result = FitResult {
        family,
        n: data.n(),
        theta_hat: theta,
        loglik: o.loglik,
        minus2loglik: -2.0 * o.loglik,
        score_at_optimum: problem.free_score(&theta),
        observed_info: info,
        std_errors,
        confidence_level: opts.confidence_level,
        conf_intervals: None,
        converged: true,
        iterations: o.iterations,
        boundary_flags,
        seed: opts.seed,
        starts: summaries,
    };
    result.conf_intervals = confidence_intervals(&result, 1.0 - opts.confidence_level).ok();
    Ok(result)
}
