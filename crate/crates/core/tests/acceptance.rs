//! End-to-end acceptance checks. Every check prints one PASS/FAIL line and the
//! test fails at the end if any check failed.
//!
//! Run with `cargo test -p blfr --test acceptance -- --nocapture` to see the
//! report.

use std::time::{Duration, Instant};

use blfr::estimation::{loglik, observed_info, score};
use blfr::gof::{gof_report, ks_test, lr_test, ttt_shape, ttt_transform, TttShape};
use blfr::moments::{cdf_hypergeometric, cdf_series, raw_moment, raw_moment_quadrature};
use blfr::rng::RngState;
use blfr::sampling::sample_blfr;
use blfr::special::integrate_adaptive;
use blfr::study::{run_study, StudyConfig, StudyResult, TABLE2_THETAS};
use blfr::{
    blfr_cdf, blfr_hazard, blfr_mode, blfr_pdf, blfr_quantile, blfr_sf, fit, BlfrParams, Dataset,
    Family, FitOptions, FitResult, Mode, Param,
};

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
}

impl Report {
    fn record(&mut self, name: &'static str, pass: bool, detail: String) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.checks.push(Check { name, pass, detail });
    }

    fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

fn th(a: f64, b: f64, alpha: f64, beta: f64) -> BlfrParams {
    BlfrParams::new(a, b, alpha, beta).unwrap()
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

/// Within ±10% or ±2 units of the last printed digit, whichever is looser.
fn printed_match(x: f64, printed: f64, decimals: i32) -> bool {
    let unit = 10f64.powi(-decimals);
    (x - printed).abs() <= (0.1 * printed.abs()).max(2.0 * unit)
}

fn fit_all(data: &Dataset) -> Vec<(Family, FitResult)> {
    Family::ALL
        .iter()
        .map(|&f| (f, fit(f, data, &FitOptions::default()).unwrap()))
        .collect()
}

fn get(fits: &[(Family, FitResult)], f: Family) -> &FitResult {
    &fits.iter().find(|(g, _)| *g == f).unwrap().1
}

fn aarset_blfr_fit(r: &mut Report) {
    let data = Dataset::aarset();
    let start = Instant::now();
    let res = fit(Family::Blfr, &data, &FitOptions::default());
    let elapsed = start.elapsed();
    let res = match res {
        Ok(f) => f,
        Err(e) => return r.record("aarset_blfr_fit", false, format!("fit failed: {e}")),
    };
    let t = res.theta_hat;
    let m2 = res.minus2loglik;
    let ll_ok = within(m2, 460.8, 0.5);
    // printed rows read in (a, b, α, β) order
    let printed = [
        (Param::A, 0.3347),
        (Param::B, 0.1243),
        (Param::Alpha, 0.0172),
        (Param::Beta, 0.0348),
    ];
    let mle_ok = printed.iter().all(|&(p, v)| printed_match(t.get(p), v, 4));
    let time_ok = elapsed < Duration::from_secs(10);
    r.record(
        "aarset_blfr_fit",
        ll_ok && mle_ok && time_ok,
        format!(
            "-2logL {m2:.3} (460.8 ± 0.5: {}); (a, b, alpha, beta) = ({:.5}, {:.6}, {:.4}, {:.4}) vs printed \
             (0.3347, 0.1243, 0.0172, 0.0348): {}; runtime {:.2?} (< 10 s: {})",
            ok(ll_ok),
            t.a(),
            t.b(),
            t.alpha(),
            t.beta(),
            ok(mle_ok),
            elapsed,
            ok(time_ok)
        ),
    );
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "mismatch"
    }
}

fn exponential_closed_form(r: &mut Report, fits: &[(Family, FitResult)]) {
    let data = Dataset::aarset();
    let f = get(fits, Family::Exp);
    let rate = f.theta_hat.a();
    let oracle = data.n() as f64 / data.observations().iter().sum::<f64>();
    let oracle_m2 = -2.0 * (data.n() as f64 * oracle.ln() - oracle * data.sum());
    let five_sig = format!("{rate:.4e}") == format!("{oracle:.4e}");
    let m2_ok = within(f.minus2loglik, 482.2, 0.1) && within(f.minus2loglik, oracle_m2, 1e-6);
    r.record(
        "exponential_closed_form",
        five_sig && m2_ok && format!("{rate:.5}") == "0.02189",
        format!(
            "rate {rate:.7} vs 1/mean {oracle:.7}; -2logL {:.4} vs analytic {oracle_m2:.4}",
            f.minus2loglik
        ),
    );
}

fn aic_ranking(r: &mut Report, fits: &[(Family, FitResult)]) {
    let data = Dataset::aarset();
    let printed = [
        (Family::Blfr, 468.8),
        (Family::Glfr, 472.3),
        (Family::Lfr, 480.1),
        (Family::Gr, 473.1),
        (Family::Ge, 484.0),
        (Family::Rayleigh, 530.1),
        (Family::Exp, 484.2),
    ];
    let mut ours: Vec<(Family, f64)> = fits
        .iter()
        .map(|(f, res)| (*f, gof_report(res, &data).unwrap().aic))
        .collect();
    let values_ok = printed.iter().all(|&(f, v)| {
        let a = ours.iter().find(|(g, _)| *g == f).unwrap().1;
        within(a, v, 0.5)
    });
    let mut expected = printed.to_vec();
    expected.sort_by(|x, y| x.1.total_cmp(&y.1));
    ours.sort_by(|x, y| x.1.total_cmp(&y.1));
    let order_ok = expected.iter().zip(&ours).all(|(e, o)| e.0 == o.0);
    let listing: Vec<String> = ours
        .iter()
        .map(|(f, a)| format!("{} {a:.2}", f.tag()))
        .collect();
    r.record(
        "aic_ranking",
        values_ok && order_ok,
        format!(
            "order ({}): {}; values within 0.5: {}",
            ok(order_ok),
            listing.join(", "),
            ok(values_ok)
        ),
    );
}

fn blfr_goodness_of_fit(r: &mut Report, fits: &[(Family, FitResult)]) {
    let data = Dataset::aarset();
    let g = gof_report(get(fits, Family::Blfr), &data).unwrap();
    let ks = within(g.ks_stat, 0.1554, 0.005) && within(g.ks_pvalue, 0.1786, 0.03);
    let ad = within(g.ad_stat, 1.749, 0.05 * 1.749);
    let cm = within(g.cm_stat, 0.3574, 0.05 * 0.3574);
    r.record(
        "blfr_goodness_of_fit",
        ks && ad && cm,
        format!(
            "K-S {:.4} p {:.4} ({}); AD {:.4} ({}); CM {:.4} vs 0.3574 ({})",
            g.ks_stat,
            g.ks_pvalue,
            ok(ks),
            g.ad_stat,
            ok(ad),
            g.cm_stat,
            ok(cm)
        ),
    );
}

fn likelihood_ratio_tests(r: &mut Report, fits: &[(Family, FitResult)]) {
    let alt = get(fits, Family::Blfr);
    let mut pass = true;
    let mut parts = Vec::new();
    for (null, target, ptarget) in [
        (Family::Lfr, 15.3, Some(4.7e-4)),
        (Family::Gr, 8.3, None),
        (Family::Ge, 19.2, None),
        (Family::Glfr, 5.5, None),
    ] {
        let lr = lr_test(get(fits, null), alt).unwrap();
        let mut good = within(lr.lr_stat, target, 0.5);
        if let Some(p) = ptarget {
            good &= within(lr.pvalue, p, 0.1 * p);
        }
        pass &= good;
        parts.push(format!(
            "{} {:.3} (p {:.2e}) {}",
            null.tag(),
            lr.lr_stat,
            lr.pvalue,
            ok(good)
        ));
    }
    r.record("likelihood_ratio_tests", pass, parts.join("; "));
}

fn random_case(rng: &mut RngState) -> (BlfrParams, Dataset) {
    let lu =
        |rng: &mut RngState, lo: f64, hi: f64| (lo.ln() + (hi / lo).ln() * rng.next_f64()).exp();
    let gen = th(
        lu(rng, 0.05, 3.0),
        lu(rng, 0.05, 3.0),
        lu(rng, 0.3, 4.0),
        lu(rng, 0.3, 4.0),
    );
    let n = 10 + (rng.next_u64() % 191) as usize;
    let data = Dataset::new(sample_blfr(n, &gen, rng).unwrap()).unwrap();
    let eval = th(
        lu(rng, 0.05, 3.0),
        lu(rng, 0.05, 3.0),
        lu(rng, 0.3, 4.0),
        lu(rng, 0.3, 4.0),
    );
    (eval, data)
}

fn derivative_consistency(r: &mut Report) {
    let mut rng = RngState::new(0xACCE);
    let (mut worst_u, mut worst_j) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (t, data) = random_case(&mut rng);
        let u = score(&t, &data).unwrap();
        let j = observed_info(&t, &data).unwrap();
        for p in Param::ALL {
            let v = t.get(p);
            let h = 1e-6 * v.abs().max(1.0);
            let (tp, tm) = (t.with(p, v + h).unwrap(), t.with(p, v - h).unwrap());
            let fd = (loglik(&tp, &data) - loglik(&tm, &data)) / (2.0 * h);
            worst_u = worst_u.max((u[p.index()] - fd).abs() / fd.abs().max(1.0));
            let (up, dn) = (score(&tp, &data).unwrap(), score(&tm, &data).unwrap());
            for q in Param::ALL {
                let fd = -(up[q.index()] - dn[q.index()]) / (2.0 * h);
                worst_j = worst_j.max((j[q.index()][p.index()] - fd).abs() / fd.abs().max(1.0));
            }
        }
    }
    r.record(
        "derivative_consistency",
        worst_u < 1e-4 && worst_j < 1e-3,
        format!("100 draws: worst score rel err {worst_u:.2e} (< 1e-4), worst information rel err {worst_j:.2e} (< 1e-3)"),
    );
}

fn identity_grid() -> Vec<BlfrParams> {
    let mut v = Vec::new();
    for &(a, b) in &[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.2, 0.1)] {
        for &alpha in &[0.3, 1.0, 2.0, 3.0] {
            for &beta in &[0.3, 1.0, 2.0, 3.0] {
                v.push(th(a, b, alpha, beta));
            }
        }
    }
    v
}

fn distributional_identities(r: &mut Report) {
    let grid = identity_grid();
    let (mut cdf_fail, mut norm_fail, mut mom_fail) = (Vec::new(), Vec::new(), Vec::new());
    let (mut worst_cdf, mut worst_norm, mut worst_mom) = (0.0f64, 0.0f64, 0.0f64);
    let (mut cdf_points, mut cdf_skipped) = (0usize, 0usize);
    for p in &grid {
        for &prob in &[0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99] {
            let x = blfr_quantile(prob, p).unwrap();
            // keep to G(x) < 0.999, where both series converge
            let g = -(-(p.a() * x + 0.5 * p.b() * x * x)).exp_m1();
            if g >= 0.999 {
                cdf_skipped += 1;
                continue;
            }
            cdf_points += 1;
            let closed = blfr_cdf(x, p).unwrap();
            let series = cdf_series(x, p, 1e-12);
            let hyp = cdf_hypergeometric(x, p);
            match (series, hyp) {
                (Ok(s), Ok(h)) => {
                    let e = (s - closed)
                        .abs()
                        .max((h - closed).abs())
                        .max((s - h).abs());
                    worst_cdf = worst_cdf.max(e);
                    if e > 1e-7 {
                        cdf_fail.push(format!("{p} x={x:.4}"));
                    }
                }
                (s, h) => cdf_fail.push(format!("{p} x={x:.4}: {:?} {:?}", s.err(), h.err())),
            }
        }
        let hi = blfr_quantile(1.0 - 1e-10, p).unwrap();
        let mass = integrate_adaptive(
            |s| {
                if s > 0.0 {
                    blfr_pdf(s, p).unwrap()
                } else {
                    0.0
                }
            },
            0.0,
            hi,
            1e-13,
            1e-13,
        )
        .unwrap()
            + blfr_sf(hi, p).unwrap();
        worst_norm = worst_norm.max((mass - 1.0).abs());
        if (mass - 1.0).abs() > 1e-7 {
            norm_fail.push(format!("{p}"));
        }
        for k in 1..=2 {
            let quad = raw_moment_quadrature(k, p).unwrap();
            match raw_moment(k, p, 1e-10) {
                Ok(m) => {
                    let e = (m - quad).abs() / quad.abs();
                    worst_mom = worst_mom.max(e);
                    if e > 1e-6 {
                        mom_fail.push(format!("{p} k={k} rel {e:.1e}"));
                    }
                }
                Err(e) => mom_fail.push(format!("{p} k={k}: {e}")),
            }
        }
    }
    let pass = cdf_fail.is_empty() && norm_fail.is_empty() && mom_fail.is_empty();
    let mut detail = format!(
        "{} parameter sets; cdf three-way worst {worst_cdf:.1e} over {cdf_points} points with G < 0.999, \
         {cdf_skipped} skipped ({} failing); normalization worst {worst_norm:.1e} \
         ({} failing); moments worst converged rel err {worst_mom:.1e} ({} failing)",
        grid.len(),
        cdf_fail.len(),
        norm_fail.len(),
        mom_fail.len()
    );
    if let Some(first) = cdf_fail.first().or(norm_fail.first()).or(mom_fail.first()) {
        detail.push_str(&format!("; first failure {first}"));
    }
    r.record("distributional_identities", pass, detail);
}

fn sampler_correctness(r: &mut Report) {
    let sets = [
        th(1.0, 0.0, 1.0, 1.0),
        th(0.0, 1.0, 1.0, 1.0),
        th(1.0, 1.0, 0.5, 0.5),
        th(0.2, 0.1, 2.0, 3.0),
        th(0.5, 0.5, 1.0, 1.0),
        th(3.0, 3.0, 3.0, 3.0),
        th(0.5, 2.0, 0.3, 1.5),
        th(2.0, 0.1, 5.0, 0.2),
        th(0.0172, 0.0035, 0.3347, 0.1243),
        th(0.05, 0.0, 0.7, 4.0),
    ];
    let mut pvalues = Vec::new();
    let mut pass = true;
    for (i, p) in sets.iter().enumerate() {
        let xs = sample_blfr(10_000, p, &mut RngState::child(8, &[i as u64])).unwrap();
        let ks = ks_test(&Dataset::new(xs).unwrap(), |x| blfr_cdf(x, p).unwrap());
        pass &= ks.pvalue > 0.01;
        pvalues.push(format!("{:.3}", ks.pvalue));
    }
    let bits = |seed| -> Vec<u64> {
        sample_blfr(1000, &sets[2], &mut RngState::new(seed))
            .unwrap()
            .iter()
            .map(|x| x.to_bits())
            .collect()
    };
    let same = bits(99) == bits(99);
    let differs = bits(99) != bits(100);
    r.record(
        "sampler_correctness",
        pass && same && differs,
        format!(
            "K-S p-values over 10 sets [{}] (all > 0.01: {}); fixed seed identical: {}",
            pvalues.join(", "),
            ok(pass),
            ok(same && differs)
        ),
    );
}

fn hazard_on_grid(p: &BlfrParams) -> Vec<f64> {
    let lo = blfr_quantile(1e-8, p).unwrap().ln();
    let hi = blfr_quantile(1.0 - 1e-10, p).unwrap().ln();
    (0..400)
        .map(|i| blfr_hazard((lo + (hi - lo) * i as f64 / 399.0).exp(), p).unwrap())
        .collect()
}

fn significant_signs(h: &[f64]) -> Vec<i8> {
    h.windows(2)
        .filter_map(|w| {
            let d = w[1] - w[0];
            if d.abs() <= 1e-10 * w[0].abs().max(w[1].abs()) {
                None
            } else {
                Some(if d > 0.0 { 1 } else { -1 })
            }
        })
        .collect()
}

fn golden_argmax(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-12 * hi.max(1.0) {
        let (c, d) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(c) > f(d) {
            hi = d;
        } else {
            lo = c;
        }
    }
    0.5 * (lo + hi)
}

fn theorem_properties(r: &mut Report) {
    let mut problems = Vec::new();
    let shapes = [(1.0, 1.0), (0.2, 0.1), (0.5, 2.0), (0.0, 1.0), (2.0, 0.05)];

    for &(a, b) in &shapes {
        for &alpha in &[1.0, 1.5, 2.0, 3.0] {
            for &beta in &[0.3, 1.0, 2.0, 3.0] {
                let p = th(a, b, alpha, beta);
                if significant_signs(&hazard_on_grid(&p)).contains(&-1) {
                    problems.push(format!("hazard decreases somewhere for {p}"));
                }
            }
        }
    }
    for &a in &[0.1, 1.0, 5.0] {
        let p = th(a, 0.0, 1.0, 1.0);
        if hazard_on_grid(&p).iter().any(|h| (h - a).abs() > 1e-12 * a) {
            problems.push(format!("hazard not constant for {p}"));
        }
    }
    for &(a, b) in &[(1.0, 1.0), (0.2, 0.1), (0.5, 2.0), (2.0, 0.05)] {
        for &alpha in &[0.3, 0.5, 0.8] {
            for &beta in &[0.5, 1.0, 2.0] {
                let p = th(a, b, alpha, beta);
                let mut runs = significant_signs(&hazard_on_grid(&p));
                runs.dedup();
                if runs != [-1, 1] {
                    problems.push(format!("hazard sign runs {runs:?} for {p}"));
                }
            }
        }
    }

    for &(a, b) in &[(1.0, 1.0), (0.2, 0.1), (0.5, 0.0)] {
        for &beta in &[0.5, 1.0, 3.0] {
            let p = th(a, b, 1.0, beta);
            let f0 = blfr_pdf(1e-8, &p).unwrap();
            if (f0 - a * beta).abs() > 1e-6 * a * beta {
                problems.push(format!("f(1e-8) = {f0} vs a*beta for {p}"));
            }
            for &alpha in &[2.0, 3.0] {
                let q = th(a, b, alpha, beta);
                let f = blfr_pdf(1e-8, &q).unwrap();
                if !(f < 1e-6) {
                    problems.push(format!("f(1e-8) = {f} not near 0 for {q}"));
                }
            }
            for &alpha in &[0.3, 0.5] {
                let q = th(a, b, alpha, beta);
                let (f8, f6) = (blfr_pdf(1e-8, &q).unwrap(), blfr_pdf(1e-6, &q).unwrap());
                if !(f8 > 1e2 && f8 > f6) {
                    problems.push(format!("f(1e-8) = {f8} does not blow up for {q}"));
                }
            }
            for &alpha in &[0.3, 1.0, 3.0] {
                let q = th(a, b, alpha, beta);
                let f = blfr_pdf(1e3, &q).unwrap();
                if !(f < 1e-12) {
                    problems.push(format!("f(1e3) = {f} for {q}"));
                }
            }
        }
    }

    let mut worst_mode = 0.0f64;
    for &(a, b, beta) in &[
        (0.2, 1.0, 1.0),
        (0.1, 2.0, 0.5),
        (0.5, 3.0, 2.0),
        (0.0, 1.0, 1.0),
        (0.05, 0.1, 0.3),
    ] {
        let p = th(a, b, 1.0, beta);
        let closed = match blfr_mode(&p).unwrap() {
            Mode::Interior(m) => m,
            other => {
                problems.push(format!("expected interior mode for {p}, got {other:?}"));
                continue;
            }
        };
        let hi = blfr_quantile(0.999, &p).unwrap();
        let step = hi / 1000.0;
        let best = (1..=1000)
            .max_by(|&i, &j| {
                blfr_pdf(i as f64 * step, &p)
                    .unwrap()
                    .total_cmp(&blfr_pdf(j as f64 * step, &p).unwrap())
            })
            .unwrap() as f64;
        let numeric = golden_argmax(
            |x| blfr_pdf(x, &p).unwrap(),
            (best - 1.0) * step,
            (best + 1.0) * step,
        );
        worst_mode = worst_mode.max((numeric - closed).abs());
        if (numeric - closed).abs() > 1e-6 {
            problems.push(format!("mode {closed} vs numeric {numeric} for {p}"));
        }
    }

    r.record(
        "hazard_and_limit_properties",
        problems.is_empty(),
        if problems.is_empty() {
            format!("monotone, constant and bathtub grids, limits at 1e-8 and 1e3, mode worst |diff| {worst_mode:.1e}")
        } else {
            format!("{} problems; first: {}", problems.len(), problems[0])
        },
    );
}

fn monte_carlo_patterns(r: &mut Report) {
    let mut config = StudyConfig::table2(500, blfr::study::DEFAULT_STUDY_SEED);
    config.n_grid = vec![30, 200];
    let start = Instant::now();
    let result: StudyResult = match run_study(&config) {
        Ok(s) => s,
        Err(e) => return r.record("monte_carlo_patterns", false, format!("study failed: {e}")),
    };
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    let mut rates = Vec::new();
    for &(alpha, beta, a, b) in &TABLE2_THETAS {
        let truth = th(a, b, alpha, beta);
        let cell = |n: usize| {
            result
                .cells
                .iter()
                .find(|c| c.n == n && c.theta == truth)
                .expect("cell present")
        };
        let (small, large) = (cell(30), cell(200));
        rates.push(format!(
            "{:.2}/{:.2}",
            small.convergence_rate, large.convergence_rate
        ));
        let (Some(ae_s), Some(ae_l), Some(sd_s), Some(sd_l)) = (
            small.average_estimates,
            large.average_estimates,
            small.sd_estimates,
            large.sd_estimates,
        ) else {
            problems.push(format!("{truth}: too few converged replications"));
            continue;
        };
        let mut bias_ok = 0;
        for p in Param::ALL {
            if sd_l.get(p) >= 1.1 * sd_s.get(p) {
                problems.push(format!(
                    "{truth}: SD of {p} {:.4} at n=200 vs {:.4} at n=30",
                    sd_l.get(p),
                    sd_s.get(p)
                ));
            }
            if (ae_l.get(p) - truth.get(p)).abs() <= (ae_s.get(p) - truth.get(p)).abs() {
                bias_ok += 1;
            }
        }
        if bias_ok < 3 {
            problems.push(format!(
                "{truth}: |AE - truth| shrank for only {bias_ok} of 4 parameters"
            ));
        }
    }
    let time_ok = elapsed < Duration::from_secs(600);
    if !time_ok {
        problems.push(format!("runtime {elapsed:.1?}"));
    }
    r.record(
        "monte_carlo_patterns",
        problems.is_empty(),
        format!(
            "6 settings x n in {{30, 200}} x 500 reps in {elapsed:.1?}; convergence rates (n=30/n=200) [{}]{}",
            rates.join(", "),
            if problems.is_empty() { String::new() } else { format!("; problems: {}", problems.join("; ")) }
        ),
    );
}

fn ttt_signature(r: &mut Report) {
    let curve = ttt_transform(&Dataset::aarset()).unwrap();
    let first = curve[0];
    let last = *curve.last().unwrap();
    let ends = first == (0.0, 0.0) && last == (1.0, 1.0);
    let d = ttt_shape(&curve);
    let shape = d.shape == TttShape::ConvexThenConcave
        && d.sign_changes == 1
        && d.signs.first() == Some(&1);
    r.record(
        "ttt_signature",
        ends && shape,
        format!(
            "endpoints {first:?} {last:?} ({}); smoothed second differences: {:?} with {} sign changes ({})",
            ok(ends),
            d.shape,
            d.sign_changes,
            ok(shape)
        ),
    );
}

#[test]
fn acceptance() {
    let mut r = Report::default();
    aarset_blfr_fit(&mut r);
    let fits = fit_all(&Dataset::aarset());
    exponential_closed_form(&mut r, &fits);
    aic_ranking(&mut r, &fits);
    blfr_goodness_of_fit(&mut r, &fits);
    likelihood_ratio_tests(&mut r, &fits);
    derivative_consistency(&mut r);
    distributional_identities(&mut r);
    sampler_correctness(&mut r);
    theorem_properties(&mut r);
    monte_carlo_patterns(&mut r);
    ttt_signature(&mut r);
    let failed = r.failures();
    println!(
        "{} of {} checks passed",
        r.checks.len() - failed.len(),
        r.checks.len()
    );
    assert!(failed.is_empty(), "failed checks:\n{}", failed.join("\n"));
}
