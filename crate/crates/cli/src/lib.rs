//! Command-line front end for the `blfr` crate.

pub mod ingest;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use blfr::distribution::{blfr_mode, classify_hazard_shape, HazardShape, Mode};
use blfr::estimation::{confidence_intervals, fit, FitOptions, FitResult};
use blfr::gof::{
    compare_models, ecdf_csv, gof_report, lr_test, reports_to_csv, ttt_csv, ttt_shape,
    ttt_transform, FitFailure, GofReport, LrTestResult, TttDiagnosis,
};
use blfr::moments::{raw_moment, raw_moment_quadrature};
use blfr::rng::{RngState, ALGORITHM_ID};
use blfr::sampling::sample_blfr;
use blfr::study::{
    run_study, study_to_csv, study_to_json, StudyConfig, DEFAULT_REPLICATIONS, DEFAULT_STUDY_SEED,
};
use blfr::{BlfrParams, Dataset, Family, Param};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use ingest::{ingest_data, parse_observations};

/// Seed used by `simulate` when none is given.
pub const DEFAULT_SIMULATE_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "blfr",
    version,
    about = "Beta linear failure rate lifetime models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fit one family by maximum likelihood
    Fit(FitArgs),
    /// Fit several families and rank them by AIC
    Compare(CompareArgs),
    /// Draw a random sample
    Simulate(SimulateArgs),
    /// Empirical scaled total-time-on-test transform
    Ttt(TttArgs),
    /// Raw moments, mode and hazard shape for a parameter set
    Moments(MomentsArgs),
    /// Monte Carlo study of the estimators
    Study(StudyArgs),
    /// Full model comparison on the embedded Aarset data
    AarsetRepro(ReproArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fit(_) => "fit",
            Command::Compare(_) => "compare",
            Command::Simulate(_) => "simulate",
            Command::Ttt(_) => "ttt",
            Command::Moments(_) => "moments",
            Command::Study(_) => "study",
            Command::AarsetRepro(_) => "aarset-repro",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: blfr::Error| e.to_string())
}

fn parse_level(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("confidence level must lie in (0, 1), got {v}"))
    }
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Data file (whitespace or comma separated), or `aarset`
    #[arg(long)]
    pub data: String,
    #[arg(long, default_value = "blfr", value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value_t = 0.95, value_parser = parse_level)]
    pub confidence_level: f64,
    /// Seed for the jittered optimizer restarts
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub data: String,
    /// Comma-separated family names, or `all`
    #[arg(long, default_value = "all")]
    pub families: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
}

impl ParamArgs {
    fn params(&self) -> blfr::Result<BlfrParams> {
        BlfrParams::new(self.a, self.b, self.alpha, self.beta)
    }
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TttArgs {
    #[arg(long)]
    pub data: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Highest moment order
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Relative truncation tolerance of the series
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct StudyArgs {
    /// Config file (JSON or key = value)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Use the published six-setting design
    #[arg(long)]
    pub preset_table2: bool,
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated sample sizes, replacing the configured grid
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Also write the CSV table here
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
    /// Also write the JSON result here
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ReproArgs {
    /// Directory for report.json, table1.csv, lr_tests.csv, ttt.csv and ecdf.csv
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// What a command printed and whether it flagged a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub flagged: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            flagged: false,
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn fit_options(seed: Option<u64>, level: f64) -> FitOptions {
    let mut o = FitOptions {
        confidence_level: level,
        ..FitOptions::default()
    };
    if let Some(s) = seed {
        o.seed = s;
    }
    o
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Ttt(a) => cmd_ttt(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Study(a) => cmd_study(a),
        Command::AarsetRepro(a) => cmd_aarset_repro(a),
    }
}

fn fit_csv(f: &FitResult) -> String {
    let mut s =
        String::from("param,estimate,std_error,wald_lower,wald_upper,log_lower,log_upper\n");
    for p in Param::ALL {
        let est = f.theta_hat.get(p);
        let ci = f
            .conf_intervals
            .as_ref()
            .and_then(|v| v.iter().find(|c| c.param == p));
        match ci {
            Some(c) => writeln!(
                s,
                "{p},{est},{},{},{},{},{}",
                c.std_error, c.wald_lower, c.wald_upper, c.log_lower, c.log_upper
            ),
            None => writeln!(s, "{p},{est},,,,,"),
        }
        .expect("write to string");
    }
    s
}

fn fit_text(f: &FitResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family      {}", f.family);
    let _ = writeln!(s, "n           {}", f.n);
    let _ = writeln!(s, "-2 logL     {:.4}", f.minus2loglik);
    let _ = writeln!(s, "seed        {}", f.seed);
    for p in Param::ALL {
        let est = f.theta_hat.get(p);
        match f.std_error(p) {
            Some(se) => {
                let _ = writeln!(s, "{:<11} {est:.6}  (se {se:.6})", p.name());
            }
            None if f.family.is_free(p) => {
                let _ = writeln!(s, "{:<11} {est:.6}  (se unavailable)", p.name());
            }
            None => {
                let _ = writeln!(s, "{:<11} {est}  (fixed)", p.name());
            }
        }
    }
    s
}

fn cmd_fit(a: &FitArgs) -> anyhow::Result<Outcome> {
    let data = ingest_data(&a.data)?;
    let opts = fit_options(a.seed, a.confidence_level);
    let f = fit(a.family, &data, &opts).context("fit")?;
    if f.conf_intervals.is_none() {
        // surfaces the reason alongside an otherwise valid fit
        let _ = confidence_intervals(&f, 1.0 - a.confidence_level)
            .map_err(|e| eprintln!("warning: {e}"));
    }
    Ok(Outcome::ok(match a.format {
        Format::Json => json(&f),
        Format::Csv => fit_csv(&f),
        Format::Text => fit_text(&f),
    }))
}

fn parse_families(list: &str) -> anyhow::Result<Vec<Family>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Family::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let f: Family = name.parse()?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    if out.is_empty() {
        bail!(blfr::Error::Config("no families given".into()));
    }
    Ok(out)
}

#[derive(Serialize)]
struct CompareReport {
    n: usize,
    seed: u64,
    reports: Vec<GofReport>,
    failures: Vec<FitFailure>,
}

fn cmd_compare(a: &CompareArgs) -> anyhow::Result<Outcome> {
    let data = ingest_data(&a.data)?;
    let families = parse_families(&a.families)?;
    let opts = fit_options(a.seed, 0.95);
    let c = compare_models(&data, &families, &opts)?;
    let flagged = !c.failures.is_empty();
    let report = CompareReport {
        n: data.n(),
        seed: opts.seed,
        reports: c.reports,
        failures: c.failures,
    };
    let stdout = match a.format {
        Format::Json => json(&report),
        Format::Csv => reports_to_csv(&report.reports),
        Format::Text => {
            let mut s = format!(
                "{:<9} {:>10} {:>10} {:>10} {:>8} {:>8}\n",
                "family", "-2logL", "AIC", "BIC", "K-S", "p"
            );
            for r in &report.reports {
                let _ = writeln!(
                    s,
                    "{:<9} {:>10.3} {:>10.3} {:>10.3} {:>8.4} {:>8.4}",
                    r.family.tag(),
                    r.minus2loglik,
                    r.aic,
                    r.bic,
                    r.ks_stat,
                    r.ks_pvalue
                );
            }
            for f in &report.failures {
                let _ = writeln!(s, "{:<9} failed: {}", f.family.tag(), f.error);
            }
            s
        }
    };
    Ok(Outcome { stdout, flagged })
}

#[derive(Serialize)]
struct SimulateReport {
    seed: u64,
    rng_algorithm: &'static str,
    params: BlfrParams,
    n: usize,
    samples: Vec<f64>,
}

fn cmd_simulate(a: &SimulateArgs) -> anyhow::Result<Outcome> {
    let params = a.params.params()?;
    let seed = a.seed.unwrap_or(DEFAULT_SIMULATE_SEED);
    let samples = sample_blfr(a.n, &params, &mut RngState::new(seed))?;
    Ok(Outcome::ok(match a.format {
        Format::Json => json(&SimulateReport {
            seed,
            rng_algorithm: ALGORITHM_ID,
            params,
            n: a.n,
            samples,
        }),
        Format::Csv => {
            let mut s = format!("# seed={seed} algorithm={ALGORITHM_ID}\nx\n");
            for x in &samples {
                let _ = writeln!(s, "{x}");
            }
            s
        }
        Format::Text => {
            let mut s = format!("# seed={seed} algorithm={ALGORITHM_ID} params={params}\n");
            for x in &samples {
                let _ = writeln!(s, "{x}");
            }
            s
        }
    }))
}

#[derive(Serialize)]
struct TttPoint {
    u: f64,
    ttt: f64,
}

#[derive(Serialize)]
struct TttReport {
    n: usize,
    points: Vec<TttPoint>,
    diagnosis: TttDiagnosis,
}

fn cmd_ttt(a: &TttArgs) -> anyhow::Result<Outcome> {
    let data = ingest_data(&a.data)?;
    let curve = ttt_transform(&data)?;
    let diagnosis = ttt_shape(&curve);
    Ok(Outcome::ok(match a.format {
        Format::Csv => ttt_csv(&curve),
        Format::Json => json(&TttReport {
            n: data.n(),
            points: curve.iter().map(|&(u, ttt)| TttPoint { u, ttt }).collect(),
            diagnosis,
        }),
        Format::Text => format!(
            "n={} shape={:?} sign_changes={}\n{}",
            data.n(),
            diagnosis.shape,
            diagnosis.sign_changes,
            ttt_csv(&curve)
        ),
    }))
}

#[derive(Serialize)]
struct MomentEntry {
    k: u32,
    series: Option<f64>,
    series_error: Option<String>,
    quadrature: f64,
}

#[derive(Serialize)]
struct MomentsReport {
    params: BlfrParams,
    tolerance: f64,
    moments: Vec<MomentEntry>,
    mean: f64,
    variance: f64,
    mode: Mode,
    hazard_shape: HazardShape,
}

fn cmd_moments(a: &MomentsArgs) -> anyhow::Result<Outcome> {
    let p = a.params.params()?;
    if a.order == 0 {
        bail!(blfr::Error::Config("--order must be at least 1".into()));
    }
    let mut moments = Vec::new();
    for k in 1..=a.order.max(2) {
        let q = raw_moment_quadrature(k, &p)?;
        let (series, series_error) = match raw_moment(k, &p, a.tol) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        moments.push(MomentEntry {
            k,
            series,
            series_error,
            quadrature: q,
        });
    }
    let m1 = moments[0].quadrature;
    let m2 = moments[1].quadrature;
    moments.truncate(a.order as usize);
    let report = MomentsReport {
        params: p,
        tolerance: a.tol,
        moments,
        mean: m1,
        variance: m2 - m1 * m1,
        mode: blfr_mode(&p)?,
        hazard_shape: classify_hazard_shape(&p),
    };
    let flagged = report.moments.iter().any(|m| m.series.is_none());
    let stdout = match a.format {
        Format::Json => json(&report),
        Format::Csv | Format::Text => {
            let mut s = String::from("k,series,quadrature\n");
            for m in &report.moments {
                let series = m.series.map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{series},{}", m.k, m.quadrature);
            }
            s
        }
    };
    Ok(Outcome { stdout, flagged })
}

fn study_config(a: &StudyArgs) -> anyhow::Result<StudyConfig> {
    let mut c = match (&a.config, a.preset_table2) {
        (Some(_), true) => bail!(blfr::Error::Config(
            "use either --config or --preset-table2".into()
        )),
        (Some(path), false) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading study config {}", path.display()))?;
            StudyConfig::parse(&text)?
        }
        (None, true) => StudyConfig::table2(DEFAULT_REPLICATIONS, DEFAULT_STUDY_SEED),
        (None, false) => bail!(blfr::Error::Config(
            "study needs --config or --preset-table2".into()
        )),
    };
    if let Some(r) = a.replications {
        c.replications = r;
    }
    if let Some(s) = a.seed {
        c.seed = s;
    }
    if let Some(n) = &a.n {
        c.n_grid = n.clone();
    }
    c.validate()?;
    Ok(c)
}

fn cmd_study(a: &StudyArgs) -> anyhow::Result<Outcome> {
    let config = study_config(a)?;
    let result = run_study(&config)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let csv = study_to_csv(&result);
    let js = study_to_json(&result) + "\n";
    if let Some(p) = &a.csv_out {
        fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &a.json_out {
        fs::write(p, &js).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(Outcome::ok(match a.format {
        Format::Json => js,
        Format::Csv | Format::Text => csv,
    }))
}

#[derive(Serialize)]
struct DatasetInfo {
    name: &'static str,
    n: usize,
    sum: f64,
    mean: f64,
    min: f64,
    max: f64,
}

#[derive(Serialize)]
struct ReproRow {
    family: Family,
    converged: bool,
    estimates: Option<BlfrParams>,
    std_errors: Option<BTreeMap<Param, f64>>,
    gof: Option<GofReport>,
    error: Option<String>,
}

#[derive(Serialize)]
struct ReproLr {
    null_family: Family,
    alt_family: Family,
    result: Option<LrTestResult>,
    error: Option<String>,
}

#[derive(Serialize)]
struct ReproReport {
    dataset: DatasetInfo,
    seed: u64,
    rng_algorithm: &'static str,
    table: Vec<ReproRow>,
    lr_tests: Vec<ReproLr>,
    ttt: TttDiagnosis,
    flagged: Vec<String>,
}

/// Null families tested against BLFR in the report, in display order.
pub const REPRO_LR_NULLS: [Family; 4] = [Family::Lfr, Family::Gr, Family::Ge, Family::Glfr];

pub const TABLE1_CSV_HEADER: &str = "family,k,a,b,alpha,beta,se_a,se_b,se_alpha,se_beta,minus2loglik,aic,aicc,bic,ks_stat,ks_pvalue,ad_stat,cm_stat";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn table1_csv(rows: &[ReproRow]) -> String {
    let mut s = String::from(TABLE1_CSV_HEADER);
    s.push('\n');
    for r in rows {
        let est = |p: Param| r.estimates.map(|t| t.get(p));
        let se = |p: Param| r.std_errors.as_ref().and_then(|m| m.get(&p).copied());
        let g = r.gof.as_ref();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.family.tag(),
            r.family.k(),
            opt(est(Param::A)),
            opt(est(Param::B)),
            opt(est(Param::Alpha)),
            opt(est(Param::Beta)),
            opt(se(Param::A)),
            opt(se(Param::B)),
            opt(se(Param::Alpha)),
            opt(se(Param::Beta)),
            opt(g.map(|g| g.minus2loglik)),
            opt(g.map(|g| g.aic)),
            opt(g.map(|g| g.aicc)),
            opt(g.map(|g| g.bic)),
            opt(g.map(|g| g.ks_stat)),
            opt(g.map(|g| g.ks_pvalue)),
            opt(g.map(|g| g.ad_stat)),
            opt(g.map(|g| g.cm_stat)),
        );
    }
    s
}

fn lr_csv(tests: &[ReproLr]) -> String {
    let mut s = String::from("null,alt,lr_stat,df,pvalue,boundary_nonregular\n");
    for t in tests {
        match &t.result {
            Some(r) => {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.null_family.tag(),
                    r.alt_family.tag(),
                    r.lr_stat,
                    r.df,
                    r.pvalue,
                    r.boundary_nonregular
                );
            }
            None => {
                let _ = writeln!(s, "{},{},,,,", t.null_family.tag(), t.alt_family.tag());
            }
        }
    }
    s
}

fn repro_text(r: &ReproReport) -> String {
    let mut s = format!(
        "{:<9} {:>10} {:>10} {:>10} {:>10} {:>8} {:>8} {:>8} {:>8}\n",
        "family", "-2logL", "AIC", "AICc", "BIC", "K-S", "p", "AD", "CM"
    );
    for row in &r.table {
        match &row.gof {
            Some(g) => {
                let _ = writeln!(
                    s,
                    "{:<9} {:>10.3} {:>10.3} {:>10.3} {:>10.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
                    g.family.tag(),
                    g.minus2loglik,
                    g.aic,
                    g.aicc,
                    g.bic,
                    g.ks_stat,
                    g.ks_pvalue,
                    g.ad_stat,
                    g.cm_stat
                );
            }
            None => {
                let _ = writeln!(
                    s,
                    "{:<9} failed: {}",
                    row.family.tag(),
                    row.error.as_deref().unwrap_or("")
                );
            }
        }
    }
    s.push('\n');
    for t in &r.lr_tests {
        if let Some(x) = &t.result {
            let _ = writeln!(
                s,
                "LR {} vs {}: {:.3} on {} df, p = {:.3e}",
                x.null_family.tag(),
                x.alt_family.tag(),
                x.lr_stat,
                x.df,
                x.pvalue
            );
        }
    }
    let _ = writeln!(
        s,
        "TTT shape: {:?} ({} sign changes)",
        r.ttt.shape, r.ttt.sign_changes
    );
    s
}

fn cmd_aarset_repro(a: &ReproArgs) -> anyhow::Result<Outcome> {
    let data = Dataset::aarset();
    let opts = FitOptions::default();
    let mut flagged = Vec::new();
    let mut fits: BTreeMap<&'static str, FitResult> = BTreeMap::new();
    let mut table = Vec::new();
    for family in Family::ALL {
        let outcome = fit(family, &data, &opts).and_then(|f| gof_report(&f, &data).map(|g| (f, g)));
        match outcome {
            Ok((f, g)) => {
                let std_errors = f.std_errors.as_ref().map(|se| {
                    family
                        .free_params()
                        .iter()
                        .copied()
                        .zip(se.iter().copied())
                        .collect()
                });
                if std_errors.is_none() {
                    flagged.push(format!("{}: standard errors unavailable", family.tag()));
                }
                table.push(ReproRow {
                    family,
                    converged: f.converged,
                    estimates: Some(f.theta_hat),
                    std_errors,
                    gof: Some(g),
                    error: None,
                });
                fits.insert(family.tag(), f);
            }
            Err(e) => {
                flagged.push(format!("{}: {e}", family.tag()));
                table.push(ReproRow {
                    family,
                    converged: false,
                    estimates: None,
                    std_errors: None,
                    gof: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    let mut lr_tests = Vec::new();
    for null in REPRO_LR_NULLS {
        let (result, error) = match (fits.get(null.tag()), fits.get(Family::Blfr.tag())) {
            (Some(n0), Some(n1)) => match lr_test(n0, n1) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            },
            _ => (None, Some("a required fit failed".to_string())),
        };
        if let Some(e) = &error {
            flagged.push(format!("LR {} vs BLFR: {e}", null.tag()));
        }
        lr_tests.push(ReproLr {
            null_family: null,
            alt_family: Family::Blfr,
            result,
            error,
        });
    }
    let curve = ttt_transform(&data)?;
    let report = ReproReport {
        dataset: DatasetInfo {
            name: ingest::AARSET_NAME,
            n: data.n(),
            sum: data.sum(),
            mean: data.mean(),
            min: data.min(),
            max: data.max(),
        },
        seed: opts.seed,
        rng_algorithm: ALGORITHM_ID,
        table,
        lr_tests,
        ttt: ttt_shape(&curve),
        flagged,
    };
    let report_json = json(&report);
    let table_csv = table1_csv(&report.table);
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let blfr_fit = fits.get(Family::Blfr.tag()).map(|f| f.theta_hat);
        let files = [
            ("report.json", report_json.clone()),
            ("table1.csv", table_csv.clone()),
            ("lr_tests.csv", lr_csv(&report.lr_tests)),
            ("ttt.csv", ttt_csv(&curve)),
            ("ecdf.csv", ecdf_csv(&data, blfr_fit.as_ref())?),
        ];
        for (name, body) in files {
            let p = dir.join(name);
            fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    let stdout = match a.format {
        Format::Json => report_json,
        Format::Csv => table_csv,
        Format::Text => repro_text(&report),
    };
    Ok(Outcome {
        stdout,
        flagged: !report.flagged.is_empty(),
    })
}

/// Machine-readable error object written to stdout on failure.
#[derive(Serialize, Debug)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Serialize, Debug)]
pub struct ErrorBody {
    pub kind: String,
    pub command: Option<String>,
    pub message: String,
}

/// Classifies an error by the first recognised cause in its chain.
pub fn error_report(err: &anyhow::Error, command: Option<&str>) -> ErrorReport {
    let kind = err
        .chain()
        .find_map(|e| {
            if let Some(b) = e.downcast_ref::<blfr::Error>() {
                Some(b.kind().to_string())
            } else if e.downcast_ref::<std::io::Error>().is_some() {
                Some("io".to_string())
            } else if e.downcast_ref::<clap::Error>().is_some() {
                Some("usage".to_string())
            } else {
                None
            }
        })
        .unwrap_or_else(|| "error".to_string());
    ErrorReport {
        error: ErrorBody {
            kind,
            command: command.map(str::to_string),
            message: if kind_is_usage(err) {
                err.to_string().trim_end().to_string()
            } else {
                format!("{err:#}")
            },
        },
    }
}

fn kind_is_usage(err: &anyhow::Error) -> bool {
    err.downcast_ref::<clap::Error>().is_some()
}

pub fn error_json(report: &ErrorReport) -> String {
    json(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_lists() {
        assert_eq!(parse_families("all").unwrap().len(), 7);
        assert_eq!(
            parse_families("blfr, exp,blfr").unwrap(),
            vec![Family::Blfr, Family::Exp]
        );
        assert!(parse_families("blfr,weibull").is_err());
        assert!(parse_families(" , ").is_err());
    }

    #[test]
    fn error_kinds() {
        let e: anyhow::Error =
            anyhow::Error::new(blfr::Error::InvalidData("x".into())).context("reading");
        assert_eq!(error_report(&e, Some("fit")).error.kind, "invalid_data");
        let io = anyhow::Error::new(std::io::Error::new(std::io::ErrorKind::NotFound, "gone"));
        assert_eq!(error_report(&io, None).error.kind, "io");
    }

    #[test]
    fn level_validation() {
        assert!(parse_level("0.9").is_ok());
        assert!(parse_level("1").is_err());
        assert!(parse_level("abc").is_err());
    }
}
