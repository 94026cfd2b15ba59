//! Monte Carlo study of the maximum likelihood estimators: repeated
//! sampling at fixed θ and n, refitting, and aggregation into average
//! estimates (AE) and standard deviations (SD).

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::estimation::{fit, FitOptions};
use crate::params::{BlfrParams, Family, Param};
use crate::rng::{RngInfo, RngState, ALGORITHM_ID};
use crate::sampling::sample_blfr;

pub const DEFAULT_REPLICATIONS: usize = 500;
pub const DEFAULT_STUDY_SEED: u64 = 20_100_401;
/// Cells whose convergence rate falls below this get a warning.
pub const LOW_CONVERGENCE_RATE: f64 = 0.5;

/// The six (α, β, a, b) settings of the published simulation table.
pub const TABLE2_THETAS: [(f64, f64, f64, f64); 6] = [
    (0.5, 0.5, 1.0, 1.0),
    (0.5, 0.5, 1.0, 2.0),
    (0.5, 0.5, 3.0, 1.0),
    (1.0, 2.0, 1.0, 3.0),
    (3.0, 2.0, 1.0, 1.0),
    (3.0, 3.0, 3.0, 3.0),
];
pub const TABLE2_SAMPLE_SIZES: [usize; 4] = [30, 50, 100, 200];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub theta_grid: Vec<BlfrParams>,
    pub n_grid: Vec<usize>,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_family")]
    pub family: Family,
}

fn default_replications() -> usize {
    DEFAULT_REPLICATIONS
}

fn default_seed() -> u64 {
    DEFAULT_STUDY_SEED
}

fn default_family() -> Family {
    Family::Blfr
}

impl StudyConfig {
    /// The published design at a chosen replication count.
    pub fn table2(replications: usize, seed: u64) -> Self {
        Self {
            theta_grid: TABLE2_THETAS
                .iter()
                .map(|&(al, be, a, b)| BlfrParams::new(a, b, al, be).expect("valid preset"))
                .collect(),
            n_grid: TABLE2_SAMPLE_SIZES.to_vec(),
            replications,
            seed,
            family: Family::Blfr,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 2 {
            return Err(Error::Config(format!(
                "replications must be at least 2, got {}",
                self.replications
            )));
        }
        if self.theta_grid.is_empty() {
            return Err(Error::Config("theta_grid is empty".into()));
        }
        if self.n_grid.is_empty() {
            return Err(Error::Config("n_grid is empty".into()));
        }
        if let Some(n) = self.n_grid.iter().find(|n| **n < self.family.k().max(2)) {
            return Err(Error::Config(format!(
                "sample size {n} is too small for {} ({} free parameters)",
                self.family,
                self.family.k()
            )));
        }
        if let Some(t) = self.theta_grid.iter().find(|t| !self.family.contains(t)) {
            return Err(Error::Config(format!(
                "{t} does not satisfy the pins of {}",
                self.family
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: StudyConfig = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("study config JSON: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    /// Parses the `key = value` format:
    ///
    /// ```text
    /// # comment
    /// preset = table2            # optional; fills theta and n
    /// theta = alpha=0.5 beta=0.5 a=1 b=1   # repeatable
    /// n = 30, 200
    /// replications = 500
    /// seed = 7
    /// family = blfr
    /// ```
    ///
    /// Explicit `theta` and `n` lines replace the preset's grids.
    pub fn from_key_value(text: &str) -> Result<Self> {
        let mut preset = None;
        let mut thetas = Vec::new();
        let mut ns: Option<Vec<usize>> = None;
        let mut replications = DEFAULT_REPLICATIONS;
        let mut seed = DEFAULT_STUDY_SEED;
        let mut family = Family::Blfr;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config(format!("line {}: {msg}", lineno + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "preset" => {
                    if value != "table2" {
                        return Err(err(format!("unknown preset '{value}'")));
                    }
                    preset = Some(StudyConfig::table2(
                        DEFAULT_REPLICATIONS,
                        DEFAULT_STUDY_SEED,
                    ));
                }
                "theta" => thetas.push(parse_theta(value).map_err(|e| err(e.to_string()))?),
                "n" | "n_grid" => {
                    let v = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| err(format!("bad sample size '{s}'")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    ns = Some(v);
                }
                "replications" => {
                    replications = value
                        .parse()
                        .map_err(|_| err(format!("bad replications '{value}'")))?
                }
                "seed" => {
                    seed = value
                        .parse()
                        .map_err(|_| err(format!("bad seed '{value}'")))?
                }
                "family" => family = Family::from_str(value).map_err(|e| err(e.to_string()))?,
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        }
        let base = preset.unwrap_or(StudyConfig {
            theta_grid: Vec::new(),
            n_grid: Vec::new(),
            replications,
            seed,
            family,
        });
        let c = StudyConfig {
            theta_grid: if thetas.is_empty() {
                base.theta_grid
            } else {
                thetas
            },
            n_grid: ns.unwrap_or(base.n_grid),
            replications,
            seed,
            family,
        };
        c.validate()?;
        Ok(c)
    }

    /// JSON if the text starts with `{`, otherwise key = value.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_key_value(text)
        }
    }
}

/// `alpha=0.5 beta=0.5 a=1 b=1` (any order, whitespace or comma separated).
fn parse_theta(s: &str) -> Result<BlfrParams> {
    let mut v = [f64::NAN; 4];
    for tok in s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let (k, x) = tok
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected name=value in theta, got '{tok}'")))?;
        let p = Param::from_str(k.trim())?;
        v[p.index()] = x
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad value '{x}' for {p}")))?;
    }
    if let Some(p) = Param::ALL.iter().find(|p| v[p.index()].is_nan()) {
        return Err(Error::Config(format!("theta is missing {p}")));
    }
    BlfrParams::from_array(v)
}

/// One value per parameter, in the (α, β, a, b) order of the study table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamValues {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
}

impl ParamValues {
    fn from_array(v: [f64; 4]) -> Self {
        Self {
            a: v[0],
            b: v[1],
            alpha: v[2],
            beta: v[3],
        }
    }

    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::A => self.a,
            Param::B => self.b,
            Param::Alpha => self.alpha,
            Param::Beta => self.beta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyCell {
    pub theta: BlfrParams,
    pub n: usize,
    /// Mean of the estimates over converged replications; `None` if none converged.
    pub average_estimates: Option<ParamValues>,
    /// Sample standard deviation (divisor m − 1); `None` with fewer than 2 converged.
    pub sd_estimates: Option<ParamValues>,
    pub convergence_rate: f64,
    pub replications_used: usize,
    pub replications_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub config: StudyConfig,
    pub rng: RngInfo,
    pub cells: Vec<StudyCell>,
    pub warnings: Vec<String>,
}

fn aggregate(theta: BlfrParams, n: usize, estimates: &[[f64; 4]], failed: usize) -> StudyCell {
    let m = estimates.len();
    let total = m + failed;
    let mean = (m > 0).then(|| {
        let mut s = [0.0; 4];
        for e in estimates {
            for k in 0..4 {
                s[k] += e[k];
            }
        }
        s.map(|v| v / m as f64)
    });
    let sd = mean.filter(|_| m >= 2).map(|mu| {
        let mut s = [0.0; 4];
        for e in estimates {
            for k in 0..4 {
                s[k] += (e[k] - mu[k]).powi(2);
            }
        }
        s.map(|v| (v / (m - 1) as f64).sqrt())
    });
    StudyCell {
        theta,
        n,
        average_estimates: mean.map(ParamValues::from_array),
        sd_estimates: sd.map(ParamValues::from_array),
        convergence_rate: m as f64 / total as f64,
        replications_used: m,
        replications_failed: failed,
    }
}

/// Runs every (θ, n) cell. Replication r of cell c draws its sample from
/// the child stream `[c, r]` of the configured seed, so cells and
/// replications are reproducible independently of scheduling.
pub fn run_study(config: &StudyConfig) -> Result<StudyResult> {
    config.validate()?;
    let opts = FitOptions::default();
    let cells: Vec<(BlfrParams, usize)> = config
        .theta_grid
        .iter()
        .flat_map(|t| config.n_grid.iter().map(move |&n| (*t, n)))
        .collect();
    let reps = config.replications;
    let outcomes: Vec<Option<[f64; 4]>> = (0..cells.len() * reps)
        .into_par_iter()
        .map(|task| {
            let (c, r) = (task / reps, task % reps);
            let (theta, n) = cells[c];
            let mut rng = RngState::child(config.seed, &[c as u64, r as u64]);
            let x = sample_blfr(n, &theta, &mut rng).ok()?;
            let data = Dataset::new(x).ok()?;
            fit(config.family, &data, &opts)
                .ok()
                .map(|f| f.theta_hat.to_array())
        })
        .collect();
    let mut out = Vec::with_capacity(cells.len());
    let mut warnings = Vec::new();
    for (c, &(theta, n)) in cells.iter().enumerate() {
        let chunk = &outcomes[c * reps..(c + 1) * reps];
        let ok: Vec<[f64; 4]> = chunk.iter().flatten().copied().collect();
        let cell = aggregate(theta, n, &ok, reps - ok.len());
        if cell.convergence_rate < LOW_CONVERGENCE_RATE {
            warnings.push(format!(
                "cell {theta}, n={n}: convergence rate {} is below {LOW_CONVERGENCE_RATE}",
                cell.convergence_rate
            ));
        }
        out.push(cell);
    }
    Ok(StudyResult {
        config: config.clone(),
        rng: RngInfo {
            seed: config.seed,
            algorithm_id: ALGORITHM_ID.to_string(),
        },
        cells: out,
        warnings,
    })
}

pub const STUDY_CSV_HEADER: &str = "n,alpha_true,beta_true,a_true,b_true,ae_alpha,ae_beta,ae_a,ae_b,sd_alpha,sd_beta,sd_a,sd_b,convergence_rate,replications_used,replications_failed";

fn opt_block(v: Option<ParamValues>) -> String {
    match v {
        Some(p) => format!("{},{},{},{}", p.alpha, p.beta, p.a, p.b),
        None => ",,,".to_string(),
    }
}

/// One row per cell, θ grid outer and n grid inner.
pub fn study_to_csv(result: &StudyResult) -> String {
    let mut s = String::from(STUDY_CSV_HEADER);
    s.push('\n');
    for c in &result.cells {
        let t = &c.theta;
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            c.n,
            t.alpha(),
            t.beta(),
            t.a(),
            t.b(),
            opt_block(c.average_estimates),
            opt_block(c.sd_estimates),
            c.convergence_rate,
            c.replications_used,
            c.replications_failed
        ));
    }
    s
}

pub fn study_to_json(result: &StudyResult) -> String {
    serde_json::to_string_pretty(result).expect("study result serializes")
}

/// Reads back the cells written by [`study_to_csv`].
pub fn study_cells_from_csv(text: &str) -> Result<Vec<StudyCell>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == STUDY_CSV_HEADER => {}
        _ => return Err(Error::Config("study CSV header does not match".into())),
    }
    let mut cells = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        let err = |m: &str| Error::Config(format!("study CSV row {}: {m}", i + 2));
        if f.len() != 16 {
            return Err(err("expected 16 fields"));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| err(&format!("bad number '{s}'")))
        };
        let block = |k: usize| -> Result<Option<ParamValues>> {
            if f[k..k + 4].iter().all(|s| s.trim().is_empty()) {
                return Ok(None);
            }
            Ok(Some(ParamValues {
                alpha: num(f[k])?,
                beta: num(f[k + 1])?,
                a: num(f[k + 2])?,
                b: num(f[k + 3])?,
            }))
        };
        let int = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| err(&format!("bad count '{s}'")))
        };
        cells.push(StudyCell {
            n: int(f[0])?,
            theta: BlfrParams::new(num(f[3])?, num(f[4])?, num(f[1])?, num(f[2])?)?,
            average_estimates: block(5)?,
            sd_estimates: block(9)?,
            convergence_rate: num(f[13])?,
            replications_used: int(f[14])?,
            replications_failed: int(f[15])?,
        });
    }
    Ok(cells)
}
