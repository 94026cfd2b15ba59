//! Parameter vector θ = (a, b, α, β) and the nested sub-model families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One coordinate of θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    A,
    B,
    Alpha,
    Beta,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::Alpha, Param::Beta];

    /// Position in the canonical (a, b, α, β) ordering.
    pub fn index(self) -> usize {
        match self {
            Param::A => 0,
            Param::B => 1,
            Param::Alpha => 2,
            Param::Beta => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::Alpha => "alpha",
            Param::Beta => "beta",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Param::A),
            "b" => Ok(Param::B),
            "alpha" => Ok(Param::Alpha),
            "beta" => Ok(Param::Beta),
            other => Err(Error::InvalidParams(format!(
                "unknown parameter name `{other}`"
            ))),
        }
    }
}

/// θ = (a, b, α, β) with a, b ≥ 0, a + b > 0 and α, β > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct BlfrParams {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawParams> for BlfrParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        BlfrParams::new(r.a, r.b, r.alpha, r.beta)
    }
}

impl BlfrParams {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "all parameters must be finite, got (a={a}, b={b}, alpha={alpha}, beta={beta})"
            )));
        }
        if a < 0.0 || b < 0.0 {
            return Err(Error::InvalidParams(format!(
                "a and b must be non-negative, got a={a}, b={b}"
            )));
        }
        if a + b <= 0.0 {
            return Err(Error::InvalidParams("a and b cannot both be zero".into()));
        }
        if alpha <= 0.0 || beta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be positive, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { a, b, alpha, beta })
    }

    /// Builds from an (a, b, α, β) array.
    pub fn from_array(v: [f64; 4]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn get(&self, p: Param) -> f64 {
        self.to_array()[p.index()]
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.a, self.b, self.alpha, self.beta]
    }

    /// Copy with one coordinate replaced.
    pub fn with(&self, p: Param, value: f64) -> Result<Self> {
        let mut v = self.to_array();
        v[p.index()] = value;
        Self::from_array(v)
    }
}

impl fmt::Display for BlfrParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a={}, b={}, alpha={}, beta={})",
            self.a, self.b, self.alpha, self.beta
        )
    }
}

/// The BLFR model and its pinned special cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "FamilyRepr", try_from = "FamilyRepr")]
pub enum Family {
    Blfr,
    Glfr,
    Lfr,
    Gr,
    Ge,
    Rayleigh,
    Exp,
}

impl Family {
    /// All seven families, full model first.
    pub const ALL: [Family; 7] = [
        Family::Blfr,
        Family::Glfr,
        Family::Lfr,
        Family::Gr,
        Family::Ge,
        Family::Rayleigh,
        Family::Exp,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Blfr => "BLFR",
            Family::Glfr => "GLFR",
            Family::Lfr => "LFR",
            Family::Gr => "GR",
            Family::Ge => "GE",
            Family::Rayleigh => "Rayleigh",
            Family::Exp => "Exp",
        }
    }

    /// Parameters estimated for this family, in canonical order.
    pub fn free_params(self) -> &'static [Param] {
        use Param::*;
        match self {
            Family::Blfr => &[A, B, Alpha, Beta],
            Family::Glfr => &[A, B, Alpha],
            Family::Lfr => &[A, B],
            Family::Gr => &[B, Alpha],
            Family::Ge => &[A, Alpha],
            Family::Rayleigh => &[B],
            Family::Exp => &[A],
        }
    }

    /// Pinned parameters and their values.
    pub fn fixed(self) -> &'static [(Param, f64)] {
        use Param::*;
        match self {
            Family::Blfr => &[],
            Family::Glfr => &[(Beta, 1.0)],
            Family::Lfr => &[(Alpha, 1.0), (Beta, 1.0)],
            Family::Gr => &[(A, 0.0), (Beta, 1.0)],
            Family::Ge => &[(B, 0.0), (Beta, 1.0)],
            Family::Rayleigh => &[(A, 0.0), (Alpha, 1.0), (Beta, 1.0)],
            Family::Exp => &[(B, 0.0), (Alpha, 1.0), (Beta, 1.0)],
        }
    }

    /// Number of free parameters.
    pub fn k(self) -> usize {
        self.free_params().len()
    }

    pub fn is_free(self, p: Param) -> bool {
        self.free_params().contains(&p)
    }

    /// Overwrites the pinned coordinates of `v` (an (a, b, α, β) array).
    pub fn pin_array(self, mut v: [f64; 4]) -> [f64; 4] {
        for &(p, value) in self.fixed() {
            v[p.index()] = value;
        }
        v
    }

    /// Assembles a full parameter vector from free-parameter values.
    pub fn assemble(self, free: &[f64]) -> Result<BlfrParams> {
        if free.len() != self.k() {
            return Err(Error::InvalidParams(format!(
                "{} has {} free parameters, got {} values",
                self.tag(),
                self.k(),
                free.len()
            )));
        }
        let mut v = self.pin_array([0.0; 4]);
        for (&p, &x) in self.free_params().iter().zip(free) {
            v[p.index()] = x;
        }
        BlfrParams::from_array(v)
    }

    /// Free-parameter values of `theta`, in [`Family::free_params`] order.
    pub fn extract(self, theta: &BlfrParams) -> Vec<f64> {
        self.free_params().iter().map(|&p| theta.get(p)).collect()
    }

    /// Whether `theta` satisfies this family's pins exactly.
    pub fn contains(self, theta: &BlfrParams) -> bool {
        self.fixed().iter().all(|&(p, v)| theta.get(p) == v)
    }

    /// True when this family is obtained from `alt` by pinning extra parameters.
    pub fn is_nested_in(self, alt: Family) -> bool {
        let free_ok = self.free_params().iter().all(|p| alt.is_free(*p));
        let pins_ok = alt
            .fixed()
            .iter()
            .all(|&(p, v)| self.fixed().iter().any(|&(q, w)| q == p && w == v));
        free_ok && pins_ok
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "blfr" => Ok(Family::Blfr),
            "glfr" => Ok(Family::Glfr),
            "lfr" => Ok(Family::Lfr),
            "gr" => Ok(Family::Gr),
            "ge" => Ok(Family::Ge),
            "rayleigh" => Ok(Family::Rayleigh),
            "exp" | "exponential" => Ok(Family::Exp),
            other => Err(Error::Config(format!(
                "unknown family `{other}` (expected one of blfr, glfr, lfr, gr, ge, rayleigh, exp)"
            ))),
        }
    }
}

/// Wire form of [`Family`]: `{tag, free_params, fixed}`; a bare tag string is
/// also accepted on input.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FamilyRepr {
    Full {
        tag: String,
        free_params: Vec<Param>,
        fixed: BTreeMap<Param, f64>,
    },
    Tag(String),
}

impl From<Family> for FamilyRepr {
    fn from(f: Family) -> Self {
        FamilyRepr::Full {
            tag: f.tag().to_string(),
            free_params: f.free_params().to_vec(),
            fixed: f.fixed().iter().copied().collect(),
        }
    }
}

impl TryFrom<FamilyRepr> for Family {
    type Error = Error;

    fn try_from(r: FamilyRepr) -> Result<Self> {
        match r {
            FamilyRepr::Tag(t) => t.parse(),
            FamilyRepr::Full {
                tag,
                free_params,
                fixed,
            } => {
                let f: Family = tag.parse()?;
                let want_fixed: BTreeMap<Param, f64> = f.fixed().iter().copied().collect();
                if free_params != f.free_params() || fixed != want_fixed {
                    return Err(Error::Config(format!(
                        "free/fixed parameter lists do not match family {tag}"
                    )));
                }
                Ok(f)
            }
        }
    }
}
