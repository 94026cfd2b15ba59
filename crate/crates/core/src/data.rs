//! Complete (uncensored) lifetime samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Times to first failure of 50 devices (Aarset, 1987).
pub const AARSET: [f64; 50] = [
    0.1, 0.2, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 6.0, 7.0, 11.0, 12.0, 18.0, 18.0, 18.0, 18.0,
    18.0, 21.0, 32.0, 36.0, 40.0, 45.0, 46.0, 47.0, 50.0, 55.0, 60.0, 63.0, 63.0, 67.0, 67.0, 67.0,
    67.0, 72.0, 75.0, 79.0, 82.0, 82.0, 83.0, 84.0, 84.0, 84.0, 85.0, 85.0, 85.0, 85.0, 85.0, 86.0,
    86.0,
];

/// A sample of strictly positive, finite lifetimes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDataset")]
pub struct Dataset {
    observations: Vec<f64>,
    n: usize,
}

#[derive(Deserialize)]
struct RawDataset {
    observations: Vec<f64>,
}

impl TryFrom<RawDataset> for Dataset {
    type Error = Error;

    fn try_from(r: RawDataset) -> Result<Self> {
        Dataset::new(r.observations)
    }
}

impl Dataset {
    pub fn new(observations: Vec<f64>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::InvalidData("dataset is empty".into()));
        }
        if let Some((i, x)) = observations
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.is_finite() && **x > 0.0))
        {
            return Err(Error::InvalidData(format!(
                "observation {} is {x}; lifetimes must be positive and finite",
                i + 1
            )));
        }
        let n = observations.len();
        Ok(Self { observations, n })
    }

    /// The embedded Aarset failure-time data.
    pub fn aarset() -> Self {
        Self::new(AARSET.to_vec()).expect("fixture is valid")
    }

    pub fn observations(&self) -> &[f64] {
        &self.observations
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sum(&self) -> f64 {
        self.observations.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.n as f64
    }

    pub fn min(&self) -> f64 {
        self.observations
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.observations
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Observations in increasing order.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.observations.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aarset_summary() {
        let d = Dataset::aarset();
        assert_eq!(d.n(), 50);
        assert_eq!(d.min(), 0.1);
        assert_eq!(d.max(), 86.0);
        // integer part 2284 plus 0.1 + 0.2
        let int_sum: f64 = AARSET.iter().filter(|x| x.fract() == 0.0).sum();
        assert_eq!(int_sum, 2284.0);
        assert!((d.sum() - 2284.3).abs() < 1e-9);
        assert!((d.mean() - 45.686).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Dataset::new(vec![]).is_err());
        assert!(Dataset::new(vec![1.0, 0.0]).is_err());
        assert!(Dataset::new(vec![1.0, -2.0]).is_err());
        assert!(Dataset::new(vec![f64::NAN]).is_err());
        let d: std::result::Result<Dataset, _> =
            serde_json::from_str(r#"{"observations":[1.0,0.0]}"#);
        assert!(d.is_err());
    }
}
