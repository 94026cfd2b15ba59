use std::fs;
use std::path::Path;

use anyhow::Context;
use blfr::{Dataset, Error};

/// Name that selects the embedded Aarset sample instead of a file.
pub const AARSET_NAME: &str = "aarset";

/// Parses lifetimes separated by whitespace and/or commas. Everything after
/// a `#` on a line is ignored.
pub fn parse_observations(text: &str) -> blfr::Result<Dataset> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for tok in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v: f64 = tok.parse().map_err(|_| {
                Error::InvalidData(format!("line {}: cannot parse '{tok}' as a number", i + 1))
            })?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidData(format!(
                    "line {}: '{tok}' is not a positive finite lifetime",
                    i + 1
                )));
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::InvalidData("no observations found".into()));
    }
    Dataset::new(values)
}

/// Reads a data file, or returns the fixture when `source` is `aarset`.
pub fn ingest_data(source: &str) -> anyhow::Result<Dataset> {
    if source.eq_ignore_ascii_case(AARSET_NAME) {
        return Ok(Dataset::aarset());
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading data file {}", path.display()))?;
    parse_observations(&text).with_context(|| format!("parsing data file {}", path.display()))
}
