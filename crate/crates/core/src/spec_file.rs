//! JSON spec files: a construction and an optional measure.
//!
//! ```json
//! {
//!   "preperiod": [],
//!   "period": [{ "n": 3, "m": 2, "digits": [[0, 0], [1, 1], [2, 0]] }],
//!   "measure": { "p": "uniform" }
//! }
//! ```
//!
//! An explicit measure lists `[level, i, j, numerator, denominator]` rows,
//! where `level` counts stored levels from 1 (preperiod first, then the
//! period). Digits that are not listed get probability 0.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::construction::{Construction, LevelSpec};
use crate::error::{Error, Result};
use crate::measure::ProbAssignment;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub preperiod: Vec<LevelSpec>,
    pub period: Vec<LevelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub p: ProbSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProbSpec {
    /// Only `"uniform"` is recognised.
    Named(String),
    Entries(Vec<(usize, u32, u32, u64, u64)>),
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SpecFile::parse(&text)
    }

    pub fn from_construction(c: &Construction, p: Option<&ProbAssignment>) -> Self {
        let measure = p.map(|p| {
            let entries = p
                .stored()
                .iter()
                .enumerate()
                .flat_map(|(idx, probs)| {
                    probs.iter().map(move |(&(i, j), x)| {
                        let num = x.numer().try_into().expect("probability numerator fits u64");
                        let den = x.denom().try_into().expect("probability denominator fits u64");
                        (idx + 1, i, j, num, den)
                    })
                })
                .collect();
            MeasureSpec {
                p: ProbSpec::Entries(entries),
            }
        });
        SpecFile {
            preperiod: c.preperiod().iter().map(LevelSpec::from).collect(),
            period: c.period().iter().map(LevelSpec::from).collect(),
            measure,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes") + "\n"
    }

    pub fn construction(&self) -> Result<Construction> {
        Construction::from_specs(&self.preperiod, &self.period)
    }

    /// The construction and, when present, the validated measure.
    pub fn build(&self) -> Result<(Construction, Option<ProbAssignment>)> {
        let c = self.construction()?;
        let p = match &self.measure {
            None => None,
            Some(m) => Some(build_measure(&c, &m.p)?),
        };
        Ok((c, p))
    }
}

fn build_measure(c: &Construction, spec: &ProbSpec) -> Result<ProbAssignment> {
    match spec {
        ProbSpec::Named(name) if name == "uniform" => Ok(ProbAssignment::uniform(c)),
        ProbSpec::Named(name) => Err(Error::Parse(format!("unknown measure {name:?}, expected \"uniform\""))),
        ProbSpec::Entries(rows) => {
            let mut levels = vec![BTreeMap::new(); c.stored_len()];
            for &(level, i, j, num, den) in rows {
                if level == 0 || level > c.stored_len() {
                    return Err(Error::InvalidProbability(format!(
                        "level {level} does not exist (spec has {} level(s))",
                        c.stored_len()
                    )));
                }
                if den == 0 {
                    return Err(Error::InvalidProbability(format!(
                        "level {level}: zero denominator at ({i}, {j})"
                    )));
                }
                let p = BigRational::new(BigInt::from(num), BigInt::from(den));
                if levels[level - 1].insert((i, j), p).is_some() {
                    return Err(Error::InvalidProbability(format!(
                        "level {level}: digit ({i}, {j}) listed twice"
                    )));
                }
            }
            ProbAssignment::new(c, levels)
        }
    }
}
