//! Serializable run reports. Every float is rounded to 9 significant digits
//! and carries the diagnostics of the sequence it summarizes.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construction::{ratio_to_f64, Construction};
use crate::dimension::{regime, Convergence, DimensionReport, GapLimit, Regime};
use crate::measure::{FibrePath, MeasureDimensions, Validity};
use crate::oracle::{CheckResult, LocalDimSample, VerifyOptions, VerifyReport};

/// `x` rounded to 9 significant digits.
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSummary {
    pub preperiod_len: usize,
    pub period_len: usize,
    pub n_plus: u32,
    pub regime: Regime,
}

/// Tail statistics of a finite sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub depth: usize,
    pub tail_start: usize,
    pub tail_min: f64,
    pub tail_max: f64,
    pub last: f64,
    pub oscillation: f64,
}

impl From<&Convergence> for Diagnostic {
    fn from(c: &Convergence) -> Self {
        Diagnostic {
            depth: c.depth,
            tail_start: c.tail_start,
            tail_min: round9(c.tail_min),
            tail_max: round9(c.tail_max),
            last: round9(c.last),
            oscillation: round9(c.oscillation()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapDiagnostic {
    pub gap_limit: usize,
    pub scan_depth: usize,
    pub error_bar: f64,
    pub stabilized: bool,
    pub sequence: Diagnostic,
}

impl From<&GapLimit> for GapDiagnostic {
    fn from(g: &GapLimit) -> Self {
        GapDiagnostic {
            gap_limit: g.gap_limit,
            scan_depth: g.scan_depth,
            error_bar: round9(g.error_bar),
            stabilized: g.stabilized,
            sequence: Diagnostic::from(&g.sequence),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionSection {
    pub window: usize,
    pub lower_box: f64,
    /// Also the packing dimension.
    pub upper_box: f64,
    pub lower_dim: f64,
    pub assouad: f64,
    pub box_sequence: Diagnostic,
    pub lower_sequence: GapDiagnostic,
    pub assouad_sequence: GapDiagnostic,
}

impl From<&DimensionReport> for DimensionSection {
    fn from(d: &DimensionReport) -> Self {
        DimensionSection {
            window: d.window,
            lower_box: round9(d.lower_box),
            upper_box: round9(d.upper_box),
            lower_dim: round9(d.lower_dim),
            assouad: round9(d.assouad),
            box_sequence: Diagnostic::from(&d.box_dims.convergence),
            lower_sequence: GapDiagnostic::from(&d.lower),
            assouad_sequence: GapDiagnostic::from(&d.upper),
        }
    }
}

/// Exact fraction as `"a/b"` plus its float value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fraction {
    pub exact: String,
    pub value: f64,
}

impl From<&BigRational> for Fraction {
    fn from(r: &BigRational) -> Self {
        Fraction {
            exact: format!("{}/{}", r.numer(), r.denom()),
            value: round9(ratio_to_f64(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    pub fsc: bool,
    pub fsc_frequency: Fraction,
    pub bsc: bool,
    pub bsc_left: Fraction,
    pub bsc_right: Fraction,
    pub bsc_bottom: Fraction,
    pub bsc_top: Fraction,
    pub msc: bool,
    pub msc_max_boundary_marginal: Fraction,
}

/// Summary of sampled local ratios over the tail `tail_start..=k_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalSection {
    pub seed: u64,
    pub samples: usize,
    pub k_max: usize,
    pub tail_start: usize,
    pub tail_min: f64,
    pub tail_max: f64,
    pub mean_last: f64,
}

impl LocalSection {
    pub fn new(seed: u64, k_max: usize, samples: &[LocalDimSample]) -> Self {
        let tail_start = (k_max - k_max / 2).max(1);
        let (mut lo, mut hi, mut last) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for s in samples {
            let (a, b) = s.range(tail_start, k_max);
            lo = lo.min(a);
            hi = hi.max(b);
            last += s.ratio(k_max);
        }
        LocalSection {
            seed,
            samples: samples.len(),
            k_max,
            tail_start,
            tail_min: round9(lo),
            tail_max: round9(hi),
            mean_last: round9(last / samples.len() as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSection {
    pub window: usize,
    pub entropy_lower: f64,
    pub entropy_upper: f64,
    pub hausdorff: f64,
    pub packing: f64,
    pub validity: Validity,
    pub entropy_sequence: Diagnostic,
    pub conditions: Conditions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibre_path: Option<FibrePath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalSection>,
}

impl MeasureSection {
    pub fn new(d: &MeasureDimensions, window: usize) -> Self {
        MeasureSection {
            window,
            entropy_lower: round9(d.entropy.lower),
            entropy_upper: round9(d.entropy.upper),
            hausdorff: round9(d.hausdorff),
            packing: round9(d.packing),
            validity: d.validity,
            entropy_sequence: Diagnostic::from(&d.entropy.convergence),
            conditions: Conditions {
                fsc: d.fsc.holds,
                fsc_frequency: Fraction::from(&d.fsc.frequency),
                bsc: d.bsc.holds,
                bsc_left: Fraction::from(&d.bsc.left),
                bsc_right: Fraction::from(&d.bsc.right),
                bsc_bottom: Fraction::from(&d.bsc.bottom),
                bsc_top: Fraction::from(&d.bsc.top),
                msc: d.msc.holds,
                msc_max_boundary_marginal: Fraction::from(&d.msc.max_boundary_marginal),
            },
            fibre_path: d.fibre_path.map(|f| FibrePath {
                separated: f.separated,
                set_dimension: round9(f.set_dimension),
            }),
            local: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub max_depth: usize,
    pub pairs_depth: usize,
    pub guard: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl OracleSection {
    pub fn new(report: &VerifyReport, opts: &VerifyOptions) -> Self {
        OracleSection {
            max_depth: opts.max_depth,
            pairs_depth: opts.pairs_depth,
            guard: u64::try_from(opts.guard).unwrap_or(u64::MAX),
            passed: report.passed(),
            checks: report.checks.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub construction: ConstructionSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<DimensionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
}

impl RunReport {
    pub fn new(c: &Construction) -> Self {
        RunReport {
            construction: ConstructionSummary {
                preperiod_len: c.preperiod().len(),
                period_len: c.period().len(),
                n_plus: c.n_plus(),
                regime: regime(c),
            },
            dimensions: None,
            measure: None,
            oracle: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// `key,value` lines with dotted key paths; array elements are indexed.
    pub fn to_csv(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut rows = Vec::new();
        flatten("", &value, &mut rows);
        let mut out = String::from("key,value\n");
        for (key, val) in rows {
            out.push_str(&csv_field(&key));
            out.push(',');
            out.push_str(&csv_field(&val));
            out.push('\n');
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
