//! JSON shapes for command output.
//!
//! Integers that can pass 2⁵³ (counts, seeds, sample sizes) are decimal
//! strings; reals are six-significant-digit strings such as `1.03219e-4`.
//! Root coordinates stay JSON numbers, since every command caps them far
//! below that.

use kmroots_core::sampler::{sci6_f64, EstimateReport};
use kmroots_core::string_data::format_word;
use kmroots_core::{FilterLevel, RootClass, StringData, VisitStats, Weight};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::parallel::BoundReport;

fn root(w: &Weight) -> [u64; 2] {
    let (c0, c1) = w.small().expect("command weights fit in u64");
    [c0, c1]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultJson {
    pub root: [u64; 2],
    pub r: u64,
    pub class: String,
    pub multiplicity: String,
}

impl MultJson {
    pub fn new(weight: &Weight, r: u64, class: RootClass, multiplicity: &BigUint) -> Self {
        Self {
            root: root(weight),
            r,
            class: class.as_str().to_owned(),
            multiplicity: multiplicity.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub root: [u64; 2],
    pub r: u64,
    pub theorem: String,
    pub class: String,
    /// The count for `theorem`.
    pub bound: String,
    pub dyck_total: String,
    pub count_thm1: String,
    pub count_thm2: String,
    pub elapsed_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub paths: Option<Vec<String>>,
}

impl BoundJson {
    pub fn new(report: &BoundReport, theorem: FilterLevel, class: RootClass) -> Self {
        let c = &report.counts;
        let bound = match theorem {
            FilterLevel::Dyck => &c.dyck_total,
            FilterLevel::Thm1 => &c.count_thm1,
            FilterLevel::Thm2 => &c.count_thm2,
        };
        Self {
            root: root(&report.weight),
            r: report.r,
            theorem: theorem.as_str().to_owned(),
            class: class.as_str().to_owned(),
            bound: bound.to_string(),
            dyck_total: c.dyck_total.to_string(),
            count_thm1: c.count_thm1.to_string(),
            count_thm2: c.count_thm2.to_string(),
            elapsed_seconds: report.elapsed.as_secs_f64(),
            paths: report.paths.as_ref().map(|ps| words(ps)),
        }
    }
}

pub fn words(paths: &[StringData]) -> Vec<String> {
    paths.iter().map(|p| format_word(&p.to_word())).collect()
}

/// Monte Carlo output. Deliberately carries nothing that depends on the
/// thread count or wall clock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateJson {
    pub root: [u64; 2],
    pub r: u64,
    pub theorem: String,
    pub samples: String,
    pub hits: String,
    pub fraction: String,
    pub dyck_total: String,
    pub estimate: String,
    pub std_error: String,
    pub seed: String,
    pub chunk_size: String,
}

impl From<&EstimateReport> for EstimateJson {
    fn from(rep: &EstimateReport) -> Self {
        Self {
            root: root(&rep.weight),
            r: rep.r,
            theorem: rep.filter.as_str().to_owned(),
            samples: rep.samples.to_string(),
            hits: rep.hits.to_string(),
            fraction: rep.fraction_sci(),
            dyck_total: rep.dyck_total.to_string(),
            estimate: rep.estimate_sci(),
            std_error: rep.std_error_sci(),
            seed: rep.seed.to_string(),
            chunk_size: rep.chunk_size.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateJson {
    pub word: String,
    pub r: u64,
    pub runs: Vec<u64>,
    pub weight: [u64; 2],
    pub littelmann_valid: bool,
    pub is_dyck: bool,
    pub cond1: bool,
    /// `null` for odd-length data, where the condition is undefined.
    pub cond2: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsJson {
    pub k: String,
    pub distance: String,
    pub samples: String,
    pub seed: String,
    pub chunk_size: String,
    pub mean: String,
    pub std_error: String,
    /// `4·distance + 4`, the large-`k` value of the mean.
    pub limit: String,
}

impl From<&VisitStats> for StatsJson {
    fn from(s: &VisitStats) -> Self {
        Self {
            k: s.k.to_string(),
            distance: s.distance.to_string(),
            samples: s.samples.to_string(),
            seed: s.seed.to_string(),
            chunk_size: s.chunk_size.to_string(),
            mean: sci6_f64(s.mean()),
            std_error: sci6_f64(s.std_error()),
            limit: (BigUint::from(s.distance) * 4u32 + 4u32).to_string(),
        }
    }
}

/// One row of a multiplicity/bound table. Bound cells hold `skipped` when
/// the cost guard tripped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub root_c0: u64,
    pub root_c1: u64,
    pub multiplicity: String,
    pub bound1: String,
    pub bound2: String,
    pub gap1: String,
    pub gap2: String,
}

pub const SKIPPED: &str = "skipped";

impl TableRow {
    pub fn new(n: u64, weight: &Weight, multiplicity: &BigUint, bounds: Option<(&BigUint, &BigUint)>) -> Self {
        let [root_c0, root_c1] = root(weight);
        let gap = |b: &BigUint| (BigInt::from(b.clone()) - BigInt::from(multiplicity.clone())).to_string();
        let (bound1, bound2, gap1, gap2) = match bounds {
            Some((b1, b2)) => (b1.to_string(), b2.to_string(), gap(b1), gap(b2)),
            None => (SKIPPED.into(), SKIPPED.into(), SKIPPED.into(), SKIPPED.into()),
        };
        Self {
            n,
            root_c0,
            root_c1,
            multiplicity: multiplicity.to_string(),
            bound1,
            bound2,
            gap1,
            gap2,
        }
    }
}

pub const TABLE_HEADER: &str = "n,root_c0,root_c1,multiplicity,bound1,bound2,gap1,gap2";

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n, r.root_c0, r.root_c1, r.multiplicity, r.bound1, r.bound2, r.gap1, r.gap2
        ));
    }
    out
}

/// Flattens a JSON object into a two-line CSV. Arrays are joined with
/// spaces, `null` becomes an empty cell.
pub fn object_csv(value: &serde_json::Value) -> String {
    let Some(obj) = value.as_object() else {
        return format!("{value}\n");
    };
    let cell = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => String::new(),
        serde_json::Value::Array(items) => items
            .iter()
            .map(|i| i.as_str().map_or_else(|| i.to_string(), str::to_owned))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    };
    let header: Vec<&str> = obj.keys().map(String::as_str).collect();
    let row: Vec<String> = obj.values().map(cell).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}
