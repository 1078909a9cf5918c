//! The divisor-sum upper bound on the number of `H(2)`-orbits and its
//! comparison with computed orbit counts.

use serde::Serialize;

use crate::arith::{d_int, is_valid_n, FieldParam};
use crate::enumeration::{a_bound, enumerate_b};
use crate::error::Result;
use crate::orbits::{partition_of, ExplorationConfig};
use crate::par;

/// `d(n) + Σ d(n - j²)` over `1 ≤ j ≤ J` (largest `J` with `2J² ≤ n`) for `n > 0`,
/// and `d(n) + Σ d(j² - n)` over `1 ≤ j ≤ -n` for `n < 0`.
pub fn theorem_bound(n: i64) -> Result<u64> {
    let n = FieldParam::new(n)?.get();
    let mut total = d_int(n)?;
    let top = a_bound(n)?;
    for j in 1..=top {
        total += d_int(j * j - n)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: i64,
    #[serde(rename = "bound")]
    pub bound_value: u64,
    #[serde(rename = "bplus")]
    pub bplus_size: usize,
    #[serde(rename = "bzero")]
    pub bzero_size: usize,
    #[serde(rename = "count")]
    pub computed_count: usize,
    #[serde(rename = "stable")]
    pub computed_stable: bool,
    pub strict: bool,
}

impl BoundReport {
    pub const CSV_HEADER: [&'static str; 7] =
        ["n", "bound", "bplus", "bzero", "count", "stable", "strict"];

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_csv_row(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(self).expect("report serializes");
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }
}

/// Writes a header and one row per report.
pub fn write_csv<W: std::io::Write>(out: W, reports: &[BoundReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record(BoundReport::CSV_HEADER)?;
    }
    for r in reports {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn bound_report(n: i64, lambda: i64, config: &ExplorationConfig) -> Result<BoundReport> {
    let bound_value = theorem_bound(n)?;
    let bset = enumerate_b(n)?;
    let partition = partition_of(&bset, lambda, config)?;
    let computed_count = partition.count();
    let computed_stable = partition.stable;
    Ok(BoundReport {
        n,
        bound_value,
        bplus_size: bset.counts.pos,
        bzero_size: bset.counts.zero,
        computed_count,
        computed_stable,
        strict: computed_stable && (computed_count as u64) < bound_value,
    })
}

/// Reports for the square-free values in `range`, ascending; other values are skipped.
///
/// `config_for` picks the exploration config per `n`.
pub fn survey<F>(range: std::ops::RangeInclusive<i64>, lambda: i64, config_for: F) -> Result<Vec<BoundReport>>
where
    F: Fn(i64) -> ExplorationConfig + Sync,
{
    let ns: Vec<i64> = range.filter(|&n| is_valid_n(n)).collect();
    par::map(&ns, |&n| bound_report(n, lambda, &config_for(n)))
        .into_iter()
        .collect()
}

/// Same as [`survey`], always on the calling thread.
pub fn survey_seq<F>(range: std::ops::RangeInclusive<i64>, lambda: i64, config_for: F) -> Result<Vec<BoundReport>>
where
    F: Fn(i64) -> ExplorationConfig,
{
    range
        .filter(|&n| is_valid_n(n))
        .map(|n| bound_report(n, lambda, &config_for(n)))
        .collect()
}
