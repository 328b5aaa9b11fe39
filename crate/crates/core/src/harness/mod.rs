//! Verification campaigns: suite planning, parallel execution, reports,
//! the conjecture scanner and single evaluations for the CLI.
//!
//! A campaign is planned up front as an ordered list of checks, so the
//! number of records always equals the grid size and random parameters are
//! drawn from a single seeded stream before any work is distributed.
//! Workers run checks in chunks; each chunk is written in grid order before
//! the next one starts.

mod checks;
mod compute;
mod config;
mod report;
mod scan;

use serde::{Deserialize, Serialize};

pub use checks::Check;
pub use compute::{compute, ComputeFamily, ComputeOutput, ComputeRequest};
pub use config::{CampaignConfig, ResolvedGrid, Suite};
pub use report::{ReportFormat, ReportWriter, CSV_HEADER};
pub use scan::{conjecture_checks, scan_conjecture, ConjecturePart, ScanSummary, DEFAULT_SCAN_P_MAX};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Records are produced and flushed in chunks of this many checks.
const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// One row of a campaign report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub suite: String,
    pub param_n: Option<u64>,
    pub param_p: Option<u64>,
    pub param_c: Option<i64>,
    pub param_d: Option<i64>,
    pub param_e: Option<u64>,
    pub param_seed: Option<u64>,
    pub computed: String,
    pub predicted: String,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
}

impl VerificationRecord {
    pub(crate) fn new(suite: impl Into<String>) -> Self {
        VerificationRecord {
            suite: suite.into(),
            param_n: None,
            param_p: None,
            param_c: None,
            param_d: None,
            param_e: None,
            param_seed: None,
            computed: String::new(),
            predicted: String::new(),
            verdict: Verdict::Skip,
            elapsed_ms: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Tally {
    pub fn add(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skip => self.skip += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skip
    }

    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut t = Tally::default();
        records.iter().for_each(|r| t.add(r.verdict));
        t
    }
}

/// Runs `checks` on a pool of `threads` workers, handing records to `sink`
/// in plan order.
pub fn execute_checks(
    checks: &[Check],
    threads: usize,
    mut sink: impl FnMut(&VerificationRecord) -> Result<()>,
) -> Result<Tally> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::usage(format!("cannot start worker pool: {e}")))?;
    let mut tally = Tally::default();
    for chunk in checks.chunks(CHUNK) {
        let records: Vec<VerificationRecord> = pool.install(|| chunk.par_iter().map(Check::run).collect());
        for r in &records {
            tally.add(r.verdict);
            sink(r)?;
        }
    }
    Ok(tally)
}

/// Runs a suite, streaming records to `sink` as they complete.
pub fn run_suite_streaming(
    config: &CampaignConfig,
    sink: impl FnMut(&VerificationRecord) -> Result<()>,
) -> Result<Tally> {
    let checks = config.plan()?;
    execute_checks(&checks, config.threads, sink)
}

/// Runs a suite and collects its records.
///
/// ```
/// use binform::harness::{run_suite, CampaignConfig, Suite, Verdict};
/// let mut config = CampaignConfig::new(Suite::CorDp11);
/// config.p_max = Some(23);
/// let records = run_suite(&config).unwrap();
/// // p = 5, 7, 11, 13, 17, 19, 23
/// assert_eq!(records.len(), 7);
/// assert!(records.iter().all(|r| r.verdict == Verdict::Pass));
/// ```
pub fn run_suite(config: &CampaignConfig) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    run_suite_streaming(config, |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

#[derive(Serialize)]
struct ReportMeta<'a> {
    grid: &'a ResolvedGrid,
    tally: &'a Tally,
}

/// Writes the resolved grid and verdict counts to `<report>.meta.json`.
pub fn write_report_meta(report: &std::path::Path, grid: &ResolvedGrid, tally: &Tally) -> Result<()> {
    report::write_meta(report, &ReportMeta { grid, tally })
}
