use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::checks::Check;
use super::report::{write_meta, ReportFormat, ReportWriter};
use super::{execute_checks, Verdict};
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Search bound used when none is given; the conjectures state none.
pub const DEFAULT_SCAN_P_MAX: u64 = 500;

/// The three divisibility conjectures for `D_p^-(c,d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConjecturePart {
    /// `p | D_p^-(2,2)` for `p ≡ 7 (mod 8)`.
    I,
    /// `p | D_p^-(3,3)` for `p > 5`, `p ≡ 2 (mod 3)`.
    Ii,
    /// `p | D_p^-(3,1)` for `p ≡ 3, 7 (mod 20)`.
    Iii,
}

impl ConjecturePart {
    pub fn name(self) -> &'static str {
        match self {
            ConjecturePart::I => "i",
            ConjecturePart::Ii => "ii",
            ConjecturePart::Iii => "iii",
        }
    }

    /// `(c, d)` of the binary form.
    pub fn form(self) -> (i64, i64) {
        match self {
            ConjecturePart::I => (2, 2),
            ConjecturePart::Ii => (3, 3),
            ConjecturePart::Iii => (3, 1),
        }
    }

    fn congruence(self, p: u64) -> bool {
        match self {
            ConjecturePart::I => p % 8 == 7,
            ConjecturePart::Ii => p % 3 == 2,
            ConjecturePart::Iii => matches!(p % 20, 3 | 7),
        }
    }

    fn exclusion(self, p: u64) -> Option<&'static str> {
        match (self, p) {
            (ConjecturePart::Ii, 5) => Some("excluded: requires p > 5"),
            (_, p) if p <= 3 => Some("excluded: requires p > 3"),
            _ => None,
        }
    }
}

impl fmt::Display for ConjecturePart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConjecturePart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(ConjecturePart::I),
            "ii" => Ok(ConjecturePart::Ii),
            "iii" => Ok(ConjecturePart::Iii),
            other => Err(Error::usage(format!("unknown conjecture part `{other}` (expected i, ii or iii)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub part: ConjecturePart,
    pub p_max: u64,
    pub checked: usize,
    pub divisible: usize,
    pub counterexamples: Vec<u64>,
}

#[derive(Serialize)]
struct ScanMeta<'a> {
    scan: &'a str,
    part: ConjecturePart,
    c: i64,
    d: i64,
    p_max: u64,
    default_p_max: u64,
    checked: usize,
    divisible: usize,
    counterexamples: &'a [u64],
}

/// Every prime up to `p_max` in the part's congruence class, in order.
/// Primes excluded by the statement are kept as `Skip` entries.
pub fn conjecture_checks(part: ConjecturePart, p_max: u64) -> Result<Vec<Check>> {
    if p_max < 7 {
        return Err(Error::usage(format!("p_max must be at least 7, got {p_max}")));
    }
    Ok((3..=p_max)
        .filter(|&p| is_prime(p) && part.congruence(p))
        .map(|p| match part.exclusion(p) {
            Some(reason) => Check::Excluded { suite: format!("conjecture-{}", part.name()), p, reason: reason.into() },
            None => Check::Conjecture { part, p },
        })
        .collect())
}

/// Scans one part of the conjecture, writing a CSV report to `out` and its
/// metadata to `out.meta.json`. Counterexamples are reported, never asserted.
pub fn scan_conjecture(part: ConjecturePart, p_max: u64, out: &Path, threads: usize) -> Result<ScanSummary> {
    let checks = conjecture_checks(part, p_max)?;
    let mut writer = ReportWriter::create(out, ReportFormat::Csv)?;
    let mut summary = ScanSummary { part, p_max, checked: 0, divisible: 0, counterexamples: Vec::new() };
    execute_checks(&checks, threads, |r| {
        match r.verdict {
            Verdict::Pass => summary.divisible += 1,
            Verdict::Fail => summary.counterexamples.push(r.param_p.expect("scan records carry p")),
            Verdict::Skip => return writer.write(r),
        }
        summary.checked += 1;
        writer.write(r)
    })?;
    writer.finish()?;
    let (c, d) = part.form();
    write_meta(
        out,
        &ScanMeta {
            scan: "conjecture",
            part,
            c,
            d,
            p_max,
            default_p_max: DEFAULT_SCAN_P_MAX,
            checked: summary.checked,
            divisible: summary.divisible,
            counterexamples: &summary.counterexamples,
        },
    )?;
    Ok(summary)
}
