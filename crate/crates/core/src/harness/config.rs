use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::checks::Check;
use crate::arith::{factorize, is_prime, jacobi};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ThmDivisibility,
    LemmaNonsquarefree,
    ThmShift,
    CorXIndependence,
    ThmRational,
    CorDp11,
    PriorFacts,
    PowerSums,
    Engines,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::ThmDivisibility,
        Suite::LemmaNonsquarefree,
        Suite::ThmShift,
        Suite::CorXIndependence,
        Suite::ThmRational,
        Suite::CorDp11,
        Suite::PriorFacts,
        Suite::PowerSums,
        Suite::Engines,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmDivisibility => "thm-divisibility",
            Suite::LemmaNonsquarefree => "lemma-nonsquarefree",
            Suite::ThmShift => "thm-shift",
            Suite::CorXIndependence => "cor-x-independence",
            Suite::ThmRational => "thm-rational",
            Suite::CorDp11 => "cor-dp11",
            Suite::PriorFacts => "prior-facts",
            Suite::PowerSums => "power-sums",
            Suite::Engines => "engines",
        }
    }

    /// Which grid axes (n, p, c, d, trials) the suite reads.
    fn axes(self) -> [bool; 5] {
        match self {
            Suite::ThmDivisibility => [true, false, true, true, false],
            Suite::LemmaNonsquarefree => [true, false, true, true, true],
            Suite::ThmShift | Suite::ThmRational => [false, true, false, false, true],
            Suite::CorXIndependence => [false, true, true, true, true],
            Suite::CorDp11 | Suite::PowerSums => [false, true, false, false, false],
            Suite::PriorFacts => [true, true, true, true, false],
            Suite::Engines => [true, false, false, false, true],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown suite `{s}`")))
    }
}

/// Campaign parameters. Unset bounds fall back to per-suite defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub suite: Suite,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub p_min: Option<u64>,
    pub p_max: Option<u64>,
    pub c_min: Option<i64>,
    pub c_max: Option<i64>,
    pub d_min: Option<i64>,
    pub d_max: Option<i64>,
    pub trials: Option<u32>,
    pub seed: u64,
    pub threads: usize,
}

/// The grid a campaign actually ran, after defaults were applied.
/// Written next to every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvedGrid {
    pub suite: Suite,
    pub n: Option<(u64, u64)>,
    pub p: Option<(u64, u64)>,
    /// Prime range for the power-matrix facts of `prior-facts`.
    pub p_power: Option<(u64, u64)>,
    pub c: Option<(i64, i64)>,
    /// `None` with `d_per_modulus` set means every `d` in `[1, n]`.
    pub d: Option<(i64, i64)>,
    pub d_per_modulus: bool,
    pub trials: Option<u32>,
    pub seed: u64,
    pub checks: usize,
}

fn bounds<T: PartialOrd + Copy + fmt::Display>(
    lo: Option<T>,
    hi: Option<T>,
    default: (T, T),
    axis: &str,
) -> Result<(T, T)> {
    let (lo, hi) = (lo.unwrap_or(default.0), hi.unwrap_or(default.1));
    if lo > hi {
        return Err(Error::usage(format!("empty {axis} range [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

fn primes_in(range: (u64, u64), min: u64) -> Vec<u64> {
    (range.0.max(min)..=range.1).filter(|&p| is_prime(p)).collect()
}

fn odd_in(range: (u64, u64)) -> impl Iterator<Item = u64> {
    (range.0.max(3)..=range.1).filter(|n| n % 2 == 1)
}

const WIDE: (i64, i64) = (-1000, 1000);

impl CampaignConfig {
    pub fn new(suite: Suite) -> Self {
        CampaignConfig {
            suite,
            n_min: None,
            n_max: None,
            p_min: None,
            p_max: None,
            c_min: None,
            c_max: None,
            d_min: None,
            d_max: None,
            trials: None,
            seed: 0,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.threads == 0 {
            return Err(Error::usage("thread count must be positive"));
        }
        if self.trials == Some(0) {
            return Err(Error::usage("trials must be at least 1"));
        }
        let [n, p, c, d, t] = self.suite.axes();
        let given = [
            (n, self.n_min.is_some() || self.n_max.is_some(), "--n-min/--n-max"),
            (p, self.p_min.is_some() || self.p_max.is_some(), "--p-min/--p-max"),
            (c, self.c_min.is_some() || self.c_max.is_some(), "--c-min/--c-max"),
            (d, self.d_min.is_some() || self.d_max.is_some(), "--d-min/--d-max"),
            (t, self.trials.is_some(), "--trials"),
        ];
        for (used, set, flag) in given {
            if set && !used {
                return Err(Error::usage(format!("{flag} is not used by suite {}", self.suite)));
            }
        }
        Ok(())
    }

    fn d_values(&self, modulus: u64) -> Result<Vec<i64>> {
        let (lo, hi) = bounds(self.d_min, self.d_max, (1, modulus as i64), "d")?;
        Ok((lo..=hi).collect())
    }

    /// Applies defaults and reports the grid, without planning it.
    pub fn resolve(&self) -> Result<ResolvedGrid> {
        Ok(self.resolve_and_plan()?.0)
    }

    /// The ordered list of checks this configuration runs.
    pub fn plan(&self) -> Result<Vec<Check>> {
        Ok(self.resolve_and_plan()?.1)
    }

    pub fn resolve_and_plan(&self) -> Result<(ResolvedGrid, Vec<Check>)> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut grid = ResolvedGrid {
            suite: self.suite,
            n: None,
            p: None,
            p_power: None,
            c: None,
            d: None,
            d_per_modulus: false,
            trials: None,
            seed: self.seed,
            checks: 0,
        };
        let d_explicit = self.d_min.is_some() || self.d_max.is_some();
        let mut checks = Vec::new();
        match self.suite {
            Suite::ThmDivisibility => {
                let n = bounds(self.n_min, self.n_max, (3, 105), "n")?;
                let c = bounds(self.c_min, self.c_max, (0, 4), "c")?;
                (grid.n, grid.c) = (Some(n), Some(c));
                self.describe_d(&mut grid, d_explicit)?;
                for n in odd_in(n) {
                    for c in c.0..=c.1 {
                        for d in self.d_values(n)? {
                            if jacobi(d, n)? == -1 {
                                checks.push(Check::Divisibility { n, c, d });
                            }
                        }
                    }
                }
            }
            Suite::LemmaNonsquarefree => {
                let n = bounds(self.n_min, self.n_max, (3, 99), "n")?;
                let c = bounds(self.c_min, self.c_max, WIDE, "c")?;
                let d = bounds(self.d_min, self.d_max, WIDE, "d")?;
                let trials = self.trials.unwrap_or(20);
                (grid.n, grid.c, grid.d, grid.trials) = (Some(n), Some(c), Some(d), Some(trials));
                for n in odd_in(n).filter(|&n| !factorize(n).expect("n ≥ 3").is_squarefree()) {
                    for _ in 0..trials {
                        let (c, d) = (rng.gen_range(c.0..=c.1), rng.gen_range(d.0..=d.1));
                        checks.push(Check::NonSquarefreeZero { n, c, d });
                    }
                }
            }
            Suite::ThmShift => {
                let p = bounds(self.p_min, self.p_max, (5, 17), "p")?;
                let trials = self.trials.unwrap_or(100);
                (grid.p, grid.trials) = (Some(p), Some(trials));
                for p in primes_in(p, 3) {
                    let mut degrees = vec![p - 2, p - 1, (3 * (p - 1)).div_ceil(2), 2 * p - 3];
                    degrees.dedup();
                    for n in degrees {
                        for _ in 0..trials {
                            checks.push(Check::Shift { p, n, seed: rng.gen() });
                        }
                    }
                }
            }
            Suite::CorXIndependence => {
                let p = bounds(self.p_min, self.p_max, (5, 13), "p")?;
                let c = bounds(self.c_min, self.c_max, WIDE, "c")?;
                let d = bounds(self.d_min, self.d_max, WIDE, "d")?;
                let trials = self.trials.unwrap_or(10);
                (grid.p, grid.c, grid.d, grid.trials) = (Some(p), Some(c), Some(d), Some(trials));
                for p in primes_in(p, 5) {
                    for n in p.div_ceil(2)..=p - 2 {
                        for _ in 0..trials {
                            let (c, d) = (rng.gen_range(c.0..=c.1), rng.gen_range(d.0..=d.1));
                            checks.push(Check::XIndependence { p, n, c, d });
                        }
                    }
                }
            }
            Suite::ThmRational => {
                let p = bounds(self.p_min, self.p_max, (5, 23), "p")?;
                let trials = self.trials.unwrap_or(100);
                (grid.p, grid.trials) = (Some(p), Some(trials));
                for p in primes_in(p, 5) {
                    for _ in 0..trials {
                        checks.push(Check::Rational { p, seed: rng.gen() });
                    }
                }
            }
            Suite::CorDp11 => {
                let p = bounds(self.p_min, self.p_max, (5, 200), "p")?;
                grid.p = Some(p);
                checks.extend(primes_in(p, 5).into_iter().map(|p| Check::Dp11 { p }));
            }
            Suite::PriorFacts => {
                let n = bounds(self.n_min, self.n_max, (3, 105), "n")?;
                let explicit_p = self.p_min.is_some() || self.p_max.is_some();
                let p_bracket = bounds(self.p_min, self.p_max, (3, 47), "p")?;
                let p_power = if explicit_p { p_bracket } else { (3, 31) };
                let c = bounds(self.c_min, self.c_max, (0, 4), "c")?;
                (grid.n, grid.p, grid.p_power, grid.c) = (Some(n), Some(p_bracket), Some(p_power), Some(c));
                self.describe_d(&mut grid, d_explicit)?;
                for n in odd_in(n) {
                    for c in c.0..=c.1 {
                        for d in self.d_values(n)? {
                            if jacobi(d, n)? == -1 {
                                checks.push(Check::ParenZero { n, c, d });
                            }
                        }
                    }
                }
                for p in primes_in(p_bracket, 3) {
                    for c in c.0..=c.1 {
                        for d in self.d_values(p)? {
                            if jacobi(d, p)? == 1 {
                                checks.push(Check::BracketDivisibleByPMinus1 { p, c, d });
                            }
                        }
                    }
                }
                for p in primes_in(p_power, 5) {
                    for e in p.div_ceil(2)..=p - 2 {
                        for c in c.0..=c.1 {
                            for d in self.d_values(p)? {
                                checks.push(Check::PowerZeroFullVanishes { p, c, d, e });
                            }
                        }
                    }
                }
                for p in primes_in(p_power, 3) {
                    for e in 1..=p - 1 {
                        for c in c.0..=c.1 {
                            for d in self.d_values(p)? {
                                if jacobi(d, p)? == -1 {
                                    checks.push(Check::PowerFullVanishes { p, c, d, e });
                                }
                            }
                        }
                    }
                }
            }
            Suite::PowerSums => {
                let p = bounds(self.p_min, self.p_max, (3, 97), "p")?;
                grid.p = Some(p);
                for p in primes_in(p, 3) {
                    for k in 0..=3 * (p - 1) {
                        checks.push(Check::PowerSumFull { p, k });
                        if p >= 5 {
                            checks.push(Check::PowerSumInner { p, k });
                        }
                    }
                }
            }
            Suite::Engines => {
                let n = bounds(self.n_min, self.n_max, (1, 8), "n")?;
                let trials = self.trials.unwrap_or(200);
                (grid.n, grid.trials) = (Some(n), Some(trials));
                for dim in n.0.max(1)..=n.1 {
                    for _ in 0..trials {
                        checks.push(Check::EngineAgreement { dim: dim as usize, seed: rng.gen() });
                    }
                }
                for l in 1..=6 {
                    for m in 1..=6 {
                        checks.push(Check::WeinsteinAronszajn { l, m, seed: rng.gen() });
                    }
                }
                for dim in 1..=6 {
                    for _ in 0..trials.div_ceil(2) {
                        checks.push(Check::PolyGrid { n: dim, seed: rng.gen() });
                    }
                }
                checks.extend(primes_in((5, 101), 5).into_iter().map(|p| Check::Trinomial { p }));
            }
        }
        if checks.is_empty() {
            return Err(Error::usage(format!("suite {} has an empty grid for these bounds", self.suite)));
        }
        grid.checks = checks.len();
        Ok((grid, checks))
    }

    fn describe_d(&self, grid: &mut ResolvedGrid, explicit: bool) -> Result<()> {
        if explicit {
            grid.d = Some(bounds(self.d_min, self.d_max, (1, i64::MAX), "d")?);
        } else {
            grid.d_per_modulus = true;
        }
        Ok(())
    }
}
