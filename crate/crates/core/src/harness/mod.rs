//! Verification harness: named checks grouped into suites, run under a
//! [`RunConfig`] and collected into a deterministic [`VerificationReport`].

mod checks;
mod tally;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use checks::CHECKS;
pub use tally::{Outcome, Tally};

pub const SCHEMA: &str = "flagproj-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Normal-cone proposals per face.
    pub samples_per_face: u64,
    /// Samples for Grassmannian and sphere integrals.
    pub grassmannian_samples: u64,
    /// Ambient dimensions of the polytope fixtures.
    pub dims: Vec<usize>,
    /// Acceptance band in standard errors.
    pub sigma: f64,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 20240601,
            samples_per_face: 100_000,
            grassmannian_samples: 100_000,
            dims: vec![3, 4],
            sigma: 3.0,
            workers: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples_per_face == 0 || self.grassmannian_samples == 0 || self.workers == 0 {
            return Err(Error::Invalid("sample counts and worker count must be positive".into()));
        }
        if self.sigma.is_nan() || self.sigma < 1.0 {
            return Err(Error::Invalid(format!("tolerance multiplier {} below 1", self.sigma)));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| !(2..=6).contains(&d)) {
            return Err(Error::Invalid(format!("fixture dimensions {:?} outside 2..=6", self.dims)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub status: Status,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
    /// Seconds; excluded from the determinism digest.
    pub wall_time: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: String,
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    /// SHA-256 of the report with wall times zeroed.
    pub digest: String,
}

impl VerificationReport {
    pub fn new(suite: &str, config: RunConfig, mut records: Vec<CheckRecord>) -> Result<Self> {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let mut report = Self { schema: SCHEMA.into(), suite: suite.into(), config, records, digest: String::new() };
        report.digest = report.compute_digest()?;
        Ok(report)
    }

    fn compute_digest(&self) -> Result<String> {
        let mut canonical = self.clone();
        canonical.digest.clear();
        canonical.records.iter_mut().for_each(|r| r.wall_time = 0.0);
        let bytes = crate::json::to_string(&canonical)?;
        Ok(Sha256::digest(bytes.as_bytes()).iter().map(|b| format!("{b:02x}")).collect())
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() { 0 } else { 1 }
    }

    pub fn to_json(&self) -> Result<String> {
        crate::json::to_string(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(s)?;
        if r.schema != SCHEMA {
            return Err(Error::Invalid(format!("report schema {:?}, expected {SCHEMA:?}", r.schema)));
        }
        Ok(r)
    }

    /// Combines reports of the same schema. A check present in several
    /// reports keeps its worst status; the merged digest is recomputed.
    pub fn merge(reports: Vec<Self>) -> Result<Self> {
        let mut it = reports.into_iter();
        let first = it.next().ok_or_else(|| Error::Invalid("nothing to merge".into()))?;
        let mut suites = vec![first.suite.clone()];
        let config = first.config.clone();
        let mut records = first.records;
        for r in it {
            suites.push(r.suite);
            for rec in r.records {
                match records.iter_mut().find(|x| x.check_id == rec.check_id) {
                    Some(x) if rank(rec.status) > rank(x.status) => *x = rec,
                    Some(_) => {}
                    None => records.push(rec),
                }
            }
        }
        Self::new(&suites.join("+"), config, records)
    }
}

fn rank(s: Status) -> u8 {
    match s {
        Status::Skip => 0,
        Status::Pass => 1,
        Status::Fail => 2,
    }
}

/// A named verification check, tied to one acceptance criterion.
pub struct Check {
    pub id: &'static str,
    pub criterion: u32,
    pub suite: Suite,
    pub summary: &'static str,
    pub run: fn(&RunConfig, u64) -> Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Combinatorics,
    Grassmann,
    SphereMoments,
    Masses,
    Projections,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["combinatorics", "grassmann", "sphere-moments", "masses", "projections", "all"];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "combinatorics" => Self::Combinatorics,
            "grassmann" => Self::Grassmann,
            "sphere-moments" => Self::SphereMoments,
            "masses" => Self::Masses,
            "projections" => Self::Projections,
            "all" => Self::All,
            _ => return Err(Error::Invalid(format!("unknown suite {s:?}; one of {:?}", Self::NAMES))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Combinatorics => "combinatorics",
            Self::Grassmann => "grassmann",
            Self::SphereMoments => "sphere-moments",
            Self::Masses => "masses",
            Self::Projections => "projections",
            Self::All => "all",
        }
    }

    fn includes(self, check: &Check) -> bool {
        self == Self::All || self == check.suite
    }
}

/// Number of acceptance criteria; each must have exactly one check.
pub const CRITERIA: u32 = 11;

/// Criteria without a registered check, or with more than one.
pub fn coverage_gaps() -> Vec<u32> {
    (1..=CRITERIA).filter(|c| CHECKS.iter().filter(|x| x.criterion == *c).count() != 1).collect()
}

pub fn find_check(id_or_criterion: &str) -> Option<&'static Check> {
    CHECKS
        .iter()
        .find(|c| c.id == id_or_criterion || id_or_criterion.parse::<u32>().is_ok_and(|n| n == c.criterion))
}

/// Runs one check and turns its outcome into a record.
pub fn run_check(check: &Check, config: &RunConfig) -> CheckRecord {
    let start = Instant::now();
    let seed = config.seed ^ (check.criterion as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let out = (check.run)(config, seed);
    CheckRecord {
        check_id: check.id.into(),
        status: if out.passed { Status::Pass } else { Status::Fail },
        observed: out.observed,
        expected: out.expected,
        tolerance: out.tolerance,
        stderr: out.stderr,
        n: out.n,
        seed,
        wall_time: start.elapsed().as_secs_f64(),
        detail: out.detail,
    }
}

/// Sizes the process-wide worker pool. Must run before any parallel work.
pub fn install_workers(workers: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Error::Invalid(format!("worker pool: {e}")))
}

/// Runs every check of `suite`; records come back ordered by check id.
pub fn run_suite(suite: Suite, config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let selected: Vec<&Check> = CHECKS.iter().filter(|c| suite.includes(c)).collect();
    let records = selected.par_iter().map(|c| run_check(c, config)).collect();
    VerificationReport::new(suite.name(), config.clone(), records)
}
