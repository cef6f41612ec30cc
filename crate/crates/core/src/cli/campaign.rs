//! Verification campaigns: every selected checker over seeded random
//! operands, with one automatic re-check at a tighter radius tolerance for
//! any trial that comes back inconclusive.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genmat::{generate, generate_unit_vector, mix_seed, rng_from_seed, GeneratorSpec};
use crate::inequalities::{
    run_check, Arity, CheckOptions, InequalityId, InequalityReport, Operands, Verdict,
};
use crate::matcore::OperatorClass;

pub const DEFAULT_DIMS: [usize; 5] = [2, 3, 5, 8, 16];
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_MASTER_SEED: u64 = 42;
pub const DEFAULT_INCONCLUSIVE_THRESHOLD: f64 = 0.01;
pub const DEFAULT_VECTORS_PER_TRIAL: usize = 16;
pub const DEFAULT_REFINEMENT_FACTOR: f64 = 100.0;

fn default_ids() -> Vec<InequalityId> {
    InequalityId::ALL.to_vec()
}
fn default_dims() -> Vec<usize> {
    DEFAULT_DIMS.to_vec()
}
fn default_trials() -> usize {
    DEFAULT_TRIALS
}
fn default_master_seed() -> u64 {
    DEFAULT_MASTER_SEED
}
fn default_threshold() -> f64 {
    DEFAULT_INCONCLUSIVE_THRESHOLD
}
fn default_vectors() -> usize {
    DEFAULT_VECTORS_PER_TRIAL
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict_rel: Option<f64>,
    /// Divisor applied to the radius tolerance on the automatic re-check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refinement_factor: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(default = "default_ids")]
    pub inequalities: Vec<InequalityId>,
    /// Per-inequality class override; unlisted ids use their defaults.
    #[serde(default)]
    pub classes: BTreeMap<InequalityId, Vec<OperatorClass>>,
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_master_seed")]
    pub master_seed: u64,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    /// Largest tolerated fraction of INCONCLUSIVE reports.
    #[serde(default = "default_threshold")]
    pub inconclusive_threshold: f64,
    /// Unit vectors per trial for the pointwise checkers.
    #[serde(default = "default_vectors")]
    pub vectors_per_trial: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            inequalities: default_ids(),
            classes: BTreeMap::new(),
            dims: default_dims(),
            trials: DEFAULT_TRIALS,
            master_seed: DEFAULT_MASTER_SEED,
            tolerances: ToleranceOverrides::default(),
            inconclusive_threshold: DEFAULT_INCONCLUSIVE_THRESHOLD,
            vectors_per_trial: DEFAULT_VECTORS_PER_TRIAL,
            output: None,
        }
    }
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidArgument(msg));
        if self.inequalities.is_empty() {
            return invalid("no inequalities selected".into());
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return invalid(format!("dims must be non-empty and positive, got {:?}", self.dims));
        }
        if self.vectors_per_trial == 0 {
            return invalid("vectors_per_trial must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.inconclusive_threshold) {
            return invalid(format!(
                "inconclusive_threshold must lie in [0, 1], got {}",
                self.inconclusive_threshold
            ));
        }
        for (id, classes) in &self.classes {
            if classes.is_empty() {
                return invalid(format!("empty class list for {id}"));
            }
            for class in classes {
                if !id.admissible_classes().contains(class) {
                    return invalid(format!("class {class} does not satisfy the hypotheses of {id}"));
                }
            }
        }
        let factor = self.refinement_factor();
        if !(factor.is_finite() && factor >= 1.0) {
            return invalid(format!("refinement_factor must be at least 1, got {factor}"));
        }
        self.check_options().validate()
    }

    pub fn check_options(&self) -> CheckOptions {
        let d = CheckOptions::default();
        CheckOptions {
            radius_rel_tol: self.tolerances.radius_rel.unwrap_or(d.radius_rel_tol),
            verdict_rel_tol: self.tolerances.verdict_rel.unwrap_or(d.verdict_rel_tol),
        }
    }

    pub fn refinement_factor(&self) -> f64 {
        self.tolerances.refinement_factor.unwrap_or(DEFAULT_REFINEMENT_FACTOR)
    }

    /// Classes sampled for `id`, in canonical order.
    pub fn classes_for(&self, id: InequalityId) -> Vec<OperatorClass> {
        let mut classes = self
            .classes
            .get(&id)
            .cloned()
            .unwrap_or_else(|| id.default_classes().to_vec());
        classes.sort();
        classes.dedup();
        classes
    }

    /// Selected ids and dimensions, sorted and deduplicated.
    fn plan(&self) -> (Vec<InequalityId>, Vec<usize>) {
        let mut ids = self.inequalities.clone();
        ids.sort();
        ids.dedup();
        let mut dims = self.dims.clone();
        dims.sort_unstable();
        dims.dedup();
        (ids, dims)
    }
}

/// Seed of one trial, derived from its coordinates in the campaign.
pub fn trial_seed(master: u64, id: InequalityId, class: OperatorClass, n: usize, trial: usize) -> u64 {
    let s = mix_seed(master, id as u64);
    let s = mix_seed(s, class as u64);
    let s = mix_seed(s, n as u64);
    mix_seed(s, trial as u64)
}

/// Random operands for one trial of `id`.
pub fn trial_operands(
    id: InequalityId,
    class: OperatorClass,
    n: usize,
    seed: u64,
    vectors: usize,
) -> Result<Operands> {
    let matrix = |k: u64| generate(&GeneratorSpec::new(class, n, mix_seed(seed, k)));
    Ok(match id.arity() {
        Arity::Scalars => {
            let mut rng = rng_from_seed(seed);
            Operands::Scalars(rng.sample(StandardNormal), rng.sample(StandardNormal))
        }
        Arity::Single => Operands::Single(matrix(0)?),
        Arity::Pair => Operands::Pair(matrix(0)?, matrix(1)?),
        Arity::Pointwise => {
            let xs = (0..vectors as u64)
                .map(|k| generate_unit_vector(n, mix_seed(seed, 2 + k)))
                .collect::<Result<Vec<_>>>()?;
            Operands::Pointwise(matrix(0)?, xs)
        }
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub confirmed: usize,
    pub violated: usize,
    pub inconclusive: usize,
    pub total: usize,
}

impl VerdictCounts {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Confirmed => self.confirmed += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
        self.total += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignResult {
    pub reports: Vec<InequalityReport>,
    pub summary: BTreeMap<InequalityId, VerdictCounts>,
    pub totals: VerdictCounts,
    /// Trials that were re-checked at the tighter radius tolerance.
    pub refined_trials: usize,
    pub wall_time_seconds: f64,
}

/// Exit status of a finished campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CampaignStatus {
    Passed,
    Violated,
    TooInconclusive,
}

impl CampaignResult {
    pub fn inconclusive_fraction(&self) -> f64 {
        if self.totals.total == 0 {
            0.0
        } else {
            self.totals.inconclusive as f64 / self.totals.total as f64
        }
    }

    pub fn status(&self, threshold: f64) -> CampaignStatus {
        if self.totals.violated > 0 {
            CampaignStatus::Violated
        } else if self.inconclusive_fraction() > threshold {
            CampaignStatus::TooInconclusive
        } else {
            CampaignStatus::Passed
        }
    }
}

/// Runs every (inequality, class, n, trial) cell in canonical order.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult> {
    config.validate()?;
    let start = Instant::now();
    let opts = config.check_options();
    let strict = opts.tightened(config.refinement_factor());
    let (ids, dims) = config.plan();

    let mut reports = Vec::new();
    let mut refined_trials = 0;
    for &id in &ids {
        let classes = config.classes_for(id);
        for &class in &classes {
            for &n in &dims {
                for trial in 0..config.trials {
                    let seed = trial_seed(config.master_seed, id, class, n, trial);
                    let operands = trial_operands(id, class, n, seed, config.vectors_per_trial)?;
                    let mut batch = run_check(id, &operands, &opts)?;
                    if batch.iter().any(|r| r.verdict == Verdict::Inconclusive) {
                        refined_trials += 1;
                        batch = run_check(id, &operands, &strict)?;
                    }
                    let operand_classes = match id.arity() {
                        Arity::Scalars => Vec::new(),
                        Arity::Single | Arity::Pointwise => vec![class],
                        Arity::Pair => vec![class, class],
                    };
                    for mut r in batch {
                        r.seed = Some(seed);
                        r.operand_classes = operand_classes.clone();
                        reports.push(r);
                    }
                }
            }
        }
    }

    let mut summary: BTreeMap<InequalityId, VerdictCounts> =
        ids.iter().map(|&id| (id, VerdictCounts::default())).collect();
    let mut totals = VerdictCounts::default();
    for r in &reports {
        summary.entry(r.id).or_default().add(r.verdict);
        totals.add(r.verdict);
    }
    Ok(CampaignResult {
        reports,
        summary,
        totals,
        refined_trials,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// One report with the run's provenance stamped on it.
#[derive(Serialize)]
struct StampedReport<'a> {
    #[serde(flatten)]
    report: &'a InequalityReport,
    timestamp: &'a str,
    toolkit_version: &'a str,
}

#[derive(Serialize)]
struct CampaignDocument<'a> {
    toolkit: &'a str,
    toolkit_version: &'a str,
    timestamp: &'a str,
    config: &'a CampaignConfig,
    summary: &'a BTreeMap<InequalityId, VerdictCounts>,
    totals: &'a VerdictCounts,
    refined_trials: usize,
    inconclusive_fraction: f64,
    wall_time_seconds: f64,
    reports: Vec<StampedReport<'a>>,
}

pub const TOOLKIT: &str = env!("CARGO_PKG_NAME");
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Current UTC time as ISO-8601, to the second.
pub fn timestamp_now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// JSON document for a finished campaign.
pub fn campaign_json(config: &CampaignConfig, result: &CampaignResult, timestamp: &str) -> Result<String> {
    let doc = CampaignDocument {
        toolkit: TOOLKIT,
        toolkit_version: TOOLKIT_VERSION,
        timestamp,
        config,
        summary: &result.summary,
        totals: &result.totals,
        refined_trials: result.refined_trials,
        inconclusive_fraction: result.inconclusive_fraction(),
        wall_time_seconds: result.wall_time_seconds,
        reports: result
            .reports
            .iter()
            .map(|report| StampedReport {
                report,
                timestamp,
                toolkit_version: TOOLKIT_VERSION,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}
