//! Subcommand bodies. Each writes to caller-supplied streams and returns
//! the process exit code, so they can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::campaign::{campaign_json, run_campaign, timestamp_now, CampaignConfig, CampaignStatus};
use super::io::{format_matrix, read_matrix, MatrixFormat};
use super::{EXIT_INCONCLUSIVE, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_VIOLATED};
use crate::error::Result;
use crate::genmat::{generate, GeneratorSpec};
use crate::inequalities::{judge, verdict_tolerance, Verdict, DEFAULT_VERDICT_REL_TOL};
use crate::matcore::{
    abs_value, classify, default_class_tol, op_norm, psd_sqrt, ClassSet, ComplexMatrix, Interval,
    OperatorClass,
};
use crate::numrange::{default_radius_tol, fov_boundary, numerical_radius, RadiusBracket};

pub fn radius(path: &Path, format: Option<MatrixFormat>, tol: Option<f64>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let a = read_matrix(path, format)?;
    let tol = tol.unwrap_or_else(|| default_radius_tol(&a));
    let b = numerical_radius(&a, tol)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&b)?)?;
    } else {
        let e = b.enclosure;
        writeln!(out, "lo          {:.17e}", e.lo())?;
        writeln!(out, "hi          {:.17e}", e.hi())?;
        writeln!(out, "width       {:.3e}", e.width())?;
        writeln!(out, "converged   {}", b.converged)?;
        writeln!(out, "angles_used {}", b.angles_used)?;
    }
    Ok(if b.converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

/// What a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    /// The claim, e.g. `||A||/2 <= w`.
    pub bound: &'static str,
    /// `w` or `w^2`.
    pub target: &'static str,
    pub side: BoundSide,
    pub value: Interval,
    /// Claim checked against the radius bracket.
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsTable {
    pub radius: RadiusBracket,
    pub classes: Vec<OperatorClass>,
    pub rows: Vec<BoundRow>,
}

/// Every single-operator bound that applies to `a`, next to its radius bracket.
pub fn single_operator_bounds(a: &ComplexMatrix) -> Result<BoundsTable> {
    let radius = numerical_radius(a, default_radius_tol(a))?;
    let w = radius.enclosure;
    let w2 = w.square();
    let tags: ClassSet = classify(a, default_class_tol(a))?;
    let inv_sqrt2 = Interval::enclose(std::f64::consts::FRAC_1_SQRT_2);

    let mut rows = Vec::new();
    let mut push = |bound, target: &'static str, side, value: Interval| {
        let m = if target == "w" { w } else { w2 };
        let (lhs, rhs) = match side {
            BoundSide::Lower => (value, m),
            BoundSide::Upper => (m, value),
        };
        let verdict = judge(lhs, rhs, verdict_tolerance(lhs, rhs, DEFAULT_VERDICT_REL_TOL));
        rows.push(BoundRow {
            bound,
            target,
            side,
            value,
            verdict,
        });
    };

    let norm = op_norm(a)?;
    push("||A||/2 <= w", "w", BoundSide::Lower, norm.scale(0.5));
    push("w <= ||A||", "w", BoundSide::Upper, norm);
    let k = op_norm(&(&a.gram() + &a.cogram()))?;
    push("||A*A + AA*||/4 <= w^2", "w^2", BoundSide::Lower, k.scale(0.25));
    push("w^2 <= ||A*A + AA*||/2", "w^2", BoundSide::Upper, k.scale(0.5));
    let rot = abs_value(a)?.plus_i_times(&psd_sqrt(&a.cogram())?)?;
    let wr = numerical_radius(&rot, default_radius_tol(&rot))?.enclosure;
    push("w^2 <= w(|A| + i|A*|)^2/2", "w^2", BoundSide::Upper, wr.square().scale(0.5));
    let (re, im) = (a.real_part()?, a.imag_part()?);
    let sq = re.gram().plus_i_times(&im.gram())?;
    let ws = numerical_radius(&sq, default_radius_tol(&sq))?.enclosure;
    push("w(Re(A)^2 + i Im(A)^2)/sqrt(2) <= w^2", "w^2", BoundSide::Lower, inv_sqrt2 * ws);
    if tags.contains(OperatorClass::AccretiveDissipative) {
        push("||A||/sqrt(2) <= w", "w", BoundSide::Lower, inv_sqrt2 * norm);
        let sum = op_norm(&(&re + &im))?;
        push("||Re(A) + Im(A)||/sqrt(2) <= w", "w", BoundSide::Lower, inv_sqrt2 * sum);
    }
    if tags.contains(OperatorClass::Normal) {
        push("||A|| <= w (normal)", "w", BoundSide::Lower, norm);
    }
    Ok(BoundsTable {
        radius,
        classes: tags.iter().collect(),
        rows,
    })
}

pub fn bounds(path: &Path, format: Option<MatrixFormat>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let a = read_matrix(path, format)?;
    a.require_square()?;
    let table = single_operator_bounds(&a)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?;
        return Ok(EXIT_OK);
    }
    let w = table.radius.enclosure;
    writeln!(out, "w(A) in [{:.12}, {:.12}]  width {:.2e}", w.lo(), w.hi(), w.width())?;
    let classes: Vec<&str> = table.classes.iter().map(|c| c.as_str()).collect();
    writeln!(out, "classes: {}", classes.join(" "))?;
    writeln!(out, "{:<40} {:<6} {:<6} {:>16} {:>16}  check", "bound", "target", "side", "lo", "hi")?;
    for r in &table.rows {
        let side = match r.side {
            BoundSide::Lower => "lower",
            BoundSide::Upper => "upper",
        };
        writeln!(
            out,
            "{:<40} {:<6} {:<6} {:>16.12} {:>16.12}  {}",
            r.bound,
            r.target,
            side,
            r.value.lo(),
            r.value.hi(),
            r.verdict
        )?;
    }
    Ok(EXIT_OK)
}

pub fn fov(path: &Path, format: Option<MatrixFormat>, samples: usize, out_path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let a = read_matrix(path, format)?;
    let b = fov_boundary(&a, samples)?;
    let mut csv = String::from("theta,re,im,support_value\n");
    for ((theta, z), s) in b.angles.iter().zip(&b.points).zip(&b.support) {
        csv.push_str(&format!("{theta},{},{},{}\n", z.re, z.im, s.mid()));
    }
    match out_path {
        Some(p) => fs::write(p, csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}

pub fn gen(spec: &GeneratorSpec, format: Option<MatrixFormat>, out_path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let m = generate(spec)?;
    let format = format
        .or_else(|| out_path.and_then(MatrixFormat::from_path))
        .unwrap_or(MatrixFormat::Json);
    let text = format_matrix(&m, format);
    match out_path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

/// Command-line adjustments layered over a configuration file.
#[derive(Clone, Debug, Default)]
pub struct VerifyOverrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub inequalities: Option<Vec<crate::inequalities::InequalityId>>,
    pub output: Option<PathBuf>,
}

pub fn load_config(path: Option<&Path>, ov: &VerifyOverrides) -> Result<CampaignConfig> {
    let mut config = match path {
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
        None => CampaignConfig::default(),
    };
    if let Some(seed) = ov.seed {
        config.master_seed = seed;
    }
    if let Some(trials) = ov.trials {
        config.trials = trials;
    }
    if let Some(dims) = &ov.dims {
        config.dims = dims.clone();
    }
    if let Some(ids) = &ov.inequalities {
        config.inequalities = ids.clone();
    }
    if let Some(o) = &ov.output {
        config.output = Some(o.clone());
    }
    config.validate()?;
    Ok(config)
}

/// Runs a campaign; the JSON document goes to the configured output path
/// or, failing that, to `out`. The summary table goes to `log`.
pub fn verify(config: &CampaignConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<i32> {
    let result = run_campaign(config)?;
    let doc = campaign_json(config, &result, &timestamp_now())?;
    match &config.output {
        Some(p) => fs::write(p, doc + "\n")?,
        None => writeln!(out, "{doc}")?,
    }
    writeln!(log, "{:<26} {:>9} {:>9} {:>12} {:>7}", "inequality", "confirmed", "violated", "inconclusive", "total")?;
    for (id, c) in &result.summary {
        writeln!(
            log,
            "{:<26} {:>9} {:>9} {:>12} {:>7}",
            id.as_str(),
            c.confirmed,
            c.violated,
            c.inconclusive,
            c.total
        )?;
    }
    let t = result.totals;
    writeln!(
        log,
        "{:<26} {:>9} {:>9} {:>12} {:>7}",
        "TOTAL", t.confirmed, t.violated, t.inconclusive, t.total
    )?;
    writeln!(
        log,
        "refined trials: {}   wall time: {:.2} s",
        result.refined_trials, result.wall_time_seconds
    )?;
    Ok(match result.status(config.inconclusive_threshold) {
        CampaignStatus::Passed => EXIT_OK,
        CampaignStatus::Violated => EXIT_VIOLATED,
        CampaignStatus::TooInconclusive => EXIT_INCONCLUSIVE,
    })
}
