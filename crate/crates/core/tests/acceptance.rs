//! Acceptance suite: one PASS/FAIL line per criterion, run sequentially on
//! a single thread so the timing criteria measure honest wall time.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use numrad::cli::campaign::{run_campaign, CampaignConfig, CampaignStatus};
use numrad::cli::commands;
use numrad::genmat::{generate, GeneratorSpec};
use numrad::inequalities::{
    check_ad_norm_lower, check_kittaneh, check_sum_rotation_v1, check_triangle_refine, CheckOptions, Verdict,
};
use numrad::matcore::{hermitian_eigen, op_norm, ComplexMatrix, Interval, OperatorClass};
use numrad::numrange::{default_radius_tol, numerical_radius, rayleigh_sample_sup};

const ORACLE_ANGLES: usize = 100_000;

type Outcome = Result<String, String>;

fn sample(class: OperatorClass, n: usize, seed: u64) -> ComplexMatrix {
    generate(&GeneratorSpec::new(class, n, seed)).expect("generator")
}

/// `tau = 1e-8 * max(1, |x|)`, the default verdict tolerance.
fn tau(x: f64) -> f64 {
    1e-8 * x.abs().max(1.0)
}

/// Largest value of `lambda_max(Re(e^{i theta} A))` over a dense grid, from
/// the closed form for 2x2 Hermitian matrices. Independent of the
/// eigensolvers under test.
fn grid_oracle(a: &ComplexMatrix) -> f64 {
    assert_eq!(a.rows(), 2);
    let (p, q, r, s) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let mut best = f64::NEG_INFINITY;
    for k in 0..ORACLE_ANGLES {
        let rot = C64::from_polar(1.0, 2.0 * PI * k as f64 / ORACLE_ANGLES as f64);
        let h11 = (rot * p).re;
        let h22 = (rot * s).re;
        let h12 = (rot * q + (rot * r).conj()) * 0.5;
        let half = 0.5 * (h11 - h22);
        let top = 0.5 * (h11 + h22) + (half * half + h12.norm_sqr()).sqrt();
        best = best.max(top);
    }
    best
}

fn interval_gap(x: Interval, y: Interval) -> f64 {
    (x.hi() - y.lo()).abs().max((y.hi() - x.lo()).abs())
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("j.mtx");
    std::fs::write(&path, "%%MatrixMarket matrix array complex general\n2 2\n0 0\n0 0\n1 0\n0 0\n")
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut out = Vec::new();
    let code = commands::radius(&path, None, None, false, &mut out).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let j = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
    let b = numerical_radius(&j, default_radius_tol(&j)).map_err(|e| e.to_string())?;
    let e = b.enclosure;
    let oracle = grid_oracle(&j);
    let ok = code == 0
        && e.contains(0.5)
        && e.width() <= 1e-8
        && elapsed < Duration::from_secs(1)
        && oracle >= e.lo() - tau(oracle)
        && oracle <= e.hi() + tau(oracle);
    let msg = format!(
        "J radius [{:.12}, {:.12}] width {:.2e} in {:.1} ms, oracle {:.12}",
        e.lo(),
        e.hi(),
        e.width(),
        elapsed.as_secs_f64() * 1e3,
        oracle
    );
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_2() -> Outcome {
    let opts = CheckOptions::default();
    let j = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
    let left = check_kittaneh(&j, &opts).map_err(|e| e.to_string())?[0].clone();
    let right = check_kittaneh(&ComplexMatrix::identity(2), &opts).map_err(|e| e.to_string())?[1].clone();
    let msg = format!(
        "J lower-link slack {:.2e}, I upper-link slack {:.2e}",
        left.slack, right.slack
    );
    let ok = left.link == Some("left") && right.link == Some("right") && left.slack.abs() <= 1e-7 && right.slack.abs() <= 1e-7;
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_3() -> Outcome {
    let opts = CheckOptions::default();
    let mut worst: f64 = f64::NEG_INFINITY;
    for k in 0..50u64 {
        let n = 2 + (k as usize % 15);
        let a = sample(OperatorClass::Positive, n, 3000 + k);
        let r = check_sum_rotation_v1(&a, &ComplexMatrix::zeros(n, n), &opts).map_err(|e| e.to_string())?;
        let gap = r.rhs.hi() - r.lhs.lo();
        let norm = op_norm(&a).map_err(|e| e.to_string())?.hi();
        let bound = 1e-6 * (1.0 + norm);
        worst = worst.max(gap / bound);
        if gap > bound || r.verdict == Verdict::Violated {
            return Err(format!("seed {} n {n}: RHS - LHS = {gap:.3e} > {bound:.3e}", 3000 + k));
        }
    }
    Ok(format!("50 PSD matrices with B = 0, worst (RHS - LHS) / bound = {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let config = CampaignConfig::default();
    let start = Instant::now();
    let result = run_campaign(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let t = result.totals;
    let frac = result.inconclusive_fraction();
    let msg = format!(
        "{} reports, {} VIOLATED, {} INCONCLUSIVE ({:.3}%), {} refined trials, {:.1} s",
        t.total,
        t.violated,
        t.inconclusive,
        100.0 * frac,
        result.refined_trials,
        elapsed
    );
    let ok = result.summary.len() == 15
        && t.violated == 0
        && frac <= 0.01
        && result.status(config.inconclusive_threshold) == CampaignStatus::Passed
        && elapsed < 60.0;
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..100u64 {
        let n = 1 + (k as usize % 16);
        let a = sample(OperatorClass::Normal, n, 5000 + k);
        let w = numerical_radius(&a, default_radius_tol(&a)).map_err(|e| e.to_string())?.enclosure;
        let norm = op_norm(&a).map_err(|e| e.to_string())?;
        let gap = interval_gap(w, norm);
        let bound = 1e-7 * (1.0 + norm.hi());
        worst = worst.max(gap / bound);
        if gap > bound {
            return Err(format!("seed {} n {n}: |w - ||A||| up to {gap:.3e} > {bound:.3e}", 5000 + k));
        }
    }
    Ok(format!("100 normal matrices, worst |w - ||A||| / bound = {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let opts = CheckOptions::default();
    let mut min_margin = f64::INFINITY;
    for k in 0..200u64 {
        let n = 1 + (k as usize % 16);
        let t = sample(OperatorClass::AccretiveDissipative, n, 6000 + k);
        let reports = check_ad_norm_lower(&t, &opts).map_err(|e| e.to_string())?;
        let r = reports.iter().find(|r| r.link == Some("norm")).expect("norm report");
        if r.lhs.hi() > r.rhs.lo() + r.tolerance || r.verdict != Verdict::Confirmed {
            return Err(format!("seed {} n {n}: {} is {:?}", 6000 + k, r.label(), r.verdict));
        }
        let norm = op_norm(&t).map_err(|e| e.to_string())?;
        let ad = Interval::enclose(FRAC_1_SQRT_2) * norm;
        let classic = norm.scale(0.5);
        if ad.lo() <= classic.hi() {
            return Err(format!("seed {}: AD bound {ad:?} not above {classic:?}", 6000 + k));
        }
        // same ||T|| interval on both sides, so the ratio is sqrt(2) up to rounding
        let ratio = ad.mid() / classic.mid();
        if (ratio - SQRT_2).abs() > 8.0 * f64::EPSILON {
            return Err(format!("seed {}: ratio {ratio:.17} != sqrt(2)", 6000 + k));
        }
        min_margin = min_margin.min(r.slack);
    }
    Ok(format!(
        "200 AD matrices CONFIRMED, bound ratio sqrt(2) to 8 ulp, min slack {min_margin:.3e}"
    ))
}

fn criterion_7() -> Outcome {
    let mut worst_rec: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    for n in [8usize, 32, 64] {
        for seed in 0..5u64 {
            let h = sample(OperatorClass::SelfAdjoint, n, 7000 + seed);
            let eig = hermitian_eigen(&h).map_err(|e| e.to_string())?;
            let rec = eig.reconstruct_with(|x| x).try_sub(&h).unwrap().frobenius_norm() / h.frobenius_norm();
            let q = &eig.vectors;
            let orth = q.gram().try_sub(&ComplexMatrix::identity(n)).unwrap().frobenius_norm();
            worst_rec = worst_rec.max(rec);
            worst_orth = worst_orth.max(orth);
            if rec > 1e-10 || orth > 1e-10 {
                return Err(format!("n {n} seed {seed}: residual {rec:.2e}, orthogonality {orth:.2e}"));
            }
        }
    }
    Ok(format!(
        "n in {{8, 32, 64}}: worst relative residual {worst_rec:.2e}, worst ||Q*Q - I||_F {worst_orth:.2e}"
    ))
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..200u64 {
        let n = 1 + (k as usize % 16);
        let t = sample(OperatorClass::General, n, 8000 + k);
        let (a, b) = (t.real_part().unwrap(), t.imag_part().unwrap());
        let lhs = &t.gram() + &t.cogram();
        let rhs = (&a.gram() + &b.gram()).scale_real(2.0);
        let err = lhs.try_sub(&rhs).unwrap().frobenius_norm();
        let bound = 1e-10 * t.frobenius_norm().powi(2).max(1.0);
        worst = worst.max(err / bound);
        if err > bound {
            return Err(format!("seed {} n {n}: residual {err:.3e} > {bound:.3e}", 8000 + k));
        }
    }
    Ok(format!("200 matrices, worst residual / bound = {worst:.2e}"))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..500u64 {
        let class = OperatorClass::ALL[k as usize % OperatorClass::ALL.len()];
        let a = sample(class, 2, 9000 + k);
        let e = numerical_radius(&a, default_radius_tol(&a)).map_err(|e| e.to_string())?.enclosure;
        let oracle = grid_oracle(&a);
        let t = tau(e.hi());
        if oracle < e.lo() - t || oracle > e.hi() + t {
            return Err(format!("seed {} ({class}): oracle {oracle:.15} outside {e:?}", 9000 + k));
        }
        let r = rayleigh_sample_sup(&a, 64, k).map_err(|e| e.to_string())?;
        if r > e.hi() + t {
            return Err(format!("seed {}: Rayleigh sample {r:.15} above {e:?}", 9000 + k));
        }
        worst = worst.max((oracle - e.mid()).abs() / t);
    }
    Ok(format!("500 random 2x2 matrices, worst |oracle - midpoint| / tau = {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let opts = CheckOptions::default();
    for k in 0..200u64 {
        let n = 1 + (k as usize % 16);
        let a = sample(OperatorClass::SelfAdjoint, n, 10_000 + 2 * k);
        let b = sample(OperatorClass::SelfAdjoint, n, 10_001 + 2 * k);
        let r = check_triangle_refine(&a, &b, &opts).map_err(|e| e.to_string())?;
        if r.len() != 2 || r[0].rhs != r[1].lhs || r.iter().any(|r| r.verdict != Verdict::Confirmed) {
            return Err(format!("pair {k} n {n}: {:?}", r.iter().map(|r| r.verdict).collect::<Vec<_>>()));
        }
    }
    Ok("200 self-adjoint pairs, both links CONFIRMED".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Jordan-block radius", criterion_1),
        ("Kittaneh equality cases", criterion_2),
        ("positive-operand sharpness", criterion_3),
        ("full campaign", criterion_4),
        ("normality collapse", criterion_5),
        ("accretive-dissipative lower bound", criterion_6),
        ("eigensolver quality", criterion_7),
        ("Cartesian identity", criterion_8),
        ("bracket soundness", criterion_9),
        ("triangle refinement ordering", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
