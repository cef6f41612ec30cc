//! Numerical radius via the support function of the numerical range.
//!
//! `f(theta) = lambda_max(Re(e^{i theta} A))` is the support function of
//! `W(A)`. Every value of `f` is a lower bound for `w(A)`, and if the
//! optimal direction of the farthest point lies inside a cell of angular
//! width `h` whose end values are at most `F`, that point has modulus at
//! most `F / cos(h / 2)`. The bracket is refined by bisecting the cells
//! that still exceed the lower bound by more than the tolerance; on a
//! uniform grid of `n` angles this is the classic
//! `m_n <= w(A) <= m_n / cos(pi / n)` enclosure.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genmat::{random_unit_vector, rng_from_seed};
use crate::matcore::{eigen_pad, inner, top_eigenpair, ComplexMatrix, Interval, C64, PAD_HALF_WIDTH};

pub const INITIAL_ANGLES: usize = 64;
pub const MAX_ANGLES: usize = 1 << 20;

/// `1e-8 * max(1, ||A||_F)`.
pub fn default_radius_tol(a: &ComplexMatrix) -> f64 {
    1e-8 * a.frobenius_norm().max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusBracket {
    pub enclosure: Interval,
    pub angles_used: usize,
    pub refinement_rounds: usize,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct SupportValue {
    pub value: Interval,
    pub witness: Vec<C64>,
    /// `<A x, x>` for the witness `x`; a point of `W(A)`.
    pub point: C64,
}

/// `Re(e^{i theta} A) = (e^{i theta} A + e^{-i theta} A*) / 2`, exactly Hermitian.
pub fn rotated_real_part(a: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    a.require_square()?;
    let rot = C64::from_polar(1.0, theta);
    let n = a.rows();
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = C64::new((rot * a[(i, i)]).re, 0.0);
        for j in i + 1..n {
            let v = (rot * a[(i, j)] + (rot * a[(j, i)]).conj()) * 0.5;
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    Ok(h)
}

pub fn support_value(a: &ComplexMatrix, theta: f64) -> Result<SupportValue> {
    let pad = eigen_pad(a);
    support_value_padded(a, theta, pad)
}

fn support_value_padded(a: &ComplexMatrix, theta: f64, pad: f64) -> Result<SupportValue> {
    let h = rotated_real_part(a, theta)?;
    let (top, witness) = top_eigenpair(&h)?;
    let point = rayleigh_quotient(a, &witness);
    Ok(SupportValue {
        value: Interval::around(top, PAD_HALF_WIDTH * pad),
        witness,
        point,
    })
}

/// `<Ax, x> / <x, x>`.
fn rayleigh_quotient(a: &ComplexMatrix, x: &[C64]) -> C64 {
    a.quadratic_form(x) / inner(x, x).re
}

#[derive(Clone, Copy, Debug)]
struct Sample {
    theta: f64,
    upper: f64,
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    left: Sample,
    right: Sample,
}

impl Cell {
    fn width(&self) -> f64 {
        self.right.theta - self.left.theta
    }

    /// Upper bound on `|z|` for points of `W(A)` whose optimal support
    /// angle lies in this cell.
    fn bound(&self) -> f64 {
        let top = self.left.upper.max(self.right.upper).max(0.0);
        let c = (0.5 * self.width()).cos();
        (top / c).next_up()
    }
}

/// Stepwise bracket refinement. [`numerical_radius`] drives it to
/// completion; it is public so callers can observe each round.
pub struct RadiusRefiner<'a> {
    a: &'a ComplexMatrix,
    tol: f64,
    pad: f64,
    cells: Vec<Cell>,
    lo: f64,
    hi: f64,
    angles_used: usize,
    rounds: usize,
    finest: usize,
    trivial: bool,
}

impl<'a> RadiusRefiner<'a> {
    pub fn new(a: &'a ComplexMatrix, tol: f64) -> Result<Self> {
        a.require_square()?;
        a.check_finite()?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        let pad = eigen_pad(a);
        let mut r = Self {
            a,
            tol,
            pad,
            cells: Vec::new(),
            lo: 0.0,
            hi: 0.0,
            angles_used: 0,
            rounds: 0,
            finest: INITIAL_ANGLES,
            trivial: false,
        };
        if a.as_slice().iter().all(|z| *z == C64::new(0.0, 0.0)) {
            r.trivial = true;
            return Ok(r);
        }
        let step = 2.0 * PI / INITIAL_ANGLES as f64;
        let samples: Vec<Sample> = (0..INITIAL_ANGLES)
            .map(|k| r.sample(k as f64 * step))
            .collect::<Result<_>>()?;
        for k in 0..INITIAL_ANGLES {
            let mut right = samples[(k + 1) % INITIAL_ANGLES];
            if k + 1 == INITIAL_ANGLES {
                right.theta = 2.0 * PI;
            }
            r.cells.push(Cell {
                left: samples[k],
                right,
            });
        }
        r.hi = r.current_upper();
        Ok(r)
    }

    fn sample(&mut self, theta: f64) -> Result<Sample> {
        let s = support_value_padded(self.a, theta, self.pad)?;
        self.angles_used += 1;
        // both f(theta) and |<Ax,x>| are attained by unit vectors
        let lower = s.value.lo().max(s.point.norm() - self.pad);
        self.lo = self.lo.max(lower.next_down());
        Ok(Sample {
            theta,
            upper: s.value.hi(),
        })
    }

    fn current_upper(&self) -> f64 {
        self.cells.iter().map(Cell::bound).fold(0.0, f64::max)
    }

    pub fn bracket(&self) -> Interval {
        if self.trivial {
            return Interval::point(0.0);
        }
        let lo = self.lo.max(0.0);
        Interval::new(lo, self.hi.max(lo)).expect("finite bracket")
    }

    pub fn is_converged(&self) -> bool {
        self.trivial || self.hi - self.lo.max(0.0) <= self.tol
    }

    pub fn angles_used(&self) -> usize {
        self.angles_used
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// One refinement round. Returns `false` when nothing is left to do,
    /// either because the bracket has converged or the angular resolution
    /// has reached [`MAX_ANGLES`].
    pub fn refine(&mut self) -> Result<bool> {
        if self.is_converged() || self.finest >= MAX_ANGLES {
            return Ok(false);
        }
        let threshold = self.lo + self.tol;
        let old = std::mem::take(&mut self.cells);
        let mut cells = Vec::with_capacity(old.len() + 8);
        for cell in old {
            if cell.bound() > threshold {
                let mid = self.sample(0.5 * (cell.left.theta + cell.right.theta))?;
                cells.push(Cell {
                    left: cell.left,
                    right: mid,
                });
                cells.push(Cell {
                    left: mid,
                    right: cell.right,
                });
            } else {
                cells.push(cell);
            }
        }
        self.cells = cells;
        self.finest *= 2;
        self.rounds += 1;
        self.hi = self.hi.min(self.current_upper());
        Ok(true)
    }

    pub fn finish(mut self) -> Result<RadiusBracket> {
        while self.refine()? {}
        Ok(RadiusBracket {
            enclosure: self.bracket(),
            angles_used: self.angles_used,
            refinement_rounds: self.rounds,
            converged: self.is_converged(),
        })
    }
}

/// Certified bracket for `w(A)`.
///
/// Returns with `converged = false` (not an error) if the tolerance cannot
/// be met before the angular resolution reaches [`MAX_ANGLES`].
pub fn numerical_radius(a: &ComplexMatrix, tol: f64) -> Result<RadiusBracket> {
    RadiusRefiner::new(a, tol)?.finish()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FovBoundary {
    pub points: Vec<C64>,
    pub angles: Vec<f64>,
    pub support: Vec<Interval>,
}

/// Boundary samples of `W(A)`: for each `theta_k = 2 pi k / samples` the
/// point `<A x_k, x_k>` where `x_k` is the top eigenvector of
/// `Re(e^{i theta_k} A)`.
pub fn fov_boundary(a: &ComplexMatrix, samples: usize) -> Result<FovBoundary> {
    if samples < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 boundary samples, got {samples}"
        )));
    }
    a.require_square()?;
    let pad = eigen_pad(a);
    let mut out = FovBoundary {
        points: Vec::with_capacity(samples),
        angles: Vec::with_capacity(samples),
        support: Vec::with_capacity(samples),
    };
    for k in 0..samples {
        let theta = 2.0 * PI * k as f64 / samples as f64;
        let s = support_value_padded(a, theta, pad)?;
        out.points.push(s.point);
        out.angles.push(theta);
        out.support.push(s.value);
    }
    Ok(out)
}

/// Monte-Carlo lower estimate of `w(A)`: the largest `|<Ax, x>|` over
/// `trials` seeded random unit vectors.
pub fn rayleigh_sample_sup(a: &ComplexMatrix, trials: usize, seed: u64) -> Result<f64> {
    a.require_square()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let n = a.rows();
    let mut best: f64 = 0.0;
    for _ in 0..trials {
        let x = random_unit_vector(n, &mut rng);
        best = best.max(rayleigh_quotient(a, &x).norm());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn jordan() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap()
    }

    #[test]
    fn support_value_examples() {
        let i = ComplexMatrix::identity(3);
        for theta in [0.0, 0.3, 1.7, 3.0, 5.5] {
            assert!(support_value(&i, theta).unwrap().value.contains(theta.cos()));
        }
        assert!(support_value(&jordan(), 0.0).unwrap().value.contains(0.5));
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(support_value(&d, 0.0).unwrap().value.contains(1.0));
    }

    #[test]
    fn support_point_reproduces_support_value() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(3.0, 1.0), c(0.5, 0.5)],
            vec![c(2.0, 0.0), c(0.0, 0.0), c(-1.0, -1.0)],
        ])
        .unwrap();
        let pad = eigen_pad(&a);
        for k in 0..16 {
            let theta = k as f64 * 0.4;
            let s = support_value(&a, theta).unwrap();
            let re = (C64::from_polar(1.0, theta) * s.point).re;
            assert!((re - s.value.mid()).abs() <= pad, "theta={theta}");
        }
    }

    #[test]
    fn zero_matrix_short_circuits() {
        let b = numerical_radius(&ComplexMatrix::zeros(3, 3), 1e-8).unwrap();
        assert_eq!(b.enclosure, Interval::point(0.0));
        assert!(b.converged);
    }

    #[test]
    fn jordan_block_radius() {
        let b = numerical_radius(&jordan(), 1e-8).unwrap();
        assert!(b.converged);
        assert!(b.enclosure.contains(0.5), "{:?}", b);
        assert!(b.enclosure.width() <= 1e-8);
    }

    #[test]
    fn normal_diagonal_radius() {
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let b = numerical_radius(&d, 1e-10).unwrap();
        assert!(b.enclosure.contains(1.0));
    }

    #[test]
    fn invalid_arguments() {
        assert!(numerical_radius(&jordan(), 0.0).is_err());
        assert!(numerical_radius(&jordan(), -1.0).is_err());
        assert!(numerical_radius(&ComplexMatrix::zeros(2, 3), 1e-8).is_err());
        assert!(fov_boundary(&jordan(), 2).is_err());
        assert!(rayleigh_sample_sup(&jordan(), 0, 1).is_err());
    }

    #[test]
    fn impossible_tolerance_reports_not_converged() {
        let b = numerical_radius(&jordan(), 1e-300).unwrap();
        assert!(!b.converged);
        assert!(b.enclosure.contains(0.5));
    }

    #[test]
    fn fov_examples() {
        let f = fov_boundary(&ComplexMatrix::identity(2), 12).unwrap();
        assert!(f.points.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-14));

        let h = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let f = fov_boundary(&h, 12).unwrap();
        assert!(f.points.iter().all(|z| z.im.abs() < 1e-14 && z.re.abs() <= 1.0 + 1e-14));

        let f = fov_boundary(&jordan(), 40).unwrap();
        assert_eq!(f.points.len(), 40);
        assert_eq!(f.angles.len(), 40);
        for z in &f.points {
            assert!((z.norm() - 0.5).abs() <= 1e-8, "{z}");
        }
    }

    #[test]
    fn rayleigh_examples() {
        assert_eq!(rayleigh_sample_sup(&ComplexMatrix::identity(4), 10, 3).unwrap(), 1.0);
        assert_eq!(rayleigh_sample_sup(&ComplexMatrix::zeros(4, 4), 10, 3).unwrap(), 0.0);
        let v = rayleigh_sample_sup(&jordan(), 10_000, 11).unwrap();
        assert!(v <= 0.5 + 1e-12 && v >= 0.45, "{v}");
    }
}
