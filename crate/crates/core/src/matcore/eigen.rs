//! Hermitian eigensolver (cyclic complex Jacobi) and the matrix functions
//! built on it.

use crate::error::{Error, Result};

use super::interval::Interval;
use super::matrix::{ComplexMatrix, C64};
use super::tridiag::hermitian_eigenvalues;

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 30;

/// Stopping threshold on off-diagonal Frobenius mass, relative to `||H||_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Sorted in descending order.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("eigenvalues of a non-empty matrix")
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        let n = self.vectors.rows();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `Q f(Λ) Q*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let q = self.vectors.as_slice();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    s += q[i * n + k] * q[j * n + k].conj() * fv[k];
                }
                if i == j {
                    s.im = 0.0;
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
        }
        out
    }
}

/// Padding budget for every eigenvalue-derived scalar of `a`:
/// `100 * n * eps * max(1, ||a||_F)` with `n` the larger side.
pub fn eigen_pad(a: &ComplexMatrix) -> f64 {
    let n = a.rows().max(a.cols()) as f64;
    100.0 * n * f64::EPSILON * a.frobenius_norm().max(1.0)
}

/// Fraction of `eigen_pad` used as the half-width of an eigenvalue
/// enclosure; the remainder absorbs outward rounding, which is at most a
/// few ulps while the pad is at least `100 eps |value|`.
pub const PAD_HALF_WIDTH: f64 = 0.45;

/// Enclosure of width at most `eigen_pad(a)` centred on a computed
/// eigenvalue of `a` (or of a matrix derived from `a` with no larger
/// Frobenius norm). The half-width leaves room for the outward rounding.
pub fn eigen_enclosure(value: f64, a: &ComplexMatrix) -> Interval {
    Interval::around(value, PAD_HALF_WIDTH * eigen_pad(a))
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized first, so tiny non-Hermitian roundoff is
/// tolerated. Eigenvalues come back sorted descending.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    h.require_square()?;
    h.check_finite()?;
    let n = h.rows();
    let mut a = h.hermitian_part()?.into_vec();
    let mut v = ComplexMatrix::identity(n).into_vec();

    let fro = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * fro;

    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= target {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: sweep, off });
        }
        sweep += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&k| a[k * n + k].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[i * n + order[k]]);
    Ok(HermitianEigen { values, vectors })
}

/// One two-sided Jacobi rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = r e^{i phi}`, the unitary `G` acting on coordinates
/// `(p, q)` is `[[c, s], [-s e^{-i phi}, c e^{-i phi}]]`; `a <- G* a G` and
/// `v <- v G`.
#[inline]
fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        // r is negligible against the diagonal gap
        a[p * n + q] = C64::new(0.0, 0.0);
        a[q * n + p] = C64::new(0.0, 0.0);
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ep = phase.conj();
    let (gqp, gqq) = (-ep * s, ep * c);

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c + akq * gqp;
        a[k * n + q] = akp * s + akq * gqq;
    }
    let (gqp_c, gqq_c) = (gqp.conj(), gqq.conj());
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c + aqk * gqp_c;
        a[q * n + k] = apk * s + aqk * gqq_c;
    }
    a[p * n + q] = C64::new(0.0, 0.0);
    a[q * n + p] = C64::new(0.0, 0.0);
    a[p * n + p] = C64::new(app - t * r, 0.0);
    a[q * n + q] = C64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c + vkq * gqp;
        v[k * n + q] = vkp * s + vkq * gqq;
    }
}

/// Square root of a positive semidefinite matrix; negative eigenvalues
/// (roundoff) are clamped to zero.
pub fn psd_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(p)?;
    Ok(eig.reconstruct_with(|l| l.max(0.0).sqrt()))
}

/// `|A| = (A*A)^{1/2}`.
pub fn abs_value(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_square()?;
    psd_sqrt(&a.gram())
}

/// Operator norm (largest singular value) as a padded enclosure.
///
/// Exactly Hermitian inputs use `max |lambda|`; anything else goes through
/// the Hermitian dilation `[[0, A], [A*, 0]]`, whose largest eigenvalue is
/// `sigma_max(A)` and which avoids squaring the singular values.
pub fn op_norm(a: &ComplexMatrix) -> Result<Interval> {
    a.check_finite()?;
    let sigma = if a.is_hermitian_exact() {
        let values = hermitian_eigenvalues(a)?;
        values[0].abs().max(values[values.len() - 1].abs())
    } else {
        let (m, n) = (a.rows(), a.cols());
        let dil = ComplexMatrix::from_fn(m + n, m + n, |i, j| {
            if i < m && j >= m {
                a[(i, j - m)]
            } else if i >= m && j < m {
                a[(j, i - m)].conj()
            } else {
                C64::new(0.0, 0.0)
            }
        });
        hermitian_eigenvalues(&dil)?[0]
    };
    Ok(eigen_enclosure(sigma.max(0.0), a).clamp_nonneg())
}

/// Enclosure of the largest eigenvalue of a Hermitian matrix.
pub fn lambda_max(h: &ComplexMatrix) -> Result<Interval> {
    let values = hermitian_eigenvalues(h)?;
    Ok(eigen_enclosure(values[0], h))
}

/// Enclosure of the smallest eigenvalue of a Hermitian matrix.
pub fn lambda_min(h: &ComplexMatrix) -> Result<Interval> {
    let values = hermitian_eigenvalues(h)?;
    Ok(eigen_enclosure(values[values.len() - 1], h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn residuals(h: &ComplexMatrix, eig: &HermitianEigen) -> (f64, f64) {
        let recon = eig.reconstruct_with(|l| l);
        let r = (h - &recon).frobenius_norm();
        let q = &eig.vectors;
        let orth = (&(&q.adjoint() * q) - &ComplexMatrix::identity(q.rows())).frobenius_norm();
        (r, orth)
    }

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::diag(&[c(1.0, 0.0), c(3.0, 0.0)]);
        let eig = hermitian_eigen(&h).unwrap();
        assert_eq!(eig.values, vec![3.0, 1.0]);
        assert_eq!(eig.vector(0), vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(eig.vector(1), vec![c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn swap_matrix_closed_form() {
        // 2x2 closed form: mean (0) +/- sqrt(0 + |1|^2)
        let h = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_two_by_two_closed_form() {
        let h = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(1.0, -3.0)], vec![c(1.0, 3.0), c(-1.0, 0.0)]])
            .unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        let mean = 0.5;
        let radius = (1.5f64 * 1.5 + 10.0).sqrt();
        assert!((eig.values[0] - (mean + radius)).abs() < 1e-14);
        assert!((eig.values[1] - (mean - radius)).abs() < 1e-14);
        let (r, o) = residuals(&h, &eig);
        assert!(r < 1e-13 && o < 1e-14, "{r} {o}");
    }

    #[test]
    fn one_by_one() {
        let h = ComplexMatrix::diag(&[c(-2.5, 0.0)]);
        let eig = hermitian_eigen(&h).unwrap();
        assert_eq!(eig.values, vec![-2.5]);
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            hermitian_eigen(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn abs_value_examples() {
        let j = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let aj = abs_value(&j).unwrap();
        let ajs = abs_value(&j.adjoint()).unwrap();
        assert!((&aj - &ComplexMatrix::diag(&[c(0.0, 0.0), c(1.0, 0.0)])).frobenius_norm() < 1e-15);
        assert!((&ajs - &ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 0.0)])).frobenius_norm() < 1e-15);

        let u = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let au = abs_value(&u).unwrap();
        assert!((&au - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-15);

        let p = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(2.0, 0.0)]])
            .unwrap();
        assert!((&abs_value(&p).unwrap() - &p).frobenius_norm() < 1e-14);
    }

    #[test]
    fn op_norm_examples() {
        let j = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(op_norm(&j).unwrap().contains(1.0));
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(op_norm(&d).unwrap().contains(1.0));
        let s = ComplexMatrix::scalar(2, c(1.0, 1.0));
        let nrm = op_norm(&s).unwrap();
        assert!(nrm.contains(std::f64::consts::SQRT_2), "{nrm}");
        assert!(nrm.width() <= eigen_pad(&s));
        let rect = ComplexMatrix::from_real_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, 0.0, 4.0]]).unwrap();
        assert!(op_norm(&rect).unwrap().contains(4.0));
        assert!(op_norm(&ComplexMatrix::zeros(3, 3)).unwrap().contains(0.0));
    }
}
