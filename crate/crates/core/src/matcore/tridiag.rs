//! Householder reduction of a Hermitian matrix to real symmetric
//! tridiagonal form, implicit QL for its eigenvalues, and inverse
//! iteration for the top eigenvector.
//!
//! This is the fast path for eigenvalue-only queries (support function,
//! norms, class predicates), where a full Jacobi decomposition per call
//! would dominate the run time.

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, C64};

const QL_MAX_ITER: usize = 60;

struct Tridiagonal {
    n: usize,
    diag: Vec<f64>,
    /// `off[i]` couples `i` and `i + 1`; `off[n - 1] = 0`.
    off: Vec<f64>,
    /// Reflector vectors `w_k` (acting on indices `k + 1..n`) with `P_k = I - w_k w_k*`.
    reflectors: Vec<Vec<C64>>,
    /// Unimodular scaling that made the off-diagonal real.
    phases: Vec<C64>,
}

fn reduce(h: &ComplexMatrix) -> Result<Tridiagonal> {
    h.require_square()?;
    h.check_finite()?;
    let n = h.rows();
    let a = if h.is_hermitian_exact() {
        h.as_slice().to_vec()
    } else {
        h.hermitian_part()?.into_vec()
    };
    Ok(reduce_hermitian(a, n))
}

#[inline]
fn modulus(z: C64) -> f64 {
    z.norm_sqr().sqrt()
}

/// `a` is an exactly Hermitian `n x n` matrix, row-major.
fn reduce_hermitian(mut a: Vec<C64>, n: usize) -> Tridiagonal {
    let zero = C64::new(0.0, 0.0);
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![zero; n];
    let mut q_conj = vec![zero; n];
    let mut w_conj = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let off = k + 1;
        let m = n - off;
        let x0 = a[off * n + k];
        let tail: f64 = (1..m).map(|i| a[(off + i) * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        let xnorm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0 == zero { C64::new(1.0, 0.0) } else { x0 / modulus(x0) };
        // u = x + e^{i phi} ||x|| e_1, so P x = -e^{i phi} ||x|| e_1
        let mut w: Vec<C64> = (0..m).map(|i| a[(off + i) * n + k]).collect();
        w[0] += phase * xnorm;
        let unorm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = std::f64::consts::SQRT_2 / unorm;
        for z in w.iter_mut() {
            *z *= scale;
        }

        // trailing block B <- P B P = B - w q* - q w*, q = Bw - (w*Bw / 2) w
        for i in 0..m {
            let row = &a[(off + i) * n + off..(off + i + 1) * n];
            p[i] = row.iter().zip(&w).fold(zero, |acc, (b, wj)| acc + b * wj);
        }
        let kappa: f64 = 0.5 * w.iter().zip(&p[..m]).map(|(wi, pi)| (wi.conj() * pi).re).sum::<f64>();
        for i in 0..m {
            let qi = p[i] - w[i] * kappa;
            q_conj[i] = qi.conj();
            w_conj[i] = w[i].conj();
            p[i] = qi;
        }
        for i in 0..m {
            let (wi, qi) = (w[i], p[i]);
            let row = &mut a[(off + i) * n + off..(off + i + 1) * n];
            for ((x, qc), wc) in row.iter_mut().zip(&q_conj[..m]).zip(&w_conj[..m]) {
                *x -= wi * qc + qi * wc;
            }
        }
        let head = -phase * xnorm;
        a[off * n + k] = head;
        a[k * n + off] = head.conj();
        for i in 1..m {
            a[(off + i) * n + k] = zero;
            a[k * n + off + i] = zero;
        }
        reflectors.push(w);
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut off = vec![0.0; n];
    let mut phases = vec![C64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let e = a[(i + 1) * n + i];
        let r = modulus(e);
        off[i] = r;
        phases[i + 1] = if r == 0.0 { phases[i] } else { phases[i] * (e / r) };
    }
    Tridiagonal {
        n,
        diag,
        off,
        reflectors,
        phases,
    }
}

/// `sqrt(a^2 + b^2)` without the cost of a fully careful `hypot`; rescales
/// only when squaring would leave the normal range.
#[inline]
fn pythag(a: f64, b: f64) -> f64 {
    let s = a * a + b * b;
    if s.is_finite() && s > 1e-290 {
        s.sqrt()
    } else {
        a.hypot(b)
    }
}

/// Implicit QL with Wilkinson-style shifts; eigenvalues only.
fn ql_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence {
                    sweeps: iter,
                    off: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| b.total_cmp(a));
    Ok(d)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let t = reduce(h)?;
    ql_eigenvalues(t.diag, t.off)
}

/// Solves `(mu I - T) y = b` for a tridiagonal `T` with `mu` above its
/// spectrum, so the system is positive definite and needs no pivoting.
/// Returns `None` if a pivot fails to stay positive.
fn shifted_solve(diag: &[f64], off: &[f64], mu: f64, b: &mut [f64]) -> Option<()> {
    let n = diag.len();
    let mut piv = vec![0.0; n];
    let mut mult = vec![0.0; n];
    piv[0] = mu - diag[0];
    if piv[0] <= 0.0 {
        return None;
    }
    for i in 1..n {
        mult[i] = -off[i - 1] / piv[i - 1];
        piv[i] = (mu - diag[i]) + mult[i] * off[i - 1];
        if piv[i] <= 0.0 {
            return None;
        }
    }
    for i in 1..n {
        b[i] -= mult[i] * b[i - 1];
    }
    b[n - 1] /= piv[n - 1];
    for i in (0..n - 1).rev() {
        b[i] = (b[i] + off[i] * b[i + 1]) / piv[i];
    }
    Some(())
}

/// Largest eigenvalue and a unit eigenvector for it.
pub fn top_eigenpair(h: &ComplexMatrix) -> Result<(f64, Vec<C64>)> {
    let t = reduce(h)?;
    let n = t.n;
    let values = ql_eigenvalues(t.diag.clone(), t.off.clone())?;
    let top = values[0];

    let scale = t
        .diag
        .iter()
        .zip(&t.off)
        .map(|(d, e)| d.abs() + 2.0 * e.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut shift = 4.0 * n as f64 * f64::EPSILON * scale;
    let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * ((i * 7 + 3) % 11) as f64 / 11.0).collect();
    let mut attempts = 0;
    let mut iterations = 0;
    while iterations < 3 {
        let mut b = y.clone();
        if shifted_solve(&t.diag, &t.off, top + shift, &mut b).is_none() {
            attempts += 1;
            if attempts > 40 {
                return Err(Error::NoConvergence {
                    sweeps: attempts,
                    off: shift,
                });
            }
            shift *= 4.0;
            continue;
        }
        let norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            shift *= 4.0;
            attempts += 1;
            continue;
        }
        y = b.into_iter().map(|v| v / norm).collect();
        iterations += 1;
    }

    // back to the original basis: x = P_0 ... P_{n-3} D y
    let mut x: Vec<C64> = y.iter().zip(&t.phases).map(|(&v, p)| p * v).collect();
    for (k, w) in t.reflectors.iter().enumerate().rev() {
        if w.is_empty() {
            continue;
        }
        let seg = &mut x[k + 1..];
        let dot: C64 = w.iter().zip(seg.iter()).map(|(wi, xi)| wi.conj() * xi).sum();
        for (xi, wi) in seg.iter_mut().zip(w) {
            *xi -= wi * dot;
        }
    }
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok((top, x.into_iter().map(|z| z / norm).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genmat::{generate, GeneratorSpec};
    use crate::matcore::{hermitian_eigen, OperatorClass};

    #[test]
    fn eigenvalues_agree_with_jacobi() {
        for n in [1, 2, 3, 5, 8, 17, 40] {
            for seed in 0..4 {
                let h = generate(&GeneratorSpec::new(OperatorClass::SelfAdjoint, n, seed)).unwrap();
                let fast = hermitian_eigenvalues(&h).unwrap();
                let slow = hermitian_eigen(&h).unwrap().values;
                let scale = h.frobenius_norm().max(1.0);
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).abs() <= 1e-13 * scale, "n={n} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn top_vector_is_an_eigenvector() {
        for n in [1, 2, 4, 9, 16, 33] {
            for seed in 0..4 {
                let h = generate(&GeneratorSpec::new(OperatorClass::SelfAdjoint, n, 100 + seed)).unwrap();
                let (lam, x) = top_eigenpair(&h).unwrap();
                let hx = h.matvec(&x);
                let res: f64 = hx
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| (a - b * lam).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-12 * h.frobenius_norm().max(1.0), "n={n} res={res}");
            }
        }
    }

    #[test]
    fn degenerate_top_eigenvalue() {
        let h = ComplexMatrix::identity(5);
        let (lam, x) = top_eigenpair(&h).unwrap();
        assert_eq!(lam, 1.0);
        let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((norm - 1.0).abs() < 1e-14);

        let z = ComplexMatrix::zeros(3, 3);
        let (lam, _) = top_eigenpair(&z).unwrap();
        assert_eq!(lam, 0.0);
    }

    #[test]
    fn already_tridiagonal_complex() {
        let c = |re, im| C64::new(re, im);
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)],
            vec![c(0.0, -2.0), c(-1.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 0.0), c(1.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let fast = hermitian_eigenvalues(&h).unwrap();
        let slow = hermitian_eigen(&h).unwrap().values;
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-13);
        }
        let (lam, x) = top_eigenpair(&h).unwrap();
        let hx = h.matvec(&x);
        for (a, b) in hx.iter().zip(&x) {
            assert!((a - b * lam).norm() < 1e-12);
        }
    }
}
