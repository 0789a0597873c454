//! Hermitian eigenvalue extraction.
//!
//! Two independent routes are kept on purpose: a cyclic Jacobi sweep that
//! produces the full spectrum, and inverse power iteration through a
//! Cholesky factorization for the smallest eigenvalue. [`smallest_eigenvalue`]
//! runs both and refuses to answer when they disagree, so a solver artifact
//! cannot masquerade as a tiny sampling constant.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::C64;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues and an orthonormal eigenbasis of a Hermitian matrix, via
/// cyclic Jacobi rotations. Eigenvalues ascending; column `k` of the
/// returned matrix is the eigenvector for eigenvalue `k`.
pub fn hermitian_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if a.rows() != a.cols() {
        return Err(Error::InvalidArgument("hermitian_eigen needs a square matrix"));
    }
    let n = a.rows();
    let mut m = a.hermitize();
    let mut v = Matrix::identity(n);
    let scale = m.max_abs().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= 1e-15 * scale {
            let mut vals: Vec<(f64, usize)> =
                (0..n).map(|i| (m[(i, i)].re, i)).collect();
            vals.sort_by(|x, y| x.0.total_cmp(&y.0));
            let order: Vec<usize> = vals.iter().map(|&(_, i)| i).collect();
            let vecs = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
            return Ok((vals.into_iter().map(|(x, _)| x).collect(), vecs));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q, scale);
            }
        }
    }
    Err(Error::EigenNotConverged {
        jacobi: f64::NAN,
        inverse: f64::NAN,
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    hermitian_eigen(a).map(|(vals, _)| vals)
}

/// One Jacobi rotation annihilating the (p,q) entry of `m`, accumulated
/// into `v`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize, scale: f64) {
    let beta = m[(p, q)];
    let babs = beta.norm();
    if babs <= 1e-300 * scale.max(1.0) {
        m[(p, q)] = C64::new(0.0, 0.0);
        m[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;
    // Real Jacobi angle for the phase-stripped 2x2 block
    // [[alpha, |beta|], [|beta|, gamma]].
    let tau = (gamma - alpha) / (2.0 * babs);
    // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
    let t = if tau >= 0.0 {
        -1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let phase = beta / babs;
    let w = phase.conj() * s;
    let n = m.rows();

    // columns: A <- A U with U = [[c, -conj(w)], [w, c]] on the (p,q) plane
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c + akq * w;
        m[(k, q)] = akq * c - akp * w.conj();
    }
    // rows: A <- U^H A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c + aqk * w.conj();
        m[(q, k)] = aqk * c - apk * w;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * w;
        v[(k, q)] = vkq * c - vkp * w.conj();
    }
}

/// Cholesky factor `L` (lower triangular) of a Hermitian positive definite
/// matrix; fails on a nonpositive pivot.
pub fn cholesky(a: &Matrix) -> Option<Matrix> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            if i == j {
                let d = s.re;
                if d <= 0.0 || !d.is_finite() {
                    return None;
                }
                l[(i, i)] = C64::new(libm::sqrt(d), 0.0);
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Solves `L L^H x = b` given the Cholesky factor.
fn cholesky_solve(l: &Matrix, b: &[C64]) -> Vec<C64> {
    let n = l.rows();
    let mut y = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[(k, i)].conj() * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Smallest eigenvalue by shift-and-invert power iteration: factors
/// `A - sigma I` (which is PD when `sigma < lambda_min`) and reports the
/// Rayleigh quotient on `A` itself. When the factorization fails, `sigma`
/// is walked further down until it succeeds.
fn inverse_iteration(a: &Matrix, mut sigma: f64, iterations: usize) -> Option<f64> {
    let n = a.rows();
    let diag_scale = (0..n).map(|i| a[(i, i)].re.abs()).fold(1e-300, f64::max);
    let shifted = |s: f64| a.add(&Matrix::identity(n).scale(C64::new(-s, 0.0)));
    let mut l = cholesky(&shifted(sigma));
    let mut widen = 1e-12 * diag_scale;
    let mut attempts = 0;
    while l.is_none() && attempts < 6 {
        sigma -= widen;
        widen *= 100.0;
        l = cholesky(&shifted(sigma));
        attempts += 1;
    }
    let l = l?;

    // deterministic full-spectrum start vector
    let mut x: Vec<C64> = (0..n)
        .map(|j| {
            let t = j as f64;
            C64::new(libm::cos(1.7 * t + 0.3), libm::sin(0.9 * t + 0.1))
        })
        .collect();
    let s = norm(&x);
    for z in x.iter_mut() {
        *z /= s;
    }
    for _ in 0..iterations {
        let y = cholesky_solve(&l, &x);
        let s = norm(&y);
        if !s.is_finite() || s == 0.0 {
            return None;
        }
        x = y.into_iter().map(|z| z / s).collect();
    }
    let ax = a.apply(&x);
    let rayleigh: C64 = x.iter().zip(ax.iter()).map(|(u, v)| u.conj() * v).sum();
    Some(rayleigh.re)
}

/// Smallest eigenvalue of a Hermitian PSD matrix, certified by agreement of
/// the Jacobi spectrum with 50 inverse power iterations.
pub fn smallest_eigenvalue(a: &Matrix) -> Result<f64> {
    let vals = hermitian_eigenvalues(a)?;
    let jacobi = vals[0];
    let scale = a.max_abs().max(1.0);
    // seed the shift just below the Jacobi value so the iteration locks on
    // fast even when the low end of the spectrum is clustered
    let sigma = jacobi - 1e-9 * scale;
    match inverse_iteration(a, sigma, 50) {
        Some(inv) => {
            let tol = 1e-8 * scale;
            if (jacobi - inv).abs() <= tol {
                Ok(jacobi)
            } else {
                Err(Error::EigenNotConverged { jacobi, inverse: inv })
            }
        }
        // Factorization failure means lambda_min is at rounding level; the
        // Jacobi value is then the only meaningful answer.
        None if jacobi.abs() <= 1e-12 * scale => Ok(jacobi),
        None => Err(Error::EigenNotConverged {
            jacobi,
            inverse: f64::NAN,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hermitian_fixture(n: usize) -> Matrix {
        // A = B^H B + small diagonal, deterministic entries.
        let b = Matrix::from_fn(n, n, |i, j| {
            let t = (i * n + j) as f64;
            C64::new(libm::sin(0.7 * t + 0.2), libm::cos(1.3 * t))
        });
        let mut a = b.gram();
        for i in 0..n {
            a[(i, i)] += C64::new(0.01 * (i as f64 + 1.0), 0.0);
        }
        a
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let mut a = Matrix::zeros(2, 2);
        a[(0, 0)] = C64::new(2.0, 0.0);
        a[(0, 1)] = C64::new(0.0, 1.0);
        a[(1, 0)] = C64::new(0.0, -1.0);
        a[(1, 1)] = C64::new(2.0, 0.0);
        let vals = hermitian_eigenvalues(&a).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-13);
        assert!((vals[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigen_residuals_and_trace() {
        let a = hermitian_fixture(12);
        let (vals, vecs) = hermitian_eigen(&a).unwrap();
        let trace: f64 = (0..12).map(|i| a[(i, i)].re).sum();
        let sum: f64 = vals.iter().sum();
        assert!((trace - sum).abs() < 1e-10);
        for k in 0..12 {
            let v: Vec<C64> = (0..12).map(|i| vecs[(i, k)]).collect();
            let av = a.apply(&v);
            let mut res: f64 = 0.0;
            for i in 0..12 {
                res = res.max((av[i] - v[i] * vals[k]).norm());
            }
            assert!(res < 1e-11, "residual {res} for eigenpair {k}");
        }
    }

    #[test]
    fn smallest_eigenvalue_agrees_with_jacobi_spectrum() {
        let a = hermitian_fixture(16);
        let vals = hermitian_eigenvalues(&a).unwrap();
        let lam = smallest_eigenvalue(&a).unwrap();
        assert!((lam - vals[0]).abs() < 1e-10);
    }

    #[test]
    fn identity_has_unit_smallest_eigenvalue() {
        let a = Matrix::identity(9);
        assert!((smallest_eigenvalue(&a).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cholesky_roundtrip() {
        let a = hermitian_fixture(10);
        let l = cholesky(&a).unwrap();
        let rebuilt = l.mul(&l.adjoint());
        assert!(rebuilt.sub(&a).max_abs() < 1e-10 * a.max_abs());
    }
}
