//! Quadrature building blocks: Gauss-Hermite and Gauss-Legendre rules and a
//! graded-panel integrator for integrands with power singularities at known
//! breakpoints.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::C64;

/// Eigenvalues of a symmetric tridiagonal matrix (diagonal `d`, subdiagonal
/// `e`), QL with implicit shifts. Ascending order.
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    assert_eq!(e.len() + 1, n, "subdiagonal must have length n-1");
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
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
            if iter > 100 {
                return Err(Error::EigenNotConverged {
                    jacobi: f64::NAN,
                    inverse: f64::NAN,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if !underflow {
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Orthonormal Hermite functions wrt `dx` evaluated at `x`: returns
/// `psi_0(x) .. psi_n(x)`.
fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n + 1);
    let p0 = libm::exp(-0.5 * x * x) / libm::pow(core::f64::consts::PI, 0.25);
    psi.push(p0);
    if n == 0 {
        return psi;
    }
    psi.push(core::f64::consts::SQRT_2 * x * p0);
    for k in 1..n {
        let kf = k as f64;
        let next = (libm::sqrt(2.0) * x * psi[k] - libm::sqrt(kf) * psi[k - 1])
            / libm::sqrt(kf + 1.0);
        psi.push(next);
    }
    psi
}

/// Gauss-Hermite rule in "modified" form: nodes `x_i` and weights
/// `w_i = v_i * exp(x_i^2)` such that `sum w_i g(x_i)` approximates
/// `integral g(x) dx` for `g` with built-in Gaussian decay. All quantities
/// stay O(1), so the rule is safe for several hundred nodes.
pub fn gauss_hermite_modified(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    assert!(n >= 1);
    let d = vec![0.0; n];
    let e: Vec<f64> = (1..n).map(|k| libm::sqrt(k as f64 / 2.0)).collect();
    let mut nodes = tridiagonal_eigenvalues(d, e)?;
    // Newton polish on psi_n; psi_n'(x) = sqrt(2n) psi_{n-1}(x) at a root.
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let psi = hermite_functions(n, *x);
            let deriv = libm::sqrt(2.0 * n as f64) * psi[n - 1] - *x * psi[n];
            if deriv != 0.0 {
                *x -= psi[n] / deriv;
            }
        }
    }
    let weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let psi = hermite_functions(n - 1, x);
            1.0 / psi.iter().map(|p| p * p).sum::<f64>()
        })
        .collect();
    Ok((nodes, weights))
}

/// Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    nodes.sort_by(f64::total_cmp);
    (nodes, weights)
}

/// One integration panel `[a, b]`.
#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
}

/// Geometric grading constants for singular endpoints: panels shrink by
/// `GRADING_RATIO` toward the endpoint and stop at distance `GRADING_CUTOFF`.
/// The sliver inside the cutoff is dropped, which regularizes integrands
/// whose singular exponent is not integrable.
pub const GRADING_CUTOFF: f64 = 1e-40;
pub const GRADING_RATIO: f64 = 4.0;

/// Subdivides `[a, b]`, grading geometrically toward any endpoint flagged
/// singular.
pub fn graded_subdivision(a: f64, b: f64, singular_left: bool, singular_right: bool) -> Vec<Panel> {
    assert!(b > a);
    let mid = 0.5 * (a + b);
    let mut panels = Vec::new();
    if singular_left {
        let mut hi = mid - a;
        loop {
            let lo = (hi / GRADING_RATIO).max(GRADING_CUTOFF);
            if lo >= hi {
                break;
            }
            panels.push(Panel { a: a + lo, b: a + hi });
            if lo <= GRADING_CUTOFF {
                break;
            }
            hi = lo;
        }
        panels.reverse();
    } else {
        panels.push(Panel { a, b: mid });
    }
    if singular_right {
        let mut hi = b - mid;
        let mut right = Vec::new();
        loop {
            let lo = (hi / GRADING_RATIO).max(GRADING_CUTOFF);
            if lo >= hi {
                break;
            }
            right.push(Panel { a: b - hi, b: b - lo });
            if lo <= GRADING_CUTOFF {
                break;
            }
            hi = lo;
        }
        panels.extend(right);
    } else {
        panels.push(Panel { a: mid, b });
    }
    panels
}

fn gl_on_panel(f: &mut impl FnMut(f64) -> C64, p: Panel, nodes: &[f64], weights: &[f64]) -> C64 {
    let c = 0.5 * (p.a + p.b);
    let h = 0.5 * (p.b - p.a);
    let mut s = C64::new(0.0, 0.0);
    for (&x, &w) in nodes.iter().zip(weights) {
        s += f(c + h * x) * (w * h);
    }
    s
}

/// Integrates over the panels with Gauss-Legendre, refining by bisecting
/// every panel until the total moves by less than `rel_tol` (relative).
pub fn integrate_panels_refining(
    f: impl FnMut(f64) -> C64,
    panels: &[Panel],
    rel_tol: f64,
    max_rounds: usize,
) -> Result<C64> {
    integrate_panels_refining_with_floor(f, panels, rel_tol, 0.0, max_rounds)
}

/// Like [`integrate_panels_refining`], but also accepts an absolute change
/// below `abs_floor`; needed for oscillatory integrands whose total is tiny
/// against the mass being cancelled.
pub fn integrate_panels_refining_with_floor(
    mut f: impl FnMut(f64) -> C64,
    panels: &[Panel],
    rel_tol: f64,
    abs_floor: f64,
    max_rounds: usize,
) -> Result<C64> {
    let (nodes, weights) = gauss_legendre(16);
    let mut current: Vec<Panel> = panels.to_vec();
    let mut total = C64::new(0.0, 0.0);
    for p in &current {
        total += gl_on_panel(&mut f, *p, &nodes, &weights);
    }
    let mut last_change = f64::INFINITY;
    for _ in 0..max_rounds {
        let mut split = Vec::with_capacity(current.len() * 2);
        for p in &current {
            let m = 0.5 * (p.a + p.b);
            split.push(Panel { a: p.a, b: m });
            split.push(Panel { a: m, b: p.b });
        }
        let mut refined = C64::new(0.0, 0.0);
        for p in &split {
            refined += gl_on_panel(&mut f, *p, &nodes, &weights);
        }
        last_change = (refined - total).norm();
        total = refined;
        current = split;
        if last_change <= rel_tol * refined.norm().max(1e-300) + abs_floor {
            return Ok(total);
        }
    }
    Err(Error::QuadratureNotConverged { last_change })
}

/// Real-valued convenience wrapper around [`integrate_panels_refining`].
pub fn integrate_panels_refining_real(
    mut f: impl FnMut(f64) -> f64,
    panels: &[Panel],
    rel_tol: f64,
    max_rounds: usize,
) -> Result<f64> {
    integrate_panels_refining(|t| C64::new(f(t), 0.0), panels, rel_tol, max_rounds).map(|z| z.re)
}
