//! The obstruction family: an odd data function with a prescribed power of
//! `|cos(beta t)|` whose deep-zero data stays bounded while the function it
//! would have to come from loses all of its mass into the zeros of the
//! cosine.
//!
//! For `theta` at or below 1/2 the mass integral diverges; the graded-panel
//! mesh stops at a fixed distance from each cosine zero (see
//! [`crate::quad::GRADING_CUTOFF`]), so the reported values are finite
//! regularizations that grow without bound as `theta` decreases. Ratios
//! between them are what the sweeps compare, and those trends survive the
//! regularization.

use alloc::vec::Vec;

use crate::bargmann::{bargmann_kernel, L2Function, QuadratureGrid};
use crate::error::{Error, Result};
use crate::quad::{graded_subdivision, Panel};
use crate::C64;

/// Half-line truncation for the mass integrals. The integrands carry an
/// `(1+t^2)^{-2}` envelope, so the relative truncation error is far below
/// the quadrature tolerance.
pub const LINE_CUTOFF: f64 = 2000.0;

/// Half-line truncation for the pointwise probe, whose integrand carries a
/// Gaussian factor.
const PROBE_CUTOFF: f64 = 40.0;

const REL_TOL: f64 = 1e-9;
const MAX_ROUNDS: usize = 5;

/// Positive zeros of `cos(beta t)` up to `t_max`: `(k + 1/2) pi / beta`.
pub fn cos_zeros(beta: f64, t_max: f64) -> Vec<f64> {
    assert!(beta > 0.0);
    let mut zeros = Vec::new();
    let mut k = 0u64;
    loop {
        let z = (k as f64 + 0.5) * core::f64::consts::PI / beta;
        if z > t_max {
            break;
        }
        zeros.push(z);
        k += 1;
    }
    zeros
}

fn check_params(theta: f64, beta: f64) -> Result<()> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::InvalidArgument("theta must be positive"));
    }
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidArgument("beta must be positive"));
    }
    Ok(())
}

/// Local panels for one period window `[-h, h]` around a cosine zero,
/// graded into the zero from both sides; `h` is the half period.
fn window_panels(half_period: f64) -> Vec<Panel> {
    let mut panels = graded_subdivision(-half_period, 0.0, false, true);
    panels.extend(graded_subdivision(0.0, half_period, true, false));
    panels
}

/// Integrates over `[0, t_end]` (extended to a whole number of periods) as a
/// sum over the windows `[z_k - h, z_k + h]` around the cosine zeros. The
/// integrand receives the window index and the local coordinate `s = t - z_k`
/// kept exact down to the grading cutoff; `|cos(beta t)| = |sin(beta s)|`
/// there, so the singular factor never suffers the cancellation that
/// evaluating `cos` at a global coordinate near its zero would.
fn windowed_integral(
    beta: f64,
    t_end: f64,
    abs_floor: f64,
    f: impl Fn(usize, f64) -> C64,
) -> Result<C64> {
    let half_period = 0.5 * core::f64::consts::PI / beta;
    let zeros = cos_zeros(beta, t_end);
    let panels = window_panels(half_period);
    let mut total = C64::new(0.0, 0.0);
    for k in 0..zeros.len() {
        total += crate::quad::integrate_panels_refining_with_floor(
            |s| f(k, s),
            &panels,
            REL_TOL,
            abs_floor,
            MAX_ROUNDS,
        )?;
    }
    Ok(total)
}

/// Global coordinate of the local point `s` in window `k`.
fn window_center(beta: f64, k: usize) -> f64 {
    (k as f64 + 0.5) * core::f64::consts::PI / beta
}

/// `integral_0^inf |cos(beta t)|^p (1 + t^2)^{-2} dt` over the windowed
/// mesh; `p <= -1` is understood in the regularized sense.
fn cos_power_envelope_integral(p: f64, beta: f64) -> Result<f64> {
    let v = windowed_integral(beta, LINE_CUTOFF, 0.0, |k, s| {
        let t = window_center(beta, k) + s;
        let singular = libm::pow(libm::sin(beta * s).abs(), p);
        C64::new(singular / sq(1.0 + t * t), 0.0)
    })?;
    Ok(v.re)
}

/// `eta_theta(t) = sgn(t) |cos(beta t)|^theta / (1 + t^2)`.
pub fn counterexample_eta(theta: f64, beta: f64, grid: &QuadratureGrid) -> Result<L2Function> {
    check_params(theta, beta)?;
    Ok(L2Function::from_fn(grid, |t| {
        let mag = libm::pow(libm::cos(beta * t).abs(), theta) / (1.0 + t * t);
        C64::new(mag * sign(t), 0.0)
    }))
}

/// The function the data would have to come from:
/// `phi_theta = eta_theta / (2 cos(beta t))`. Unbounded at the cosine
/// zeros; only meaningful on grids that avoid them.
pub fn counterexample_phi(theta: f64, beta: f64, grid: &QuadratureGrid) -> Result<L2Function> {
    check_params(theta, beta)?;
    Ok(L2Function::from_fn(grid, |t| C64::new(phi_value(theta, beta, t), 0.0)))
}

fn sign(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn phi_value(theta: f64, beta: f64, t: f64) -> f64 {
    let cos = libm::cos(beta * t);
    let mag = libm::pow(cos.abs(), theta - 1.0) / (1.0 + t * t);
    0.5 * mag * sign(t) * sign(cos)
}

/// `||eta_theta||^2 = 2 integral_0^inf |cos(beta t)|^{2 theta} (1+t^2)^{-2} dt`.
/// Bounded by twice [`envelope_mass`] for every positive `theta`.
pub fn eta_norm_sqr(theta: f64, beta: f64) -> Result<f64> {
    check_params(theta, beta)?;
    Ok(2.0 * cos_power_envelope_integral(2.0 * theta, beta)?)
}

/// `||phi_theta||^2 = (1/2) integral_0^inf |cos(beta t)|^{2 theta - 2}
/// (1+t^2)^{-2} dt`, under the fixed-cutoff regularization described in the
/// module docs. Diverges (grows with the cutoff) once `theta <= 1/2`.
pub fn phi_norm_sqr(theta: f64, beta: f64) -> Result<f64> {
    check_params(theta, beta)?;
    Ok(0.5 * cos_power_envelope_integral(2.0 * theta - 2.0, beta)?)
}

fn sq(x: f64) -> f64 {
    x * x
}

/// `integral_R (1+t^2)^{-2} dt = pi/2`; dominates the data mass for every
/// `theta`.
pub fn envelope_mass() -> Result<f64> {
    Ok(2.0 * cos_power_envelope_integral(0.0, 1.0)?)
}

/// One row of the `theta` sweep: bounded data mass against the (regularized)
/// mass the source function would need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub theta: f64,
    pub beta: f64,
    /// Deep-zero data mass: `(1/4) ||eta_theta||^2` (the even part vanishes
    /// identically for this family).
    pub numerator: f64,
    /// Regularized `||phi_theta||^2`.
    pub denominator: f64,
    pub ratio: f64,
}

/// Evaluates both masses for one `(theta, beta)` pair.
pub fn sampling_ratio(theta: f64, beta: f64) -> Result<SweepRecord> {
    let numerator = 0.25 * eta_norm_sqr(theta, beta)?;
    let denominator = phi_norm_sqr(theta, beta)?;
    Ok(SweepRecord {
        theta,
        beta,
        numerator,
        denominator,
        ratio: numerator / denominator,
    })
}

/// Value of the transform of `phi_theta` at one point, against the deep-zero
/// data mass: the point value stays of order one while the source mass
/// diverges.
#[derive(Debug, Clone, Copy)]
pub struct PointwiseProbe {
    pub theta: f64,
    pub beta: f64,
    pub point: C64,
    pub value: C64,
    /// `(1/4) ||eta_theta||^2`.
    pub seminorm: f64,
    /// `|value|^2 / seminorm`.
    pub ratio: f64,
}

/// Direct kernel integral of the transform of `phi_theta` at `w`. The
/// `|cos|^{theta - 1}` singularities are integrable, so no regularization
/// enters here.
pub fn pointwise_probe(theta: f64, beta: f64, w: C64) -> Result<PointwiseProbe> {
    check_params(theta, beta)?;
    // phi is odd, so the transform is integral_0^inf (K(w,t) - K(w,-t)) phi(t) dt.
    // On window k the sign of cos(beta t) is (-1)^{k+1} sgn(s).
    let value = windowed_integral(beta, PROBE_CUTOFF, 1e-13, |k, s| {
        let t = window_center(beta, k) + s;
        let singular = libm::pow(libm::sin(beta * s).abs(), theta - 1.0);
        let cos_sign = if k % 2 == 0 { -sign(s) } else { sign(s) };
        let smooth = (bargmann_kernel(w, t) - bargmann_kernel(w, -t)) * (0.5 / (1.0 + t * t));
        smooth * (singular * cos_sign)
    })?;
    let seminorm = 0.25 * eta_norm_sqr(theta, beta)?;
    Ok(PointwiseProbe {
        theta,
        beta,
        point: w,
        value,
        seminorm,
        ratio: value.norm_sqr() / seminorm,
    })
}
