//! Truncated matrix realizations of the Fock translates, rotations, the
//! reflection, and general rigid-motion unitaries.
//!
//! A Fock translate spreads a degree-n basis state over roughly
//! `|alpha| sqrt(n) + |alpha|^2` neighboring degrees, so the matrices are
//! rectangular (`rows >= cols`) and carry a `tail_leak` figure: the largest
//! column mass lost to the truncation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::matrix::Matrix;
use crate::C64;

/// Column-mass tolerance targeted by the automatic padding rule.
pub const AUTO_TAIL_TOL: f64 = 1e-12;

/// Rotation-translation element `(rho, alpha)` with `|rho| = 1`, acting as
/// `z -> rho z - alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rho: C64,
    pub alpha: C64,
}

impl RigidMotion {
    pub fn new(rho: C64, alpha: C64) -> Result<Self> {
        if (rho.norm() - 1.0).abs() >= 1e-12 {
            return Err(Error::InvalidArgument("rotation part must be unimodular"));
        }
        Ok(RigidMotion { rho, alpha })
    }

    pub fn translation(alpha: C64) -> Self {
        RigidMotion { rho: C64::new(1.0, 0.0), alpha }
    }

    pub fn rotation(rho: C64) -> Result<Self> {
        Self::new(rho, C64::new(0.0, 0.0))
    }

    pub fn reflection() -> Self {
        RigidMotion { rho: C64::new(-1.0, 0.0), alpha: C64::new(0.0, 0.0) }
    }

    /// `(rho, alpha)^{-1} = (conj(rho), -conj(rho) alpha)`.
    pub fn inverse(&self) -> RigidMotion {
        RigidMotion {
            rho: self.rho.conj(),
            alpha: -(self.rho.conj() * self.alpha),
        }
    }

    /// Group law `(rho', alpha') (rho, alpha) = (rho' rho, rho' alpha + alpha')`.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rho: self.rho * other.rho,
            alpha: self.rho * other.alpha + self.alpha,
        }
    }
}

/// Truncated operator between coefficient spaces, with the tail-mass lost
/// per column.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    matrix: Matrix,
    tail_leak: f64,
}

impl OperatorMatrix {
    pub fn from_matrix_unitary(matrix: Matrix) -> Self {
        let tail_leak = tail_leak_of(&matrix);
        OperatorMatrix { matrix, tail_leak }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn entry(&self, m: usize, n: usize) -> C64 {
        self.matrix[(m, n)]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn tail_leak(&self) -> f64 {
        self.tail_leak
    }

    /// Applies to a coefficient vector; the input is zero-padded or
    /// truncated to the column count.
    pub fn apply(&self, v: &FockVector) -> FockVector {
        let x = v.padded(self.cols()).truncated(self.cols());
        FockVector::new(self.matrix.apply(x.coeffs()))
    }
}

/// Largest truncation loss `1 - ||column||^2` over the columns. Exact
/// unitary columns have norm one, so this is nonnegative up to rounding.
fn tail_leak_of(m: &Matrix) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..m.cols() {
        let mut mass = 0.0;
        for i in 0..m.rows() {
            mass += m[(i, j)].norm_sqr();
        }
        worst = worst.max(1.0 - mass);
    }
    worst.max(0.0)
}

/// Matrix of the Fock translate `U_alpha` between truncated coefficient
/// spaces: entry `(m, n) = <U_alpha e_n, e_m>`.
///
/// Column 0 is the coherent-state expansion
/// `e^{-|alpha|^2/2} conj(alpha)^m / sqrt(m!)`; higher columns follow the
/// ladder recurrence
/// `sqrt(n+1) D[m][n+1] = sqrt(m) D[m-1][n] - alpha D[m][n]`,
/// which comes from `U_alpha (z f) = (z - alpha) U_alpha f`. Unlike the
/// alternating power-series expansion of the entries, the recurrence keeps
/// every intermediate at unit scale, so it stays accurate at degrees in the
/// hundreds.
/// The ladder recurrence above, stable for `|alpha| <= 1`: the error picked
/// up per column grows like `|alpha| / sqrt(n)`, so larger shifts lose
/// accuracy geometrically toward the high columns and are built by
/// [`displacement_matrix`] from half-shift factors instead.
fn displacement_recurrence(alpha: C64, rows: usize, cols: usize) -> Matrix {
    let mut d = Matrix::zeros(rows, cols);
    let ac = alpha.conj();
    let mut c = C64::new(libm::exp(-0.5 * alpha.norm_sqr()), 0.0);
    for m in 0..rows {
        if m > 0 {
            c *= ac / libm::sqrt(m as f64);
        }
        d[(m, 0)] = c;
    }
    for n in 0..cols.saturating_sub(1) {
        let inv = 1.0 / libm::sqrt(n as f64 + 1.0);
        for m in 0..rows {
            let prev = if m > 0 {
                d[(m - 1, n)] * libm::sqrt(m as f64)
            } else {
                C64::new(0.0, 0.0)
            };
            d[(m, n + 1)] = (prev - alpha * d[(m, n)]) * inv;
        }
    }
    d
}

pub fn displacement_matrix(alpha: C64, rows: usize, cols: usize) -> OperatorMatrix {
    assert!(rows >= cols && cols >= 1, "need rows >= cols >= 1");
    if alpha == C64::new(0.0, 0.0) {
        let mut d = Matrix::zeros(rows, cols);
        for j in 0..cols {
            d[(j, j)] = C64::new(1.0, 0.0);
        }
        return OperatorMatrix { matrix: d, tail_leak: 0.0 };
    }
    let a = alpha.norm();
    if a <= 1.0 {
        let d = displacement_recurrence(alpha, rows, cols);
        let tail_leak = tail_leak_of(&d);
        return OperatorMatrix { matrix: d, tail_leak };
    }
    // Scaling route for larger shifts: U_alpha = U_delta^steps with
    // |delta| <= 1 and no residual phase (Im(delta conj(delta)) = 0). Each
    // rectangular factor gets enough rows to hold the spread of the columns
    // it receives, so the chain loses no mass before the final read-out.
    let k = libm::ceil(libm::log2(a)) as u32;
    let steps = 1usize << k;
    let delta = alpha / steps as f64;
    let mut sizes = Vec::with_capacity(steps + 1);
    sizes.push(cols);
    for s in 1..=steps {
        let prev = sizes[s - 1];
        sizes.push(prev + 2 * default_pad(delta, prev));
    }
    let mut acc = displacement_recurrence(delta, sizes[1], sizes[0]);
    for s in 1..steps {
        let out_rows = if s == steps - 1 { sizes[s + 1].max(rows) } else { sizes[s + 1] };
        let next = displacement_recurrence(delta, out_rows, sizes[s]);
        acc = next.mul(&acc);
    }
    let mut d = Matrix::zeros(rows, cols);
    for i in 0..rows.min(acc.rows()) {
        for j in 0..cols {
            d[(i, j)] = acc[(i, j)];
        }
    }
    let tail_leak = tail_leak_of(&d);
    OperatorMatrix { matrix: d, tail_leak }
}

/// Starting point of the adaptive padding rule: displacement spreads a
/// degree-n state over O(|alpha| sqrt(n) + |alpha|^2) degrees.
pub fn default_pad(alpha: C64, cols: usize) -> usize {
    let a = alpha.norm();
    libm::ceil(8.0 * (a * a + a * libm::sqrt(cols as f64))) as usize + 8
}

/// Caller's choice of padding for truncated unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pad {
    /// Start from the default rule and double until the tail leak drops
    /// below [`AUTO_TAIL_TOL`].
    Auto,
    Fixed(usize),
}

/// Displacement matrix with `rows = cols + pad`, doubling an automatic pad
/// until the tail leak is below [`AUTO_TAIL_TOL`].
pub fn displacement_padded(alpha: C64, cols: usize, pad: Pad) -> OperatorMatrix {
    match pad {
        Pad::Fixed(p) => displacement_matrix(alpha, cols + p, cols),
        Pad::Auto => {
            let mut p = default_pad(alpha, cols);
            loop {
                let d = displacement_matrix(alpha, cols + p, cols);
                if d.tail_leak() < AUTO_TAIL_TOL || p > 1 << 14 {
                    return d;
                }
                p *= 2;
            }
        }
    }
}

/// Reflection `f(z) -> f(-z)` on a truncated space (diagonal signs).
pub fn reflection_matrix(n: usize) -> OperatorMatrix {
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        m[(j, j)] = C64::new(if j % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    OperatorMatrix { matrix: m, tail_leak: 0.0 }
}

/// Rotation acts diagonally: `c_j -> rho^j c_j`.
pub fn rotate_coeffs(v: &FockVector, rho: C64) -> FockVector {
    let mut power = C64::new(1.0, 0.0);
    let coeffs = v
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j > 0 {
                power *= rho;
            }
            c * power
        })
        .collect::<Vec<_>>();
    FockVector::new(coeffs)
}

/// Applies `U_{(rho, alpha)}` to a coefficient vector, producing a vector of
/// degree `N + pad`. Decomposition: `U_{(rho, alpha)} = U_{conj(rho) alpha}
/// after the diagonal rotation by rho`. Fails when the displacement loses
/// more column mass than `tail_tol`.
pub fn apply_rigid_motion(
    g: &RigidMotion,
    v: &FockVector,
    pad: Pad,
    tail_tol: f64,
) -> Result<FockVector> {
    if (g.rho.norm() - 1.0).abs() >= 1e-12 {
        return Err(Error::InvalidArgument("rotation part must be unimodular"));
    }
    let rotated = rotate_coeffs(v, g.rho);
    if g.alpha == C64::new(0.0, 0.0) {
        return Ok(rotated);
    }
    let shift = g.rho.conj() * g.alpha;
    let d = displacement_padded(shift, rotated.degree(), pad);
    if d.tail_leak() > tail_tol {
        return Err(Error::ExcessiveTailLeak { leak: d.tail_leak(), tol: tail_tol });
    }
    Ok(d.apply(&rotated))
}

/// Report of the projective commutation identity
/// `U_alpha U_beta = phase * U_{alpha+beta}`.
#[derive(Debug, Clone, Copy)]
pub struct CommutationReport {
    /// `e^{-i Im(alpha conj(beta))}`.
    pub phase: C64,
    /// Worst-case `||U_alpha U_beta e_j - phase U_{alpha+beta} e_j||` over
    /// `j < degree`.
    pub residual: f64,
}

pub fn commutation_check(
    alpha: C64,
    beta: C64,
    degree: usize,
    pad: usize,
) -> Result<CommutationReport> {
    assert!(degree >= 1);
    let b = displacement_matrix(beta, degree + pad, degree);
    let a = displacement_matrix(alpha, degree + 2 * pad, degree + pad);
    let c = displacement_matrix(alpha + beta, degree + 2 * pad, degree);
    let worst_leak = b.tail_leak().max(c.tail_leak());
    if worst_leak > 1e-6 {
        return Err(Error::ExcessiveTailLeak { leak: worst_leak, tol: 1e-6 });
    }
    let phase = C64::new(0.0, -(alpha * beta.conj()).im).exp();
    let composed = a.matrix().mul(b.matrix());
    let diff = composed.sub(&c.matrix().scale(phase));
    let mut residual: f64 = 0.0;
    for j in 0..degree {
        let mut col = 0.0;
        for i in 0..diff.rows() {
            col += diff[(i, j)].norm_sqr();
        }
        residual = residual.max(libm::sqrt(col));
    }
    Ok(CommutationReport { phase, residual })
}

/// Density-shift decay sequence behind the empty-point-spectrum argument:
/// `a_n = e^{-|z - n alpha|^2 / 2} |f(z - n alpha)|` for `n = 0..=n_max`.
/// For `alpha != 0` the sequence tends to zero.
pub fn translate_decay_probe(
    f: &FockVector,
    alpha: C64,
    z: C64,
    n_max: usize,
) -> Result<Vec<f64>> {
    if alpha == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("decay probe needs alpha != 0"));
    }
    if n_max < 1 {
        return Err(Error::InvalidArgument("decay probe needs n_max >= 1"));
    }
    Ok((0..=n_max)
        .map(|n| {
            let p = z - alpha * (n as f64);
            libm::exp(-0.5 * p.norm_sqr()) * f.evaluate(p).norm()
        })
        .collect())
}
