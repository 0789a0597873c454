//! Numerical Bargmann transform between `L^2(R)` and Fock coefficients.
//!
//! The transform kernel is `(2 pi)^{-1/4} e^{-izt + z^2/2 - t^2/4}`. Its
//! adjoint maps the Fock basis `e_j` to an orthonormal family `h_j` of
//! scaled Hermite functions on the line; forward coefficients are plain
//! quadrature inner products against that family, and the inverse is the
//! synthesis sum. Normalization and phase of `h_j` are pinned by tests
//! against direct quadrature of the kernel, not taken from a reference.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::quad::{gauss_hermite_modified, Panel};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Gauss-Hermite in the scaling matched to the `e^{-t^2/2}` densities
    /// this crate integrates.
    GaussHermiteScaled,
    /// Composite Gauss-Legendre over explicit panels.
    AdaptivePanel,
    /// Uniform trapezoid nodes (used by the recovery demonstrations).
    Uniform,
}

/// Nodes and positive weights approximating `integral f(t) dt` for the
/// function class at hand.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: GridKind,
}

impl QuadratureGrid {
    /// `n`-node Gauss-Hermite rule rescaled by `sqrt(2)`, exact for
    /// `p(t) e^{-t^2/2}` with `p` polynomial of degree below `2n`.
    pub fn gauss_hermite_scaled(n: usize) -> Result<Self> {
        let (x, w) = gauss_hermite_modified(n)?;
        let s = libm::sqrt(2.0);
        Ok(QuadratureGrid {
            nodes: x.iter().map(|&t| s * t).collect(),
            weights: w.iter().map(|&t| s * t).collect(),
            kind: GridKind::GaussHermiteScaled,
        })
    }

    /// Symmetric uniform grid `t = k * step`, `k = -half_steps..=half_steps`,
    /// trapezoid weights.
    pub fn uniform_symmetric(step: f64, half_steps: usize) -> Self {
        assert!(step > 0.0 && half_steps >= 1);
        let n = 2 * half_steps + 1;
        let nodes: Vec<f64> = (0..n)
            .map(|k| (k as isize - half_steps as isize) as f64 * step)
            .collect();
        let mut weights = vec![step; n];
        weights[0] = 0.5 * step;
        weights[n - 1] = 0.5 * step;
        QuadratureGrid { nodes, weights, kind: GridKind::Uniform }
    }

    /// Composite Gauss-Legendre rule over the given panels.
    pub fn from_panels(panels: &[Panel], order: usize) -> Self {
        let (x, w) = crate::quad::gauss_legendre(order);
        let mut nodes = Vec::with_capacity(panels.len() * order);
        let mut weights = Vec::with_capacity(panels.len() * order);
        for p in panels {
            let c = 0.5 * (p.a + p.b);
            let h = 0.5 * (p.b - p.a);
            for (&xi, &wi) in x.iter().zip(&w) {
                nodes.push(c + h * xi);
                weights.push(wi * h);
            }
        }
        QuadratureGrid { nodes, weights, kind: GridKind::AdaptivePanel }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Mirror symmetry about the origin (node i against node n-1-i).
    pub fn is_symmetric(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|i| {
            (self.nodes[i] + self.nodes[n - 1 - i]).abs() <= 1e-12
                && (self.weights[i] - self.weights[n - 1 - i]).abs() <= 1e-12
        })
    }
}

/// Function on the line sampled at the nodes of a quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Function {
    grid: QuadratureGrid,
    values: Vec<C64>,
}

impl L2Function {
    pub fn new(grid: QuadratureGrid, values: Vec<C64>) -> Self {
        assert_eq!(grid.len(), values.len(), "values must match the grid");
        L2Function { grid, values }
    }

    pub fn from_fn(grid: &QuadratureGrid, mut f: impl FnMut(f64) -> C64) -> Self {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        L2Function { grid: grid.clone(), values }
    }

    pub fn zero(grid: &QuadratureGrid) -> Self {
        L2Function {
            grid: grid.clone(),
            values: vec![C64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn norm_sqr(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(&w, v)| w * v.norm_sqr())
            .sum()
    }

    /// `sum_i w_i u(t_i) conj(v(t_i))`; both functions must share a grid.
    pub fn inner(&self, other: &L2Function) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .grid
            .weights()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(&w, (u, v))| u * v.conj() * w)
            .sum())
    }

    /// Pointwise multiplication by `e^{i beta t}` (real modulation only,
    /// matching the reduction to positive beta).
    pub fn modulate(&self, beta: f64) -> L2Function {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&t, v)| v * C64::new(0.0, beta * t).exp())
            .collect();
        L2Function { grid: self.grid.clone(), values }
    }

    /// `phi(t) -> phi(-t)`, realized as sample-order reversal on a
    /// symmetric grid.
    pub fn reflect(&self) -> Result<L2Function> {
        if !self.grid.is_symmetric() {
            return Err(Error::AsymmetricGrid);
        }
        let mut values = self.values.clone();
        values.reverse();
        Ok(L2Function { grid: self.grid.clone(), values })
    }

    pub fn add(&self, other: &L2Function) -> Result<L2Function> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(L2Function {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &L2Function) -> Result<L2Function> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(L2Function {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: C64) -> L2Function {
        L2Function {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}

/// The Bargmann kernel `(2 pi)^{-1/4} e^{-izt + z^2/2 - t^2/4}`.
pub fn bargmann_kernel(z: C64, t: f64) -> C64 {
    let quarter = libm::pow(2.0 * core::f64::consts::PI, -0.25);
    (C64::new(0.0, -t) * z + z * z * 0.5 - C64::new(0.25 * t * t, 0.0)).exp() * quarter
}

/// Values `h_0(t) .. h_{degree-1}(t)` of the orthonormal preimage family
/// `h_j = B* e_j`: `h_j(t) = i^j He_j(t) e^{-t^2/4} / sqrt(j! sqrt(2 pi))`,
/// evaluated by a normalized three-term recurrence that keeps everything at
/// unit scale.
pub fn preimage_basis(degree: usize, t: f64) -> Vec<C64> {
    let mut out = Vec::with_capacity(degree);
    if degree == 0 {
        return out;
    }
    let phi0 = libm::pow(2.0 * core::f64::consts::PI, -0.25) * libm::exp(-0.25 * t * t);
    let mut prev = phi0;
    out.push(C64::new(phi0, 0.0));
    if degree == 1 {
        return out;
    }
    let mut cur = t * phi0;
    let i_unit = C64::new(0.0, 1.0);
    let mut phase = i_unit;
    out.push(phase * cur);
    for j in 1..degree - 1 {
        let next = (t * cur - libm::sqrt(j as f64) * prev) / libm::sqrt(j as f64 + 1.0);
        prev = cur;
        cur = next;
        phase *= i_unit;
        out.push(phase * cur);
    }
    out
}

/// Forward transform: coefficients `c_j = <B phi, e_j> = <phi, h_j>_{L^2}`
/// by quadrature. The grid is trusted to resolve `phi e^{-t^2/4}`; use
/// [`bargmann_forward_fn`] when the input is available as a function and a
/// node-doubling self-check is wanted.
pub fn bargmann_forward(phi: &L2Function, degree: usize) -> FockVector {
    let mut coeffs = vec![C64::new(0.0, 0.0); degree];
    for ((&t, &w), v) in phi
        .grid()
        .nodes()
        .iter()
        .zip(phi.grid().weights())
        .zip(phi.values())
    {
        let basis = preimage_basis(degree, t);
        for (c, h) in coeffs.iter_mut().zip(&basis) {
            *c += v * h.conj() * w;
        }
    }
    FockVector::new(coeffs)
}

/// Forward transform of a function, with a node-doubling self-consistency
/// check: fails with `GridUnderresolved` when the `n`-node and `2n+1`-node
/// Gauss-Hermite answers differ by more than `tol` in any coefficient.
pub fn bargmann_forward_fn(
    f: impl Fn(f64) -> C64,
    n_nodes: usize,
    degree: usize,
    tol: f64,
) -> Result<FockVector> {
    let coarse_grid = QuadratureGrid::gauss_hermite_scaled(n_nodes)?;
    let fine_grid = QuadratureGrid::gauss_hermite_scaled(2 * n_nodes + 1)?;
    let coarse = bargmann_forward(&L2Function::from_fn(&coarse_grid, &f), degree);
    let fine = bargmann_forward(&L2Function::from_fn(&fine_grid, &f), degree);
    let delta = coarse
        .coeffs()
        .iter()
        .zip(fine.coeffs())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if delta > tol {
        return Err(Error::GridUnderresolved { delta });
    }
    Ok(fine)
}

/// Inverse (= adjoint) transform: synthesizes `sum_j c_j h_j` on the grid.
pub fn bargmann_inverse(v: &FockVector, grid: &QuadratureGrid) -> L2Function {
    let degree = v.degree();
    let values = grid
        .nodes()
        .iter()
        .map(|&t| {
            let basis = preimage_basis(degree, t);
            v.coeffs()
                .iter()
                .zip(&basis)
                .map(|(c, h)| c * h)
                .sum::<C64>()
        })
        .collect();
    L2Function::new(grid.clone(), values)
}
