//! The deep-zero seminorm on the truncated Fock space.
//!
//! For an index set `E` and a shift `beta`, the seminorm is
//! `||f||^2_{E,beta} = sum_{j in E} |c_j|^2 + sum_{j in E^c} |(D_beta c)_j|^2`,
//! with the second sum running over the padded range so no complement mass
//! is dropped. Three routes are kept for it: direct summation, the Gram
//! quadratic form `A = P_E + D^H P_{E^c} D`, and (for parity sets) the
//! symmetrization identity through the reflection unitary.

use alloc::vec::Vec;

use crate::bargmann::L2Function;
use crate::eigen::smallest_eigenvalue;
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::matrix::Matrix;
use crate::operators::{displacement_padded, reflection_matrix, Pad};
use crate::C64;

/// Tail-mass guard for explicitly supplied pads.
const TAIL_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Set of derivative indices prescribed at the origin; the complement is
/// prescribed at the shifted point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    /// `{0, 2, 4, ...}`
    Even,
    /// `{1, 3, 5, ...}`
    Odd,
    /// Arbitrary members, interpreted within the working degree; indices
    /// beyond the largest member fall in the complement.
    Explicit(Vec<usize>),
}

impl IndexSet {
    pub fn from_parity(p: Parity) -> Self {
        match p {
            Parity::Even => IndexSet::Even,
            Parity::Odd => IndexSet::Odd,
        }
    }

    pub fn contains(&self, j: usize) -> bool {
        match self {
            IndexSet::Even => j.is_multiple_of(2),
            IndexSet::Odd => j % 2 == 1,
            IndexSet::Explicit(members) => members.binary_search(&j).is_ok(),
        }
    }
}

/// Hermitian PSD matrix realizing the seminorm on the truncated space.
#[derive(Debug, Clone)]
pub struct SeminormForm {
    pub index_set: IndexSet,
    pub beta: f64,
    pub degree: usize,
    /// Padding actually used for the displacement (rows - degree).
    pub pad: usize,
    pub matrix: Matrix,
}

impl SeminormForm {
    /// `v^H A v` (real up to rounding by Hermitian symmetry).
    pub fn quadratic_form(&self, v: &FockVector) -> f64 {
        let x = v.padded(self.degree).truncated(self.degree);
        let ax = self.matrix.apply(x.coeffs());
        x.coeffs()
            .iter()
            .zip(&ax)
            .map(|(c, a)| (c.conj() * a).re)
            .sum()
    }
}

fn displacement_for(beta: C64, degree: usize, pad: Pad) -> Result<crate::OperatorMatrix> {
    let d = displacement_padded(beta, degree, pad);
    if d.tail_leak() > TAIL_GUARD {
        return Err(Error::ExcessiveTailLeak { leak: d.tail_leak(), tol: TAIL_GUARD });
    }
    Ok(d)
}

/// Direct summation route, with a complex shift. The public real-beta
/// surface wraps this; the complex form exists for the rotation-reduction
/// identity, which moves a unimodular factor between the shift and the
/// coefficients.
pub fn seminorm_direct_complex(
    v: &FockVector,
    index_set: &IndexSet,
    beta: C64,
    pad: Pad,
) -> Result<f64> {
    if beta == C64::new(0.0, 0.0) {
        // Both sums recombine into the full norm.
        return Ok(v.norm_sqr());
    }
    let d = displacement_for(beta, v.degree().max(1), pad)?;
    let shifted = d.apply(v);
    let origin: f64 = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(j, _)| index_set.contains(*j))
        .map(|(_, c)| c.norm_sqr())
        .sum();
    let moved: f64 = shifted
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(j, _)| !index_set.contains(*j))
        .map(|(_, c)| c.norm_sqr())
        .sum();
    Ok(origin + moved)
}

/// `||v||^2_{E, beta}` by direct summation.
pub fn seminorm_direct(v: &FockVector, index_set: &IndexSet, beta: f64, pad: Pad) -> Result<f64> {
    if beta < 0.0 {
        return Err(Error::InvalidArgument("beta must be nonnegative"));
    }
    seminorm_direct_complex(v, index_set, C64::new(beta, 0.0), pad)
}

/// Gram-matrix route: `A = P_E + D^H P_{E^c} D` with the complement
/// projection applied on the padded range.
pub fn seminorm_gram(
    index_set: &IndexSet,
    beta: f64,
    degree: usize,
    pad: Pad,
) -> Result<SeminormForm> {
    if beta < 0.0 {
        return Err(Error::InvalidArgument("beta must be nonnegative"));
    }
    if degree < 2 {
        return Err(Error::InvalidArgument("gram form needs degree >= 2"));
    }
    if beta == 0.0 {
        return Ok(SeminormForm {
            index_set: index_set.clone(),
            beta,
            degree,
            pad: 0,
            matrix: Matrix::identity(degree),
        });
    }
    let d = displacement_for(C64::new(beta, 0.0), degree, pad)?;
    let rows = d.rows();
    let mut a = Matrix::zeros(degree, degree);
    for i in 0..degree {
        if index_set.contains(i) {
            a[(i, i)] = C64::new(1.0, 0.0);
        }
    }
    for m in 0..rows {
        if index_set.contains(m) {
            continue;
        }
        for i in 0..degree {
            let dmi = d.entry(m, i).conj();
            if dmi == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..degree {
                a[(i, j)] += dmi * d.entry(m, j);
            }
        }
    }
    Ok(SeminormForm {
        index_set: index_set.clone(),
        beta,
        degree,
        pad: rows - degree,
        matrix: a.hermitize(),
    })
}

/// Symmetrization route for parity sets: with `R` the reflection,
/// even `E` gives `(1/4)||f + Rf||^2 + (1/4)||D_beta f - R D_beta f||^2`,
/// and odd `E` swaps the signs.
pub fn symmetrized_seminorm(v: &FockVector, parity: Parity, beta: f64, pad: Pad) -> Result<f64> {
    if beta <= 0.0 {
        return Err(Error::InvalidArgument("symmetrized seminorm needs beta > 0"));
    }
    let d = displacement_for(C64::new(beta, 0.0), v.degree().max(1), pad)?;
    let shifted = d.apply(v);
    let r_small = reflection_matrix(v.degree().max(1));
    let r_big = reflection_matrix(shifted.degree());
    let rv = r_small.apply(v);
    let rshift = r_big.apply(&shifted);
    let (first, second) = match parity {
        Parity::Even => (v.add(&rv), shifted.sub(&rshift)),
        Parity::Odd => (v.sub(&rv), shifted.add(&rshift)),
    };
    Ok(0.25 * first.norm_sqr() + 0.25 * second.norm_sqr())
}

/// Best sampling constant on the truncation: the smallest eigenvalue of the
/// Gram matrix. `beta = 0` gives exactly 1.
pub fn sampling_constant(index_set: &IndexSet, beta: f64, degree: usize, pad: Pad) -> Result<f64> {
    if beta == 0.0 {
        return Ok(1.0);
    }
    let form = seminorm_gram(index_set, beta, degree, pad)?;
    smallest_eigenvalue(&form.matrix)
}

/// Line-side decomposition: for even `E` returns
/// `(xi, eta) = (phi + reflect(phi), modulate(phi) - reflect(modulate(phi)))`
/// (xi even, eta odd); for odd `E` the starred pair with parities reversed.
pub fn xi_eta(phi: &L2Function, beta: f64, parity: Parity) -> Result<(L2Function, L2Function)> {
    if beta <= 0.0 {
        return Err(Error::InvalidArgument("xi/eta decomposition needs beta > 0"));
    }
    let reflected = phi.reflect()?;
    let modulated = phi.modulate(beta);
    let modulated_reflected = modulated.reflect()?;
    match parity {
        Parity::Even => Ok((
            phi.add(&reflected)?,
            modulated.sub(&modulated_reflected)?,
        )),
        Parity::Odd => Ok((
            phi.sub(&reflected)?,
            modulated.add(&modulated_reflected)?,
        )),
    }
}

/// Result of the recovery formula, with the nodes inside the exclusion band
/// around the zeros of `cos(beta t)` masked out rather than extrapolated.
#[derive(Debug, Clone)]
pub struct RecoveredPhi {
    pub func: L2Function,
    /// `true` where the node was used.
    pub mask: Vec<bool>,
}

impl RecoveredPhi {
    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| !m).count()
    }

    /// Quadrature mass over the unmasked nodes only.
    pub fn unmasked_norm_sqr(&self) -> f64 {
        self.func
            .grid()
            .weights()
            .iter()
            .zip(self.func.values())
            .zip(&self.mask)
            .filter(|&(_, &used)| used)
            .map(|((&w, v), _)| w * v.norm_sqr())
            .sum()
    }
}

/// Solves `phi(t) = (eta(t) + e^{-i beta t} xi(t)) / (2 cos(beta t))` at the
/// nodes where `|cos(beta t)| > exclusion`.
pub fn recover_phi(
    xi: &L2Function,
    eta: &L2Function,
    beta: f64,
    exclusion: f64,
) -> Result<RecoveredPhi> {
    if !(exclusion > 0.0 && exclusion < 1.0) {
        return Err(Error::InvalidArgument("exclusion must lie in (0, 1)"));
    }
    if beta <= 0.0 {
        return Err(Error::InvalidArgument("recovery needs beta > 0"));
    }
    if xi.grid() != eta.grid() {
        return Err(Error::GridMismatch);
    }
    if !xi.grid().is_symmetric() {
        return Err(Error::AsymmetricGrid);
    }
    let mut values = Vec::with_capacity(xi.grid().len());
    let mut mask = Vec::with_capacity(xi.grid().len());
    for (i, &t) in xi.grid().nodes().iter().enumerate() {
        let cos = libm::cos(beta * t);
        if cos.abs() > exclusion {
            let num = eta.values()[i] + C64::new(0.0, -beta * t).exp() * xi.values()[i];
            values.push(num / (2.0 * cos));
            mask.push(true);
        } else {
            values.push(C64::new(0.0, 0.0));
            mask.push(false);
        }
    }
    if mask.iter().all(|&m| !m) {
        return Err(Error::AllNodesExcluded);
    }
    Ok(RecoveredPhi {
        func: L2Function::new(xi.grid().clone(), values),
        mask,
    })
}

/// Both sides of `||(U_beta + U_{-beta}) f||^2 <= 8 ||f||^2_{E, beta}`
/// (even `E`): returns `(lhs, rhs)`.
pub fn translate_pair_bound(v: &FockVector, beta: f64, pad: Pad) -> Result<(f64, f64)> {
    if beta <= 0.0 {
        return Err(Error::InvalidArgument("translate pair bound needs beta > 0"));
    }
    let plus = displacement_for(C64::new(beta, 0.0), v.degree().max(1), pad)?;
    let minus = displacement_for(C64::new(-beta, 0.0), v.degree().max(1), pad)?;
    let rows = plus.rows().max(minus.rows());
    let sum = plus.apply(v).padded(rows).add(&minus.apply(v).padded(rows));
    let lhs = sum.norm_sqr();
    let rhs = 8.0 * seminorm_direct(v, &IndexSet::Even, beta, pad)?;
    Ok((lhs, rhs))
}
