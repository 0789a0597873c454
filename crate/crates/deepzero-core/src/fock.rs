//! Truncated coefficient vectors in the Bargmann-Fock space.
//!
//! An entire function is held through its coefficients in the orthonormal
//! basis `e_j(z) = z^j / sqrt(j!)`, so the Fock norm is plain Euclidean and
//! factorials never appear explicitly. Conversions to raw Taylor
//! coefficients are available but guarded against `sqrt(j!)` overflow.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::C64;

/// Coefficients of a truncated Fock-space element in the basis `e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<C64>,
}

impl FockVector {
    pub fn new(coeffs: Vec<C64>) -> Self {
        FockVector { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        FockVector {
            coeffs: vec![C64::new(0.0, 0.0); degree],
        }
    }

    /// The basis vector `e_j` held at the given truncation degree.
    pub fn basis(j: usize, degree: usize) -> Self {
        assert!(j < degree, "basis index must lie below the degree");
        let mut v = FockVector::zero(degree);
        v.coeffs[j] = C64::new(1.0, 0.0);
        v
    }

    /// Number of stored coefficients (indices `0..degree`).
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> C64 {
        self.coeffs.get(j).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Zero-extends to at least `degree` coefficients.
    pub fn padded(&self, degree: usize) -> FockVector {
        let mut c = self.coeffs.clone();
        if c.len() < degree {
            c.resize(degree, C64::new(0.0, 0.0));
        }
        FockVector { coeffs: c }
    }

    pub fn truncated(&self, degree: usize) -> FockVector {
        let mut c = self.coeffs.clone();
        c.truncate(degree);
        FockVector { coeffs: c }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn scale(&self, s: C64) -> FockVector {
        FockVector {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let n = self.degree().max(other.degree());
        FockVector {
            coeffs: (0..n).map(|j| self.coeff(j) + other.coeff(j)).collect(),
        }
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let n = self.degree().max(other.degree());
        FockVector {
            coeffs: (0..n).map(|j| self.coeff(j) - other.coeff(j)).collect(),
        }
    }

    /// Fock inner product; the shorter vector is zero-padded.
    pub fn inner(&self, other: &FockVector) -> C64 {
        let n = self.degree().min(other.degree());
        (0..n).map(|j| self.coeffs[j] * other.coeffs[j].conj()).sum()
    }

    /// Point evaluation `sum_j c_j z^j / sqrt(j!)`, with the scaled power
    /// accumulated incrementally so factorials never overflow.
    ///
    /// The truncation tail is controlled by the pointwise bound
    /// `|tail| <= ||tail coeffs|| * e^{|z|^2 / 2}`.
    pub fn evaluate(&self, z: C64) -> C64 {
        let mut term = C64::new(1.0, 0.0); // z^j / sqrt(j!)
        let mut sum = C64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                term *= z / libm::sqrt(j as f64);
            }
            sum += c * term;
        }
        sum
    }

    /// Builds the coefficient vector from raw Taylor coefficients
    /// (`f = sum_j taylor_j z^j`), i.e. `c_j = sqrt(j!) * taylor_j`.
    pub fn from_taylor(taylor: &[C64]) -> Result<FockVector> {
        check_taylor_degree(taylor.len())?;
        let mut scale = 1.0; // sqrt(j!)
        let coeffs = taylor
            .iter()
            .enumerate()
            .map(|(j, t)| {
                if j > 0 {
                    scale *= libm::sqrt(j as f64);
                }
                t * scale
            })
            .collect();
        Ok(FockVector { coeffs })
    }

    /// Inverse of [`FockVector::from_taylor`].
    pub fn to_taylor(&self) -> Result<Vec<C64>> {
        check_taylor_degree(self.degree())?;
        let mut scale = 1.0;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j > 0 {
                    scale *= libm::sqrt(j as f64);
                }
                c / scale
            })
            .collect())
    }
}

/// `sqrt(j!)` must stay inside the double range for every stored index.
fn check_taylor_degree(len: usize) -> Result<()> {
    if len == 0 {
        return Ok(());
    }
    let j = (len - 1) as f64;
    let half_log_fact = 0.5 * libm::lgamma(j + 1.0);
    if half_log_fact > libm::log(f64::MAX) {
        return Err(Error::DegreeTooLarge { degree: len });
    }
    Ok(())
}

/// Coefficient vector of the reproducing kernel `K(., w)`, truncated:
/// `c_j = conj(w)^j / sqrt(j!)`.
pub fn kernel_vector(w: C64, degree: usize) -> FockVector {
    assert!(degree >= 1);
    let wc = w.conj();
    let mut term = C64::new(1.0, 0.0);
    let coeffs = (0..degree)
        .map(|j| {
            if j > 0 {
                term *= wc / libm::sqrt(j as f64);
            }
            term
        })
        .collect();
    FockVector::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn orthonormal_basis_inner_products() {
        let e1 = FockVector::basis(1, 4);
        let e2 = FockVector::basis(2, 4);
        assert_eq!(e2.inner(&e2), c(1.0, 0.0));
        assert_eq!(e1.inner(&e2), c(0.0, 0.0));
    }

    #[test]
    fn norm_of_one_plus_z() {
        // f = 1 + z has Taylor coefficients (1, 1); ||f||^2 = 0!*1 + 1!*1 = 2.
        let f = FockVector::from_taylor(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((f.norm_sqr() - 2.0).abs() < 1e-15);
        // f(2) = 3, and the pointwise bound |f(2)| <= ||f|| e^{|2|^2/2}.
        let val = f.evaluate(c(2.0, 0.0));
        assert!((val - c(3.0, 0.0)).norm() < 1e-15);
        assert!(val.norm() <= f.norm() * libm::exp(2.0) + 1e-12);
    }

    #[test]
    fn kernel_at_origin_is_constant_one() {
        let k = kernel_vector(c(0.0, 0.0), 5);
        assert_eq!(k.coeff(0), c(1.0, 0.0));
        for j in 1..5 {
            assert_eq!(k.coeff(j), c(0.0, 0.0));
        }
    }

    #[test]
    fn kernel_norm_and_diagonal_value() {
        // ||K(., 1)||^2 = K(1, 1) = e, as a partial sum of sum 1/j!.
        let k = kernel_vector(c(1.0, 0.0), 40);
        let e = core::f64::consts::E;
        assert!((k.norm_sqr() - e).abs() < 1e-14);
        assert!((k.evaluate(c(1.0, 0.0)) - c(e, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn reproducing_identity_random_vector() {
        // deterministic "random" coefficients
        let coeffs: Vec<C64> = (0..16)
            .map(|j| {
                let t = j as f64;
                c(libm::sin(1.3 * t + 0.4), libm::cos(2.1 * t))
            })
            .collect();
        let f = FockVector::new(coeffs);
        let w = c(0.7, 0.3);
        let lhs = f.inner(&kernel_vector(w, 16));
        let rhs = f.evaluate(w);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn taylor_roundtrip_and_scaling() {
        // hat f(2) = 1 gives c_2 = sqrt(2).
        let f = FockVector::from_taylor(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((f.coeff(2).re - core::f64::consts::SQRT_2).abs() < 1e-15);

        let taylor: Vec<C64> = (0..20)
            .map(|j| {
                let t = j as f64;
                c(libm::cos(0.9 * t), libm::sin(0.5 * t + 1.0))
            })
            .collect();
        let back = FockVector::from_taylor(&taylor).unwrap().to_taylor().unwrap();
        let max_err = taylor
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-13);
    }

    #[test]
    fn taylor_degree_guard() {
        let taylor = vec![c(1.0, 0.0); 400];
        assert!(matches!(
            FockVector::from_taylor(&taylor),
            Err(Error::DegreeTooLarge { .. })
        ));
    }
}
