//! Numerics for deep-zero problems in the Bargmann-Fock space.
//!
//! The crate works on finite truncations of the Fock space: entire functions
//! are held as coefficient vectors in the orthonormal basis
//! `e_j(z) = z^j / sqrt(j!)`, unitaries (Fock translates, rotations,
//! reflection) become rectangular matrices between coefficient spaces, and
//! the line side of the Bargmann transform is sampled on quadrature grids.
//!
//! Everything here is `no_std` + `alloc`; IO, file formats, and the CLI live
//! in the companion `deepzero` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bargmann;
pub mod counterexample;
pub mod eigen;
pub mod error;
pub mod fock;
pub mod matrix;
pub mod operators;
pub mod quad;
pub mod seminorm;

pub use error::{Error, Result};
pub use fock::{kernel_vector, FockVector};
pub use matrix::Matrix;
pub use operators::{OperatorMatrix, Pad, RigidMotion};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
