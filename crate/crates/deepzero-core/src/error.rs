use core::fmt;

/// Errors surfaced by the truncated-space numerics.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `sqrt(j!)` leaves the double range, so the Taylor representation
    /// cannot be formed at this degree.
    DegreeTooLarge { degree: usize },
    /// A truncated unitary lost more column mass than the caller allows.
    ExcessiveTailLeak { leak: f64, tol: f64 },
    /// Doubling the quadrature nodes moved a coefficient by more than the
    /// tolerance; the grid does not resolve the input.
    GridUnderresolved { delta: f64 },
    /// Reflection (or a parity decomposition) was requested on a grid that
    /// is not symmetric about the origin.
    AsymmetricGrid,
    /// Two `L2Function`s live on different grids.
    GridMismatch,
    /// The exclusion band around the zeros of `cos(beta t)` swallowed every
    /// grid node.
    AllNodesExcluded,
    /// Panel refinement stalled before reaching the requested tolerance.
    QuadratureNotConverged { last_change: f64 },
    /// The two eigenvalue routes (Jacobi sweep, inverse iteration) disagree.
    EigenNotConverged { jacobi: f64, inverse: f64 },
    /// A precondition on an argument failed.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeTooLarge { degree } => {
                write!(f, "degree {degree} too large for Taylor representation")
            }
            Error::ExcessiveTailLeak { leak, tol } => {
                write!(f, "excessive tail leakage {leak:.3e} (tolerance {tol:.3e})")
            }
            Error::GridUnderresolved { delta } => {
                write!(f, "grid underresolved: node doubling moved a coefficient by {delta:.3e}")
            }
            Error::AsymmetricGrid => write!(f, "asymmetric grid"),
            Error::GridMismatch => write!(f, "grid mismatch"),
            Error::AllNodesExcluded => write!(f, "all nodes excluded"),
            Error::QuadratureNotConverged { last_change } => {
                write!(f, "quadrature not converged (last relative change {last_change:.3e})")
            }
            Error::EigenNotConverged { jacobi, inverse } => write!(
                f,
                "eigen routes disagree: jacobi {jacobi:.6e} vs inverse iteration {inverse:.6e}"
            ),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
