//! Certificate synthesis for the orbit problem of rational linear maps.
//!
//! Given a square rational matrix `A` and vectors `X`, `Y`, the orbit problem
//! asks whether `A^n X = Y` for some natural `n`. When the answer is no, this
//! crate synthesizes a *non-reachability certificate* `(N, P)`: an index `N`
//! and a semialgebraic set `P` such that
//!
//! * `A^n X != Y` for all `n < N`,
//! * `A^n X` lies in `P` for all `n >= N`,
//! * `Y` does not lie in `P`.
//!
//! Certificates are produced from left eigenvectors and generalized left
//! eigenvector chains of `A` (or of a polynomial *elevation* of `A` when `A`
//! itself has no usable rational eigenvalue), and every emitted certificate is
//! re-checked by an independent brute-force oracle before it is returned.
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals, root
//! classification is certified via Sturm sequences and exact winding-number
//! counts, and no decision is ever taken on floating-point grounds.

pub mod certify;
pub mod elevate;
pub mod error;
pub mod instance;
pub mod jsonio;
pub mod multipoly;
pub mod oracle;
pub mod polyalg;
pub mod predicate;
pub mod ratmat;
pub mod spectral;

pub use error::Error;
pub use instance::{OrbitInstance, Ring};
pub use ratmat::{rat, rat_int, parse_rat, rat_to_string, Int, Rat, RatMatrix, RatVector};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
