//! Horadam polynomials, the bi-univalent function classes subordinate to
//! their generating function, and the coefficient / Fekete-Szegő bounds for
//! those classes, with a Monte-Carlo harness that certifies the bounds.
//!
//! Module map:
//! - [`horadam`]: recurrence, generating-function oracle, named families.
//! - [`series`]: truncated complex power series (division, composition,
//!   log/exp, real powers, reversion).
//! - [`classes`]: class functionals and their coefficient systems.
//! - [`bounds`]: the generic bound engine and the closed-form corollaries.
//! - [`verify`]: candidate construction and Monte-Carlo certification.
//! - [`cli`]: the `horadam` command-line front end.

pub mod bounds;
pub mod classes;
pub mod cli;
mod error;
pub mod horadam;
pub mod series;
pub mod verify;

pub use bounds::{Bound, BoundReport, FsBranch};
pub use classes::{ClassKind, ClassSpec, CoefficientSystem, FunctionCoeffs};
pub use error::Error;
pub use horadam::{HoradamParams, PolyFamily};
pub use series::TruncatedSeries;
pub use verify::{SchwarzTuple, VerifyReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
