//! Exact computations around the reality of meromorphic functions on real
//! algebraic curves: Moebius realification of rational maps, genus and
//! degree gates, an elliptic-curve tangent scan, and plane-curve
//! singularity analysis.

pub mod algebra;
pub mod elliptic;
pub mod error;
pub mod gates;
pub mod io;
pub mod moebius;
pub mod plane;

pub use algebra::{GaussianRational, Poly, RealRootIsolation, UniPoly};
pub use num_rational::BigRational;
pub use error::{Error, ErrorClass, Result};
