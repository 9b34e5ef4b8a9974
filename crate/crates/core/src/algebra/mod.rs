//! Exact arithmetic kernel over Q(i).

pub mod gaussian;
pub mod linalg;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod univariate;

pub use gaussian::{parse_rational, GaussianRational};
pub use linalg::{nullspace, rank, Matrix};
pub use poly::{Exponent, Poly};
pub use resultant::{resultant, resultant_with_degrees};
pub use roots::{isolate_real_roots, RealRootIsolation, RootInterval};
pub use univariate::{GaussianRoots, UniPoly};
