//! Weierstrass cubics `y² = x³ + ax + b`: group law over exact and
//! high-precision fields, projections from a point, the tangent
//! determinant scan and oval counts for hyperelliptic curves.

mod curve;
mod field;
mod ovals;
mod scan;

pub use curve::{project_from, EllipticPoint, Projection, WeierstrassCurve};
pub use field::{Field, HpFloat, QuadRational};
pub use ovals::hyperelliptic_ovals;
pub use scan::{collinearity_scan, lift_x, paper_example, unit_dual, ScanConfig, ScanResult, ScanSample, ScanSummary};
