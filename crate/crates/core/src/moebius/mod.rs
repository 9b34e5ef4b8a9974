//! Rational maps of the projective line, Moebius transformations and the
//! realification test.

mod maps;
mod reality;

pub use maps::{AntiInvolution, MoebiusMap, RationalMap, RealStructure};
pub use reality::{
    check_reality, classify_real_structure, conjugate_map, critical_points, image_bidegree, realification_matrix, realification_residual,
    solve_realification, CriticalPoints, ImageBidegree, Realification, RealityVerdict,
};
