//! Numerical side: Gauss-map integrals over polygonal long knots and the
//! local configuration-space model integrals.

mod curves;
mod local;
mod polyline;

pub use curves::{
    almost_planar_figure_eight, almost_planar_kinked_trefoil, almost_planar_trefoil,
    extract_diagram_code, hopf_clasp, twist_knot_5_2, PlanarPath,
};
pub use local::{
    half_integral, local_model_integral, theorem34_from_local_models, BumpProfile, CosineBump,
    LocalModelKind, LocalModelSpec, PoleVolumeForm, PsiKind, StandardBump, Theorem34Constants,
};
pub use polyline::{
    gauss_linking, parse_polylines, polylines_to_text, self_linking_half, Polyline3, Vec3,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate segment of length {0:.3e}")]
    DegenerateSegment(f64),
    #[error("input polylines intersect (minimum segment distance {0:.3e})")]
    IntersectingInputs(f64),
    #[error("quadrature did not converge below {tolerance:.1e} after {refinements} refinements")]
    QuadratureNotConverged { tolerance: f64, refinements: usize },
    #[error("cap half-angle {0} out of range (0, pi/2)")]
    BadCapAngle(f64),
    #[error("polyline needs at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("bad polyline text at line {line}: {reason}")]
    BadPolylineText { line: usize, reason: String },
    #[error("polyline is not an almost-planar long-knot diagram: {0}")]
    NotAlmostPlanar(String),
}
