//! Order-three invariant of framed long knots from the Fox-Hatcher move
//! calculus, with its numerical configuration-space counterpart.
//!
//! The library computes `v = 6*v3 - w*v2` for framed long-knot diagrams given
//! as signed Gauss codes, decomposes Gauss diagrams into Fox-Hatcher cycles,
//! verifies that third finite differences of `v` take the values -2, 2, 6, 0
//! according to the cycle type of the chosen crossings, and reproduces the
//! local configuration-space integrals behind those constants by quadrature.
//!
//! Start with the runnable programs in `examples/`, or with the modules:
//!
//! * [`codes`]: parse and edit signed Gauss codes; the shipped knot catalog.
//! * [`gauss`]: abstract Gauss diagrams, canonical words, enumeration.
//! * [`fh`]: the Fox-Hatcher move, orbit decomposition, cycle classifier.
//! * [`invariants`]: v2, v3, the Conway oracle, finite differences.
//! * [`geom`]: polyline Gauss integrals and the local model integrals.
//! * [`cli`]: report builders behind the `fhknot` binary.

pub mod cli;
pub mod codes;
pub mod fh;
pub mod gauss;
pub mod geom;
pub mod invariants;

pub use codes::{parse_gauss_code, SignedGaussCode};
pub use fh::{classify, fh_move, fh_move_on_code, orbit_decomposition, CycleType};
pub use gauss::{canonical_form, enumerate, underlying_diagram, CanonicalWord, GaussDiagram};
pub use invariants::{conway_a2, dnv, v2, v3, v_invariant, InvariantReport};
