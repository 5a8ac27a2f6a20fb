//! SU(2) representation varieties of knot exteriors in pillowcase
//! coordinates.
//!
//! The crate computes irreducible SU(2) representations of knot groups
//! (from braid words, PD codes, or closed-form torus-knot presentations),
//! projects them to the boundary holonomy angles (α, β) on the pillowcase
//! ℝ²/(2πℤ² ⋊ ±1), intersects the image with Dehn-filling lines to produce
//! independently verifiable certificates of non-cyclic representations of
//! surgered manifolds, and constructs certified holonomy-perturbation
//! curves threading the exclusion arc for the emptiness pipeline.
//!
//! Grid-parallel inner loops use rayon when the `parallel` feature (default)
//! is enabled; the sequential path is always available and produces
//! identical results.

pub mod certify;
pub mod error;
pub mod knots;
mod newton;
pub mod perturb;
pub mod pillowcase;
pub mod solver;
pub mod su2;

pub use error::{Error, Result};
pub use knots::{
    evaluate_word, named_knot, parse_braid, parse_pd, torus_knot, KnotPresentation, Word,
};
pub use pillowcase::{
    canonicalize, distance, reducible_points, ExclusionArc, FillingLine, PillowcasePoint, Slope,
    Tube,
};
pub use solver::{
    abelian_locus, intersect_with_line, pillowcase_image, solve_at_alpha, PillowcaseImage,
    RepPoint, SolverOptions,
};
pub use su2::{commuting_angles, AnglePair, ClassFunction, Su2};
