//! Additive polynomials and rational self-maps of the projective line: branch
//! loci, and the collapse of a branch locus onto two points.

mod additive;
mod branch;
mod map;
mod pipeline;

pub use additive::{
    additive_span_polynomial, additivity_defect, check_additive, commutes_with_prime_scalars,
    span_basis, span_elements, AdditiveCheck, AdditivePolynomial,
};
pub use branch::{
    branch_locus, branch_locus_within, fiber_indices, splitting_degree, BranchPoint, BranchReport,
};
pub use map::{mobius_map, P1Point, RationalMap};
pub use pipeline::{collapse_pipeline, parse_cover, CollapseReport};
