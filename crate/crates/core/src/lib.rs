//! Exact-arithmetic toolkit for the polyhedral structure of bounded
//! Laurent-monomial ratios of minors of totally positive matrices.
//!
//! The crate computes, entirely over exact integers and rationals:
//!
//! - Plücker index combinatorics and the minor embedding ([`pluecker`]);
//! - minors of the planar-network parameterization as sparse polynomials
//!   in the free face weights, with a Lindström-style path-family
//!   enumeration checked against a cofactor-expansion oracle
//!   ([`network`]);
//! - a double-description cone engine with an exact simplex underneath
//!   for membership, redundancy, and separation certificates ([`cone`]);
//! - the tropical boundedness system harvested from the common
//!   refinement of the Newton-polytope normal fans ([`tropical`]);
//! - the primitive-ratio subcone: enumeration, relations, rank, a
//!   distinguished basis, and facet outer sets ([`primitive`]);
//! - a verification lab for candidate extreme rays, including nine
//!   bundled rays at n=4 that are not products of primitive ratios
//!   ([`raylab`]).

pub mod cone;
pub mod error;
pub mod network;
pub mod pluecker;
pub mod primitive;
pub mod raylab;
pub mod tropical;

pub use cone::{Int, Rat};
pub use error::{Error, Result};
pub use pluecker::{all_indices, coordinate_count, MinorSpec, PluckerIndex, RatioVector};
