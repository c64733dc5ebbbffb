//! Exact-arithmetic invariants of 5-dimensional Seifert circle bundles over
//! complex orbifold surfaces.
//!
//! The crate works entirely in integer and rational arithmetic. It models a
//! base surface by its Weil divisor lattice ([`surface::OrbSurface`]),
//! computes first-homology criteria for the base ([`topology`]), classifies
//! bundles by their Chern data and produces the cohomology of the
//! 5-manifold total space ([`bundle`]), constructs the bundles living over
//! rank-one bases as rational homology spheres ([`rhs`]), enumerates the
//! deformation types and allowed torsion shapes ([`classify`]), and emits
//! arithmetic certificates for the existence of Kähler–Einstein metrics
//! ([`ke`]).
//!
//! The narrative guide in `book/` walks through the same pipeline chapter
//! by chapter; its code snippets are kept in sync with the doc-tests here.
//!
//! ```
//! use seifert5::surface::{catalog, BranchDivisor};
//! use seifert5::rhs;
//!
//! // A degree-3 plane curve with multiplicity 5 supports exactly one
//! // rational-homology-sphere bundle (up to orientation); its second
//! // homology is (Z/5)^2.
//! let entry = catalog("P2").unwrap();
//! let delta = BranchDivisor::of(vec![entry.template("cubic").with_multiplicity(5)]);
//! let built = rhs::construct(&entry.surface, &delta).unwrap();
//! assert_eq!(built.cohomology.h3.to_string(), "(Z/5)^2");
//! ```

pub mod abgroup;
pub mod bundle;
pub mod classify;
pub mod cli;
pub mod error;
pub(crate) mod linalg;
pub mod ke;
pub mod rhs;
pub mod schema;
pub mod surface;
pub mod topology;

pub use error::Error;
