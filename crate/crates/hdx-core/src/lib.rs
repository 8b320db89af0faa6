//! Combinatorial and spectral machinery for small-set expansion in high
//! dimensional expanders.
//!
//! The crate models pure weighted simplicial complexes together with the
//! objects needed to state and test expansion of cochains:
//!
//! - [`complex`]: complexes, face distributions, links, and the outside
//!   neighborhoods `Y_sigma^k`,
//! - [`group`] / [`cochain`]: finite abelian coefficient groups and
//!   antisymmetric cochains with the coboundary operator,
//! - [`graph`]: weighted underlying graphs, their normalized random walk,
//!   and the exhaustive Cheeger-style subset checks,
//! - [`expansion`]: coboundary expansion, local spectral expansion,
//!   minimality, and heavy faces,
//! - [`walks`]: the up/down walk operators on link faces,
//! - [`verifier`]: per-inequality check records and the exhaustive /
//!   sampled theorem scans.
//!
//! All combinatorial weights are exact rationals; only eigenvalues (and
//! bounds containing them) are evaluated in double precision.

pub mod budget;
pub mod cochain;
pub mod complex;
pub mod error;
pub mod expansion;
pub mod face;
pub mod graph;
pub mod group;
pub mod ratio;
pub mod verifier;
pub mod walks;

pub use budget::Budget;
pub use cochain::Cochain;
pub use complex::{FaceDistribution, LinkView, OutsidePairSet, SimplicialComplex};
pub use error::HdxError;
pub use face::{Face, OrderedFace, Vertex};
pub use graph::WeightedGraph;
pub use group::{FiniteAbelianGroup, GroupElement};
pub use ratio::Ratio;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, HdxError>;
