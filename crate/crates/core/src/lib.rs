//! Analytic connectivity of k-uniform hypergraphs.
//!
//! * [`hypergraph`]: the immutable data model, `.khg` I/O and generators.
//! * [`invariants`]: exact cut invariants by enumeration.
//! * [`laplacian`]: Laplacian tensor forms and the simplex-coordinate objective.
//! * [`solver`]: `α(H)` by smoothed entropic mirror descent, plus a lattice oracle.
//! * [`bounds`]: bound formulas and their verification against an `α` estimate.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix the
//! precision for callers that do not care.

pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod hypergraph;
pub mod invariants;
pub mod laplacian;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use hypergraph::{DegreeProfile, DesignParams, Hypergraph};
pub use scalar::Scalar;
pub use solver::SolverConfig;

pub type Point64 = laplacian::Point<f64>;
pub type SimplexPoint64 = laplacian::SimplexPoint<f64>;
pub type SolveOutcome64 = solver::SolveOutcome<f64>;
pub type AlphaResult64 = solver::AlphaResult<f64>;
pub type BoundReport64 = bounds::BoundReport<f64>;

pub type Point32 = laplacian::Point<f32>;
pub type SimplexPoint32 = laplacian::SimplexPoint<f32>;
pub type SolveOutcome32 = solver::SolveOutcome<f32>;
pub type AlphaResult32 = solver::AlphaResult<f32>;
pub type BoundReport32 = bounds::BoundReport<f32>;
