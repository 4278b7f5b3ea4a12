//! Constructive procedures from combinatorial discrepancy, harmonic analysis
//! and high-dimensional geometry, built to run at desk scale with exact
//! small-instance oracles next to every randomized component.
//!
//! The crate is organized around five subsystems:
//!
//! * [`discrepancy`] — sign assignments with small row deviations: evaluation,
//!   random baselines, the Beck–Fiala floating coloring, a constrained
//!   random-walk partial coloring, its iteration to full colorings, and an
//!   exhaustive pigeonhole oracle.
//! * [`littlewood`] — flat polynomials with ±1 coefficients: Rudin–Shapiro
//!   pairs, the twisted cosine part, bad-interval detection, push-coefficient
//!   planning and the biased sine part.
//! * [`nibble`] — independent sets in bounded-degree, bounded-codegree graphs
//!   via the iterated nibble process, with per-round diagnostics.
//! * [`packing`] — sphere packings and spherical codes reduced to independent
//!   sets in geometric graphs over Poisson samples.
//! * [`lwo`] — small-ball (anti-concentration) probabilities, least common
//!   denominators, joint small-ball audits, and random sign-matrix
//!   singularity/spectrum statistics.
//!
//! Scalar-agnostic numeric kernels live in [`scalar`] and are generic over
//! [`scalar::Scalar`]; everything else is concrete in [`Real`].

pub mod discrepancy;
pub mod error;
pub mod littlewood;
pub mod lwo;
pub mod nibble;
pub mod packing;
pub mod rng;
pub mod scalar;
pub mod svg;

pub use error::{Error, Result};

/// Scalar type used by the concrete pipelines.
pub type Real = f64;

/// Constraint system over the default scalar.
pub type ConstraintSystem = discrepancy::ConstraintSystem<Real>;
/// Partial coloring over the default scalar.
pub type PartialColoring = discrepancy::PartialColoring<Real>;

/// Version string embedded in every emitted artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
