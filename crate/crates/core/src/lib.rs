//! Symbolic bookkeeping for towers of cyclic covers over Tango curves in
//! characteristic `p`, with explicit Artin–Schreier base curves and
//! certificate-producing searches for trivial canonical classes.
//!
//! Class arithmetic is generic over an [`ExactScalar`]; the aliases below fix
//! it to arbitrary-precision rationals, which is what the searches and the
//! command-line front end use.

pub mod arith;
pub mod cover;
pub mod curve;
pub mod cysearch;
pub mod divclass;
pub mod scalar;
pub mod tower;

pub use num_rational::BigRational;
pub use scalar::ExactScalar;

/// Arbitrary-precision rational coefficient.
pub type Rational = BigRational;
/// Coefficients that fit in machine words; overflow panics.
pub type SmallRational = num_rational::Ratio<i64>;

pub type TowerClass = divclass::TowerClass<Rational>;
pub type TowerState = tower::TowerState<Rational>;
pub type StepRecord = tower::StepRecord<Rational>;
pub type PBundleClass = cover::PBundleClass<Rational>;
pub type SummandList = cover::SummandList<Rational>;

pub use divclass::{Coordinate, DivisionFailure, DivisionMode, TrivialityReport};
pub use tower::{CanonicalVerdict, Structure, TowerError};
