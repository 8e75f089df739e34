//! Grassmannian products, exact combinatorial constants, polytope geometry
//! and flag-measure estimators for intrinsic volumes.

pub mod combinatorics;
pub mod error;
pub mod flags;
pub mod grassmann;
pub mod harness;
pub mod json;
pub mod linalg;
pub mod mc;
pub mod polytope;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use mc::MCEstimate;
pub use rng::RandomStream;
pub use scalar::{Field, Rational, Real};

pub type Subspace = grassmann::Subspace<f64>;
pub type Subspace32 = grassmann::Subspace<f32>;
pub type FlagElement = grassmann::FlagElement<f64>;
