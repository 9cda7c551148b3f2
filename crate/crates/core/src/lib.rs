//! Exact super-Jack polynomials and the deformed Calogero–Moser–Sutherland
//! operator of the Lie superalgebra gl(n|m).
//!
//! Everything symbolic lives over ℚ(k) ([`coeffs::RatK`]); the [`gauge`]
//! module is the only floating-point code and checks the relation between the
//! polynomial operator and its Schrödinger (potential) form numerically.

pub mod cmsop;
pub mod coeffs;
pub mod gauge;
pub mod jack;
pub mod oracles;
pub mod partitions;
pub mod superjack;
pub mod sympoly;

pub use coeffs::{KValue, RatK};
pub use partitions::Partition;
pub use sympoly::{SparsePoly, SymFuncVec};
