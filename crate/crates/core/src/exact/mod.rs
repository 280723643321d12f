//! Exact arithmetic and integer geometry shared by every engine.

pub mod matrix;
pub mod partition;
pub mod polygon;
pub mod rational;

pub use matrix::{det_i128, IntMatrix};
pub use partition::Partition;
pub use polygon::{minkowski_sum, pt, LatticePolygon, MinkowskiSum, Pt};
pub use rational::{Rational, RationalJson};
