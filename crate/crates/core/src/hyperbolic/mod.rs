//! The upper half-plane model `ℍ = {z : Im z > 0}` and its boundary
//! `∂ℍ = ℝ ∪ {∞}`.

mod geodesic;
mod mobius;
mod point;

pub use geodesic::{angle_between, cross_ratio, harmonic_conjugate, Geodesic, Horocycle};
pub use mobius::Mobius;
pub use point::{busemann, dist, height, BoundaryPoint, PointH};
