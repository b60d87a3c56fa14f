//! Computational toolkit for horocycle-flow dynamics on hyperbolic surfaces
//! `Γ\ℍ`.
//!
//! The crate is `no_std` and needs only `alloc`. It provides
//!
//! * [`hyperbolic`]: points of the upper half-plane and its boundary, Möbius
//!   maps, hyperbolic distance, cross-ratios, angles between geodesics and
//!   Busemann cocycles;
//! * [`group`]: finite-depth enumeration of a finitely generated Fuchsian
//!   group, isometry classification and fixed points, preset families;
//! * [`boundary`]: finite-depth evidence for the horocyclic / discrete /
//!   parabolic / irregular type of a boundary point;
//! * [`flows`]: geodesic and horocycle flows on `T¹ℍ` and injectivity-radius
//!   profiles along geodesic rays;
//! * [`dichotomy`]: the two-condition orbit-closure criteria and the
//!   recurrence versus non-minimality pipeline.
//!
//! Everything computed here is evidence at finite word depth. Nothing in this
//! crate certifies that a point is in the limit set or that an orbit closure
//! is minimal.

#![no_std]

extern crate alloc;

pub mod boundary;
pub mod dichotomy;
mod error;
pub mod flows;
pub mod group;
pub mod hyperbolic;
pub mod tol;

pub use error::{Error, Result};
