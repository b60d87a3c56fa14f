//! Numeric tolerances shared across the crate.

/// Relative tolerance on `ad − bc = 1`.
pub const DET_TOL: f64 = 1e-12;
/// Entries at or below this magnitude are skipped by sign canonicalization.
pub const SIGN_TOL: f64 = 1e-12;
/// Default tolerance for geometric identities.
pub const GEOM_TOL: f64 = 1e-9;
/// Grid used to deduplicate group elements.
pub const DEDUP_TOL: f64 = 1e-9;
/// Tolerance on `|trace| − 2` when separating parabolic from the rest.
pub const CLASS_TOL: f64 = 1e-9;
/// Default cap on the number of enumerated group elements.
pub const BALL_CAP: usize = 2_000_000;
/// Products with `|ad| + |bc|` above this are not renormalized: their computed
/// determinant is dominated by rounding.
pub const RENORM_MAX_SCALE: f64 = 1e6;
