use alloc::vec::Vec;

use super::{enumerate_ball, GroupElement, GroupSpec};
use crate::hyperbolic::{BoundaryPoint, Mobius};
use crate::tol::CLASS_TOL;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "kebab-case")
)]
pub enum IsometryClass {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// Trace classification: `|tr| > 2` hyperbolic, `|tr| = 2` parabolic,
/// `|tr| < 2` elliptic, with `|tr| − 2` compared against [`CLASS_TOL`].
/// The identity is recognised first.
pub fn classify_isometry(m: &Mobius) -> IsometryClass {
    if m.is_identity(CLASS_TOL) {
        return IsometryClass::Identity;
    }
    let excess = libm::fabs(m.trace()) - 2.0;
    if excess > CLASS_TOL {
        IsometryClass::Hyperbolic
    } else if excess < -CLASS_TOL {
        IsometryClass::Elliptic
    } else {
        IsometryClass::Parabolic
    }
}

impl GroupElement {
    pub fn classify(&self) -> IsometryClass {
        classify_isometry(self.matrix())
    }
}

/// Boundary fixed points `(X, Y)` with
/// `X = (a − d + √((a+d)² − 4)) / 2c` and `Y = (a − d − √((a+d)² − 4)) / 2c`.
///
/// For `c = 0` the pair is `(∞, b/(d − a))`, or `(∞, ∞)` for a translation.
/// Parabolic elements return the double point twice.
pub fn fixed_points(m: &Mobius) -> Result<(BoundaryPoint, BoundaryPoint)> {
    match classify_isometry(m) {
        IsometryClass::Elliptic => return Err(Error::EllipticElement),
        IsometryClass::Identity => {
            return Err(Error::InvalidParameter(
                "identity fixes every boundary point",
            ))
        }
        _ => {}
    }
    let [a, b, c, d] = m.coefficients();
    if c == 0.0 {
        if libm::fabs(a - d) <= CLASS_TOL {
            return Ok((BoundaryPoint::Infinity, BoundaryPoint::Infinity));
        }
        return Ok((BoundaryPoint::Infinity, BoundaryPoint::Finite(b / (d - a))));
    }
    let tr = a + d;
    let s = libm::sqrt((tr * tr - 4.0).max(0.0));
    // Roots of c z² + (d − a) z − b = 0, computed without cancellation.
    let diff = a - d;
    let (x, y) = if diff >= 0.0 {
        let q = (diff + s) / 2.0;
        if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / c, -b / q)
        }
    } else {
        let q = (diff - s) / 2.0;
        (-b / q, q / c)
    };
    Ok((BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)))
}

/// Chordal distance between `x` and its image, evaluated with whichever of
/// `m` and `m⁻¹` does not expand near `x`.
///
/// At the repelling point of a hyperbolic `m` with multiplier `λ²` the
/// forward map amplifies the rounding of `x` by `λ²`, so `m(x) = x` cannot
/// hold in floating point once `λ²` is large. The equation is the same for
/// `m⁻¹`, which contracts there.
pub fn fixed_point_residual(m: &Mobius, x: BoundaryPoint) -> f64 {
    let [a, _, c, d] = m.coefficients();
    let expanding = match x {
        BoundaryPoint::Finite(x) => libm::fabs(c * x + d) < 1.0,
        BoundaryPoint::Infinity => c == 0.0 && libm::fabs(a) > libm::fabs(d),
    };
    let map = if expanding { m.inverse() } else { *m };
    let r = map.apply_boundary(x).chordal_distance(&x);
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

impl GroupElement {
    pub fn fixed_points(&self) -> Result<(BoundaryPoint, BoundaryPoint)> {
        fixed_points(self.matrix())
    }
}

/// Elliptic elements of the enumerated ball. An empty result only means no
/// witness exists up to the ball's depth.
pub fn check_elliptic_free(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    Ok(enumerate_ball(spec)?
        .into_iter()
        .filter(|g| g.classify() == IsometryClass::Elliptic)
        .collect())
}
