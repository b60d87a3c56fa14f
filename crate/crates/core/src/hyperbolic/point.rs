use crate::{Error, Result};

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PointH {
    re: f64,
    im: f64,
}

impl PointH {
    /// The base point `i`.
    pub const I: PointH = PointH { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() && im > 0.0 {
            Ok(PointH { re, im })
        } else {
            Err(Error::NotInUpperHalfPlane { re, im })
        }
    }

    /// `i·e^t`, the point at arclength `t` along the vertical geodesic from `i`.
    pub fn on_imaginary_axis(t: f64) -> Self {
        PointH {
            re: 0.0,
            im: libm::exp(t),
        }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// Euclidean modulus `|z|`.
    pub fn modulus(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    pub fn dist(&self, other: &PointH) -> f64 {
        dist(*self, *other)
    }
}

/// A point of `∂ℍ = ℝ ∪ {∞}`.
///
/// Equality of finite points is exact `f64` comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<f64> {
        match *self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Position along the boundary circle read counterclockwise from `−∞`;
    /// `∞` sorts last.
    pub(crate) fn cyclic_key(&self) -> f64 {
        match *self {
            BoundaryPoint::Finite(x) => x,
            BoundaryPoint::Infinity => f64::INFINITY,
        }
    }

    /// Chordal distance after stereographic projection of `ℝ ∪ {∞}` onto
    /// the unit circle. Bounded by 2 and finite at `∞`.
    pub fn chordal_distance(&self, other: &BoundaryPoint) -> f64 {
        match (*self, *other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
            (BoundaryPoint::Finite(x), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(x)) => 2.0 / libm::sqrt(1.0 + x * x),
            (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => {
                2.0 * libm::fabs(x - y) / libm::sqrt((1.0 + x * x) * (1.0 + y * y))
            }
        }
    }
}

impl From<f64> for BoundaryPoint {
    fn from(x: f64) -> Self {
        BoundaryPoint::Finite(x)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for BoundaryPoint {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> core::result::Result<S::Ok, S::Error> {
        match *self {
            BoundaryPoint::Finite(x) => serializer.serialize_f64(x),
            BoundaryPoint::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// Hyperbolic distance `2·argsinh(|z − w| / (2·√(Im z · Im w)))`.
pub fn dist(z: PointH, w: PointH) -> f64 {
    let chord = libm::hypot(z.re - w.re, z.im - w.im);
    2.0 * libm::asinh(chord / (2.0 * libm::sqrt(z.im * w.im)))
}

/// Horospherical height of `p` seen from `xi`: `Im p` for `∞`, and
/// `Im p / |p − x|²` for a finite point `x`.
///
/// Horocycles based at `xi` are the level sets of this function.
pub fn height(xi: BoundaryPoint, p: PointH) -> f64 {
    match xi {
        BoundaryPoint::Infinity => p.im,
        BoundaryPoint::Finite(x) => {
            let dx = p.re - x;
            p.im / (dx * dx + p.im * p.im)
        }
    }
}

/// Busemann cocycle `B_ξ(z, w) = ln(height_ξ(w) / height_ξ(z))`.
///
/// With this sign convention `B_∞(γ·i, i) = ln(c² + d²)`.
pub fn busemann(xi: BoundaryPoint, z: PointH, w: PointH) -> f64 {
    match xi {
        BoundaryPoint::Infinity => libm::log(w.im / z.im),
        BoundaryPoint::Finite(x) => {
            let dz = {
                let dx = z.re - x;
                dx * dx + z.im * z.im
            };
            let dw = {
                let dx = w.re - x;
                dx * dx + w.im * w.im
            };
            libm::log(w.im / z.im) + libm::log(dz / dw)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_points_off_the_half_plane() {
        assert!(PointH::new(0.0, 0.0).is_err());
        assert!(PointH::new(1.0, -2.0).is_err());
        assert!(PointH::new(f64::NAN, 1.0).is_err());
        assert!(PointH::new(0.0, f64::INFINITY).is_err());
        assert!(PointH::new(-3.0, 1e-300).is_ok());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dist(PointH::I, PointH::I), 0.0);
        assert_abs_diff_eq!(
            dist(PointH::I, PointH::on_imaginary_axis(1.0)),
            1.0,
            epsilon = 1e-15
        );
        let z = PointH::new(2.0, 0.5).unwrap();
        let w = PointH::new(-1.0, 3.0).unwrap();
        assert_eq!(dist(z, w), dist(w, z));
    }

    #[test]
    fn busemann_examples() {
        let two_i = PointH::new(0.0, 2.0).unwrap();
        assert_eq!(busemann(BoundaryPoint::Infinity, PointH::I, PointH::I), 0.0);
        assert_abs_diff_eq!(
            busemann(BoundaryPoint::Infinity, PointH::I, two_i),
            core::f64::consts::LN_2,
            epsilon = 1e-15
        );
        // i and 2i lie on opposite sides of the horocycle at 0 through i.
        assert!(busemann(BoundaryPoint::Finite(0.0), PointH::I, two_i) < 0.0);
    }

    #[test]
    fn chordal_distance_handles_infinity() {
        let inf = BoundaryPoint::Infinity;
        assert_eq!(inf.chordal_distance(&inf), 0.0);
        assert_abs_diff_eq!(BoundaryPoint::Finite(0.0).chordal_distance(&inf), 2.0);
        assert!(BoundaryPoint::Finite(1e12).chordal_distance(&inf) < 1e-11);
    }
}
