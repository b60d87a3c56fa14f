use super::{busemann, BoundaryPoint, PointH};
use crate::{Error, Result};

/// An oriented geodesic of `ℍ`, running from `neg` to `pos`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Geodesic {
    neg: BoundaryPoint,
    pos: BoundaryPoint,
}

impl Geodesic {
    pub fn new(neg: BoundaryPoint, pos: BoundaryPoint) -> Result<Self> {
        if neg == pos {
            return Err(Error::DegeneratePoints);
        }
        Ok(Geodesic { neg, pos })
    }

    pub fn neg(&self) -> BoundaryPoint {
        self.neg
    }

    pub fn pos(&self) -> BoundaryPoint {
        self.pos
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic {
            neg: self.pos,
            pos: self.neg,
        }
    }
}

/// The horocycle `{z : B_base(i, z) = level}`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Horocycle {
    pub base: BoundaryPoint,
    pub level: f64,
}

impl Horocycle {
    /// The horocycle based at `base` passing through `z`.
    pub fn through(base: BoundaryPoint, z: PointH) -> Self {
        Horocycle {
            base,
            level: busemann(base, PointH::I, z),
        }
    }

    pub fn contains(&self, z: PointH, tol: f64) -> bool {
        libm::fabs(busemann(self.base, PointH::I, z) - self.level) <= tol
    }
}

/// Cross-ratio `[a; b; c; d] = (a − c)(b − d) / ((a − d)(b − c))`.
///
/// An infinite point cancels against the other factor that contains it, so
/// for instance `[a; b; c; ∞] = (a − c)/(b − c)`.
pub fn cross_ratio(
    a: BoundaryPoint,
    b: BoundaryPoint,
    c: BoundaryPoint,
    d: BoundaryPoint,
) -> Result<f64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegeneratePoints);
            }
        }
    }
    use BoundaryPoint::{Finite, Infinity};
    let r = match (a, b, c, d) {
        (Infinity, Finite(b), Finite(c), Finite(d)) => (b - d) / (b - c),
        (Finite(a), Infinity, Finite(c), Finite(d)) => (a - c) / (a - d),
        (Finite(a), Finite(b), Infinity, Finite(d)) => (b - d) / (a - d),
        (Finite(a), Finite(b), Finite(c), Infinity) => (a - c) / (b - c),
        (Finite(a), Finite(b), Finite(c), Finite(d)) => ((a - c) * (b - d)) / ((a - d) * (b - c)),
        _ => unreachable!("points are pairwise distinct"),
    };
    Ok(r)
}

/// Whether `x` lies strictly inside the boundary arc running
/// counterclockwise (increasing reals, then `∞`) from `from` to `to`.
fn in_open_arc(x: BoundaryPoint, from: BoundaryPoint, to: BoundaryPoint) -> bool {
    let (kx, kf, kt) = (x.cyclic_key(), from.cyclic_key(), to.cyclic_key());
    if kf < kt {
        kf < kx && kx < kt
    } else {
        kx > kf || kx < kt
    }
}

/// Angle `β ∈ [0, π]` at the crossing point of two geodesics, from the
/// identity `[a; c; d; b] = (cos β + 1)/2`.
///
/// `g1` is read as `(a, b)`. The endpoints of `g2` are relabelled `(c, d)` so
/// that the boundary order is `(a; c; b; d)`, whichever way `g2` was given.
/// The returned angle is then the one between the direction of `g1` towards
/// `b` and the direction of `g2` towards `d`.
pub fn angle_between(g1: &Geodesic, g2: &Geodesic) -> Result<f64> {
    let (a, b) = (g1.neg, g1.pos);
    let shared = [g2.neg, g2.pos]
        .iter()
        .filter(|p| **p == a || **p == b)
        .count();
    match shared {
        0 => {}
        2 => return Err(Error::NoIntersection),
        _ => return Err(Error::DegeneratePoints),
    }
    let (c, d) = match (in_open_arc(g2.neg, a, b), in_open_arc(g2.pos, a, b)) {
        (true, false) => (g2.neg, g2.pos),
        (false, true) => (g2.pos, g2.neg),
        _ => return Err(Error::NoIntersection),
    };
    let cos_beta = 2.0 * cross_ratio(a, c, d, b)? - 1.0;
    Ok(libm::acos(cos_beta.clamp(-1.0, 1.0)))
}

/// The point `β` with `[y; x; β; z] = −1`. The geodesic from `β` to `z`
/// meets the geodesic `(y, x)` orthogonally.
pub fn harmonic_conjugate(
    y: BoundaryPoint,
    x: BoundaryPoint,
    z: BoundaryPoint,
) -> Result<BoundaryPoint> {
    if y == x || y == z || x == z {
        return Err(Error::DegeneratePoints);
    }
    use BoundaryPoint::{Finite, Infinity};
    let beta = match (y, x, z) {
        (Finite(y), Finite(x), Infinity) => Finite((x + y) / 2.0),
        (Finite(y), Infinity, Finite(z)) => Finite(2.0 * y - z),
        (Infinity, Finite(x), Finite(z)) => Finite(2.0 * x - z),
        (Finite(y), Finite(x), Finite(z)) => {
            let den = x + y - 2.0 * z;
            if den == 0.0 {
                Infinity
            } else {
                Finite((2.0 * x * y - z * (x + y)) / den)
            }
        }
        _ => unreachable!("points are pairwise distinct"),
    };
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    use BoundaryPoint::{Finite, Infinity};

    fn geo(a: BoundaryPoint, b: BoundaryPoint) -> Geodesic {
        Geodesic::new(a, b).unwrap()
    }

    #[test]
    fn cross_ratio_examples() {
        let r = cross_ratio(Finite(0.0), Finite(1.0), Finite(2.0), Infinity).unwrap();
        assert_eq!(r, 2.0);
        let r = cross_ratio(Finite(-1.0), Finite(0.0), Infinity, Finite(1.0)).unwrap();
        assert_eq!(r, 0.5);
        assert_eq!(
            cross_ratio(Finite(1.0), Finite(1.0), Finite(2.0), Infinity),
            Err(Error::DegeneratePoints)
        );
    }

    #[test]
    fn cross_ratio_at_infinity_is_the_limit_of_the_finite_formula() {
        let (a, b, c) = (0.3, -1.7, 2.4);
        let big = 1e9;
        for k in 0..4 {
            let mut pts = [Finite(a), Finite(b), Finite(c), Finite(-0.9)];
            let mut far = pts;
            pts[k] = Infinity;
            far[k] = Finite(big);
            let exact = cross_ratio(pts[0], pts[1], pts[2], pts[3]).unwrap();
            let approx = cross_ratio(far[0], far[1], far[2], far[3]).unwrap();
            assert_abs_diff_eq!(exact, approx, epsilon = 1e-7);
        }
    }

    #[test]
    fn angle_examples() {
        let g1 = geo(Finite(-1.0), Finite(1.0));
        let g2 = geo(Finite(0.0), Infinity);
        assert_abs_diff_eq!(angle_between(&g1, &g2).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        let g1 = geo(Finite(0.0), Finite(4.0));
        let g2 = geo(Finite(-2.0), Finite(1.0));
        assert_abs_diff_eq!(angle_between(&g1, &g2).unwrap(), FRAC_PI_2, epsilon = 1e-15);
    }

    #[test]
    fn angle_errors() {
        let g = geo(Finite(-1.0), Finite(1.0));
        assert_eq!(angle_between(&g, &g), Err(Error::NoIntersection));
        assert_eq!(angle_between(&g, &g.reversed()), Err(Error::NoIntersection));
        let nested = geo(Finite(-0.5), Finite(0.5));
        assert_eq!(angle_between(&g, &nested), Err(Error::NoIntersection));
        let touching = geo(Finite(1.0), Finite(3.0));
        assert_eq!(angle_between(&g, &touching), Err(Error::DegeneratePoints));
    }

    #[test]
    fn angle_direction_convention() {
        // Circle through i centred at 1 meets the unit semicircle at π/4
        // between the directions towards 1 and towards 1 + √2.
        let s = core::f64::consts::SQRT_2;
        let g1 = geo(Finite(-1.0), Finite(1.0));
        let g2 = geo(Finite(1.0 + s), Finite(1.0 - s));
        assert_abs_diff_eq!(angle_between(&g1, &g2).unwrap(), FRAC_PI_4, epsilon = 1e-12);
        assert_abs_diff_eq!(
            angle_between(&g1, &g2.reversed()).unwrap(),
            FRAC_PI_4,
            epsilon = 1e-12
        );
    }

    #[test]
    fn harmonic_conjugate_examples() {
        assert_eq!(
            harmonic_conjugate(Finite(-1.0), Finite(1.0), Finite(0.0)),
            Ok(Infinity)
        );
        assert_eq!(
            harmonic_conjugate(Finite(0.0), Finite(4.0), Finite(1.0)),
            Ok(Finite(-2.0))
        );
        assert_eq!(
            harmonic_conjugate(Finite(0.0), Finite(0.0), Finite(1.0)),
            Err(Error::DegeneratePoints)
        );
        for (y, x, z) in [
            (Finite(0.0), Finite(4.0), Infinity),
            (Finite(0.0), Infinity, Finite(1.0)),
            (Infinity, Finite(4.0), Finite(1.0)),
        ] {
            let beta = harmonic_conjugate(y, x, z).unwrap();
            assert_abs_diff_eq!(cross_ratio(y, x, beta, z).unwrap(), -1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn horocycle_membership() {
        let h = Horocycle::through(Infinity, PointH::I);
        assert!(h.contains(PointH::new(5.0, 1.0).unwrap(), 1e-12));
        assert!(!h.contains(PointH::new(5.0, 1.1).unwrap(), 1e-12));
        let h = Horocycle::through(Finite(0.0), PointH::I);
        // horocycle at 0 through i is the circle |z − i/2| = 1/2
        let p = PointH::new(0.5, 0.5).unwrap();
        assert!(h.contains(p, 1e-12));
    }
}
