use core::ops::Mul;

use super::{BoundaryPoint, PointH};
use crate::tol::{DET_TOL, RENORM_MAX_SCALE, SIGN_TOL};
use crate::{Error, Result};

/// An orientation-preserving isometry `z ↦ (az + b)/(cz + d)` of `ℍ`, stored
/// as a real matrix with `ad − bc = 1`.
///
/// `M` and `−M` act identically, so values are kept sign-canonical: the
/// first coefficient of `(a, b, c, d)` with magnitude above
/// [`SIGN_TOL`] is positive. Composition and inversion restore the canonical
/// sign; composition also divides out determinant drift while the entries
/// are small enough for the computed determinant to mean something (see
/// [`RENORM_MAX_SCALE`]).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")
)]
pub struct Mobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a unit-determinant map. The determinant must already be 1 up
    /// to the relative tolerance [`DET_TOL`]; the residual is divided out.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = 1.0f64.max(libm::fabs(a * d) + libm::fabs(b * c));
        if !det.is_finite() || libm::fabs(det - 1.0) > DET_TOL * scale {
            return Err(Error::InvalidDeterminant { det });
        }
        Ok(Self::rescaled(a, b, c, d, det))
    }

    /// Builds a map from any matrix of positive determinant by scaling it
    /// into `SL(2, ℝ)`.
    pub fn from_projective(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) {
            return Err(Error::InvalidDeterminant { det });
        }
        Ok(Self::rescaled(a, b, c, d, det))
    }

    fn rescaled(a: f64, b: f64, c: f64, d: f64, det: f64) -> Self {
        let k = 1.0 / libm::sqrt(det);
        Mobius {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        }
        .canonical()
    }

    fn canonical(self) -> Self {
        let first = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|x| libm::fabs(*x) > SIGN_TOL)
            .unwrap_or(1.0);
        if first < 0.0 {
            Mobius {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }

    /// `z ↦ z + s`.
    pub fn translation(s: f64) -> Self {
        Mobius {
            a: 1.0,
            b: s,
            c: 0.0,
            d: 1.0,
        }
    }

    /// `z ↦ λz`, i.e. `diag(√λ, 1/√λ)`.
    pub fn dilation(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter("dilation factor must be positive"));
        }
        let s = libm::sqrt(lambda);
        Ok(Mobius {
            a: s,
            b: 0.0,
            c: 0.0,
            d: 1.0 / s,
        })
    }

    /// `diag(e^{t/2}, e^{−t/2})`, translation by `t` along the imaginary axis.
    pub fn geodesic(t: f64) -> Self {
        let s = libm::exp(t / 2.0);
        Mobius {
            a: s,
            b: 0.0,
            c: 0.0,
            d: 1.0 / s,
        }
    }

    /// Rotation `(cos θ, −sin θ, sin θ, cos θ)` about `i`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = libm::sincos(theta);
        Mobius {
            a: c,
            b: -s,
            c: s,
            d: c,
        }
        .canonical()
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn compose(&self, rhs: &Mobius) -> Mobius {
        let (a, b, c, d) = (
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        );
        let det = a * d - b * c;
        if det > 0.0 && libm::fabs(a * d) + libm::fabs(b * c) <= RENORM_MAX_SCALE {
            Self::rescaled(a, b, c, d, det)
        } else {
            Mobius { a, b, c, d }.canonical()
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
        .canonical()
    }

    /// `k · self · k⁻¹`.
    pub fn conjugate_by(&self, k: &Mobius) -> Mobius {
        k.compose(self).compose(&k.inverse())
    }

    /// Largest coefficient difference with `other`.
    pub fn max_abs_diff(&self, other: &Mobius) -> f64 {
        let (x, y) = (self.coefficients(), other.coefficients());
        (0..4).map(|k| libm::fabs(x[k] - y[k])).fold(0.0, f64::max)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.max_abs_diff(&Mobius::IDENTITY) <= tol
    }

    /// `(az + b)/(cz + d)`.
    ///
    /// # Panics
    ///
    /// If the image leaves the open half-plane, which only happens through
    /// overflow or a corrupted matrix.
    pub fn apply(&self, z: PointH) -> PointH {
        let (x, y) = (z.re(), z.im());
        let den_re = self.c * x + self.d;
        let den_im = self.c * y;
        let den = den_re * den_re + den_im * den_im;
        let re = ((self.a * x + self.b) * den_re + self.a * self.c * y * y) / den;
        let im = y / den;
        match PointH::new(re, im) {
            Ok(w) => w,
            Err(_) => panic!("Möbius image ({re}, {im}) left the upper half-plane"),
        }
    }

    /// Continuous extension of the action to `ℝ ∪ {∞}`.
    pub fn apply_boundary(&self, x: BoundaryPoint) -> BoundaryPoint {
        match x {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }
}

impl Default for Mobius {
    fn default() -> Self {
        Mobius::IDENTITY
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, rhs: Mobius) -> Mobius {
        self.compose(&rhs)
    }
}

impl Mul<&Mobius> for &Mobius {
    type Output = Mobius;

    fn mul(self, rhs: &Mobius) -> Mobius {
        self.compose(rhs)
    }
}

impl TryFrom<[[f64; 2]; 2]> for Mobius {
    type Error = Error;

    fn try_from(m: [[f64; 2]; 2]) -> Result<Self> {
        Mobius::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<Mobius> for [[f64; 2]; 2] {
    fn from(m: Mobius) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}
