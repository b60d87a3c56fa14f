//! Shipped group families.
//!
//! Every family here is geometrically finite. The flute family is a
//! truncation: an infinite flute surface is geometrically infinite, but only
//! finitely many of its gluings are realised, so the result is a Schottky
//! group of finite rank and stands in for the infinite surface at desk scale.

use alloc::vec::Vec;

use crate::hyperbolic::Mobius;
use crate::{Error, Result};

/// A Euclidean semicircle orthogonal to `ℝ`, i.e. a geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: f64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: f64, radius: f64) -> Self {
        Circle { center, radius }
    }

    fn left(&self) -> f64 {
        self.center - self.radius
    }

    fn right(&self) -> f64 {
        self.center + self.radius
    }
}

/// The map `z ↦ q − s·r/(z − p)` sending the outside of `from = C(p, r)` onto
/// the inside of `to = C(q, s)`.
pub fn circle_pairing(from: Circle, to: Circle) -> Result<Mobius> {
    let (p, r, q, s) = (from.center, from.radius, to.center, to.radius);
    if !(r > 0.0 && s > 0.0 && r.is_finite() && s.is_finite()) {
        return Err(Error::InvalidParameter("circle radius must be positive"));
    }
    Mobius::from_projective(q, -(q * p + s * r), 1.0, -p)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `z ↦ z + translation`.
    CyclicParabolic { translation: f64 },
    /// `z ↦ λz`.
    CyclicHyperbolic { lambda: f64 },
    /// Two ping-pong generators: circle 0 → circle 1 and circle 2 → circle 3.
    SchottkyPair { circles: [Circle; 4] },
    /// One hyperbolic gluing per entry, with that translation length, pairing
    /// `C(−x_k, r_k)` with `C(x_k, r_k)` along a geometrically growing
    /// sequence of centres.
    FluteTruncated { translation_lengths: Vec<f64> },
}

impl Family {
    pub fn default_schottky() -> Self {
        Family::SchottkyPair {
            circles: [
                Circle::new(-3.0, 0.5),
                Circle::new(3.0, 0.5),
                Circle::new(-1.0, 0.5),
                Circle::new(1.0, 0.5),
            ],
        }
    }

    pub fn generators(&self) -> Result<Vec<Mobius>> {
        match self {
            Family::CyclicParabolic { translation } => {
                if !(translation.is_finite() && *translation != 0.0) {
                    return Err(Error::InvalidParameter(
                        "translation must be finite and nonzero",
                    ));
                }
                Ok(alloc::vec![Mobius::translation(*translation)])
            }
            Family::CyclicHyperbolic { lambda } => {
                if !(*lambda > 0.0 && *lambda != 1.0) {
                    return Err(Error::InvalidParameter("lambda must be positive and not 1"));
                }
                Ok(alloc::vec![Mobius::dilation(*lambda)?])
            }
            Family::SchottkyPair { circles } => {
                check_disjoint(circles)?;
                Ok(alloc::vec![
                    circle_pairing(circles[0], circles[1])?,
                    circle_pairing(circles[2], circles[3])?,
                ])
            }
            Family::FluteTruncated {
                translation_lengths,
            } => flute(translation_lengths),
        }
    }
}

fn check_disjoint(circles: &[Circle]) -> Result<()> {
    for (k, c) in circles.iter().enumerate() {
        if !(c.radius > 0.0 && c.center.is_finite() && c.radius.is_finite()) {
            return Err(Error::InvalidParameter("circle radius must be positive"));
        }
        for other in &circles[k + 1..] {
            if !(c.right() < other.left() || other.right() < c.left()) {
                return Err(Error::InvalidParameter("Schottky circles must be disjoint"));
            }
        }
    }
    Ok(())
}

fn flute(lengths: &[f64]) -> Result<Vec<Mobius>> {
    if lengths.is_empty() {
        return Err(Error::InvalidParameter("flute needs at least one gluing"));
    }
    if lengths.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::InvalidParameter(
            "translation lengths must be positive",
        ));
    }
    // Pairing C(−x, r) with C(x, r) has trace 2x/r, so r = x / cosh(ℓ/2)
    // gives translation length ℓ.
    let ratios: Vec<f64> = lengths.iter().map(|l| 1.0 / libm::cosh(l / 2.0)).collect();
    let mut centre = 2.0;
    let mut gens = Vec::with_capacity(lengths.len());
    for (k, ratio) in ratios.iter().enumerate() {
        let r = centre * ratio;
        gens.push(circle_pairing(
            Circle::new(-centre, r),
            Circle::new(centre, r),
        )?);
        if let Some(next) = ratios.get(k + 1) {
            // next circle starts beyond twice the current right end
            centre = 2.0 * centre * (1.0 + ratio) / (1.0 - next);
        }
    }
    Ok(gens)
}
