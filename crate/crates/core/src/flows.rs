//! Geodesic and horocycle flows on `T¹ℍ`, and injectivity-radius profiles
//! along geodesic rays.
//!
//! A unit tangent vector is stored as the isometry carrying the reference
//! vector `ũ₀` (based at `i`, pointing to `∞`) onto it. Both flows act by
//! right multiplication:
//!
//! * `g_t(u) = u · diag(e^{t/2}, e^{−t/2})`
//! * `h_s(u) = u · [[1, s], [0, 1]]`
//!
//! so that `g_t ∘ h_s ∘ g_{−t} = h_{s·e^{−t}}`. The horocycle orbit of `u` is
//! the stable horocycle: it is centred at the forward endpoint `u(∞)`.

use alloc::vec::Vec;

use crate::group::{enumerate_ball, GroupElement, GroupSpec};
use crate::hyperbolic::{dist, BoundaryPoint, Mobius, PointH};
use crate::{Error, Result};

/// Share of the trailing samples used for the `lim inf` estimate.
pub const TAIL_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct UnitTangent {
    frame: Mobius,
}

impl UnitTangent {
    /// `ũ₀`: based at `i`, pointing to `∞`.
    pub const REFERENCE: UnitTangent = UnitTangent {
        frame: Mobius::IDENTITY,
    };

    pub fn from_frame(frame: Mobius) -> Self {
        UnitTangent { frame }
    }

    pub fn frame(&self) -> &Mobius {
        &self.frame
    }

    pub fn base_point(&self) -> PointH {
        self.frame.apply(PointH::I)
    }

    pub fn forward_endpoint(&self) -> BoundaryPoint {
        self.frame.apply_boundary(BoundaryPoint::Infinity)
    }

    pub fn backward_endpoint(&self) -> BoundaryPoint {
        self.frame.apply_boundary(BoundaryPoint::Finite(0.0))
    }

    /// Image under the isometry `m`.
    pub fn pushed_by(&self, m: &Mobius) -> Self {
        UnitTangent {
            frame: m.compose(&self.frame),
        }
    }

    pub fn geodesic_flow(&self, t: f64) -> Self {
        UnitTangent {
            frame: self.frame.compose(&Mobius::geodesic(t)),
        }
    }

    pub fn horocycle_flow(&self, s: f64) -> Self {
        UnitTangent {
            frame: self.frame.compose(&Mobius::translation(s)),
        }
    }

    /// Point at arclength `t ≥ 0` along the forward geodesic ray.
    pub fn ray_point(&self, t: f64) -> Result<PointH> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.geodesic_flow(t).base_point())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RayProfile {
    pub times: Vec<f64>,
    /// Half the minimal displacement `d(x_t, γ·x_t)` over the non-identity
    /// ball elements. Fewer competitors than the full group, so each entry
    /// over-estimates the true injectivity radius.
    pub inj_estimates: Vec<f64>,
    /// Minimum over the last [`TAIL_FRACTION`] of the samples.
    pub liminf_estimate: f64,
}

/// Sample times `0, step, 2·step, …` up to and including `t_max`.
pub fn sample_times(t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter("step must be positive"));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidParameter("t_max must be positive"));
    }
    let n = libm::floor(t_max / step + 1e-9) as usize;
    Ok((0..=n).map(|k| k as f64 * step).collect())
}

/// Half the minimal displacement of `x` over `ball`.
pub fn inj_at(ball: &[GroupElement], x: PointH) -> f64 {
    ball.iter()
        .map(|g| dist(x, g.matrix().apply(x)))
        .fold(f64::INFINITY, f64::min)
        / 2.0
}

pub fn injectivity_profile(
    spec: &GroupSpec,
    u: &UnitTangent,
    t_max: f64,
    step: f64,
) -> Result<RayProfile> {
    let ball = enumerate_ball(spec)?;
    injectivity_profile_in_ball(&ball, u, t_max, step)
}

pub fn injectivity_profile_in_ball(
    ball: &[GroupElement],
    u: &UnitTangent,
    t_max: f64,
    step: f64,
) -> Result<RayProfile> {
    if ball.is_empty() {
        return Err(Error::EmptyBall);
    }
    let times = sample_times(t_max, step)?;
    let inj_estimates = times
        .iter()
        .map(|t| u.ray_point(*t).map(|x| inj_at(ball, x)))
        .collect::<Result<Vec<_>>>()?;
    let liminf_estimate = tail_minimum(&inj_estimates);
    Ok(RayProfile {
        times,
        inj_estimates,
        liminf_estimate,
    })
}

/// Minimum over the last [`TAIL_FRACTION`] of `values` (at least one).
pub fn tail_minimum(values: &[f64]) -> f64 {
    let tail = (libm::ceil(values.len() as f64 * TAIL_FRACTION) as usize).max(1);
    values[values.len().saturating_sub(tail)..]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
