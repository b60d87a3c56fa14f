use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::group::GroupElement;
use crate::hyperbolic::{dist, BoundaryPoint, PointH};
use crate::{Error, Result};

use super::criteria::{settle_cauchy, settle_to_target, ConvergenceVerdict};
use super::{HeightBand, Settle};

/// Growth factor for the divergence flags: the last term must exceed the
/// first by this factor.
pub const GROWTH_FACTOR: f64 = 10.0;

/// A sequence `(γ_n)` whose orbit points `γ_n(i)` stay in a height band
/// while their moduli `|γ_n(i)|` grow.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SequenceCandidate {
    elements: Vec<GroupElement>,
    heights: Vec<f64>,
    moduli: Vec<f64>,
    band: HeightBand,
    endpoint_images: Vec<BoundaryPoint>,
    coefficients: Vec<[f64; 4]>,
    /// False when all heights coincide: the sequence then fails the
    /// non-constancy requirement even if everything else holds.
    non_constant_heights: bool,
}

impl SequenceCandidate {
    /// Wraps an explicit sequence. Every height `Im γ_n(i)` must lie in
    /// `band`.
    pub fn from_elements(elements: Vec<GroupElement>, band: HeightBand) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParameter("sequence is empty"));
        }
        let images: Vec<PointH> = elements
            .iter()
            .map(|g| g.matrix().apply(PointH::I))
            .collect();
        let heights: Vec<f64> = images.iter().map(|z| z.im()).collect();
        if !heights.iter().all(|h| band.contains(*h)) {
            return Err(Error::InvalidParameter("sequence leaves the height band"));
        }
        let first = heights[0];
        let non_constant_heights = heights
            .iter()
            .any(|h| libm::fabs(h - first) > 1e-12 * first.max(1.0));
        Ok(SequenceCandidate {
            moduli: images.iter().map(|z| z.modulus()).collect(),
            endpoint_images: elements
                .iter()
                .map(|g| g.matrix().apply_boundary(BoundaryPoint::Infinity))
                .collect(),
            coefficients: elements.iter().map(|g| g.matrix().coefficients()).collect(),
            elements,
            heights,
            band,
            non_constant_heights,
        })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn moduli(&self) -> &[f64] {
        &self.moduli
    }

    pub fn band(&self) -> HeightBand {
        self.band
    }

    pub fn endpoint_images(&self) -> &[BoundaryPoint] {
        &self.endpoint_images
    }

    pub fn coefficients(&self) -> &[[f64; 4]] {
        &self.coefficients
    }

    pub fn non_constant_heights(&self) -> bool {
        self.non_constant_heights
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn inverses(&self) -> Vec<GroupElement> {
        self.elements.iter().map(GroupElement::inverse).collect()
    }
}

/// Greedy extraction of a band-bounded escaping sequence from a ball.
///
/// Elements with `Im γ(i)` in the band are visited by increasing `|γ(i)|`
/// (ties by word length, then word); an element is taken when both its
/// modulus and its word length strictly exceed those of the last one taken.
/// Fewer than `min_len` picks is reported as [`Error::NoSequenceFound`].
pub fn find_bounded_escaping_sequence(
    ball: &[GroupElement],
    band: HeightBand,
    min_len: usize,
) -> Result<SequenceCandidate> {
    let mut candidates: Vec<(f64, &GroupElement)> = ball
        .iter()
        .filter_map(|g| {
            let z = g.matrix().apply(PointH::I);
            band.contains(z.im()).then_some((z.modulus(), g))
        })
        .collect();
    candidates.sort_by(|(ma, a), (mb, b)| {
        ma.partial_cmp(mb)
            .unwrap_or(Ordering::Equal)
            .then(a.word_length().cmp(&b.word_length()))
            .then_with(|| a.word().cmp(b.word()))
    });

    let mut picked: Vec<GroupElement> = Vec::new();
    let mut last: Option<(f64, usize)> = None;
    for (modulus, g) in candidates {
        let escapes = match last {
            None => true,
            Some((m, len)) => modulus > m * (1.0 + 1e-12) && g.word_length() > len,
        };
        if escapes {
            last = Some((modulus, g.word_length()));
            picked.push(g.clone());
        }
    }
    if picked.len() < min_len {
        return Err(Error::NoSequenceFound {
            found: picked.len(),
            required: min_len,
        });
    }
    SequenceCandidate::from_elements(picked, band)
}

/// Divergence probe at `t_n = ln|b_n|`, where
/// `d(i·e^t, γ(i·e^t)) = 2·argsinh(√(b²c² + d² + a² − 1)/2)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DisplacementCheck {
    /// `None` where `b_n = 0`.
    pub t_values: Vec<Option<f64>>,
    pub distances: Vec<Option<f64>>,
    pub predicted: Vec<Option<f64>>,
    pub max_residual: f64,
    pub diverging: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LowerLeftCheck {
    pub c_values: Vec<f64>,
    pub limit_zero: bool,
    pub verdict: ConvergenceVerdict,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CoefficientReport {
    pub a_values: Vec<f64>,
    pub a_diverging: bool,
    pub lower_left: LowerLeftCheck,
    pub d_values: Vec<f64>,
    pub d_limit: ConvergenceVerdict,
    pub min_c2_plus_d2: f64,
    /// `1/M` for the band `[m, M]`.
    pub c2_plus_d2_lower_bound: f64,
    pub lower_bound_holds: bool,
    pub displacement: DisplacementCheck,
}

/// `2·argsinh(√(b²e^{−2t} + c²e^{2t} + d² + a² − 2)/2)`, the displacement of
/// `i·e^t` under `(a, b, c, d)`.
pub fn displacement_formula(coeffs: [f64; 4], t: f64) -> f64 {
    let [a, b, c, d] = coeffs;
    let radicand = b * b * libm::exp(-2.0 * t) + c * c * libm::exp(2.0 * t) + d * d + a * a - 2.0;
    2.0 * libm::asinh(libm::sqrt(radicand.max(0.0)) / 2.0)
}

/// The same displacement at `t = ln|b|`: `2·argsinh(√(b²c² + d² + a² − 1)/2)`.
pub fn displacement_at_log_b(coeffs: [f64; 4]) -> f64 {
    let [a, b, c, d] = coeffs;
    let radicand = b * b * c * c + d * d + a * a - 1.0;
    2.0 * libm::asinh(libm::sqrt(radicand.max(0.0)) / 2.0)
}

/// Last `window + 1` terms strictly increasing and the final term at least
/// [`GROWTH_FACTOR`] times the first.
fn diverging(values: &[f64], window: usize) -> bool {
    if values.len() < window + 1 {
        return false;
    }
    let tail = &values[values.len() - window - 1..];
    tail.windows(2).all(|w| w[1] > w[0]) && values[values.len() - 1] >= GROWTH_FACTOR * values[0]
}

pub fn check_coefficient_asymptotics(
    seq: &SequenceCandidate,
    settle: &Settle,
) -> CoefficientReport {
    let coeffs = seq.coefficients();
    let a_values: Vec<f64> = coeffs.iter().map(|k| k[0]).collect();
    let c_values: Vec<f64> = coeffs.iter().map(|k| k[2]).collect();
    let d_values: Vec<f64> = coeffs.iter().map(|k| k[3]).collect();
    let a_abs: Vec<f64> = a_values.iter().map(|a| libm::fabs(*a)).collect();

    let c_verdict = settle_to_target(&c_values, 0.0, settle);
    let min_c2_plus_d2 = coeffs
        .iter()
        .map(|k| k[2] * k[2] + k[3] * k[3])
        .fold(f64::INFINITY, f64::min);
    let c2_plus_d2_lower_bound = 1.0 / seq.band().hi;

    let mut t_values = Vec::with_capacity(coeffs.len());
    let mut distances = Vec::with_capacity(coeffs.len());
    let mut predicted = Vec::with_capacity(coeffs.len());
    let mut max_residual: f64 = 0.0;
    for (g, k) in seq.elements().iter().zip(coeffs) {
        if k[1] == 0.0 {
            t_values.push(None);
            distances.push(None);
            predicted.push(None);
            continue;
        }
        let t = libm::log(libm::fabs(k[1]));
        let x = PointH::on_imaginary_axis(t);
        let measured = dist(x, g.matrix().apply(x));
        let expected = displacement_at_log_b(*k);
        max_residual = max_residual.max(libm::fabs(measured - expected) / expected.max(1.0));
        t_values.push(Some(t));
        distances.push(Some(measured));
        predicted.push(Some(expected));
    }
    let finite_distances: Vec<f64> = distances.iter().flatten().copied().collect();

    CoefficientReport {
        a_diverging: diverging(&a_abs, settle.window_count),
        a_values,
        lower_left: LowerLeftCheck {
            limit_zero: c_verdict.converged,
            verdict: c_verdict,
            c_values,
        },
        d_limit: settle_cauchy(&d_values, settle),
        d_values,
        min_c2_plus_d2,
        c2_plus_d2_lower_bound,
        // heights are at most M, so c² + d² = 1/height ≥ 1/M up to rounding
        lower_bound_holds: min_c2_plus_d2 >= c2_plus_d2_lower_bound * (1.0 - 1e-12),
        displacement: DisplacementCheck {
            diverging: diverging(&finite_distances, settle.window_count),
            t_values,
            distances,
            predicted,
            max_residual,
        },
    }
}
