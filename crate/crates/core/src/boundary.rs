//! Finite-depth evidence for the type of a boundary point `ξ` relative to the
//! orbit `Γ·i`.
//!
//! The orbit is probed through the horospherical heights
//! `height_ξ(γ·i)` (just `Im γ(i)` when `ξ = ∞`). A horocyclic point sees
//! unbounded heights; a discrete point sees heights accumulating only at 0;
//! an irregular point has bounded heights with a non-constant sequence
//! tending to some `l > 0`. A finite ball can only suggest these limits, so
//! every verdict except `parabolic` is reported as evidence.

use alloc::vec::Vec;

use crate::group::{enumerate_to_depth, GroupElement, GroupSpec, IsometryClass};
use crate::hyperbolic::{height, BoundaryPoint, PointH};
use crate::tol::GEOM_TOL;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "kebab-case")
)]
pub enum Verdict {
    HorocyclicEvidence,
    DiscreteEvidence,
    Parabolic,
    IrregularEvidence,
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::HorocyclicEvidence => "horocyclic-evidence",
            Verdict::DiscreteEvidence => "discrete-evidence",
            Verdict::Parabolic => "parabolic",
            Verdict::IrregularEvidence => "irregular-evidence",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Orbit type of `h_ℝ(u)` for a vector `u` whose forward endpoint has
    /// this type.
    pub fn orbit_type(&self) -> &'static str {
        match self {
            Verdict::HorocyclicEvidence => "dense in the non-wandering set",
            Verdict::DiscreteEvidence => "closed, not periodic",
            Verdict::Parabolic => "periodic",
            Verdict::IrregularEvidence => "irregular (neither closed nor dense)",
            Verdict::Inconclusive => "undetermined",
        }
    }
}

/// Thresholds turning limit statements into finite-depth tests.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EvidenceRules {
    /// Consecutive depth increments over which the maximal height must grow.
    pub unbounded_run: usize,
    /// Final maximal height must exceed this multiple of the depth-1 maximum.
    pub unbounded_factor: f64,
    /// Distinct heights needed to call a cluster an accumulation.
    pub accum_count: usize,
    /// Largest spread of a cluster, relative to its lowest height.
    pub accum_window: f64,
    /// Clusters must sit at or above this fraction of the maximal height.
    pub accum_floor: f64,
    /// Chordal tolerance for `g(ξ) = ξ` in the parabolic witness search.
    pub fixed_tol: f64,
}

impl Default for EvidenceRules {
    fn default() -> Self {
        EvidenceRules {
            unbounded_run: 3,
            unbounded_factor: 10.0,
            accum_count: 5,
            accum_window: 1e-3,
            accum_floor: 1e-3,
            fixed_tol: GEOM_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LimitPointEvidence {
    pub point: BoundaryPoint,
    pub depth: usize,
    pub sup_height: f64,
    /// Maximal height over the ball of each radius `0..=depth`.
    pub sup_by_depth: Vec<f64>,
    pub height_accumulation: Option<f64>,
    pub parabolic_witness: Option<GroupElement>,
    pub verdict: Verdict,
}

/// Heights `height_ξ(γ·i)` over the ball of radius `depth`, identity
/// included, in descending order.
pub fn orbit_heights(spec: &GroupSpec, xi: BoundaryPoint, depth: usize) -> Result<Vec<f64>> {
    let mut heights: Vec<f64> = height_layers(spec, xi, depth)?
        .into_iter()
        .flatten()
        .collect();
    heights.sort_by(|a, b| b.total_cmp(a));
    Ok(heights)
}

fn check_depth(spec: &GroupSpec, depth: usize) -> Result<()> {
    if depth == 0 || depth > spec.max_word_length() {
        return Err(Error::InvalidParameter(
            "depth must be in 1..=max_word_length",
        ));
    }
    Ok(())
}

/// Heights grouped by exact word length; layer 0 is the identity.
fn height_layers(spec: &GroupSpec, xi: BoundaryPoint, depth: usize) -> Result<Vec<Vec<f64>>> {
    check_depth(spec, depth)?;
    let ball = enumerate_to_depth(spec, depth)?;
    Ok(layers_of(&ball, xi, depth))
}

fn layers_of(ball: &[GroupElement], xi: BoundaryPoint, depth: usize) -> Vec<Vec<f64>> {
    let mut layers = alloc::vec![Vec::new(); depth + 1];
    layers[0].push(height(xi, PointH::I));
    for g in ball {
        layers[g.word_length()].push(height(xi, g.matrix().apply(PointH::I)));
    }
    layers
}

/// Classifies `xi` with the default [`EvidenceRules`].
pub fn classify_boundary_point(
    spec: &GroupSpec,
    xi: BoundaryPoint,
    depth: usize,
) -> Result<LimitPointEvidence> {
    classify_with_rules(spec, xi, depth, &EvidenceRules::default())
}

/// Tests, in order: a parabolic element of the ball fixing `xi`; unbounded
/// heights; bounded heights accumulating at some `l > 0`; bounded heights
/// without such an accumulation. Anything else is inconclusive.
pub fn classify_with_rules(
    spec: &GroupSpec,
    xi: BoundaryPoint,
    depth: usize,
    rules: &EvidenceRules,
) -> Result<LimitPointEvidence> {
    check_depth(spec, depth)?;
    let ball = enumerate_to_depth(spec, depth)?;
    let witness = ball
        .iter()
        .find(|g| {
            g.classify() == IsometryClass::Parabolic
                && g.matrix().apply_boundary(xi).chordal_distance(&xi) <= rules.fixed_tol
        })
        .cloned();
    Ok(evidence_from_layers(
        xi,
        &layers_of(&ball, xi, depth),
        witness,
        rules,
    ))
}

/// Verdict from heights grouped by word length (layer `k` holds the heights
/// of elements of length exactly `k`).
pub fn evidence_from_layers(
    xi: BoundaryPoint,
    layers: &[Vec<f64>],
    parabolic_witness: Option<GroupElement>,
    rules: &EvidenceRules,
) -> LimitPointEvidence {
    let depth = layers.len().saturating_sub(1);
    let mut sup_by_depth = Vec::with_capacity(layers.len());
    let mut sup = f64::NEG_INFINITY;
    for layer in layers {
        sup = layer.iter().copied().fold(sup, f64::max);
        sup_by_depth.push(sup);
    }

    let unbounded = depth >= rules.unbounded_run
        && sup_by_depth.len() > 1
        && (0..rules.unbounded_run).all(|j| sup_by_depth[depth - j] > sup_by_depth[depth - j - 1])
        && sup_by_depth[depth] > rules.unbounded_factor * sup_by_depth[1];
    let bounded = depth >= 1 && sup_by_depth[depth] <= sup_by_depth[depth - 1];
    let height_accumulation = accumulation(layers, rules);

    let verdict = if parabolic_witness.is_some() {
        Verdict::Parabolic
    } else if unbounded {
        Verdict::HorocyclicEvidence
    } else if bounded && height_accumulation.is_some() {
        Verdict::IrregularEvidence
    } else if bounded {
        Verdict::DiscreteEvidence
    } else {
        Verdict::Inconclusive
    };

    LimitPointEvidence {
        point: xi,
        depth,
        sup_height: sup,
        sup_by_depth,
        height_accumulation,
        parabolic_witness,
        verdict,
    }
}

/// Looks for at least `accum_count` distinct heights, all at or above
/// `accum_floor · sup`, spanning at most `accum_window` relative to the
/// lowest of them, one of which comes from the deepest layer.
///
/// Both thresholds are relative because moving `ξ` by a group element
/// rescales the heights near it by a common factor; absolute thresholds would
/// then give different verdicts along one orbit. Heights of a discrete point pile up only near 0, and
/// new elements at the outermost layer then no longer land in any cluster
/// away from 0; the deepest-layer condition keeps such stale clusters from
/// counting. Returns the median of the largest qualifying cluster.
fn accumulation(layers: &[Vec<f64>], rules: &EvidenceRules) -> Option<f64> {
    let deepest = layers.len().checked_sub(1)?;
    let sup = layers.iter().flatten().copied().fold(0.0, f64::max);
    let floor = rules.accum_floor * sup;
    let mut tagged: Vec<(f64, bool)> = layers
        .iter()
        .enumerate()
        .flat_map(|(k, layer)| layer.iter().map(move |h| (*h, k == deepest)))
        .filter(|(h, _)| *h >= floor && *h > 0.0 && h.is_finite())
        .collect();
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0));

    // collapse numerically equal heights, remembering whether any came from
    // the deepest layer
    let mut distinct: Vec<(f64, bool)> = Vec::new();
    for (h, deep) in tagged {
        match distinct.last_mut() {
            Some((prev, prev_deep)) if h - *prev <= 1e-12 * prev.max(1.0) => *prev_deep |= deep,
            _ => distinct.push((h, deep)),
        }
    }

    let mut best: Option<(usize, usize)> = None;
    let mut start = 0;
    for end in 0..distinct.len() {
        while distinct[end].0 - distinct[start].0 > rules.accum_window * distinct[start].0 {
            start += 1;
        }
        let count = end - start + 1;
        if count >= rules.accum_count
            && distinct[start..=end].iter().any(|(_, deep)| *deep)
            && best.is_none_or(|(s, e)| count > e - s + 1)
        {
            best = Some((start, end));
        }
    }
    best.map(|(s, e)| distinct[(s + e) / 2].0)
}
