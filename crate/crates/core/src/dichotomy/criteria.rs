use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::flows::UnitTangent;
use crate::group::GroupElement;
use crate::hyperbolic::{busemann, BoundaryPoint, PointH};
use crate::tol::DEDUP_TOL;

use super::Settle;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "lowercase")
)]
pub enum Limit {
    Real(f64),
    Boundary(BoundaryPoint),
}

impl Limit {
    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Limit::Real(x) => Some(x),
            Limit::Boundary(_) => None,
        }
    }
}

/// Outcome of a finite settle test on a sequence.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConvergenceVerdict {
    pub converged: bool,
    pub limit: Option<Limit>,
    pub residuals: Vec<f64>,
}

impl ConvergenceVerdict {
    fn rejected() -> Self {
        ConvergenceVerdict {
            converged: false,
            limit: None,
            residuals: Vec::new(),
        }
    }

    pub fn real_limit(&self) -> Option<f64> {
        self.limit.and_then(|l| l.as_real())
    }
}

fn tail_settled(residuals: &[f64], settle: &Settle) -> bool {
    residuals.len() >= settle.window_count
        && residuals[residuals.len() - settle.window_count..]
            .iter()
            .all(|r| *r < settle.eps)
}

/// Residuals `|v_n − target|`.
pub fn settle_to_target(values: &[f64], target: f64, settle: &Settle) -> ConvergenceVerdict {
    let residuals: Vec<f64> = values.iter().map(|v| libm::fabs(v - target)).collect();
    let converged = tail_settled(&residuals, settle);
    ConvergenceVerdict {
        converged,
        limit: converged.then_some(Limit::Real(target)),
        residuals,
    }
}

/// Cauchy residuals `|v_n − v_{n−1}|`; the limit is the last value, and
/// values beyond `1/eps` in magnitude count as escaping to infinity.
pub fn settle_cauchy(values: &[f64], settle: &Settle) -> ConvergenceVerdict {
    let residuals: Vec<f64> = values.windows(2).map(|w| libm::fabs(w[1] - w[0])).collect();
    let last = values.last().copied().unwrap_or(f64::NAN);
    let converged = tail_settled(&residuals, settle)
        && last.is_finite()
        && libm::fabs(last) <= 1.0 / settle.eps;
    ConvergenceVerdict {
        converged,
        limit: converged.then_some(Limit::Real(last)),
        residuals,
    }
}

/// Distance used to measure boundary convergence: `1/|x|` towards `∞`
/// (so the residual is below `eps` once `|x| > 1/eps`), `|x − y|` towards a
/// finite `y`.
pub fn boundary_residual(x: BoundaryPoint, target: BoundaryPoint) -> f64 {
    match (x, target) {
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
        (BoundaryPoint::Finite(x), BoundaryPoint::Infinity) => 1.0 / libm::fabs(x),
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(_)) => f64::INFINITY,
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => libm::fabs(x - y),
    }
}

pub fn settle_boundary(
    points: &[BoundaryPoint],
    target: BoundaryPoint,
    settle: &Settle,
) -> ConvergenceVerdict {
    let residuals: Vec<f64> = points
        .iter()
        .map(|p| boundary_residual(*p, target))
        .collect();
    let converged = tail_settled(&residuals, settle);
    ConvergenceVerdict {
        converged,
        limit: converged.then_some(Limit::Boundary(target)),
        residuals,
    }
}

fn pairwise_distinct(elements: &[GroupElement]) -> bool {
    let mut seen = BTreeSet::new();
    elements
        .iter()
        .all(|g| seen.insert(crate::group::dedup_key(g.matrix(), DEDUP_TOL)))
}

/// Two-condition test for `t ∈ T_u` with witness `alpha`:
///
/// 1. `γ_n ũ(∞) → α ũ(∞)`;
/// 2. `B_{ũ(∞)}(γ_n⁻¹ i, α⁻¹ i)` settles at some `t`.
///
/// Residual `n` is the larger of the condition-1 residual of term `n` and
/// the Cauchy residual of condition 2 between terms `n − 1` and `n`. The
/// elements must be pairwise distinct; degenerate input is rejected with an
/// empty residual stream.
pub fn test_tu_membership(
    u: &UnitTangent,
    alpha: &GroupElement,
    elements: &[GroupElement],
    settle: &Settle,
) -> ConvergenceVerdict {
    if elements.len() < 2 || !pairwise_distinct(elements) {
        return ConvergenceVerdict::rejected();
    }
    let xi = u.forward_endpoint();
    let target = alpha.matrix().apply_boundary(xi);
    let alpha_inv_i = alpha.matrix().inverse().apply(PointH::I);
    let values: Vec<f64> = elements
        .iter()
        .map(|g| busemann(xi, g.matrix().inverse().apply(PointH::I), alpha_inv_i))
        .collect();
    let residuals: Vec<f64> = (1..elements.len())
        .map(|n| {
            let endpoint = boundary_residual(elements[n].matrix().apply_boundary(xi), target);
            let step = libm::fabs(values[n] - values[n - 1]);
            endpoint.max(step)
        })
        .collect();
    let last = values[values.len() - 1];
    let converged = tail_settled(&residuals, settle)
        && last.is_finite()
        && libm::fabs(last) <= 1.0 / settle.eps;
    ConvergenceVerdict {
        converged,
        limit: converged.then_some(Limit::Real(last)),
        residuals,
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RecurrenceVerdict {
    pub criterion: ConvergenceVerdict,
    pub recurrent: bool,
}

/// Recurrence test: [`test_tu_membership`] with `α = id`, recurrent when the
/// settled Busemann value is 0 within `eps`.
pub fn test_recurrence(
    u: &UnitTangent,
    elements: &[GroupElement],
    settle: &Settle,
) -> RecurrenceVerdict {
    let identity = GroupElement::synthetic(crate::hyperbolic::Mobius::IDENTITY);
    let criterion = test_tu_membership(u, &identity, elements, settle);
    let recurrent = criterion.converged
        && criterion
            .real_limit()
            .is_some_and(|t| libm::fabs(t) < settle.eps);
    RecurrenceVerdict {
        criterion,
        recurrent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::Mobius;
    use alloc::vec;

    fn settle() -> Settle {
        Settle::default()
    }

    fn translations(n: usize) -> Vec<GroupElement> {
        (1..=n)
            .map(|k| GroupElement::synthetic(Mobius::translation(k as f64)))
            .collect()
    }

    #[test]
    fn settle_rules() {
        let s = settle();
        let v = settle_cauchy(&[1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0], &s);
        assert!(v.converged);
        assert_eq!(v.real_limit(), Some(2.0));
        let v = settle_cauchy(&[2.0, 2.0, 2.0, 2.0, 2.0], &s);
        assert!(!v.converged, "needs five residuals");
        let v = settle_cauchy(&[1e7; 8], &s);
        assert!(!v.converged, "magnitude beyond 1/eps counts as divergence");
        let v = settle_to_target(&[1.0, 1e-7, 1e-8, 0.0, 0.0, 0.0], 0.0, &s);
        assert!(v.converged);
        let pts = [BoundaryPoint::Finite(2e6), BoundaryPoint::Infinity];
        assert!(
            settle_boundary(
                &pts,
                BoundaryPoint::Infinity,
                &Settle {
                    window_count: 2,
                    ..s
                }
            )
            .converged
        );
    }

    #[test]
    fn repeated_identity_is_rejected() {
        let id = GroupElement::synthetic(Mobius::IDENTITY);
        let seq = vec![id.clone(); 10];
        let v = test_tu_membership(&UnitTangent::REFERENCE, &id, &seq, &settle());
        assert!(!v.converged);
        assert!(v.residuals.is_empty());
    }

    #[test]
    fn translations_settle_at_zero() {
        let id = GroupElement::synthetic(Mobius::IDENTITY);
        let v = test_tu_membership(&UnitTangent::REFERENCE, &id, &translations(10), &settle());
        assert!(v.converged);
        assert_eq!(v.real_limit(), Some(0.0));
        assert!(v.residuals.iter().all(|r| *r == 0.0));
        let r = test_recurrence(&UnitTangent::REFERENCE, &translations(10), &settle());
        assert!(r.recurrent);
    }

    #[test]
    fn diagonal_powers_diverge() {
        let lambda: f64 = 3.0;
        let g = Mobius::dilation(lambda).unwrap();
        let mut m = Mobius::IDENTITY;
        let seq: Vec<GroupElement> = (0..10)
            .map(|_| {
                m = m.compose(&g);
                GroupElement::synthetic(m)
            })
            .collect();
        let id = GroupElement::synthetic(Mobius::IDENTITY);
        let v = test_tu_membership(&UnitTangent::REFERENCE, &id, &seq, &settle());
        assert!(!v.converged);
        for r in &v.residuals {
            assert!((r - libm::log(lambda)).abs() < 1e-12);
        }
    }

    #[test]
    fn nonzero_limit_is_not_recurrence() {
        // γ_n⁻¹ i = n + i/4, so B_∞(γ_n⁻¹ i, i) = ln 4 for every n
        let seq: Vec<GroupElement> = (1..=10)
            .map(|n| {
                let m = Mobius::translation(n as f64).compose(&Mobius::dilation(0.25).unwrap());
                GroupElement::synthetic(m.inverse())
            })
            .collect();
        let r = test_recurrence(&UnitTangent::REFERENCE, &seq, &settle());
        assert!(r.criterion.converged);
        assert!((r.criterion.real_limit().unwrap() - libm::log(4.0)).abs() < 1e-12);
        assert!(!r.recurrent);
    }

    #[test]
    fn short_sequences_do_not_converge() {
        let r = test_recurrence(&UnitTangent::REFERENCE, &translations(3), &settle());
        assert!(!r.criterion.converged);
        let r = test_recurrence(&UnitTangent::REFERENCE, &[], &settle());
        assert!(!r.criterion.converged);
    }
}
