use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::flows::UnitTangent;
use crate::group::{enumerate_to_depth, GroupElement, GroupSpec};
use crate::hyperbolic::{busemann, BoundaryPoint, Mobius, PointH};
use crate::tol::GEOM_TOL;
use crate::{Error, Result};

use super::criteria::{settle_boundary, settle_cauchy, test_tu_membership, ConvergenceVerdict};
use super::sequence::{
    check_coefficient_asymptotics, find_bounded_escaping_sequence, CoefficientReport,
    SequenceCandidate,
};
use super::{DichotomyConfig, HeightBand};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(tag = "kind", rename_all = "kebab-case")
)]
pub enum DichotomyVerdict {
    RecurrenceEvidence,
    NonMinimalityEvidence { t: f64 },
    Inconclusive { reason: String },
}

impl DichotomyVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            DichotomyVerdict::RecurrenceEvidence => "recurrence-evidence",
            DichotomyVerdict::NonMinimalityEvidence { .. } => "non-minimality-evidence",
            DichotomyVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DiagnosticsReport {
    /// Isometry applied to the group so that `u` becomes `ũ₀`.
    pub normalization: Mobius,
    pub band: HeightBand,
    pub eps: f64,
    pub window_count: usize,
    pub search_found: usize,
    pub search_required: usize,
    pub sequence: Option<SequenceCandidate>,
    pub coefficients: Option<CoefficientReport>,
    /// `γ_n⁻¹(∞) = −d_n/c_n`, expected to escape to `∞`.
    pub inverse_endpoints: Option<ConvergenceVerdict>,
    /// `B_∞(γ_n(i), i) = ln(c_n² + d_n²)`.
    pub busemann_limit: Option<ConvergenceVerdict>,
    /// Settled nonzero values of the `T_u` criterion over the witnesses.
    pub candidate_times: Vec<f64>,
    /// Ball elements fixing `∞` after normalization.
    pub infinity_stabilizer: Vec<GroupElement>,
    pub caveats: Vec<String>,
    pub verdict: DichotomyVerdict,
}

fn verdict_from(
    busemann_limit: &ConvergenceVerdict,
    inverse_endpoints: &ConvergenceVerdict,
    eps: f64,
) -> DichotomyVerdict {
    if !inverse_endpoints.converged {
        return DichotomyVerdict::Inconclusive {
            reason: String::from("inverse endpoints do not settle at infinity"),
        };
    }
    match busemann_limit.real_limit() {
        Some(t) if busemann_limit.converged => {
            if libm::fabs(t) < eps {
                DichotomyVerdict::RecurrenceEvidence
            } else {
                DichotomyVerdict::NonMinimalityEvidence { t }
            }
        }
        _ => DichotomyVerdict::Inconclusive {
            reason: String::from("Busemann values do not settle"),
        },
    }
}

/// Evaluates an explicit sequence, already normalized so that the vector of
/// interest is `ũ₀`. `alphas` are the `T_u` witnesses to try.
pub fn diagnose_sequence(
    seq: SequenceCandidate,
    alphas: &[GroupElement],
    config: &DichotomyConfig,
) -> DiagnosticsReport {
    let settle = &config.settle;
    let coefficients = check_coefficient_asymptotics(&seq, settle);
    let inverse_points: Vec<BoundaryPoint> = seq
        .elements()
        .iter()
        .map(|g| g.matrix().inverse().apply_boundary(BoundaryPoint::Infinity))
        .collect();
    let inverse_endpoints = settle_boundary(&inverse_points, BoundaryPoint::Infinity, settle);
    let busemann_values: Vec<f64> = seq
        .elements()
        .iter()
        .map(|g| {
            busemann(
                BoundaryPoint::Infinity,
                g.matrix().apply(PointH::I),
                PointH::I,
            )
        })
        .collect();
    let busemann_limit = settle_cauchy(&busemann_values, settle);

    let inverses = seq.inverses();
    let mut candidate_times: Vec<f64> = alphas
        .iter()
        .filter_map(|alpha| {
            test_tu_membership(&UnitTangent::REFERENCE, alpha, &inverses, settle).real_limit()
        })
        .filter(|t| libm::fabs(*t) >= settle.eps)
        .collect();
    candidate_times.sort_by(f64::total_cmp);
    candidate_times.dedup_by(|a, b| libm::fabs(*a - *b) < settle.eps);

    let mut caveats = Vec::new();
    if !seq.non_constant_heights() {
        caveats.push(String::from(
            "heights are constant: the sequence does not meet the non-constant height requirement",
        ));
    }
    if !coefficients.lower_left.limit_zero {
        caveats.push(String::from("c_n does not settle at 0"));
    }
    caveats.push(format!(
        "finite-depth evidence from {} terms; limits are settle-rule surrogates",
        seq.len()
    ));

    let verdict = verdict_from(&busemann_limit, &inverse_endpoints, settle.eps);
    DiagnosticsReport {
        normalization: Mobius::IDENTITY,
        band: seq.band(),
        eps: settle.eps,
        window_count: settle.window_count,
        search_found: seq.len(),
        search_required: config.min_seq_len,
        coefficients: Some(coefficients),
        inverse_endpoints: Some(inverse_endpoints),
        busemann_limit: Some(busemann_limit),
        candidate_times,
        infinity_stabilizer: Vec::new(),
        caveats,
        sequence: Some(seq),
        verdict,
    }
}

/// Full pipeline for `(Γ, u)`. The group is first conjugated by `k = frame⁻¹`
/// so that `u` becomes `ũ₀`; every reported matrix refers to `kΓk⁻¹`.
///
/// A failed sequence search yields an inconclusive report, not an error.
pub fn run_dichotomy(
    spec: &GroupSpec,
    u: &UnitTangent,
    config: &DichotomyConfig,
) -> Result<DiagnosticsReport> {
    let k = u.frame().inverse();
    let normalized = spec.conjugated_by(&k);
    let depth = config.depth.unwrap_or(spec.max_word_length());
    let ball = enumerate_to_depth(&normalized, depth)?;

    let infinity_stabilizer: Vec<GroupElement> = ball
        .iter()
        .filter(|g| libm::fabs(g.matrix().c()) <= GEOM_TOL)
        .cloned()
        .collect();

    let mut report = match find_bounded_escaping_sequence(&ball, config.band, config.min_seq_len) {
        Ok(seq) => {
            let mut alphas = Vec::new();
            alphas.push(GroupElement::synthetic(Mobius::IDENTITY));
            alphas.extend(
                ball.iter()
                    .filter(|g| g.word_length() <= config.alpha_max_word_length)
                    .cloned(),
            );
            diagnose_sequence(seq, &alphas, config)
        }
        Err(Error::NoSequenceFound { found, required }) => DiagnosticsReport {
            normalization: k,
            band: config.band,
            eps: config.settle.eps,
            window_count: config.settle.window_count,
            search_found: found,
            search_required: required,
            sequence: None,
            coefficients: None,
            inverse_endpoints: None,
            busemann_limit: None,
            candidate_times: Vec::new(),
            infinity_stabilizer: Vec::new(),
            caveats: alloc::vec![format!(
                "no band-bounded escaping sequence up to word length {depth}; absence at finite depth is not proof"
            )],
            verdict: DichotomyVerdict::Inconclusive {
                reason: format!("no sequence found ({found} of {required} terms)"),
            },
        },
        Err(e) => return Err(e),
    };
    report.normalization = k;
    report.infinity_stabilizer = infinity_stabilizer;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dichotomy::Settle;
    use alloc::vec;

    #[test]
    fn parabolic_is_recurrent() {
        let spec = GroupSpec::with_generators(vec![Mobius::translation(1.0)], 10).unwrap();
        let r = run_dichotomy(&spec, &UnitTangent::REFERENCE, &DichotomyConfig::default()).unwrap();
        assert_eq!(r.verdict, DichotomyVerdict::RecurrenceEvidence);
        assert_eq!(r.busemann_limit.unwrap().real_limit(), Some(0.0));
        assert!(r.candidate_times.is_empty());
        assert_eq!(r.infinity_stabilizer.len(), 20);
    }

    #[test]
    fn hyperbolic_is_inconclusive() {
        let spec = GroupSpec::with_generators(vec![Mobius::dilation(4.0).unwrap()], 10).unwrap();
        let r = run_dichotomy(&spec, &UnitTangent::REFERENCE, &DichotomyConfig::default()).unwrap();
        assert_eq!(r.verdict.label(), "inconclusive");
        assert_eq!((r.search_found, r.search_required), (0, 8));
        assert!(r.sequence.is_none());
    }

    #[test]
    fn synthetic_non_minimal_sequence() {
        let elements: Vec<GroupElement> = (1..=20)
            .map(|n| {
                let e = libm::exp(-(n as f64));
                let (b, c, d) = (libm::exp(2.0 * n as f64), e, 2.0 + e);
                GroupElement::synthetic(Mobius::new((1.0 + b * c) / d, b, c, d).unwrap())
            })
            .collect();
        let seq =
            SequenceCandidate::from_elements(elements, HeightBand::new(0.1, 0.5).unwrap()).unwrap();
        let config = DichotomyConfig {
            settle: Settle::default(),
            ..Default::default()
        };
        let r = diagnose_sequence(seq, &[], &config);
        match r.verdict {
            DichotomyVerdict::NonMinimalityEvidence { t } => {
                assert!((t - libm::log(4.0)).abs() < 1e-6)
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }
}
