use horoflow_core::dichotomy::{
    check_coefficient_asymptotics, diagnose_sequence, displacement_at_log_b, displacement_formula,
    find_bounded_escaping_sequence, run_dichotomy, test_recurrence, test_tu_membership,
    DichotomyConfig, DichotomyVerdict, HeightBand, SequenceCandidate, Settle,
};
use horoflow_core::flows::UnitTangent;
use horoflow_core::group::{circle_pairing, enumerate_ball, Circle, GroupElement, GroupSpec};
use horoflow_core::hyperbolic::{busemann, dist, BoundaryPoint, Mobius, PointH};
use proptest::prelude::*;

fn mixed_spec(depth: usize) -> GroupSpec {
    let pairing = circle_pairing(Circle::new(-1.0, 0.5), Circle::new(1.0, 0.5)).unwrap();
    GroupSpec::with_generators(vec![Mobius::translation(6.0), pairing], depth).unwrap()
}

fn isometry() -> impl Strategy<Value = Mobius> {
    (-3.0..3.0f64, -1.0..1.0f64, 0.0..std::f64::consts::PI).prop_map(|(x, log_l, theta)| {
        Mobius::translation(x)
            .compose(&Mobius::dilation(log_l.exp()).unwrap())
            .compose(&Mobius::rotation(theta))
    })
}

fn unit_det() -> impl Strategy<Value = Mobius> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("c away from 0", |(_, c, _)| c.abs() > 0.1)
        .prop_map(|(a, c, d)| Mobius::new(a, (a * d - 1.0) / c, c, d).unwrap())
}

#[test]
fn mixed_preset_has_an_escaping_sequence() {
    let spec = mixed_spec(8);
    let ball = enumerate_ball(&spec).unwrap();
    let seq = find_bounded_escaping_sequence(&ball, HeightBand::new(0.5, 2.0).unwrap(), 8).unwrap();
    assert!(seq.moduli().windows(2).all(|w| w[1] > w[0]));
    assert!(seq
        .elements()
        .windows(2)
        .all(|w| w[1].word_length() > w[0].word_length()));
    // brute-force oracle: every chosen element really is a ball element with
    // its height in the band
    for g in seq.elements() {
        let z = g.matrix().apply(PointH::I);
        assert!((0.5..=2.0).contains(&z.im()));
        assert!(ball.iter().any(|h| h.word() == g.word()));
    }
}

#[test]
fn synthetic_sequence_detects_ln_four() {
    let elements: Vec<GroupElement> = (1..=20)
        .map(|n| {
            let e = (-(n as f64)).exp();
            let (b, c, d) = ((2.0 * n as f64).exp(), e, 2.0 + e);
            GroupElement::synthetic(Mobius::new((1.0 + b * c) / d, b, c, d).unwrap())
        })
        .collect();
    let seq =
        SequenceCandidate::from_elements(elements, HeightBand::new(0.1, 0.5).unwrap()).unwrap();
    let report = diagnose_sequence(seq, &[], &DichotomyConfig::default());
    let DichotomyVerdict::NonMinimalityEvidence { t } = report.verdict else {
        panic!("verdict {:?}", report.verdict)
    };
    assert!((t - 4f64.ln()).abs() < 1e-6);
    assert_eq!(report.busemann_limit.unwrap().real_limit(), Some(t));
}

#[test]
fn bounded_a_is_not_flagged() {
    let elements = (1..=10)
        .map(|n| GroupElement::synthetic(Mobius::translation(n as f64)))
        .collect();
    let seq = SequenceCandidate::from_elements(elements, HeightBand::default()).unwrap();
    let r = check_coefficient_asymptotics(&seq, &Settle::default());
    assert!(!r.a_diverging);
    // b²c² + d² + a² − 1 = 1 for every translation
    assert!(!r.displacement.diverging);
    assert!(r
        .displacement
        .distances
        .iter()
        .flatten()
        .all(|x| (x - 2.0 * 0.5f64.asinh()).abs() < 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn log_b_substitution_matches_the_general_identity(m in unit_det(), t in -10.0..10.0f64) {
        let x = PointH::on_imaginary_axis(t);
        let measured = dist(x, m.apply(x));
        prop_assert!((measured - displacement_formula(m.coefficients(), t)).abs() < 1e-9 * measured.max(1.0));
        let b = m.b();
        prop_assume!(b.abs() > 1e-3);
        let at_log_b = displacement_formula(m.coefficients(), b.abs().ln());
        prop_assert!((at_log_b - displacement_at_log_b(m.coefficients())).abs() < 1e-9 * at_log_b.max(1.0));
    }

    #[test]
    fn busemann_matches_coefficients_along_sequences(depth in 8usize..10) {
        let ball = enumerate_ball(&mixed_spec(depth)).unwrap();
        let seq = find_bounded_escaping_sequence(&ball, HeightBand::default(), 8).unwrap();
        for g in seq.elements() {
            let [_, _, c, d] = g.matrix().coefficients();
            let b = busemann(BoundaryPoint::Infinity, g.matrix().apply(PointH::I), PointH::I);
            let expected = (c * c + d * d).ln();
            prop_assert!((b - expected).abs() <= 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn recurrence_is_membership_with_identity(shift in 0.5..3.0f64, n in 2usize..12, f in isometry()) {
        let u = UnitTangent::from_frame(f);
        let elements: Vec<GroupElement> = (1..=n)
            .map(|k| GroupElement::synthetic(Mobius::translation(shift * k as f64).conjugate_by(&f)))
            .collect();
        let id = GroupElement::synthetic(Mobius::IDENTITY);
        let settle = Settle::default();
        let r = test_recurrence(&u, &elements, &settle);
        let m = test_tu_membership(&u, &id, &elements, &settle);
        prop_assert_eq!(&r.criterion, &m);
        prop_assert_eq!(r.recurrent, m.converged && m.real_limit().is_some_and(|t| t.abs() < settle.eps));
    }

    #[test]
    fn dichotomy_verdict_is_conjugation_invariant(k in isometry()) {
        let config = DichotomyConfig::default();
        for spec in [
            GroupSpec::with_generators(vec![Mobius::translation(1.0)], 10).unwrap(),
            GroupSpec::with_generators(vec![Mobius::dilation(4.0).unwrap()], 10).unwrap(),
            mixed_spec(8),
        ] {
            let base = run_dichotomy(&spec, &UnitTangent::REFERENCE, &config).unwrap();
            let moved = run_dichotomy(
                &spec.conjugated_by(&k),
                &UnitTangent::REFERENCE.pushed_by(&k),
                &config,
            ).unwrap();
            prop_assert_eq!(base.verdict.label(), moved.verdict.label());
            if let (Some(a), Some(b)) = (&base.busemann_limit, &moved.busemann_limit) {
                for (x, y) in a.residuals.iter().zip(&b.residuals) {
                    prop_assert!((x - y).abs() < 10.0 * config.settle.eps);
                }
            }
        }
    }

    #[test]
    fn non_minimality_carries_the_settled_limit(d_limit in 0.3..3.0f64) {
        let elements: Vec<GroupElement> = (1..=30)
            .map(|n| {
                // c_n = 2^−n keeps ad − bc free of cancellation
                let c = 0.5f64.powi(n);
                let (b, d) = (n as f64, d_limit + c);
                GroupElement::synthetic(Mobius::new((1.0 + b * c) / d, b, c, d).unwrap())
            })
            .collect();
        let seq = SequenceCandidate::from_elements(elements, HeightBand::new(0.05, 20.0).unwrap()).unwrap();
        let report = diagnose_sequence(seq, &[], &DichotomyConfig::default());
        let settled = report.busemann_limit.as_ref().unwrap();
        match report.verdict {
            DichotomyVerdict::NonMinimalityEvidence { t } => {
                prop_assert!(settled.converged);
                prop_assert_eq!(settled.real_limit(), Some(t));
                prop_assert!(t.abs() >= report.eps);
                prop_assert!((t - (d_limit * d_limit).ln()).abs() < 1e-6);
            }
            DichotomyVerdict::RecurrenceEvidence => prop_assert!((d_limit * d_limit).ln().abs() < 1e-5),
            DichotomyVerdict::Inconclusive { reason } => prop_assert!(false, "{}", reason),
        }
    }
}
