use horoflow_core::boundary::{classify_boundary_point, orbit_heights, Verdict};
use horoflow_core::flows::{injectivity_profile, UnitTangent};
use horoflow_core::group::{enumerate_to_depth, Family, GroupSpec, IsometryClass};
use horoflow_core::hyperbolic::{busemann, BoundaryPoint, Mobius};
use proptest::prelude::*;

fn spec(family: Family, depth: usize) -> GroupSpec {
    GroupSpec::with_generators(family.generators().unwrap(), depth).unwrap()
}

fn frame() -> impl Strategy<Value = Mobius> {
    (-5.0..5.0f64, -2.0..2.0f64, 0.0..std::f64::consts::PI).prop_map(|(x, log_l, theta)| {
        Mobius::translation(x)
            .compose(&Mobius::dilation(log_l.exp()).unwrap())
            .compose(&Mobius::rotation(theta))
    })
}

#[test]
fn parabolic_point_has_exact_witness() {
    let e = classify_boundary_point(
        &spec(Family::CyclicParabolic { translation: 1.0 }, 10),
        BoundaryPoint::Infinity,
        10,
    )
    .unwrap();
    assert_eq!(e.verdict, Verdict::Parabolic);
    let w = e.parabolic_witness.unwrap();
    assert_eq!(w.classify(), IsometryClass::Parabolic);
    assert_eq!(
        w.matrix().apply_boundary(BoundaryPoint::Infinity),
        BoundaryPoint::Infinity
    );
    assert_eq!(w.matrix().coefficients(), [1.0, 1.0, 0.0, 1.0]);
}

#[test]
fn hyperbolic_heights_are_powers_of_four() {
    let s = spec(Family::CyclicHyperbolic { lambda: 4.0 }, 5);
    let heights = orbit_heights(&s, BoundaryPoint::Infinity, 5).unwrap();
    let expected: Vec<f64> = (-5..=5).rev().map(|n| 4f64.powi(n)).collect();
    assert_eq!(heights.len(), expected.len());
    for (h, e) in heights.iter().zip(&expected) {
        assert!((h - e).abs() <= 1e-12 * e, "{h} vs {e}");
    }
}

#[test]
fn geometrically_finite_presets_never_look_irregular() {
    let points: Vec<BoundaryPoint> = [-3.7, -2.5, -1.2, -0.4, 0.0, 0.3, 1.0, 2.2, 3.3, 5.0]
        .into_iter()
        .map(BoundaryPoint::Finite)
        .chain([BoundaryPoint::Infinity])
        .collect();
    for family in [
        Family::CyclicParabolic { translation: 1.0 },
        Family::CyclicHyperbolic { lambda: 4.0 },
        Family::default_schottky(),
    ] {
        let s = spec(family.clone(), 8);
        for xi in &points {
            let e = classify_boundary_point(&s, *xi, 8).unwrap();
            assert_ne!(
                e.verdict,
                Verdict::IrregularEvidence,
                "{family:?} at {xi:?}"
            );
        }
    }
}

#[test]
fn horocyclic_evidence_survives_deeper_balls() {
    let s = spec(Family::CyclicHyperbolic { lambda: 4.0 }, 10);
    let mut last_sup = 0.0;
    for depth in 4..=10 {
        let e = classify_boundary_point(&s, BoundaryPoint::Infinity, depth).unwrap();
        assert_eq!(e.verdict, Verdict::HorocyclicEvidence, "depth {depth}");
        assert!(e.sup_height >= last_sup);
        last_sup = e.sup_height;
    }
}

#[test]
fn inj_profile_shrinks_with_depth() {
    let s = spec(Family::default_schottky(), 5);
    let u = UnitTangent::from_frame(Mobius::translation(0.2));
    let mut previous: Option<Vec<f64>> = None;
    for depth in 1..=5 {
        let p = injectivity_profile(
            &s.clone().with_max_word_length(depth).unwrap(),
            &u,
            3.0,
            0.25,
        )
        .unwrap();
        if let Some(prev) = previous {
            for (a, b) in p.inj_estimates.iter().zip(&prev) {
                assert!(a <= b, "depth {depth}: {a} > {b}");
            }
        }
        previous = Some(p.inj_estimates);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_are_group_invariant(gi in 0usize..40, x in -4.0..4.0f64) {
        let s = spec(Family::default_schottky(), 8);
        let short = enumerate_to_depth(&s, 2).unwrap();
        let g = &short[gi % short.len()];
        let xi = BoundaryPoint::Finite(x);
        let a = classify_boundary_point(&s, xi, 8).unwrap().verdict;
        let b = classify_boundary_point(&s, g.matrix().apply_boundary(xi), 8).unwrap().verdict;
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn flow_group_laws(f in frame(), t in -5.0..5.0f64, s in -5.0..5.0f64) {
        let u = UnitTangent::from_frame(f);
        let tol = 1e-12 * f.coefficients().iter().fold(1.0f64, |m, x| m.max(x.abs())) * (t.abs() + s.abs()).exp();
        let lhs = *u.geodesic_flow(t).geodesic_flow(s).frame();
        prop_assert!(lhs.max_abs_diff(u.geodesic_flow(t + s).frame()) <= tol);
        let lhs = *u.horocycle_flow(t).horocycle_flow(s).frame();
        prop_assert!(lhs.max_abs_diff(u.horocycle_flow(t + s).frame()) <= tol);
    }

    #[test]
    fn renormalization(f in frame(), t in -5.0..5.0f64, s in -5.0..5.0f64) {
        // g_t ∘ h_s ∘ g_{−t} = h_{s·e^{−t}} as flows
        let u = UnitTangent::from_frame(f);
        let lhs = u.geodesic_flow(-t).horocycle_flow(s).geodesic_flow(t);
        let rhs = u.horocycle_flow(s * (-t).exp());
        let scale = f.coefficients().iter().fold(1.0f64, |m, x| m.max(x.abs()));
        prop_assert!(lhs.frame().max_abs_diff(rhs.frame()) <= 1e-12 * scale * (t.abs() + s.abs()).exp());
    }

    #[test]
    fn flows_preserve_forward_endpoint(f in frame(), t in -5.0..5.0f64, s in -5.0..5.0f64) {
        let u = UnitTangent::from_frame(f);
        let xi = u.forward_endpoint();
        for moved in [u.geodesic_flow(t), u.horocycle_flow(s)] {
            prop_assert!(moved.forward_endpoint().chordal_distance(&xi) < 1e-12);
        }
    }

    #[test]
    fn horocycle_orbits_lie_on_horocycles(f in frame(), s in -5.0..5.0f64) {
        let u = UnitTangent::from_frame(f);
        let b = busemann(u.forward_endpoint(), u.horocycle_flow(s).base_point(), u.base_point());
        prop_assert!(b.abs() < 1e-9, "{b}");
    }
}
