//! Seeded numerical checks of the geometric identities the library relies
//! on. Each check reports its sample count, maximal residual and tolerance.
//!
//! Residuals are relative: `|x − y| / max(1, |y|)` for scalars, and the
//! largest entry difference divided by `max(1, largest entry)` for matrices.

use std::f64::consts::{FRAC_PI_2, PI};

use horoflow_core::dichotomy::{displacement_at_log_b, displacement_formula};
use horoflow_core::flows::UnitTangent;
use horoflow_core::hyperbolic::{
    angle_between, busemann, cross_ratio, dist, harmonic_conjugate, BoundaryPoint, Geodesic,
    Mobius, PointH,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Tolerance for the flow identities, which are exact matrix laws.
pub const FLOW_TOL: f64 = 1e-12;
/// Tolerance for the right angle produced by harmonic conjugates.
pub const HARMONIC_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Samples for the scalar identities; matrix, harmonic and substitution
    /// checks use a tenth of this.
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 10_000,
            seed: 0,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Displacement of `i·e^t` evaluated at both candidate substitutions and
/// compared with the simplified `2·argsinh(√(b²c² + d² + a² − 1)/2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutionComparison {
    pub samples: usize,
    pub ln_abs_b_max_residual: f64,
    pub ln_b_squared_max_residual: f64,
    pub matching: &'static str,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub substitution: SubstitutionComparison,
    pub all_passed: bool,
}

fn rel(x: f64, y: f64) -> f64 {
    let r = (x - y).abs() / y.abs().max(1.0);
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

fn matrix_rel(m: &Mobius, n: &Mobius) -> f64 {
    let scale = n.coefficients().iter().fold(1.0f64, |s, x| s.max(x.abs()));
    m.max_abs_diff(n) / scale
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `a, d ∈ [−2, 2]`, `|c| ∈ [0.1, 2]`, `b = (ad − 1)/c`.
fn unit_det(rng: &mut ChaCha8Rng) -> Mobius {
    let a = rng.gen_range(-2.0..2.0);
    let d = rng.gen_range(-2.0..2.0);
    let c: f64 = rng.gen_range(0.1..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Mobius::new(a, (a * d - 1.0) / c, c, d).expect("unit determinant by construction")
}

/// Iwasawa form `T(x)·D(λ)·R(θ)`.
fn isometry(rng: &mut ChaCha8Rng) -> Mobius {
    let x = rng.gen_range(-5.0..5.0);
    let lambda = f64::exp(rng.gen_range(-2.0..2.0));
    let theta = rng.gen_range(0.0..PI);
    Mobius::translation(x)
        .compose(&Mobius::dilation(lambda).expect("positive"))
        .compose(&Mobius::rotation(theta))
}

fn point(rng: &mut ChaCha8Rng) -> PointH {
    PointH::new(rng.gen_range(-5.0..5.0), f64::exp(rng.gen_range(-3.0..3.0))).expect("positive")
}

fn boundary(rng: &mut ChaCha8Rng) -> BoundaryPoint {
    if rng.gen_bool(0.1) {
        BoundaryPoint::Infinity
    } else {
        BoundaryPoint::Finite(rng.gen_range(-10.0..10.0))
    }
}

/// Four boundary points, pairwise at chordal distance above `1e-2`.
fn separated4(rng: &mut ChaCha8Rng) -> [BoundaryPoint; 4] {
    loop {
        let p = [boundary(rng), boundary(rng), boundary(rng), boundary(rng)];
        if (0..4).all(|i| (i + 1..4).all(|j| p[i].chordal_distance(&p[j]) > 1e-2)) {
            return p;
        }
    }
}

fn check<S: Sync>(
    name: &'static str,
    samples: &[S],
    tol: f64,
    residual: impl Fn(&S) -> f64 + Sync + Send,
) -> CheckResult {
    let residuals: Vec<f64> = samples.par_iter().map(residual).collect();
    let max_residual = residuals.into_iter().fold(0.0, f64::max);
    CheckResult {
        name,
        samples: samples.len(),
        max_residual,
        tol,
        passed: max_residual < tol,
    }
}

fn coefficient_checks(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = rng_for(config.seed, 1);
    let samples: Vec<(Mobius, f64)> = (0..config.samples)
        .map(|_| (unit_det(&mut rng), rng.gen_range(-10.0..10.0)))
        .collect();
    let tol = config.tol;
    vec![
        check("orbit-point-height", &samples, tol, |(m, _)| {
            let [_, _, c, d] = m.coefficients();
            rel(m.apply(PointH::I).im(), 1.0 / (c * c + d * d))
        }),
        check("orbit-point-real-part", &samples, tol, |(m, _)| {
            let [a, _, c, d] = m.coefficients();
            rel(m.apply(PointH::I).re(), a / c - d / (c * (c * c + d * d)))
        }),
        check("image-of-infinity", &samples, tol, |(m, _)| {
            let [a, _, c, _] = m.coefficients();
            match m.apply_boundary(BoundaryPoint::Infinity) {
                BoundaryPoint::Finite(x) => rel(x, a / c),
                BoundaryPoint::Infinity => f64::INFINITY,
            }
        }),
        check("inverse-image-of-infinity", &samples, tol, |(m, _)| {
            let [_, _, c, d] = m.coefficients();
            match m.inverse().apply_boundary(BoundaryPoint::Infinity) {
                BoundaryPoint::Finite(x) => rel(x, -d / c),
                BoundaryPoint::Infinity => f64::INFINITY,
            }
        }),
        check("busemann-at-infinity", &samples, tol, |(m, _)| {
            let [_, _, c, d] = m.coefficients();
            rel(
                busemann(BoundaryPoint::Infinity, m.apply(PointH::I), PointH::I),
                (c * c + d * d).ln(),
            )
        }),
        check("displacement-identity", &samples, tol, |(m, t)| {
            let x = PointH::on_imaginary_axis(*t);
            rel(
                dist(x, m.apply(x)),
                displacement_formula(m.coefficients(), *t),
            )
        }),
    ]
}

fn cross_ratio_checks(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = rng_for(config.seed, 2);
    // every fourth sample follows the isometry by z ↦ −1/(z − y), where y is
    // the first finite image, so that one point lands exactly on ∞
    let samples: Vec<(Mobius, [BoundaryPoint; 4], bool)> = (0..config.samples)
        .map(|k| (isometry(&mut rng), separated4(&mut rng), k % 4 == 0))
        .collect();
    let mut checks = vec![check(
        "cross-ratio-invariance",
        &samples,
        config.tol,
        |(m, p, to_infinity)| {
            let mut q = p.map(|x| m.apply_boundary(x));
            if *to_infinity {
                if let Some(y) = q.iter().find_map(|x| x.as_finite()) {
                    let s = Mobius::new(0.0, -1.0, 1.0, -y).expect("unit determinant");
                    q = q.map(|x| s.apply_boundary(x));
                }
            }
            match (
                cross_ratio(p[0], p[1], p[2], p[3]),
                cross_ratio(q[0], q[1], q[2], q[3]),
            ) {
                (Ok(before), Ok(after)) => rel(after, before),
                _ => f64::INFINITY,
            }
        },
    )];

    use BoundaryPoint::{Finite, Infinity};
    let examples = [
        [Finite(-1.0), Finite(1.0), Finite(0.0), Infinity],
        [Finite(0.0), Finite(4.0), Finite(-2.0), Finite(1.0)],
    ];
    checks.push(check("right-angle-examples", &examples, config.tol, |p| {
        let g1 = Geodesic::new(p[0], p[1]).expect("distinct");
        let g2 = Geodesic::new(p[2], p[3]).expect("distinct");
        angle_between(&g1, &g2).map_or(f64::INFINITY, |a| (a - FRAC_PI_2).abs())
    }));

    let triples: Vec<(f64, f64, f64)> = (0..config.samples / 10)
        .map(|_| {
            let y = rng.gen_range(-10.0..10.0);
            let z = y + rng.gen_range(0.05..5.0);
            (y, z + rng.gen_range(0.05..5.0), z)
        })
        .collect();
    checks.push(check(
        "harmonic-orthogonality",
        &triples,
        HARMONIC_TOL,
        |&(y, x, z)| {
            let (y, x, z) = (Finite(y), Finite(x), Finite(z));
            let beta = match harmonic_conjugate(y, x, z) {
                Ok(b) => b,
                Err(_) => return f64::INFINITY,
            };
            let g1 = Geodesic::new(y, x).expect("distinct");
            match Geodesic::new(beta, z).map(|g2| angle_between(&g1, &g2)) {
                Ok(Ok(a)) => (a - FRAC_PI_2).abs(),
                _ => f64::INFINITY,
            }
        },
    ));
    checks
}

fn busemann_checks(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = rng_for(config.seed, 3);
    let samples: Vec<(Mobius, BoundaryPoint, [PointH; 3])> = (0..config.samples)
        .map(|_| {
            let m = isometry(&mut rng);
            let xi = boundary(&mut rng);
            (m, xi, [point(&mut rng), point(&mut rng), point(&mut rng)])
        })
        .collect();
    vec![
        check(
            "busemann-additivity",
            &samples,
            config.tol,
            |(_, xi, [x, y, z])| {
                rel(
                    busemann(*xi, *x, *y) + busemann(*xi, *y, *z),
                    busemann(*xi, *x, *z),
                )
            },
        ),
        check(
            "busemann-equivariance",
            &samples,
            config.tol,
            |(m, xi, [z, w, _])| {
                rel(
                    busemann(m.apply_boundary(*xi), m.apply(*z), m.apply(*w)),
                    busemann(*xi, *z, *w),
                )
            },
        ),
    ]
}

fn flow_checks(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = rng_for(config.seed, 4);
    let samples: Vec<(UnitTangent, f64, f64)> = (0..config.samples / 10)
        .map(|_| {
            let u = UnitTangent::from_frame(isometry(&mut rng));
            (u, rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))
        })
        .collect();
    vec![
        check(
            "geodesic-flow-group-law",
            &samples,
            FLOW_TOL,
            |(u, t, s)| {
                matrix_rel(
                    u.geodesic_flow(*t).geodesic_flow(*s).frame(),
                    u.geodesic_flow(t + s).frame(),
                )
            },
        ),
        check(
            "horocycle-flow-group-law",
            &samples,
            FLOW_TOL,
            |(u, t, s)| {
                matrix_rel(
                    u.horocycle_flow(*t).horocycle_flow(*s).frame(),
                    u.horocycle_flow(t + s).frame(),
                )
            },
        ),
        // flows act on the right, so g_t ∘ h_s ∘ g_{−t} is the product
        // g_{−t}·h_s·g_t of the generating matrices
        check("flow-renormalization", &samples, FLOW_TOL, |(_, t, s)| {
            matrix_rel(
                &Mobius::geodesic(-t)
                    .compose(&Mobius::translation(*s))
                    .compose(&Mobius::geodesic(*t)),
                &Mobius::translation(s * (-t).exp()),
            )
        }),
        check(
            "flow-endpoint-invariance",
            &samples,
            FLOW_TOL,
            |(u, t, s)| {
                let xi = u.forward_endpoint();
                let g = u.geodesic_flow(*t).forward_endpoint().chordal_distance(&xi);
                let h = u
                    .horocycle_flow(*s)
                    .forward_endpoint()
                    .chordal_distance(&xi);
                g.max(h)
            },
        ),
    ]
}

fn substitution_check(config: &VerifyConfig) -> SubstitutionComparison {
    let mut rng = rng_for(config.seed, 5);
    let samples: Vec<Mobius> = (0..config.samples / 10)
        .map(|_| loop {
            let m = unit_det(&mut rng);
            if m.b().abs() > 1e-3 {
                break m;
            }
        })
        .collect();
    let residual = |m: &Mobius, t: f64| {
        rel(
            displacement_formula(m.coefficients(), t),
            displacement_at_log_b(m.coefficients()),
        )
    };
    let max = |f: &(dyn Fn(&Mobius) -> f64 + Sync + Send)| {
        samples
            .par_iter()
            .map(f)
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(0.0, f64::max)
    };
    let ln_abs_b_max_residual = max(&|m| residual(m, m.b().abs().ln()));
    let ln_b_squared_max_residual = max(&|m| residual(m, (m.b() * m.b()).ln()));
    let (matching, best) = if ln_abs_b_max_residual <= ln_b_squared_max_residual {
        ("ln|b|", ln_abs_b_max_residual)
    } else {
        ("ln(b^2)", ln_b_squared_max_residual)
    };
    SubstitutionComparison {
        samples: samples.len(),
        ln_abs_b_max_residual,
        ln_b_squared_max_residual,
        matching,
        tol: config.tol,
        passed: best < config.tol,
    }
}

pub fn run_suite(config: &VerifyConfig) -> VerifyReport {
    let mut checks = coefficient_checks(config);
    checks.extend(cross_ratio_checks(config));
    checks.extend(busemann_checks(config));
    checks.extend(flow_checks(config));
    let substitution = substitution_check(config);
    let all_passed = checks.iter().all(|c| c.passed) && substitution.passed;
    VerifyReport {
        checks,
        substitution,
        all_passed,
    }
}
