use gridpath::encoding::{decode_bits, encode_bits, vector_to_path, Bitstring};
use gridpath::geometry::euclidean;
use gridpath::{
    evaluate, GridEnvironment, ObjectiveConfig, Path, PenaltyMode, Point, SmoothnessMode,
};
use proptest::prelude::*;

fn world() -> GridEnvironment {
    GridEnvironment::new(
        10,
        10,
        [44, 45, 46, 62, 72],
        Point::new(0.5, 0.5),
        Point::new(9.5, 9.5),
    )
    .unwrap()
}

/// Paths with 2 to 6 waypoints from the world's start to its target.
fn path() -> impl Strategy<Value = Path> {
    proptest::collection::vec((0.0..10.0f64, 0.0..10.0f64), 0..5).prop_map(|mids| {
        let env = world();
        let mut pts = vec![env.start()];
        pts.extend(mids.into_iter().map(|(x, y)| Point::new(x, y)));
        pts.push(env.target());
        Path::new(pts).unwrap()
    })
}

fn config() -> impl Strategy<Value = ObjectiveConfig> {
    (
        0.0..3.0f64,
        0.0..3.0f64,
        0.0..10.0f64,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(
            |(alpha, beta, gamma, turning, per_violation)| ObjectiveConfig {
                alpha,
                beta,
                gamma,
                smoothness_mode: if turning {
                    SmoothnessMode::Turning
                } else {
                    SmoothnessMode::Heading
                },
                penalty_mode: if per_violation {
                    PenaltyMode::PerViolation
                } else {
                    PenaltyMode::Once
                },
                ..ObjectiveConfig::default()
            },
        )
}

proptest! {
    #[test]
    fn evaluation_is_deterministic(p in path(), cfg in config()) {
        let env = world();
        let a = evaluate(&p, &env, &cfg);
        let b = evaluate(&p, &env, &cfg);
        prop_assert_eq!(a.total.to_bits(), b.total.to_bits());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn total_is_the_weighted_sum(p in path(), cfg in config()) {
        let v = evaluate(&p, &world(), &cfg);
        let sum = cfg.alpha * v.distance_term + cfg.beta * v.smoothness_term + cfg.gamma * v.safety_term + v.penalty_term;
        prop_assert_eq!(v.total, sum);
        prop_assert_eq!(v.feasible, v.violation_count == 0);
    }

    #[test]
    fn distance_only_is_bounded_by_the_straight_line(p in path(), alpha in 0.0..5.0f64) {
        let env = world();
        let cfg = ObjectiveConfig { alpha, ..ObjectiveConfig::distance_only() };
        let v = evaluate(&p, &env, &cfg);
        prop_assert!(v.total >= alpha * euclidean(env.start(), env.target()) - 1e-9);
    }

    #[test]
    fn raising_alpha_never_lowers_total(p in path(), cfg in config(), extra in 0.0..5.0f64) {
        let env = world();
        let base = evaluate(&p, &env, &cfg).total;
        let more = evaluate(&p, &env, &ObjectiveConfig { alpha: cfg.alpha + extra, ..cfg.clone() }).total;
        prop_assert!(more >= base);
    }

    #[test]
    fn penalty_modes_agree_up_to_one_violation(p in path(), cfg in config()) {
        let env = world();
        let once = evaluate(&p, &env, &ObjectiveConfig { penalty_mode: PenaltyMode::Once, ..cfg.clone() });
        let each = evaluate(&p, &env, &ObjectiveConfig { penalty_mode: PenaltyMode::PerViolation, ..cfg.clone() });
        if once.violation_count <= 1 {
            prop_assert_eq!(once.total, each.total);
        } else {
            prop_assert!(each.total > once.total);
        }
    }

    #[test]
    fn penalty_only_touches_infeasible_paths(p in path(), cfg in config(), penalty in 1.0..1e6f64) {
        let env = world();
        let a = evaluate(&p, &env, &cfg);
        let b = evaluate(&p, &env, &ObjectiveConfig { penalty, ..cfg.clone() });
        if a.feasible {
            prop_assert_eq!(a, b);
        } else {
            prop_assert!(a.penalty_term > 0.0);
        }
    }

    #[test]
    fn codec_round_trip_within_half_step(
        bits in 1usize..=20,
        v in proptest::collection::vec(-3.0..7.0f64, 1..8),
    ) {
        let (lo, hi) = (-3.0, 7.0);
        let step = (hi - lo) / ((1u64 << bits) - 1) as f64;
        let back = decode_bits(&encode_bits(&v, bits, lo, hi).unwrap(), bits, lo, hi).unwrap();
        for (x, y) in v.iter().zip(back.iter()) {
            prop_assert!((x - y).abs() <= step / 2.0 + 1e-12, "{x} -> {y}, step {step}");
        }
    }

    #[test]
    fn decode_is_monotone_in_the_code(bits in 1usize..=16, a in any::<u16>(), b in any::<u16>()) {
        let mask = (1u32 << bits) - 1;
        let (a, b) = ((a as u32 & mask), (b as u32 & mask));
        let to_bits = |code: u32| Bitstring((0..bits).rev().map(|k| (code >> k) & 1 == 1).collect());
        let da = decode_bits(&to_bits(a), bits, 0.0, 10.0).unwrap()[0];
        let db = decode_bits(&to_bits(b), bits, 0.0, 10.0).unwrap()[0];
        prop_assert_eq!(a.cmp(&b), da.partial_cmp(&db).unwrap());
    }

    #[test]
    fn vector_to_path_keeps_endpoints(
        n in 2usize..7,
        raw in proptest::collection::vec(-50.0..50.0f64, 10),
    ) {
        let env = world();
        let v = &raw[..2 * (n - 2)];
        let p = vector_to_path(v, &env, n).unwrap();
        prop_assert_eq!(p.len(), n);
        prop_assert_eq!(p.first(), env.start());
        prop_assert_eq!(p.last(), env.target());
        for q in p.waypoints() {
            prop_assert!((0.0..=10.0).contains(&q.x) && (0.0..=10.0).contains(&q.y));
        }
    }
}
