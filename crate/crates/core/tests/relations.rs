use std::sync::Arc;

use proptest::prelude::*;
use relsim_core::groups::cube_rotations;
use relsim_core::partition::InducedPolicy;
use relsim_core::relations::ConeSign;
use relsim_core::suite::fixtures::newton_set;
use relsim_core::{Event, EventSet, MetricParams, RealSubgroupSpec, RelationSpec, Scalar, Vec4};

fn small() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=2).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn event() -> impl Strategy<Value = Event> {
    (small(), small(), small(), small()).prop_map(|(a, b, c, d)| Event::new(a, b, c, d))
}

fn event_set() -> impl Strategy<Value = Arc<EventSet>> {
    proptest::collection::vec(event(), 2..14).prop_map(|v| Arc::new(EventSet::from_events(v)))
}

fn tilted_u() -> Vec4 {
    Vec4::new(Scalar::frac(3, 4), Scalar::zero(), Scalar::zero(), Scalar::frac(5, 4))
}

fn specs() -> Vec<RelationSpec> {
    let m = MetricParams::unit();
    let dense = RealSubgroupSpec::generated([Scalar::one(), Scalar::sqrt2()]);
    vec![
        RelationSpec::Total,
        RelationSpec::Identity,
        RelationSpec::NewtonTypeI(RealSubgroupSpec::Cyclic(Scalar::one())),
        RelationSpec::NewtonTypeII(dense.clone()),
        RelationSpec::PencilTypeI { u: tilted_u(), h: RealSubgroupSpec::Cyclic(Scalar::frac(1, 2)), m: m.clone() },
        RelationSpec::PencilTypeII { u: tilted_u(), h: dense, m: m.clone() },
        RelationSpec::StandardSim { u: tilted_u(), m },
        RelationSpec::HalfCone { c_hat: Scalar::one(), sign: ConeSign::Future },
        RelationSpec::HalfCone { c_hat: Scalar::int(2), sign: ConeSign::Past },
    ]
}

fn related(spec: &RelationSpec, p: &Event, q: &Event) -> bool {
    spec.related(p, q).unwrap().holds().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn restrictions_are_equivalences(x in event_set()) {
        for spec in specs() {
            let n = x.len();
            let r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| related(&spec, x.event(i), x.event(j))).collect()).collect();
            for i in 0..n {
                prop_assert!(r[i][i], "{} not reflexive", spec);
                for j in 0..n {
                    prop_assert_eq!(r[i][j], r[j][i], "{} not symmetric", spec);
                    for k in 0..n {
                        prop_assert!(!(r[i][j] && r[j][k]) || r[i][k], "{} not transitive", spec);
                    }
                }
            }
            let part = spec.restrict(&x).unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(part.same_block(i, j), r[i][j]);
                }
            }
        }
    }

    #[test]
    fn standard_sim_is_the_zero_pencil(x in event_set()) {
        let m = MetricParams::unit();
        for u in [Vec4::basis(3), tilted_u()] {
            let std = RelationSpec::StandardSim { u: u.clone(), m: m.clone() }.restrict(&x).unwrap();
            let pencil = RelationSpec::PencilTypeII { u, h: RealSubgroupSpec::Zero, m: m.clone() }.restrict(&x).unwrap();
            prop_assert_eq!(std, pencil);
        }
    }

    #[test]
    fn half_cone_agrees_with_float_apex(p in event(), q in event(), c in 1i64..=3) {
        // Cross-check only: the apex on the line is t₀ = x⁴ - |x̄|/ĉ.
        let spec = RelationSpec::HalfCone { c_hat: Scalar::int(c), sign: ConeSign::Future };
        let apex = |e: &Event| {
            let v = e.coords().to_f64();
            v[3] - (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() / c as f64
        };
        let close = (apex(&p) - apex(&q)).abs() < 1e-9;
        prop_assert_eq!(related(&spec, &p, &q), close, "{} {}", p, q);
    }

    #[test]
    fn newton_families_fixed_by_rotations(gi in 0usize..24, family in 0usize..4) {
        let x = Arc::new(newton_set());
        let h = [RealSubgroupSpec::Zero, RealSubgroupSpec::Cyclic(Scalar::one())][family % 2].clone();
        let spec = if family < 2 { RelationSpec::NewtonTypeI(h) } else { RelationSpec::NewtonTypeII(h) };
        let part = spec.restrict(&x).unwrap();
        prop_assert!(part.invariance_defect(&cube_rotations()[gi], InducedPolicy::Strict).unwrap().is_none());
    }
}

#[test]
fn newton_families_on_an_integer_grid() {
    // Times differ by integers, so type II ignores position and type I keeps it.
    let x = Arc::new(EventSet::from_events((0..3).flat_map(|t| (0..2).map(move |s| Event::from_ints([s, 0, 0, t])))));
    let h = RealSubgroupSpec::Cyclic(Scalar::one());
    assert_eq!(RelationSpec::NewtonTypeII(h.clone()).restrict(&x).unwrap().block_count(), 1);
    assert_eq!(RelationSpec::NewtonTypeI(h).restrict(&x).unwrap().block_count(), 2);
    let half = RealSubgroupSpec::Cyclic(Scalar::int(2));
    // t ∈ {0,2} and t = 1 separate, for each of the two positions.
    assert_eq!(RelationSpec::NewtonTypeI(half).restrict(&x).unwrap().block_count(), 4);
}
