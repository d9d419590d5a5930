use proptest::prelude::*;
use relsim_core::groups::rotation_cayley;
use relsim_core::spacetime::causal_order;
use relsim_core::synchrony::rational_unit_vectors;
use relsim_core::{Event, InertialCoords, MetricParams, Scalar, Vec3};

fn coords() -> impl Strategy<Value = InertialCoords> {
    (1i64..=5, 1i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, -4i64..=4, -4i64..=4, -4i64..=4, 1i64..=4).prop_map(
        |(cn, cd, p1, p2, p3, k1, k2, k3, s)| {
            let c = Scalar::frac(cn, cd);
            // |k|²c² ≤ 3·(1/2)² < 1.
            let k = Vec3::new(Scalar::frac(k1, 8) / &c, Scalar::frac(k2, 8) / &c, Scalar::frac(k3, 8) / &c);
            let a = rotation_cayley(&Scalar::int(p1), &Scalar::int(p2), &Scalar::int(p3)).linear().spatial_block();
            InertialCoords::new(Scalar::int(s), k, a, MetricParams::new(c).unwrap()).unwrap()
        },
    )
}

fn event() -> impl Strategy<Value = Event> {
    proptest::array::uniform4(-5i64..=5).prop_map(Event::from_ints)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_way_speed_is_isotropic(phi in coords()) {
        for n in rational_unit_vectors(4) {
            prop_assert_eq!(phi.two_way_speed(&n).unwrap(), phi.c().clone());
        }
    }

    #[test]
    fn witness_exists_iff_synchrony_is_nonstandard(phi in coords()) {
        match phi.causality_witness() {
            None => prop_assert!(phi.k().is_zero()),
            Some(v) => {
                prop_assert!(!phi.k().is_zero());
                prop_assert_eq!(v.norm_sq(), phi.c().square());
                prop_assert!(phi.violates_light_bound(&v));
            }
        }
    }

    #[test]
    fn transitions_invert(phi in coords(), p in event()) {
        prop_assert_eq!(phi.from_prime(&phi.to_prime(&p)), p);
    }

    #[test]
    fn identity_coordinates_follow_causal_order(p in event(), q in event()) {
        let m = MetricParams::unit();
        let phi = InertialCoords::identity(m.clone());
        if p != q {
            prop_assert_eq!(phi.m_connectible(&p, &q), causal_order(&p, &q, &m));
        }
    }
}

#[test]
fn identity_light_cone_is_the_metric() {
    for c in [Scalar::one(), Scalar::int(3), Scalar::frac(1, 2)] {
        let m = MetricParams::new(c).unwrap();
        assert_eq!(InertialCoords::identity(m.clone()).lightcone_image(), m.gram());
    }
}
