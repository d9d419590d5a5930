use std::sync::{Arc, OnceLock};
use std::time::Instant;

use proptest::prelude::*;
use relsim_core::groups::{cube_rotations, translation};
use relsim_core::partition::InducedPolicy;
use relsim_core::suite::fixtures::{cube_generators, newton_set};
use relsim_core::{Event, EventSet, FinitePartition, Vec4};

fn line_set(n: usize) -> Arc<EventSet> {
    Arc::new(EventSet::from_events((0..n as i64).map(|i| Event::from_ints([i, 0, 0, 0]))))
}

fn newton() -> Arc<EventSet> {
    static SET: OnceLock<Arc<EventSet>> = OnceLock::new();
    SET.get_or_init(|| Arc::new(newton_set())).clone()
}

fn partition(base: &Arc<EventSet>, keys: &[u8]) -> FinitePartition {
    FinitePartition::from_keys(base, &keys[..base.len()])
}

fn keys(n: usize) -> impl Strategy<Value = Vec<u8>> {
    (1u8..12).prop_flat_map(move |k| proptest::collection::vec(0..k, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lattice_laws(ka in keys(30), kb in keys(30), kc in keys(30)) {
        let base = line_set(30);
        let (a, b, c) = (partition(&base, &ka), partition(&base, &kb), partition(&base, &kc));
        let meet = a.meet(&b).unwrap();
        let join = a.join(&b).unwrap();
        prop_assert_eq!(&meet, &b.meet(&a).unwrap());
        prop_assert_eq!(&join, &b.join(&a).unwrap());
        prop_assert_eq!(meet.meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        prop_assert_eq!(join.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(&a.meet(&join).unwrap(), &a);
        prop_assert_eq!(&a.join(&meet).unwrap(), &a);
        prop_assert!(meet.finer_than(&a).unwrap() && meet.finer_than(&b).unwrap());
        prop_assert!(a.finer_than(&join).unwrap() && b.finer_than(&join).unwrap());
        let both_below = c.finer_than(&a).unwrap() && c.finer_than(&b).unwrap();
        prop_assert_eq!(c.finer_than(&meet).unwrap(), both_below);
        let both_above = a.finer_than(&c).unwrap() && b.finer_than(&c).unwrap();
        prop_assert_eq!(join.finer_than(&c).unwrap(), both_above);
    }

    #[test]
    fn finer_than_is_a_partial_order(ka in keys(20), kb in keys(20), kc in keys(20)) {
        let base = line_set(20);
        let (a, b, c) = (partition(&base, &ka), partition(&base, &kb), partition(&base, &kc));
        prop_assert!(a.finer_than(&a).unwrap());
        if a.finer_than(&b).unwrap() && b.finer_than(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.finer_than(&b).unwrap() && b.finer_than(&c).unwrap() {
            prop_assert!(a.finer_than(&c).unwrap());
        }
        prop_assert!(FinitePartition::bottom(&base).finer_than(&a).unwrap());
        prop_assert!(a.finer_than(&FinitePartition::top(&base)).unwrap());
    }

}

proptest! {
    // Exact rotations of the 95-event set are the slow part.
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn induced_action_commutes_with_meet_and_join(ka in keys(95), kb in keys(95), gi in 0usize..24) {
        let base = newton();
        let (a, b) = (partition(&base, &ka), partition(&base, &kb));
        let g = &cube_rotations()[gi];
        let ind = |p: &FinitePartition| p.induced(g, InducedPolicy::Strict).unwrap();
        prop_assert_eq!(ind(&a.join(&b).unwrap()), ind(&a).join(&ind(&b)).unwrap());
        prop_assert_eq!(ind(&a.meet(&b).unwrap()), ind(&a).meet(&ind(&b)).unwrap());
        // The induced action is itself an action.
        let h = &cube_rotations()[(gi + 5) % 24];
        let gh = g.compose(h);
        prop_assert_eq!(ind(&a.induced(h, InducedPolicy::Strict).unwrap()), a.induced(&gh, InducedPolicy::Strict).unwrap());
    }

    #[test]
    fn invariant_closure_is_invariant(i in 0usize..95, j in 0usize..95) {
        let base = newton();
        let start = FinitePartition::from_pairs(&base, [(i, j)]);
        let gens = cube_generators();
        let closure = start.invariant_closure(&gens, InducedPolicy::Strict, 50).unwrap();
        prop_assert!(closure.converged);
        prop_assert!(start.finer_than(&closure.partition).unwrap());
        for g in &gens {
            prop_assert!(closure.partition.invariance_defect(g, InducedPolicy::Strict).unwrap().is_none());
        }
    }
}

#[test]
fn closure_under_a_cycling_translation() {
    // Shifting the related pair along a line of four points relates every
    // neighbour; the image of the last point leaves the set and is ignored.
    let base = line_set(4);
    let start = FinitePartition::from_pairs(&base, [(0, 1)]);
    let closure = start.invariant_closure(&[translation(&Vec4::basis(0))], InducedPolicy::Partial, 10).unwrap();
    assert!(closure.converged);
    assert_eq!(closure.partition, FinitePartition::top(&base));
}

#[test]
fn join_of_large_partitions_is_fast() {
    let n = 100_000;
    let base = Arc::new(EventSet::from_events((0..n as i64).map(|i| Event::from_ints([i, 0, 0, 0]))));
    let a = FinitePartition::from_keys(&base, &(0..n).map(|i| i / 2).collect::<Vec<_>>());
    let b = FinitePartition::from_keys(&base, &(0..n).map(|i| (i + 1) / 2).collect::<Vec<_>>());
    let start = Instant::now();
    let join = a.join(&b).unwrap();
    let elapsed = start.elapsed();
    // Alternating pairs chain every event together.
    assert_eq!(join.block_count(), 1);
    assert!(elapsed.as_secs_f64() < 1.0, "join took {elapsed:?}");
}
