//! Behavioral laws of the re-indexing combinators: multiset preservation
//! for bijections, support monotonicity for injections, the composition
//! law, cross-block classification stability, and remainder invariance
//! under bijective rearrangement of `w`-series.

mod common;

use common::{arb_flat_omega, nat, w};
use ord_core::rearrange::canonical_family;
use ord_core::{MapKind, MapSpec, Ordinal, Series, Support};
use proptest::prelude::*;

fn sorted_terms(s: &Series, n: usize) -> Vec<Ordinal> {
    let mut v = s.take_terms(n).unwrap();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, .. ProptestConfig::default() })]

    /// Bijective front edits preserve the term multiset on every initial
    /// segment beyond their support, and value supports exactly.
    #[test]
    fn bijections_preserve_multisets(flat in arb_flat_omega(), depth in 1usize..4) {
        let s = flat.to_series();
        for m in canonical_family(&s, depth).unwrap() {
            let r = m.apply(&s).unwrap();
            prop_assert_eq!(sorted_terms(&r, 10 * depth), sorted_terms(&s, 10 * depth));
            for v in flat.distinct_values() {
                prop_assert_eq!(r.value_support(&v), s.value_support(&v));
            }
        }
    }

    /// Injective specs never increase any value's support.
    #[test]
    fn injections_shrink_supports(
        flat in arb_flat_omega(),
        pre in proptest::collection::vec(any::<bool>(), 0..3),
        per in proptest::collection::vec(any::<bool>(), 1..4),
    ) {
        prop_assume!(per.contains(&true));
        let s = flat.to_series();
        let m = MapSpec::mask(pre, per).unwrap();
        prop_assert_eq!(m.kind(), MapKind::Injection);
        let r = m.apply(&s).unwrap();
        for v in flat.distinct_values() {
            let before = s.value_support(&v);
            let after = r.value_support(&v);
            let ok = match (&after, &before) {
                (Support::Absent, _) => true,
                (Support::Finite(_), Support::Infinite) => true,
                (Support::Finite(a), Support::Finite(b)) => a <= b,
                (Support::Infinite, Support::Infinite) => true,
                _ => false,
            };
            prop_assert!(ok, "support of {} grew: {:?} -> {:?}", v, before, after);
        }
    }

    /// apply(Compose(f, g)) applies g first: pointwise agreement with the
    /// two-step application on sampled positions.
    #[test]
    fn composition_applies_inner_first(
        flat in arb_flat_omega(),
        srcs in proptest::collection::btree_set(0u64..5, 0..3),
        perm in proptest::sample::select(vec![vec![1usize, 0], vec![2, 0, 1], vec![0, 2, 1]]),
    ) {
        let s = flat.to_series();
        let inner = MapSpec::move_front(srcs.into_iter().map(nat).collect()).unwrap();
        let outer = MapSpec::permute(perm).unwrap();
        let composed = MapSpec::compose(outer.clone(), inner.clone());
        let two_step = outer.apply(&inner.apply(&s).unwrap()).unwrap();
        let one_step = composed.apply(&s).unwrap();
        for k in 0..100u64 {
            prop_assert_eq!(
                one_step.term_at(&nat(k)).unwrap(),
                two_step.term_at(&nat(k)).unwrap()
            );
        }
    }

    /// The remainder of an `w`-series is invariant under every bijective
    /// rearrangement in the canonical family.
    #[test]
    fn remainder_invariant_under_bijections(flat in arb_flat_omega(), depth in 1usize..4) {
        let s = flat.to_series();
        let psi = s.psi();
        for m in canonical_family(&s, depth).unwrap() {
            prop_assert_eq!(m.apply(&s).unwrap().psi(), psi.clone());
        }
    }

    /// Cross-block classification ignores composition with finite edits.
    #[test]
    fn cross_classification_stable_under_front_edits(
        perm in proptest::sample::select(vec![vec![1usize, 0], vec![2, 0, 1]]),
        block in proptest::sample::select(vec![0usize, 1, 2]),
    ) {
        let klein = match block {
            0 => MapSpec::identity(),
            1 => MapSpec::SwapBlocks,
            _ => MapSpec::EvenOdd,
        };
        let composed = MapSpec::compose(MapSpec::permute(perm).unwrap(), klein.clone());
        prop_assert_eq!(composed.ab_classify().unwrap(), klein.ab_classify().unwrap());
    }
}

#[test]
fn evenodd_crosses_in_both_directions() {
    use ord_core::rearrange::Finiteness;
    let c = MapSpec::EvenOdd.ab_classify().unwrap();
    assert_eq!(c.from_first, Finiteness::Infinite);
    assert_eq!(c.from_second, Finiteness::Infinite);
}

#[test]
fn family_realizes_exceptional_orderings() {
    // At depth >= |E| every ordering of the exceptional terms appears as
    // a leading arrangement of some family member.
    let s = Series::cat(
        vec![Series::Fin(vec![
            common::wp(2),
            common::wp(3),
        ])],
        vec![Series::Fin(vec![nat(1)])],
    )
    .unwrap();
    let family = canonical_family(&s, 2).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for m in family {
        let r = m.apply(&s).unwrap();
        seen.insert((
            r.term_at(&nat(0)).unwrap(),
            r.term_at(&nat(1)).unwrap(),
        ));
    }
    assert!(seen.contains(&(common::wp(2), common::wp(3))));
    assert!(seen.contains(&(common::wp(3), common::wp(2))));
}

#[test]
fn duplication_saturates_supports() {
    let s = Series::cat(
        vec![Series::Fin(vec![common::wp(2), w()])],
        vec![Series::Fin(vec![nat(1)])],
    )
    .unwrap();
    let d = ord_core::rearrange::dup(&s);
    assert_eq!(d.order_type(), w());
    for v in [common::wp(2), w(), nat(1)] {
        assert_eq!(d.value_support(&v), Support::Infinite);
    }
}
