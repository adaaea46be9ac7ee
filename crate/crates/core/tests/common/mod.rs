//! Shared generators for the integration suites.
#![allow(dead_code)]

pub mod wellorder;

use num_bigint::BigUint;
use ord_core::{Count, FlatOmega, MapSpec, Ordinal, Series};
use proptest::prelude::*;

pub fn nat(n: u64) -> Ordinal {
    Ordinal::from_nat(n)
}

pub fn w() -> Ordinal {
    Ordinal::omega()
}

pub fn wp(e: u64) -> Ordinal {
    Ordinal::omega_pow_mul(nat(e), BigUint::from(1u32)).unwrap()
}

/// Ordinals below `w^5`: exponents in `0..=4`, coefficients in `1..=4`.
pub fn ordinal_below_w5() -> impl Strategy<Value = Ordinal> {
    proptest::collection::vec(proptest::option::of(1u64..=4), 5).prop_map(|slots| {
        let terms: Vec<(Ordinal, BigUint)> = slots
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (nat(4 - i as u64), BigUint::from(c))))
            .collect();
        Ordinal::from_terms(terms).expect("descending exponents")
    })
}

/// Arbitrary ordinals with nested exponents, built by summation so the
/// result is always well-formed.
pub fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..20).prop_map(Ordinal::from_nat);
    leaf.prop_recursive(3, 12, 3, |inner| {
        proptest::collection::vec((inner, 1u64..4), 0..3).prop_map(|parts| {
            parts.iter().fold(Ordinal::zero(), |acc, (e, c)| {
                let term = Ordinal::omega()
                    .pow(e)
                    .expect("bounded recursion depth")
                    .times(*c);
                acc.add(&term)
            })
        })
    })
}

/// Small ordinals suitable as series terms.
pub fn small_term() -> impl Strategy<Value = Ordinal> {
    prop_oneof![
        Just(Ordinal::zero()),
        (1u64..4).prop_map(Ordinal::from_nat),
        Just(w()),
        Just(w().times(2)),
        Just(wp(2)),
        Just(wp(2).add(&w().times(3))),
    ]
}

/// Flattened `w`-series with a short prefix and period.
pub fn arb_flat_omega() -> impl Strategy<Value = FlatOmega> {
    (
        proptest::collection::vec(small_term(), 0..4),
        proptest::collection::vec(small_term(), 1..4),
    )
        .prop_map(|(prefix, period)| FlatOmega { prefix, period })
}

/// `w`-series as general descriptions.
pub fn arb_omega_series() -> impl Strategy<Value = Series> {
    arb_flat_omega().prop_map(|f| f.to_series())
}

/// Arbitrary representable series, nesting included.
pub fn arb_series() -> impl Strategy<Value = Series> {
    let fin = proptest::collection::vec(small_term(), 0..4).prop_map(Series::Fin);
    fin.prop_recursive(2, 10, 3, |inner| {
        (
            proptest::collection::vec(inner.clone(), 0..3),
            proptest::collection::vec(inner, 1..3),
        )
            .prop_filter_map("valid cat description", |(prefix, period)| {
                Series::cat(prefix, period).ok()
            })
    })
}

fn arb_map_atom() -> impl Strategy<Value = MapSpec> {
    let permute = proptest::sample::select(vec![
        vec![0usize],
        vec![1, 0],
        vec![2, 0, 1],
        vec![1, 2, 0],
        vec![2, 1, 0],
    ])
    .prop_map(|p| MapSpec::permute(p).unwrap());
    let movefront = proptest::collection::vec(0u64..6, 0..3)
        .prop_filter_map("distinct sources", |xs| {
            let mut seen = std::collections::BTreeSet::new();
            let src: Vec<Ordinal> = xs.iter().map(|&x| nat(x)).collect();
            if src.iter().all(|x| seen.insert(x.clone())) {
                MapSpec::move_front(src).ok()
            } else {
                None
            }
        });
    let mask = (
        proptest::collection::vec(any::<bool>(), 0..3),
        proptest::collection::vec(any::<bool>(), 1..4),
    )
        .prop_filter_map("period has a one", |(pre, per)| {
            MapSpec::mask(pre, per).ok()
        });
    let count = prop_oneof![
        (0u64..3).prop_map(Count::Finite),
        Just(Count::Omega),
    ];
    let repeat = (
        proptest::collection::vec(count.clone(), 0..3),
        proptest::collection::vec(count, 1..3),
    )
        .prop_filter_map("nonempty period", |(pre, per)| {
            MapSpec::repeat(pre, per).ok()
        });
    prop_oneof![
        permute,
        movefront,
        Just(MapSpec::EvenOdd),
        Just(MapSpec::SwapBlocks),
        mask,
        repeat,
    ]
}

/// Map specs as the parser produces them: composition chains folded
/// left-applied-first.
pub fn arb_mapspec() -> impl Strategy<Value = MapSpec> {
    proptest::collection::vec(arb_map_atom(), 1..4).prop_map(|atoms| {
        let mut it = atoms.into_iter();
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, next| MapSpec::compose(next, acc))
    })
}
