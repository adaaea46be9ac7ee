//! Random algebraic-law suite for the arithmetic core.
//!
//! Associativity, distributivity, monotonicity, the absorption law, and
//! the left-subtraction round trip, each over 1000 random triples below
//! `w^5`, plus canonical-form validation of every operation output.

mod common;

use common::{nat, ordinal_below_w5, w};
use ord_core::Ordinal;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, .. ProptestConfig::default() })]

    #[test]
    fn add_is_associative(a in ordinal_below_w5(), b in ordinal_below_w5(), c in ordinal_below_w5()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_is_associative(a in ordinal_below_w5(), b in ordinal_below_w5(), c in ordinal_below_w5()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_left_distributes_over_add(a in ordinal_below_w5(), b in ordinal_below_w5(), c in ordinal_below_w5()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn pow_splits_over_exponent_sum(a in ordinal_below_w5(), b in ordinal_below_w5(), c in ordinal_below_w5()) {
        let lhs = a.pow(&b.add(&c)).expect("small exponents stay in bounds");
        let rhs = a.pow(&b).expect("in bounds").mul(&a.pow(&c).expect("in bounds"));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn add_strictly_monotone_on_right(a in ordinal_below_w5(), b in ordinal_below_w5(), c in ordinal_below_w5()) {
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
        }
    }

    #[test]
    fn add_weakly_monotone_on_left(a in ordinal_below_w5(), b in ordinal_below_w5(), c in ordinal_below_w5()) {
        if a <= b {
            prop_assert!(a.add(&c) <= b.add(&c));
        }
    }

    #[test]
    fn absorption_law(a in ordinal_below_w5(), b in ordinal_below_w5()) {
        if !b.is_zero() {
            let absorbed = a.add(&b) == b;
            let expected = a.is_zero() || a.degree().unwrap() < b.degree().unwrap();
            prop_assert_eq!(absorbed, expected);
        }
    }

    #[test]
    fn left_subtract_round_trip(a in ordinal_below_w5(), b in ordinal_below_w5()) {
        if a <= b {
            let g = a.left_subtract(&b).unwrap();
            prop_assert_eq!(a.add(&g), b);
        } else {
            prop_assert!(a.left_subtract(&b).is_err());
        }
    }

    #[test]
    fn operation_outputs_are_canonical(a in ordinal_below_w5(), b in ordinal_below_w5()) {
        prop_assert!(a.add(&b).validate().is_ok());
        prop_assert!(a.mul(&b).validate().is_ok());
        if let Ok(p) = a.pow(&b) {
            prop_assert!(p.validate().is_ok());
        }
        if a <= b {
            prop_assert!(a.left_subtract(&b).unwrap().validate().is_ok());
        }
    }
}

#[test]
fn noncommutativity_sentinels_hold_exactly() {
    assert_eq!(nat(1).add(&w()), w());
    assert_ne!(w().add(&nat(1)), w());
    assert_eq!(nat(2).mul(&w()), w());
    assert_eq!(w().mul(&nat(2)), w().times(2));
    assert_ne!(w().mul(&nat(2)), nat(2).mul(&w()));
}

#[test]
fn depth_bound_reported_not_truncated() {
    let mut tower = Ordinal::omega();
    loop {
        match Ordinal::omega().pow(&tower) {
            Ok(next) => tower = next,
            Err(e) => {
                assert!(e.to_string().contains("depth"));
                return;
            }
        }
    }
}
