//! Differential check of the CNF arithmetic against the independent
//! coefficient-vector well-order model: every pair below `w^3` with
//! coefficients up to 4, exhaustively.

mod common;

use common::wellorder::{universe_below_w3, VecOrd};

#[test]
fn order_matches_model_below_w3() {
    let all = universe_below_w3(4);
    for a in &all {
        for b in &all {
            assert_eq!(
                a.to_ordinal().cmp(&b.to_ordinal()),
                a.compare(b),
                "order mismatch at {} vs {}",
                a.to_ordinal(),
                b.to_ordinal()
            );
        }
    }
}

#[test]
fn addition_matches_concatenation_below_w3() {
    let all = universe_below_w3(4);
    for a in &all {
        for b in &all {
            let via_cnf = a.to_ordinal().add(&b.to_ordinal());
            let via_model = a.concat(b).to_ordinal();
            assert_eq!(
                via_cnf,
                via_model,
                "concatenation mismatch at {} + {}",
                a.to_ordinal(),
                b.to_ordinal()
            );
        }
    }
}

#[test]
fn multiplication_matches_lexicographic_product_below_w3() {
    let all = universe_below_w3(4);
    for a in &all {
        for b in &all {
            let via_cnf = a.to_ordinal().mul(&b.to_ordinal());
            let via_model = a.product(b).to_ordinal();
            assert_eq!(
                via_cnf,
                via_model,
                "product mismatch at {} * {}",
                a.to_ordinal(),
                b.to_ordinal()
            );
        }
    }
}

/// The derived expectations frozen in the operation examples, recomputed
/// from the model.
#[test]
fn frozen_examples_from_model() {
    let enc = |c2: u64, c1: u64, c0: u64| {
        let mut v = VecOrd::zero();
        v.0[2] = c2;
        v.0[1] = c1;
        v.0[0] = c0;
        v
    };
    // w^2 > w*9+8
    assert_eq!(
        enc(1, 0, 0).compare(&enc(0, 9, 8)),
        std::cmp::Ordering::Greater
    );
    // (w^2*2 + w*3) + (w*5 + 4) = w^2*2 + w*8 + 4
    assert_eq!(enc(2, 3, 0).concat(&enc(0, 5, 4)), enc(2, 8, 4));
    // (w+1) * w = w^2
    assert_eq!(enc(0, 1, 1).product(&enc(0, 1, 0)), enc(1, 0, 0));
    // (w*2) * (w*2) = w^2*2
    assert_eq!(enc(0, 2, 0).product(&enc(0, 2, 0)), enc(2, 0, 0));
}
