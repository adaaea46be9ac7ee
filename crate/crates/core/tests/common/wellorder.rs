//! Independent well-order model for differential checks of the CNF
//! arithmetic.
//!
//! An ordinal below `w^8` is its dense coefficient vector; order,
//! concatenation and product are computed directly from well-order
//! reasoning rather than through the CNF code paths:
//!
//! - order: compare at the highest power first (lexicographic on the
//!   padded vectors);
//! - concatenation `X ⌢ Y`: every element of `X` precedes `Y`; the part
//!   of `X` below `w^j` (the leading power of `Y`) is an initial segment
//!   swallowed by the first `w^j`-chunk of `Y`, so `X`'s coefficients
//!   above `j` survive, the coefficients at `j` add, and `Y`'s lower part
//!   stands;
//! - product `X · Y`: `Y`-many copies of `X` in lexicographic pair order;
//!   `w^j`-many copies (`j >= 1`) have order type `w^(deg X + j)`, and
//!   `n` stacked copies merge into `n` times the leading coefficient with
//!   one surviving tail.

use num_bigint::BigUint;
use ord_core::Ordinal;

pub const WIDTH: usize = 8;

/// Coefficient-vector model: `coeffs[i]` multiplies `w^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VecOrd(pub [u64; WIDTH]);

impl VecOrd {
    pub fn zero() -> Self {
        VecOrd([0; WIDTH])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> Option<usize> {
        (0..WIDTH).rev().find(|&i| self.0[i] > 0)
    }

    pub fn compare(&self, other: &VecOrd) -> std::cmp::Ordering {
        for i in (0..WIDTH).rev() {
            match self.0[i].cmp(&other.0[i]) {
                std::cmp::Ordering::Equal => continue,
                unequal => return unequal,
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn concat(&self, other: &VecOrd) -> VecOrd {
        let Some(j) = other.degree() else {
            return *self;
        };
        let mut out = VecOrd::zero();
        for i in j + 1..WIDTH {
            out.0[i] = self.0[i];
        }
        out.0[j] = self.0[j] + other.0[j];
        for i in 0..j {
            out.0[i] = other.0[i];
        }
        out
    }

    pub fn product(&self, other: &VecOrd) -> VecOrd {
        if self.is_zero() || other.is_zero() {
            return VecOrd::zero();
        }
        let da = self.degree().expect("nonzero");
        let mut acc = VecOrd::zero();
        for j in (0..WIDTH).rev() {
            if other.0[j] == 0 {
                continue;
            }
            let term = if j == 0 {
                let mut t = *self;
                t.0[da] *= other.0[0];
                t
            } else {
                assert!(da + j < WIDTH, "product leaves the model");
                let mut t = VecOrd::zero();
                t.0[da + j] = other.0[j];
                t
            };
            acc = acc.concat(&term);
        }
        acc
    }

    pub fn to_ordinal(self) -> Ordinal {
        let terms: Vec<(Ordinal, BigUint)> = (0..WIDTH)
            .rev()
            .filter(|&i| self.0[i] > 0)
            .map(|i| (Ordinal::from_nat(i as u64), BigUint::from(self.0[i])))
            .collect();
        Ordinal::from_terms(terms).expect("descending exponents")
    }
}

/// Every model ordinal below `w^3` with coefficients at most `max`.
pub fn universe_below_w3(max: u64) -> Vec<VecOrd> {
    let mut out = Vec::new();
    for c2 in 0..=max {
        for c1 in 0..=max {
            for c0 in 0..=max {
                let mut v = VecOrd::zero();
                v.0[2] = c2;
                v.0[1] = c1;
                v.0[0] = c0;
                out.push(v);
            }
        }
    }
    out
}
