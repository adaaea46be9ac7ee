//! Exact arithmetic on ordinals below epsilon-zero, represented in Cantor
//! normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing ordinal exponents `e_i` and positive integer coefficients
//! `c_i`; the empty sum is `0`. Values are immutable and canonical at
//! construction, so structural equality is value equality and the derived
//! lexicographic order on term lists is exactly the ordinal order.
//!
//! Addition and multiplication are total: both are closed under the
//! exponent-depth bound, because every exponent of a result is either an
//! exponent of an operand or a sum of two of them. Exponentiation can grow
//! nesting depth (`pow(w, w) = w^w`) and therefore reports
//! [`OrdinalError::DepthExceeded`] instead of silently truncating.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Maximum nesting depth of CNF exponents. A natural number has depth 1,
/// `w` has depth 2, `w^w` depth 3, and so on; the bound admits towers up
/// to `w^w^w^w^w^w^w`, far beyond anything the series analyses produce.
pub const MAX_EXPONENT_DEPTH: usize = 8;

/// Errors from ordinal construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    /// A constructed value would nest exponents deeper than the bound.
    #[error("exponent nesting depth {depth} exceeds the bound {max}")]
    DepthExceeded { depth: usize, max: usize },
    /// `left_subtract(a, b)` was called with `a > b`.
    #[error("cannot left-subtract a larger ordinal from a smaller one")]
    NotLeftSubtractable,
    /// `degree` of zero.
    #[error("the ordinal 0 has no degree")]
    ZeroHasNoDegree,
    /// A term list violates CNF (non-decreasing exponents or a zero
    /// coefficient).
    #[error("invalid Cantor normal form: {0}")]
    InvalidForm(String),
    /// A finite-base, finite-exponent power too large to materialize.
    #[error("finite exponent too large to evaluate exactly")]
    ExponentTooLarge,
}

/// An ordinal below epsilon-zero in Cantor normal form.
///
/// The term list is ordered by strictly decreasing exponent; coefficients
/// are arbitrary-precision positive naturals. `Ord` is derived and agrees
/// with the ordinal order because CNF comparison is lexicographic on
/// `(exponent, coefficient)` pairs, with a missing term comparing low.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<(Ordinal, BigUint)>,
}

impl Ordinal {
    /// The ordinal 0 (empty term list).
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    /// The ordinal 1.
    pub fn one() -> Self {
        Ordinal::from_nat(1u32)
    }

    /// The first infinite ordinal `w`.
    pub fn omega() -> Self {
        Ordinal {
            terms: vec![(Ordinal::one(), BigUint::one())],
        }
    }

    /// A finite ordinal.
    pub fn from_nat<N: Into<BigUint>>(n: N) -> Self {
        let n = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    /// `w^e * c`, checked against the depth bound.
    pub fn omega_pow_mul(exponent: Ordinal, coeff: BigUint) -> Result<Self, OrdinalError> {
        if coeff.is_zero() {
            return Ok(Ordinal::zero());
        }
        let o = Ordinal {
            terms: vec![(exponent, coeff)],
        };
        o.check_depth()?;
        Ok(o)
    }

    /// Builds an ordinal from explicit CNF terms, validating the invariants:
    /// strictly decreasing exponents, positive coefficients, depth bound.
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Result<Self, OrdinalError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::InvalidForm(
                    "exponents must be strictly decreasing".into(),
                ));
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdinalError::InvalidForm(
                "coefficients must be positive".into(),
            ));
        }
        let o = Ordinal { terms };
        o.check_depth()?;
        Ok(o)
    }

    /// Internal constructor for term lists already known to be canonical.
    fn from_terms_unchecked(terms: Vec<(Ordinal, BigUint)>) -> Self {
        let o = Ordinal { terms };
        debug_assert!(o.validate().is_ok(), "non-canonical term list: {o:?}");
        o
    }

    /// The CNF terms, leading term first.
    pub fn terms(&self) -> &[(Ordinal, BigUint)] {
        &self.terms
    }

    /// Checks every CNF invariant, including the depth bound.
    pub fn validate(&self) -> Result<(), OrdinalError> {
        for w in self.terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::InvalidForm(
                    "exponents must be strictly decreasing".into(),
                ));
            }
        }
        if self.terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdinalError::InvalidForm(
                "coefficients must be positive".into(),
            ));
        }
        for (e, _) in &self.terms {
            e.validate()?;
        }
        self.check_depth()
    }

    fn check_depth(&self) -> Result<(), OrdinalError> {
        let d = self.depth();
        if d > MAX_EXPONENT_DEPTH {
            Err(OrdinalError::DepthExceeded {
                depth: d,
                max: MAX_EXPONENT_DEPTH,
            })
        } else {
            Ok(())
        }
    }

    /// Nesting depth: 0 for zero, otherwise one more than the deepest
    /// exponent.
    pub fn depth(&self) -> usize {
        1 + self
            .terms
            .iter()
            .map(|(e, _)| e.depth())
            .max()
            .unwrap_or(0)
            - usize::from(self.terms.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for natural numbers (including 0).
    pub fn is_finite(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    /// The value as a natural number, when finite.
    pub fn as_nat(&self) -> Option<&BigUint> {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        if self.terms.is_empty() {
            Some(ZERO.get_or_init(BigUint::zero))
        } else if self.is_finite() {
            Some(&self.terms[0].1)
        } else {
            None
        }
    }

    /// Leading exponent. Zero has none.
    pub fn degree(&self) -> Result<&Ordinal, OrdinalError> {
        self.terms
            .first()
            .map(|(e, _)| e)
            .ok_or(OrdinalError::ZeroHasNoDegree)
    }

    /// Three-way ordinal comparison; equivalent to the derived `Ord`.
    pub fn compare(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }

    /// Ordinal addition. Trailing terms of `self` with exponent below the
    /// leading exponent of `other` are absorbed; equal leading exponents
    /// merge coefficients.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead_exp, lead_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, BigUint)> = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(lead_exp) {
                Ordering::Greater => terms.push((e.clone(), c.clone())),
                Ordering::Equal => {
                    terms.push((e.clone(), c + lead_coeff));
                    terms.extend(other.terms[1..].iter().cloned());
                    return Ordinal::from_terms_unchecked(terms);
                }
                Ordering::Less => break,
            }
        }
        terms.extend(other.terms.iter().cloned());
        Ordinal::from_terms_unchecked(terms)
    }

    /// Ordinal multiplication, left-distributed over the CNF terms of
    /// `other`: infinite terms of `other` absorb everything of `self` but
    /// its degree, while a finite part multiplies the leading coefficient
    /// and keeps the tail once.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let (self_deg, self_lead_coeff) = &self.terms[0];
        let mut acc = Ordinal::zero();
        for (e, c) in &other.terms {
            if e.is_zero() {
                // self * n = w^d*(c1*n) + tail of self
                let mut terms = self.terms.clone();
                terms[0].1 = self_lead_coeff * c;
                acc = acc.add(&Ordinal::from_terms_unchecked(terms));
            } else {
                // self * (w^e * c) = w^(d + e) * c
                let t = Ordinal::from_terms_unchecked(vec![(self_deg.add(e), c.clone())]);
                acc = acc.add(&t);
            }
        }
        acc
    }

    /// Ordinal exponentiation. `pow(0, 0) = 1`.
    ///
    /// This is the one arithmetic operation that can deepen exponent
    /// nesting, so it reports [`OrdinalError::DepthExceeded`] when the
    /// result would leave the configured universe.
    pub fn pow(&self, exponent: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if exponent.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() {
            return Ok(Ordinal::zero());
        }
        if self == &Ordinal::one() {
            return Ok(Ordinal::one());
        }
        // Split the exponent into its infinite part and finite part.
        let fin_part: Option<&BigUint> = exponent
            .terms
            .last()
            .filter(|(e, _)| e.is_zero())
            .map(|(_, c)| c);
        let inf_terms: &[(Ordinal, BigUint)] = match fin_part {
            Some(_) => &exponent.terms[..exponent.terms.len() - 1],
            None => &exponent.terms,
        };

        let mut acc = Ordinal::one();
        if !inf_terms.is_empty() {
            // a^(w^b1*d1 + ... + w^bm*dm) with every b_i >= 1.
            let limit_exp = if self.is_finite() {
                // For finite a >= 2: a^(w^b) = w^(w^(b - 1)), where the
                // left-subtraction collapses to b itself for infinite b.
                let mut parts = Ordinal::zero();
                for (b, d) in inf_terms {
                    let inner = Ordinal::one()
                        .left_subtract(b)
                        .expect("exponent term is >= 1");
                    let w_inner = Ordinal::omega_pow_mul(inner, BigUint::one())?;
                    parts = parts.add(&w_inner.mul(&Ordinal::from_nat(d.clone())));
                }
                parts
            } else {
                // For infinite a: a^(w^b * d) = w^(degree(a) * w^b * d).
                let deg = self.terms[0].0.clone();
                let mut parts = Ordinal::zero();
                for (b, d) in inf_terms {
                    let w_b = Ordinal::omega_pow_mul(b.clone(), BigUint::one())?;
                    parts = parts.add(&deg.mul(&w_b).mul(&Ordinal::from_nat(d.clone())));
                }
                parts
            };
            acc = Ordinal::omega_pow_mul(limit_exp, BigUint::one())?;
        }
        if let Some(n) = fin_part {
            acc = acc.mul(&self.pow_finite(n)?);
        }
        acc.check_depth()?;
        Ok(acc)
    }

    /// `self^n` for a finite exponent, by squaring.
    fn pow_finite(&self, n: &BigUint) -> Result<Ordinal, OrdinalError> {
        if self.is_finite() {
            let base = self.as_nat().expect("finite").clone();
            let n32 = u32::try_from(n).map_err(|_| OrdinalError::ExponentTooLarge)?;
            return Ok(Ordinal::from_nat(base.pow(n32)));
        }
        let mut result = Ordinal::one();
        let mut base = self.clone();
        let mut n = n.clone();
        let two = BigUint::from(2u32);
        while !n.is_zero() {
            if &n % &two == BigUint::one() {
                result = result.mul(&base);
            }
            n /= &two;
            if !n.is_zero() {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// The unique `g` with `self + g = other`, defined when `self <= other`.
    pub fn left_subtract(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if self > other {
            return Err(OrdinalError::NotLeftSubtractable);
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let Some((oe, oc)) = other.terms.get(i) else {
                // self is a strict extension of other yet self <= other:
                // only possible when they are equal up to here and self
                // has extra terms, which contradicts self <= other.
                unreachable!("left_subtract precondition violated");
            };
            if e == oe && c == oc {
                continue;
            }
            if e == oe {
                // c < oc here.
                let mut terms = vec![(oe.clone(), oc - c)];
                terms.extend(other.terms[i + 1..].iter().cloned());
                return Ok(Ordinal::from_terms_unchecked(terms));
            }
            // First difference in exponents: e < oe, so the remainder of
            // `other` from this term on is the difference.
            return Ok(Ordinal::from_terms_unchecked(
                other.terms[i..].to_vec(),
            ));
        }
        Ok(Ordinal::from_terms_unchecked(
            other.terms[self.terms.len()..].to_vec(),
        ))
    }

    /// Successor `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// `self * n` for a machine-sized natural.
    pub fn times(&self, n: u64) -> Ordinal {
        self.mul(&Ordinal::from_nat(n))
    }
}

impl fmt::Display for Ordinal {
    /// Prints the minimal grammar form: `w^2*3+w*5+7`, `w^(w)+1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if e == &Ordinal::one() {
                write!(f, "w")?;
            } else if e.is_finite() {
                write!(f, "w^{}", e.as_nat().expect("finite"))?;
            } else {
                write!(f, "w^({e})")?;
            }
            if !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Ordinal {
    type Err = crate::text::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_ordinal(s)
    }
}

impl std::ops::Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl std::ops::Mul for &Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::mul(self, rhs)
    }
}
