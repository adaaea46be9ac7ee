//! Finitely-described transfinite sequences of ordinals.
//!
//! A [`Series`] is either a finite list of ordinals or a concatenation of a
//! finite prefix of series followed by a nonempty block of series repeated
//! `w` times. This hereditarily eventually-periodic class is closed under
//! every construction the rearrangement analyses need (interleaving, block
//! concatenation, duplication, masking), and all of its tail-sum sets are
//! finite and computable.
//!
//! Positions are ordinals below the order type. A tail sum starting at
//! position `g` is the sum of all terms at positions `>= g`; the remainder
//! [`Series::psi`] is the least tail sum, and it is always attained because
//! tail sums weakly decrease as the start position grows.

use crate::ordinal::{Ordinal, OrdinalError};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// A finite, deduplicated, sorted set of ordinals.
pub type OrdinalSet = BTreeSet<Ordinal>;

/// Errors from series construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// A `cat` description with an empty period block.
    #[error("the period of a cat series must be nonempty")]
    EmptyPeriod,
    /// A period member denotes the empty sequence, which would make
    /// positions inside the repetition ill-defined.
    #[error("every period member must have order type > 0")]
    EmptyPeriodMember,
    /// A position at or beyond the order type.
    #[error("position {position} is out of range for a series of order type {order_type}")]
    IndexOutOfRange { position: String, order_type: String },
    /// The operation requires a specific order type shape.
    #[error("unsupported order type: expected {expected}, found {found}")]
    UnsupportedOrderType { expected: String, found: String },
    /// The operation requires a nonempty series.
    #[error("the series is empty")]
    EmptySeries,
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// A finitely-described sequence of ordinals indexed by an ordinal.
///
/// `Fin(items)` is the finite sequence of `items`. `Cat { prefix, period }`
/// denotes `prefix[0] ⌢ … ⌢ prefix[p] ⌢ period[0] ⌢ … ⌢ period[k] ⌢
/// period[0] ⌢ …`, the period repeated `w` times.
///
/// Equality is structural: two descriptions of the same abstract sequence
/// may compare unequal. Build `Cat` values through [`Series::cat`], which
/// checks the description invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Series {
    Fin(Vec<Ordinal>),
    Cat {
        prefix: Vec<Series>,
        period: Vec<Series>,
    },
}

/// One exceptional occurrence in an `w`-series: a term dominated by only
/// finitely many terms of the series, together with its position in the
/// flattened prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalTerm {
    pub position: usize,
    pub value: Ordinal,
}

/// Multiplicity class of a value among the terms of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Absent,
    Finite(usize),
    Infinite,
}

/// All tail sums of a series: the value set, the minimum (the remainder),
/// and a position where the minimum tail starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailReport {
    pub values: OrdinalSet,
    pub minimum: Ordinal,
    pub witness: Ordinal,
}

/// An `w`-series in flattened normal form: a finite list of prefix terms
/// followed by a nonempty block of period terms repeated forever.
///
/// Every representable series of order type exactly `w` flattens to this
/// shape, and every structural `w`-to-`w` transformation is implemented by
/// computing terms pointwise and reading off sound prefix/period bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatOmega {
    pub prefix: Vec<Ordinal>,
    pub period: Vec<Ordinal>,
}

impl FlatOmega {
    pub fn new(prefix: Vec<Ordinal>, period: Vec<Ordinal>) -> Result<Self, SeriesError> {
        if period.is_empty() {
            return Err(SeriesError::EmptyPeriod);
        }
        Ok(FlatOmega { prefix, period })
    }

    /// Term at finite position `k`.
    pub fn term(&self, k: usize) -> &Ordinal {
        if k < self.prefix.len() {
            &self.prefix[k]
        } else {
            &self.period[(k - self.prefix.len()) % self.period.len()]
        }
    }

    /// Builds a flat series from a pointwise term function. `prefix_len`
    /// and `period_len` must be sound: `f(k + period_len) = f(k)` for all
    /// `k >= prefix_len`, and `period_len >= 1`.
    pub fn from_fn(prefix_len: usize, period_len: usize, f: impl Fn(usize) -> Ordinal) -> Self {
        assert!(period_len >= 1, "period length must be positive");
        FlatOmega {
            prefix: (0..prefix_len).map(&f).collect(),
            period: (prefix_len..prefix_len + period_len).map(&f).collect(),
        }
    }

    pub fn to_series(&self) -> Series {
        let prefix = if self.prefix.is_empty() {
            vec![]
        } else {
            vec![Series::Fin(self.prefix.clone())]
        };
        Series::Cat {
            prefix,
            period: vec![Series::Fin(self.period.clone())],
        }
    }

    /// Distinct values, in first-occurrence order (prefix first).
    pub fn distinct_values(&self) -> Vec<Ordinal> {
        let mut seen = Vec::new();
        for v in self.prefix.iter().chain(self.period.iter()) {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        seen
    }

    /// Distinct values occurring infinitely often (the period values).
    pub fn core_values(&self) -> Vec<Ordinal> {
        let mut seen = Vec::new();
        for v in &self.period {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        seen
    }
}

impl Series {
    /// Builds a concatenation node, validating that the period is nonempty
    /// and that every period member denotes a nonempty sequence.
    pub fn cat(prefix: Vec<Series>, period: Vec<Series>) -> Result<Series, SeriesError> {
        if period.is_empty() {
            return Err(SeriesError::EmptyPeriod);
        }
        if period.iter().any(|p| p.order_type().is_zero()) {
            return Err(SeriesError::EmptyPeriodMember);
        }
        Ok(Series::Cat { prefix, period })
    }

    /// Checks the description invariants recursively.
    pub fn validate(&self) -> Result<(), SeriesError> {
        match self {
            Series::Fin(_) => Ok(()),
            Series::Cat { prefix, period } => {
                if period.is_empty() {
                    return Err(SeriesError::EmptyPeriod);
                }
                if period.iter().any(|p| p.order_type().is_zero()) {
                    return Err(SeriesError::EmptyPeriodMember);
                }
                for m in prefix.iter().chain(period.iter()) {
                    m.validate()?;
                }
                Ok(())
            }
        }
    }

    /// The index ordinal of the described sequence.
    pub fn order_type(&self) -> Ordinal {
        match self {
            Series::Fin(items) => Ordinal::from_nat(items.len() as u64),
            Series::Cat { prefix, period } => {
                let mut t = Ordinal::zero();
                for p in prefix {
                    t = t.add(&p.order_type());
                }
                let mut block = Ordinal::zero();
                for p in period {
                    block = block.add(&p.order_type());
                }
                t.add(&block.mul(&Ordinal::omega()))
            }
        }
    }

    fn index_error(&self, position: &Ordinal) -> SeriesError {
        SeriesError::IndexOutOfRange {
            position: position.to_string(),
            order_type: self.order_type().to_string(),
        }
    }

    /// The term at position `i < order_type(self)`.
    pub fn term_at(&self, i: &Ordinal) -> Result<Ordinal, SeriesError> {
        match self {
            Series::Fin(items) => {
                let idx = finite_index(i, items.len()).ok_or_else(|| self.index_error(i))?;
                Ok(items[idx].clone())
            }
            Series::Cat { prefix, period } => {
                let mut pos = i.clone();
                for p in prefix {
                    let t = p.order_type();
                    if pos < t {
                        return p.term_at(&pos);
                    }
                    pos = t.left_subtract(&pos).expect("pos >= t");
                }
                let block_type = period
                    .iter()
                    .fold(Ordinal::zero(), |a, p| a.add(&p.order_type()));
                let (_, mut r) =
                    div_mod_finite(&pos, &block_type).ok_or_else(|| self.index_error(i))?;
                for p in period {
                    let t = p.order_type();
                    if r < t {
                        return p.term_at(&r);
                    }
                    r = t.left_subtract(&r).expect("r >= t");
                }
                unreachable!("offset within period block")
            }
        }
    }

    /// The ordinal sum of the sequence in its given order.
    pub fn total_sum(&self) -> Ordinal {
        match self {
            Series::Fin(items) => items.iter().fold(Ordinal::zero(), |a, x| a.add(x)),
            Series::Cat { prefix, period } => {
                let mut s = Ordinal::zero();
                for p in prefix {
                    s = s.add(&p.total_sum());
                }
                let block: Ordinal = period
                    .iter()
                    .fold(Ordinal::zero(), |a, p| a.add(&p.total_sum()));
                s.add(&block.mul(&Ordinal::omega()))
            }
        }
    }

    /// The sum of all terms at positions `>= g`.
    pub fn tail_sum(&self, g: &Ordinal) -> Result<Ordinal, SeriesError> {
        match self {
            Series::Fin(items) => {
                let idx = finite_index(g, items.len()).ok_or_else(|| self.index_error(g))?;
                Ok(items[idx..].iter().fold(Ordinal::zero(), |a, x| a.add(x)))
            }
            Series::Cat { prefix, period } => {
                let block_sum: Ordinal = period
                    .iter()
                    .fold(Ordinal::zero(), |a, p| a.add(&p.total_sum()));
                let rep_sum = block_sum.mul(&Ordinal::omega());
                let mut pos = g.clone();
                for (i, p) in prefix.iter().enumerate() {
                    let t = p.order_type();
                    if pos < t {
                        let mut rest = p.tail_sum(&pos)?;
                        for q in &prefix[i + 1..] {
                            rest = rest.add(&q.total_sum());
                        }
                        return Ok(rest.add(&rep_sum));
                    }
                    pos = t.left_subtract(&pos).expect("pos >= t");
                }
                let block_type = period
                    .iter()
                    .fold(Ordinal::zero(), |a, p| a.add(&p.order_type()));
                let (_, mut r) =
                    div_mod_finite(&pos, &block_type).ok_or_else(|| self.index_error(g))?;
                for (k, p) in period.iter().enumerate() {
                    let t = p.order_type();
                    if r < t {
                        let mut rest = p.tail_sum(&r)?;
                        for q in &period[k + 1..] {
                            rest = rest.add(&q.total_sum());
                        }
                        return Ok(rest.add(&rep_sum));
                    }
                    r = t.left_subtract(&r).expect("r >= t");
                }
                unreachable!("offset within period block")
            }
        }
    }

    /// Every tail sum, the minimum, and a witness position attaining it.
    ///
    /// The value set is finite: positions inside the periodic repetition
    /// contribute one value per within-block phase.
    pub fn tail_report(&self) -> Result<TailReport, SeriesError> {
        if self.order_type().is_zero() {
            return Err(SeriesError::EmptySeries);
        }
        let mut out = Vec::new();
        collect_tails(self, &Ordinal::zero(), &Ordinal::zero(), &mut out);
        let minimum = out
            .iter()
            .map(|(v, _)| v.clone())
            .min()
            .expect("nonempty series has tails");
        let witness = out
            .iter()
            .filter(|(v, _)| *v == minimum)
            .map(|(_, p)| p.clone())
            .min()
            .expect("minimum came from the list");
        let values: OrdinalSet = out.into_iter().map(|(v, _)| v).collect();
        Ok(TailReport {
            values,
            minimum,
            witness,
        })
    }

    /// The remainder: the least tail sum. Finite series (where every tail
    /// is eventually empty) have remainder 0 by convention.
    pub fn psi(&self) -> Ordinal {
        match self {
            Series::Fin(_) => Ordinal::zero(),
            Series::Cat { .. } => {
                self.tail_report()
                    .expect("infinite series is nonempty")
                    .minimum
            }
        }
    }

    /// Multiplicity class of `v` among the terms.
    pub fn value_support(&self, v: &Ordinal) -> Support {
        match self {
            Series::Fin(items) => {
                let k = items.iter().filter(|x| *x == v).count();
                if k == 0 {
                    Support::Absent
                } else {
                    Support::Finite(k)
                }
            }
            Series::Cat { prefix, period } => {
                if period.iter().any(|p| p.value_support(v) != Support::Absent) {
                    return Support::Infinite;
                }
                let mut total = 0usize;
                for p in prefix {
                    match p.value_support(v) {
                        Support::Infinite => return Support::Infinite,
                        Support::Finite(k) => total += k,
                        Support::Absent => {}
                    }
                }
                if total == 0 {
                    Support::Absent
                } else {
                    Support::Finite(total)
                }
            }
        }
    }

    /// Flattens a series of order type exactly `w` to prefix/period term
    /// lists. Fails with `UnsupportedOrderType` for any other shape.
    pub fn flatten_omega(&self) -> Result<FlatOmega, SeriesError> {
        match self {
            Series::Fin(_) => Err(SeriesError::UnsupportedOrderType {
                expected: "w".into(),
                found: self.order_type().to_string(),
            }),
            Series::Cat { prefix, period } => {
                let mut pre = Vec::new();
                for p in prefix {
                    match p {
                        Series::Fin(items) => pre.extend(items.iter().cloned()),
                        Series::Cat { .. } => {
                            return Err(SeriesError::UnsupportedOrderType {
                                expected: "w".into(),
                                found: self.order_type().to_string(),
                            })
                        }
                    }
                }
                let mut per = Vec::new();
                for p in period {
                    match p {
                        Series::Fin(items) => per.extend(items.iter().cloned()),
                        Series::Cat { .. } => {
                            return Err(SeriesError::UnsupportedOrderType {
                                expected: "w".into(),
                                found: self.order_type().to_string(),
                            })
                        }
                    }
                }
                if per.is_empty() {
                    return Err(SeriesError::EmptyPeriod);
                }
                Ok(FlatOmega {
                    prefix: pre,
                    period: per,
                })
            }
        }
    }

    /// Splits a series of order type `w*k` (`k >= 1`) into its `k`
    /// consecutive `w`-blocks.
    pub fn split_blocks(&self) -> Result<Vec<FlatOmega>, SeriesError> {
        let unsupported = || SeriesError::UnsupportedOrderType {
            expected: "w*k".into(),
            found: self.order_type().to_string(),
        };
        let Series::Cat { prefix, period } = self else {
            return Err(unsupported());
        };
        let mut blocks = Vec::new();
        let mut pending: Vec<Ordinal> = Vec::new();
        for member in prefix {
            match member {
                Series::Fin(items) => pending.extend(items.iter().cloned()),
                Series::Cat { .. } => {
                    let inner = member.flatten_omega().map_err(|_| unsupported())?;
                    let mut pre = std::mem::take(&mut pending);
                    pre.extend(inner.prefix);
                    blocks.push(FlatOmega {
                        prefix: pre,
                        period: inner.period,
                    });
                }
            }
        }
        let mut per = Vec::new();
        for member in period {
            match member {
                Series::Fin(items) => per.extend(items.iter().cloned()),
                Series::Cat { .. } => return Err(unsupported()),
            }
        }
        if per.is_empty() {
            return Err(unsupported());
        }
        blocks.push(FlatOmega {
            prefix: pending,
            period: per,
        });
        Ok(blocks)
    }

    /// Splits a series of order type exactly `w*2` into its two blocks.
    pub fn split_two_blocks(&self) -> Result<(FlatOmega, FlatOmega), SeriesError> {
        let blocks = self.split_blocks()?;
        if blocks.len() != 2 {
            return Err(SeriesError::UnsupportedOrderType {
                expected: "w*2".into(),
                found: self.order_type().to_string(),
            });
        }
        let mut it = blocks.into_iter();
        Ok((it.next().unwrap(), it.next().unwrap()))
    }

    /// The exceptional terms of an `w`-series: occurrences dominated by
    /// only finitely many terms. Always finite, because a term dominated
    /// finitely often must exceed every value of the periodic block.
    pub fn exceptional_multiset(&self) -> Result<Vec<ExceptionalTerm>, SeriesError> {
        let flat = self.flatten_omega()?;
        let max_core = flat.period.iter().max().expect("period nonempty").clone();
        Ok(flat
            .prefix
            .iter()
            .enumerate()
            .filter(|(_, v)| **v > max_core)
            .map(|(position, value)| ExceptionalTerm {
                position,
                value: value.clone(),
            })
            .collect())
    }

    /// Materializes the first `n` terms.
    pub fn take_terms(&self, n: usize) -> Result<Vec<Ordinal>, SeriesError> {
        (0..n)
            .map(|k| self.term_at(&Ordinal::from_nat(k as u64)))
            .collect()
    }

    /// A new series with `values` prepended.
    pub fn prepend(&self, values: Vec<Ordinal>) -> Series {
        if values.is_empty() {
            return self.clone();
        }
        match self {
            Series::Fin(items) => {
                let mut v = values;
                v.extend(items.iter().cloned());
                Series::Fin(v)
            }
            Series::Cat { prefix, period } => {
                let mut p = vec![Series::Fin(values)];
                p.extend(prefix.iter().cloned());
                Series::Cat {
                    prefix: p,
                    period: period.clone(),
                }
            }
        }
    }

    /// A new series with the given positions removed and the remaining
    /// terms kept in order. Positions inside the periodic repetition are
    /// handled by unrolling the affected leading blocks into the prefix.
    pub fn delete_positions(&self, positions: &BTreeSet<Ordinal>) -> Result<Series, SeriesError> {
        let order = self.order_type();
        if let Some(p) = positions.iter().find(|p| **p >= order) {
            return Err(self.index_error(p));
        }
        Ok(self.delete_unchecked(positions))
    }

    fn delete_unchecked(&self, positions: &BTreeSet<Ordinal>) -> Series {
        if positions.is_empty() {
            return self.clone();
        }
        match self {
            Series::Fin(items) => {
                let drop: BTreeSet<usize> = positions
                    .iter()
                    .filter_map(|p| finite_index(p, items.len()))
                    .collect();
                Series::Fin(
                    items
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !drop.contains(i))
                        .map(|(_, v)| v.clone())
                        .collect(),
                )
            }
            Series::Cat { prefix, period } => {
                let mut remaining: Vec<Ordinal> = positions.iter().cloned().collect();
                let mut new_prefix = Vec::new();
                for p in prefix {
                    let t = p.order_type();
                    let local: BTreeSet<Ordinal> =
                        remaining.iter().filter(|x| **x < t).cloned().collect();
                    new_prefix.push(p.delete_unchecked(&local));
                    remaining = remaining
                        .iter()
                        .filter(|x| **x >= t)
                        .map(|x| t.left_subtract(x).expect("x >= t"))
                        .collect();
                }
                if remaining.is_empty() {
                    return Series::Cat {
                        prefix: new_prefix,
                        period: period.clone(),
                    };
                }
                // Unroll every block that loses a position, then delete
                // within the unrolled copies.
                let block_type = period
                    .iter()
                    .fold(Ordinal::zero(), |a, p| a.add(&p.order_type()));
                let mut max_q = BigUint::zero();
                let mut localized: Vec<(BigUint, Ordinal)> = Vec::new();
                for x in &remaining {
                    let (q, r) = div_mod_finite(x, &block_type).expect("position below w-power");
                    if q > max_q {
                        max_q = q.clone();
                    }
                    localized.push((q, r));
                }
                let blocks = usize::try_from(&max_q).expect("unroll count fits usize") + 1;
                for b in 0..blocks {
                    let b_big = BigUint::from(b);
                    for p in period {
                        let t = p.order_type();
                        let mut local = BTreeSet::new();
                        for (q, r) in localized.iter_mut() {
                            if *q == b_big && *r < t {
                                local.insert(r.clone());
                                // Mark as consumed.
                                *q = BigUint::from(blocks as u64 + 1);
                            } else if *q == b_big {
                                *r = t.left_subtract(r).expect("r >= t");
                            }
                        }
                        new_prefix.push(p.delete_unchecked(&local));
                    }
                }
                Series::Cat {
                    prefix: new_prefix,
                    period: period.clone(),
                }
            }
        }
    }
}

/// Computes `(q, r)` with `i = t*q + r`, `q` finite and `r < t`, assuming
/// `i < t*w`. Returns `None` when `i` is not below `t*w` or `t` is zero.
pub(crate) fn div_mod_finite(i: &Ordinal, t: &Ordinal) -> Option<(BigUint, Ordinal)> {
    if t.is_zero() {
        return None;
    }
    if i < t {
        return Some((BigUint::zero(), i.clone()));
    }
    let dt = t.degree().expect("t > 0");
    let di = i.degree().expect("i >= t > 0");
    if di != dt {
        return None;
    }
    let ci = &i.terms()[0].1;
    let ct = &t.terms()[0].1;
    let mut q = ci / ct;
    let candidate = t.mul(&Ordinal::from_nat(q.clone()));
    if candidate > *i {
        q -= BigUint::one();
    }
    let tq = t.mul(&Ordinal::from_nat(q.clone()));
    let r = tq.left_subtract(i).expect("t*q <= i");
    if r >= *t {
        // i >= t*(q+1) would contradict maximality of the estimate.
        return None;
    }
    Some((q, r))
}

fn finite_index(i: &Ordinal, len: usize) -> Option<usize> {
    let n = i.as_nat()?;
    let idx = usize::try_from(n).ok()?;
    (idx < len).then_some(idx)
}

/// Collects `(tail value, start position)` pairs covering every distinct
/// tail of `s` within a larger series: `base` is the absolute position of
/// `s`'s first term and `cont` the sum of everything after `s`.
fn collect_tails(s: &Series, base: &Ordinal, cont: &Ordinal, out: &mut Vec<(Ordinal, Ordinal)>) {
    match s {
        Series::Fin(items) => {
            let mut acc = cont.clone();
            let mut tails = Vec::with_capacity(items.len());
            for (g, item) in items.iter().enumerate().rev() {
                acc = item.add(&acc);
                tails.push((acc.clone(), base.add(&Ordinal::from_nat(g as u64))));
            }
            out.extend(tails.into_iter().rev());
        }
        Series::Cat { prefix, period } => {
            let block_sum: Ordinal = period
                .iter()
                .fold(Ordinal::zero(), |a, p| a.add(&p.total_sum()));
            let rep_cont = block_sum.mul(&Ordinal::omega()).add(cont);

            let prefix_totals: Vec<Ordinal> = prefix.iter().map(|p| p.total_sum()).collect();
            let mut pos = base.clone();
            for (i, p) in prefix.iter().enumerate() {
                let mut after = rep_cont.clone();
                for t in prefix_totals[i + 1..].iter().rev() {
                    after = t.add(&after);
                }
                collect_tails(p, &pos, &after, out);
                pos = pos.add(&p.order_type());
            }
            // Tails starting inside the repetition: block 0 covers every
            // phase, since the value at a phase does not depend on which
            // block the tail starts in.
            let period_totals: Vec<Ordinal> = period.iter().map(|p| p.total_sum()).collect();
            for (k, p) in period.iter().enumerate() {
                let mut after = rep_cont.clone();
                for t in period_totals[k + 1..].iter().rev() {
                    after = t.add(&after);
                }
                collect_tails(p, &pos, &after, out);
                pos = pos.add(&p.order_type());
            }
        }
    }
}

impl fmt::Display for Series {
    /// Prints the canonical text form: `fin(...)` or `cat([...];[...])`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::Fin(items) => {
                write!(f, "fin(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Series::Cat { prefix, period } => {
                write!(f, "cat([")?;
                for (i, p) in prefix.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "];[")?;
                for (i, p) in period.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "])")
            }
        }
    }
}

impl std::str::FromStr for Series {
    type Err = crate::text::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_series(s)
    }
}
