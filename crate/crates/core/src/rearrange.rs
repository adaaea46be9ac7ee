//! A finite combinator language for re-indexings of a series.
//!
//! A [`MapSpec`] denotes a map from the index ordinal of a series to
//! itself. Applying a spec to a series produces the re-indexed series,
//! which stays inside the representable class. The combinators cover the
//! three quantifier classes the sum-set analyses need: bijections
//! (`Permute`, `MoveFront`, `EvenOdd`, `SwapBlocks`), injections (`Mask`)
//! and arbitrary maps (`Repeat`), closed under composition.

use crate::ordinal::Ordinal;
use crate::series::{FlatOmega, Series, SeriesError};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Largest finite repeat count that `apply` will materialize.
const MAX_REPEAT_COUNT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    /// The spec cannot be applied to the given series or in the given role.
    #[error("map not applicable: {0}")]
    Inapplicable(String),
    #[error("permutation must list each position 0..n exactly once")]
    InvalidPermutation,
    #[error("move-front source positions must be distinct")]
    DuplicateSource,
    #[error("mask period bits must be nonempty and contain a 1")]
    InvalidMask,
    #[error("repeat period counts must be nonempty")]
    EmptyRepeatPeriod,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A repetition count: a natural number or `w` (an infinite block of
/// copies).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u64),
    Omega,
}

/// Structural classification of a re-indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MapKind {
    Bijection,
    Injection,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
}

/// For a bijection of a two-block series: whether infinitely many
/// second-half positions draw their term from the first block (`from_first`,
/// the paper-style crossing set) and from the second block (`from_second`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossClassification {
    pub from_first: Finiteness,
    pub from_second: Finiteness,
}

/// Whether an injection misses only finitely many positions or infinitely
/// many.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageClass {
    CofiniteImage,
    CoinfiniteImage,
}

/// A re-indexing expression.
///
/// `Compose(outer, inner)` applies `inner` first; the text form
/// `a ; b` reads left-to-right as "apply `a`, then `b`".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapSpec {
    /// Permutes the first `n` positions by `p` (term at `i` comes from
    /// `p[i]`), identity elsewhere.
    Permute(Vec<usize>),
    /// Brings the listed source positions to the front, in order; the
    /// remaining terms keep their relative order.
    MoveFront(Vec<Ordinal>),
    /// On order type `w*2`: exchanges the term at even position `2n` with
    /// the term at `w+2n`, fixing all odd positions. An involution.
    EvenOdd,
    /// On order type `w*2`: exchanges the two blocks.
    SwapBlocks,
    /// Injection keeping the positions whose bit is 1 (prefix bits, then
    /// period bits repeated), re-indexed order-preservingly.
    Mask { prefix: Vec<bool>, period: Vec<bool> },
    /// Arbitrary map emitting `count` copies of each source term in
    /// position order; count 0 drops a term and `w` emits an infinite
    /// block of copies.
    Repeat { prefix: Vec<Count>, period: Vec<Count> },
    Compose(Box<MapSpec>, Box<MapSpec>),
}

impl MapSpec {
    pub fn identity() -> MapSpec {
        MapSpec::MoveFront(vec![])
    }

    pub fn permute(p: Vec<usize>) -> Result<MapSpec, MapError> {
        let mut seen = vec![false; p.len()];
        for &i in &p {
            if i >= p.len() || seen[i] {
                return Err(MapError::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(MapSpec::Permute(p))
    }

    pub fn move_front(src: Vec<Ordinal>) -> Result<MapSpec, MapError> {
        let set: BTreeSet<&Ordinal> = src.iter().collect();
        if set.len() != src.len() {
            return Err(MapError::DuplicateSource);
        }
        Ok(MapSpec::MoveFront(src))
    }

    pub fn mask(prefix: Vec<bool>, period: Vec<bool>) -> Result<MapSpec, MapError> {
        if period.is_empty() || !period.contains(&true) {
            return Err(MapError::InvalidMask);
        }
        Ok(MapSpec::Mask { prefix, period })
    }

    pub fn repeat(prefix: Vec<Count>, period: Vec<Count>) -> Result<MapSpec, MapError> {
        if period.is_empty() {
            return Err(MapError::EmptyRepeatPeriod);
        }
        Ok(MapSpec::Repeat { prefix, period })
    }

    pub fn compose(outer: MapSpec, inner: MapSpec) -> MapSpec {
        MapSpec::Compose(Box::new(outer), Box::new(inner))
    }

    /// Conservative exact classification by structure: the named bijective
    /// combinators are bijections, `Mask` is an injection, `Repeat` is
    /// general unless every count is 1, and a composition takes the
    /// weakest class of its parts.
    pub fn kind(&self) -> MapKind {
        match self {
            MapSpec::Permute(_) | MapSpec::MoveFront(_) | MapSpec::EvenOdd | MapSpec::SwapBlocks => {
                MapKind::Bijection
            }
            MapSpec::Mask { .. } => MapKind::Injection,
            MapSpec::Repeat { prefix, period } => {
                if prefix
                    .iter()
                    .chain(period.iter())
                    .all(|c| *c == Count::Finite(1))
                {
                    MapKind::Bijection
                } else {
                    MapKind::General
                }
            }
            MapSpec::Compose(outer, inner) => outer.kind().max(inner.kind()),
        }
    }

    /// Applies the re-indexing to a series: the result's term at `i` is
    /// the source term at the image of `i`.
    pub fn apply(&self, s: &Series) -> Result<Series, MapError> {
        match self {
            MapSpec::Permute(p) => {
                let moved: Vec<Ordinal> = p
                    .iter()
                    .map(|&i| s.term_at(&Ordinal::from_nat(i as u64)))
                    .collect::<Result<_, _>>()?;
                let drop: BTreeSet<Ordinal> =
                    (0..p.len()).map(|i| Ordinal::from_nat(i as u64)).collect();
                Ok(s.delete_positions(&drop)?.prepend(moved))
            }
            MapSpec::MoveFront(src) => {
                let moved: Vec<Ordinal> =
                    src.iter().map(|i| s.term_at(i)).collect::<Result<_, _>>()?;
                let drop: BTreeSet<Ordinal> = src.iter().cloned().collect();
                Ok(s.delete_positions(&drop)?.prepend(moved))
            }
            MapSpec::EvenOdd => {
                let (b1, b2) = split_omega2(s, "evenodd")?;
                let d1 = interleave_parity(&b2, &b1);
                let d2 = interleave_parity(&b1, &b2);
                Ok(omega2_series(&d1, &d2))
            }
            MapSpec::SwapBlocks => {
                let (b1, b2) = split_omega2(s, "swapblocks")?;
                Ok(omega2_series(&b2, &b1))
            }
            MapSpec::Mask { prefix, period } => {
                let flat = flat_omega(s, "mask")?;
                Ok(apply_mask(prefix, period, &flat).to_series())
            }
            MapSpec::Repeat { prefix, period } => {
                let flat = flat_omega(s, "repeat")?;
                apply_repeat(prefix, period, &flat)
            }
            MapSpec::Compose(outer, inner) => outer.apply(&inner.apply(s)?),
        }
    }

    /// Classifies the cross-block traffic of a bijection on a two-block
    /// series, deciding symbolically whether infinitely many second-half
    /// positions are sourced from each block.
    ///
    /// Computed by applying the spec to an indicator series (first block
    /// all 0, second block all 1) and reading off the supports in the
    /// resulting second block.
    pub fn ab_classify(&self) -> Result<CrossClassification, MapError> {
        if self.kind() != MapKind::Bijection {
            return Err(MapError::Inapplicable(
                "cross-block classification requires a bijective spec".into(),
            ));
        }
        let first = Series::cat(vec![], vec![Series::Fin(vec![Ordinal::zero()])])
            .expect("valid period");
        let indicator = Series::Cat {
            prefix: vec![first],
            period: vec![Series::Fin(vec![Ordinal::one()])],
        };
        let image = self.apply(&indicator)?;
        let (_, second) = split_omega2(&image, "cross-block classification")?;
        let infinitely = |v: &Ordinal| {
            if second.period.contains(v) {
                Finiteness::Infinite
            } else {
                Finiteness::Finite
            }
        };
        Ok(CrossClassification {
            from_first: infinitely(&Ordinal::zero()),
            from_second: infinitely(&Ordinal::one()),
        })
    }

    /// For an injective spec on an `w`-series: whether the complement of
    /// its image is finite or infinite. A composition misses infinitely
    /// many positions exactly when some mask in it periodically drops
    /// positions.
    pub fn image_class(&self) -> Result<ImageClass, MapError> {
        if self.kind() == MapKind::General {
            return Err(MapError::Inapplicable(
                "image classification requires an injective spec".into(),
            ));
        }
        fn drops_infinitely(m: &MapSpec) -> bool {
            match m {
                MapSpec::Mask { period, .. } => period.contains(&false),
                MapSpec::Compose(outer, inner) => {
                    drops_infinitely(outer) || drops_infinitely(inner)
                }
                _ => false,
            }
        }
        Ok(if drops_infinitely(self) {
            ImageClass::CoinfiniteImage
        } else {
            ImageClass::CofiniteImage
        })
    }
}

fn flat_omega(s: &Series, what: &str) -> Result<FlatOmega, MapError> {
    s.flatten_omega().map_err(|_| {
        MapError::Inapplicable(format!(
            "{what} requires order type w, found {}",
            s.order_type()
        ))
    })
}

fn split_omega2(s: &Series, what: &str) -> Result<(FlatOmega, FlatOmega), MapError> {
    s.split_two_blocks().map_err(|_| {
        MapError::Inapplicable(format!(
            "{what} requires order type w*2, found {}",
            s.order_type()
        ))
    })
}

/// Rebuilds a two-block series from flattened blocks.
pub(crate) fn omega2_series(b1: &FlatOmega, b2: &FlatOmega) -> Series {
    let mut prefix = vec![b1.to_series()];
    if !b2.prefix.is_empty() {
        prefix.push(Series::Fin(b2.prefix.clone()));
    }
    Series::Cat {
        prefix,
        period: vec![Series::Fin(b2.period.clone())],
    }
}

/// `result[k] = even_src[k]` for even `k`, `odd_src[k]` for odd `k`.
fn interleave_parity(even_src: &FlatOmega, odd_src: &FlatOmega) -> FlatOmega {
    let p = even_src.prefix.len().max(odd_src.prefix.len());
    let q = 2 * lcm(even_src.period.len(), odd_src.period.len());
    FlatOmega::from_fn(p, q, |k| {
        if k % 2 == 0 {
            even_src.term(k).clone()
        } else {
            odd_src.term(k).clone()
        }
    })
}

fn apply_mask(pre_bits: &[bool], per_bits: &[bool], flat: &FlatOmega) -> FlatOmega {
    let pre_ones: Vec<usize> = pre_bits
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect();
    let per_ones: Vec<usize> = per_bits
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect();
    let sel = |j: usize| -> usize {
        if j < pre_ones.len() {
            pre_ones[j]
        } else {
            let j2 = j - pre_ones.len();
            pre_bits.len() + (j2 / per_ones.len()) * per_bits.len() + per_ones[j2 % per_ones.len()]
        }
    };
    let mut result_prefix = pre_ones.len();
    while sel(result_prefix) < flat.prefix.len() {
        result_prefix += 1;
    }
    let result_period = per_ones.len() * (lcm(per_bits.len(), flat.period.len()) / per_bits.len());
    FlatOmega::from_fn(result_prefix, result_period, |k| flat.term(sel(k)).clone())
}

fn apply_repeat(
    pre_counts: &[Count],
    per_counts: &[Count],
    flat: &FlatOmega,
) -> Result<Series, MapError> {
    let count_at = |k: usize| -> Count {
        if k < pre_counts.len() {
            pre_counts[k]
        } else {
            per_counts[(k - pre_counts.len()) % per_counts.len()]
        }
    };
    let segment = |k: usize| -> Result<Option<Series>, MapError> {
        let v = flat.term(k).clone();
        match count_at(k) {
            Count::Finite(0) => Ok(None),
            Count::Finite(c) => {
                if c > MAX_REPEAT_COUNT {
                    return Err(MapError::Inapplicable(format!(
                        "repeat count {c} too large to materialize"
                    )));
                }
                Ok(Some(Series::Fin(vec![v; c as usize])))
            }
            Count::Omega => Ok(Some(
                Series::cat(vec![], vec![Series::Fin(vec![v])]).expect("valid period"),
            )),
        }
    };

    let n0 = pre_counts.len().max(flat.prefix.len());
    let l = lcm(per_counts.len(), flat.period.len());
    let mut prefix_segments = Vec::new();
    for k in 0..n0 {
        if let Some(seg) = segment(k)? {
            prefix_segments.push(seg);
        }
    }
    let mut period_members = Vec::new();
    for k in n0..n0 + l {
        if let Some(seg) = segment(k)? {
            period_members.push(seg);
        }
    }
    if !period_members.is_empty() {
        return Ok(Series::Cat {
            prefix: prefix_segments,
            period: period_members,
        });
    }
    // Nothing periodic survives: the output is the prefix segments alone.
    if prefix_segments.iter().all(|m| matches!(m, Series::Fin(_))) {
        let items = prefix_segments
            .into_iter()
            .flat_map(|m| match m {
                Series::Fin(items) => items,
                Series::Cat { .. } => unreachable!(),
            })
            .collect();
        return Ok(Series::Fin(items));
    }
    match prefix_segments.last() {
        Some(Series::Cat { period, .. }) => {
            let period = period.clone();
            let len = prefix_segments.len();
            prefix_segments.truncate(len - 1);
            Ok(Series::Cat {
                prefix: prefix_segments,
                period,
            })
        }
        _ => Err(MapError::Inapplicable(
            "an infinite block of copies followed by a finite tail is not representable".into(),
        )),
    }
}

/// Replaces every value of `s` with an infinitely repeated one: the result
/// has the same order type and value set, and every value has infinite
/// support.
///
/// An `w`-series becomes the round-robin cycle of its distinct values; for
/// larger composite series one pass of every distinct value is appended to
/// the period block, which leaves the order type unchanged.
pub fn dup(s: &Series) -> Series {
    if let Ok(flat) = s.flatten_omega() {
        let values = flat.distinct_values();
        return FlatOmega {
            prefix: vec![],
            period: values,
        }
        .to_series();
    }
    match s {
        Series::Cat { prefix, period } => {
            let mut values = Vec::new();
            collect_values(s, &mut values);
            let mut period = period.clone();
            period.push(Series::Fin(values));
            Series::Cat {
                prefix: prefix.clone(),
                period,
            }
        }
        Series::Fin(items) if items.is_empty() => Series::Fin(vec![]),
        Series::Fin(_) => {
            let mut values = Vec::new();
            collect_values(s, &mut values);
            Series::Cat {
                prefix: vec![],
                period: vec![Series::Fin(values)],
            }
        }
    }
}

fn collect_values(s: &Series, out: &mut Vec<Ordinal>) {
    match s {
        Series::Fin(items) => {
            for v in items {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        Series::Cat { prefix, period } => {
            for m in prefix.iter().chain(period.iter()) {
                collect_values(m, out);
            }
        }
    }
}

/// Deterministically enumerates a deduplicated family of bijective specs
/// for an `w`- or `w*2`-series: front rearrangements over the first
/// `depth` positions (of each block, for two-block series), composed with
/// the applicable block combinators. At depth `d` at least `d` leading
/// terms can be brought to the front in every order, so the family
/// realizes every ordering of up to `d` exceptional terms.
pub fn canonical_family(s: &Series, depth: usize) -> Result<Vec<MapSpec>, MapError> {
    let two_block = s.split_two_blocks().is_ok();
    if !two_block && s.flatten_omega().is_err() {
        return Err(MapError::Series(SeriesError::UnsupportedOrderType {
            expected: "w or w*2".into(),
            found: s.order_type().to_string(),
        }));
    }

    let mut pool: Vec<Ordinal> = (0..depth).map(|i| Ordinal::from_nat(i as u64)).collect();
    if two_block {
        pool.extend((0..depth).map(|i| Ordinal::omega().add(&Ordinal::from_nat(i as u64))));
    }

    // Finite front edits: the identity, permutations of the first `depth`
    // positions, and every ordered tuple of distinct pool positions.
    let mut edits: Vec<MapSpec> = vec![MapSpec::identity()];
    for p in permutations_of(depth) {
        if !p.iter().enumerate().all(|(i, &x)| i == x) {
            edits.push(MapSpec::Permute(p));
        }
    }
    for len in 1..=depth {
        for t in ordered_tuples(&pool, len) {
            edits.push(MapSpec::MoveFront(t));
        }
    }

    let kleins: Vec<Option<MapSpec>> = if two_block {
        vec![
            None,
            Some(MapSpec::SwapBlocks),
            Some(MapSpec::EvenOdd),
            Some(MapSpec::compose(MapSpec::EvenOdd, MapSpec::SwapBlocks)),
        ]
    } else {
        vec![None]
    };

    let mut family = Vec::new();
    let mut seen: BTreeSet<(Vec<Ordinal>, usize)> = BTreeSet::new();
    for edit in &edits {
        let key_tuple = normalized_front_tuple(edit);
        for (ki, klein) in kleins.iter().enumerate() {
            if !seen.insert((key_tuple.clone(), ki)) {
                continue;
            }
            let m = match (key_tuple.is_empty(), klein) {
                (true, None) => MapSpec::identity(),
                (true, Some(k)) => k.clone(),
                (false, None) => edit.clone(),
                (false, Some(k)) => MapSpec::compose(edit.clone(), k.clone()),
            };
            family.push(m);
        }
    }
    Ok(family)
}

/// The semantic key of a front edit: the list of moved sources, with the
/// reducible tail stripped (moving the least unused position into the next
/// front slot is a no-op).
fn normalized_front_tuple(edit: &MapSpec) -> Vec<Ordinal> {
    let mut t: Vec<Ordinal> = match edit {
        MapSpec::Permute(p) => p.iter().map(|&i| Ordinal::from_nat(i as u64)).collect(),
        MapSpec::MoveFront(src) => src.clone(),
        _ => unreachable!("front edits are permute or move-front"),
    };
    loop {
        let Some(last) = t.last() else { break };
        let earlier = &t[..t.len() - 1];
        let mut least = Ordinal::zero();
        while earlier.contains(&least) {
            least = least.succ();
        }
        if last == &least {
            t.pop();
        } else {
            break;
        }
    }
    t
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute_rec(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute_rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_rec(items, k + 1, out);
        items.swap(k, i);
    }
}

/// All ordered tuples of `len` distinct elements of `pool`, in
/// lexicographic order of chosen indices.
fn ordered_tuples(pool: &[Ordinal], len: usize) -> Vec<Vec<Ordinal>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    let mut used = vec![false; pool.len()];
    fn rec(
        pool: &[Ordinal],
        len: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<Ordinal>,
        out: &mut Vec<Vec<Ordinal>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in 0..pool.len() {
            if !used[i] {
                used[i] = true;
                current.push(pool[i].clone());
                rec(pool, len, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(pool, len, &mut used, &mut current, &mut out);
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for MapSpec {
    /// Prints the canonical form; compositions print inner-first joined
    /// by `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Permute(p) => {
                write!(f, "permute([")?;
                for (i, x) in p.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "])")
            }
            MapSpec::MoveFront(src) => {
                write!(f, "movefront([")?;
                for (i, x) in src.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "])")
            }
            MapSpec::EvenOdd => write!(f, "evenodd()"),
            MapSpec::SwapBlocks => write!(f, "swapblocks()"),
            MapSpec::Mask { prefix, period } => {
                let bits = |f: &mut fmt::Formatter<'_>, v: &[bool]| -> fmt::Result {
                    for (i, b) in v.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", u8::from(*b))?;
                    }
                    Ok(())
                };
                write!(f, "mask([")?;
                bits(f, prefix)?;
                write!(f, "];[")?;
                bits(f, period)?;
                write!(f, "])")
            }
            MapSpec::Repeat { prefix, period } => {
                let counts = |f: &mut fmt::Formatter<'_>, v: &[Count]| -> fmt::Result {
                    for (i, c) in v.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        match c {
                            Count::Finite(n) => write!(f, "{n}")?,
                            Count::Omega => write!(f, "w")?,
                        }
                    }
                    Ok(())
                };
                write!(f, "repeat([")?;
                counts(f, prefix)?;
                write!(f, "];[")?;
                counts(f, period)?;
                write!(f, "])")
            }
            MapSpec::Compose(outer, inner) => write!(f, "{inner} ; {outer}"),
        }
    }
}

impl std::str::FromStr for MapSpec {
    type Err = crate::text::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_mapspec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    fn nat(n: u64) -> Ordinal {
        Ordinal::from_nat(n)
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    fn wp(e: u64) -> Ordinal {
        Ordinal::omega_pow_mul(nat(e), BigUint::one()).unwrap()
    }

    fn const_series(v: Ordinal) -> Series {
        Series::cat(vec![], vec![Series::Fin(vec![v])]).unwrap()
    }

    /// 1-block then w-block.
    fn two_block() -> Series {
        Series::cat(vec![const_series(nat(1))], vec![Series::Fin(vec![w()])]).unwrap()
    }

    #[test]
    fn permute_swaps_finite_series() {
        let m = MapSpec::permute(vec![1, 0]).unwrap();
        let s = Series::Fin(vec![w(), nat(1)]);
        assert_eq!(m.apply(&s).unwrap(), Series::Fin(vec![nat(1), w()]));
        assert!(MapSpec::permute(vec![1, 1]).is_err());
        assert!(m.apply(&Series::Fin(vec![nat(1)])).is_err());
    }

    #[test]
    fn evenodd_interleaves_blocks() {
        let s = two_block();
        let r = MapSpec::EvenOdd.apply(&s).unwrap();
        assert_eq!(r.order_type(), w().times(2));
        // First block: w,1,w,1,...  Second block: 1,w,1,w,...
        assert_eq!(r.term_at(&nat(0)).unwrap(), w());
        assert_eq!(r.term_at(&nat(1)).unwrap(), nat(1));
        assert_eq!(r.term_at(&w()).unwrap(), nat(1));
        assert_eq!(r.term_at(&w().succ()).unwrap(), w());
        assert_eq!(r.total_sum(), wp(2).times(2));
        // Involution.
        let rr = MapSpec::EvenOdd.apply(&r).unwrap();
        for k in 0..8u64 {
            assert_eq!(
                rr.term_at(&nat(k)).unwrap(),
                s.term_at(&nat(k)).unwrap()
            );
            assert_eq!(
                rr.term_at(&w().add(&nat(k))).unwrap(),
                s.term_at(&w().add(&nat(k))).unwrap()
            );
        }
        assert!(MapSpec::EvenOdd.apply(&const_series(nat(1))).is_err());
    }

    #[test]
    fn swap_blocks() {
        let s = two_block();
        let r = MapSpec::SwapBlocks.apply(&s).unwrap();
        assert_eq!(r.term_at(&nat(0)).unwrap(), w());
        assert_eq!(r.term_at(&w()).unwrap(), nat(1));
        assert_eq!(r.total_sum(), wp(2).add(&w()));
    }

    #[test]
    fn mask_selects_positions() {
        // Select even positions of 1,w,1,w,... : the constant-1 series.
        let alt = Series::cat(
            vec![],
            vec![Series::Fin(vec![nat(1)]), Series::Fin(vec![w()])],
        )
        .unwrap();
        let m = MapSpec::mask(vec![], vec![true, false]).unwrap();
        let r = m.apply(&alt).unwrap();
        for k in 0..6u64 {
            assert_eq!(r.term_at(&nat(k)).unwrap(), nat(1));
        }
        assert_eq!(r.total_sum(), w());
        assert!(MapSpec::mask(vec![], vec![false]).is_err());
        assert!(MapSpec::mask(vec![], vec![]).is_err());
    }

    #[test]
    fn repeat_emits_blocks() {
        // Count w on the leading term, dropping the rest: sum w^2.
        let s = Series::cat(
            vec![Series::Fin(vec![w()])],
            vec![Series::Fin(vec![nat(1)])],
        )
        .unwrap();
        let m = MapSpec::repeat(vec![Count::Omega], vec![Count::Finite(0)]).unwrap();
        let r = m.apply(&s).unwrap();
        assert_eq!(r.order_type(), w());
        assert_eq!(r.total_sum(), wp(2));
        // Doubling every term keeps order type w.
        let m2 = MapSpec::repeat(vec![], vec![Count::Finite(2)]).unwrap();
        let r2 = m2.apply(&s).unwrap();
        assert_eq!(r2.order_type(), w());
        assert_eq!(r2.term_at(&nat(0)).unwrap(), w());
        assert_eq!(r2.term_at(&nat(1)).unwrap(), w());
        assert_eq!(r2.term_at(&nat(2)).unwrap(), nat(1));
        // An infinite block with a surviving periodic tail is representable.
        let m3 = MapSpec::repeat(vec![Count::Omega], vec![Count::Finite(1)]).unwrap();
        let r3 = m3.apply(&s).unwrap();
        assert_eq!(r3.order_type(), w().times(2));
        assert_eq!(r3.total_sum(), wp(2).add(&w()));
        let m4 = MapSpec::repeat(
            vec![Count::Omega, Count::Finite(1)],
            vec![Count::Finite(0)],
        )
        .unwrap();
        assert!(matches!(m4.apply(&s), Err(MapError::Inapplicable(_))));
    }

    #[test]
    fn kind_classification() {
        assert_eq!(MapSpec::EvenOdd.kind(), MapKind::Bijection);
        assert_eq!(
            MapSpec::mask(vec![], vec![true, false]).unwrap().kind(),
            MapKind::Injection
        );
        assert_eq!(
            MapSpec::repeat(vec![], vec![Count::Finite(2)]).unwrap().kind(),
            MapKind::General
        );
        assert_eq!(
            MapSpec::repeat(vec![], vec![Count::Finite(1)]).unwrap().kind(),
            MapKind::Bijection
        );
        let comp = MapSpec::compose(
            MapSpec::permute(vec![1, 0]).unwrap(),
            MapSpec::mask(vec![], vec![true, false]).unwrap(),
        );
        assert_eq!(comp.kind(), MapKind::Injection);
    }

    #[test]
    fn cross_classification_cases() {
        assert_eq!(
            MapSpec::identity().ab_classify().unwrap(),
            CrossClassification {
                from_first: Finiteness::Finite,
                from_second: Finiteness::Infinite
            }
        );
        assert_eq!(
            MapSpec::SwapBlocks.ab_classify().unwrap(),
            CrossClassification {
                from_first: Finiteness::Infinite,
                from_second: Finiteness::Finite
            }
        );
        assert_eq!(
            MapSpec::EvenOdd.ab_classify().unwrap(),
            CrossClassification {
                from_first: Finiteness::Infinite,
                from_second: Finiteness::Infinite
            }
        );
        // Invariant under composition with a finite front edit.
        let m = MapSpec::compose(
            MapSpec::MoveFront(vec![nat(3), w().add(&nat(1))]),
            MapSpec::EvenOdd,
        );
        assert_eq!(
            m.ab_classify().unwrap(),
            MapSpec::EvenOdd.ab_classify().unwrap()
        );
        assert!(MapSpec::mask(vec![], vec![true]).unwrap().ab_classify().is_err());
    }

    #[test]
    fn image_class_cases() {
        assert_eq!(
            MapSpec::permute(vec![2, 0, 1]).unwrap().image_class().unwrap(),
            ImageClass::CofiniteImage
        );
        assert_eq!(
            MapSpec::mask(vec![], vec![true, false])
                .unwrap()
                .image_class()
                .unwrap(),
            ImageClass::CoinfiniteImage
        );
        assert_eq!(
            MapSpec::mask(vec![false], vec![true])
                .unwrap()
                .image_class()
                .unwrap(),
            ImageClass::CofiniteImage
        );
        assert!(MapSpec::repeat(vec![], vec![Count::Finite(2)])
            .unwrap()
            .image_class()
            .is_err());
    }

    #[test]
    fn dup_cases() {
        let s = Series::cat(
            vec![Series::Fin(vec![w()])],
            vec![Series::Fin(vec![nat(1)])],
        )
        .unwrap();
        let d = dup(&s);
        assert_eq!(d.order_type(), w());
        assert_eq!(d.value_support(&w()), crate::series::Support::Infinite);
        assert_eq!(d.value_support(&nat(1)), crate::series::Support::Infinite);

        let c = const_series(nat(1));
        assert_eq!(dup(&c), c);

        let s2 = Series::cat(
            vec![Series::Fin(vec![wp(2), w()])],
            vec![Series::Fin(vec![nat(1)])],
        )
        .unwrap();
        let d2 = dup(&s2);
        for v in [wp(2), w(), nat(1)] {
            assert_eq!(d2.value_support(&v), crate::series::Support::Infinite);
        }
        // Two-block series keep their order type.
        let tb = two_block();
        let dtb = dup(&tb);
        assert_eq!(dtb.order_type(), w().times(2));
        assert_eq!(dtb.value_support(&nat(1)), crate::series::Support::Infinite);
        assert_eq!(dtb.value_support(&w()), crate::series::Support::Infinite);
    }

    #[test]
    fn canonical_family_contents() {
        let s = Series::cat(
            vec![Series::Fin(vec![wp(2), w()])],
            vec![Series::Fin(vec![nat(1)])],
        )
        .unwrap();
        let f0 = canonical_family(&s, 0).unwrap();
        assert_eq!(f0, vec![MapSpec::identity()]);
        let f2 = canonical_family(&s, 2).unwrap();
        assert!(f2.contains(&MapSpec::Permute(vec![1, 0])));

        let tb = two_block();
        let f1 = canonical_family(&tb, 1).unwrap();
        assert!(f1.contains(&MapSpec::identity()));
        assert!(f1.contains(&MapSpec::SwapBlocks));
        assert!(f1.contains(&MapSpec::EvenOdd));

        let f3 = canonical_family(&tb, 3).unwrap();
        assert!(f3.len() >= 100);

        assert!(canonical_family(&Series::Fin(vec![nat(1)]), 2).is_err());
    }

    #[test]
    fn composition_applies_inner_first() {
        let s = Series::cat(
            vec![Series::Fin(vec![wp(2), w()])],
            vec![Series::Fin(vec![nat(1)])],
        )
        .unwrap();
        let inner = MapSpec::permute(vec![1, 0]).unwrap();
        let outer = MapSpec::MoveFront(vec![nat(2)]);
        let m = MapSpec::compose(outer.clone(), inner.clone());
        let direct = outer.apply(&inner.apply(&s).unwrap()).unwrap();
        let composed = m.apply(&s).unwrap();
        for k in 0..10u64 {
            assert_eq!(
                composed.term_at(&nat(k)).unwrap(),
                direct.term_at(&nat(k)).unwrap()
            );
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(MapSpec::Permute(vec![1, 0]).to_string(), "permute([1,0])");
        assert_eq!(
            MapSpec::MoveFront(vec![nat(3), w().succ()]).to_string(),
            "movefront([3,w+1])"
        );
        assert_eq!(
            MapSpec::mask(vec![false, true], vec![true, false])
                .unwrap()
                .to_string(),
            "mask([0,1];[1,0])"
        );
        assert_eq!(
            MapSpec::repeat(vec![], vec![Count::Finite(2), Count::Omega])
                .unwrap()
                .to_string(),
            "repeat([];[2,w])"
        );
        let m = MapSpec::compose(
            MapSpec::Permute(vec![1, 0]),
            MapSpec::mask(vec![], vec![true, false]).unwrap(),
        );
        assert_eq!(m.to_string(), "mask([];[1,0]) ; permute([1,0])");
    }
}
