//! Enumeration of the sums reachable by re-indexing a series.
//!
//! For an `w`-series the bijective sum set is finite and computed exactly:
//! every rearranged sum is an ordering of the exceptional terms followed by
//! the invariant remainder, because each core term is dominated cofinally
//! and therefore absorbed by every tail. For two-block (`w*2`) series the
//! sums are enumerated through the remainder decomposition `b + m_i + g +
//! m_j` over the three block remainders; injective and arbitrary
//! re-indexings are explored to a caller-supplied bound.
//!
//! Every emitted sum carries a witness [`MapSpec`], and every witness is
//! re-verified by applying it and summing before the sum is admitted.

use crate::ordinal::Ordinal;
use crate::rearrange::{
    dup, omega2_series, Count, CrossClassification, Finiteness, MapError, MapSpec,
};
use crate::series::{FlatOmega, OrdinalSet, Series, SeriesError, Support};
use std::collections::{BTreeMap, HashMap};

/// One reachable sum together with a verified witness map. `via_dup`
/// marks witnesses that apply to the duplicated series rather than the
/// original (used by the arbitrary-map enumeration).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumWitness {
    pub sum: Ordinal,
    pub witness: MapSpec,
    pub via_dup: bool,
}

/// The result of a sum-set enumeration: deduplicated sums in ascending
/// order, each with a witness. `complete` is true only when the emitted
/// set provably equals the full sum set; bounded explorations leave it
/// false and record the bound used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub sums: Vec<SumWitness>,
    pub complete: bool,
    pub bound: Option<usize>,
}

impl EnumerationResult {
    pub fn sum_set(&self) -> OrdinalSet {
        self.sums.iter().map(|s| s.sum.clone()).collect()
    }

    pub fn contains(&self, sum: &Ordinal) -> bool {
        self.sums.iter().any(|s| &s.sum == sum)
    }

    /// Line-oriented report: `complete:` and `bound:` headers, then one
    /// `sum<TAB>witness` line per element, sums ascending.
    pub fn to_report(&self) -> String {
        let mut out = format!("complete: {}\n", self.complete);
        if let Some(b) = self.bound {
            out.push_str(&format!("bound: {b}\n"));
        }
        for sw in &self.sums {
            let prefix = if sw.via_dup { "dup:" } else { "" };
            out.push_str(&format!("{}\t{}{}\n", sw.sum, prefix, sw.witness));
        }
        out
    }

    fn from_map(
        by_sum: BTreeMap<Ordinal, (MapSpec, bool)>,
        complete: bool,
        bound: Option<usize>,
    ) -> Self {
        EnumerationResult {
            sums: by_sum
                .into_iter()
                .map(|(sum, (witness, via_dup))| SumWitness {
                    sum,
                    witness,
                    via_dup,
                })
                .collect(),
            complete,
            bound,
        }
    }
}

/// The three remainders of a two-block series: of the first block, of the
/// second block, and of the even/odd interleaving, each with the series it
/// is the remainder of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderTriple {
    pub first: Ordinal,
    pub second: Ordinal,
    pub interleaved: Ordinal,
    pub first_series: Series,
    pub second_series: Series,
    pub interleaved_series: Series,
}

impl RemainderTriple {
    pub fn values(&self) -> OrdinalSet {
        [&self.first, &self.second, &self.interleaved]
            .into_iter()
            .cloned()
            .collect()
    }
}

/// Exact bijective sum set of an `w`-series: `{ ordering of the
/// exceptional multiset + remainder }`, with a front-move witness per sum.
pub fn enum_bijective_omega(s: &Series) -> Result<EnumerationResult, MapError> {
    s.flatten_omega()?;
    let exceptional = s.exceptional_multiset()?;
    if exceptional.len() > MAX_EXCEPTIONAL_ENUM {
        return Err(MapError::Inapplicable(format!(
            "more than {MAX_EXCEPTIONAL_ENUM} exceptional terms; the ordering space is too large"
        )));
    }
    let psi = s.psi();
    let mut by_sum: BTreeMap<Ordinal, (MapSpec, bool)> = BTreeMap::new();
    for perm in permutations_lex(exceptional.len()) {
        let mut sum = Ordinal::zero();
        for &i in &perm {
            sum = sum.add(&exceptional[i].value);
        }
        sum = sum.add(&psi);
        if by_sum.contains_key(&sum) {
            continue;
        }
        let tuple: Vec<Ordinal> = perm
            .iter()
            .map(|&i| Ordinal::from_nat(exceptional[i].position as u64))
            .collect();
        let witness = MapSpec::MoveFront(normalize_front_tuple(tuple));
        if verify_witness(&witness, s, &sum) {
            by_sum.insert(sum, (witness, false));
        } else {
            debug_assert!(false, "front-move witness failed for {sum}");
        }
    }
    Ok(EnumerationResult::from_map(by_sum, true, None))
}

/// The remainders of the two blocks and of the even/odd interleaving.
pub fn remainder_triple(s: &Series) -> Result<RemainderTriple, MapError> {
    let (b1, b2) = s.split_two_blocks()?;
    let first_series = b1.to_series();
    let second_series = b2.to_series();
    let interleaved_series = MapSpec::EvenOdd.apply(s)?;
    Ok(RemainderTriple {
        first: first_series.psi(),
        second: second_series.psi(),
        interleaved: interleaved_series.psi(),
        first_series,
        second_series,
        interleaved_series,
    })
}

/// The remainder class a bijection of a two-block series falls into,
/// decided by its cross-block traffic: infinite crossings from the first
/// block only gives the first-block remainder, from the second block only
/// the second, and from both the interleaved remainder.
pub fn classify_remainder(s: &Series, m: &MapSpec) -> Result<Ordinal, MapError> {
    let triple = remainder_triple(s)?;
    let cross = m.ab_classify()?;
    Ok(match cross {
        CrossClassification {
            from_first: Finiteness::Finite,
            from_second: Finiteness::Infinite,
        } => triple.second,
        CrossClassification {
            from_first: Finiteness::Infinite,
            from_second: Finiteness::Finite,
        } => triple.first,
        CrossClassification {
            from_first: Finiteness::Infinite,
            from_second: Finiteness::Infinite,
        } => triple.interleaved,
        CrossClassification {
            from_first: Finiteness::Finite,
            from_second: Finiteness::Finite,
        } => {
            return Err(MapError::Inapplicable(
                "a bijection cannot source the second block finitely from both blocks".into(),
            ))
        }
    })
}

/// The admissible remainder pairs: together the two trailing remainders
/// must cover both source blocks (1 covers the first, 2 the second, 3
/// both), which rules out (1,1) and (2,2).
const REMAINDER_PAIRS: [(u8, u8); 7] = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (3, 3)];

/// Largest exceptional multiset the ordering enumerations accept.
const MAX_EXCEPTIONAL_ENUM: usize = 8;

/// Bijective sum enumeration for a two-block series, through the
/// decomposition: an ordering of one part of the exceptional multiset, a
/// first-destination remainder, an ordering of the other part, and a
/// second-destination remainder, over the admissible remainder pairs.
///
/// Every candidate sum is admitted only with a verified witness, searched
/// among front moves composed with the block combinators; candidates with
/// no in-language witness are dropped. The result is therefore sound, but
/// `complete` is left false: for two-block series the full bijective sum
/// set can be infinite (finitely many copies of a core value survive in
/// front of a smaller trailing remainder, as in moving two `w` terms of a
/// (1s | ws) series behind the swapped blocks), so no finite enumeration
/// closes it.
pub fn enum_bijective_omega2(s: &Series) -> Result<EnumerationResult, MapError> {
    let (b1, b2) = s.split_two_blocks()?;
    let triple = remainder_triple(s)?;
    let remainder = |i: u8| -> &Ordinal {
        match i {
            1 => &triple.first,
            2 => &triple.second,
            _ => &triple.interleaved,
        }
    };

    // Global exceptional occurrences: prefix terms dominating every
    // periodic value of both blocks.
    let max_core = b1
        .period
        .iter()
        .chain(b2.period.iter())
        .max()
        .expect("periods nonempty")
        .clone();
    let mut values: Vec<Ordinal> = Vec::new();
    for v in b1.prefix.iter().chain(b2.prefix.iter()) {
        if *v > max_core {
            values.push(v.clone());
        }
    }
    let n = values.len();
    if n > MAX_EXCEPTIONAL_ENUM {
        return Err(MapError::Inapplicable(format!(
            "more than {MAX_EXCEPTIONAL_ENUM} exceptional terms; the partition space is too large"
        )));
    }

    // Candidate sums from the decomposition formula.
    let mut candidates: OrdinalSet = OrdinalSet::new();
    for assignment in 0u32..(1 << n) {
        let part1: Vec<usize> = (0..n).filter(|k| assignment & (1 << k) == 0).collect();
        let part2: Vec<usize> = (0..n).filter(|k| assignment & (1 << k) != 0).collect();
        for p1 in permutations_lex(part1.len()) {
            let sigma1 = p1
                .iter()
                .fold(Ordinal::zero(), |a, &i| a.add(&values[part1[i]]));
            for p2 in permutations_lex(part2.len()) {
                let sigma2 = p2
                    .iter()
                    .fold(Ordinal::zero(), |a, &i| a.add(&values[part2[i]]));
                for (i, j) in REMAINDER_PAIRS {
                    let sum = sigma1.add(remainder(i)).add(&sigma2).add(remainder(j));
                    candidates.insert(sum);
                }
            }
        }
    }

    let table = omega2_witness_table(s, &b1, &b2);
    let mut by_sum: BTreeMap<Ordinal, (MapSpec, bool)> = BTreeMap::new();
    for sum in candidates {
        if let Some(witness) = table.get(&sum) {
            debug_assert!(verify_witness(witness, s, &sum));
            by_sum.insert(sum, (witness.clone(), false));
        }
    }
    Ok(EnumerationResult::from_map(by_sum, false, None))
}

/// Evaluates front moves of prefix occurrences composed with the block
/// combinators, keyed by the achieved sum. Entries are ordered by fewer
/// moves, then lexicographically smaller source tuple, then the fixed
/// combinator order, so the recorded witness for a sum is the smallest
/// found.
fn omega2_witness_table(s: &Series, b1: &FlatOmega, b2: &FlatOmega) -> BTreeMap<Ordinal, MapSpec> {
    let kleins: [Option<MapSpec>; 4] = [
        None,
        Some(MapSpec::SwapBlocks),
        Some(MapSpec::EvenOdd),
        Some(MapSpec::compose(MapSpec::EvenOdd, MapSpec::SwapBlocks)),
    ];

    // A tag series mirroring the block shapes: prefix positions carry
    // unique tags so their images under each block combinator can be
    // located without re-deriving the combinator's position algebra.
    let tag = |k: usize| Ordinal::from_nat(k as u64 + 1);
    let t1 = FlatOmega {
        prefix: (0..b1.prefix.len()).map(tag).collect(),
        period: vec![Ordinal::zero(); b1.period.len()],
    };
    let t2 = FlatOmega {
        prefix: (0..b2.prefix.len())
            .map(|k| tag(b1.prefix.len() + k))
            .collect(),
        period: vec![Ordinal::zero(); b2.period.len()],
    };
    let tag_series = omega2_series(&t1, &t2);
    // Bounded move pool, exceptional-bearing prefixes first come first.
    let total_tags = (b1.prefix.len() + b2.prefix.len()).min(8);

    let mut entries: Vec<(usize, Vec<Ordinal>, usize, MapSpec)> = Vec::new();
    for (ki, klein) in kleins.iter().enumerate() {
        let image = match klein {
            None => tag_series.clone(),
            Some(k) => k.apply(&tag_series).expect("combinator applies"),
        };
        let (i1, i2) = image.split_two_blocks().expect("image is two blocks");
        let mut pool: Vec<Ordinal> = Vec::new();
        for t in 0..total_tags {
            let tag_value = tag(t);
            let pos = i1
                .prefix
                .iter()
                .position(|v| *v == tag_value)
                .map(|k| Ordinal::from_nat(k as u64))
                .or_else(|| {
                    i2.prefix
                        .iter()
                        .position(|v| *v == tag_value)
                        .map(|k| Ordinal::omega().add(&Ordinal::from_nat(k as u64)))
                });
            if let Some(p) = pos {
                pool.push(p);
            }
        }
        for len in 0..=pool.len() {
            for tuple in ordered_tuples_lex(&pool, len) {
                let m = match (tuple.is_empty(), klein) {
                    (true, None) => MapSpec::identity(),
                    (true, Some(k)) => k.clone(),
                    (false, None) => MapSpec::MoveFront(tuple.clone()),
                    (false, Some(k)) => {
                        MapSpec::compose(MapSpec::MoveFront(tuple.clone()), k.clone())
                    }
                };
                entries.push((tuple.len(), tuple, ki, m));
            }
        }
    }
    entries.sort_by(|a, b| (a.0, &a.1, a.2).cmp(&(b.0, &b.1, b.2)));

    let mut table = BTreeMap::new();
    for (_, _, _, m) in entries {
        if let Ok(applied) = m.apply(s) {
            table.entry(applied.total_sum()).or_insert(m);
        }
    }
    table
}

/// A retention plan for one distinct value under the injective
/// enumeration: the kept counts worth enumerating.
#[derive(Debug, Clone)]
struct ValuePlan {
    value: Ordinal,
    /// `0..=bound` for infinitely supported values, `{0..=min(bound, m)}
    /// plus the keep-all option `m` for finite support `m`.
    options: Vec<usize>,
}

/// Bounded injective sum exploration of an `w`-series.
///
/// A retention pattern keeps, for each distinct value, either all of its
/// occurrences or at most `bound` of them; at least one infinitely
/// supported value must be kept whole so the retained subseries is still
/// an `w`-series. The sums of the retained series' bijective enumerations
/// are collected, each witnessed by a mask composed with a front move.
/// The sum set is monotone non-decreasing in `bound`.
pub fn enum_injective_bounded(s: &Series, bound: usize) -> Result<EnumerationResult, MapError> {
    let flat = s.flatten_omega()?;
    let mut by_sum: BTreeMap<Ordinal, (MapSpec, bool)> = BTreeMap::new();

    let values: Vec<(Ordinal, Support)> = flat
        .distinct_values()
        .into_iter()
        .map(|v| {
            let support = s.value_support(&v);
            (v, support)
        })
        .collect();

    // Candidate tail shapes: one per degree among infinitely supported
    // values (keeping whole every such value up to that degree), plus the
    // all-zero tail when 0 occurs infinitely often. Keeping or dropping
    // values that the tail absorbs never changes a sum, so these tail
    // degrees canonicalize the whole pattern space.
    let mut tail_degrees: Vec<Option<Ordinal>> = Vec::new();
    for (v, support) in &values {
        if *support != Support::Infinite {
            continue;
        }
        let d = if v.is_zero() {
            None
        } else {
            Some(v.degree().expect("nonzero").clone())
        };
        if !tail_degrees.contains(&d) {
            tail_degrees.push(d);
        }
    }
    tail_degrees.sort();

    for tail_degree in &tail_degrees {
        let psi = match tail_degree {
            None => Ordinal::zero(),
            Some(d) => Ordinal::omega().pow(&d.succ()).expect("within depth bound"),
        };
        // Values whose kept copies can survive in front of this tail.
        let relevant: Vec<ValuePlan> = values
            .iter()
            .filter(|(v, _)| {
                !v.is_zero()
                    && match tail_degree {
                        None => true,
                        Some(d) => v.degree().expect("nonzero") > d,
                    }
            })
            .map(|(v, support)| {
                let options = match support {
                    Support::Infinite => (0..=bound).collect(),
                    Support::Finite(m) => {
                        let mut o: Vec<usize> = (0..=bound.min(*m)).collect();
                        if !o.contains(m) {
                            o.push(*m);
                        }
                        o
                    }
                    Support::Absent => unreachable!("distinct values occur"),
                };
                ValuePlan {
                    value: v.clone(),
                    options,
                }
            })
            .collect();

        let mut sums = OrderingSums::new(relevant.iter().map(|p| p.value.clone()).collect(), psi);
        let mut vector = vec![0usize; relevant.len()];
        enumerate_vectors(&relevant, 0, &mut vector, &mut |counts| {
            for (sum, ordering) in sums.sums_of(counts) {
                if by_sum.contains_key(&sum) {
                    continue;
                }
                if let Some(witness) =
                    retention_witness(&flat, &values, tail_degree, &relevant, counts, &ordering)
                {
                    if verify_witness(&witness, s, &sum) {
                        by_sum.insert(sum, (witness, false));
                    } else {
                        debug_assert!(false, "retention witness failed for {sum}");
                    }
                }
            }
        });
    }
    Ok(EnumerationResult::from_map(by_sum, false, Some(bound)))
}

fn enumerate_vectors(
    plans: &[ValuePlan],
    idx: usize,
    vector: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if idx == plans.len() {
        f(vector);
        return;
    }
    let options = plans[idx].options.clone();
    for k in options {
        vector[idx] = k;
        enumerate_vectors(plans, idx + 1, vector, f);
    }
}

/// Distinct ordered sums of exact multisets over a fixed value list, each
/// with one witness ordering (as value indices), memoized over count
/// vectors. The `tail` is appended after every ordering.
struct OrderingSums {
    values: Vec<Ordinal>,
    tail: Ordinal,
    memo: HashMap<Vec<usize>, BTreeMap<Ordinal, Vec<usize>>>,
}

impl OrderingSums {
    fn new(values: Vec<Ordinal>, tail: Ordinal) -> Self {
        OrderingSums {
            values,
            tail,
            memo: HashMap::new(),
        }
    }

    fn sums_of(&mut self, counts: &[usize]) -> BTreeMap<Ordinal, Vec<usize>> {
        if let Some(hit) = self.memo.get(counts) {
            return hit.clone();
        }
        let mut out: BTreeMap<Ordinal, Vec<usize>> = BTreeMap::new();
        if counts.iter().all(|&c| c == 0) {
            out.insert(self.tail.clone(), vec![]);
        } else {
            for i in 0..counts.len() {
                if counts[i] == 0 {
                    continue;
                }
                let mut rest = counts.to_vec();
                rest[i] -= 1;
                for (sub_sum, sub_ord) in self.sums_of(&rest) {
                    let sum = self.values[i].add(&sub_sum);
                    out.entry(sum).or_insert_with(|| {
                        let mut o = vec![i];
                        o.extend(&sub_ord);
                        o
                    });
                }
            }
        }
        self.memo.insert(counts.to_vec(), out.clone());
        out
    }
}

/// Builds the injection witness for a retention pattern: a mask keeping
/// the whole-tail values everywhere and the first `counts[i]` occurrences
/// of each surviving value, composed with a front move realizing the
/// ordering.
fn retention_witness(
    flat: &FlatOmega,
    values: &[(Ordinal, Support)],
    tail_degree: &Option<Ordinal>,
    relevant: &[ValuePlan],
    counts: &[usize],
    ordering: &[usize],
) -> Option<MapSpec> {
    let keep_whole = |v: &Ordinal| -> bool {
        let infinite = values
            .iter()
            .any(|(w, sup)| w == v && *sup == Support::Infinite);
        if !infinite {
            return false;
        }
        match tail_degree {
            None => v.is_zero(),
            Some(d) => v.is_zero() || v.degree().expect("nonzero") <= d,
        }
    };

    let period_len = flat.period.len();
    let mut used: Vec<usize> = vec![0; relevant.len()];
    let mut bits: Vec<bool> = Vec::new();
    let mut survivor_positions: Vec<Vec<usize>> = vec![Vec::new(); relevant.len()];
    let mut kept_so_far = 0usize;
    let mut k = 0usize;
    let scan_cap =
        flat.prefix.len() + period_len * (2 + counts.iter().sum::<usize>() + flat.prefix.len());
    loop {
        let exhausted = used.iter().zip(counts.iter()).all(|(u, c)| u >= c);
        let at_boundary = k >= flat.prefix.len() && (k - flat.prefix.len()) % period_len == 0;
        if exhausted && at_boundary {
            break;
        }
        if k > scan_cap {
            // A surviving count exceeds the value's reachable occurrences;
            // the plan options make this impossible.
            debug_assert!(false, "retention scan overran");
            return None;
        }
        let v = flat.term(k);
        let keep = if keep_whole(v) {
            true
        } else if let Some(i) = relevant.iter().position(|p| &p.value == v) {
            if used[i] < counts[i] {
                used[i] += 1;
                survivor_positions[i].push(kept_so_far);
                true
            } else {
                false
            }
        } else {
            false
        };
        bits.push(keep);
        if keep {
            kept_so_far += 1;
        }
        k += 1;
    }
    let period_bits: Vec<bool> = flat.period.iter().map(|v| keep_whole(v)).collect();
    if !period_bits.contains(&true) {
        return None;
    }
    let mask = MapSpec::Mask {
        prefix: bits,
        period: period_bits,
    };

    let mut next_use: Vec<usize> = vec![0; relevant.len()];
    let mut front: Vec<Ordinal> = Vec::new();
    for &i in ordering {
        let slot = next_use[i];
        next_use[i] += 1;
        let pos = *survivor_positions[i].get(slot)?;
        front.push(Ordinal::from_nat(pos as u64));
    }
    let front = normalize_front_tuple(front);
    Some(if front.is_empty() {
        mask
    } else {
        MapSpec::compose(MapSpec::MoveFront(front), mask)
    })
}

/// Bounded exploration of the sums reachable by arbitrary re-indexings:
/// injective exploration of the series itself, injective exploration of
/// its duplicated companion (whose injective sums dominate every
/// arbitrary-map sum), and a deterministic sample of repeat maps.
pub fn enum_map_bounded(s: &Series, bound: usize) -> Result<EnumerationResult, MapError> {
    let mut by_sum: BTreeMap<Ordinal, (MapSpec, bool)> = BTreeMap::new();
    for sw in enum_injective_bounded(s, bound)?.sums {
        by_sum.entry(sw.sum).or_insert((sw.witness, false));
    }
    let duplicated = dup(s);
    for sw in enum_injective_bounded(&duplicated, bound)?.sums {
        by_sum.entry(sw.sum).or_insert((sw.witness, true));
    }
    for m in repeat_samples(s, bound)? {
        let applied = m.apply(s)?;
        by_sum.entry(applied.total_sum()).or_insert((m, false));
    }
    Ok(EnumerationResult::from_map(by_sum, false, Some(bound)))
}

/// Deterministic repeat-map samples denoting genuine total re-indexings:
/// eventually-constant maps (one term repeated forever, nothing after),
/// uniform finite repetitions, and single-term drops.
fn repeat_samples(s: &Series, bound: usize) -> Result<Vec<MapSpec>, MapError> {
    let flat = s.flatten_omega()?;
    let mut out = Vec::new();
    let horizon = (flat.prefix.len() + flat.period.len()).min(4);
    for p in 0..=horizon {
        let mut prefix = vec![Count::Finite(1); p];
        prefix.push(Count::Omega);
        out.push(MapSpec::repeat(prefix, vec![Count::Finite(0)])?);
    }
    for c in 1..=bound.max(1).min(3) as u64 {
        out.push(MapSpec::repeat(vec![], vec![Count::Finite(c)])?);
    }
    for p in 0..horizon {
        let mut prefix = vec![Count::Finite(1); p];
        prefix.push(Count::Finite(0));
        out.push(MapSpec::repeat(prefix, vec![Count::Finite(1)])?);
    }
    Ok(out)
}

/// Per-segment reduction of a composite series: bounded injective sums of
/// each `w`-block, the zero-padded `w`-series of their disjoint union, its
/// bounded injective sums, and (for two-block series) the bijective sums
/// of the whole series with differences in both directions. No equality is
/// asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentReduction {
    pub segment_sums: Vec<OrdinalSet>,
    pub union_series: Series,
    pub union_sums: OrdinalSet,
    pub bijective_sums: Option<OrdinalSet>,
    pub bound: usize,
}

impl SegmentReduction {
    pub fn to_report(&self) -> String {
        let fmt_set = |set: &OrdinalSet| -> String {
            set.iter()
                .map(|o| o.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        out.push_str(&format!("segments: {}\n", self.segment_sums.len()));
        out.push_str(&format!("bound: {}\n", self.bound));
        for (i, set) in self.segment_sums.iter().enumerate() {
            out.push_str(&format!("segment {i} injective sums: {}\n", fmt_set(set)));
        }
        out.push_str(&format!("union series: {}\n", self.union_series));
        out.push_str(&format!(
            "union injective sums: {}\n",
            fmt_set(&self.union_sums)
        ));
        if let Some(bij) = &self.bijective_sums {
            out.push_str(&format!("bijective sums: {}\n", fmt_set(bij)));
            let missing: OrdinalSet = bij.difference(&self.union_sums).cloned().collect();
            let extra: OrdinalSet = self.union_sums.difference(bij).cloned().collect();
            out.push_str(&format!("bijective minus union: {}\n", fmt_set(&missing)));
            out.push_str(&format!("union minus bijective: {}\n", fmt_set(&extra)));
        }
        out
    }
}

/// Splits a composite (`w*k`, `k >= 2`) series into blocks, reduces each
/// block to its bounded injective sums, and compares the injective sums of
/// the zero-padded union series against the bijective sums of the
/// original.
pub fn segment_reduction(s: &Series, bound: usize) -> Result<SegmentReduction, MapError> {
    let blocks = s.split_blocks()?;
    if blocks.len() < 2 {
        return Err(MapError::Series(SeriesError::UnsupportedOrderType {
            expected: "a composite series of at least two blocks".into(),
            found: s.order_type().to_string(),
        }));
    }
    let mut segment_sums = Vec::new();
    let mut union_terms: Vec<Ordinal> = Vec::new();
    for b in &blocks {
        let sums = enum_injective_bounded(&b.to_series(), bound)?.sum_set();
        union_terms.extend(sums.iter().cloned());
        segment_sums.push(sums);
    }
    let union_series = FlatOmega {
        prefix: union_terms,
        period: vec![Ordinal::zero()],
    }
    .to_series();
    let union_sums = enum_injective_bounded(&union_series, bound)?.sum_set();
    let bijective_sums = if blocks.len() == 2 {
        Some(enum_bijective_omega2(s)?.sum_set())
    } else {
        None
    };
    Ok(SegmentReduction {
        segment_sums,
        union_series,
        union_sums,
        bijective_sums,
        bound,
    })
}

fn verify_witness(witness: &MapSpec, s: &Series, sum: &Ordinal) -> bool {
    witness
        .apply(s)
        .map(|applied| applied.total_sum() == *sum)
        .unwrap_or(false)
}

/// Permutations of `0..n` in lexicographic order.
pub(crate) fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in permutations_lex(n - 1) {
            for x in rest.iter_mut() {
                if *x >= first {
                    *x += 1;
                }
            }
            let mut p = vec![first];
            p.append(&mut rest);
            out.push(p);
        }
    }
    out
}

/// Ordered tuples of `len` distinct pool elements, lexicographic in pool
/// indices.
fn ordered_tuples_lex(pool: &[Ordinal], len: usize) -> Vec<Vec<Ordinal>> {
    fn rec(
        pool: &[Ordinal],
        len: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Ordinal>,
        out: &mut Vec<Vec<Ordinal>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            if !used[i] {
                used[i] = true;
                cur.push(pool[i].clone());
                rec(pool, len, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(pool, len, &mut vec![false; pool.len()], &mut Vec::new(), &mut out);
    out
}

/// Strips the reducible tail of a front-move tuple: moving the least
/// not-yet-moved position into the next slot is a no-op.
pub(crate) fn normalize_front_tuple(mut t: Vec<Ordinal>) -> Vec<Ordinal> {
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
