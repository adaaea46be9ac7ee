//! Independent ground truth for the enumerators.
//!
//! [`oracle_sums`] evaluates every member of the canonical bijection
//! family by application and summation alone, sharing no code with the
//! structural enumeration formulas beyond the arithmetic core.
//! [`generate_instance`] produces deterministic random series for
//! differential corpora, and [`differential_run`] compares the oracle
//! set against the structural set, reporting the first counterexample
//! if the oracle ever finds a sum the enumerator misses.

use crate::enumerate::{enum_bijective_omega, enum_bijective_omega2, EnumerationResult, SumWitness};
use crate::ordinal::Ordinal;
use crate::rearrange::{canonical_family, omega2_series, MapError};
use crate::series::{FlatOmega, OrdinalSet, Series, SeriesError};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Shape of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockShape {
    Omega,
    Omega2,
}

/// Deterministic recipe for a random series: core values are drawn from
/// `{1, w, w*2, w^2}` with infinite support and exceptional terms are
/// drawn above every core degree with finite support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub seed: u64,
    /// Number of exceptional prefix terms (clamped to 5).
    pub max_exceptional: u32,
    /// Number of distinct core values (clamped to 1..=4).
    pub core_values: u32,
    pub block_shape: BlockShape,
}

fn core_palette() -> Vec<Ordinal> {
    vec![
        Ordinal::one(),
        Ordinal::omega(),
        Ordinal::omega().times(2),
        Ordinal::omega().mul(&Ordinal::omega()),
    ]
}

fn value_degree(v: &Ordinal) -> u64 {
    let d = v.degree().expect("palette values are nonzero");
    u64::try_from(d.as_nat().expect("palette degrees are finite")).expect("small degree")
}

/// One eventually periodic block: `exceptional` terms in front of an
/// odd-length core pattern. The period length is kept odd so that every
/// parity subsample still meets every core value cofinally, which keeps
/// even/odd interleavings faithful to the block's remainder structure.
fn generate_block(rng: &mut ChaCha8Rng, exceptional: u32, cores: &[Ordinal], above_degree: u64) -> FlatOmega {
    let mut period: Vec<Ordinal> = cores.to_vec();
    period.shuffle(rng);
    if period.len() % 2 == 0 {
        let extra = period[rng.gen_range(0..period.len())].clone();
        period.push(extra);
    }
    let mut prefix = Vec::new();
    for _ in 0..exceptional {
        let deg = above_degree + 1 + rng.gen_range(0..=1);
        let coeff = 1 + rng.gen_range(0..3u64);
        let mut v = Ordinal::omega()
            .pow(&Ordinal::from_nat(deg))
            .expect("small degree")
            .times(coeff);
        if rng.gen_bool(0.5) && deg > 0 {
            let low = Ordinal::omega()
                .pow(&Ordinal::from_nat(deg - 1))
                .expect("small degree")
                .times(1 + rng.gen_range(0..2u64));
            v = v.add(&low);
        }
        prefix.push(v);
    }
    FlatOmega { prefix, period }
}

/// Deterministic series for a given spec: same spec, same series.
pub fn generate_instance(spec: &InstanceSpec) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let exceptional = spec.max_exceptional.min(5);
    let n_cores = spec.core_values.clamp(1, 4) as usize;
    let palette = core_palette();
    let mut pick_cores = |rng: &mut ChaCha8Rng| -> Vec<Ordinal> {
        let mut idx: Vec<usize> = (0..palette.len()).collect();
        idx.shuffle(rng);
        idx[..n_cores].iter().map(|&i| palette[i].clone()).collect()
    };
    match spec.block_shape {
        BlockShape::Omega => {
            let cores = pick_cores(&mut rng);
            let above = cores.iter().map(value_degree).max().expect("cores nonempty");
            generate_block(&mut rng, exceptional, &cores, above).to_series()
        }
        BlockShape::Omega2 => {
            let cores1 = pick_cores(&mut rng);
            let cores2 = pick_cores(&mut rng);
            // Exceptional terms dominate the cores of both blocks, so the
            // global and per-block exceptional multisets coincide.
            let above = cores1
                .iter()
                .chain(cores2.iter())
                .map(value_degree)
                .max()
                .expect("cores nonempty");
            let k1 = rng.gen_range(0..=exceptional);
            let k2 = exceptional - k1;
            let b1 = generate_block(&mut rng, k1, &cores1, above);
            let b2 = generate_block(&mut rng, k2, &cores2, above);
            omega2_series(&b1, &b2)
        }
    }
}

/// Brute-force lower bound for the bijective sum set: every member of the
/// canonical family at the given depth is applied and summed. Sums are
/// deduplicated keeping the first witness in family order.
pub fn oracle_sums(s: &Series, depth: usize) -> Result<EnumerationResult, MapError> {
    let family = canonical_family(s, depth)?;
    let mut by_sum: BTreeMap<Ordinal, SumWitness> = BTreeMap::new();
    for m in family {
        let applied = m.apply(s)?;
        let sum = applied.total_sum();
        by_sum.entry(sum.clone()).or_insert(SumWitness {
            sum,
            witness: m,
            via_dup: false,
        });
    }
    Ok(EnumerationResult {
        sums: by_sum.into_values().collect(),
        complete: false,
        bound: Some(depth),
    })
}

/// Outcome of a differential comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Oracle and structural sets are equal.
    Equal,
    /// The oracle found strictly fewer sums (expected at low depth).
    OracleProperSubset,
    /// The oracle found a sum the structural enumerator misses. This
    /// direction must never fail; a counterexample is a defect.
    StructuralMissesOracle,
}

/// Oracle set versus structural set for one series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialReport {
    pub structural: EnumerationResult,
    pub oracle: EnumerationResult,
    pub verdict: Verdict,
    /// An oracle sum missing from the structural set, with its map.
    pub counterexample: Option<SumWitness>,
}

impl DifferentialReport {
    pub fn equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    /// The structural result's lines plus a `verdict:` line and an
    /// optional `counterexample:` line.
    pub fn to_report(&self) -> String {
        let mut out = self.structural.to_report();
        let verdict = match self.verdict {
            Verdict::Equal => "equal",
            Verdict::OracleProperSubset => "oracle-proper-subset",
            Verdict::StructuralMissesOracle => "structural-misses-oracle",
        };
        out.push_str(&format!("verdict: {verdict}\n"));
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("counterexample: {}\t{}\n", c.sum, c.witness));
        }
        out
    }
}

/// Runs the canonical-family oracle against the structural bijective
/// enumerator for an `w`- or two-block series.
pub fn differential_run(s: &Series, depth: usize) -> Result<DifferentialReport, MapError> {
    let structural = if s.flatten_omega().is_ok() {
        enum_bijective_omega(s)?
    } else if s.split_two_blocks().is_ok() {
        enum_bijective_omega2(s)?
    } else {
        return Err(MapError::Series(SeriesError::UnsupportedOrderType {
            expected: "w or w*2".into(),
            found: s.order_type().to_string(),
        }));
    };
    let oracle = oracle_sums(s, depth)?;
    let structural_set = structural.sum_set();
    let oracle_set: OrdinalSet = oracle.sum_set();
    let counterexample = oracle
        .sums
        .iter()
        .find(|sw| !structural_set.contains(&sw.sum))
        .cloned();
    let verdict = if counterexample.is_some() {
        Verdict::StructuralMissesOracle
    } else if oracle_set == structural_set {
        Verdict::Equal
    } else {
        Verdict::OracleProperSubset
    };
    Ok(DifferentialReport {
        structural,
        oracle,
        verdict,
        counterexample,
    })
}
