//! `ord`: command-line front end for the ordinal series engine.
//!
//! A thin adapter: every verb parses its inputs, delegates to the library,
//! and formats the result. Exit codes: 0 success, 1 parse error, 2 domain
//! error, 3 verification mismatch.

use clap::{Parser, Subcommand, ValueEnum};
use ord_core::enumerate::{
    classify_remainder, enum_bijective_omega, enum_bijective_omega2, enum_injective_bounded,
    enum_map_bounded, remainder_triple, EnumerationResult,
};
use ord_core::oracle::differential_run;
use ord_core::rearrange::{Finiteness, ImageClass, MapKind};
use ord_core::{
    parse_mapspec, parse_ordinal, parse_series, MapError, MapSpec, Ordinal, OrdinalError,
    ParseError, Series, SeriesError,
};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ord",
    about = "Exact ordinal arithmetic and transfinite series rearrangement",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    /// Bijective re-indexings.
    Bij,
    /// Injective re-indexings, explored to the bound.
    Inj,
    /// Arbitrary re-indexings, explored to the bound.
    Map,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an ordinal expression to Cantor normal form.
    Eval { expr: String },
    /// Sum a series in its given order.
    Sum { series: String },
    /// The remainder: the least tail sum of a series.
    Psi { series: String },
    /// Every tail sum, the minimum, and a witness position.
    Tails { series: String },
    /// Enumerate reachable sums under a class of re-indexings.
    Enum {
        #[arg(long = "type", value_enum)]
        kind: EnumKind,
        /// Exploration bound for inj/map (default 3).
        #[arg(long)]
        bound: Option<usize>,
        series: String,
    },
    /// Classify a map spec against a series.
    Classify {
        mapspec: String,
        #[arg(long)]
        series: String,
    },
    /// Differential check: structural enumeration versus the brute-force
    /// family oracle. Exits 3 when the oracle finds a missing sum.
    Verify {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        series: String,
    },
    /// Explain the decomposition behind a series' sum set.
    Explain { series: String },
}

enum CliError {
    Parse(String),
    Domain(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<OrdinalError> for CliError {
    fn from(e: OrdinalError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Inline text, or the contents of a file when the argument is `@path`.
fn read_arg(arg: &str) -> Result<String, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn series_arg(arg: &str) -> Result<Series, CliError> {
    Ok(parse_series(read_arg(arg)?.as_str())?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((output, code)) => {
            print!("{output}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(String, u8), CliError> {
    match command {
        Command::Eval { expr } => {
            let o = parse_ordinal(read_arg(&expr)?.as_str())?;
            Ok((format!("{o}\n"), 0))
        }
        Command::Sum { series } => {
            let s = series_arg(&series)?;
            Ok((format!("{}\n", s.total_sum()), 0))
        }
        Command::Psi { series } => {
            let s = series_arg(&series)?;
            Ok((format!("{}\n", s.psi()), 0))
        }
        Command::Tails { series } => {
            let s = series_arg(&series)?;
            let report = s.tail_report()?;
            let values = report
                .values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            Ok((
                format!(
                    "values: {values}\nminimum: {}\nwitness: {}\n",
                    report.minimum, report.witness
                ),
                0,
            ))
        }
        Command::Enum {
            kind,
            bound,
            series,
        } => {
            let s = series_arg(&series)?;
            let result = run_enum(kind, bound, &s)?;
            Ok((result.to_report(), 0))
        }
        Command::Classify { mapspec, series } => {
            let m = parse_mapspec(read_arg(&mapspec)?.as_str())?;
            let s = series_arg(&series)?;
            Ok((classify_text(&m, &s)?, 0))
        }
        Command::Verify { depth, series } => {
            let s = series_arg(&series)?;
            let report = differential_run(&s, depth)?;
            let code = if report.counterexample.is_some() { 3 } else { 0 };
            Ok((report.to_report(), code))
        }
        Command::Explain { series } => {
            let s = series_arg(&series)?;
            Ok((explain_text(&s)?, 0))
        }
    }
}

fn run_enum(
    kind: EnumKind,
    bound: Option<usize>,
    s: &Series,
) -> Result<EnumerationResult, CliError> {
    let bound = bound.unwrap_or(3);
    Ok(match kind {
        EnumKind::Bij => {
            if s.flatten_omega().is_ok() {
                enum_bijective_omega(s)?
            } else {
                enum_bijective_omega2(s)?
            }
        }
        EnumKind::Inj => enum_injective_bounded(s, bound)?,
        EnumKind::Map => enum_map_bounded(s, bound)?,
    })
}

fn classify_text(m: &MapSpec, s: &Series) -> Result<String, CliError> {
    let mut out = String::new();
    let kind = m.kind();
    let kind_name = match kind {
        MapKind::Bijection => "bijection",
        MapKind::Injection => "injection",
        MapKind::General => "general",
    };
    writeln!(out, "kind: {kind_name}").unwrap();

    let finiteness = |f: Finiteness| match f {
        Finiteness::Finite => "finite",
        Finiteness::Infinite => "infinite",
    };
    if s.split_two_blocks().is_ok() && kind == MapKind::Bijection {
        let cross = m.ab_classify()?;
        writeln!(
            out,
            "crossings from first block: {}",
            finiteness(cross.from_first)
        )
        .unwrap();
        writeln!(
            out,
            "crossings from second block: {}",
            finiteness(cross.from_second)
        )
        .unwrap();
        writeln!(out, "remainder: {}", classify_remainder(s, m)?).unwrap();
    }
    if s.flatten_omega().is_ok() && kind != MapKind::General {
        let image = match m.image_class()? {
            ImageClass::CofiniteImage => "cofinite",
            ImageClass::CoinfiniteImage => "coinfinite",
        };
        writeln!(out, "image: {image}").unwrap();
    }
    let applied = m.apply(s)?;
    writeln!(out, "applied sum: {}", applied.total_sum()).unwrap();
    writeln!(out, "applied psi: {}", applied.psi()).unwrap();
    Ok(out)
}

fn explain_text(s: &Series) -> Result<String, CliError> {
    let mut out = String::new();
    writeln!(out, "order type: {}", s.order_type()).unwrap();
    if s.flatten_omega().is_ok() {
        writeln!(out, "psi: {}", s.psi()).unwrap();
        let exceptional = s.exceptional_multiset()?;
        if exceptional.is_empty() {
            writeln!(out, "exceptional: none").unwrap();
        } else {
            let listed = exceptional
                .iter()
                .map(|e| format!("{} at {}", e.value, e.position))
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(out, "exceptional: {listed}").unwrap();
        }
        let result = enum_bijective_omega(s)?;
        writeln!(out, "complete: {}", result.complete).unwrap();
        let positions: Vec<Ordinal> = exceptional
            .iter()
            .map(|e| Ordinal::from_nat(e.position as u64))
            .collect();
        for sw in &result.sums {
            let ordering = ordering_of(&sw.witness, &positions, s);
            writeln!(out, "{}\tordering: {}\t{}", sw.sum, ordering, sw.witness).unwrap();
        }
    } else if s.split_two_blocks().is_ok() {
        let triple = remainder_triple(s)?;
        writeln!(
            out,
            "remainders: first {}, second {}, interleaved {}",
            triple.first, triple.second, triple.interleaved
        )
        .unwrap();
        let result = enum_bijective_omega2(s)?;
        writeln!(out, "complete: {}", result.complete).unwrap();
        for sw in &result.sums {
            writeln!(out, "{}\t{}", sw.sum, sw.witness).unwrap();
        }
    } else {
        writeln!(out, "total sum: {}", s.total_sum()).unwrap();
        writeln!(out, "psi: {}", s.psi()).unwrap();
    }
    Ok(out)
}

/// The exceptional ordering a front-move witness realizes: the moved
/// positions first, then the remaining exceptional positions in place.
fn ordering_of(witness: &MapSpec, exceptional_positions: &[Ordinal], s: &Series) -> String {
    let moved: Vec<Ordinal> = match witness {
        MapSpec::MoveFront(src) => src.clone(),
        _ => vec![],
    };
    let mut order: Vec<Ordinal> = moved
        .iter()
        .filter(|p| exceptional_positions.contains(p))
        .cloned()
        .collect();
    for p in exceptional_positions {
        if !order.contains(p) {
            order.push(p.clone());
        }
    }
    if order.is_empty() {
        return "(empty)".into();
    }
    order
        .iter()
        .map(|p| s.term_at(p).map(|v| v.to_string()).unwrap_or_default())
        .collect::<Vec<_>>()
        .join(",")
}
