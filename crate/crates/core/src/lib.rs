//! Exact symbolic engine for ordinal arithmetic and transfinite series
//! rearrangement.
//!
//! The crate has three layers:
//!
//! - [`ordinal`]: arithmetic on ordinals below epsilon-zero in Cantor
//!   normal form — comparison, addition, multiplication, exponentiation,
//!   left subtraction, degree.
//! - [`series`] and [`rearrange`]: finitely-described transfinite
//!   sequences (order type, terms, tail sums, the remainder `psi`) and a
//!   combinator language of re-indexings (bijections, injections,
//!   arbitrary maps) that can be applied to them.
//! - [`enumerate`] and [`oracle`]: exact enumeration of the sums
//!   reachable by re-indexing an `w`- or `w*2`-series, with every emitted
//!   sum carrying a verified witness map, plus an independent brute-force
//!   oracle over canonical map families for differential checking.
//!
//! All values are immutable and every operation is a pure function, so
//! everything here can be shared freely across threads.

pub mod enumerate;
pub mod oracle;
pub mod ordinal;
pub mod rearrange;
pub mod series;
pub mod text;

pub use ordinal::{Ordinal, OrdinalError};
pub use rearrange::{Count, MapError, MapKind, MapSpec};
pub use series::{FlatOmega, OrdinalSet, Series, SeriesError, Support, TailReport};
pub use text::{parse_mapspec, parse_ordinal, parse_series, ParseError};
