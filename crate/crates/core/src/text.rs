//! Parsers for the ordinal, series, and map-spec text formats.
//!
//! Grammar (whitespace ignored everywhere):
//!
//! ```text
//! ord    := sum ;  sum := prod ('+' prod)* ;  prod := atom ('*' nat)?
//! atom   := nat | 'w' ('^' '(' ord ')' | '^' nat)?
//! series := 'fin(' ordlist? ')' | 'cat(' '[' serieslist? ']' ';' '[' serieslist ']' ')'
//! map    := spec (';' spec)*          -- left-applied-first
//! spec   := permute([natlist]) | movefront([ordlist]) | evenodd()
//!         | swapblocks() | mask([bits];[bits]) | repeat([counts];[counts])
//! ```
//!
//! Ordinal input need not be in normal form: the parser folds the parsed
//! shape through exact arithmetic, so `w+w^2` is legal and denotes `w^2`.
//! The Unicode letter `ω` is accepted as an alias for `w` on input; output
//! always uses ASCII `w`.

use crate::ordinal::{Ordinal, OrdinalError};
use crate::rearrange::{Count, MapError, MapSpec};
use crate::series::{Series, SeriesError};
use num_bigint::BigUint;
use thiserror::Error;

/// A parse failure with its character position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Expected {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("invalid input at {pos}: {message}")]
    Invalid { pos: usize, message: String },
}

impl ParseError {
    fn invalid(pos: usize, message: impl Into<String>) -> Self {
        ParseError::Invalid {
            pos,
            message: message.into(),
        }
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::Expected {
                pos: self.pos,
                expected: format!("`{c}`"),
                found: self.found(),
            })
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(ParseError::Expected {
                pos: self.pos,
                expected: "end of input".into(),
                found: self.found(),
            })
        }
    }

    fn nat(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                digits.push(*c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(ParseError::Expected {
                pos: start,
                expected: "a natural number".into(),
                found: self.found(),
            });
        }
        Ok(digits.parse().expect("digits parse as BigUint"))
    }

    /// Lowercase identifier (ASCII letters).
    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut name = String::new();
        while let Some(c) = self.chars.get(self.pos) {
            if c.is_ascii_alphabetic() {
                name.push(*c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(ParseError::Expected {
                pos: start,
                expected: "an identifier".into(),
                found: self.found(),
            });
        }
        Ok((start, name))
    }

    fn ordinal_err(&self, e: OrdinalError) -> ParseError {
        ParseError::invalid(self.pos, e.to_string())
    }
}

/// Parses an ordinal expression and normalizes it to Cantor normal form.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    let mut cur = Cursor::new(text);
    let o = ordinal_expr(&mut cur)?;
    cur.expect_end()?;
    Ok(o)
}

fn ordinal_expr(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    let mut acc = ordinal_prod(cur)?;
    while cur.eat('+') {
        let rhs = ordinal_prod(cur)?;
        acc = acc.add(&rhs);
    }
    Ok(acc)
}

fn ordinal_prod(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    let mut acc = ordinal_atom(cur)?;
    if cur.eat('*') {
        let n = cur.nat()?;
        acc = acc.mul(&Ordinal::from_nat(n));
    }
    Ok(acc)
}

fn ordinal_atom(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(cur.nat()?)),
        Some('w') | Some('ω') => {
            cur.bump();
            if !cur.eat('^') {
                return Ok(Ordinal::omega());
            }
            let exponent = if cur.eat('(') {
                let e = ordinal_expr(cur)?;
                cur.expect(')')?;
                e
            } else {
                Ordinal::from_nat(cur.nat()?)
            };
            Ordinal::omega()
                .pow(&exponent)
                .map_err(|e| cur.ordinal_err(e))
        }
        _ => Err(ParseError::Expected {
            pos: cur.pos,
            expected: "a natural number or `w`".into(),
            found: cur.found(),
        }),
    }
}

/// Parses a series description.
pub fn parse_series(text: &str) -> Result<Series, ParseError> {
    let mut cur = Cursor::new(text);
    let s = series_expr(&mut cur)?;
    cur.expect_end()?;
    Ok(s)
}

fn series_expr(cur: &mut Cursor) -> Result<Series, ParseError> {
    let (pos, name) = cur.ident()?;
    match name.as_str() {
        "fin" => {
            cur.expect('(')?;
            let mut items = Vec::new();
            if cur.peek() != Some(')') {
                loop {
                    items.push(ordinal_expr(cur)?);
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            cur.expect(')')?;
            Ok(Series::Fin(items))
        }
        "cat" => {
            cur.expect('(')?;
            let prefix = series_list(cur)?;
            cur.expect(';')?;
            let period = series_list(cur)?;
            cur.expect(')')?;
            Series::cat(prefix, period).map_err(|e: SeriesError| ParseError::invalid(pos, e.to_string()))
        }
        other => Err(ParseError::Expected {
            pos,
            expected: "`fin` or `cat`".into(),
            found: format!("`{other}`"),
        }),
    }
}

fn series_list(cur: &mut Cursor) -> Result<Vec<Series>, ParseError> {
    cur.expect('[')?;
    let mut out = Vec::new();
    if cur.peek() != Some(']') {
        loop {
            out.push(series_expr(cur)?);
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect(']')?;
    Ok(out)
}

/// Parses a map spec; `a ; b` composes left-applied-first.
pub fn parse_mapspec(text: &str) -> Result<MapSpec, ParseError> {
    let mut cur = Cursor::new(text);
    let mut acc = mapspec_atom(&mut cur)?;
    while cur.eat(';') {
        let next = mapspec_atom(&mut cur)?;
        acc = MapSpec::compose(next, acc);
    }
    cur.expect_end()?;
    Ok(acc)
}

fn mapspec_atom(cur: &mut Cursor) -> Result<MapSpec, ParseError> {
    let (pos, name) = cur.ident()?;
    let map_err = |pos: usize| move |e: MapError| ParseError::invalid(pos, e.to_string());
    match name.as_str() {
        "permute" => {
            cur.expect('(')?;
            cur.expect('[')?;
            let mut p = Vec::new();
            if cur.peek() != Some(']') {
                loop {
                    let n = cur.nat()?;
                    let idx = usize::try_from(&n).map_err(|_| {
                        ParseError::invalid(cur.pos, "permutation index too large")
                    })?;
                    p.push(idx);
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            cur.expect(']')?;
            cur.expect(')')?;
            MapSpec::permute(p).map_err(map_err(pos))
        }
        "movefront" => {
            cur.expect('(')?;
            cur.expect('[')?;
            let mut src = Vec::new();
            if cur.peek() != Some(']') {
                loop {
                    src.push(ordinal_expr(cur)?);
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            cur.expect(']')?;
            cur.expect(')')?;
            MapSpec::move_front(src).map_err(map_err(pos))
        }
        "evenodd" => {
            cur.expect('(')?;
            cur.expect(')')?;
            Ok(MapSpec::EvenOdd)
        }
        "swapblocks" => {
            cur.expect('(')?;
            cur.expect(')')?;
            Ok(MapSpec::SwapBlocks)
        }
        "mask" => {
            cur.expect('(')?;
            let prefix = bit_list(cur)?;
            cur.expect(';')?;
            let period = bit_list(cur)?;
            cur.expect(')')?;
            MapSpec::mask(prefix, period).map_err(map_err(pos))
        }
        "repeat" => {
            cur.expect('(')?;
            let prefix = count_list(cur)?;
            cur.expect(';')?;
            let period = count_list(cur)?;
            cur.expect(')')?;
            MapSpec::repeat(prefix, period).map_err(map_err(pos))
        }
        other => Err(ParseError::Expected {
            pos,
            expected: "a map combinator name".into(),
            found: format!("`{other}`"),
        }),
    }
}

fn bit_list(cur: &mut Cursor) -> Result<Vec<bool>, ParseError> {
    cur.expect('[')?;
    let mut out = Vec::new();
    if cur.peek() != Some(']') {
        loop {
            match cur.bump() {
                Some('0') => out.push(false),
                Some('1') => out.push(true),
                _ => {
                    return Err(ParseError::Expected {
                        pos: cur.pos,
                        expected: "`0` or `1`".into(),
                        found: cur.found(),
                    })
                }
            }
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect(']')?;
    Ok(out)
}

fn count_list(cur: &mut Cursor) -> Result<Vec<Count>, ParseError> {
    cur.expect('[')?;
    let mut out = Vec::new();
    if cur.peek() != Some(']') {
        loop {
            match cur.peek() {
                Some('w') | Some('ω') => {
                    cur.bump();
                    out.push(Count::Omega);
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = cur.nat()?;
                    let v = u64::try_from(&n)
                        .map_err(|_| ParseError::invalid(cur.pos, "repeat count too large"))?;
                    out.push(Count::Finite(v));
                }
                _ => {
                    return Err(ParseError::Expected {
                        pos: cur.pos,
                        expected: "a count or `w`".into(),
                        found: cur.found(),
                    })
                }
            }
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect(']')?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
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

    #[test]
    fn parse_ordinal_cases() {
        assert_eq!(
            parse_ordinal("w^2*3+w*5+7").unwrap(),
            wp(2).times(3).add(&w().times(5)).add(&nat(7))
        );
        assert_eq!(parse_ordinal("0").unwrap(), Ordinal::zero());
        // Non-normal input folds through exact arithmetic.
        assert_eq!(parse_ordinal("w+w^2").unwrap(), wp(2));
        assert_eq!(parse_ordinal("1+w").unwrap(), w());
        assert_eq!(parse_ordinal(" w ^ ( w ) + 1 ").unwrap().to_string(), "w^(w)+1");
        // Unicode omega accepted on input.
        assert_eq!(parse_ordinal("ω^2").unwrap(), wp(2));
        assert!(parse_ordinal("").is_err());
        assert!(parse_ordinal("w^").is_err());
        assert!(parse_ordinal("w+").is_err());
        assert!(parse_ordinal("5x").is_err());
    }

    #[test]
    fn parse_ordinal_depth_reported() {
        let deep = "w^(w^(w^(w^(w^(w^(w^(w^(w^(w)))))))))";
        match parse_ordinal(deep) {
            Err(ParseError::Invalid { message, .. }) => {
                assert!(message.contains("depth"), "unexpected message: {message}")
            }
            other => panic!("expected depth failure, got {other:?}"),
        }
    }

    #[test]
    fn parse_series_cases() {
        let s = parse_series("cat([fin(w^2),fin(w)];[fin(1)])").unwrap();
        assert_eq!(
            s,
            Series::cat(
                vec![Series::Fin(vec![wp(2)]), Series::Fin(vec![w()])],
                vec![Series::Fin(vec![nat(1)])],
            )
            .unwrap()
        );
        assert_eq!(parse_series("fin()").unwrap(), Series::Fin(vec![]));
        match parse_series("cat([];[])") {
            Err(ParseError::Invalid { message, .. }) => {
                assert!(message.contains("period"), "unexpected message: {message}")
            }
            other => panic!("expected empty-period failure, got {other:?}"),
        }
        assert!(parse_series("cat([fin(1)];[fin()])").is_err());
        assert!(parse_series("fin(1),").is_err());
    }

    #[test]
    fn parse_mapspec_cases() {
        assert_eq!(
            parse_mapspec("permute([1,0])").unwrap(),
            MapSpec::Permute(vec![1, 0])
        );
        assert_eq!(
            parse_mapspec("movefront([3,w+1])").unwrap(),
            MapSpec::MoveFront(vec![nat(3), w().succ()])
        );
        assert_eq!(parse_mapspec("evenodd()").unwrap(), MapSpec::EvenOdd);
        assert_eq!(
            parse_mapspec("mask([0,1];[1,0])").unwrap(),
            MapSpec::mask(vec![false, true], vec![true, false]).unwrap()
        );
        assert_eq!(
            parse_mapspec("repeat([];[2,w])").unwrap(),
            MapSpec::repeat(vec![], vec![Count::Finite(2), Count::Omega]).unwrap()
        );
        let chain = parse_mapspec("mask([];[1,0]) ; permute([1,0])").unwrap();
        assert_eq!(
            chain,
            MapSpec::compose(
                MapSpec::Permute(vec![1, 0]),
                MapSpec::mask(vec![], vec![true, false]).unwrap(),
            )
        );
        assert!(parse_mapspec("permute([1,1])").is_err());
        assert!(parse_mapspec("mask([];[0])").is_err());
        assert!(parse_mapspec("unknown()").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "w^2*3+w*5+7",
            "w^(w)+1",
            "0",
            "w^(w^2+w*4+1)*9+w^3*2+8",
        ] {
            let o = parse_ordinal(text).unwrap();
            assert_eq!(o.to_string(), text);
            assert_eq!(parse_ordinal(&o.to_string()).unwrap(), o);
        }
        for text in [
            "cat([fin(w^2),fin(w)];[fin(1)])",
            "fin()",
            "cat([];[fin(1),fin(w)])",
            "cat([cat([];[fin(1)])];[fin(w)])",
        ] {
            let s = parse_series(text).unwrap();
            assert_eq!(s.to_string(), text);
        }
        for text in [
            "permute([1,0])",
            "movefront([3,w+1])",
            "evenodd()",
            "swapblocks()",
            "mask([0,1];[1,0])",
            "repeat([];[2,w])",
            "mask([];[1,0]) ; permute([1,0])",
        ] {
            let m = parse_mapspec(text).unwrap();
            assert_eq!(m.to_string(), text);
        }
    }
}
