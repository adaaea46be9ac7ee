//! Browser bindings for the ordinal series engine.
//!
//! Three interactive operations back the demo page: evaluating ordinal
//! expressions, analyzing a series (sum, remainder, tails, exceptional
//! terms), and enumerating rearrangement sums with witnesses. Every
//! export returns a JSON string with an `ok` flag so the page needs no
//! exception plumbing.

use ord_core::enumerate::{
    enum_bijective_omega, enum_bijective_omega2, enum_injective_bounded, enum_map_bounded,
    remainder_triple, EnumerationResult,
};
use ord_core::{parse_ordinal, parse_series, Ordinal, Series};
use wasm_bindgen::prelude::*;

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn err_json(message: impl std::fmt::Display) -> String {
    format!(r#"{{"ok":false,"error":"{}"}}"#, json_escape(&message.to_string()))
}

/// Unicode rendering: `w^2*3+w*5+7` becomes `ω²·3+ω·5+7`.
fn pretty(o: &Ordinal) -> String {
    fn superscript(n: &str) -> String {
        n.chars()
            .map(|c| "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().nth(c as usize - '0' as usize).unwrap())
            .collect()
    }
    if o.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in o.terms().iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        if e.is_zero() {
            out.push_str(&c.to_string());
            continue;
        }
        out.push('ω');
        if *e != Ordinal::one() {
            if e.is_finite() {
                out.push_str(&superscript(&e.as_nat().unwrap().to_string()));
            } else {
                out.push_str(&format!("^({})", pretty(e)));
            }
        }
        if c.to_string() != "1" {
            out.push_str(&format!("·{c}"));
        }
    }
    out
}

fn ordinal_json(o: &Ordinal) -> String {
    format!(
        r#"{{"text":"{}","pretty":"{}"}}"#,
        json_escape(&o.to_string()),
        json_escape(&pretty(o))
    )
}

/// Evaluates an ordinal expression to Cantor normal form.
#[wasm_bindgen]
pub fn eval_ordinal(expr: &str) -> String {
    match parse_ordinal(expr) {
        Ok(o) => format!(r#"{{"ok":true,"value":{}}}"#, ordinal_json(&o)),
        Err(e) => err_json(e),
    }
}

/// Compares two ordinal expressions.
#[wasm_bindgen]
pub fn compare_ordinals(a: &str, b: &str) -> String {
    let (a, b) = match (parse_ordinal(a), parse_ordinal(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return err_json(e),
    };
    let relation = match a.cmp(&b) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    format!(
        r#"{{"ok":true,"left":{},"relation":"{}","right":{}}}"#,
        ordinal_json(&a),
        relation,
        ordinal_json(&b)
    )
}

/// Order type, total sum, remainder, tail sums and exceptional terms of a
/// series.
#[wasm_bindgen]
pub fn analyze_series(text: &str) -> String {
    let s: Series = match parse_series(text) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let order_type = s.order_type();
    let mut fields = vec![
        format!(r#""orderType":{}"#, ordinal_json(&order_type)),
        format!(r#""totalSum":{}"#, ordinal_json(&s.total_sum())),
        format!(r#""psi":{}"#, ordinal_json(&s.psi())),
    ];
    if !order_type.is_zero() {
        let report = s.tail_report().expect("nonempty series");
        let values: Vec<String> = report.values.iter().map(ordinal_json).collect();
        fields.push(format!(r#""tailValues":[{}]"#, values.join(",")));
        fields.push(format!(r#""tailMinimum":{}"#, ordinal_json(&report.minimum)));
        fields.push(format!(
            r#""tailWitness":"{}""#,
            json_escape(&report.witness.to_string())
        ));
    }
    if let Ok(exceptional) = s.exceptional_multiset() {
        let items: Vec<String> = exceptional
            .iter()
            .map(|e| {
                format!(
                    r#"{{"position":{},"value":{}}}"#,
                    e.position,
                    ordinal_json(&e.value)
                )
            })
            .collect();
        fields.push(format!(r#""exceptional":[{}]"#, items.join(",")));
    }
    if let Ok(triple) = remainder_triple(&s) {
        fields.push(format!(
            r#""remainders":{{"first":{},"second":{},"interleaved":{}}}"#,
            ordinal_json(&triple.first),
            ordinal_json(&triple.second),
            ordinal_json(&triple.interleaved)
        ));
    }
    format!(r#"{{"ok":true,{}}}"#, fields.join(","))
}

fn result_json(result: &EnumerationResult) -> String {
    let sums: Vec<String> = result
        .sums
        .iter()
        .map(|sw| {
            format!(
                r#"{{"sum":{},"witness":"{}","viaDup":{}}}"#,
                ordinal_json(&sw.sum),
                json_escape(&sw.witness.to_string()),
                sw.via_dup
            )
        })
        .collect();
    let bound = result
        .bound
        .map(|b| b.to_string())
        .unwrap_or_else(|| "null".into());
    format!(
        r#"{{"ok":true,"complete":{},"bound":{},"sums":[{}]}}"#,
        result.complete,
        bound,
        sums.join(",")
    )
}

/// Enumerates rearrangement sums: `kind` is `bij`, `inj` or `map`.
#[wasm_bindgen]
pub fn enumerate_sums(text: &str, kind: &str, bound: usize) -> String {
    let s: Series = match parse_series(text) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let result = match kind {
        "bij" => {
            if s.flatten_omega().is_ok() {
                enum_bijective_omega(&s)
            } else {
                enum_bijective_omega2(&s)
            }
        }
        "inj" => enum_injective_bounded(&s, bound),
        "map" => enum_map_bounded(&s, bound),
        other => return err_json(format!("unknown enumeration kind `{other}`")),
    };
    match result {
        Ok(r) => result_json(&r),
        Err(e) => err_json(e),
    }
}
