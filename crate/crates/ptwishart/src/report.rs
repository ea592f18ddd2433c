//! JSON and CSV rendering. Documents are built as `serde_json::Value` with
//! sorted keys, so parsing an emitted document and printing it again gives
//! the same bytes.

use serde_json::{json, Map, Value};

use ptwishart_core::{Dims, ExactValue, Regime, RegimeLimit, Word};

use crate::sim::SampleStats;

/// Significant digits of the `decimal` field.
pub const DECIMAL_DIGITS: usize = 12;

pub fn exact(v: &ExactValue) -> Value {
    json!({
        "num": v.numer().to_string(),
        "den": v.denom().to_string(),
        "decimal": v.to_decimal(DECIMAL_DIGITS),
    })
}

/// Finite floats as numbers, anything else as `null`.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn dims(d: &Dims) -> Value {
    json!({ "d1": d.d1(), "d2": d.d2(), "p": d.p() })
}

pub fn word(w: &Word) -> Value {
    json!({
        "text": w.to_string(),
        "labels": w.letters().iter().map(|l| l.name()).collect::<Vec<_>>(),
        "epsilon": w.letters().iter().map(|l| l.eps()).collect::<Vec<_>>(),
        "eta": w.letters().iter().map(|l| l.eta()).collect::<Vec<_>>(),
    })
}

pub fn regime(r: Regime) -> Value {
    match r {
        Regime::BothGrow => json!({ "kind": "both_grow" }),
        Regime::D1Fixed(d) => json!({ "kind": "d1_fixed", "d1": d }),
        Regime::D2Fixed(d) => json!({ "kind": "d2_fixed", "d2": d }),
    }
}

pub fn regime_limit(l: &RegimeLimit) -> Value {
    json!({ "regime": regime(l.regime()), "c": exact(l.c()) })
}

pub fn stats(s: &SampleStats) -> Value {
    json!({ "mean": float(s.mean), "stderr": float(s.stderr), "samples": s.samples })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("Value always serialises");
    s.push('\n');
    s
}

/// A flat table for CSV output.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// Cells `num, den, decimal` of an exact value.
pub fn exact_cells(v: &ExactValue) -> Vec<String> {
    vec![
        v.numer().to_string(),
        v.denom().to_string(),
        v.to_decimal(DECIMAL_DIGITS),
    ]
}

/// Insert `key: value` into an object document.
pub fn insert(doc: &mut Value, key: &str, value: Value) {
    if let Value::Object(map) = doc {
        map.insert(key.to_string(), value);
    }
}

pub fn object() -> Value {
    Value::Object(Map::new())
}
