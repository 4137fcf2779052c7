//! Deterministic JSON and CSV rendering.
//!
//! Every real number is written with 17 significant digits in scientific
//! form with a signed exponent (`1.0000000000000000e+0`), which round-trips
//! any `f64` exactly and reads the same in JSON and CSV.
//! Object keys keep insertion order.

use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Map, Number, Value};
use spinoptics::lens::RayMatrix;
use spinoptics::lorentz::LorentzMatrix;
use spinoptics::sl2c::Sl2c;
use spinoptics::Tolerances;

/// 17 significant digits with an explicit exponent sign; `-0` is written as `0`.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    let text = format!("{v:.16e}");
    match text.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => text,
    }
}

pub fn num(v: f64) -> Value {
    debug_assert!(v.is_finite(), "non-finite values are rejected upstream");
    Value::Number(Number::from_str(&format_number(v)).expect("formatted f64 is a JSON number"))
}

pub fn nums(values: &[f64]) -> Value {
    Value::Array(values.iter().copied().map(num).collect())
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn sl2c_matrix(m: &Sl2c) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().copied().map(complex).collect()))
            .collect(),
    )
}

pub fn ray_matrix(m: &RayMatrix) -> Value {
    Value::Array(m.rows().iter().map(|row| nums(row)).collect())
}

pub fn lorentz_matrix(m: &LorentzMatrix) -> Value {
    Value::Array(m.rows().iter().map(|row| nums(row)).collect())
}

pub fn tolerances(tol: &Tolerances) -> Value {
    json!({
        "det": num(tol.det),
        "cls": num(tol.cls),
        "mix": num(tol.mix),
        "focus": num(tol.focus),
    })
}

/// The common shape of every command's output.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub tolerances: Value,
}

impl OutputEnvelope {
    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("inputs".into(), self.inputs.clone());
        root.insert("results".into(), self.results.clone());
        root.insert("tolerances".into(), self.tolerances.clone());
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("serializing a JSON value cannot fail");
        text.push('\n');
        text
    }
}

/// A CSV table: a header and rows of already-formatted cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        // Writing into a Vec only fails on inconsistent row lengths, which
        // the commands never produce.
        writer.write_record(&self.header).expect("csv header");
        for row in &self.rows {
            writer.write_record(row).expect("csv row");
        }
        let bytes = writer.into_inner().expect("csv flush");
        String::from_utf8(bytes).expect("csv output is UTF-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_have_seventeen_significant_digits() {
        assert_eq!(format_number(1.0), "1.0000000000000000e+0");
        assert_eq!(format_number(-0.0), "0.0000000000000000e+0");
        assert_eq!(format_number(6.02e23), "6.0200000000000000e+23");
        assert_eq!(format_number(1e-4), "1.0000000000000000e-4");
        assert_eq!(format_number(0.1 + 0.2), "3.0000000000000004e-1");
        for v in [std::f64::consts::PI, -1.0 / 3.0, 6.02e23, 5e-324] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_keeps_number_text_and_key_order() {
        let env = OutputEnvelope {
            command: "x".into(),
            inputs: json!({ "b": num(0.5), "a": num(2.0) }),
            results: Value::Null,
            tolerances: tolerances(&Tolerances::default()),
        };
        let text = env.to_json();
        assert!(text.contains("\"b\": 5.0000000000000000e-1"));
        assert!(text.find("\"b\"").unwrap() < text.find("\"a\"").unwrap());
        assert!(text.find("\"command\"").unwrap() < text.find("\"tolerances\"").unwrap());
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["inputs"]["a"].as_f64(), Some(2.0));
    }

    #[test]
    fn csv_quotes_cells_with_commas() {
        let table = Table {
            header: vec!["element".into(), "v".into()],
            rows: vec![vec!["mat(1, 0)".into(), format_number(1.0)]],
        };
        assert_eq!(
            table.to_csv(),
            "element,v\n\"mat(1, 0)\",1.0000000000000000e+0\n"
        );
    }
}
