//! Record emission: newline-delimited JSON or CSV with a fixed header.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Floats are written with 17 significant digits so they round-trip exactly.
pub fn float(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(Number::from_str(&format!("{v:.16e}")).expect("formatted float parses"))
    } else {
        Value::String(v.to_string())
    }
}

/// Rewrites every non-integer number in `v` with 17 significant digits.
pub fn normalize_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => {
            float(n.as_f64().expect("number is representable"))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize_floats(v))).collect()),
        other => other,
    }
}

pub type Record = Vec<(&'static str, Value)>;

pub struct Emitter {
    format: Format,
    header: &'static [&'static str],
    out: Box<dyn Write>,
    wrote_header: bool,
}

impl Emitter {
    pub fn new(format: Format, header: &'static [&'static str], path: Option<&Path>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Emitter {
            format,
            header,
            out,
            wrote_header: false,
        })
    }

    pub fn emit(&mut self, record: Record) -> io::Result<()> {
        debug_assert!(record.iter().all(|(k, _)| self.header.contains(k)));
        match self.format {
            Format::Json => {
                let obj: Map<String, Value> = record.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
                serde_json::to_writer(&mut self.out, &obj)?;
                writeln!(self.out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.out);
                if !self.wrote_header {
                    w.write_record(self.header)?;
                    self.wrote_header = true;
                }
                let row = self.header.iter().map(|h| {
                    record
                        .iter()
                        .find(|(k, _)| k == h)
                        .map(|(_, v)| cell(v))
                        .unwrap_or_default()
                });
                w.write_record(row)?;
                w.flush()
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0, 1e-300, -7.25e12] {
            let s = float(v).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(float(f64::INFINITY), Value::String("inf".into()));
    }

    #[test]
    fn integers_untouched() {
        let v = normalize_floats(serde_json::json!({"n": 3, "x": 0.5}));
        assert_eq!(v["n"].to_string(), "3");
        assert_eq!(v["x"].to_string(), "5.0000000000000000e-1");
    }
}
