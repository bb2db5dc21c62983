//! Structured output: JSON lines, CSV with header, or plain `key=value` text.
//!
//! Integers are always exact. In JSON they are numbers while they fit 64
//! bits and decimal strings beyond that.

use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Int(n) => {
                if let Ok(v) = u64::try_from(n) {
                    Json::Number(v.into())
                } else if let Ok(v) = i64::try_from(n) {
                    Json::Number(v.into())
                } else {
                    Json::String(n.to_string())
                }
            }
            Value::Float(x) => Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Value::Int(n) => n.to_string(),
            Value::Float(x) => x.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(v: $t) -> Self {
                Value::Int(BigInt::from(v))
            }
        }
    )*};
}
from_int!(u8, u32, u64, i64, usize, u128, BigUint, BigInt);

impl From<&BigUint> for Value {
    fn from(v: &BigUint) -> Self {
        Value::Int(BigInt::from(v.clone()))
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

/// One result row: ordered named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }
}

enum Sink<'w> {
    Direct(&'w mut dyn Write),
    Csv(Box<csv::Writer<&'w mut dyn Write>>),
}

/// Writes records one at a time so long streams never sit in memory.
pub struct Emitter<'w> {
    format: Format,
    sink: Sink<'w>,
    inline: bool,
    rows: u64,
}

impl<'w> Emitter<'w> {
    pub fn new(format: Format, out: &'w mut dyn Write) -> Self {
        let sink = match format {
            Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
            _ => Sink::Direct(out),
        };
        Emitter { format, sink, inline: false, rows: 0 }
    }

    /// In plain format, put single-field rows on one space-separated line.
    pub fn set_inline(&mut self, on: bool) {
        self.inline = on;
    }

    pub fn emit(&mut self, rec: &Record) -> io::Result<()> {
        let first = self.rows == 0;
        self.rows += 1;
        match (&mut self.sink, self.format) {
            (Sink::Csv(w), _) => {
                if first {
                    w.write_record(rec.0.iter().map(|(k, _)| *k))?;
                }
                w.write_record(rec.0.iter().map(|(_, v)| v.to_text()))?;
            }
            (Sink::Direct(w), Format::Json) => {
                let map: Map<String, Json> = rec.0.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
                serde_json::to_writer(&mut *w, &map)?;
                writeln!(w)?;
            }
            (Sink::Direct(w), _) => {
                if let [(_, v)] = rec.0.as_slice() {
                    if self.inline {
                        write!(w, "{}{}", if first { "" } else { " " }, v.to_text())?;
                        return Ok(());
                    }
                    writeln!(w, "{}", v.to_text())?;
                } else {
                    let line: Vec<String> = rec.0.iter().map(|(k, v)| format!("{k}={}", v.to_text())).collect();
                    writeln!(w, "{}", line.join(" "))?;
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn finish(self) -> io::Result<()> {
        match self.sink {
            Sink::Csv(mut w) => w.flush(),
            Sink::Direct(w) => {
                if self.inline && self.rows > 0 && self.format == Format::Plain {
                    writeln!(w)?;
                }
                w.flush()
            }
        }
    }
}
