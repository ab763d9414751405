use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::config::OutputFormat;
use crate::error::CliError;

/// A command result in all three renderings.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub pass: Option<bool>,
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub pretty: String,
}

impl Report {
    pub fn new(command: &'static str, anchor: &str, fields: Map<String, Value>) -> Self {
        let mut json = fields;
        json.insert("paper_anchor".into(), Value::String(anchor.into()));
        Report {
            command,
            pass: None,
            json: Value::Object(json),
            header: Vec::new(),
            rows: Vec::new(),
            pretty: String::new(),
        }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        if let Value::Object(m) = &mut self.json {
            m.insert("pass".into(), Value::Bool(pass));
        }
        self
    }

    pub fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.rows = rows;
        self
    }

    pub fn pretty(mut self, text: String) -> Self {
        self.pretty = text;
        self
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        Ok(match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(csv_error)?;
                for r in &self.rows {
                    w.write_record(r).map_err(csv_error)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
                    .expect("csv output is utf-8")
            }
            OutputFormat::Pretty => {
                let mut s = self.pretty.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        })
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

/// Integers as JSON numbers when they fit, strings otherwise.
pub fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn int_row(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
