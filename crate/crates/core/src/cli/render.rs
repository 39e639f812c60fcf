use serde_json::Value;

use crate::error::{invalid, Result};
use crate::experiments::{ExperimentReport, CSV_HEADER};
use crate::format::fmt_num;

use super::Format;

/// Command result before formatting.
pub struct Output {
    records: Vec<Value>,
    single: bool,
    csv_rows: Option<Vec<[String; 9]>>,
    pub violation: bool,
    /// Printed output stands, but the command failed a check.
    pub failure: Option<String>,
}

impl Output {
    pub fn single(record: Value) -> Self {
        Output {
            records: vec![record],
            single: true,
            csv_rows: None,
            violation: false,
            failure: None,
        }
    }

    pub fn many(records: Vec<Value>) -> Self {
        Output {
            records,
            single: false,
            csv_rows: None,
            violation: false,
            failure: None,
        }
    }

    pub fn reports(reports: &[ExperimentReport]) -> Self {
        Output {
            records: reports.iter().map(|r| r.to_json_value()).collect(),
            single: false,
            csv_rows: Some(reports.iter().map(|r| r.csv_record()).collect()),
            violation: reports.iter().any(|r| r.soundness_violation()),
            failure: None,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let doc = if self.single {
                    self.records[0].clone()
                } else {
                    Value::Array(self.records.clone())
                };
                Ok(format!("{}\n", serde_json::to_string(&doc)?))
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                if let Some(rows) = &self.csv_rows {
                    w.write_record(CSV_HEADER)?;
                    for r in rows {
                        w.write_record(r)?;
                    }
                } else {
                    let header = match self.records.first() {
                        Some(Value::Object(map)) => map.keys().cloned().collect::<Vec<_>>(),
                        _ => return invalid("nothing to write as CSV"),
                    };
                    w.write_record(&header)?;
                    for rec in &self.records {
                        w.write_record(header.iter().map(|k| cell(&rec[k])))?;
                    }
                }
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Text => {
                let mut out = String::new();
                for (i, rec) in self.records.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    write_text(rec, "", &mut out);
                }
                Ok(out)
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn write_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                match val {
                    Value::Object(_) => write_text(val, &key, out),
                    _ => out.push_str(&format!("{key}: {}\n", cell(val))),
                }
            }
        }
        other => out.push_str(&format!("{}\n", cell(other))),
    }
}

/// Replace every non-integer JSON number with its shortest decimal string.
pub fn numbers_as_strings(v: Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => Value::String(fmt_num(n.as_f64().unwrap_or(f64::NAN))),
        Value::Array(items) => Value::Array(items.into_iter().map(numbers_as_strings).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, numbers_as_strings(v))).collect()),
        other => other,
    }
}
