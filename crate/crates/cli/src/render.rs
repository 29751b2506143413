use clap::ValueEnum;
use lech_core::rational::{approx_decimal, RationalRecord};
use lech_core::Rational;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// A command's result. JSON is canonical; the other views are derived from
/// it unless a command supplies its own.
pub struct Report {
    pub json: Value,
    pub markdown: Option<String>,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            markdown: None,
            csv: None,
        }
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Markdown => match &self.markdown {
                Some(m) => m.clone(),
                None => markdown_fields(&self.json),
            },
            Format::Csv => match &self.csv {
                Some(c) => c.clone(),
                None => csv_fields(&self.json)?,
            },
        })
    }
}

pub fn rational(r: &Rational) -> Value {
    serde_json::to_value(RationalRecord::from(r)).expect("record serializes")
}

/// `{prefix}_num`, `{prefix}_den`, `{prefix}_approx` flattened into `map`.
pub fn rational_fields(map: &mut Map<String, Value>, prefix: &str, r: &Rational) {
    map.insert(format!("{prefix}_num"), json!(r.numer().to_string()));
    map.insert(format!("{prefix}_den"), json!(r.denom().to_string()));
    map.insert(format!("{prefix}_approx"), json!(approx_decimal(r, 6)));
}

fn as_record(v: &Value) -> Option<(String, String, String)> {
    let m = v.as_object()?;
    if m.len() != 3 {
        return None;
    }
    let s = |k: &str| m.get(k).and_then(Value::as_str).map(str::to_string);
    Some((s("num")?, s("den")?, s("approx")?))
}

/// `(field, exact value, approximation)` rows. Arrays without nested
/// objects stay compact.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String, String)>) {
    if let Some((num, den, approx)) = as_record(v) {
        let exact = if den == "1" { num } else { format!("{num}/{den}") };
        out.push((prefix.to_string(), exact, approx));
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone(), String::new())),
        other => out.push((prefix.to_string(), other.to_string(), String::new())),
    }
}

fn markdown_fields(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut out = String::from("| field | value | approx. |\n|---|---|---|\n");
    for (k, val, approx) in rows {
        out.push_str(&format!("| {} | {} | {} |\n", cell(&k), cell(&val), approx));
    }
    out
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn csv_fields(v: &Value) -> anyhow::Result<String> {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "value", "approx"])?;
    for (k, val, approx) in rows {
        w.write_record([k, val, approx])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// CSV from a header and string rows.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
