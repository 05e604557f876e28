//! Text rendering shared by all subcommands.
//!
//! A record is an ordered list of named string fields. Markdown and CSV
//! render them as-is; JSON keeps numbers as numbers except for exact counts,
//! which are always strings.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

/// One output field.
#[derive(Debug, Clone)]
pub enum Field {
    /// Exact count or fraction; serialized as a JSON string.
    Exact(String),
    Text(String),
    Int(u64),
    Float(f64),
}

impl Field {
    fn plain(&self) -> String {
        match self {
            Field::Exact(s) | Field::Text(s) => s.clone(),
            Field::Int(v) => v.to_string(),
            Field::Float(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Exact(s) | Field::Text(s) => Value::String(s.clone()),
            Field::Int(v) => Value::from(*v),
            Field::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(v.to_string())),
        }
    }
}

pub type Record = Vec<(&'static str, Field)>;

fn json_object(record: &Record) -> Value {
    let mut map = Map::new();
    for (name, field) in record {
        map.insert((*name).to_string(), field.json());
    }
    Value::Object(map)
}

fn markdown_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", header.join(" | ")));
    out.push_str(&format!(
        "|{}|\n",
        header.iter().map(|_| "---").collect::<Vec<_>>().join("|")
    ));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// A single record.
pub fn render_record(record: &Record, format: OutputFormat) -> String {
    match format {
        OutputFormat::Markdown => {
            let rows: Vec<Vec<String>> = record
                .iter()
                .map(|(name, f)| vec![(*name).to_string(), f.plain()])
                .collect();
            markdown_rows(&["field", "value"], &rows)
        }
        OutputFormat::Csv => {
            let header: Vec<&str> = record.iter().map(|(n, _)| *n).collect();
            csv_rows(&header, &[record.iter().map(|(_, f)| f.plain()).collect()])
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json_object(record)).expect("json");
            s.push('\n');
            s
        }
    }
}

/// A list of records sharing the same fields, wrapped in `meta` for JSON.
pub fn render_records(
    meta: &Record,
    key: &str,
    records: &[Record],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Markdown | OutputFormat::Csv => {
            let header: Vec<&str> = records
                .first()
                .map(|r| r.iter().map(|(n, _)| *n).collect())
                .unwrap_or_default();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| r.iter().map(|(_, f)| f.plain()).collect())
                .collect();
            if format == OutputFormat::Csv {
                csv_rows(&header, &rows)
            } else {
                markdown_rows(&header, &rows)
            }
        }
        OutputFormat::Json => {
            let mut doc = match json_object(meta) {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            doc.insert(
                key.to_string(),
                Value::Array(records.iter().map(json_object).collect()),
            );
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
    }
}

/// Markdown grid with `n` down the side and `k` across the top.
pub fn markdown_grid(rows: &[Vec<String>]) -> String {
    let k_max = rows.first().map(Vec::len).unwrap_or(0);
    let mut header = vec!["n \\ k".to_string()];
    header.extend((1..=k_max).map(|k| k.to_string()));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut line = vec![(i + 1).to_string()];
            line.extend(r.iter().cloned());
            line
        })
        .collect();
    markdown_rows(&header_refs, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_formats() {
        let rec: Record = vec![
            ("count", Field::Exact("12345678901234567890123".into())),
            ("n", Field::Int(3)),
            ("p", Field::Float(0.5)),
        ];
        assert_eq!(
            render_record(&rec, OutputFormat::Csv),
            "count,n,p\n12345678901234567890123,3,0.5\n"
        );
        let md = render_record(&rec, OutputFormat::Markdown);
        assert!(md.starts_with("| field | value |\n|---|---|\n| count | 1234"));
        let json: Value = serde_json::from_str(&render_record(&rec, OutputFormat::Json)).unwrap();
        assert_eq!(
            json["count"],
            Value::String("12345678901234567890123".into())
        );
        assert_eq!(json["n"], Value::from(3));
    }

    #[test]
    fn grid_layout() {
        let g = markdown_grid(&[vec!["1".into(), "0".into()], vec!["2".into(), "1".into()]]);
        assert_eq!(
            g,
            "| n \\ k | 1 | 2 |\n|---|---|---|\n| 1 | 1 | 0 |\n| 2 | 2 | 1 |\n"
        );
    }
}
