//! Rendering of command results as JSON, CSV or an aligned text table.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as clap::ValueEnum>::from_str(s, false).map_err(|_| format!("unknown format `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Field {
    pub name: String,
    pub value: Value,
    /// Empty for dimensionless quantities.
    pub unit: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

/// Result of one subcommand: named scalar fields and an optional table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Output {
    pub command: String,
    pub fields: Vec<Field>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

/// Non-finite numbers have no JSON representation and become `null`.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

impl Output {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            fields: Vec::new(),
            table: None,
        }
    }

    pub fn field(
        &mut self,
        name: impl Into<String>,
        value: impl Into<Value>,
        unit: &'static str,
    ) -> &mut Self {
        self.fields.push(Field {
            name: name.into(),
            value: value.into(),
            unit,
        });
        self
    }

    pub fn number(&mut self, name: impl Into<String>, value: f64, unit: &'static str) -> &mut Self {
        self.field(name, num(value), unit)
    }

    /// Renders to stdout text. CSV output with a table carries only the
    /// table; the scalar fields are returned separately for stderr.
    pub fn render(&self, format: Format) -> (String, Option<String>) {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("output serializes");
                s.push('\n');
                (s, None)
            }
            Format::Csv => match &self.table {
                Some(t) => {
                    let side = (!self.fields.is_empty()).then(|| text_fields(&self.fields));
                    (
                        csv_rows(
                            &t.columns,
                            t.rows.iter().map(|r| r.iter().map(csv_cell).collect()),
                        ),
                        side,
                    )
                }
                None => (
                    csv_rows(
                        &["name".into(), "value".into(), "unit".into()],
                        self.fields
                            .iter()
                            .map(|f| vec![f.name.clone(), csv_cell(&f.value), f.unit.to_owned()]),
                    ),
                    None,
                ),
            },
            Format::Table => {
                let mut s = text_fields(&self.fields);
                if let Some(t) = &self.table {
                    if !s.is_empty() {
                        s.push('\n');
                    }
                    s.push_str(&text_table(t));
                }
                (s, None)
            }
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_rows(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Six significant digits for display.
fn human(v: &Value) -> String {
    match v {
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => u.to_string(),
            (_, Some(i), _) => i.to_string(),
            (_, _, Some(f)) if f != 0.0 && (f.abs() >= 1e7 || f.abs() < 1e-3) => format!("{f:.5e}"),
            (_, _, Some(f)) => {
                let digits = (5 - f.abs().log10().floor() as i32).clamp(0, 9) as usize;
                let s = format!("{f:.digits$}");
                if s.contains('.') {
                    s.trim_end_matches('0').trim_end_matches('.').to_owned()
                } else {
                    s
                }
            }
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn text_fields(fields: &[Field]) -> String {
    let width = fields.iter().map(|f| f.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for f in fields {
        let v = human(&f.value);
        let line = if f.unit.is_empty() || !f.value.is_number() {
            format!("{:width$}  {v}", f.name)
        } else {
            format!("{:width$}  {v} {}", f.name, f.unit)
        };
        let _ = writeln!(s, "{}", line.trim_end());
    }
    s
}

fn text_table(t: &Table) -> String {
    let cells: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| r.iter().map(human).collect())
        .collect();
    let widths: Vec<usize> = t
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = String::new();
    let line = |s: &mut String, row: &[String]| {
        let parts: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(s, "{}", parts.join("  "));
    };
    line(&mut s, &t.columns);
    for r in &cells {
        line(&mut s, r);
    }
    s
}
