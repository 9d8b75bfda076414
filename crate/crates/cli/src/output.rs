//! Tabular reports rendered as CSV or JSON.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Num(x) => number(*x),
            Value::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Int(b as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub summary: Vec<(String, Value)>,
    pub columns: Vec<Column>,
    /// Missing cells are `None` (empty in CSV, `null` in JSON).
    pub rows: Vec<Vec<Option<Value>>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), summary: Vec::new(), columns: Vec::new(), rows: Vec::new() }
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.push((key.to_string(), value.into()));
        self
    }

    pub fn column(&mut self, name: &str, unit: &str) -> &mut Self {
        self.columns.push(Column { name: name.to_string(), unit: unit.to_string() });
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command = {}", self.command);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# {k} = {}", v.csv());
        }
        let header: Vec<String> = self.columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.as_ref().map(Value::csv).unwrap_or_default()).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn json(&self) -> String {
        let summary: serde_json::Map<String, serde_json::Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::to_value(v).unwrap_or(serde_json::Value::Null)))
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "summary": summary,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// 17 significant digits, `.` decimal separator.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("sweep");
        r.note("junctions", 3usize).note("delta_x", 0.02);
        r.column("E", "energy").column("T", "1");
        r.rows.push(vec![Some(0.1.into()), Some((1.0 / 3.0).into())]);
        r.rows.push(vec![Some(0.2.into()), None]);
        r
    }

    #[test]
    fn csv_layout() {
        let text = sample().render(Format::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command = sweep");
        assert_eq!(lines[1], "# junctions = 3");
        assert_eq!(lines[3], "E [energy],T [1]");
        assert_eq!(lines[4], "1.0000000000000001e-1,3.3333333333333331e-1");
        assert_eq!(lines[5], "2.0000000000000001e-1,");
    }

    #[test]
    fn csv_numbers_round_trip() {
        for x in [1.0 / 3.0, 19.523_541_234_567_89, -1e-300, 6.02e23] {
            assert_eq!(number(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_layout() {
        let v: serde_json::Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["command"], "sweep");
        assert_eq!(v["summary"]["junctions"], 3);
        assert_eq!(v["columns"][1]["name"], "T");
        assert!(v["rows"][1][1].is_null());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
