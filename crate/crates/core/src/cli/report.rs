use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub group: Value,
    pub tables: Vec<Table>,
    /// `None` for purely descriptive commands.
    pub verdict: Option<bool>,
}

fn verdict_str(v: Option<bool>) -> Value {
    match v {
        Some(true) => "PASS".into(),
        Some(false) => "FAIL".into(),
        None => Value::Null,
    }
}

impl Report {
    pub fn to_value(&self) -> Value {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| json!({ "name": t.name, "columns": t.columns, "rows": t.rows }))
            .collect();
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "group": self.group,
            "tables": tables,
            "verdict": verdict_str(self.verdict),
        })
    }

    /// Pretty JSON; object keys come out sorted, so output is byte-stable.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.command);
        if let Value::Object(g) = &self.group {
            for (k, v) in g {
                out += &format!("- {k}: {}\n", cell(v));
            }
            out.push('\n');
        }
        for t in &self.tables {
            out += &format!("## {}\n\n| {} |\n|{}\n", t.name, t.columns.join(" | "), "---|".repeat(t.columns.len()));
            for r in &t.rows {
                out += &format!("| {} |\n", r.iter().map(cell).collect::<Vec<_>>().join(" | "));
            }
            out.push('\n');
        }
        if let Some(v) = self.verdict {
            out += &format!("Verdict: {}\n", if v { "PASS" } else { "FAIL" });
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace('|', "\\|"),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_markdown() {
        let mut t = Table::new("pairs", &["a", "b"]);
        t.push(vec![json!("e"), json!(1)]);
        let r = Report { command: "demo".into(), group: json!({"order": 2}), tables: vec![t], verdict: Some(true) };
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["verdict"], "PASS");
        assert_eq!(v["tables"][0]["rows"][0][1], 1);
        let md = r.to_markdown();
        assert!(md.contains("| e | 1 |"));
        assert!(md.ends_with("Verdict: PASS\n"));
    }
}
