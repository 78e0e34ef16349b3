//! Buffered tabular output. Rows are fully built before anything is written,
//! so the `error` column can be added only when some row needs it.

use serde_json::{Map, Value};

use crate::args::Format;

pub struct Row {
    pub fields: Vec<String>,
    pub error: Option<String>,
}

impl Row {
    pub fn ok(fields: Vec<String>) -> Self {
        Row {
            fields,
            error: None,
        }
    }

    /// Keeps the leading parameter fields and blanks the rest.
    pub fn failed(mut params: Vec<String>, width: usize, error: impl ToString) -> Self {
        params.resize(width, String::new());
        Row {
            fields: params,
            error: Some(error.to_string()),
        }
    }
}

pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Row>,
}

impl Table {
    fn has_errors(&self) -> bool {
        self.rows.iter().any(|row| row.error.is_some())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let errors = self.has_errors();
        let mut out = self.columns.join(",");
        if errors {
            out.push_str(",error");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.fields.join(","));
            if errors {
                out.push(',');
                // the error text is the only free-form field
                out.push_str(&row.error.as_deref().unwrap_or("").replace(',', ";"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, field) in self.columns.iter().zip(&row.fields) {
                    obj.insert(col.to_string(), Value::String(field.clone()));
                }
                if let Some(e) = &row.error {
                    obj.insert("error".into(), Value::String(e.clone()));
                }
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&rows).expect("strings always serialize");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_column_only_when_needed() {
        let mut t = Table {
            columns: &["a", "b"],
            rows: vec![Row::ok(vec!["1".into(), "2".into()])],
        };
        assert_eq!(t.to_csv(), "a,b\n1,2\n");
        t.rows.push(Row::failed(vec!["3".into()], 2, "bad, really"));
        assert_eq!(t.to_csv(), "a,b,error\n1,2,\n3,,bad; really\n");
        let empty = Table {
            columns: &["a"],
            rows: vec![],
        };
        assert_eq!(empty.to_csv(), "a\n");
        assert_eq!(empty.to_json(), "[]\n");
    }
}
