use std::fmt::Write as _;

use clap::ValueEnum;

pub const CONVENTIONS: [&str; 3] = ["wedge=determinant", "omega=h(I.,.)", "dc=i(delbar-del)"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key value` lines for scripts
    Lines,
    /// aligned table for reading
    Text,
}

/// Ordered key/value report; `ok` is false when a check failed.
#[derive(Debug)]
pub struct Report {
    title: String,
    rows: Vec<(String, String)>,
    pub ok: bool,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            rows: Vec::new(),
            ok: true,
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.rows.push((key.into(), value.to_string()));
    }

    /// Records a boolean check; a false value marks the report failed.
    pub fn check(&mut self, key: impl Into<String>, value: bool) {
        self.ok &= value;
        self.push(key, value);
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Lines => {
                for c in CONVENTIONS {
                    writeln!(s, "convention {c}").unwrap();
                }
                for (k, v) in &self.rows {
                    writeln!(s, "{k} {v}").unwrap();
                }
            }
            Format::Text => {
                writeln!(s, "{}", self.title).unwrap();
                writeln!(s, "conventions: {}", CONVENTIONS.join(", ")).unwrap();
                let width = self
                    .rows
                    .iter()
                    .map(|(k, _)| k.chars().count())
                    .max()
                    .unwrap_or(0);
                writeln!(s, "{}", "-".repeat(width + 2 + 12)).unwrap();
                for (k, v) in &self.rows {
                    writeln!(s, "{k:<width$}  {v}").unwrap();
                }
            }
        }
        s
    }
}
