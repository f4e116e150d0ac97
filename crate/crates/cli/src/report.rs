//! Machine-readable reports: one JSON/CSV/text rendering of a [`Report`].

use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

impl Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Degree range a table speaks about, and how far it is trusted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    /// `certified`, or `window-certified` for window-level proxies.
    pub status: String,
}

impl Window {
    pub fn certified(lo: i64, hi: i64) -> Self {
        Window {
            lo,
            hi,
            status: "certified".into(),
        }
    }

    pub fn proxy(lo: i64, hi: i64) -> Self {
        Window {
            lo,
            hi,
            status: "window-certified".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub window: Window,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, window: Window, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            window,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

/// An element printed in the presentation syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub degree: i64,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summary: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl Report {
    pub fn empty(verdict: Verdict) -> Self {
        Report {
            schema: SCHEMA,
            command: String::new(),
            seed: None,
            summary: Vec::new(),
            tables: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            verdict,
        }
    }

    pub fn new(command: String, seed: u64) -> Self {
        Report {
            command,
            seed: Some(seed),
            ..Report::empty(Verdict::Pass)
        }
    }

    pub fn set(&mut self, key: &str, value: impl Display) {
        let value = value.to_string();
        match self.summary.iter_mut().find(|e| e.key == key) {
            Some(e) => e.value = value,
            None => self.summary.push(Entry { key: key.into(), value }),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|e| e.key == key).map(|e| e.value.as_str())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Records a check; any failing check makes the verdict `fail`.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.set(key, pass_fail(ok));
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Flat CSV: header records (`schema`, `command`, …), then each table as a `table`
    /// record, its column names and its rows.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let mut rec = |fields: &[&str]| w.write_record(fields).expect("writing to memory");
        rec(&["schema", &self.schema.to_string()]);
        if !self.command.is_empty() {
            rec(&["command", &self.command]);
        }
        if let Some(seed) = self.seed {
            rec(&["seed", &seed.to_string()]);
        }
        rec(&["verdict", &self.verdict.to_string()]);
        for e in &self.summary {
            rec(&["summary", &e.key, &e.value]);
        }
        for n in &self.notes {
            rec(&["note", n]);
        }
        for x in &self.witnesses {
            rec(&["witness", &x.label, &x.degree.to_string(), &x.element]);
        }
        for t in &self.tables {
            let (lo, hi) = (t.window.lo.to_string(), t.window.hi.to_string());
            rec(&["table", &t.name, &lo, &hi, &t.window.status]);
            let cols: Vec<&str> = t.columns.iter().map(String::as_str).collect();
            rec(&cols);
            for r in &t.rows {
                let r: Vec<&str> = r.iter().map(String::as_str).collect();
                rec(&r);
            }
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.command.is_empty() {
            let _ = writeln!(s, "command: {}", self.command);
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        for e in &self.summary {
            if e.value.contains('\n') {
                let _ = writeln!(s, "{}:", e.key);
                for line in e.value.lines() {
                    let _ = writeln!(s, "  {line}");
                }
            } else {
                let _ = writeln!(s, "{}: {}", e.key, e.value);
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "witness {} (degree {}): {}", w.label, w.degree, w.element);
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n[{}] degrees {}..{} ({})", t.name, t.window.lo, t.window.hi, t.window.status);
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| {
                    t.rows
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([t.columns[i].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(s, "{}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn count(x: usize) -> String {
    x.to_string()
}

pub fn join<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
