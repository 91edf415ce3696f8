use std::fmt::Display;
use std::io::{self, Write};

use gmconn::linalg::Matrix;
use serde_json::{json, Value};

use crate::args::Format;

/// Collects report records and prints them either as aligned text or as
/// one JSON object per line.
pub struct Report {
    format: Format,
    out: io::StdoutLock<'static>,
    failures: Vec<String>,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Self {
            format,
            out: io::stdout().lock(),
            failures: Vec::new(),
        }
    }

    fn emit(&mut self, human: &str, structured: Value) {
        let line = match self.format {
            Format::Human => human.to_string(),
            Format::Structured => structured.to_string(),
        };
        // a closed pipe is not worth a panic
        let _ = writeln!(self.out, "{line}");
    }

    pub fn section(&mut self, title: &str) {
        if self.format == Format::Human {
            let _ = writeln!(self.out, "== {title}");
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>, human: impl Display) {
        let v = v.into();
        self.emit(
            &format!("{key}: {human}"),
            json!({"record": "value", "key": key, "value": v}),
        );
    }

    pub fn matrix<T: Display + Clone>(&mut self, name: &str, degree: Option<usize>, m: &Matrix<T>) {
        let entries: Vec<Vec<String>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let label = match degree {
            Some(q) => format!("{name}^{q}"),
            None => name.to_string(),
        };
        let human = format!("{label} ({}x{}) =\n{m}", m.rows(), m.cols());
        self.emit(
            human.trim_end(),
            json!({
                "record": "matrix",
                "name": name,
                "degree": degree,
                "rows": m.rows(),
                "cols": m.cols(),
                "entries": entries,
            }),
        );
    }

    pub fn check(&mut self, identity: &str, passed: bool, detail: impl Display) {
        let detail = detail.to_string();
        let mark = if passed { "PASS" } else { "FAIL" };
        let human = if detail.is_empty() {
            format!("[{mark}] {identity}")
        } else {
            format!("[{mark}] {identity}: {detail}")
        };
        self.emit(
            &human,
            json!({"record": "check", "identity": identity, "passed": passed, "detail": detail}),
        );
        if !passed {
            self.failures.push(identity.to_string());
        }
    }

    pub fn note(&mut self, topic: &str, text: impl Display) {
        let text = text.to_string();
        self.emit(
            &format!("note ({topic}): {text}"),
            json!({"record": "note", "topic": topic, "text": text}),
        );
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    pub fn summary(&mut self) {
        let n = self.failures.len();
        let human = if n == 0 {
            "all identities passed".to_string()
        } else {
            format!("{n} identities failed: {}", self.failures.join(", "))
        };
        let failed = self.failures.clone();
        self.emit(
            &human,
            json!({"record": "summary", "passed": n == 0, "failed": failed}),
        );
    }
}
