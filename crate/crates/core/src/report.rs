//! Pass/fail reports shared by validators and the CLI.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub key: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), entries: Vec::new() }
    }

    pub fn check(&mut self, key: &str, pass: bool, detail: impl Into<String>) {
        self.entries.push(Entry { key: key.to_string(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "{}", self.title)?;
        }
        for e in &self.entries {
            let mark = if e.pass { "pass" } else { "FAIL" };
            if e.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", e.key)?;
            } else {
                writeln!(f, "  [{mark}] {}: {}", e.key, e.detail)?;
            }
        }
        Ok(())
    }
}
