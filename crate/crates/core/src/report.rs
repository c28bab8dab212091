//! Structured results shared by the library checks and the command line.
//!
//! A [`Report`] renders to text and to JSON from the same fields, so the
//! two outputs always carry the same content.

use std::fmt::Write as _;

use serde::Serialize;

/// One named pass/fail assertion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A two-column integer table such as a Hilbert function or Betti numbers.
/// A missing value means no finite value is claimed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub key: String,
    pub value: String,
    pub rows: Vec<(i64, Option<i64>)>,
}

/// A named matrix, printed in the artifact matrix syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    pub certificates: Vec<Certificate>,
    pub notices: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn table(&mut self, name: &str, key: &str, value: &str, rows: Vec<(i64, i64)>) {
        self.partial_table(name, key, value, rows.into_iter().map(|(k, v)| (k, Some(v))).collect());
    }

    pub fn partial_table(&mut self, name: &str, key: &str, value: &str, rows: Vec<(i64, Option<i64>)>) {
        self.tables.push(Table {
            name: name.into(),
            key: key.into(),
            value: value.into(),
            rows,
        });
    }

    pub fn certificate(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.certificates.push(Certificate {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn notice(&mut self, msg: impl Into<String>) {
        self.notices.push(msg.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.tables.extend(other.tables);
        self.certificates.extend(other.certificates);
        self.notices.extend(other.notices);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(s, "[{tag}] {}", c.name);
            } else {
                let _ = writeln!(s, "[{tag}] {}: {}", c.name, c.detail);
            }
        }
        for t in &self.tables {
            let _ = writeln!(s, "table {} ({} -> {})", t.name, t.key, t.value);
            for (k, v) in &t.rows {
                match v {
                    Some(v) => {
                        let _ = writeln!(s, "  {k}: {v}");
                    }
                    None => {
                        let _ = writeln!(s, "  {k}: none");
                    }
                }
            }
        }
        for c in &self.certificates {
            let _ = writeln!(s, "certificate {} = {}", c.name, c.value);
        }
        for n in &self.notices {
            let _ = writeln!(s, "notice: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_carry_the_same_numbers() {
        let mut r = Report::new("betti");
        r.check(Check::new("agree", true, ""));
        r.table("betti", "j", "beta", vec![(0, 1), (1, 1)]);
        let text = r.to_text();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(text.contains("  1: 1"));
        assert_eq!(json["tables"][0]["rows"][1][1], 1);
        assert!(r.passed());
    }
}
