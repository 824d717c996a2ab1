//! Reports emitted by the command-line front end, as text or JSON.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::check::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Check> for Entry {
    fn from(c: &Check) -> Self {
        Entry {
            name: c.name.clone(),
            verdict: if c.passed { Verdict::Pass } else { Verdict::Fail },
            witness: c.witness.clone(),
            checked: c.checked,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub title: String,
    pub facts: Vec<(String, String)>,
    pub checks: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), facts: Vec::new(), checks: Vec::new(), elapsed_ms: None }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.facts.push((key.into(), value.to_string()));
        self
    }

    pub fn check(&mut self, c: &Check) -> &mut Self {
        self.checks.push(c.into());
        self
    }

    pub fn checks<'a>(&mut self, cs: impl IntoIterator<Item = &'a Check>) -> &mut Self {
        for c in cs {
            self.check(c);
        }
        self
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) -> &mut Self {
        self.checks.push(Entry {
            name: name.into(),
            verdict: Verdict::Skip,
            witness: None,
            checked: 0,
            note: Some(why.into()),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub passed: bool,
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Emitted file content, if the command produces one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, subject: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            subject: subject.into(),
            passed: true,
            sections: Vec::new(),
            warnings: Vec::new(),
            artifact: None,
        }
    }

    pub fn push(&mut self, mut s: Section, elapsed: Option<Duration>) {
        s.elapsed_ms = elapsed.map(|d| (d.as_secs_f64() * 1e6).round() / 1e3);
        self.passed &= s.checks.iter().all(|e| e.verdict != Verdict::Fail);
        self.sections.push(s);
    }

    pub fn failures(&self) -> usize {
        self.sections
            .iter()
            .flat_map(|s| &s.checks)
            .filter(|e| e.verdict == Verdict::Fail)
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.command, self.subject).unwrap();
        for s in &self.sections {
            match s.elapsed_ms {
                Some(ms) => writeln!(out, "== {} ({ms} ms)", s.title).unwrap(),
                None => writeln!(out, "== {}", s.title).unwrap(),
            }
            for (k, v) in &s.facts {
                writeln!(out, "  {k}: {v}").unwrap();
            }
            for e in &s.checks {
                let tag = match e.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Skip => "skip",
                };
                write!(out, "  [{tag}] {}", e.name).unwrap();
                if e.verdict != Verdict::Skip {
                    write!(out, " ({} checked)", e.checked).unwrap();
                }
                if let Some(w) = &e.witness {
                    write!(out, " witness {w:?}").unwrap();
                }
                if let Some(n) = &e.note {
                    write!(out, " ({n})").unwrap();
                }
                out.push('\n');
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        let total: usize = self.sections.iter().map(|s| s.checks.len()).sum();
        if self.passed {
            writeln!(out, "result: pass ({total} checks)").unwrap();
        } else {
            writeln!(out, "result: FAIL ({} of {total} checks failed)", self.failures()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_check_sets_verdict() {
        let mut r = Report::new("check-lattice", "X");
        let mut s = Section::new("a");
        s.fact("size", 2).check(&Check::pass("ok", 3)).check(&Check::fail("bad", vec![1, 0], 2));
        s.skip("later", "not applicable");
        r.push(s, None);
        assert!(!r.passed);
        assert_eq!(r.failures(), 1);
        let text = r.to_text();
        assert!(text.contains("[FAIL] bad (2 checked) witness [1, 0]"));
        assert!(text.contains("[skip] later (not applicable)"));
        assert!(text.ends_with("result: FAIL (1 of 3 checks failed)\n"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["sections"][0]["checks"][1]["witness"], serde_json::json!([1, 0]));
        assert_eq!(json["sections"][0]["checks"][2]["verdict"], "skip");
        assert!(json["sections"][0].get("elapsed_ms").is_none());
    }
}
