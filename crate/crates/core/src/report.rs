//! Line-oriented verification reports.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { lhs: String, rhs: String },
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub params: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, params: impl Into<String>, outcome: Outcome) {
        self.checks.push(Check {
            name: name.into(),
            params: params.into(),
            outcome,
        });
    }

    /// Records a comparison; both sides are kept only on failure.
    pub fn compare<T: PartialEq + fmt::Display>(&mut self, name: &str, params: impl Into<String>, lhs: &T, rhs: &T) {
        let outcome = if lhs == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }
        };
        self.push(name, params, outcome);
    }

    pub fn check(
        &mut self,
        name: &str,
        params: impl Into<String>,
        ok: bool,
        detail: impl FnOnce() -> (String, String),
    ) {
        let outcome = if ok {
            Outcome::Pass
        } else {
            let (lhs, rhs) = detail();
            Outcome::Fail { lhs, rhs }
        };
        self.push(name, params, outcome);
    }

    pub fn skip(&mut self, name: &str, params: impl Into<String>, reason: impl Into<String>) {
        self.push(name, params, Outcome::Skip(reason.into()));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    pub fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.checks.iter().filter(|c| pred(&c.outcome)).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = if self.params.is_empty() {
            String::new()
        } else {
            format!(" [{}]", self.params)
        };
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {}{}", self.name, params),
            Outcome::Fail { lhs, rhs } => write!(f, "FAIL {}{}: {} != {}", self.name, params, lhs, rhs),
            Outcome::Skip(why) => write!(f, "SKIP {}{}: {}", self.name, params, why),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "# {}", self.title)?;
        }
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let pass = self.count(|o| *o == Outcome::Pass);
        let fail = self.count(|o| matches!(o, Outcome::Fail { .. }));
        let skip = self.count(|o| matches!(o, Outcome::Skip(_)));
        writeln!(f, "summary: {pass} passed, {fail} failed, {skip} skipped")
    }
}
