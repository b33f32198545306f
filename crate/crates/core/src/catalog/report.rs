use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The source value is inconsistent and a recorded correction holds.
    Erratum,
    /// Not applicable, or the source has no data for it.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Erratum => "ERRATUM",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    pub fn pass(name: &str, detail: impl Into<String>) -> Check {
        Check::new(name, Status::Pass, detail)
    }

    pub fn skip(name: &str, detail: impl Into<String>) -> Check {
        Check::new(name, Status::Skip, detail)
    }

    /// Pass when `ok`, fail otherwise.
    pub fn test(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    /// Compare an expected value with a recomputed one.
    pub fn compare<T: PartialEq + fmt::Display>(name: &str, expected: T, got: T) -> Check {
        if expected == got {
            Check::pass(name, format!("{got}"))
        } else {
            Check::new(
                name,
                Status::Fail,
                format!("expected {expected}, got {got}"),
            )
        }
    }
}

/// A named list of checks.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<7} {:<24} {}",
                c.status.to_string(),
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}
