//! Verification reports: one entry per checked identity.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub status: Status,
    /// Basis indices of the inputs on which the identity fails.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<usize>,
    /// Output coordinate where the two sides first differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(title: &str) -> Report {
        Report { title: title.to_string(), entries: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn get(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Records a yes/no fact.
    pub fn check(&mut self, id: &str, ok: bool, detail: impl Into<String>) -> bool {
        let detail = if ok { String::new() } else { detail.into() };
        self.entries.push(CheckEntry {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: Vec::new(),
            coordinate: None,
            lhs: None,
            rhs: None,
            detail,
        });
        ok
    }

    /// Compares two tensors of equal shape whose first `inputs` axes range
    /// over basis inputs; on failure the first differing entry supplies the
    /// witness and the coordinate.
    pub fn compare(&mut self, id: &str, lhs: &SparseTensor, rhs: &SparseTensor, inputs: usize) -> bool {
        if lhs.shape != rhs.shape {
            return self.check(id, false, format!("shape {:?} against {:?}", lhs.shape, rhs.shape));
        }
        match lhs.first_difference(rhs) {
            None => self.check(id, true, ""),
            Some((idx, a, b)) => {
                self.entries.push(CheckEntry {
                    id: id.to_string(),
                    status: Status::Fail,
                    witness: idx[..inputs].to_vec(),
                    coordinate: Some(idx[inputs..].to_vec()),
                    lhs: Some(a.to_canonical()),
                    rhs: Some(b.to_canonical()),
                    detail: String::new(),
                });
                false
            }
        }
    }

    /// Compares two scalars.
    pub fn compare_scalar(&mut self, id: &str, lhs: &Scalar, rhs: &Scalar) -> bool {
        let ok = lhs == rhs;
        self.entries.push(CheckEntry {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: Vec::new(),
            coordinate: None,
            lhs: (!ok).then(|| lhs.to_canonical()),
            rhs: (!ok).then(|| rhs.to_canonical()),
            detail: String::new(),
        });
        ok
    }

    /// Records the outcome of a computation that may itself fail.
    pub fn outcome<T>(&mut self, id: &str, r: &crate::Result<T>) -> bool {
        match r {
            Ok(_) => self.check(id, true, ""),
            Err(e) => self.check(id, false, e.to_string()),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Sorts by id, then witness; the order of evaluation never leaks out.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| (&a.id, &a.witness).cmp(&(&b.id, &b.witness)));
    }

    /// `{title, verdict, passed, failed, entries}`.
    pub fn to_json(&self) -> String {
        let fails = self.failures().count();
        let v = serde_json::json!({
            "title": self.title,
            "verdict": if fails == 0 { "pass" } else { "fail" },
            "passed": self.entries.len() - fails,
            "failed": fails,
            "entries": self.entries,
        });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for e in &self.entries {
            let tag = if e.passed() { "pass" } else { "FAIL" };
            write!(f, "  {tag}  {}", e.id)?;
            if !e.witness.is_empty() {
                let w: Vec<String> = e.witness.iter().map(|i| format!("e{i}")).collect();
                write!(f, "  on ({})", w.join(", "))?;
            }
            if let Some(c) = &e.coordinate {
                write!(f, "  at {c:?}: {} != {}", e.lhs.as_deref().unwrap_or("?"), e.rhs.as_deref().unwrap_or("?"))?;
            } else if let (Some(l), Some(r)) = (&e.lhs, &e.rhs) {
                write!(f, "  {l} != {r}")?;
            }
            if !e.detail.is_empty() {
                write!(f, "  {}", e.detail)?;
            }
            writeln!(f)?;
        }
        let fails = self.failures().count();
        if fails == 0 {
            write!(f, "all {} checks passed", self.entries.len())
        } else {
            write!(f, "{fails} of {} checks failed", self.entries.len())
        }
    }
}
