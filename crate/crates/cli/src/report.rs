use std::fmt;

use serde::Serialize;

use grcodes::distance::DistanceResult;
use grcodes::io::Claim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Partial,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Partial => "PARTIAL",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: String,
    pub side: String,
    pub expected_n: usize,
    pub expected_k: usize,
    pub expected_d: Option<usize>,
    pub observed_n: usize,
    pub observed_k: usize,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub certified: bool,
    pub status: Status,
    pub note: Option<String>,
    pub elapsed_secs: f64,
}

impl Entry {
    /// Grades observed parameters against a claim.
    ///
    /// `distance` is `None` when no distance work was done (zero budget).
    pub fn grade(
        id: &str,
        side: &str,
        expected: Claim,
        n: usize,
        k: usize,
        distance: Option<&DistanceResult>,
        elapsed_secs: f64,
    ) -> Self {
        let (lower, upper, certified) = match distance {
            Some(r) => (Some(r.lower), Some(r.upper), r.certified),
            None => (None, None, false),
        };
        let (status, note) = if n != expected.n || k != expected.k {
            (
                Status::Fail,
                Some(format!("dimension mismatch: observed [{n},{k}]")),
            )
        } else {
            match (expected.d, distance) {
                (None, _) => (Status::Pass, None),
                (Some(_), None) => (Status::Partial, Some("dimension only".to_string())),
                (Some(d), Some(r)) if r.certified && r.upper == d => (Status::Pass, None),
                (Some(d), Some(r)) if r.certified => (
                    Status::Fail,
                    Some(format!("certified distance {} differs from {d}", r.upper)),
                ),
                (Some(d), Some(r)) if r.contains(d) => (
                    Status::Partial,
                    Some("budget exhausted before certification".to_string()),
                ),
                (Some(d), Some(r)) => (
                    Status::Fail,
                    Some(format!("bounds {}..{} exclude {d}", r.lower, r.upper)),
                ),
            }
        };
        Self {
            id: id.to_string(),
            side: side.to_string(),
            expected_n: expected.n,
            expected_k: expected.k,
            expected_d: expected.d,
            observed_n: n,
            observed_k: k,
            lower,
            upper,
            certified,
            status,
            note,
            elapsed_secs,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected = Claim {
            n: self.expected_n,
            k: self.expected_k,
            d: self.expected_d,
        };
        let d = match (self.lower, self.upper) {
            (Some(l), Some(u)) if l == u => format!("d={u}"),
            (Some(l), Some(u)) => format!("d={l}..{u}"),
            _ => "d=?".to_string(),
        };
        write!(
            f,
            "{:<7} {:<5} expected {:<14} observed [{},{}] {:<10} {:<8} {:>8.2}s",
            self.id,
            self.side,
            expected.to_string(),
            self.observed_n,
            self.observed_k,
            d,
            self.status.to_string(),
            self.elapsed_secs
        )?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    /// 0 when everything passed, 1 on any failure, 3 when only partials remain.
    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            1
        } else if self.entries.iter().any(|e| e.status == Status::Partial) {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        let count = |s| self.entries.iter().filter(|e| e.status == s).count();
        write!(
            f,
            "{} pass, {} partial, {} fail",
            count(Status::Pass),
            count(Status::Partial),
            count(Status::Fail)
        )
    }
}
