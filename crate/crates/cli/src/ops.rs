//! Derived-code operation strings such as `P1 S2 E1` or `P@3,7`.
//!
//! Each token is `P`, `S` or `E`, an optional repeat count, and for `P`/`S`
//! an optional `@` list of 1-based positions, one per repetition. Positions
//! refer to the code as it stands when that step runs. Without positions the
//! last coordinate is used.

use std::fmt;
use std::str::FromStr;

use grcodes::{Error, LinearCode, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    /// 0-based position; `None` means the last coordinate.
    Puncture(Option<usize>),
    Shorten(Option<usize>),
    Extend,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpString(pub Vec<Op>);

impl FromStr for OpString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut ops = Vec::new();
        for token in s.split_whitespace() {
            let bad = |msg: &str| Error::parse(1, format!("bad operation {token:?}: {msg}"));
            let mut chars = token.chars();
            let kind = chars.next().expect("non-empty token").to_ascii_uppercase();
            let rest = chars.as_str();
            let (count, positions) = match rest.split_once('@') {
                Some((c, p)) => {
                    let ps = p
                        .split(',')
                        .map(|x| match x.trim().parse::<usize>() {
                            Ok(0) | Err(_) => Err(bad("positions are 1-based integers")),
                            Ok(v) => Ok(v - 1),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (c, Some(ps))
                }
                None => (rest, None),
            };
            let count = if count.is_empty() {
                positions.as_ref().map_or(1, Vec::len)
            } else {
                count.parse::<usize>().map_err(|_| bad("count must be an integer"))?
            };
            if let Some(ps) = &positions {
                if ps.len() != count {
                    return Err(bad("count and number of positions differ"));
                }
            }
            let position = |i: usize| positions.as_ref().map(|p| p[i]);
            for i in 0..count {
                ops.push(match kind {
                    'P' => Op::Puncture(position(i)),
                    'S' => Op::Shorten(position(i)),
                    'E' if positions.is_none() => Op::Extend,
                    'E' => return Err(bad("extension takes no positions")),
                    _ => return Err(bad("expected P, S or E")),
                });
            }
        }
        Ok(OpString(ops))
    }
}

impl fmt::Display for OpString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|op| match op {
                Op::Puncture(None) => "P1".to_string(),
                Op::Puncture(Some(p)) => format!("P@{}", p + 1),
                Op::Shorten(None) => "S1".to_string(),
                Op::Shorten(Some(p)) => format!("S@{}", p + 1),
                Op::Extend => "E1".to_string(),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl OpString {
    /// Applies the operations left to right.
    pub fn apply(&self, code: &LinearCode) -> Result<LinearCode> {
        let mut c = code.clone();
        for op in &self.0 {
            let last = c.n().saturating_sub(1);
            c = match *op {
                Op::Puncture(p) => c.puncture(p.unwrap_or(last))?,
                Op::Shorten(p) => c.shorten(p.unwrap_or(last))?,
                Op::Extend => c.extend(),
            };
        }
        Ok(c)
    }

    /// Distance guaranteed after the operations for a base of distance `d`.
    /// Shortening never lowers it, puncturing costs at most one, and extension
    /// rounds up to even.
    pub fn distance_floor(&self, d: usize) -> usize {
        self.0.iter().fold(d, |d, op| match op {
            Op::Puncture(_) => d.saturating_sub(1),
            Op::Shorten(_) => d,
            Op::Extend => d + d % 2,
        })
    }
}
