//! Group specifications and the coefficient-vector (`v`) file format.
//!
//! ```text
//! # claim code 54 31 10
//! # claim dual 54 23 12
//! # best-known code 54 31 9
//! group g1 9 6 2
//! 0 1 1 1 1 1 1 0 1 0 ...
//! ```
//!
//! The header is `group g1 n m k`, `group g2 n1 k1 n2 k2 m` or
//! `group table <path>`. Every character after it other than `0`/`1` is
//! dropped, and the remaining bit count must equal the group order.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::groupring::GroupRingElement;
use crate::groups::{
    make_g1, make_g2, FiniteGroup, SemidirectParams1, SemidirectParams2, Validation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    G1(SemidirectParams1),
    G2(SemidirectParams2),
    Table(PathBuf),
}

impl GroupSpec {
    /// Builds the group. Relative table paths are resolved against `base`.
    pub fn build(&self, base: Option<&Path>) -> Result<Arc<FiniteGroup>> {
        let g = match self {
            GroupSpec::G1(p) => make_g1(*p)?,
            GroupSpec::G2(p) => make_g2(*p)?,
            GroupSpec::Table(path) => {
                let full = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                let text = std::fs::read_to_string(&full)?;
                FiniteGroup::parse_cayley(&text, &path.display().to_string(), Validation::Auto)?
            }
        };
        Ok(Arc::new(g))
    }

    /// Group order, when known without reading a table file.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::G1(p) => Some(p.order()),
            GroupSpec::G2(p) => Some(p.order()),
            GroupSpec::Table(_) => None,
        }
    }

    fn from_words(words: &[&str], line: usize) -> Result<Self> {
        let nums = |ws: &[&str]| -> Result<Vec<u64>> {
            ws.iter()
                .map(|w| {
                    w.parse::<u64>()
                        .map_err(|_| Error::parse(line, format!("bad group parameter {w:?}")))
                })
                .collect()
        };
        match words {
            ["g1", rest @ ..] if rest.len() == 3 => {
                let p = nums(rest)?;
                Ok(GroupSpec::G1(SemidirectParams1::new(p[0], p[1], p[2])?))
            }
            ["g2", rest @ ..] if rest.len() == 5 => {
                let p = nums(rest)?;
                Ok(GroupSpec::G2(SemidirectParams2::new(p[0], p[1], p[2], p[3], p[4])?))
            }
            ["table", path] => Ok(GroupSpec::Table(PathBuf::from(path))),
            _ => Err(Error::parse(
                line,
                "expected `g1 n m k`, `g2 n1 k1 n2 k2 m` or `table <path>`",
            )),
        }
    }
}

/// Command-line form: `g1:n,m,k`, `g2:n1,k1,n2,k2,m` or `table:<path>`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(1, format!("group spec {s:?} lacks `kind:`")))?;
        if kind == "table" {
            return Ok(GroupSpec::Table(PathBuf::from(rest)));
        }
        let mut words = vec![kind];
        words.extend(rest.split(',').map(str::trim));
        Self::from_words(&words, 1)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::G1(p) => write!(f, "g1:{},{},{}", p.n, p.m, p.k),
            GroupSpec::G2(p) => write!(f, "g2:{},{},{},{},{}", p.n1, p.k1, p.n2, p.k2, p.m),
            GroupSpec::Table(path) => write!(f, "table:{}", path.display()),
        }
    }
}

/// Claimed parameters; `d` may be unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[{},{},{}]", self.n, self.k, d),
            None => write!(f, "[{},{},?]", self.n, self.k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Code,
    Dual,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Code => "code",
            Side::Dual => "dual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFile {
    pub group: GroupSpec,
    /// Coefficients after stripping; length checked against the group by [`VFile::element`].
    pub bits: BitVector,
    pub code: Option<Claim>,
    pub dual: Option<Claim>,
    /// Previous best-known parameters of whichever side the file improves on.
    pub best_known: Option<(Side, Claim)>,
}

impl VFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut code = None;
        let mut dual = None;
        let mut best_known = None;
        let mut group = None;
        let mut raw = String::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let trimmed = line.trim();
            if group.is_some() {
                raw.push_str(trimmed.split('#').next().unwrap_or(""));
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                let words: Vec<&str> = comment.split_whitespace().collect();
                match words.as_slice() {
                    ["claim", side, rest @ ..] => {
                        let claim = parse_claim(rest, lineno)?;
                        match parse_side(side, lineno)? {
                            Side::Code => code = Some(claim),
                            Side::Dual => dual = Some(claim),
                        }
                    }
                    ["best-known", side, rest @ ..] => {
                        best_known = Some((parse_side(side, lineno)?, parse_claim(rest, lineno)?));
                    }
                    _ => {}
                }
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let words: Vec<&str> = trimmed.split_whitespace().collect();
            match words.split_first() {
                Some((&"group", rest)) => group = Some(GroupSpec::from_words(rest, lineno)?),
                _ => return Err(Error::parse(lineno, "expected `group ...` header")),
            }
        }
        let group = group.ok_or_else(|| Error::parse(1, "missing `group ...` header"))?;
        let bits = BitVector::parse_lenient(&raw);
        if let Some(order) = group.order() {
            check_length(&bits, order)?;
        }
        Ok(Self {
            group,
            bits,
            code,
            dual,
            best_known,
        })
    }

    pub fn load(path: &Path) -> Result<(Self, Arc<FiniteGroup>)> {
        let v = Self::parse(&std::fs::read_to_string(path)?)?;
        let g = v.group.build(path.parent())?;
        check_length(&v.bits, g.order())?;
        Ok((v, g))
    }

    /// The group-ring element, after checking the bit count against `group`.
    pub fn element(&self, group: Arc<FiniteGroup>) -> Result<GroupRingElement> {
        check_length(&self.bits, group.order())?;
        GroupRingElement::new(group, self.bits.clone())
    }

    /// Serializes in the same format, wrapping the bits at 60 characters.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (side, c) in [(Side::Code, self.code), (Side::Dual, self.dual)] {
            if let Some(c) = c {
                out += &format!("# claim {side} {} {}", c.n, c.k);
                if let Some(d) = c.d {
                    out += &format!(" {d}");
                }
                out.push('\n');
            }
        }
        if let Some((side, c)) = self.best_known {
            out += &format!("# best-known {side} {} {} {}\n", c.n, c.k, c.d.unwrap_or(0));
        }
        let header = self.group.to_string().replacen(':', " ", 1).replace(',', " ");
        out += &format!("group {header}\n");
        let s = self.bits.to_string();
        for chunk in s.as_bytes().chunks(60) {
            out.push_str(std::str::from_utf8(chunk).expect("ascii"));
            out.push('\n');
        }
        out
    }
}

fn check_length(bits: &BitVector, order: usize) -> Result<()> {
    if bits.len() != order {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "coefficient string has {} bits after stripping, group order is {order}",
                bits.len()
            ),
        });
    }
    Ok(())
}

fn parse_side(s: &str, line: usize) -> Result<Side> {
    match s {
        "code" => Ok(Side::Code),
        "dual" => Ok(Side::Dual),
        _ => Err(Error::parse(line, format!("expected `code` or `dual`, found {s:?}"))),
    }
}

fn parse_claim(words: &[&str], line: usize) -> Result<Claim> {
    let nums: Vec<usize> = words
        .iter()
        .map(|w| {
            w.parse()
                .map_err(|_| Error::parse(line, format!("bad claim value {w:?}")))
        })
        .collect::<Result<_>>()?;
    match nums.as_slice() {
        [n, k] => Ok(Claim { n: *n, k: *k, d: None }),
        [n, k, d] => Ok(Claim {
            n: *n,
            k: *k,
            d: Some(*d),
        }),
        _ => Err(Error::parse(line, "claim needs `n k` or `n k d`")),
    }
}
