//! Random search over `F_2 G` for codes that meet or beat a best-known table.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::distance::{min_distance_bz, Budget};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::groupring::GroupRingElement;
use crate::groups::FiniteGroup;
use crate::io::GroupSpec;

/// Best-known minimum distances keyed by `(n, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BklcTable {
    entries: BTreeMap<(usize, usize), usize>,
}

impl BklcTable {
    /// Parses `n,k,d` rows. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Self::default();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let nums: Vec<usize> = fields
                .iter()
                .map(|f| {
                    f.parse()
                        .map_err(|_| Error::parse(lineno, format!("bad number {f:?}")))
                })
                .collect::<Result<_>>()?;
            let [n, k, d] = nums[..] else {
                return Err(Error::parse(
                    lineno,
                    format!("expected 3 fields `n,k,d`, found {}", nums.len()),
                ));
            };
            table.insert(n, k, d).map_err(|e| match e {
                Error::InvalidTableEntry { msg, .. } => {
                    Error::parse(lineno, format!("entry ({n},{k},{d}): {msg}"))
                }
                other => other,
            })?;
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn insert(&mut self, n: usize, k: usize, d: usize) -> Result<()> {
        let bad = |msg: &str| Error::InvalidTableEntry {
            n,
            k,
            d,
            msg: msg.to_string(),
        };
        if n == 0 || k == 0 || d == 0 {
            return Err(bad("all values must be positive"));
        }
        if k > n {
            return Err(bad("k exceeds n"));
        }
        if d > n - k + 1 {
            return Err(bad("violates the Singleton bound d <= n - k + 1"));
        }
        if self.entries.insert((n, k), d).is_some() {
            return Err(bad("duplicate (n,k)"));
        }
        Ok(())
    }

    pub fn get(&self, n: usize, k: usize) -> Option<usize> {
        self.entries.get(&(n, k)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(n, k), &d)| (n, k, d))
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub group: GroupSpec,
    pub iterations: u64,
    pub seed: u64,
    /// Distance budget per candidate code.
    pub budget: Budget,
    /// Sample `v` of exactly this weight instead of uniformly.
    pub weight: Option<usize>,
    /// Use this `v` on every iteration.
    pub fixed_v: Option<BitVector>,
}

impl SearchConfig {
    pub fn new(group: GroupSpec, iterations: u64, seed: u64) -> Self {
        Self {
            group,
            iterations,
            seed,
            budget: Budget::default(),
            weight: None,
            fixed_v: None,
        }
    }
}

/// One code that met or beat the table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    /// Coefficient vector `Ψ(v)` as a 0/1 string.
    pub psi: String,
    pub group: String,
    pub n: usize,
    pub k: usize,
    /// True when the record describes `C(v)^⊥` rather than `C(v)`.
    pub dual: bool,
    pub lower: usize,
    pub upper: usize,
    pub certified: bool,
    pub best_known: usize,
    pub seed: u64,
    pub iteration: u64,
    /// Seconds since the Unix epoch, set when the record is written.
    pub timestamp: Option<u64>,
}

impl SearchRecord {
    /// Rebuilds the code the record describes.
    pub fn code(&self, group: &Arc<FiniteGroup>) -> Result<LinearCode> {
        let bits: BitVector = self.psi.parse()?;
        let v = GroupRingElement::new(group.clone(), bits)?;
        let c = LinearCode::from_group_ring(&v);
        Ok(if self.dual { c.dual() } else { c })
    }

    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Coefficient vector of iteration `iteration`; pure in `(cfg, iteration)`.
pub fn sample_v(cfg: &SearchConfig, order: usize, iteration: u64) -> Result<BitVector> {
    if let Some(v) = &cfg.fixed_v {
        if v.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                found: v.len(),
            });
        }
        return Ok(v.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(iteration);
    match cfg.weight {
        Some(w) if w > order => Err(Error::OutOfRange {
            index: w,
            len: order,
        }),
        Some(w) => {
            let mut v = BitVector::zeros(order);
            for i in sample(&mut rng, order, w) {
                v.set(i, true);
            }
            Ok(v)
        }
        None => Ok(BitVector::from_bits((0..order).map(|_| rng.random::<bool>()))),
    }
}

fn evaluate(
    cfg: &SearchConfig,
    group: &Arc<FiniteGroup>,
    table: &BklcTable,
    label: &str,
    iteration: u64,
) -> Result<Vec<SearchRecord>> {
    let psi = sample_v(cfg, group.order(), iteration)?;
    let v = GroupRingElement::new(group.clone(), psi.clone())?;
    let code = LinearCode::from_group_ring(&v);
    let dual = code.dual();
    let mut out = Vec::new();
    for (is_dual, c) in [(false, &code), (true, &dual)] {
        if c.k() == 0 {
            continue;
        }
        let Some(best) = table.get(c.n(), c.k()) else {
            continue;
        };
        let r = min_distance_bz(c, &cfg.budget)?;
        // An uncertified code can only match the table if its upper bound does.
        if r.upper >= best {
            out.push(SearchRecord {
                psi: psi.to_string(),
                group: label.to_string(),
                n: c.n(),
                k: c.k(),
                dual: is_dual,
                lower: r.lower,
                upper: r.upper,
                certified: r.certified,
                best_known: best,
                seed: cfg.seed,
                iteration,
                timestamp: None,
            });
        }
    }
    Ok(out)
}

/// Iterator over the records of a search, in iteration order.
///
/// Iterations are evaluated in parallel batches; each one draws from its own
/// RNG stream, so the output does not depend on the thread count.
pub struct Search<'a> {
    cfg: &'a SearchConfig,
    group: Arc<FiniteGroup>,
    table: &'a BklcTable,
    label: String,
    next: u64,
    pending: std::vec::IntoIter<Result<SearchRecord>>,
}

const BATCH: u64 = 32;

impl Iterator for Search<'_> {
    type Item = Result<SearchRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(r) = self.pending.next() {
                return Some(r);
            }
            if self.next >= self.cfg.iterations {
                return None;
            }
            let end = (self.next + BATCH).min(self.cfg.iterations);
            let batch: Vec<Result<SearchRecord>> = (self.next..end)
                .into_par_iter()
                .map(|it| evaluate(self.cfg, &self.group, self.table, &self.label, it))
                .collect::<Vec<_>>()
                .into_iter()
                .flat_map(|r| match r {
                    Ok(recs) => recs.into_iter().map(Ok).collect::<Vec<_>>(),
                    Err(e) => vec![Err(e)],
                })
                .collect();
            self.next = end;
            self.pending = batch.into_iter();
        }
    }
}

pub fn random_search<'a>(
    cfg: &'a SearchConfig,
    group: Arc<FiniteGroup>,
    table: &'a BklcTable,
) -> Result<Search<'a>> {
    if cfg.iterations == 0 {
        return Err(Error::InvalidParams("iterations must be at least 1".into()));
    }
    Ok(Search {
        cfg,
        label: cfg.group.to_string(),
        group,
        table,
        next: 0,
        pending: Vec::new().into_iter(),
    })
}

/// Regenerates the coefficient vector of a record from its seed and iteration.
pub fn replay(cfg: &SearchConfig, order: usize, record: &SearchRecord) -> Result<BitVector> {
    let replay_cfg = SearchConfig {
        seed: record.seed,
        ..cfg.clone()
    };
    sample_v(&replay_cfg, order, record.iteration)
}

/// Drops records whose code equals that of an earlier record.
pub fn dedup_by_unit(
    group: &Arc<FiniteGroup>,
    records: Vec<SearchRecord>,
) -> Result<Vec<SearchRecord>> {
    let mut kept: Vec<(LinearCode, SearchRecord)> = Vec::new();
    for r in records {
        let c = r.code(group)?;
        if !kept.iter().any(|(k, _)| *k == c) {
            kept.push((c, r));
        }
    }
    Ok(kept.into_iter().map(|(_, r)| r).collect())
}

/// Appends a record as one JSON line, stamping the current time.
pub fn write_record<W: Write + ?Sized>(out: &mut W, record: &SearchRecord) -> Result<()> {
    let mut r = record.clone();
    r.timestamp = Some(
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    );
    writeln!(out, "{}", r.to_json_line()?)?;
    Ok(())
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<SearchRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|e| Error::parse(i + 1, e.to_string()))?,
        );
    }
    Ok(out)
}
