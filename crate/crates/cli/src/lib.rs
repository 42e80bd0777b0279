//! Command implementations behind the `grcodes` binary.

pub mod ops;
pub mod report;

use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use grcodes::distance::{find_word_of_weight_at_most, DistanceResult};
use grcodes::groups::{first_element_of_order, regular_permutations};
use grcodes::io::{Claim, GroupSpec, VFile};
use grcodes::search::{self, BklcTable, SearchConfig};
use grcodes::{
    construction_x, data, min_distance_bz, Budget, Error, FiniteGroup, LinearCode, Permutation,
    Result,
};

use ops::OpString;
use report::{Entry, VerificationReport};

#[derive(Debug, Parser)]
#[command(name = "grcodes", version, about = "Binary linear codes from group-ring matrices")]
pub struct Cli {
    /// Wall-clock limit per distance computation, in seconds.
    #[arg(long, global = true, env = "GRCODES_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,
    /// Codeword-visit limit per distance computation.
    #[arg(long, global = true, env = "GRCODES_BUDGET_WORK")]
    pub budget_work: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// More log output; repeat for more.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rebuild bundled or supplied codes and check their parameters.
    Verify(VerifyArgs),
    /// Split a code into its fixed and even-cycle subcodes under an automorphism.
    Decompose(DecomposeArgs),
    /// Glue an outer code, a subcode and an auxiliary code with Construction X.
    Constructx(ConstructxArgs),
    /// Puncture, shorten and extend a code.
    Derive(DeriveArgs),
    /// Random search for codes meeting a best-known table.
    Search(SearchArgs),
    /// Describe bundled data or a group.
    Info(InfoArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideSel {
    Code,
    Dual,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Bundled ids (v1..v15, w105); all of them when empty.
    pub ids: Vec<String>,
    /// Additional v-files to verify against their own claims.
    #[arg(long = "file")]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = SideSel::Both)]
    pub side: SideSel,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Source {
    /// Bundled vector id.
    #[arg(long, group = "source")]
    pub id: Option<String>,
    /// Coefficient-vector file.
    #[arg(long, group = "source")]
    pub vfile: Option<PathBuf>,
    /// Generator-matrix file.
    #[arg(long, group = "source")]
    pub gen: Option<PathBuf>,
    /// Use the dual of the code.
    #[arg(long)]
    pub dual: bool,
    /// Group acting on the coordinates of a --gen code.
    #[arg(long)]
    pub group: Option<GroupSpec>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub source: Source,
    /// Order of the automorphism to pick from the group.
    #[arg(long, requires = "from_group")]
    pub order: Option<usize>,
    /// Take the automorphism from the regular action of the code's group.
    #[arg(long, requires = "order")]
    pub from_group: bool,
    /// Explicit automorphism as a 1-based image list.
    #[arg(long, conflicts_with_all = ["order", "from_group"])]
    pub perm_file: Option<PathBuf>,
    #[arg(long)]
    pub out_fixed: Option<PathBuf>,
    #[arg(long)]
    pub out_even: Option<PathBuf>,
    /// Also compute distance bounds of both subcodes.
    #[arg(long)]
    pub distance: bool,
}

#[derive(Debug, Args)]
pub struct ConstructxArgs {
    #[arg(long)]
    pub outer: PathBuf,
    #[arg(long)]
    pub inner: PathBuf,
    /// Generator file, or `rep:N`, `even:N`, `full:N`.
    #[arg(long)]
    pub aux: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Expected parameters `n,k[,d]`; sets the exit status.
    #[arg(long)]
    pub expect: Option<String>,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub source: Source,
    /// Operations, e.g. "P1 S2 E1" or "P@3,5".
    #[arg(long, default_value = "")]
    pub ops: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Expected parameters `n,k[,d]`; sets the exit status.
    #[arg(long)]
    pub expect: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// `g1:n,m,k`, `g2:n1,k1,n2,k2,m` or `table:<path>`.
    #[arg(long)]
    pub group: GroupSpec,
    #[arg(long, default_value_t = 100)]
    pub iters: u64,
    /// Sample coefficient vectors of this weight.
    #[arg(long)]
    pub weight: Option<usize>,
    /// Evaluate the vector in this v-file on every iteration.
    #[arg(long)]
    pub fix_v: Option<PathBuf>,
    /// Best-known table CSV (default: bundled).
    #[arg(long)]
    pub bklc: Option<PathBuf>,
    /// Append records here instead of printing them.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Drop records generating a code already reported.
    #[arg(long)]
    pub dedup: bool,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    /// Describe this group instead of the bundled data.
    #[arg(long)]
    pub group: Option<GroupSpec>,
}

impl Cli {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(s) = self.budget_seconds {
            b.max_time = Some(Duration::from_secs_f64(s.max(0.0)));
        }
        if let Some(w) = self.budget_work {
            b.max_work = Some(w);
        }
        b
    }
}

/// Runs a parsed command line, writing human output to `out`.
/// Returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let budget = cli.budget();
    match &cli.command {
        Command::Verify(a) => verify(a, &budget, cli.seed, out),
        Command::Decompose(a) => decompose(a, &budget, cli.seed, out),
        Command::Constructx(a) => constructx(a, &budget, cli.seed, out),
        Command::Derive(a) => derive(a, &budget, cli.seed, out),
        Command::Search(a) => run_search(a, &budget, cli.seed, out),
        Command::Info(a) => info(a, out),
    }
}

/// BZ within `budget`; when that stops short of `target`, a randomized
/// search for a word of weight `target` tries to tighten the upper bound.
pub fn distance_with_witness(
    code: &LinearCode,
    target: Option<usize>,
    budget: &Budget,
    seed: u64,
) -> Result<DistanceResult> {
    let mut r = min_distance_bz(code, budget)?;
    if let Some(t) = target {
        if !r.certified && r.upper > t && t >= 1 {
            let ws = find_word_of_weight_at_most(code, t, budget, seed)?;
            if let Some(w) = ws.word {
                r.upper = w.weight();
                r.witness = w;
                r.seed = Some(seed);
                r.lower = r.lower.min(r.upper);
                r.certified = r.lower == r.upper;
            }
            r.elapsed += ws.elapsed;
        }
    }
    Ok(r)
}

fn grade(
    id: &str,
    side: &str,
    claim: Claim,
    code: &LinearCode,
    budget: &Budget,
    seed: u64,
) -> Result<Entry> {
    let start = Instant::now();
    let dist = if budget.is_zero() || code.k() == 0 || claim.d.is_none() {
        None
    } else {
        Some(distance_with_witness(code, claim.d, budget, seed)?)
    };
    if let Some(r) = &dist {
        debug_assert!(code.contains(&r.witness));
    }
    Ok(Entry::grade(
        id,
        side,
        claim,
        code.n(),
        code.k(),
        dist.as_ref(),
        start.elapsed().as_secs_f64(),
    ))
}

fn verify(a: &VerifyArgs, budget: &Budget, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let mut inputs: Vec<(String, VFile, Arc<FiniteGroup>)> = Vec::new();
    let ids: Vec<String> = if a.ids.is_empty() && a.files.is_empty() {
        data::ids().map(str::to_string).collect()
    } else {
        a.ids.clone()
    };
    for id in ids {
        let (v, g) = data::load(&id)
            .ok_or_else(|| Error::InvalidParams(format!("unknown bundled id {id:?}")))??;
        inputs.push((id, v, g));
    }
    for path in &a.files {
        let (v, g) = VFile::load(path)?;
        inputs.push((path.display().to_string(), v, g));
    }

    let mut report = VerificationReport::default();
    for (id, v, g) in inputs {
        let code = LinearCode::from_group_ring(&v.element(g)?);
        if a.side != SideSel::Dual {
            if let Some(claim) = v.code {
                let e = grade(&id, "code", claim, &code, budget, seed)?;
                if !a.json {
                    writeln!(out, "{e}")?;
                }
                report.push(e);
            }
        }
        if a.side != SideSel::Code {
            if let Some(claim) = v.dual {
                let e = grade(&id, "dual", claim, &code.dual(), budget, seed)?;
                if !a.json {
                    writeln!(out, "{e}")?;
                }
                report.push(e);
            }
        }
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        let summary = report.to_string();
        writeln!(out, "{}", summary.lines().last().unwrap_or(""))?;
    }
    Ok(report.exit_code())
}

/// A code plus, when known, the group acting regularly on its coordinates.
pub struct Loaded {
    pub code: LinearCode,
    pub group: Option<Arc<FiniteGroup>>,
}

pub fn load_source(s: &Source) -> Result<Loaded> {
    let (code, group) = if let Some(id) = &s.id {
        let (v, g) = data::load(id)
            .ok_or_else(|| Error::InvalidParams(format!("unknown bundled id {id:?}")))??;
        (LinearCode::from_group_ring(&v.element(g.clone())?), Some(g))
    } else if let Some(path) = &s.vfile {
        let (v, g) = VFile::load(path)?;
        (LinearCode::from_group_ring(&v.element(g.clone())?), Some(g))
    } else if let Some(path) = &s.gen {
        let code = read_code(path)?;
        let group = match &s.group {
            Some(spec) => Some(spec.build(None)?),
            None => None,
        };
        (code, group)
    } else {
        return Err(Error::InvalidParams(
            "give one of --id, --vfile or --gen".into(),
        ));
    };
    if let Some(g) = &group {
        if g.order() != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                found: g.order(),
            });
        }
    }
    let code = if s.dual { code.dual() } else { code };
    Ok(Loaded { code, group })
}

pub fn read_code(path: &Path) -> Result<LinearCode> {
    LinearCode::parse_gen(&fs::read_to_string(path)?)
}

pub fn write_code(path: &Path, code: &LinearCode) -> Result<()> {
    fs::write(path, code.to_gen_string())?;
    Ok(())
}

/// Picks the automorphism for `decompose`.
pub fn select_automorphism(a: &DecomposeArgs, loaded: &Loaded) -> Result<Permutation> {
    if let Some(path) = &a.perm_file {
        return Permutation::parse(&fs::read_to_string(path)?);
    }
    let order = a
        .order
        .ok_or_else(|| Error::InvalidParams("give --perm-file or --order with --from-group".into()))?;
    let g = loaded.group.as_ref().ok_or_else(|| {
        Error::InvalidParams("--from-group needs a code built from a group (or --group)".into())
    })?;
    first_element_of_order(g, order)
        .map(|(_, p)| p)
        .ok_or_else(|| {
            Error::InvalidParams(format!(
                "the group has no element of order {order} with a uniform cycle type"
            ))
        })
}

fn describe(code: &LinearCode, budget: &Budget, seed: u64) -> Result<String> {
    if code.k() == 0 || budget.is_zero() {
        return Ok(format!("[{},{}]", code.n(), code.k()));
    }
    let r = distance_with_witness(code, None, budget, seed)?;
    Ok(if r.certified {
        format!("[{},{},{}]", code.n(), code.k(), r.upper)
    } else {
        format!("[{},{},{}..{}] (uncertified)", code.n(), code.k(), r.lower, r.upper)
    })
}

fn decompose(a: &DecomposeArgs, budget: &Budget, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_source(&a.source)?;
    let pi = select_automorphism(a, &loaded)?;
    let dec = loaded.code.decompose(&pi)?;
    writeln!(out, "code       [{},{}]", loaded.code.n(), loaded.code.k())?;
    writeln!(out, "automorphism type {}", dec.cycle_type)?;
    let show = |c: &LinearCode| -> Result<String> {
        if a.distance {
            describe(c, budget, seed)
        } else {
            Ok(format!("[{},{}]", c.n(), c.k()))
        }
    };
    writeln!(out, "fixed      {}", show(&dec.fixed)?)?;
    writeln!(out, "even       {}", show(&dec.even)?)?;
    if let Some(p) = &a.out_fixed {
        write_code(p, &dec.fixed)?;
    }
    if let Some(p) = &a.out_even {
        write_code(p, &dec.even)?;
    }
    Ok(0)
}

/// `rep:N`, `even:N`, `full:N`, or a generator file.
pub fn parse_aux(s: &str) -> Result<LinearCode> {
    if let Some((kind, n)) = s.split_once(':') {
        let n: Option<usize> = n.parse().ok().filter(|&n| n >= 1);
        match (kind, n) {
            ("rep", Some(n)) => return Ok(LinearCode::repetition(n)),
            ("even", Some(n)) => return Ok(LinearCode::even_weight(n)),
            ("full", Some(n)) => return Ok(LinearCode::full(n)),
            ("rep" | "even" | "full", None) => {
                return Err(Error::InvalidParams(format!("bad auxiliary code {s:?}")))
            }
            _ => {}
        }
    }
    read_code(Path::new(s))
}

/// `n,k` or `n,k,d`.
pub fn parse_expect(s: &str) -> Result<Claim> {
    let nums: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad expectation {s:?}")))
        })
        .collect::<Result<_>>()?;
    match nums[..] {
        [n, k] => Ok(Claim { n, k, d: None }),
        [n, k, d] => Ok(Claim { n, k, d: Some(d) }),
        _ => Err(Error::InvalidParams(format!("expectation {s:?} must be n,k[,d]"))),
    }
}

fn finish(
    label: &str,
    code: &LinearCode,
    expect: Option<&str>,
    budget: &Budget,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    match expect {
        Some(e) => {
            let claim = parse_expect(e)?;
            let entry = grade(label, "code", claim, code, budget, seed)?;
            writeln!(out, "{entry}")?;
            Ok(VerificationReport {
                entries: vec![entry],
            }
            .exit_code())
        }
        None => {
            writeln!(out, "{}", describe(code, budget, seed)?)?;
            Ok(0)
        }
    }
}

fn constructx(a: &ConstructxArgs, budget: &Budget, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let outer = read_code(&a.outer)?;
    let inner = read_code(&a.inner)?;
    let aux = parse_aux(&a.aux)?;
    let code = construction_x(&outer, &inner, &aux)?;
    if let Some(p) = &a.out {
        write_code(p, &code)?;
    }
    finish("X", &code, a.expect.as_deref(), budget, seed, out)
}

fn derive(a: &DeriveArgs, budget: &Budget, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let ops: OpString = a.ops.parse()?;
    let loaded = load_source(&a.source)?;
    let code = ops.apply(&loaded.code)?;
    if let Some(p) = &a.out {
        write_code(p, &code)?;
    }
    finish("derived", &code, a.expect.as_deref(), budget, seed, out)
}

fn run_search(a: &SearchArgs, budget: &Budget, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let group = a.group.build(None)?;
    let table = match &a.bklc {
        Some(p) => BklcTable::load(p)?,
        None => data::bklc()?,
    };
    let mut cfg = SearchConfig::new(a.group.clone(), a.iters, seed);
    cfg.budget = *budget;
    cfg.weight = a.weight;
    if let Some(p) = &a.fix_v {
        let v = VFile::parse(&fs::read_to_string(p)?)?;
        cfg.fixed_v = Some(v.element(group.clone())?.coeffs().clone());
    }
    let mut records = Vec::new();
    for r in search::random_search(&cfg, group.clone(), &table)? {
        records.push(r?);
    }
    if a.dedup {
        records = search::dedup_by_unit(&group, records)?;
    }
    match &a.out {
        Some(path) => {
            let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
            for r in &records {
                search::write_record(&mut f, r)?;
            }
            writeln!(out, "{} record(s) appended to {}", records.len(), path.display())?;
        }
        None => {
            for r in &records {
                search::write_record(out, r)?;
            }
        }
    }
    Ok(0)
}

fn info(a: &InfoArgs, out: &mut dyn Write) -> Result<i32> {
    if let Some(spec) = &a.group {
        let g = spec.build(None)?;
        writeln!(out, "group {spec}: order {}", g.order())?;
        let mut counts = std::collections::BTreeMap::new();
        for x in 0..g.order() {
            *counts.entry(g.element_order(x)).or_insert(0usize) += 1;
        }
        for (ord, count) in counts {
            writeln!(out, "  {count} element(s) of order {ord}")?;
        }
        let fixed_free = regular_permutations(&g)
            .iter()
            .skip(1)
            .all(|p| p.fixed_points() == 0);
        writeln!(out, "  regular action fixed-point free: {fixed_free}")?;
        return Ok(0);
    }
    for (id, _) in data::VECTORS {
        let v = data::vector(id).expect("bundled")?;
        let show = |c: Option<Claim>| c.map_or("-".to_string(), |c| c.to_string());
        writeln!(
            out,
            "{id:<6} {:<14} code {:<14} dual {:<14}",
            v.group.to_string(),
            show(v.code),
            show(v.dual)
        )?;
    }
    let t = data::bklc()?;
    writeln!(out, "best-known table: {} entries", t.len())?;
    Ok(0)
}

/// Reads JSON-lines search records.
pub fn read_records(path: &Path) -> Result<Vec<search::SearchRecord>> {
    search::read_records(BufReader::new(fs::File::open(path)?))
}
