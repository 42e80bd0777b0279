//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines come out in order.
//! Distance budgets follow `GRCODES_BUDGET_SECONDS` / `GRCODES_BUDGET_WORK`,
//! defaulting to 15 minutes and 2^35 codewords per computation.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use grcodes::codes::Decomposition;
use grcodes::distance::{
    find_word_of_weight_at_most, min_distance_bruteforce, min_distance_bz, Budget,
};
use grcodes::groupring::{sigma_structured_g1, sigma_structured_g2};
use grcodes::groups::{first_element_of_order, regular_permutation};
use grcodes::search::{self, BklcTable, SearchConfig};
use grcodes::{
    construction_x, data, make_g1, make_g2, sample, FiniteGroup, LinearCode,
    Permutation,
};
use grcodes_cli::ops::OpString;
use rand::Rng;

const SEED: u64 = 0x5eed_2024;

/// Outcome of one criterion: pass/fail plus a one-line summary.
struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn budget() -> Budget {
    Budget::from_env()
}

fn bundled(id: &str) -> (LinearCode, Arc<FiniteGroup>) {
    let (v, g) = data::load(id).expect("bundled id").expect("bundled data parses");
    let code = LinearCode::from_group_ring(&v.element(g.clone()).expect("length checked"));
    (code, g)
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn summarize(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        outcome(true, ok_detail)
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        outcome(
            false,
            format!("{} failure(s): {}", failures.len(), shown.join("; ")),
        )
    }
}

// 1
fn structure_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = sample::rng(SEED, 1);
    let mut failures = Vec::new();
    for i in 0..200 {
        let (generic, structured, label) = if i % 2 == 0 {
            let p = sample::g1_params(&mut r, 120);
            let g = Arc::new(make_g1(p).unwrap());
            let v = sample::element(&mut r, &g);
            (v.sigma(), sigma_structured_g1(&v, &p).unwrap(), p.to_string())
        } else {
            let p = sample::g2_params(&mut r, 120);
            let g = Arc::new(make_g2(p).unwrap());
            let v = sample::element(&mut r, &g);
            (v.sigma(), sigma_structured_g2(&v, &p).unwrap(), p.to_string())
        };
        check(&mut failures, generic == structured, || label);
    }
    let elapsed = start.elapsed();
    check(&mut failures, elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:.1?}")
    });
    summarize(
        failures,
        format!("200 random (params, v), entrywise equal, {elapsed:.2?}"),
    )
}

// 2
fn algebra_suite() -> Outcome {
    let mut r = sample::rng(SEED, 2);
    let mut failures = Vec::new();
    for i in 0..500 {
        let g = Arc::new(if i % 2 == 0 {
            make_g1(sample::g1_params(&mut r, 60)).unwrap()
        } else {
            make_g2(sample::g2_params(&mut r, 60)).unwrap()
        });
        let a = sample::element(&mut r, &g);
        let b = sample::element(&mut r, &g);
        let ab = a.mul(&b).unwrap();
        check(
            &mut failures,
            ab.sigma() == a.sigma().mul(&b.sigma()).unwrap(),
            || format!("homomorphism on {}", g.label()),
        );
        check(
            &mut failures,
            a.power_map(-1).sigma() == a.sigma().transpose(),
            || format!("transpose on {}", g.label()),
        );
        check(&mut failures, (a == b) == (a.sigma() == b.sigma()), || {
            format!("injectivity on {}", g.label())
        });
    }
    summarize(
        failures,
        "500 pairs: σ(ab) = σ(a)σ(b), σ(v^(-1)) = σ(v)^T, σ injective".into(),
    )
}

// 3
fn table_dimensions() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for id in data::ids() {
        let v = data::vector(id).unwrap().unwrap();
        let (code, _) = bundled(id);
        let dual = code.dual();
        for (claim, c, side) in [(v.code, &code, "code"), (v.dual, &dual, "dual")] {
            let claim = claim.expect("bundled files carry both claims");
            count += 1;
            check(
                &mut failures,
                (c.n(), c.k()) == (claim.n, claim.k),
                || format!("{id} {side}: [{},{}] vs {claim}", c.n(), c.k()),
            );
        }
    }
    let elapsed = start.elapsed();
    check(&mut failures, elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:.1?}")
    });
    summarize(
        failures,
        format!("{count} codes and duals match claimed [n,k], {elapsed:.2?}"),
    )
}

// 4
fn guaranteed_distances() -> Outcome {
    let (code, _) = bundled("v1");
    let dual = code.dual();
    let b = budget();
    let rc = min_distance_bz(&code, &b).unwrap();
    let rd = min_distance_bz(&dual, &b).unwrap();
    let bf = min_distance_bruteforce(&dual).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, rc.certified && rc.upper == 10, || {
        format!("code bounds {}..{}", rc.lower, rc.upper)
    });
    check(&mut failures, rd.certified && rd.upper == 12, || {
        format!("dual bounds {}..{}", rd.lower, rd.upper)
    });
    check(&mut failures, bf.upper == 12, || format!("brute force gives {}", bf.upper));
    check(
        &mut failures,
        code.contains(&rc.witness) && dual.contains(&rd.witness),
        || "witness not in code".into(),
    );
    summarize(
        failures,
        format!(
            "[54,31,10] BZ {:.2?}, [54,23,12] BZ {:.2?}, brute force {:.2?}",
            rc.elapsed, rd.elapsed, bf.elapsed
        ),
    )
}

// 5
fn extended_distances() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (id, d) in [
        ("v2", 24),
        ("v6", 25),
        ("v9", 28),
        ("v11", 32),
        ("v13", 30),
        ("v15", 38),
    ] {
        let dual = bundled(id).0.dual();
        let r = grcodes_cli::distance_with_witness(&dual, Some(d), &budget(), SEED).unwrap();
        let witness_ok = r.upper == d && r.witness.weight() == d && dual.contains(&r.witness);
        check(&mut failures, witness_ok, || {
            format!("{id}: upper {} (claimed {d})", r.upper)
        });
        check(&mut failures, r.lower <= d, || {
            format!("{id}: lower bound {} exceeds {d}", r.lower)
        });
        notes.push(format!(
            "{id} [{},{},{}]{}",
            dual.n(),
            dual.k(),
            r.upper,
            if r.certified { " certified" } else { " witness only" }
        ));
    }
    summarize(failures, notes.join(", "))
}

fn order35(g: &FiniteGroup) -> Permutation {
    first_element_of_order(g, 35)
        .expect("the group has elements of order 35")
        .1
}

/// Checks the decomposition properties; distances from `d_even` / brute force.
fn decomposition_properties(
    code: &LinearCode,
    pi: &Permutation,
    dec: &Decomposition,
    d_even: Option<usize>,
    failures: &mut Vec<String>,
    label: &str,
) {
    let (f, e) = (&dec.fixed, &dec.even);
    let ty = dec.cycle_type;
    check(failures, f.k() + e.k() == code.k(), || {
        format!("{label}: dim F + dim E = {} + {} != {}", f.k(), e.k(), code.k())
    });
    let sum = f.generator().stack(e.generator()).unwrap().rank();
    check(failures, sum == f.k() + e.k(), || {
        format!("{label}: F and E intersect")
    });
    check(
        failures,
        f.is_subcode_of(code) && e.is_subcode_of(code),
        || format!("{label}: subcodes escape C"),
    );
    check(
        failures,
        f.is_automorphism(pi).unwrap() && e.is_automorphism(pi).unwrap(),
        || format!("{label}: subcode not π-invariant"),
    );
    check(failures, f.k() <= ty.c, || {
        format!("{label}: dim F = {} > c = {}", f.k(), ty.c)
    });
    if f.k() > 0 {
        let df = min_distance_bruteforce(f).unwrap().upper;
        check(failures, df % ty.p == 0, || {
            format!("{label}: d(F) = {df} not divisible by {}", ty.p)
        });
    }
    if e.k() > 0 {
        let de = match d_even {
            Some(d) => d,
            None => min_distance_bruteforce(e).unwrap().upper,
        };
        check(failures, de % 2 == 0, || format!("{label}: d(E) = {de} is odd"));
    }
}

// 6
fn first_pipeline() -> Outcome {
    let start = Instant::now();
    let b = budget();
    let (code, g) = bundled("w105");
    let dual = code.dual();
    let pi = order35(&g);
    let dec = dual.decompose(&pi).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, dual.k() == 23, || format!("dual k = {}", dual.k()));
    check(&mut failures, dec.even.k() == 22 && dec.fixed.k() == 1, || {
        format!("dims E {} F {}", dec.even.k(), dec.fixed.k())
    });
    let rd = min_distance_bz(&dual, &b).unwrap();
    let re = min_distance_bz(&dec.even, &b).unwrap();
    check(&mut failures, rd.certified && rd.upper == 33, || {
        format!("d(dual) {}..{}", rd.lower, rd.upper)
    });
    check(&mut failures, re.certified && re.upper == 36, || {
        format!("d(E) {}..{}", re.lower, re.upper)
    });
    let bd = min_distance_bruteforce(&dual).unwrap().upper;
    let be = min_distance_bruteforce(&dec.even).unwrap().upper;
    check(&mut failures, bd == 33 && be == 36, || {
        format!("brute force gives {bd} and {be}")
    });
    let x = construction_x(&dual, &dec.even, &LinearCode::repetition(3)).unwrap();
    let rx = min_distance_bz(&x, &b).unwrap();
    check(&mut failures, (x.n(), x.k()) == (108, 23), || {
        format!("X gives [{},{}]", x.n(), x.k())
    });
    check(&mut failures, rx.certified && rx.upper == 36, || {
        format!("d(X) {}..{}", rx.lower, rx.upper)
    });
    let elapsed = start.elapsed();
    check(&mut failures, elapsed < Duration::from_secs(30 * 60), || {
        format!("took {elapsed:.1?}")
    });
    summarize(
        failures,
        format!(
            "type {}, [105,23,33] → E [105,22,36] ⊕ F [105,1], X → [108,23,36], {elapsed:.2?}",
            dec.cycle_type
        ),
    )
}

// 7
fn second_pipeline() -> Outcome {
    let (code, g) = bundled("v13");
    let dual = code.dual();
    let pi = order35(&g);
    let dec = dual.decompose(&pi).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, dec.even.k() == 27, || {
        format!("dim E = {}", dec.even.k())
    });
    let aux = LinearCode::even_weight(3);
    let x = construction_x(&dual, &dec.even, &aux).unwrap();
    check(&mut failures, (x.n(), x.k()) == (108, 29), || {
        format!("X gives [{},{}]", x.n(), x.k())
    });
    let r = grcodes_cli::distance_with_witness(&x, Some(32), &budget(), SEED).unwrap();
    check(
        &mut failures,
        r.upper == 32 && r.witness.weight() == 32 && x.contains(&r.witness),
        || format!("upper bound {} (need a weight-32 witness)", r.upper),
    );
    check(&mut failures, r.lower <= 32, || format!("lower bound {}", r.lower));
    summarize(
        failures,
        format!(
            "E [105,27], X → [108,29,32] {} in {:.2?}",
            if r.certified { "certified" } else { "witness only" },
            r.elapsed
        ),
    )
}

// 8
fn decomposition_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut performed = 0;

    for (id, d_even) in [("w105", 36), ("v13", 32)] {
        let (code, g) = bundled(id);
        let dual = code.dual();
        let pi = order35(&g);
        let dec = dual.decompose(&pi).unwrap();
        decomposition_properties(&dual, &pi, &dec, Some(d_even), &mut failures, id);
        performed += 1;
    }

    let mut r = sample::rng(SEED, 8);
    let mut random = 0;
    while random < 50 {
        let g = Arc::new(if r.random::<bool>() {
            make_g1(sample::g1_params(&mut r, 21)).unwrap()
        } else {
            make_g2(sample::g2_params(&mut r, 21)).unwrap()
        });
        let odd: Vec<usize> = (0..g.order())
            .filter(|&a| {
                let o = g.element_order(a);
                o > 1 && o % 2 == 1
            })
            .collect();
        if odd.is_empty() {
            continue;
        }
        let a = odd[r.random_range(0..odd.len())];
        let pi = regular_permutation(&g, a);
        let v = sample::element(&mut r, &g);
        let mut code = LinearCode::from_group_ring(&v);
        if r.random::<bool>() {
            code = code.dual();
        }
        if code.k() == 0 {
            continue;
        }
        let dec = code.decompose(&pi).unwrap();
        decomposition_properties(&code, &pi, &dec, None, &mut failures, g.label());
        random += 1;
        performed += 1;
    }
    summarize(
        failures,
        format!("{performed} decompositions (2 large, {random} random with n ≤ 21)"),
    )
}

// 9
fn unit_invariance() -> Outcome {
    let mut r = sample::rng(SEED, 9);
    let mut failures = Vec::new();
    for i in 0..100 {
        let g = Arc::new(if i % 2 == 0 {
            make_g1(sample::g1_params(&mut r, 40)).unwrap()
        } else {
            make_g2(sample::g2_params(&mut r, 40)).unwrap()
        });
        let u = sample::unit(&mut r, &g);
        let v = sample::element(&mut r, &g);
        let uv = u.mul(&v).unwrap();
        check(
            &mut failures,
            u.is_unit() && v.sigma().rowspace_equal(&uv.sigma()).unwrap(),
            || format!("{}: C(v) != C(uv)", g.label()),
        );
    }
    summarize(failures, "100 (unit u, v) pairs: C(uv) = C(v)".into())
}

struct Derived {
    base: &'static str,
    ops: String,
    expect: (usize, usize, usize),
}

fn psj(base: &'static str, n: usize, k: usize, d: usize, imax: usize, jmax: usize) -> Vec<Derived> {
    let mut out = Vec::new();
    for i in 0..=imax {
        for j in 0..=jmax {
            if i + j > 0 {
                // Puncture at coordinate 1: group codes are coordinate
                // transitive, and Construction X codes end in auxiliary
                // coordinates that shortening may already have zeroed.
                let punct = if j == 0 {
                    String::new()
                } else {
                    format!("P@{}", vec!["1"; j].join(","))
                };
                out.push(Derived {
                    base,
                    ops: format!("S{i} {punct}"),
                    expect: (n - i - j, k - i, d - j),
                });
            }
        }
    }
    out
}

fn single(base: &'static str, ops: &str, expect: (usize, usize, usize)) -> Derived {
    Derived {
        base,
        ops: ops.to_string(),
        expect,
    }
}

fn derived_rows() -> Vec<Derived> {
    let mut rows = Vec::new();
    rows.extend(psj("v1", 54, 31, 10, 3, 1));
    rows.extend(psj("v2d", 78, 24, 24, 2, 1));
    rows.push(single("v2d", "P2", (76, 24, 22)));
    rows.push(single("v2d", "P3", (75, 24, 21)));
    rows.push(single("v2d", "E1", (79, 24, 24)));
    rows.extend(psj("v3", 81, 48, 12, 1, 1));
    rows.extend(psj("v4", 81, 54, 10, 2, 1));
    rows.extend(psj("v5", 84, 51, 12, 2, 1));
    rows.push(single("v6d", "E1", (91, 26, 26)));
    rows.extend(psj("v7d", 98, 37, 22, 1, 1));
    rows.push(single("v8d", "E1", (99, 38, 22)));
    rows.push(single("v9d", "P1", (99, 28, 27)));
    rows.push(single("v10d", "P1", (99, 36, 23)));
    rows.push(single("v11d", "P1", (104, 27, 31)));
    rows.push(single("v11d", "E1", (106, 27, 32)));
    rows.extend(psj("v13d", 105, 29, 30, 1, 1));
    rows.push(single("v13d", "E1", (106, 29, 30)));
    rows.extend(psj("v14d", 105, 32, 28, 2, 1));
    // Listed against [105,32,28], but k = 33 and d = 28 after extension fit
    // the [105,33,27] dual of v12.
    rows.push(single("v12d", "E1", (106, 33, 28)));
    rows.push(single("v12d", "E2", (107, 33, 28)));
    rows.push(single("x1", "P1", (107, 23, 35)));
    rows.extend(psj("x2", 108, 29, 32, 2, 1));
    rows.push(single("v15d", "P1", (109, 21, 37)));
    // Listed as a puncture, but length 111 needs an extension.
    rows.push(single("v15d", "E1", (111, 21, 38)));
    rows
}

fn base_code(name: &str) -> (LinearCode, usize) {
    let pipeline = |id: &str, aux: LinearCode| {
        let (code, g) = bundled(id);
        let dual = code.dual();
        let dec = dual.decompose(&order35(&g)).unwrap();
        construction_x(&dual, &dec.even, &aux).unwrap()
    };
    match name {
        "x1" => (pipeline("w105", LinearCode::repetition(3)), 36),
        "x2" => (pipeline("v13", LinearCode::even_weight(3)), 32),
        _ => {
            let (id, dual) = match name.strip_suffix('d') {
                Some(id) => (id, true),
                None => (name, false),
            };
            let v = data::vector(id).unwrap().unwrap();
            let (code, _) = bundled(id);
            if dual {
                (code.dual(), v.dual.unwrap().d.unwrap())
            } else {
                (code, v.code.unwrap().d.unwrap())
            }
        }
    }
}

// 10
fn derived_codes() -> Outcome {
    let b = budget();
    let mut failures = Vec::new();
    let mut bases: Vec<(&str, LinearCode, usize, bool)> = Vec::new();
    let (mut dims, mut dists, mut gated, mut by_floor) = (0, 0, 0, 0);
    for row in derived_rows() {
        if !bases.iter().any(|(name, ..)| *name == row.base) {
            let (code, d) = base_code(row.base);
            let r = min_distance_bz(&code, &b).unwrap();
            let certified = r.certified && r.upper == d;
            check(&mut failures, r.contains(d), || {
                format!("base {}: bounds {}..{} exclude {d}", row.base, r.lower, r.upper)
            });
            bases.push((row.base, code, d, certified));
        }
        let (_, base, base_d, certified) = bases.iter().find(|(n, ..)| *n == row.base).unwrap();
        let ops: OpString = row.ops.parse().unwrap();
        let c = ops.apply(base).unwrap();
        let (n, k, d) = row.expect;
        dims += 1;
        check(&mut failures, (c.n(), c.k()) == (n, k), || {
            format!("{} {}: [{},{}] vs [{n},{k}]", row.base, row.ops, c.n(), c.k())
        });
        if !*certified {
            gated += 1;
            continue;
        }
        dists += 1;
        // A certified base fixes a floor; a word at the floor closes the gap.
        let floor = ops.distance_floor(*base_d);
        if floor == d {
            let w = find_word_of_weight_at_most(&c, d, &b, SEED).unwrap();
            if w.word.as_ref().is_some_and(|x| x.weight() == d && c.contains(x)) {
                by_floor += 1;
                continue;
            }
        }
        let r = min_distance_bz(&c, &b).unwrap();
        check(&mut failures, r.certified && r.upper == d, || {
            format!(
                "{} {}: d {}..{} vs {d}",
                row.base, row.ops, r.lower, r.upper
            )
        });
    }
    summarize(
        failures,
        format!(
            "{dims} rows: dimensions all match, {dists} distances certified \
             ({by_floor} by base floor and witness), {gated} gated; \
             2 rows need group tables not bundled"
        ),
    )
}

// 11
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = sample::rng(SEED, 11);
    let mut failures = Vec::new();
    let mut tested = 0;
    while tested < 100 {
        let n = r.random_range(2..=30);
        let k = r.random_range(1..=n.min(14));
        let c = sample::code(&mut r, n, k);
        if c.k() == 0 {
            continue;
        }
        tested += 1;
        let bz = min_distance_bz(&c, &Budget::unlimited()).unwrap();
        let bf = min_distance_bruteforce(&c).unwrap();
        check(&mut failures, bz.certified && bz.upper == bf.upper, || {
            format!("[{n},{}]: BZ {}..{} vs {}", c.k(), bz.lower, bz.upper, bf.upper)
        });
    }
    let elapsed = start.elapsed();
    check(&mut failures, elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:.1?}")
    });
    summarize(failures, format!("100 random codes agree, {elapsed:.2?}"))
}

// 12
fn desk_scale_limits() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (id, d) in [("v4", 10), ("v15", 6)] {
        let (code, _) = bundled(id);
        let w = find_word_of_weight_at_most(&code, d, &budget(), SEED).unwrap();
        match &w.word {
            Some(word) => {
                check(&mut failures, word.weight() <= d && code.contains(word), || {
                    format!("{id}: bad witness")
                });
                notes.push(format!(
                    "[{},{}] weight-{} witness after {} draws",
                    code.n(),
                    code.k(),
                    word.weight(),
                    w.iterations
                ));
            }
            None => failures.push(format!("{id}: no word of weight ≤ {d} found")),
        }
    }

    // Search acceptance is replay determinism.
    let table = BklcTable::parse("7,4,3\n7,3,4\n7,1,7\n7,6,2\n").unwrap();
    let group = Arc::new(FiniteGroup::cyclic(7));
    let cfg = SearchConfig::new("g1:7,1,1".parse().unwrap(), 200, SEED);
    let run = || -> Vec<_> {
        search::random_search(&cfg, group.clone(), &table)
            .unwrap()
            .map(Result::unwrap)
            .collect()
    };
    let (a, b) = (run(), run());
    check(&mut failures, !a.is_empty() && a == b, || "search not deterministic".into());
    for rec in &a {
        let psi = search::replay(&cfg, 7, rec).unwrap();
        let c = rec.code(&group).unwrap();
        check(
            &mut failures,
            psi.to_string() == rec.psi && c.k() == rec.k && c.n() == 7,
            || format!("record {} does not replay", rec.iteration),
        );
        let shift = Permutation::new((0..7).map(|j| (j + 1) % 7).collect()).unwrap();
        check(&mut failures, c.is_automorphism(&shift).unwrap(), || {
            format!("record {} is not cyclic", rec.iteration)
        });
    }
    notes.push(format!("search over C7 replays {} records", a.len()));
    notes.push("automorphism-group orders not computed".into());
    summarize(failures, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("structured σ equals generic σ", structure_equivalence),
        ("σ homomorphism and transpose", algebra_suite),
        ("bundled code dimensions", table_dimensions),
        ("guaranteed distance certification", guaranteed_distances),
        ("extended distance witnesses", extended_distances),
        ("[108,23,36] pipeline", first_pipeline),
        ("[108,29,32] pipeline", second_pipeline),
        ("decomposition properties", decomposition_suite),
        ("unit multiples generate the same code", unit_invariance),
        ("derived codes", derived_codes),
        ("BZ agrees with brute force", oracle_equivalence),
        ("desk-scale limits and search replay", desk_scale_limits),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                outcome(false, format!("panicked: {msg}"))
            });
        if !result.pass {
            failed += 1;
        }
        println!(
            "{} criterion {n:>2} {name}: {} [{:.1?}]",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed()
        );
    }
    println!("acceptance: {failed} criterion(s) failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
