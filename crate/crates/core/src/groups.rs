//! Finite groups as explicit multiplication tables.
//!
//! Elements are numbered `0..n` internally; file formats and user-facing
//! output use `1..=n`. The two semidirect-product families fix the element
//! numbering so that coefficient vectors line up with the group-ring indexing
//! used by [`crate::groupring`]:
//!
//! * `G1 = C_n ⋊ C_m = <x, y | x^m = y^n = 1, x⁻¹yx = y^k>`, index `i + n·j` is `x^j y^i`.
//! * `G2 = (C_n1 × C_n2) ⋊ C_m = <x, y, z | x^z = x^k1, y^z = y^k2>`,
//!   index `t + n1·j + n1·n2·i` is `z^i y^j x^t`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Orders above this are validated on randomly sampled triples unless full
/// validation is requested.
pub const FULL_VALIDATION_LIMIT: usize = 512;

fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    result
}

/// Smallest `t` in `1..m` with `k^t ≡ 1 (mod n)`, if any.
fn early_return(n: u64, m: u64, k: u64) -> Option<u64> {
    (1..m).find(|&t| pow_mod(k, t, n) == 1 % n)
}

/// Parameters `(n, m, k)` of `C_n ⋊ C_m` with `x⁻¹yx = y^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SemidirectParams1 {
    pub n: u64,
    pub m: u64,
    pub k: u64,
}

impl SemidirectParams1 {
    pub fn new(n: u64, m: u64, k: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParams("n and m must be positive".into()));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("k = {k} must lie in 1..={n}")));
        }
        if pow_mod(k, m, n) != 1 % n {
            return Err(Error::InvalidParams(format!(
                "k^m = {k}^{m} is not 1 mod {n}; the relation is inconsistent"
            )));
        }
        Ok(Self { n, m, k })
    }

    pub fn order(&self) -> usize {
        (self.n * self.m) as usize
    }

    /// Smallest `t < m` with `k^t ≡ 1 (mod n)`, when the action is not faithful.
    pub fn primitivity_defect(&self) -> Option<u64> {
        early_return(self.n, self.m, self.k)
    }
}

impl fmt::Display for SemidirectParams1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G1(n={},m={},k={})", self.n, self.m, self.k)
    }
}

/// Parameters of `(C_n1 × C_n2) ⋊ C_m` with `x^z = x^k1`, `y^z = y^k2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SemidirectParams2 {
    pub n1: u64,
    pub k1: u64,
    pub n2: u64,
    pub k2: u64,
    pub m: u64,
}

impl SemidirectParams2 {
    pub fn new(n1: u64, k1: u64, n2: u64, k2: u64, m: u64) -> Result<Self> {
        if n1 == 0 || n2 == 0 || m == 0 {
            return Err(Error::InvalidParams("n1, n2 and m must be positive".into()));
        }
        if k1 == 0 || k2 == 0 {
            return Err(Error::InvalidParams("k1 and k2 must be positive".into()));
        }
        if pow_mod(k1, m, n1) != 1 % n1 {
            return Err(Error::InvalidParams(format!(
                "k1^m = {k1}^{m} is not 1 mod {n1}"
            )));
        }
        if pow_mod(k2, m, n2) != 1 % n2 {
            return Err(Error::InvalidParams(format!(
                "k2^m = {k2}^{m} is not 1 mod {n2}"
            )));
        }
        Ok(Self { n1, k1, n2, k2, m })
    }

    pub fn order(&self) -> usize {
        (self.n1 * self.n2 * self.m) as usize
    }

    pub fn primitivity_defect(&self) -> Option<(u64, Option<u64>, Option<u64>)> {
        let a = early_return(self.n1, self.m, self.k1);
        let b = early_return(self.n2, self.m, self.k2);
        (a.is_some() || b.is_some()).then(|| (self.m, a, b))
    }
}

impl fmt::Display for SemidirectParams2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G2(n1={},k1={},n2={},k2={},m={})",
            self.n1, self.k1, self.n2, self.k2, self.m
        )
    }
}

/// How a group was constructed; structured σ routines need to know.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFamily {
    G1(SemidirectParams1),
    G2(SemidirectParams2),
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Full associativity check up to [`FULL_VALIDATION_LIMIT`], sampled above.
    Auto,
    Full,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    label: String,
    family: GroupFamily,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("label", &self.label)
            .finish()
    }
}

impl FiniteGroup {
    fn from_fn(
        order: usize,
        label: String,
        family: GroupFamily,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(op(a, b) as u32);
            }
        }
        Self::validated(order, mul, label, family, Validation::Auto)
    }

    fn validated(
        order: usize,
        mul: Vec<u32>,
        label: String,
        family: GroupFamily,
        validation: Validation,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::InvalidGroup("table has no identity element".into()))?;

        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let c = at(a, b);
                if seen[c] == a {
                    return Err(Error::InvalidGroup(format!(
                        "not a Latin square: element {} repeats in row {}",
                        c + 1,
                        a + 1
                    )));
                }
                seen[c] = a;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for b in 0..order {
            for a in 0..order {
                let c = at(a, b);
                if seen[c] == b {
                    return Err(Error::InvalidGroup(format!(
                        "not a Latin square: element {} repeats in column {}",
                        c + 1,
                        b + 1
                    )));
                }
                seen[c] = b;
            }
        }

        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity)
                .expect("Latin square row contains the identity");
            if at(b, a) != identity {
                return Err(Error::InvalidGroup(format!(
                    "element {} has a right inverse {} that is not a left inverse",
                    a + 1,
                    b + 1
                )));
            }
            inv[a] = b as u32;
        }

        let assoc = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(Error::InvalidGroup(format!(
                    "not associative on ({}, {}, {})",
                    a + 1,
                    b + 1,
                    c + 1
                )));
            }
            Ok(())
        };
        if validation == Validation::Full || order <= FULL_VALIDATION_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..10 * order {
                let (a, b, c) = (
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                );
                assoc(a, b, c)?;
            }
        }

        Ok(Self {
            order,
            mul,
            inv,
            identity,
            label,
            family,
        })
    }

    /// Validates a Cayley table given with 1-based entries.
    pub fn from_table(table: &[Vec<usize>], label: &str, validation: Validation) -> Result<Self> {
        let order = table.len();
        let mut mul = Vec::with_capacity(order * order);
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {} has {} entries, expected {order}",
                    r + 1,
                    row.len()
                )));
            }
            for &e in row {
                if e == 0 || e > order {
                    return Err(Error::InvalidGroup(format!(
                        "entry {e} in row {} is outside 1..={order}",
                        r + 1
                    )));
                }
                mul.push((e - 1) as u32);
            }
        }
        Self::validated(order, mul, label.to_string(), GroupFamily::Table, validation)
    }

    /// Parses the Cayley-table text format: `order n` followed by `n` rows of
    /// `n` whitespace-separated 1-based indices; `#` starts a comment.
    pub fn parse_cayley(text: &str, label: &str, validation: Validation) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `order n` header"))?;
        let order: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["order", n] => n
                .parse()
                .map_err(|_| Error::parse(hline, format!("bad order {n:?}")))?,
            _ => return Err(Error::parse(hline, "expected `order n`")),
        };
        let mut table = Vec::with_capacity(order);
        for (lineno, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(lineno, format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != order {
                return Err(Error::parse(
                    lineno,
                    format!("expected {order} entries, found {}", row.len()),
                ));
            }
            table.push(row);
        }
        if table.len() != order {
            return Err(Error::parse(
                hline,
                format!("expected {order} rows, found {}", table.len()),
            ));
        }
        Self::from_table(&table, label, validation)
    }

    /// Cayley table in the text format accepted by [`FiniteGroup::parse_cayley`].
    pub fn to_cayley_string(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| (self.mul(a, b) + 1).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn cyclic(n: usize) -> Self {
        make_g1(SemidirectParams1::new(n as u64, 1, 1).expect("cyclic parameters are valid"))
            .expect("cyclic group table is valid")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    /// `a^s`, negative exponents allowed.
    pub fn pow(&self, a: usize, s: i64) -> usize {
        let base = if s < 0 { self.inv(a) } else { a };
        let mut e = s.unsigned_abs();
        let mut result = self.identity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut ord = 1;
        while x != self.identity {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }
}

/// `C_n ⋊ C_m` with element `i + n·j` equal to `x^j y^i` and `y x = x y^k`.
pub fn make_g1(p: SemidirectParams1) -> Result<FiniteGroup> {
    if let Some(t) = p.primitivity_defect() {
        log::warn!("{p}: k^{t} is already 1 mod n, so the action of x has order below m");
    }
    let (n, m, k) = (p.n as usize, p.m as usize, p.k);
    // y^i x^c = x^c y^(i k^c)
    let twist: Vec<usize> = (0..m).map(|c| pow_mod(k, c as u64, p.n) as usize).collect();
    FiniteGroup::from_fn(
        n * m,
        p.to_string(),
        GroupFamily::G1(p),
        |a, b| {
            let (i1, j1) = (a % n, a / n);
            let (i2, j2) = (b % n, b / n);
            let j = (j1 + j2) % m;
            let i = (i1 * twist[j2] + i2) % n;
            i + n * j
        },
    )
}

/// `(C_n1 × C_n2) ⋊ C_m` with element `t + n1·j + n1·n2·i` equal to `z^i y^j x^t`.
pub fn make_g2(p: SemidirectParams2) -> Result<FiniteGroup> {
    if let Some((m, a, b)) = p.primitivity_defect() {
        let parts: Vec<String> = [a.map(|t| format!("k1^{t} = 1 mod n1")), b.map(|t| format!("k2^{t} = 1 mod n2"))]
            .into_iter()
            .flatten()
            .collect();
        log::warn!("{p}: {} with exponent below m = {m}", parts.join(", "));
    }
    let (n1, n2, m) = (p.n1 as usize, p.n2 as usize, p.m as usize);
    let tw1: Vec<usize> = (0..m).map(|c| pow_mod(p.k1, c as u64, p.n1) as usize).collect();
    let tw2: Vec<usize> = (0..m).map(|c| pow_mod(p.k2, c as u64, p.n2) as usize).collect();
    let split = |e: usize| (e / (n1 * n2), (e / n1) % n2, e % n1);
    FiniteGroup::from_fn(
        n1 * n2 * m,
        p.to_string(),
        GroupFamily::G2(p),
        |a, b| {
            let (i1, j1, t1) = split(a);
            let (i2, j2, t2) = split(b);
            let i = (i1 + i2) % m;
            let j = (j1 * tw2[i2] + j2) % n2;
            let t = (t1 * tw1[i2] + t2) % n1;
            t + n1 * j + n1 * n2 * i
        },
    )
}

/// Cycle shape `p-(c,f)`: `c` cycles of length `p` and `f` fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CycleType {
    pub p: usize,
    pub c: usize,
    pub f: usize,
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{})", self.p, self.c, self.f)
    }
}

/// A bijection on `0..n`, stored as its image list together with its cycles.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation(")?;
        for c in self.cycles.iter().filter(|c| c.len() > 1) {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Permutation {
    /// One-line image list, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidParams("empty permutation".into()));
        }
        let mut hit = vec![false; n];
        for &x in &images {
            if x >= n || hit[x] {
                return Err(Error::InvalidParams(format!(
                    "image list is not a bijection on 1..={n} (offending image {})",
                    x + 1
                )));
            }
            hit[x] = true;
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = images[x];
            }
            cycles.push(cycle);
        }
        Ok(Self { images, cycles })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity is a bijection")
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidParams("image 0 in a 1-based image list".into()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    /// Parses a whitespace-separated 1-based image list; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let images = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace)
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("bad image {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(&images)
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::OutOfRange { index: x, len: n });
                }
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Disjoint cycles, fixed points included as 1-cycles.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.cycles.iter().filter(|c| c.len() == 1).count()
    }

    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles
            .iter()
            .map(Vec::len)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Permutation::new(other.images.iter().map(|&x| self.images[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation::new(inv).expect("inverse of a bijection")
    }

    /// Moves coordinate `j` of `v` to position `π(j)`.
    pub fn permute_vector(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.len());
        let mut out = BitVector::zeros(v.len());
        for j in v.ones_positions() {
            out.set(self.images[j], true);
        }
        out
    }

    /// `p-(c,f)` when every non-trivial cycle has the same length `p`.
    ///
    /// The identity has no type.
    pub fn cycle_type(&self) -> Option<CycleType> {
        let mut p = None;
        let mut c = 0;
        let mut f = 0;
        for cycle in &self.cycles {
            match cycle.len() {
                1 => f += 1,
                l => {
                    if *p.get_or_insert(l) != l {
                        return None;
                    }
                    c += 1;
                }
            }
        }
        p.map(|p| CycleType { p, c, f })
    }
}

/// Left-regular representation: `π_g` sends position `j` to the position of `g·g_j`.
pub fn regular_permutations(g: &FiniteGroup) -> Vec<Permutation> {
    (0..g.order()).map(|a| regular_permutation(g, a)).collect()
}

/// First element (in canonical order) of the given order whose regular
/// permutation has a uniform cycle type.
pub fn first_element_of_order(g: &FiniteGroup, order: usize) -> Option<(usize, Permutation)> {
    (0..g.order())
        .filter(|&a| g.element_order(a) == order)
        .map(|a| (a, regular_permutation(g, a)))
        .find(|(_, p)| p.cycle_type().is_some())
}

/// Regular permutation `π_a` of a single element.
pub fn regular_permutation(g: &FiniteGroup, a: usize) -> Permutation {
    Permutation::new((0..g.order()).map(|j| g.mul(a, j)).collect())
        .expect("rows of a Latin square are bijections")
}
