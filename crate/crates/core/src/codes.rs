//! Binary linear codes and the transformations used to build new ones from
//! group codes: duals, puncture/shorten/extend, Construction X, and the
//! fixed/even-cycle decomposition under an automorphism.
//!
//! Coordinates are 0-based in this API.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{in_rref_span, BitMatrix, BitVector, Echelon};
use crate::groupring::GroupRingElement;
use crate::groups::{CycleType, Permutation};

/// Known bounds on the minimum distance together with a codeword attaining `upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceInfo {
    pub lower: usize,
    pub upper: usize,
    pub witness: BitVector,
}

impl DistanceInfo {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    ech: Echelon,
    distance: Option<DistanceInfo>,
}

impl PartialEq for LinearCode {
    /// Same length and same row space; cached distance data is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ech.matrix == other.ech.matrix
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}]", self.n, self.k())
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.distance {
            Some(d) if d.is_exact() => write!(f, "[{},{},{}]", self.n, self.k(), d.upper),
            Some(d) => write!(f, "[{},{},{}..{}]", self.n, self.k(), d.lower, d.upper),
            None => write!(f, "[{},{}]", self.n, self.k()),
        }
    }
}

impl LinearCode {
    /// Code spanned by the rows of `gen`; dependent rows are allowed.
    pub fn from_generator(gen: &BitMatrix) -> Self {
        Self {
            n: gen.ncols(),
            ech: gen.rref(),
            distance: None,
        }
    }

    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        Ok(Self::from_generator(&BitMatrix::from_rows(n, rows)?))
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(n: usize) -> Self {
        Self::from_generator(&BitMatrix::empty(n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_generator(&BitMatrix::identity(n))
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generator(&BitMatrix::from_rows(n, vec![BitVector::ones(n)]).unwrap())
    }

    /// All even-weight words of length `n`.
    pub fn even_weight(n: usize) -> Self {
        Self::repetition(n).dual()
    }

    /// Row space of σ(v).
    pub fn from_group_ring(v: &GroupRingElement) -> Self {
        Self::from_generator(&v.sigma())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.ech.rank()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator(&self) -> &BitMatrix {
        &self.ech.matrix
    }

    pub fn pivots(&self) -> &[usize] {
        &self.ech.pivots
    }

    pub fn distance(&self) -> Option<&DistanceInfo> {
        self.distance.as_ref()
    }

    /// Attaches distance bounds after checking the witness.
    pub fn with_distance(mut self, info: DistanceInfo) -> Result<Self> {
        if info.witness.len() != self.n || !self.contains(&info.witness) {
            return Err(Error::InvalidParams("distance witness is not a codeword".into()));
        }
        if info.witness.weight() != info.upper || info.lower > info.upper || info.lower == 0 {
            return Err(Error::InvalidParams(format!(
                "inconsistent distance bounds {}..{} for witness of weight {}",
                info.lower,
                info.upper,
                info.witness.weight()
            )));
        }
        self.distance = Some(info);
        Ok(self)
    }

    pub fn contains(&self, w: &BitVector) -> bool {
        w.len() == self.n && in_rref_span(&self.ech, w)
    }

    /// `coeffs · G` for the stored generator.
    pub fn encode(&self, coeffs: &BitVector) -> BitVector {
        self.ech.matrix.combine(coeffs)
    }

    /// True iff every codeword has even weight.
    pub fn is_even(&self) -> bool {
        self.generator().rows().iter().all(|r| r.weight() % 2 == 0)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.generator().rows().iter().all(|r| other.contains(r))
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.ech.matrix.nullspace())
    }

    fn check_position(&self, position: usize) -> Result<()> {
        if position >= self.n {
            return Err(Error::OutOfRange {
                index: position,
                len: self.n,
            });
        }
        Ok(())
    }

    /// Deletes coordinate `position`.
    pub fn puncture(&self, position: usize) -> Result<LinearCode> {
        if self.n < 2 {
            return Err(Error::Underflow("cannot puncture a code of length 1".into()));
        }
        self.check_position(position)?;
        Ok(LinearCode::from_generator(
            &self.ech.matrix.remove_column(position),
        ))
    }

    /// Keeps the codewords vanishing at `position`, then deletes that coordinate.
    pub fn shorten(&self, position: usize) -> Result<LinearCode> {
        if self.n < 2 {
            return Err(Error::Underflow("cannot shorten a code of length 1".into()));
        }
        if self.k() == 0 {
            return Err(Error::Underflow("cannot shorten the zero code".into()));
        }
        self.check_position(position)?;
        let mut rows = self.ech.matrix.rows().to_vec();
        if let Some(p) = rows.iter().position(|r| r.get(position)) {
            let pivot = rows.remove(p);
            for r in rows.iter_mut().filter(|r| r.get(position)) {
                r.xor_assign(&pivot);
            }
        }
        let sub = BitMatrix::from_rows(self.n, rows)?;
        Ok(LinearCode::from_generator(&sub.remove_column(position)))
    }

    /// Appends an overall parity bit.
    pub fn extend(&self) -> LinearCode {
        let rows = self
            .ech
            .matrix
            .rows()
            .iter()
            .map(|r| {
                let mut e = r.clone();
                e.push(r.weight() % 2 == 1);
                e
            })
            .collect();
        LinearCode::from_generator(&BitMatrix::from_rows(self.n + 1, rows).unwrap())
    }

    fn check_perm(&self, p: &Permutation) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.len(),
            });
        }
        Ok(())
    }

    /// π(C): coordinate `j` of every codeword moves to `π(j)`.
    pub fn apply_perm(&self, p: &Permutation) -> Result<LinearCode> {
        self.check_perm(p)?;
        let rows = self
            .ech
            .matrix
            .rows()
            .iter()
            .map(|r| p.permute_vector(r))
            .collect();
        Ok(LinearCode::from_generator(&BitMatrix::from_rows(
            self.n, rows,
        )?))
    }

    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool> {
        self.check_perm(p)?;
        Ok(self
            .ech
            .matrix
            .rows()
            .iter()
            .all(|r| self.contains(&p.permute_vector(r))))
    }

    /// F_π(C): codewords fixed by π.
    ///
    /// Solves `x · (G + π(G)) = 0` for the coefficient vector `x`.
    pub fn fixed_subcode(&self, p: &Permutation) -> Result<LinearCode> {
        if !self.is_automorphism(p)? {
            return Err(Error::NotAutomorphism);
        }
        let diff: Vec<BitVector> = self
            .ech
            .matrix
            .rows()
            .iter()
            .map(|r| r.xor(&p.permute_vector(r)))
            .collect();
        let diff = BitMatrix::from_rows(self.n, diff)?;
        let coeffs = diff.transpose().nullspace();
        let rows = coeffs.rows().iter().map(|x| self.encode(x)).collect();
        LinearCode::from_rows(self.n, rows)
    }

    /// E_π(C): codewords whose coordinate sum over every cycle of π is even.
    ///
    /// Requires a uniform cycle type with odd cycle length.
    pub fn even_subcode(&self, p: &Permutation) -> Result<LinearCode> {
        if !self.is_automorphism(p)? {
            return Err(Error::NotAutomorphism);
        }
        let ty = p.cycle_type().ok_or(Error::NoCycleType)?;
        if ty.p % 2 == 0 {
            return Err(Error::EvenCycleLength(ty.p));
        }
        let mut checks = self.ech.matrix.nullspace();
        for cycle in p.cycles() {
            let mut row = BitVector::zeros(self.n);
            for &i in cycle {
                row.set(i, true);
            }
            checks.push_row(row)?;
        }
        Ok(LinearCode::from_generator(&checks.nullspace()))
    }

    /// Both halves of `C = F_π(C) ⊕ E_π(C)`.
    pub fn decompose(&self, p: &Permutation) -> Result<Decomposition> {
        let even = self.even_subcode(p)?;
        let fixed = self.fixed_subcode(p)?;
        Ok(Decomposition {
            cycle_type: p.cycle_type().expect("checked by even_subcode"),
            fixed,
            even,
        })
    }

    /// Serializes as `n k` followed by `k` rows of '0'/'1'.
    pub fn to_gen_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k());
        for r in self.generator().rows() {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the generator format written by [`LinearCode::to_gen_string`].
    ///
    /// Lines starting with `#` are ignored. The listed rows must be independent.
    pub fn parse_gen(text: &str) -> Result<LinearCode> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n k` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hline, format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [n, k] = dims[..] else {
            return Err(Error::parse(hline, "header must be `n k`"));
        };
        let mut rows = Vec::with_capacity(k);
        for (lineno, line) in lines {
            let row = BitVector::parse_strict(line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(lineno, msg),
                other => other,
            })?;
            if row.len() != n {
                return Err(Error::parse(
                    lineno,
                    format!("row has {} bits, expected {n}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::parse(
                hline,
                format!("header announces {k} rows, found {}", rows.len()),
            ));
        }
        let code = LinearCode::from_rows(n, rows)?;
        if code.k() != k {
            return Err(Error::parse(
                hline,
                format!("rows are dependent: rank {} < {k}", code.k()),
            ));
        }
        Ok(code)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub cycle_type: CycleType,
    pub fixed: LinearCode,
    pub even: LinearCode,
}

/// Construction X.
///
/// `inner` must be a subcode of `outer`, and `aux` must have dimension
/// `outer.k − inner.k`. The result has length `outer.n + aux.n`, dimension
/// `outer.k` and minimum distance at least `min(d_inner, d_outer + d_aux)`.
/// Coset representatives are the rows of `outer`'s reduced generator that
/// extend a basis of `inner`, taken in order and paired with `aux`'s rows.
pub fn construction_x(
    outer: &LinearCode,
    inner: &LinearCode,
    aux: &LinearCode,
) -> Result<LinearCode> {
    if inner.n() != outer.n() {
        return Err(Error::DimensionMismatch {
            expected: outer.n(),
            found: inner.n(),
        });
    }
    if let Some(row) = inner
        .generator()
        .rows()
        .iter()
        .position(|r| !outer.contains(r))
    {
        return Err(Error::SubcodeViolation { row });
    }
    let cosets = outer.k() - inner.k();
    if aux.k() != cosets {
        return Err(Error::DimensionMismatch {
            expected: cosets,
            found: aux.k(),
        });
    }
    if aux.n() == 0 {
        return Err(Error::Underflow("auxiliary code must have positive length".into()));
    }

    let mut span = SpanBuilder::new();
    for r in inner.generator().rows() {
        span.insert(r);
    }
    let reps: Vec<&BitVector> = outer
        .generator()
        .rows()
        .iter()
        .filter(|r| span.insert(r))
        .collect();
    debug_assert_eq!(reps.len(), cosets);

    let zeros = BitVector::zeros(aux.n());
    let rows = inner
        .generator()
        .rows()
        .iter()
        .map(|r| r.concat(&zeros))
        .chain(
            reps.iter()
                .zip(aux.generator().rows())
                .map(|(rep, a)| rep.concat(a)),
        )
        .collect();
    LinearCode::from_rows(outer.n() + aux.n(), rows)
}

/// Incremental basis in echelon form; each stored row is reduced against the
/// earlier ones at their leading positions.
struct SpanBuilder {
    rows: Vec<(usize, BitVector)>,
}

impl SpanBuilder {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    /// Adds `v` to the span; returns false if it was already there.
    fn insert(&mut self, v: &BitVector) -> bool {
        let mut w = v.clone();
        for (lead, r) in &self.rows {
            if w.get(*lead) {
                w.xor_assign(r);
            }
        }
        let lead = w.ones_positions().next();
        match lead {
            Some(lead) => {
                self.rows.push((lead, w));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Exhaustive minimum distance of a small code.
    pub(crate) fn brute_distance(c: &LinearCode) -> usize {
        let k = c.k();
        (1u64..1 << k)
            .map(|m| {
                c.encode(&BitVector::from_bits((0..k).map(|i| (m >> i) & 1 == 1)))
                    .weight()
            })
            .min()
            .unwrap_or(0)
    }

    pub(crate) fn hamming() -> LinearCode {
        LinearCode::from_generator(
            &BitMatrix::from_strs(7, &["1000110", "0100101", "0010011", "0001111"]).unwrap(),
        )
    }

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_strs(n, rows).unwrap())
    }

    #[test]
    fn dual_basics() {
        assert_eq!(LinearCode::full(5).dual().k(), 0);
        let h = hamming();
        let d = h.dual();
        assert_eq!(d.k(), 3);
        assert_eq!(d.dual(), h);
        let prod = h.generator().mul(&d.generator().transpose()).unwrap();
        assert!(prod.rows().iter().all(BitVector::is_zero));
    }

    #[test]
    fn puncture_hamming() {
        let h = hamming();
        for pos in 0..7 {
            let p = h.puncture(pos).unwrap();
            assert_eq!((p.n(), p.k(), brute_distance(&p)), (6, 4, 2));
        }
        let r = LinearCode::repetition(3).puncture(0).unwrap();
        assert_eq!((r.n(), r.k(), brute_distance(&r)), (2, 1, 2));
        assert!(matches!(h.puncture(7), Err(Error::OutOfRange { .. })));
        assert!(LinearCode::full(1).puncture(0).is_err());
    }

    #[test]
    fn puncture_drops_dimension_on_weight_one_support() {
        let c = code(3, &["100", "011"]);
        let p = c.puncture(0).unwrap();
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn shorten_hamming() {
        let s = hamming().shorten(0).unwrap();
        assert_eq!((s.n(), s.k(), brute_distance(&s)), (6, 3, 3));
        let f = LinearCode::full(5).shorten(2).unwrap();
        assert_eq!((f.n(), f.k()), (4, 4));
        // position outside every support keeps the dimension
        let c = code(3, &["110"]);
        assert_eq!(c.shorten(2).unwrap().k(), 1);
        assert!(LinearCode::zero(4).shorten(0).is_err());
    }

    #[test]
    fn extend_hamming() {
        let e = hamming().extend();
        assert_eq!((e.n(), e.k(), brute_distance(&e)), (8, 4, 4));
        assert!(e.is_even());
        let ev = LinearCode::even_weight(5);
        let ee = ev.extend();
        assert_eq!(brute_distance(&ee), brute_distance(&ev));
    }

    #[test]
    fn construction_x_toy() {
        let outer = code(4, &["1100", "0011"]);
        let inner = code(4, &["1111"]);
        let aux = code(2, &["11"]);
        let x = construction_x(&outer, &inner, &aux).unwrap();
        assert_eq!((x.n(), x.k(), brute_distance(&x)), (6, 2, 4));
        assert!(x.contains(&"111100".parse().unwrap()));
    }

    #[test]
    fn construction_x_errors() {
        let outer = code(4, &["1100", "0011"]);
        let not_sub = code(4, &["1010"]);
        assert!(matches!(
            construction_x(&outer, &not_sub, &code(1, &["1"])),
            Err(Error::SubcodeViolation { row: 0 })
        ));
        let inner = code(4, &["1111"]);
        assert!(matches!(
            construction_x(&outer, &inner, &LinearCode::full(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn permutations_and_automorphisms() {
        let h = hamming();
        assert_eq!(h.apply_perm(&Permutation::identity(7)).unwrap(), h);
        assert!(h.is_automorphism(&Permutation::identity(7)).unwrap());
        let c = code(2, &["10"]);
        let swap = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert!(!c.is_automorphism(&swap).unwrap());
        assert!(matches!(
            c.apply_perm(&Permutation::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        // weight distribution is preserved
        let p = Permutation::from_cycles(7, &[&[0, 3, 5], &[1, 6]]).unwrap();
        let q = h.apply_perm(&p).unwrap();
        let dist = |c: &LinearCode| {
            let mut counts = [0usize; 8];
            for m in 0u64..16 {
                let w = c.encode(&BitVector::from_bits((0..4).map(|i| (m >> i) & 1 == 1)));
                counts[w.weight()] += 1;
            }
            counts
        };
        assert_eq!(dist(&h), dist(&q));
    }

    #[test]
    fn decomposition_of_full_space_by_three_cycle() {
        let full = LinearCode::full(3);
        let pi = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let f = full.fixed_subcode(&pi).unwrap();
        assert_eq!(f, code(3, &["111"]));
        let e = full.even_subcode(&pi).unwrap();
        assert_eq!(e, code(3, &["110", "011"]));
        assert_eq!(full.fixed_subcode(&Permutation::identity(3)).unwrap(), full);
    }

    #[test]
    fn even_subcode_preconditions() {
        let full = LinearCode::full(4);
        let mixed = Permutation::from_cycles(4, &[&[0, 1], &[2]]).unwrap();
        assert!(matches!(full.even_subcode(&mixed), Err(Error::EvenCycleLength(2))));
        assert!(matches!(
            full.even_subcode(&Permutation::identity(4)),
            Err(Error::NoCycleType)
        ));
        let c = code(4, &["1000"]);
        let cyc = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert!(matches!(c.even_subcode(&cyc), Err(Error::NotAutomorphism)));
        let mixed = Permutation::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert!(matches!(
            LinearCode::full(5).even_subcode(&mixed),
            Err(Error::NoCycleType)
        ));
    }

    #[test]
    fn gen_format_round_trip() {
        let h = hamming();
        let text = h.to_gen_string();
        assert!(text.starts_with("7 4\n"));
        assert_eq!(LinearCode::parse_gen(&text).unwrap(), h);
        assert!(LinearCode::parse_gen("3 2\n110\n110\n").is_err());
        assert!(LinearCode::parse_gen("3 1\n11\n").is_err());
        assert!(LinearCode::parse_gen("3 2\n110\n").is_err());
        assert_eq!(LinearCode::parse_gen("# zero\n4 0\n").unwrap().k(), 0);
    }

    #[test]
    fn distance_info_validation() {
        let h = hamming();
        let w: BitVector = "1000110".parse().unwrap();
        let ok = h.clone().with_distance(DistanceInfo { lower: 3, upper: 3, witness: w.clone() });
        assert_eq!(ok.unwrap().to_string(), "[7,4,3]");
        assert!(h
            .clone()
            .with_distance(DistanceInfo { lower: 3, upper: 4, witness: w })
            .is_err());
        assert!(h
            .with_distance(DistanceInfo { lower: 1, upper: 1, witness: "1000000".parse().unwrap() })
            .is_err());
    }
}
