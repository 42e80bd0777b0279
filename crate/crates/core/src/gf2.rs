//! Dense, bit-packed vectors and matrices over GF(2).
//!
//! Bits are stored little-endian inside `u64` words: coordinate `i` lives in
//! word `i / 64` at bit `i % 64`. Unused high bits of the last word are kept
//! zero so that word-level equality, hashing and popcounts are exact.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// Vector of length `len` with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Builds a vector from raw words; bits past `len` are discarded.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions of the one bits, increasing.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// Copy with coordinate `index` deleted.
    pub fn remove(&self, index: usize) -> BitVector {
        assert!(index < self.len);
        BitVector::from_bits(
            self.iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, b)| b),
        )
    }

    pub fn concat(&self, tail: &BitVector) -> BitVector {
        BitVector::from_bits(self.iter().chain(tail.iter()))
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % WORD_BITS == 0 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    /// Parses a strict string of '0'/'1' characters.
    pub fn parse_strict(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(
                    1,
                    format!("unexpected character {other:?} at column {}", i + 1),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector::from_bits)
    }

    /// Keeps only '0'/'1' characters; everything else is treated as layout.
    pub fn parse_lenient(s: &str) -> Self {
        BitVector::from_bits(s.chars().filter_map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        }))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitVector::parse_strict(s.trim())
    }
}

/// Output of a row reduction.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the reduced matrix; row `i` has its leading one in `pivots[i]`.
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    /// A matrix with no rows.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows such as `["110", "011"]`.
    pub fn from_strs(cols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BitVector::parse_strict(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, rows)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            cols,
            rows: (0..rows)
                .map(|r| BitVector::from_bits((0..cols).map(|c| f(r, c))))
                .collect(),
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones_positions() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for i in row.ones_positions() {
                    acc.xor_assign(&other.rows[i]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// `v · self` for a row vector `v` of length `nrows`.
    pub fn combine(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.len(), self.nrows());
        let mut acc = BitVector::zeros(self.cols);
        for i in coeffs.ones_positions() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: cols.len(),
            rows: self
                .rows
                .iter()
                .map(|r| BitVector::from_bits(cols.iter().map(|&c| r.get(c))))
                .collect(),
        }
    }

    pub fn remove_column(&self, index: usize) -> BitMatrix {
        BitMatrix {
            cols: self.cols - 1,
            rows: self.rows.iter().map(|r| r.remove(index)).collect(),
        }
    }

    /// Reduced row echelon form with pivots searched left to right.
    pub fn rref(&self) -> Echelon {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    /// Reduced row echelon form where pivot columns are searched in `order`.
    ///
    /// Columns absent from `order` never become pivots. Each returned row has a
    /// one in its own pivot column and zeros in every other pivot column.
    pub fn rref_with_order(&self, order: &[usize]) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for &c in order {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
            for r in head.iter_mut().chain(tail.iter_mut()) {
                if r.get(c) {
                    r.xor_assign(pivot_row);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon {
            matrix: BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{x : self · xᵀ = 0}`, one basis vector per row.
    pub fn nullspace(&self) -> BitMatrix {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVector::unit(self.cols, free);
                for (r, &p) in ech.pivots.iter().enumerate() {
                    if ech.matrix.rows[r].get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    /// True iff both matrices span the same row space.
    pub fn rowspace_equal(&self, other: &BitMatrix) -> Result<bool> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(self.rref().matrix == other.rref().matrix)
    }

    /// Coefficients `x` with `x · self = w`, if `w` lies in the row space.
    ///
    /// The rows of `self` must be linearly independent.
    pub fn solve_membership(&self, w: &BitVector) -> Result<Option<BitVector>> {
        if w.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: w.len(),
            });
        }
        let k = self.nrows();
        // Reduce copies of the rows while tracking which originals each one combines.
        let mut rows: Vec<(BitVector, BitVector)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), BitVector::unit(k, i)))
            .collect();
        let mut pivots = Vec::with_capacity(k);
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..k).find(|&r| rows[r].0.get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let (pv, pt) = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.0.get(c) {
                    row.0.xor_assign(&pv);
                    row.1.xor_assign(&pt);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if rank < k {
            return Err(Error::DependentBasis);
        }
        let mut rest = w.clone();
        let mut coeffs = BitVector::zeros(k);
        for (r, &c) in pivots.iter().enumerate() {
            if rest.get(c) {
                rest.xor_assign(&rows[r].0);
                coeffs.xor_assign(&rows[r].1);
            }
        }
        Ok(rest.is_zero().then_some(coeffs))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Membership test against a matrix already in reduced row echelon form.
pub(crate) fn in_rref_span(ech: &Echelon, w: &BitVector) -> bool {
    let mut rest = w.clone();
    for (r, &c) in ech.pivots.iter().enumerate() {
        if rest.get(c) {
            rest.xor_assign(ech.matrix.row(r));
        }
    }
    rest.is_zero()
}
