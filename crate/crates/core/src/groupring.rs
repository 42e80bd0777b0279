//! Arithmetic in the group algebra F₂G and the G-matrix map σ.
//!
//! `sigma` builds the matrix straight from the Cayley table. The structured
//! builders assemble the same matrix from λ-circulant blocks using only the
//! family parameters, and serve as an independent cross-check.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::groups::{FiniteGroup, GroupFamily, SemidirectParams1, SemidirectParams2};

#[derive(Clone, Debug)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: BitVector,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupRingElement {
    /// Element with coefficient vector `Ψ(v) = coeffs` in the group's canonical order.
    pub fn new(group: Arc<FiniteGroup>, coeffs: BitVector) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: coeffs.len(),
            });
        }
        Ok(Self { group, coeffs })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Self {
            group,
            coeffs: BitVector::zeros(n),
        }
    }

    /// The group element `g` viewed inside the group ring.
    pub fn basis(group: Arc<FiniteGroup>, g: usize) -> Self {
        let n = group.order();
        Self {
            coeffs: BitVector::unit(n, g),
            group,
        }
    }

    pub fn one(group: Arc<FiniteGroup>) -> Self {
        let e = group.identity();
        Self::basis(group, e)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Ψ(v).
    pub fn coeffs(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        Ok(Self {
            group: self.group.clone(),
            coeffs: self.coeffs.xor(&other.coeffs),
        })
    }

    /// Convolution product: the coefficient of `g_i` is `Σ_j a(g_i g_j⁻¹) b(g_j)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let g = &self.group;
        let mut out = BitVector::zeros(g.order());
        let rhs: Vec<usize> = other.coeffs.ones_positions().collect();
        for h in self.coeffs.ones_positions() {
            for &b in &rhs {
                out.flip(g.mul(h, b));
            }
        }
        Ok(Self {
            group: self.group.clone(),
            coeffs: out,
        })
    }

    /// `v^(s)`: moves each coefficient from `g` to `g^s`, adding on collisions.
    pub fn power_map(&self, s: i64) -> Self {
        let g = &self.group;
        let mut out = BitVector::zeros(g.order());
        for h in self.coeffs.ones_positions() {
            out.flip(g.pow(h, s));
        }
        Self {
            group: self.group.clone(),
            coeffs: out,
        }
    }

    /// The G-matrix: entry `(i, j)` is the coefficient of `g_i⁻¹ g_j`.
    pub fn sigma(&self) -> BitMatrix {
        let g = &self.group;
        let n = g.order();
        BitMatrix::from_fn(n, n, |i, j| self.coeffs.get(g.mul(g.inv(i), j)))
    }

    /// True iff σ(v) is invertible, i.e. `v` is a unit of F₂G.
    pub fn is_unit(&self) -> bool {
        self.sigma().rank() == self.group.order()
    }
}

/// `n × n` matrix whose row `r` is `row` cyclically shifted right by `r·λ`.
pub fn lambda_circulant(row: &BitVector, lambda: u64) -> BitMatrix {
    let n = row.len();
    assert!(n >= 1, "λ-circulant of an empty row");
    let step = (lambda % n as u64) as usize;
    BitMatrix::from_fn(n, n, |r, c| row.get((c + n - (r * step) % n) % n))
}

/// Block λ-circulant: block `(r, c)` is `blocks[(c − r·λ) mod len]`.
///
/// All blocks must share the same square size.
pub fn block_circulant(blocks: &[BitMatrix], lambda: u64) -> BitMatrix {
    let count = blocks.len();
    assert!(count >= 1);
    let b = blocks[0].nrows();
    assert!(blocks.iter().all(|m| m.nrows() == b && m.ncols() == b));
    let step = (lambda % count as u64) as usize;
    let size = count * b;
    BitMatrix::from_fn(size, size, |r, c| {
        let (br, bc) = (r / b, c / b);
        let which = (bc + count - (br * step) % count) % count;
        blocks[which].get(r % b, c % b)
    })
}

fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    let mut r = 1 % modulus;
    for _ in 0..exp {
        r = r * base % modulus;
    }
    r
}

fn slice(v: &BitVector, start: usize, len: usize) -> BitVector {
    BitVector::from_bits((start..start + len).map(|i| v.get(i)))
}

/// σ for `C_n ⋊ C_m` assembled as `Circ(A_1, …, A_m)` with
/// `A_{j+1} = circ_{k^j}(a_{1+nj}, …, a_{n+nj})`.
pub fn sigma_structured_g1(v: &GroupRingElement, p: &SemidirectParams1) -> Result<BitMatrix> {
    if v.group().family() != &GroupFamily::G1(*p) {
        return Err(Error::GroupMismatch);
    }
    let (n, m) = (p.n as usize, p.m as usize);
    let blocks: Vec<BitMatrix> = (0..m)
        .map(|j| lambda_circulant(&slice(v.coeffs(), n * j, n), pow_mod(p.k, j as u64, p.n)))
        .collect();
    Ok(block_circulant(&blocks, 1))
}

/// σ for `(C_n1 × C_n2) ⋊ C_m`, built in three layers.
///
/// The outer layer is block-circulant over the `m` cosets of `C_n1 × C_n2`.
/// Outer block `i` is a block λ-circulant with `λ = k2^i` whose `n2` blocks are
/// `circ_{k1^i}` of consecutive length-`n1` coefficient slices. The inner shift
/// depends on the outer index `i`, since conjugating by `z^i` raises `x` to `k1^i`.
pub fn sigma_structured_g2(v: &GroupRingElement, p: &SemidirectParams2) -> Result<BitMatrix> {
    if v.group().family() != &GroupFamily::G2(*p) {
        return Err(Error::GroupMismatch);
    }
    let (n1, n2, m) = (p.n1 as usize, p.n2 as usize, p.m as usize);
    let outer: Vec<BitMatrix> = (0..m)
        .map(|i| {
            let inner_shift = pow_mod(p.k1, i as u64, p.n1);
            let middle_shift = pow_mod(p.k2, i as u64, p.n2);
            let inner: Vec<BitMatrix> = (0..n2)
                .map(|j| {
                    lambda_circulant(&slice(v.coeffs(), n1 * j + n1 * n2 * i, n1), inner_shift)
                })
                .collect();
            block_circulant(&inner, middle_shift)
        })
        .collect();
    Ok(block_circulant(&outer, 1))
}
