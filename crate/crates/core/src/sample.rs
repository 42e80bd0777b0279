//! Seeded random groups, group-ring elements and codes.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::LinearCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::groupring::GroupRingElement;
use crate::groups::{FiniteGroup, SemidirectParams1, SemidirectParams2};

/// Stream `stream` of the generator seeded with `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn valid_exponents(n: u64, m: u64) -> Vec<u64> {
    (1..=n)
        .filter(|&k| SemidirectParams1::new(n, m, k).is_ok())
        .collect()
}

/// Uniform-ish `(n, m, k)` with `n·m ≤ max_order`.
pub fn g1_params<R: Rng>(rng: &mut R, max_order: usize) -> SemidirectParams1 {
    let max = max_order.max(1) as u64;
    let m = rng.random_range(1..=max.min(12));
    let n = rng.random_range(1..=max / m);
    let ks = valid_exponents(n, m);
    let k = ks[rng.random_range(0..ks.len())];
    SemidirectParams1::new(n, m, k).expect("k drawn from valid exponents")
}

/// `(n1, k1, n2, k2, m)` with `n1·n2·m ≤ max_order`.
pub fn g2_params<R: Rng>(rng: &mut R, max_order: usize) -> SemidirectParams2 {
    let max = max_order.max(1) as u64;
    let m = rng.random_range(1..=max.min(6));
    let n1 = rng.random_range(1..=(max / m).min(12));
    let n2 = rng.random_range(1..=max / (m * n1));
    let k1s = valid_exponents(n1, m);
    let k2s = valid_exponents(n2, m);
    let k1 = k1s[rng.random_range(0..k1s.len())];
    let k2 = k2s[rng.random_range(0..k2s.len())];
    SemidirectParams2::new(n1, k1, n2, k2, m).expect("exponents drawn from valid sets")
}

pub fn bits<R: Rng>(rng: &mut R, len: usize) -> BitVector {
    BitVector::from_bits((0..len).map(|_| rng.random::<bool>()))
}

pub fn element<R: Rng>(rng: &mut R, group: &Arc<FiniteGroup>) -> GroupRingElement {
    GroupRingElement::new(group.clone(), bits(rng, group.order())).expect("length matches")
}

/// A random unit by rejection; falls back to the identity after 10 000 draws.
pub fn unit<R: Rng>(rng: &mut R, group: &Arc<FiniteGroup>) -> GroupRingElement {
    for _ in 0..10_000 {
        let u = element(rng, group);
        if u.is_unit() {
            return u;
        }
    }
    GroupRingElement::one(group.clone())
}

/// Row space of a random `k × n` matrix; its dimension may fall below `k`.
pub fn code<R: Rng>(rng: &mut R, n: usize, k: usize) -> LinearCode {
    let rows = (0..k).map(|_| bits(rng, n)).collect();
    LinearCode::from_generator(&BitMatrix::from_rows(n, rows).expect("row lengths match"))
}
