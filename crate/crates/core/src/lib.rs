//! Binary linear codes from group-ring matrices.
//!
//! Groups are explicit multiplication tables; an element `v` of the group ring
//! `F_2 G` gives the matrix `σ(v)` whose row space is the code `C(v)`. Codes can
//! be decomposed under an automorphism, glued with Construction X, and have
//! their minimum distance certified by a Brouwer–Zimmermann search.

pub mod codes;
pub mod combinations;
pub mod data;
pub mod distance;
pub mod error;
pub mod gf2;
pub mod groupring;
pub mod groups;
pub mod io;
pub mod sample;
pub mod search;

pub use codes::{construction_x, Decomposition, DistanceInfo, LinearCode};
pub use distance::{min_distance_bruteforce, min_distance_bz, Budget, DistanceResult};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use groupring::GroupRingElement;
pub use groups::{
    make_g1, make_g2, CycleType, FiniteGroup, Permutation, SemidirectParams1, SemidirectParams2,
};
