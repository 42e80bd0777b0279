//! Coefficient vectors and best-known parameters shipped with the crate.

use std::sync::Arc;

use crate::error::Result;
use crate::groups::FiniteGroup;
use crate::io::VFile;
use crate::search::BklcTable;

/// `(id, file contents)` for every bundled vector, in table order.
pub const VECTORS: &[(&str, &str)] = &[
    ("v1", include_str!("../data/v1.txt")),
    ("v2", include_str!("../data/v2.txt")),
    ("v3", include_str!("../data/v3.txt")),
    ("v4", include_str!("../data/v4.txt")),
    ("v5", include_str!("../data/v5.txt")),
    ("v6", include_str!("../data/v6.txt")),
    ("v7", include_str!("../data/v7.txt")),
    ("v8", include_str!("../data/v8.txt")),
    ("v9", include_str!("../data/v9.txt")),
    ("v10", include_str!("../data/v10.txt")),
    ("v11", include_str!("../data/v11.txt")),
    ("v12", include_str!("../data/v12.txt")),
    ("v13", include_str!("../data/v13.txt")),
    ("v14", include_str!("../data/v14.txt")),
    ("v15", include_str!("../data/v15.txt")),
    ("w105", include_str!("../data/w105.txt")),
];

pub const BKLC_CSV: &str = include_str!("../data/bklc.csv");

pub fn ids() -> impl Iterator<Item = &'static str> {
    VECTORS.iter().map(|(id, _)| *id)
}

/// Parses a bundled vector by id.
pub fn vector(id: &str) -> Option<Result<VFile>> {
    VECTORS
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, text)| VFile::parse(text))
}

/// Parses a bundled vector and builds its group.
pub fn load(id: &str) -> Option<Result<(VFile, Arc<FiniteGroup>)>> {
    vector(id).map(|v| {
        let v = v?;
        let g = v.group.build(None)?;
        Ok((v, g))
    })
}

pub fn bklc() -> Result<BklcTable> {
    BklcTable::parse(BKLC_CSV)
}
