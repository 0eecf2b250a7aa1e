//! Exact irreducible character values of symmetric groups, class sizes,
//! hook-length dimensions, and column statistics.

mod charint;
mod mn;

use std::io::Write;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::partitions::{partitions_of, Partition};

pub use charint::CharInt;
pub use mn::{estimate_cache_len, set_character_cache_cap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("size mismatch: |lambda| = {0} but class has size {1}")]
    SizeMismatch(u64, u64),
    #[error("sizes beyond 255 are not supported by the character engine")]
    Unsupported,
}

/// A partition used as a conjugacy-class label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(shape: Partition) -> Self {
        CycleType(shape)
    }

    pub fn shape(&self) -> &Partition {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.size()
    }

    /// `(i, m_i)` pairs: the number of parts equal to `i`, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.0.parts() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Sign of the class: `(-1)^(n - number of cycles)`.
    pub fn sign(&self) -> i32 {
        if (self.size() as usize - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Centralizer order `z_mu = prod i^(m_i) m_i!`; the class has `n!/z_mu`
/// elements.
pub fn class_size(mu: &CycleType) -> CharInt {
    let mut z = CharInt::ONE;
    for (part, mult) in mu.multiplicities() {
        z = &z * &CharInt::from(part as i64).pow(mult);
        z = &z * &CharInt::factorial(mult as u64);
    }
    z
}

/// Hook-length formula: `n! / prod hooks`. Used as an independent oracle
/// for the identity column of the recursion.
pub fn dimension(lambda: &Partition) -> CharInt {
    let n = lambda.size();
    if n == 0 {
        return CharInt::ONE;
    }
    let conj = lambda.conjugate();
    let mut denom = CharInt::ONE;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let hook = (row as u64 - j as u64) + (conj.part(j) as u64 - i as u64) - 1;
            denom = &denom * &CharInt::from(hook as i64);
        }
    }
    CharInt::factorial(n)
        .div_exact(&denom)
        .expect("hook product divides n!")
}

fn encode(p: &Partition) -> Result<Vec<u8>, CharacterError> {
    if p.len() > 255 || p.first() > 255 {
        return Err(CharacterError::Unsupported);
    }
    Ok(p.parts().iter().map(|&x| x as u8).collect())
}

/// Exact `chi^lambda(mu)` by the memoized border-strip recursion.
pub fn character_value(lambda: &Partition, mu: &CycleType) -> Result<CharInt, CharacterError> {
    let (n, m) = (lambda.size(), mu.size());
    if n != m {
        return Err(CharacterError::SizeMismatch(n, m));
    }
    let shape = encode(lambda)?;
    let cycles = encode(mu.shape())?;
    Ok(mn::chi_compact(&shape, &cycles))
}

/// One conjugacy class of `S_n`: its label and the class cardinality
/// `n!/z_c`, precomputed once per `n`.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub cycle_type: CycleType,
    pub cardinality: CharInt,
    pub(crate) encoded: Vec<u8>,
}

static CLASS_DATA: Lazy<DashMap<u64, Arc<Vec<ClassEntry>>>> = Lazy::new(DashMap::new);

/// All classes of `S_n` in reverse-lexicographic label order, with
/// cardinalities.
pub fn classes_of(n: u64) -> Arc<Vec<ClassEntry>> {
    if let Some(hit) = CLASS_DATA.get(&n) {
        return hit.clone();
    }
    let factorial = CharInt::factorial(n);
    let entries: Vec<ClassEntry> = partitions_of(n)
        .map(|shape| {
            let cycle_type = CycleType::new(shape);
            let z = class_size(&cycle_type);
            let cardinality = factorial.div_exact(&z).expect("z divides n!");
            let encoded = cycle_type
                .shape()
                .parts()
                .iter()
                .map(|&x| x as u8)
                .collect();
            ClassEntry { cycle_type, cardinality, encoded }
        })
        .collect();
    let arc = Arc::new(entries);
    CLASS_DATA.insert(n, arc.clone());
    arc
}

pub(crate) fn chi_on_entry(shape: &[u8], entry: &ClassEntry) -> CharInt {
    mn::chi_compact(shape, &entry.encoded)
}

pub(crate) fn encode_checked(p: &Partition) -> Result<Vec<u8>, CharacterError> {
    encode(p)
}

/// Per-column vanishing statistics on a fixed class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnStats {
    pub class: CycleType,
    pub zero_count: u64,
    pub nonzero_count: u64,
    pub total: u64,
}

/// `N(mu)`: the number of irreducible characters vanishing on `mu`.
pub fn vanishing_count(mu: &CycleType) -> ColumnStats {
    let n = mu.size();
    let encoded_mu: Vec<u8> = mu.shape().parts().iter().map(|&x| x as u8).collect();
    let mut zero = 0u64;
    let mut total = 0u64;
    for lambda in partitions_of(n) {
        total += 1;
        let shape: Vec<u8> = lambda.parts().iter().map(|&x| x as u8).collect();
        if mn::chi_compact(&shape, &encoded_mu).is_zero() {
            zero += 1;
        }
    }
    ColumnStats {
        class: mu.clone(),
        zero_count: zero,
        nonzero_count: total - zero,
        total,
    }
}

/// The full character column on class `mu`, one row per `lambda` in
/// reverse-lexicographic order.
pub fn character_column(mu: &CycleType) -> Vec<(Partition, CharInt)> {
    let n = mu.size();
    let encoded_mu: Vec<u8> = mu.shape().parts().iter().map(|&x| x as u8).collect();
    partitions_of(n)
        .map(|lambda| {
            let shape: Vec<u8> = lambda.parts().iter().map(|&x| x as u8).collect();
            let value = mn::chi_compact(&shape, &encoded_mu);
            (lambda, value)
        })
        .collect()
}

/// Writes a column dump as CSV with header `class,partition,value`.
pub fn write_column_csv<W: Write>(mu: &CycleType, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["class", "partition", "value"])
        .map_err(csv_io)?;
    for (lambda, value) in character_column(mu) {
        w.write_record([mu.to_string(), lambda.to_string(), value.to_string()])
            .map_err(csv_io)?;
    }
    w.flush()
}

fn csv_io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}
