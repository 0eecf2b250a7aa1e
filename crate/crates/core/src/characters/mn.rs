//! Border-strip recursion for irreducible characters, with a process-wide
//! memo table.
//!
//! The recursion removes a border strip whose length equals the largest
//! remaining cycle, with sign `(-1)^height`, summed over all removable
//! strips. Consuming cycles largest-first makes the remaining cycle type a
//! suffix of the sorted class, which maximizes memo sharing across columns
//! and kills dead branches early (a shape with no strip of the required
//! length contributes zero immediately).
//!
//! Strips are located on the beta-set `b_i = parts[i] + (L-1-i)`: removing
//! an `r`-strip means replacing some `b_i` by `b_i - r` when that value is
//! free, and the strip height equals the number of betas jumped over.

use std::sync::atomic::{AtomicUsize, Ordering};

use dashmap::DashMap;
use once_cell::sync::Lazy;

use super::CharInt;

const DEFAULT_CACHE_ENTRIES: usize = 1 << 22;

struct CharCache {
    map: DashMap<Box<[u8]>, CharInt>,
    cap: AtomicUsize,
    inserts: AtomicUsize,
}

static CACHE: Lazy<CharCache> = Lazy::new(|| {
    let cap = std::env::var("SAXLKIT_CACHE_ENTRIES")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_CACHE_ENTRIES);
    CharCache {
        map: DashMap::new(),
        cap: AtomicUsize::new(cap),
        inserts: AtomicUsize::new(0),
    }
});

/// Overrides the memo entry cap (also settable via `SAXLKIT_CACHE_ENTRIES`).
/// On overflow the whole table is discarded, which keeps memory predictable
/// under batch runs at the price of recomputation.
pub fn set_character_cache_cap(entries: usize) {
    CACHE.cap.store(entries.max(1), Ordering::Relaxed);
}

/// Approximate number of live memo entries, for diagnostics.
pub fn estimate_cache_len() -> usize {
    CACHE.map.len()
}

fn cache_insert(key: Box<[u8]>, value: CharInt) {
    let n = CACHE.inserts.fetch_add(1, Ordering::Relaxed);
    if n.is_multiple_of(1024) && CACHE.map.len() >= CACHE.cap.load(Ordering::Relaxed) {
        CACHE.map.clear();
    }
    CACHE.map.insert(key, value);
}

fn make_key(shape: &[u8], cycles: &[u8]) -> Box<[u8]> {
    let mut key = Vec::with_capacity(shape.len() + cycles.len() + 1);
    key.extend_from_slice(shape);
    key.push(0xFF);
    key.extend_from_slice(cycles);
    key.into_boxed_slice()
}

/// Character value on compact encodings: `shape` and `cycles` are weakly
/// decreasing positive byte sequences of equal sums, `cycles` sorted so the
/// largest cycle comes first.
pub(crate) fn chi_compact(shape: &[u8], cycles: &[u8]) -> CharInt {
    if cycles.is_empty() {
        debug_assert!(shape.is_empty());
        return CharInt::ONE;
    }
    // single row: trivial character
    if shape.len() == 1 {
        return CharInt::ONE;
    }
    // single column: sign character of the remaining class
    if shape.iter().all(|&p| p == 1) {
        let n = shape.len();
        let sign_exp = n - cycles.len();
        return if sign_exp.is_multiple_of(2) { CharInt::ONE } else { -&CharInt::ONE };
    }
    let key = make_key(shape, cycles);
    if let Some(hit) = CACHE.map.get(&key) {
        return hit.clone();
    }
    let r = cycles[0];
    let rest = &cycles[1..];
    let mut acc = CharInt::ZERO;
    let l = shape.len();
    // beta-set, strictly decreasing
    let betas: Vec<u16> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p as u16 + (l - 1 - i) as u16)
        .collect();
    let mut new_shape: Vec<u8> = Vec::with_capacity(l);
    for i in 0..l {
        let b = betas[i];
        if b < r as u16 {
            break; // betas decrease; no later one can host the strip
        }
        let t = b - r as u16;
        // position where t would sit in the descending list
        let mut pos = i + 1;
        while pos < l && betas[pos] > t {
            pos += 1;
        }
        if pos < l && betas[pos] == t {
            continue; // occupied: not a removable strip
        }
        let height = pos - i - 1;
        // rebuild the partition from the modified beta-set
        new_shape.clear();
        for q in 0..l {
            let beta_q = if q < i {
                betas[q]
            } else if q + 1 < pos {
                betas[q + 1]
            } else if q + 1 == pos {
                t
            } else {
                betas[q]
            };
            let part = beta_q - (l - 1 - q) as u16;
            if part > 0 {
                new_shape.push(part as u8);
            }
        }
        let sub = chi_compact(&new_shape, rest);
        if height % 2 == 0 {
            acc += &sub;
        } else {
            acc += &-&sub;
        }
    }
    cache_insert(key, acc.clone());
    acc
}
