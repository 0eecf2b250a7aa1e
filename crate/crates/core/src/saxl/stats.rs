//! Dominance-comparability statistics over full partition strata.

use crate::partitions::{partition_count, partitions_of, Partition};

/// Exact counts for one stratum: how the dominance neighborhood of a fixed
/// shape sits inside all partitions of its size, together with the
/// graphical and conjugate-upward counts of the stratum.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceStats {
    pub shape: Partition,
    pub n: u64,
    pub partitions: u64,
    /// `|Λ|`: weakly below the shape, including the shape itself.
    pub below: u64,
    /// `|V|`: weakly above the shape, including the shape itself.
    pub above: u64,
    /// `|C| = |Λ ∪ V|`.
    pub comparable: u64,
    pub conjugate_upward: u64,
    pub graphical: u64,
    pub comparable_ratio: f64,
}

/// Single-pass enumeration of the stratum of `shape`.
pub fn dominance_stats(shape: &Partition) -> DominanceStats {
    let n = shape.size();
    let mut below = 0u64;
    let mut above = 0u64;
    let mut comparable = 0u64;
    let mut upward = 0u64;
    let mut graphical = 0u64;
    let mut total = 0u64;
    for mu in partitions_of(n) {
        total += 1;
        let le = shape.dominates(&mu).expect("same size");
        let ge = mu.dominates(shape).expect("same size");
        if le {
            below += 1;
        }
        if ge {
            above += 1;
        }
        if le || ge {
            comparable += 1;
        }
        if mu.is_conjugate_upward() {
            upward += 1;
        }
        if mu.is_graphical() {
            graphical += 1;
        }
    }
    debug_assert_eq!(total, partition_count(n));
    DominanceStats {
        shape: shape.clone(),
        n,
        partitions: total,
        below,
        above,
        comparable,
        conjugate_upward: upward,
        graphical,
        comparable_ratio: comparable as f64 / total as f64,
    }
}
