//! Integer partitions: the universal object of the toolkit.
//!
//! A [`Partition`] is an immutable weakly-decreasing sequence of positive
//! integers, stored without trailing zeros so that structural equality is
//! exact equality of partitions. The module provides the diagram operations
//! used throughout (conjugation, dominance, Durfee squares, arm/leg
//! profiles, rowwise and vertical sums), the named shape families, and
//! deterministic enumeration in reverse-lexicographic order.
//!
//! Canonical text form: comma-separated parts in brackets, exponent
//! shorthand accepted on input (`[3^3,2^2,1]`), always emitted fully
//! expanded (`[3,3,3,2,2,1]`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0} appears after {1}")]
    NotDecreasing(u32, u32),
    #[error("parts must be positive")]
    ZeroPart,
    #[error("size mismatch: |lambda| = {0}, |mu| = {1}")]
    SizeMismatch(u64, u64),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("cannot parse partition from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A partition of a non-negative integer. The empty sequence is the unique
/// partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self, PartitionError> {
        let parts = parts.into();
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(PartitionError::NotDecreasing(w[1], w[0]));
            }
        }
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from arbitrary parts by sorting and dropping zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The part at `index` (0-based), with zero padding past the end.
    pub fn part(&self, index: usize) -> u32 {
        self.parts.get(index).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// Column lengths of the Young diagram; an involution.
    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 0..cols {
            let len = self.parts.iter().take_while(|&&p| p as usize > j).count();
            out.push(len as u32);
        }
        Partition { parts: out }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Rowwise containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Dominance order: every prefix sum of `self` weakly exceeds the
    /// corresponding prefix sum of `other`. Only defined between partitions
    /// of the same integer.
    pub fn dominates(&self, other: &Partition) -> Result<bool, PartitionError> {
        let (n, m) = (self.size(), other.size());
        if n != m {
            return Err(PartitionError::SizeMismatch(n, m));
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..self.len().max(other.len()) {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn comparable(&self, other: &Partition) -> Result<bool, PartitionError> {
        Ok(self.dominates(other)? || other.dominates(self)?)
    }

    /// Number of boxes on the main diagonal.
    pub fn durfee(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p as usize > i)
            .count()
    }

    /// Durfee size together with the principal hook partition
    /// `(|h_{1,1}|, ..., |h_{k,k}|)`. Empty input gives `(0, [])`.
    pub fn durfee_and_principal_hooks(&self) -> (usize, Partition) {
        let k = self.durfee();
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(k);
        for i in 0..k {
            let arm = self.parts[i] - (i as u32) - 1;
            let leg = conj.parts[i] - (i as u32) - 1;
            hooks.push(arm + leg + 1);
        }
        (k, Partition { parts: hooks })
    }

    pub fn principal_hooks(&self) -> Partition {
        self.durfee_and_principal_hooks().1
    }

    /// Column and row multiplicities outside the Durfee square.
    pub fn arm_leg_profile(&self) -> ArmLegProfile {
        let k = self.durfee();
        let conj = self.conjugate();
        let mut a = vec![0u32; k];
        let mut b = vec![0u32; k];
        for j in k..conj.len() {
            let len = conj.parts[j] as usize;
            debug_assert!(len >= 1 && len <= k);
            a[len - 1] += 1;
        }
        for i in k..self.len() {
            let len = self.parts[i] as usize;
            debug_assert!(len >= 1 && len <= k);
            b[len - 1] += 1;
        }
        ArmLegProfile::new(k, a, b)
    }

    /// Multiset union of parts, sorted descending. Conjugate-dual to
    /// rowwise addition: `(x ∪ y)' = x' + y'`.
    pub fn vertical_sum(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            let x = self.part(i);
            let y = other.part(j);
            if i < self.len() && (j >= other.len() || x >= y) {
                parts.push(x);
                i += 1;
            } else {
                parts.push(y);
                j += 1;
            }
        }
        Partition { parts }
    }

    /// Componentwise sum of rows.
    pub fn row_add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        let parts = (0..len).map(|i| self.part(i) + other.part(i)).collect();
        Partition { parts }
    }

    /// Componentwise difference of rows; `None` when the result is not a
    /// partition. Decomposability searches probe many invalid differences,
    /// so this is not an error.
    pub fn row_sub(&self, other: &Partition) -> Option<Partition> {
        if other.len() > self.len() {
            return None;
        }
        let mut parts = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let a = self.part(i);
            let b = other.part(i);
            if a < b {
                return None;
            }
            parts.push(a - b);
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return None;
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// Prefix-sum test `sum_{j<=i} conj_j >= sum_{j<=i} parts_j + i` for all
    /// `i` up to the Durfee size (the binding range of the condition).
    pub fn is_graphical(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let conj = self.conjugate();
        let k = self.durfee();
        let mut rows = 0u64;
        let mut cols = 0u64;
        for i in 0..k {
            rows += self.parts[i] as u64;
            cols += conj.parts[i] as u64;
            if cols < rows + (i as u64 + 1) {
                return false;
            }
        }
        true
    }

    /// True when the partition is dominated by its own conjugate.
    pub fn is_conjugate_upward(&self) -> bool {
        self.conjugate().dominates(self).expect("same size")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PartitionError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| err("expected surrounding brackets"))?
            .trim();
        let mut parts: Vec<u32> = Vec::new();
        if !inner.is_empty() {
            for item in inner.split(',') {
                let item = item.trim();
                let (base, exp) = match item.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim()),
                    None => (item, "1"),
                };
                let part: u32 = base.parse().map_err(|_| err("invalid part"))?;
                let count: u32 = exp.parse().map_err(|_| err("invalid exponent"))?;
                if part == 0 {
                    return Err(PartitionError::ZeroPart);
                }
                if count == 0 {
                    return Err(err("exponent must be at least 1"));
                }
                for _ in 0..count {
                    parts.push(part);
                }
            }
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Arm/leg weights of a partition around its Durfee square: `a[i-1]`
/// columns of length `i` beyond the first `k` columns, `b[i-1]` rows of
/// length `i` beyond the first `k` rows, so `n = k^2 + A + B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmLegProfile {
    k: usize,
    a: Vec<u32>,
    b: Vec<u32>,
    arm_weight: u64,
    leg_weight: u64,
}

impl ArmLegProfile {
    pub fn new(k: usize, a: Vec<u32>, b: Vec<u32>) -> Self {
        debug_assert_eq!(a.len(), k);
        debug_assert_eq!(b.len(), k);
        let arm_weight = a
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum();
        let leg_weight = b
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum();
        ArmLegProfile { k, a, b, arm_weight, leg_weight }
    }

    pub fn durfee(&self) -> usize {
        self.k
    }

    /// Column multiplicities `a_1..a_k`.
    pub fn arm_multiplicities(&self) -> &[u32] {
        &self.a
    }

    /// Row multiplicities `b_1..b_k`.
    pub fn leg_multiplicities(&self) -> &[u32] {
        &self.b
    }

    /// `a_i`, 1-indexed.
    pub fn a(&self, i: usize) -> u32 {
        self.a.get(i - 1).copied().unwrap_or(0)
    }

    /// `b_i`, 1-indexed.
    pub fn b(&self, i: usize) -> u32 {
        self.b.get(i - 1).copied().unwrap_or(0)
    }

    pub fn arm_weight(&self) -> u64 {
        self.arm_weight
    }

    pub fn leg_weight(&self) -> u64 {
        self.leg_weight
    }

    /// The profile of the transposed partition.
    pub fn transpose(&self) -> ArmLegProfile {
        ArmLegProfile::new(self.k, self.b.clone(), self.a.clone())
    }
}

/// A column selection from the arm of a profile: `x_i` columns of length
/// `i` are taken, producing the partition
/// `(x_1 + ... + x_k, x_2 + ... + x_k, ..., x_k)` with zero parts dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectVector {
    x: Vec<u32>,
    target: u64,
    upsilon: Partition,
}

impl SelectVector {
    pub fn new(x: Vec<u32>) -> Self {
        let target = x
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum();
        let upsilon = induced_partition(&x);
        SelectVector { x, target, upsilon }
    }

    pub fn entries(&self) -> &[u32] {
        &self.x
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn induced(&self) -> &Partition {
        &self.upsilon
    }
}

/// Suffix sums of the selection counts, largest first.
pub fn induced_partition(x: &[u32]) -> Partition {
    let mut parts = Vec::with_capacity(x.len());
    let mut acc = 0u32;
    for &c in x.iter().rev() {
        acc += c;
        parts.push(acc);
    }
    parts.reverse();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::from_sorted_unchecked(parts)
}

// ---------------------------------------------------------------------------
// Named shapes
// ---------------------------------------------------------------------------

/// The staircase `(m, m-1, ..., 1)`.
pub fn staircase(m: u32) -> Partition {
    Partition::from_sorted_unchecked((1..=m).rev().collect())
}

/// The top strip `(m, m-1, ..., m-i+1)` of the staircase of order `m`.
pub fn tau(m: u32, i: u32) -> Result<Partition, PartitionError> {
    if i == 0 || m + 1 < i {
        return Err(PartitionError::ParameterRange(format!(
            "tau requires 1 <= i <= m+1, got m={m}, i={i}"
        )));
    }
    Ok(Partition::from_sorted_unchecked(
        (m + 1 - i..=m).rev().filter(|&p| p > 0).collect(),
    ))
}

/// Conjugate of [`tau`]: `(i^(m-i+1), i-1, ..., 1)`.
pub fn sigma(m: u32, i: u32) -> Result<Partition, PartitionError> {
    Ok(tau(m, i)?.conjugate())
}

/// The chopped square `(k^(k-1), k-1)`; `k = 1` gives the empty partition.
pub fn chopped_square(k: u32) -> Result<Partition, PartitionError> {
    if k == 0 {
        return Err(PartitionError::ParameterRange(
            "chopped_square requires k >= 1".into(),
        ));
    }
    let mut parts = vec![k; (k - 1) as usize];
    if k > 1 {
        parts.push(k - 1);
    }
    Ok(Partition::from_sorted_unchecked(parts))
}

/// The self-conjugate caret shape of order `k`, of size `3k^2`. Satisfies
/// `caret(k) = (caret(k-1) + (1^(3k-2))) ∪ (3k-1)` for `k >= 2`.
pub fn caret(k: u32) -> Result<Partition, PartitionError> {
    if k == 0 {
        return Err(PartitionError::ParameterRange("caret requires k >= 1".into()));
    }
    let mut shape = Partition::new(vec![2, 1]).unwrap();
    for j in 2..=k {
        let ones = Partition::from_sorted_unchecked(vec![1; (3 * j - 2) as usize]);
        let row = Partition::from_sorted_unchecked(vec![3 * j - 1]);
        shape = shape.row_add(&ones).vertical_sum(&row);
    }
    debug_assert_eq!(shape.size(), 3 * (k as u64) * (k as u64));
    Ok(shape)
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Iterator over all partitions of `n` in reverse-lexicographic order,
/// starting from `(n)` and ending at `(1^n)`.
pub struct Partitions {
    current: Option<Vec<u32>>,
    n: u64,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_sorted_unchecked(cur.clone());
        // advance: decrement the rightmost part exceeding 1 and refill the
        // tail greedily with parts bounded by the new value
        let mut parts = cur;
        match parts.iter().rposition(|&p| p > 1) {
            None => {
                self.current = None;
            }
            Some(j) => {
                let v = parts[j] - 1;
                let prefix: u64 = parts[..j].iter().map(|&p| p as u64).sum();
                let mut rem = self.n - prefix - v as u64;
                parts.truncate(j);
                parts.push(v);
                while rem >= v as u64 {
                    parts.push(v);
                    rem -= v as u64;
                }
                if rem > 0 {
                    parts.push(rem as u32);
                }
                self.current = Some(parts);
            }
        }
        Some(out)
    }
}

/// All partitions of `n`, reverse-lexicographic.
pub fn partitions_of(n: u64) -> Partitions {
    let current = if n == 0 {
        Some(Vec::new())
    } else {
        Some(vec![n as u32])
    };
    Partitions { current, n }
}

/// Optional restrictions for [`enumerate_partitions`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumFilter {
    pub durfee: Option<usize>,
    pub max_length: Option<usize>,
}

/// Enumerates partitions of `n`, reverse-lexicographic, honoring the
/// filter. A Durfee restriction uses a direct product construction over
/// arm and leg configurations instead of filtering the full stream, so it
/// stays usable when `p(n)` is astronomical.
pub fn enumerate_partitions(n: u64, filter: EnumFilter) -> Box<dyn Iterator<Item = Partition>> {
    match filter.durfee {
        Some(k) => {
            let max_len = filter.max_length;
            let mut items = durfee_partitions(n, k);
            if let Some(ml) = max_len {
                items.retain(|p| p.len() <= ml);
            }
            Box::new(items.into_iter())
        }
        None => {
            let iter = partitions_of(n);
            match filter.max_length {
                Some(ml) => Box::new(iter.filter(move |p| p.len() <= ml)),
                None => Box::new(iter),
            }
        }
    }
}

/// Partitions of `n` with parts at most `max_part`, in reverse-lexicographic
/// order.
pub fn bounded_partitions(n: u64, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn rec(rem: u64, bound: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_sorted_unchecked(stack.clone()));
            return;
        }
        let hi = (bound as u64).min(rem) as u32;
        for p in (1..=hi).rev() {
            stack.push(p);
            rec(rem - p as u64, p, stack, out);
            stack.pop();
        }
    }
    rec(n, max_part, &mut stack, &mut out);
    out
}

/// All partitions of `n` with Durfee size exactly `k`, reverse-lexicographic.
pub fn durfee_partitions(n: u64, k: usize) -> Vec<Partition> {
    if k == 0 {
        return if n == 0 { vec![Partition::empty()] } else { vec![] };
    }
    let kk = (k * k) as u64;
    if n < kk {
        return vec![];
    }
    let mut out = Vec::new();
    for arm_weight in 0..=(n - kk) {
        let leg_weight = n - kk - arm_weight;
        let arms = bounded_partitions(arm_weight, k as u32);
        let legs = bounded_partitions(leg_weight, k as u32);
        for arm in &arms {
            for leg in &legs {
                out.push(assemble_durfee(k, arm, leg));
            }
        }
    }
    out.sort_unstable_by(|a, b| b.parts.cmp(&a.parts));
    out
}

/// Rebuilds the partition with Durfee square `k`, arm columns `arm`
/// (a partition with parts <= k read as column lengths) and leg rows `leg`.
pub fn assemble_durfee(k: usize, arm: &Partition, leg: &Partition) -> Partition {
    debug_assert!(arm.first() as usize <= k && leg.first() as usize <= k);
    let mut parts = Vec::with_capacity(k + leg.len());
    for r in 1..=k {
        let beyond = arm.parts.iter().take_while(|&&c| c as usize >= r).count();
        parts.push(k as u32 + beyond as u32);
    }
    parts.extend_from_slice(leg.parts());
    Partition::from_sorted_unchecked(parts)
}

/// `p(n)` by the pentagonal-number recurrence.
pub fn partition_count(n: u64) -> u64 {
    let n = n as usize;
    let mut table = vec![0i128; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum = 0i128;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                sum += sign * table[i - g2];
            }
            k += 1;
        }
        table[i] = sum;
    }
    u64::try_from(table[n]).expect("partition count fits u64 in supported range")
}

/// Shorthand used in tests and reports.
pub fn parse(s: &str) -> Partition {
    s.parse().expect("valid partition literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        parse(s)
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("[8,8,8,7,7,4]").conjugate(), p("[6,6,6,6,5,5,5,3]"));
        assert_eq!(p("[5]").conjugate(), p("[1,1,1,1,1]"));
        assert_eq!(p("[4,3,2,1]").conjugate(), p("[4,3,2,1]"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(p("[3,2,1]").dominates(&p("[2,2,1,1]")).unwrap());
        let rho3 = staircase(3);
        assert!(rho3.dominates(&rho3).unwrap());
        assert!(p("[21,21]").dominates(&p("[12,11,10,9]")).unwrap());
        assert!(!p("[2,2,2]").dominates(&p("[3,1,1,1]")).unwrap());
        assert!(!p("[3,1,1,1]").dominates(&p("[2,2,2]")).unwrap());
        assert_eq!(
            p("[2,1]").dominates(&p("[2,2]")),
            Err(PartitionError::SizeMismatch(3, 4))
        );
    }

    #[test]
    fn durfee_and_hooks_examples() {
        assert_eq!(
            p("[8,8,8,7,7,4]").durfee_and_principal_hooks(),
            (5, p("[13,11,9,6,3]"))
        );
        assert_eq!(p("[7]").durfee_and_principal_hooks(), (1, p("[7]")));
        assert_eq!(p("[4,3,2,1]").durfee_and_principal_hooks(), (2, p("[7,3]")));
        assert_eq!(
            Partition::empty().durfee_and_principal_hooks(),
            (0, Partition::empty())
        );
    }

    #[test]
    fn arm_leg_profile_examples() {
        let prof = p("[14,11,8,3]").arm_leg_profile();
        assert_eq!(prof.durfee(), 3);
        assert_eq!(prof.arm_multiplicities(), &[3, 3, 5]);
        assert_eq!(prof.leg_multiplicities(), &[0, 0, 1]);
        assert_eq!(prof.arm_weight(), 24);
        assert_eq!(prof.leg_weight(), 3);

        let square = p("[4,4,4,4]").arm_leg_profile();
        assert_eq!(square.arm_weight(), 0);
        assert_eq!(square.leg_weight(), 0);

        let prof = p("[27,27,3,2^24]").arm_leg_profile();
        assert_eq!(prof.durfee(), 3);
        assert_eq!(prof.a(2), 24);
        assert_eq!(prof.a(1), 0);
        assert_eq!(prof.a(3), 0);
        assert_eq!(prof.b(2), 24);
        assert_eq!(prof.b(1), 0);
        assert_eq!(prof.b(3), 0);
    }

    #[test]
    fn profile_size_identity() {
        for n in 0..=12u64 {
            for lam in partitions_of(n) {
                let prof = lam.arm_leg_profile();
                let k = prof.durfee() as u64;
                assert_eq!(n, k * k + prof.arm_weight() + prof.leg_weight(), "{lam}");
            }
        }
    }

    #[test]
    fn vertical_sum_examples() {
        assert_eq!(p("[3,2,1]").vertical_sum(&p("[2,2]")), p("[3,2,2,2,1]"));
        assert_eq!(p("[3,1]").vertical_sum(&Partition::empty()), p("[3,1]"));
        let eta6 = p("[6,6,6,6,6,5]");
        let combined = eta6.vertical_sum(&staircase(4)).row_add(&staircase(4));
        assert_eq!(combined, staircase(10));
    }

    #[test]
    fn row_arithmetic_examples() {
        assert_eq!(p("[7,6,5,3]").row_add(&p("[7,5,3]")), p("[14,11,8,3]"));
        assert_eq!(p("[3,2]").row_sub(&p("[3,2]")), Some(Partition::empty()));
        assert_eq!(
            p("[27,27,3,2^24]").row_sub(&p("[13,13,1]")),
            Some(p("[14,14,2^25]"))
        );
        assert_eq!(p("[3,3]").row_sub(&p("[3,1]")), None);
        assert_eq!(p("[3,3]").row_sub(&p("[4]")), None);
    }

    #[test]
    fn shape_constructors() {
        assert_eq!(staircase(4), p("[4,3,2,1]"));
        assert_eq!(staircase(0), Partition::empty());
        assert_eq!(tau(10, 4).unwrap(), p("[10,9,8,7]"));
        assert_eq!(sigma(10, 4).unwrap(), p("[4,4,4,4,4,4,4,3,2,1]"));
        assert_eq!(sigma(10, 4).unwrap().size(), 34);
        assert!(tau(3, 5).is_err());
        assert_eq!(chopped_square(6).unwrap(), p("[6,6,6,6,6,5]"));
        assert_eq!(chopped_square(1).unwrap(), Partition::empty());
        assert_eq!(caret(2).unwrap(), p("[5,3,2,1,1]"));
        assert_eq!(caret(2).unwrap().size(), 12);
        assert_eq!(caret(3).unwrap(), p("[8,6,4,3,2,2,1,1]"));
        for k in 1..=6 {
            let g = caret(k).unwrap();
            assert_eq!(g.size(), 3 * (k as u64) * (k as u64));
            assert!(g.is_self_conjugate(), "caret({k}) = {g}");
        }
    }

    #[test]
    fn staircase_strip_identity() {
        for m in 1..=20u32 {
            for i in 1..=m {
                let lhs = staircase(m);
                let rhs = staircase(m - i).row_add(&sigma(m, i).unwrap());
                assert_eq!(lhs, rhs, "m={m} i={i}");
                let vs = staircase(m - i).vertical_sum(&tau(m, i).unwrap());
                assert_eq!(lhs, vs, "vertical m={m} i={i}");
            }
        }
    }

    #[test]
    fn enumeration_order_and_counts() {
        let all: Vec<_> = partitions_of(6).collect();
        assert_eq!(all.len(), 11);
        assert_eq!(all[0], p("[6]"));
        assert_eq!(all[1], p("[5,1]"));
        assert_eq!(all[10], p("[1,1,1,1,1,1]"));
        let zero: Vec<_> = partitions_of(0).collect();
        assert_eq!(zero, vec![Partition::empty()]);
        for n in 0..=60u64 {
            assert_eq!(partition_count(n), partitions_of(n).count() as u64, "n={n}");
        }
        assert_eq!(partition_count(21), 792);
        assert_eq!(partition_count(28), 3718);
        assert_eq!(partition_count(35), 14883);
        assert_eq!(partition_count(36), 17977);
    }

    #[test]
    fn durfee_filter_consistency() {
        let filtered: Vec<_> = enumerate_partitions(
            21,
            EnumFilter { durfee: Some(3), max_length: None },
        )
        .collect();
        let by_scan: Vec<_> = partitions_of(21).filter(|q| q.durfee() == 3).collect();
        assert_eq!(filtered, by_scan);
        assert!(filtered.iter().all(|q| q.durfee() == 3));
    }

    #[test]
    fn hook_arm_or_leg_reaches_the_order() {
        for m in 3..=12u64 {
            let n = m * (m + 1) / 2;
            for arm in 0..n {
                let mut parts = vec![(arm + 1) as u32];
                parts.extend(std::iter::repeat_n(1, (n - 1 - arm) as usize));
                let hook = Partition::from_sorted_unchecked(parts);
                let prof = hook.arm_leg_profile();
                assert!(
                    prof.a(1) as u64 >= m || prof.b(1) as u64 >= m,
                    "hook {hook} at order {m}"
                );
            }
        }
    }

    #[test]
    fn max_length_filter() {
        let short: Vec<_> = enumerate_partitions(
            8,
            EnumFilter { durfee: None, max_length: Some(2) },
        )
        .collect();
        assert_eq!(short.len(), 5);
        assert!(short.iter().all(|p| p.len() <= 2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("[3^3,2^2,1]"), p("[3,3,3,2,2,1]"));
        assert_eq!(p("[3^3,2^2,1]").to_string(), "[3,3,3,2,2,1]");
        assert_eq!(p("[]"), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!(p(" [ 4 , 2^2 ] "), p("[4,2,2]"));
        assert!("[2,3]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("3,2".parse::<Partition>().is_err());
    }

    #[test]
    fn induced_partition_examples() {
        let sv = SelectVector::new(vec![2, 2, 3]);
        assert_eq!(sv.target(), 15);
        assert_eq!(sv.induced(), &p("[7,5,3]"));
        let zero = SelectVector::new(vec![0, 0, 0]);
        assert_eq!(zero.target(), 0);
        assert_eq!(zero.induced(), &Partition::empty());
    }

    #[test]
    fn graphical_and_upward() {
        assert!(p("[1,1]").is_graphical());
        assert!(p("[3,3,3,3]").is_graphical());
        assert!(!p("[5]").is_graphical());
        assert!(p("[1,1,1,1]").is_conjugate_upward());
        assert!(!p("[4]").is_conjugate_upward());
        assert!(staircase(3).is_conjugate_upward());
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(n in 0u64..=12) {
            for lam in partitions_of(n) {
                prop_assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }

        #[test]
        fn dominance_conjugate_duality(n in 1u64..=12) {
            let all: Vec<_> = partitions_of(n).collect();
            for a in &all {
                for b in &all {
                    let d = a.dominates(b).unwrap();
                    let dual = b.conjugate().dominates(&a.conjugate()).unwrap();
                    prop_assert_eq!(d, dual);
                }
            }
        }

        #[test]
        fn vertical_sum_conjugate_duality(n in 0u64..=10, m in 0u64..=10, ai in 0usize..50, bi in 0usize..50) {
            let xs: Vec<_> = partitions_of(n).collect();
            let ys: Vec<_> = partitions_of(m).collect();
            let x = &xs[ai % xs.len()];
            let y = &ys[bi % ys.len()];
            prop_assert_eq!(
                x.vertical_sum(y).conjugate(),
                x.conjugate().row_add(&y.conjugate())
            );
        }

        #[test]
        fn text_round_trip(n in 0u64..=14, idx in 0usize..200) {
            let all: Vec<_> = partitions_of(n).collect();
            let lam = &all[idx % all.len()];
            let parsed: Partition = lam.to_string().parse().unwrap();
            prop_assert_eq!(&parsed, lam);
        }
    }
}
