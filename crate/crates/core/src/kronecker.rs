//! Exact Kronecker coefficients via the class-sum inner product
//! `g(lambda,mu,nu) = (1/n!) sum_c |c| chi^lambda(c) chi^mu(c) chi^nu(c)`.
//!
//! The sum runs over the `p(n)` conjugacy classes, never over `n!`
//! permutations. Contributions are accumulated as exact integers weighted
//! by the class cardinality `n!/z_c` and divided by `n!` once at the end;
//! the division must be exact, anything else signals a character bug.

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::characters::{chi_on_entry, classes_of, encode_checked, CharacterError, CharInt};
use crate::partitions::{partitions_of, Partition};

/// Default guard against accidentally enormous support computations.
pub const DEFAULT_SUPPORT_MAX_N: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KroneckerError {
    #[error("size mismatch: |lambda| = {0}, |mu| = {1}, |nu| = {2}")]
    SizeMismatch(u64, u64, u64),
    #[error("inexact class-sum division for n = {0}: character engine is inconsistent")]
    InexactDivision(u64),
    #[error("refusing tensor-square support at n = {0} > guard {1}; raise the guard explicitly")]
    GuardExceeded(u64, u64),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KroneckerQuery {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

/// Exact `g(lambda, mu, nu)`.
pub fn kronecker(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<CharInt, KroneckerError> {
    let n = lambda.size();
    if mu.size() != n || nu.size() != n {
        return Err(KroneckerError::SizeMismatch(n, mu.size(), nu.size()));
    }
    if n == 0 {
        return Ok(CharInt::ONE);
    }
    let sl = encode_checked(lambda)?;
    let sm = encode_checked(mu)?;
    let sn = encode_checked(nu)?;
    let classes = classes_of(n);
    // Contributions are evaluated in parallel but combined in fixed class
    // order so batch outputs are bit-identical regardless of thread count.
    let terms: Vec<CharInt> = classes
        .par_iter()
        .map(|entry| {
            let x = chi_on_entry(&sl, entry);
            if x.is_zero() {
                return CharInt::ZERO;
            }
            let y = chi_on_entry(&sm, entry);
            if y.is_zero() {
                return CharInt::ZERO;
            }
            let z = chi_on_entry(&sn, entry);
            if z.is_zero() {
                return CharInt::ZERO;
            }
            &(&(&x * &y) * &z) * &entry.cardinality
        })
        .collect();
    let mut acc = CharInt::ZERO;
    for t in &terms {
        acc += t;
    }
    let coeff = acc
        .div_exact(&CharInt::factorial(n))
        .ok_or(KroneckerError::InexactDivision(n))?;
    debug_assert!(!coeff.is_negative());
    Ok(coeff)
}

/// `g(lambda, mu, nu) >= 1`. Full evaluation; no unproven shortcuts.
pub fn is_positive(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<bool, KroneckerError> {
    Ok(kronecker(lambda, mu, nu)?.is_positive())
}

static PAIR_CACHE: Lazy<DashMap<(Partition, Partition), CharInt>> = Lazy::new(DashMap::new);

/// Cached `g(alpha, alpha, beta)`, the self-paired coefficient behind the
/// `(alpha, beta)` positivity statements. Certificate construction and
/// checking hit the same pairs repeatedly.
pub fn pair_coefficient(alpha: &Partition, beta: &Partition) -> Result<CharInt, KroneckerError> {
    let key = (alpha.clone(), beta.clone());
    if let Some(hit) = PAIR_CACHE.get(&key) {
        return Ok(hit.clone());
    }
    let value = kronecker(alpha, alpha, beta)?;
    if PAIR_CACHE.len() < 1 << 20 {
        PAIR_CACHE.insert(key, value.clone());
    }
    Ok(value)
}

/// `{ nu : g(lambda, lambda, nu) > 0 }`, in reverse-lexicographic order.
///
/// The squared, cardinality-weighted column of `lambda` is computed once
/// and restricted to its nonzero classes; each candidate `nu` then costs
/// one character column over that support.
pub fn tensor_square_support(
    lambda: &Partition,
    max_n: Option<u64>,
) -> Result<Vec<Partition>, KroneckerError> {
    let n = lambda.size();
    let guard = max_n.unwrap_or(DEFAULT_SUPPORT_MAX_N);
    if n > guard {
        return Err(KroneckerError::GuardExceeded(n, guard));
    }
    if n == 0 {
        return Ok(vec![Partition::empty()]);
    }
    let sl = encode_checked(lambda)?;
    let classes = classes_of(n);
    let weighted: Vec<(usize, CharInt)> = classes
        .iter()
        .enumerate()
        .filter_map(|(idx, entry)| {
            let x = chi_on_entry(&sl, entry);
            if x.is_zero() {
                None
            } else {
                Some((idx, &(&x * &x) * &entry.cardinality))
            }
        })
        .collect();
    let factorial = CharInt::factorial(n);
    let targets: Vec<Partition> = partitions_of(n).collect();
    let out: Vec<Option<Partition>> = targets
        .into_par_iter()
        .map(|nu| {
            let sn = encode_checked(&nu).expect("size bounded by guard");
            let mut acc = CharInt::ZERO;
            for (idx, w) in &weighted {
                let z = chi_on_entry(&sn, &classes[*idx]);
                if !z.is_zero() {
                    acc += &(&z * w);
                }
            }
            let coeff = acc.div_exact(&factorial).expect("class sum divides n!");
            debug_assert!(!coeff.is_negative());
            if coeff.is_positive() {
                Some(nu)
            } else {
                None
            }
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::dimension;
    use crate::partitions::{parse, partition_count, staircase};

    #[test]
    fn trivial_third_argument_is_identity() {
        let all: Vec<Partition> = partitions_of(6).collect();
        let triv = parse("[6]");
        for a in &all {
            for b in &all {
                let g = kronecker(a, b, &triv).unwrap();
                let expect = if a == b { CharInt::ONE } else { CharInt::ZERO };
                assert_eq!(g, expect, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn square_self_pairing_parity() {
        for (k, expect) in [(2u32, 1i64), (3, 0), (4, 1), (5, 0)] {
            let sq = Partition::new(vec![k, k]).unwrap();
            assert_eq!(kronecker(&sq, &sq, &sq).unwrap(), CharInt::from(expect), "k={k}");
        }
    }

    #[test]
    fn two_row_family_parity() {
        for (n, expect) in [(5u32, 1i64), (6, 0), (7, 1), (8, 0)] {
            let a = Partition::new(vec![n, n - 2]).unwrap();
            let b = Partition::new(vec![n - 1, n - 1]).unwrap();
            assert_eq!(kronecker(&a, &a, &b).unwrap(), CharInt::from(expect), "n={n}");
        }
    }

    #[test]
    fn explicit_positive_checks() {
        assert!(is_positive(&parse("[3,3,3]"), &parse("[3,3,3]"), &parse("[3,3,3]")).unwrap());
        assert!(is_positive(&parse("[3,3,3,3]"), &parse("[3,3,3,3]"), &parse("[6,6]")).unwrap());
        assert!(is_positive(&parse("[4,4]"), &parse("[4,4]"), &parse("[4,4]")).unwrap());
        for t in 0u32..=2 {
            let a = Partition::from_unsorted(vec![t + 2, t + 1, t]);
            let b = Partition::new(vec![t + 1, t + 1, t + 1]).unwrap();
            assert!(pair_coefficient(&a, &b).unwrap().is_positive(), "t={t}");
        }
        assert!(pair_coefficient(&staircase(4), &parse("[5,5]")).unwrap().is_positive());
    }

    #[test]
    fn empty_case() {
        let e = Partition::empty();
        assert_eq!(kronecker(&e, &e, &e).unwrap(), CharInt::ONE);
        assert_eq!(tensor_square_support(&e, None).unwrap(), vec![e]);
    }

    #[test]
    fn support_of_trivial_and_small_staircase() {
        assert_eq!(tensor_square_support(&parse("[5]"), None).unwrap(), vec![parse("[5]")]);
        let sup = tensor_square_support(&staircase(3), None).unwrap();
        assert_eq!(sup.len() as u64, partition_count(6));
    }

    #[test]
    fn chopped_square_support_contains_all_hooks() {
        let eta4 = parse("[4,4,4,3]");
        let support = tensor_square_support(&eta4, None).unwrap();
        for arm in 0..15u32 {
            let mut parts = vec![arm + 1];
            parts.extend(std::iter::repeat_n(1, (14 - arm) as usize));
            let hook = Partition::new(parts).unwrap();
            assert!(support.contains(&hook), "missing {hook}");
        }
    }

    #[test]
    fn support_guard() {
        let big = staircase(8); // n = 36
        assert!(matches!(
            tensor_square_support(&big, None),
            Err(KroneckerError::GuardExceeded(36, 30))
        ));
        assert!(tensor_square_support(&big, Some(10)).is_err());
    }

    #[test]
    fn support_dimension_identity() {
        for n in 1..=8u64 {
            for lambda in partitions_of(n) {
                let dim = dimension(&lambda);
                let mut acc = CharInt::ZERO;
                for nu in partitions_of(n) {
                    let g = kronecker(&lambda, &lambda, &nu).unwrap();
                    acc += &(&g * &dimension(&nu));
                }
                assert_eq!(acc, &dim * &dim, "lambda={lambda}");
            }
        }
    }

    #[test]
    fn size_mismatch() {
        assert!(kronecker(&parse("[2]"), &parse("[2]"), &parse("[3]")).is_err());
    }
}
