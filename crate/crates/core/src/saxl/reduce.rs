//! Recursive staircase reduction: derives a positivity certificate for
//! `(rho_m, mu)` by strip decomposition down to brute-force bases.
//!
//! The search is a depth-first backtrack over the deterministic candidate
//! list: if a step's remainder cannot be certified, the next candidate is
//! tried. Sub-results are memoized per `(order, remainder)` across a whole
//! verification run, including definite failures, so the worst case stays
//! linear in the number of distinct subproblems. Every recursive branch
//! strictly decreases the staircase order, so the reduction terminates.

use std::sync::Arc;

use dashmap::DashMap;

use crate::certificates::{
    axiom_leaf, derive_scalar_multiple, leaf_from_oracle, AxiomName, Certificate,
    CertificateError, CheckCache, RulePolicy,
};
use crate::partitions::{sigma, staircase, tau, Partition};

use super::decompose::{visit_steps, LeafJustification, Side};
use super::hard10::hard10_with_ctx;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ReduceError {
    #[error("reduction is stuck at order {m} on {mu}")]
    Stuck { m: u32, mu: Partition },
    #[error("target {mu} has size {size}, expected {expected} for order {m}")]
    WrongSize { m: u32, mu: Partition, size: u64, expected: u64 },
    #[error("target {mu} has Durfee size {actual}, expected {expected}")]
    WrongDurfee { mu: Partition, actual: usize, expected: usize },
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

/// Shared state for a verification run: the policy, memoized subproblem
/// outcomes, and a subtree-validation cache for the checker.
///
/// Only recursion children enter the memo, never top-level targets, and
/// successful entries stop being added once the cap is reached (hits keep
/// being served); failures are always remembered. This keeps campaign
/// memory bounded while preserving almost all sharing.
pub struct ReduceCtx {
    policy: RulePolicy,
    memo: DashMap<(u32, Partition), Option<Arc<Certificate>>>,
    memo_cap: usize,
    check_cache: CheckCache,
}

impl ReduceCtx {
    pub fn new(policy: RulePolicy) -> Self {
        ReduceCtx {
            policy,
            memo: DashMap::new(),
            memo_cap: 1 << 19,
            check_cache: CheckCache::default(),
        }
    }

    pub fn policy(&self) -> &RulePolicy {
        &self.policy
    }

    pub fn check_cache(&self) -> &CheckCache {
        &self.check_cache
    }
}

fn triangular(m: u32) -> u64 {
    (m as u64) * (m as u64 + 1) / 2
}

/// Certificate concluding `(tau_m^3, (m-1,m-1,m-1))` by scaling the
/// all-threes brute fact and absorbing the residue class of `m - 2`.
fn equal_triple_cert(m: u32, policy: &RulePolicy) -> Result<Certificate, CertificateError> {
    debug_assert!(m >= 2);
    let s = (m as u64 - 2) / 3;
    let t = (m - 2) % 3;
    let residue_alpha = Partition::from_unsorted(vec![t + 2, t + 1, t]);
    let residue_beta = Partition::from_sorted_unchecked(vec![t + 1; 3]);
    let residue = leaf_from_oracle(&residue_alpha, &residue_beta, policy)?;
    if s == 0 {
        return Ok(residue);
    }
    let threes = Partition::from_sorted_unchecked(vec![3, 3, 3]);
    let base = leaf_from_oracle(&threes, &threes, policy)?;
    let scaled = derive_scalar_multiple(&base, s)?;
    Ok(Certificate::semigroup(Arc::new(scaled), Arc::new(residue)))
}

/// Certificate for the extracted pair `(strip-of-order-i, upsilon)`,
/// together with the node kind that merges it with the remainder:
/// row-form strips combine by semigroup, column-form strips by vertical
/// sum.
fn step_leaf(
    m: u32,
    order: u32,
    upsilon: &Partition,
    leaf: LeafJustification,
    policy: &RulePolicy,
) -> Result<(Certificate, bool), CertificateError> {
    match leaf {
        LeafJustification::SingleRow => {
            let strip = sigma(m, 1).expect("order 1 strip");
            Ok((leaf_from_oracle(&strip, upsilon, policy)?, true))
        }
        LeafJustification::StripPairAxiom => {
            let strip = sigma(m, 2).expect("order 2 strip");
            Ok((axiom_leaf(AxiomName::SigmaTwo, &strip, upsilon, policy)?, true))
        }
        LeafJustification::EqualTriple => Ok((equal_triple_cert(m, policy)?, false)),
        LeafJustification::TauDominance => {
            let strip = tau(m, order).expect("valid strip");
            Ok((axiom_leaf(AxiomName::Dominance, &strip, upsilon, policy)?, false))
        }
    }
}

fn hook_step(m: u32, mu: &Partition, ctx: &ReduceCtx) -> Option<Arc<Certificate>> {
    let row = Partition::from_sorted_unchecked(vec![m]);
    let column = Partition::from_sorted_unchecked(vec![1; m as usize]);
    let strip_fact = leaf_from_oracle(&column, &row, ctx.policy()).ok()?;
    if mu.first() > m {
        let rest = mu.row_sub(&row)?;
        let child = certify_rec(m - 1, &rest, ctx)?;
        return Some(Arc::new(Certificate::semigroup(child, Arc::new(strip_fact))));
    }
    if mu.len() as u32 > m {
        let conj = mu.conjugate();
        let rest = conj.row_sub(&row)?;
        let child = certify_rec(m - 1, &rest, ctx)?;
        let inner = Certificate::semigroup(child, Arc::new(strip_fact));
        return Some(Arc::new(Certificate::transpose_third(Arc::new(inner))));
    }
    None
}

fn certify_rec(m: u32, mu: &Partition, ctx: &ReduceCtx) -> Option<Arc<Certificate>> {
    let key = (m, mu.clone());
    if let Some(hit) = ctx.memo.get(&key) {
        return hit.clone();
    }
    let result = build(m, mu, ctx);
    if result.is_none() || ctx.memo.len() < ctx.memo_cap {
        ctx.memo.insert(key, result.clone());
    }
    result
}

fn build(m: u32, mu: &Partition, ctx: &ReduceCtx) -> Option<Arc<Certificate>> {
    let rho = staircase(m);
    let n = triangular(m);
    // bases below the cap close by brute force
    if n <= ctx.policy.brute_force_size_cap {
        return match leaf_from_oracle(&rho, mu, &ctx.policy) {
            Ok(c) => Some(Arc::new(c)),
            Err(_) => None,
        };
    }
    // hooks follow the row-strip induction
    if mu.durfee() == 1 && m >= 3 {
        if let Some(cert) = hook_step(m, mu, ctx) {
            return Some(cert);
        }
    }
    // comparability closes immediately above the cap
    if let Ok(true) = mu.dominates(&rho) {
        if let Ok(leaf) = axiom_leaf(AxiomName::Dominance, &rho, mu, &ctx.policy) {
            return Some(Arc::new(leaf));
        }
    }
    if let Ok(true) = rho.dominates(mu) {
        let conj = mu.conjugate();
        if let Ok(leaf) = axiom_leaf(AxiomName::Dominance, &rho, &conj, &ctx.policy) {
            return Some(Arc::new(Certificate::transpose_third(Arc::new(leaf))));
        }
    }
    // strip decompositions, backtracking across the candidate stream
    let found = visit_steps(mu, m, |step| {
        let base = step.base_shape(mu);
        let remainder = base.row_sub(&step.upsilon)?;
        let child = certify_rec(m - step.order, &remainder, ctx)?;
        let (leaf_cert, row_form) =
            step_leaf(m, step.order, &step.upsilon, step.leaf, &ctx.policy).ok()?;
        let merged = if row_form {
            Certificate::semigroup(child, Arc::new(leaf_cert))
        } else {
            Certificate::vertical_sum(child, Arc::new(leaf_cert))
        };
        debug_assert_eq!(merged.alpha, rho);
        let wrapped = match step.side {
            Side::Arm => merged,
            Side::Leg => Certificate::transpose_third(Arc::new(merged)),
        };
        debug_assert_eq!(&wrapped.beta, mu);
        Some(Arc::new(wrapped))
    });
    if let Some(cert) = found {
        return Some(cert);
    }
    if m == 10 {
        if let Some(cert) = hard10_with_ctx(mu, ctx) {
            return Some(cert);
        }
    }
    None
}

/// Derives a certificate for the staircase of order `m` against `mu`.
/// Top-level results are not memoized; campaign roots are dropped by the
/// caller after checking.
pub fn certify_staircase(
    m: u32,
    mu: &Partition,
    ctx: &ReduceCtx,
) -> Result<Arc<Certificate>, ReduceError> {
    let expected = triangular(m);
    if mu.size() != expected {
        return Err(ReduceError::WrongSize {
            m,
            mu: mu.clone(),
            size: mu.size(),
            expected,
        });
    }
    if let Some(hit) = ctx.memo.get(&(m, mu.clone())) {
        return hit.clone().ok_or_else(|| ReduceError::Stuck { m, mu: mu.clone() });
    }
    build(m, mu, ctx).ok_or_else(|| ReduceError::Stuck { m, mu: mu.clone() })
}

/// Certificate for a Durfee-`k` target of the order-`m` staircase; the
/// Durfee size is validated, then the generic reduction runs.
pub fn reduce_durfee_k(
    m: u32,
    mu: &Partition,
    k: usize,
    policy: &RulePolicy,
) -> Result<Certificate, ReduceError> {
    if mu.durfee() != k {
        return Err(ReduceError::WrongDurfee {
            mu: mu.clone(),
            actual: mu.durfee(),
            expected: k,
        });
    }
    let ctx = ReduceCtx::new(policy.clone());
    certify_staircase(m, mu, &ctx).map(|arc| (*arc).clone())
}
