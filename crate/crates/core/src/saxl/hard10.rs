//! Special-case handlers for the order-10 staircase.
//!
//! Two families of Durfee-3 targets of size 55 escape the generic strip
//! search. Four explicit shapes split as `(7,7,7) + upsilon` with a
//! size-34 strip fact; the middle-column family (no length-1 or length-3
//! arm columns, arm weight between 23 and 33) splits as
//! `nu + (5,5) + (5,5)` where `(eta_6, nu)` is a size-35 fact and the
//! order-10 staircase decomposes as `(eta_6 ∪ rho_4) + rho_4`. Both kinds
//! of oversized leaf facts are satisfied from the manifest (or derived
//! from the oracle under an extended policy).

use std::sync::Arc;

use crate::certificates::{leaf_from_manifest, leaf_from_oracle, Certificate, RulePolicy};
use crate::partitions::{chopped_square, parse, sigma, staircase, Partition};

use super::reduce::{certify_staircase, ReduceCtx};

fn hard_pairs() -> [(Partition, Partition); 4] {
    [
        (parse("[11,11,10,3^7,2]"), parse("[4,4,3^8,2]")),
        (parse("[12,12,11,3^6,2]"), parse("[5,5,4,3^6,2]")),
        (parse("[12,12,11,3^4,2^4]"), parse("[5,5,4,3^4,2^4]")),
        (parse("[12,12,11,3^2,2^7]"), parse("[5,5,4,3^2,2^7]")),
    ]
}

fn is_middle_column_case(mu: &Partition) -> bool {
    if mu.durfee() != 3 {
        return false;
    }
    let prof = mu.arm_leg_profile();
    let a2 = prof.a(2) as u64;
    prof.a(1) == 0 && prof.a(3) == 0 && prof.a(2) > 0 && (23..34).contains(&(2 * a2))
}

fn build_hard_split(
    mu: &Partition,
    upsilon: &Partition,
    ctx: &ReduceCtx,
) -> Option<Arc<Certificate>> {
    let triple = parse("[7,7,7]");
    debug_assert_eq!(triple.row_add(upsilon), *mu);
    let child = certify_staircase(6, &triple, ctx).ok()?;
    let strip = sigma(10, 4).expect("valid strip");
    let leaf = leaf_from_manifest(&strip, upsilon, ctx.policy()).ok()?;
    let cert = Certificate::semigroup(child, Arc::new(leaf));
    debug_assert_eq!(cert.alpha, staircase(10));
    debug_assert_eq!(&cert.beta, mu);
    Some(Arc::new(cert))
}

fn build_middle_column(mu: &Partition, ctx: &ReduceCtx) -> Option<Arc<Certificate>> {
    let two_rows = parse("[5,5]");
    let nu = mu.row_sub(&parse("[10,10]"))?;
    let eta6 = chopped_square(6).expect("valid shape");
    let eta_leaf = Arc::new(leaf_from_manifest(&eta6, &nu, ctx.policy()).ok()?);
    let rho4_leaf = Arc::new(leaf_from_oracle(&staircase(4), &two_rows, ctx.policy()).ok()?);
    let merged = Certificate::vertical_sum(eta_leaf, rho4_leaf.clone());
    let cert = Certificate::semigroup(Arc::new(merged), rho4_leaf);
    debug_assert_eq!(cert.alpha, staircase(10));
    debug_assert_eq!(&cert.beta, mu);
    Some(Arc::new(cert))
}

pub(crate) fn hard10_with_ctx(mu: &Partition, ctx: &ReduceCtx) -> Option<Arc<Certificate>> {
    for (shape, upsilon) in hard_pairs() {
        if *mu == shape {
            return build_hard_split(mu, &upsilon, ctx);
        }
    }
    if is_middle_column_case(mu) {
        return build_middle_column(mu, ctx);
    }
    // transposed instances reduce to the direct ones
    let conj = mu.conjugate();
    if conj != *mu {
        let direct = hard_pairs().iter().any(|(shape, _)| conj == *shape)
            || is_middle_column_case(&conj);
        if direct {
            let inner = hard10_with_ctx(&conj, ctx)?;
            return Some(Arc::new(Certificate::transpose_third(inner)));
        }
    }
    None
}

/// Certificate for an order-10 target handled by the special cases, when
/// it is one of them.
pub fn hard_case_m10(mu: &Partition, policy: &RulePolicy) -> Option<Certificate> {
    let ctx = ReduceCtx::new(policy.clone());
    hard10_with_ctx(mu, &ctx).map(|arc| (*arc).clone())
}
