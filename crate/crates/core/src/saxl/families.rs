//! Verification campaigns over named target families.
//!
//! Each family enumerates its targets for a parameter range, derives a
//! certificate per target (or records an explicit brute-force fact), runs
//! the checker on every certificate, and merges the outcomes into a report
//! in deterministic target order. Hook families follow their dedicated
//! row-strip inductions with brute-force bases; double-hook families
//! dispatch on parity; Durfee-3 targets go through the generic staircase
//! reduction.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use crate::certificates::{
    check_certificate_cached, leaf_from_oracle, Certificate, CertificateError, Rule, RulePolicy,
};
use crate::partitions::{
    caret, chopped_square, durfee_partitions, staircase, Partition,
};
use crate::report::{TargetRecord, TargetStatus, VerificationReport};

use super::reduce::{certify_staircase, ReduceCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    StaircaseHooks,
    TripleHooks,
    ChoppedHooks,
    CaretHooks,
    ChoppedDouble,
    CaretDouble,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::StaircaseHooks => "staircase_hooks",
            Family::TripleHooks => "triple_hooks",
            Family::ChoppedHooks => "chopped_hooks",
            Family::CaretHooks => "caret_hooks",
            Family::ChoppedDouble => "chopped_double",
            Family::CaretDouble => "caret_double",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "staircase_hooks" => Ok(Family::StaircaseHooks),
            "triple_hooks" => Ok(Family::TripleHooks),
            "chopped_hooks" => Ok(Family::ChoppedHooks),
            "caret_hooks" => Ok(Family::CaretHooks),
            "chopped_double" => Ok(Family::ChoppedDouble),
            "caret_double" => Ok(Family::CaretDouble),
            other => Err(format!(
                "unknown family {other:?}; expected one of staircase_hooks, triple_hooks, \
                 chopped_hooks, caret_hooks, chopped_double, caret_double"
            )),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Persist every certificate under `<dir>/<family>/<param>/<target>.kcert.json`.
    pub certs_dir: Option<PathBuf>,
}

fn hooks_of(n: u64) -> Vec<Partition> {
    if n == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    for arm in (0..n).rev() {
        let mut parts = vec![(arm + 1) as u32];
        parts.extend(std::iter::repeat_n(1, (n - 1 - arm) as usize));
        out.push(Partition::from_sorted_unchecked(parts));
    }
    out
}

fn row(len: u32) -> Partition {
    Partition::from_sorted_unchecked(vec![len])
}

fn column(len: u32) -> Partition {
    Partition::from_sorted_unchecked(vec![1; len as usize])
}

/// Row-strip induction for hooks of the order-`m` staircase: strip a row
/// of length `m` against the column fact, or transpose first.
fn staircase_hook_cert(
    m: u32,
    nu: &Partition,
    policy: &RulePolicy,
) -> Result<Certificate, String> {
    debug_assert_eq!(nu.size(), (m as u64) * (m as u64 + 1) / 2);
    if m <= 2 {
        return leaf_from_oracle(&staircase(m), nu, policy).map_err(stringify);
    }
    if nu.first() > m {
        let rest = nu.row_sub(&row(m)).expect("arm is long enough");
        let child = staircase_hook_cert(m - 1, &rest, policy)?;
        let strip = leaf_from_oracle(&column(m), &row(m), policy).map_err(stringify)?;
        return Ok(Certificate::semigroup(Arc::new(child), Arc::new(strip)));
    }
    let conj = nu.conjugate();
    if conj.first() > m {
        let inner = staircase_hook_cert(m, &conj, policy)?;
        return Ok(Certificate::transpose_third(Arc::new(inner)));
    }
    Err(format!("no row of length {m} can be stripped from {nu}"))
}

/// One induction layer of the chopped-square family: grow the order-`k-1`
/// conclusion by a column of ones, then stack the full top row.
fn grow_chopped(
    k: u32,
    child: Certificate,
    policy: &RulePolicy,
) -> Result<Certificate, CertificateError> {
    let grown = Certificate::semigroup(
        Arc::new(child),
        Arc::new(leaf_from_oracle(&column(k - 1), &row(k - 1), policy)?),
    );
    let fact = leaf_from_oracle(&row(k), &row(k), policy)?;
    Ok(Certificate::vertical_sum(Arc::new(grown), Arc::new(fact)))
}

/// One induction layer of the caret family, analogous to [`grow_chopped`]
/// with a column of `3k-2` ones and top row `3k-1`.
fn grow_caret(
    k: u32,
    child: Certificate,
    policy: &RulePolicy,
) -> Result<Certificate, CertificateError> {
    let grown = Certificate::semigroup(
        Arc::new(child),
        Arc::new(leaf_from_oracle(&column(3 * k - 2), &row(3 * k - 2), policy)?),
    );
    let fact = leaf_from_oracle(&row(3 * k - 1), &row(3 * k - 1), policy)?;
    Ok(Certificate::vertical_sum(Arc::new(grown), Arc::new(fact)))
}

fn chopped_hook_cert(k: u32, nu: &Partition, policy: &RulePolicy) -> Result<Certificate, String> {
    debug_assert_eq!(nu.size(), (k as u64) * (k as u64) - 1);
    if k <= 3 {
        return leaf_from_oracle(&chopped_square(k).expect("k >= 1"), nu, policy)
            .map_err(stringify);
    }
    let strip = 2 * k - 1;
    if let Some(rest) = nu.row_sub(&row(strip)) {
        let child = chopped_hook_cert(k - 1, &rest, policy)?;
        return grow_chopped(k, child, policy).map_err(stringify);
    }
    let conj = nu.conjugate();
    if conj.row_sub(&row(strip)).is_some() {
        let inner = chopped_hook_cert(k, &conj, policy)?;
        return Ok(Certificate::transpose_third(Arc::new(inner)));
    }
    Err(format!("no row of length {strip} can be stripped from {nu}"))
}

fn caret_hook_cert(k: u32, nu: &Partition, policy: &RulePolicy) -> Result<Certificate, String> {
    debug_assert_eq!(nu.size(), 3 * (k as u64) * (k as u64));
    if k <= 3 {
        return leaf_from_oracle(&caret(k).expect("k >= 1"), nu, policy).map_err(stringify);
    }
    let strip = 6 * k - 3;
    if let Some(rest) = nu.row_sub(&row(strip)) {
        let child = caret_hook_cert(k - 1, &rest, policy)?;
        return grow_caret(k, child, policy).map_err(stringify);
    }
    let conj = nu.conjugate();
    if conj.row_sub(&row(strip)).is_some() {
        let inner = caret_hook_cert(k, &conj, policy)?;
        return Ok(Certificate::transpose_third(Arc::new(inner)));
    }
    Err(format!("no row of length {strip} can be stripped from {nu}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DoubleFamily {
    Chopped,
    Caret,
}

/// Parity-dispatched reduction for double hooks of the chopped square and
/// caret shapes. A long first row (or column) reduces the order by one via
/// the hook-style layer; otherwise a two-row band peels off, whose width
/// and landing order depend on the parity of the top rows. Oversized
/// leaves surface as errors and the target is reported failed.
fn double_hook_cert(
    fam: DoubleFamily,
    k: u32,
    mu: &Partition,
    policy: &RulePolicy,
) -> Result<Certificate, String> {
    let (shape, n) = match fam {
        DoubleFamily::Chopped => {
            let s = chopped_square(k).expect("k >= 1");
            let n = s.size();
            (s, n)
        }
        DoubleFamily::Caret => {
            let s = caret(k).expect("k >= 1");
            let n = s.size();
            (s, n)
        }
    };
    debug_assert_eq!(mu.size(), n);
    if n <= policy.brute_force_size_cap {
        return leaf_from_oracle(&shape, mu, policy).map_err(stringify);
    }
    let single = match fam {
        DoubleFamily::Chopped => 2 * k - 1,
        DoubleFamily::Caret => 6 * k - 3,
    };
    // order-by-one reduction on either side
    for transpose in [false, true] {
        let base = if transpose { mu.conjugate() } else { mu.clone() };
        if let Some(rest) = base.row_sub(&row(single)) {
            if let Ok(child) = double_hook_cert(fam, k - 1, &rest, policy) {
                let grown = match fam {
                    DoubleFamily::Chopped => grow_chopped(k, child, policy),
                    DoubleFamily::Caret => grow_caret(k, child, policy),
                }
                .map_err(stringify)?;
                return Ok(if transpose {
                    Certificate::transpose_third(Arc::new(grown))
                } else {
                    grown
                });
            }
        }
    }
    // parity band peel on either side
    for transpose in [false, true] {
        let base = if transpose { mu.conjugate() } else { mu.clone() };
        if let Some(cert) = band_peel(fam, k, &base, policy)? {
            return Ok(if transpose {
                Certificate::transpose_third(Arc::new(cert))
            } else {
                cert
            });
        }
    }
    Err(format!("no double-hook reduction applies to {mu} at order {k}"))
}

/// Peels a two-row band from the top of the shape. The band width, the
/// landing order, and the two pair facts depend on the family and on the
/// parity of its top rows.
fn band_peel(
    fam: DoubleFamily,
    k: u32,
    mu: &Partition,
    policy: &RulePolicy,
) -> Result<Option<Certificate>, String> {
    struct Peel {
        drop: u32,
        band_width: u32,
        band_columns: Partition,
        band_rows: Partition,
        top: Partition,
        top_rows: Partition,
    }
    let peel = match fam {
        DoubleFamily::Chopped => {
            if k.is_multiple_of(2) {
                if k < 4 {
                    return Ok(None);
                }
                Peel {
                    drop: 2,
                    band_width: 2 * k - 2,
                    band_columns: Partition::from_sorted_unchecked(vec![2; (k - 2) as usize]),
                    band_rows: Partition::from_sorted_unchecked(vec![k - 2; 2]),
                    top: Partition::from_sorted_unchecked(vec![k; 2]),
                    top_rows: Partition::from_sorted_unchecked(vec![k; 2]),
                }
            } else {
                // the four-row pair fact needs an odd landing width >= 3
                if k < 7 {
                    return Ok(None);
                }
                Peel {
                    drop: 4,
                    band_width: 4 * k - 8,
                    band_columns: Partition::from_sorted_unchecked(vec![4; (k - 4) as usize]),
                    band_rows: Partition::from_sorted_unchecked(vec![2 * k - 8; 2]),
                    top: Partition::from_sorted_unchecked(vec![k; 4]),
                    top_rows: Partition::from_sorted_unchecked(vec![2 * k; 2]),
                }
            }
        }
        DoubleFamily::Caret => {
            if k.is_multiple_of(2) {
                if k < 4 {
                    return Ok(None);
                }
                let mut cols = vec![2; (3 * k - 5) as usize];
                cols.extend([1, 1]);
                Peel {
                    drop: 2,
                    band_width: 6 * k - 6,
                    band_columns: Partition::from_sorted_unchecked(cols),
                    band_rows: Partition::from_sorted_unchecked(vec![3 * k - 4; 2]),
                    top: Partition::from_unsorted(vec![3 * k - 1, 3 * k - 3]),
                    top_rows: Partition::from_sorted_unchecked(vec![3 * k - 2; 2]),
                }
            } else {
                if k < 5 {
                    return Ok(None);
                }
                let mut cols = vec![4; (3 * k - 11) as usize];
                cols.extend([3, 3, 2, 2, 1, 1]);
                Peel {
                    drop: 4,
                    band_width: 12 * k - 24,
                    band_columns: Partition::from_sorted_unchecked(cols),
                    band_rows: Partition::from_sorted_unchecked(vec![6 * k - 16; 2]),
                    top: Partition::from_unsorted(vec![
                        3 * k - 1,
                        3 * k - 3,
                        3 * k - 5,
                        3 * k - 7,
                    ]),
                    top_rows: Partition::from_sorted_unchecked(vec![6 * k - 8; 2]),
                }
            }
        }
    };
    let band = Partition::from_sorted_unchecked(vec![peel.band_width; 2]);
    let Some(rest) = mu.row_sub(&band) else {
        return Ok(None);
    };
    let child = double_hook_cert(fam, k - peel.drop, &rest, policy)?;
    let band_fact =
        leaf_from_oracle(&peel.band_columns, &peel.band_rows, policy).map_err(stringify)?;
    let grown = Certificate::semigroup(Arc::new(child), Arc::new(band_fact));
    let top_fact = leaf_from_oracle(&peel.top, &peel.top_rows, policy).map_err(stringify)?;
    Ok(Some(Certificate::vertical_sum(
        Arc::new(grown),
        Arc::new(top_fact),
    )))
}

fn stringify(e: CertificateError) -> String {
    e.to_string()
}

fn persist(
    dir: &Path,
    family: Family,
    param: u64,
    target: &Partition,
    cert: &Certificate,
) -> std::io::Result<String> {
    let sub = dir.join(family.as_str()).join(param.to_string());
    std::fs::create_dir_all(&sub)?;
    let path = sub.join(format!("{target}.kcert.json"));
    std::fs::write(&path, cert.to_json())?;
    Ok(path.display().to_string())
}

/// Streaming campaign driver: every target's record is passed to the sink
/// in deterministic order; the returned report retains the totals and the
/// failed records. Every emitted certificate passes the checker before it
/// is recorded as a success, and campaign roots are dropped as soon as
/// they are recorded.
pub fn verify_family_with(
    family: Family,
    from: u64,
    to: u64,
    policy: &RulePolicy,
    opts: &VerifyOptions,
    mut sink: impl FnMut(&TargetRecord),
) -> VerificationReport {
    let run_start = Instant::now();
    let mut report = VerificationReport::new(family.as_str(), (from, to));
    let ctx = ReduceCtx::new(policy.clone());
    for param in from..=to {
        let targets: Vec<Partition> = match family {
            Family::StaircaseHooks => hooks_of(param * (param + 1) / 2),
            Family::TripleHooks => durfee_partitions(param * (param + 1) / 2, 3),
            Family::ChoppedHooks => hooks_of(param * param - 1),
            Family::CaretHooks => hooks_of(3 * param * param),
            Family::ChoppedDouble => durfee_partitions(param * param - 1, 2),
            Family::CaretDouble => durfee_partitions(3 * param * param, 2),
        };
        for target in targets {
            let started = Instant::now();
            let derived: Result<Certificate, String> = match family {
                Family::StaircaseHooks => staircase_hook_cert(param as u32, &target, policy),
                Family::ChoppedHooks => chopped_hook_cert(param as u32, &target, policy),
                Family::CaretHooks => caret_hook_cert(param as u32, &target, policy),
                Family::ChoppedDouble => {
                    double_hook_cert(DoubleFamily::Chopped, param as u32, &target, policy)
                }
                Family::CaretDouble => {
                    double_hook_cert(DoubleFamily::Caret, param as u32, &target, policy)
                }
                Family::TripleHooks => certify_staircase(param as u32, &target, &ctx)
                    .map(|arc| (*arc).clone())
                    .map_err(|e| e.to_string()),
            };
            let outcome = derived.and_then(|cert| {
                check_certificate_cached(&cert, policy, ctx.check_cache())
                    .map_err(|f| format!("check: {f}"))
                    .map(|()| cert)
            });
            let mut path = None;
            let status = match outcome {
                Ok(cert) => {
                    if let Some(dir) = &opts.certs_dir {
                        match persist(dir, family, param, &target, &cert) {
                            Ok(p) => path = Some(p),
                            Err(e) => {
                                let record = TargetRecord {
                                    target: format!("{param}:{target}"),
                                    status: TargetStatus::Failed(format!("persist: {e}")),
                                    certificate_path: None,
                                    millis: started.elapsed().as_millis() as u64,
                                };
                                report.count(&record.status);
                                sink(&record);
                                report.entries.push(record);
                                continue;
                            }
                        }
                    }
                    if matches!(cert.rule, Rule::BruteForce) {
                        TargetStatus::BruteForced
                    } else {
                        TargetStatus::Certified
                    }
                }
                Err(reason) => TargetStatus::Failed(reason),
            };
            let record = TargetRecord {
                target: format!("{param}:{target}"),
                status,
                certificate_path: path,
                millis: started.elapsed().as_millis() as u64,
            };
            report.count(&record.status);
            sink(&record);
            if record.status.is_failed() {
                report.entries.push(record);
            }
        }
    }
    report.elapsed_millis = run_start.elapsed().as_millis() as u64;
    report
}

/// Collected variant of [`verify_family_with`]: the report holds every
/// record. Suitable for family sizes that fit comfortably in memory.
pub fn verify_family(
    family: Family,
    from: u64,
    to: u64,
    policy: &RulePolicy,
    opts: &VerifyOptions,
) -> VerificationReport {
    let mut all: Vec<TargetRecord> = Vec::new();
    let mut report = verify_family_with(family, from, to, policy, opts, |rec| {
        all.push(rec.clone());
    });
    report.entries = all;
    report
}
