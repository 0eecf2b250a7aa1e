//! Machine-checkable positivity proofs.
//!
//! A certificate concludes `(alpha, beta)`, the statement that the
//! self-paired coefficient `g(alpha, alpha, beta)` is positive. Leaves are
//! brute-force facts (re-executed against the oracle when small enough, or
//! satisfied from the shipped manifest) or audited axioms; internal nodes
//! apply the closed rule set:
//!
//! * `Semigroup` — componentwise sum of two positive pairs is positive;
//! * `VerticalSum` — `(a1 ∪ a2, b1 + b2)` is positive when both children are;
//! * `Transpose` — `(alpha, beta)` follows from `(alpha, beta')`;
//! * `Dominance` — axiom: alpha with distinct rows, dominated by beta;
//! * `SigmaTwo` — axiom: two-column staircase strip against any shape of
//!   length at most four and matching size.
//!
//! The checker is deterministic, independent of how the tree was derived,
//! and reports the path of the offending node on failure.

mod manifest;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::characters::CharInt;
use crate::kronecker::{pair_coefficient, KroneckerError};
use crate::partitions::{partitions_of, sigma, Partition};
use crate::report::{TargetRecord, TargetStatus, VerificationReport};

pub use manifest::{embedded_manifest, Manifest, ManifestFact};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("pair ({0}, {1}) exceeds the brute-force size cap {2}")]
    CapExceeded(Partition, Partition, u64),
    #[error("pair ({0}, {1}) has coefficient 0; cannot build a positivity leaf")]
    NotPositive(Partition, Partition),
    #[error("axiom {0} is not on the allowlist")]
    NotAllowlisted(String),
    #[error("axiom {name} precondition failed for ({alpha}, {beta}): {reason}")]
    PreconditionFailed {
        name: String,
        alpha: Partition,
        beta: Partition,
        reason: String,
    },
    #[error("scalar multiple requires s >= 1")]
    BadScalar,
    #[error("size mismatch between {0} and {1}")]
    SizeMismatch(Partition, Partition),
    #[error("pair ({0}, {1}) is not in the manifest")]
    NotInManifest(Partition, Partition),
    #[error("unsupported certificate schema version {0}")]
    SchemaVersion(u32),
    #[error("serialization: {0}")]
    Serialization(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Kronecker(#[from] KroneckerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    BruteForce,
    Axiom,
    Semigroup,
    VerticalSum,
    Dominance,
    SigmaTwo,
    Transpose,
    #[serde(other)]
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LeafSource {
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "manifest")]
    Manifest,
}

/// Named external results admitted as leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomName {
    Dominance,
    SigmaTwo,
}

impl AxiomName {
    pub fn citation(self) -> &'static str {
        match self {
            AxiomName::Dominance => {
                "distinct-row dominance criterion (Ikenmeyer 2015; Luo-Sellke 2017, Thm 9.1)"
            }
            AxiomName::SigmaTwo => "two-column strip criterion (Tewari 2015, Cor 1.9)",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::Dominance => "Dominance",
            AxiomName::SigmaTwo => "SigmaTwo",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A node of a positivity proof; the conclusion asserts
/// `g(alpha, alpha, beta) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rule: Rule,
    pub alpha: Partition,
    pub beta: Partition,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficient: Option<CharInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<LeafSource>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub axiom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<Arc<Certificate>>,
}

#[derive(Serialize)]
struct FileOut<'a> {
    v: u32,
    certificate: &'a Certificate,
}

#[derive(Deserialize)]
struct FileIn {
    v: u32,
    certificate: Certificate,
}

impl Certificate {
    fn node(rule: Rule, alpha: Partition, beta: Partition) -> Certificate {
        Certificate {
            rule,
            alpha,
            beta,
            coefficient: None,
            source: None,
            axiom: None,
            citation: None,
            children: Vec::new(),
        }
    }

    pub fn conclusion(&self) -> (&Partition, &Partition) {
        (&self.alpha, &self.beta)
    }

    /// Semigroup combination: conclusion is the componentwise sum of the
    /// children's conclusions.
    pub fn semigroup(left: Arc<Certificate>, right: Arc<Certificate>) -> Certificate {
        let alpha = left.alpha.row_add(&right.alpha);
        let beta = left.beta.row_add(&right.beta);
        let mut c = Certificate::node(Rule::Semigroup, alpha, beta);
        c.children = vec![left, right];
        c
    }

    /// Vertical-sum combination: `(a1 ∪ a2, b1 + b2)`.
    pub fn vertical_sum(left: Arc<Certificate>, right: Arc<Certificate>) -> Certificate {
        let alpha = left.alpha.vertical_sum(&right.alpha);
        let beta = left.beta.row_add(&right.beta);
        let mut c = Certificate::node(Rule::VerticalSum, alpha, beta);
        c.children = vec![left, right];
        c
    }

    /// Third-argument transposition: conclusion `(alpha, beta)` from a child
    /// concluding `(alpha, beta')`.
    pub fn transpose_third(child: Arc<Certificate>) -> Certificate {
        let alpha = child.alpha.clone();
        let beta = child.beta.conjugate();
        let mut c = Certificate::node(Rule::Transpose, alpha, beta);
        c.children = vec![child];
        c
    }

    pub fn count_nodes(&self) -> usize {
        1 + self.children.iter().map(|c| c.count_nodes()).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FileOut { v: 1, certificate: self })
            .expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        let file: FileIn = serde_json::from_str(text)
            .map_err(|e| CertificateError::Serialization(e.to_string()))?;
        if file.v != 1 {
            return Err(CertificateError::SchemaVersion(file.v));
        }
        Ok(file.certificate)
    }
}

/// Checking policy: sizes at which brute-force leaves may appear and are
/// re-executed, sizes at which axiom instances are re-audited, the axiom
/// allowlist, and the leaf manifest.
#[derive(Debug, Clone)]
pub struct RulePolicy {
    pub brute_force_size_cap: u64,
    pub audit_cap: u64,
    pub allowlist: BTreeSet<AxiomName>,
    pub manifest: Arc<Manifest>,
    /// Permit deriving manifest-scale leaves directly from the oracle.
    pub extended: bool,
}

impl Default for RulePolicy {
    fn default() -> Self {
        RulePolicy {
            brute_force_size_cap: 36,
            audit_cap: 11,
            allowlist: [AxiomName::Dominance, AxiomName::SigmaTwo].into(),
            manifest: embedded_manifest(),
            extended: false,
        }
    }
}

impl RulePolicy {
    pub fn with_manifest(mut self, manifest: Arc<Manifest>) -> Self {
        self.manifest = manifest;
        self
    }
}

/// A failed check, naming the offending node by its child-index path from
/// the root.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "root node: {}", self.reason)
        } else {
            let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
            write!(f, "node /{}: {}", path.join("/"), self.reason)
        }
    }
}

fn fail(reason: impl Into<String>) -> CheckFailure {
    CheckFailure { path: Vec::new(), reason: reason.into() }
}

/// Shared subtree-validation cache for batch checking. Entries are keyed
/// by node address and hold a clone of the `Arc`, which pins the
/// allocation so the key can never be reused by a different node. The
/// entry count is capped; once full, further subtrees are simply
/// re-checked.
pub struct CheckCache {
    map: DashMap<usize, (Arc<Certificate>, Result<(), CheckFailure>)>,
    cap: usize,
}

impl Default for CheckCache {
    fn default() -> Self {
        CheckCache { map: DashMap::new(), cap: 1 << 19 }
    }
}

impl CheckCache {
    pub fn with_cap(cap: usize) -> Self {
        CheckCache { map: DashMap::new(), cap }
    }
}

fn axiom_of(cert: &Certificate) -> Result<AxiomName, CheckFailure> {
    match cert.rule {
        Rule::Dominance => Ok(AxiomName::Dominance),
        Rule::SigmaTwo => Ok(AxiomName::SigmaTwo),
        Rule::Axiom => match cert.axiom.as_deref() {
            Some("Dominance") => Ok(AxiomName::Dominance),
            Some("SigmaTwo") => Ok(AxiomName::SigmaTwo),
            Some(other) => Err(fail(format!("unknown axiom name {other:?}"))),
            None => Err(fail("axiom leaf without a name")),
        },
        _ => unreachable!("caller dispatches axiom rules only"),
    }
}

pub(crate) fn axiom_precondition(
    name: AxiomName,
    alpha: &Partition,
    beta: &Partition,
) -> Result<(), String> {
    match name {
        AxiomName::Dominance => {
            let distinct = alpha.parts().windows(2).all(|w| w[0] > w[1]);
            if !distinct {
                return Err("first component must have distinct row lengths".into());
            }
            match beta.dominates(alpha) {
                Ok(true) => Ok(()),
                Ok(false) => Err("second component must dominate the first".into()),
                Err(e) => Err(e.to_string()),
            }
        }
        AxiomName::SigmaTwo => {
            let n = alpha.size();
            if n.is_multiple_of(2) {
                return Err("first component must have odd size 2m-1".into());
            }
            let m = n.div_ceil(2) as u32;
            let expected = sigma(m, 2.min(m + 1)).map_err(|e| e.to_string())?;
            if *alpha != expected {
                return Err(format!("first component must be the two-column strip {expected}"));
            }
            if beta.len() > 4 {
                return Err("second component must have at most 4 parts".into());
            }
            Ok(())
        }
    }
}

fn check_rel(
    cert: &Certificate,
    policy: &RulePolicy,
    cache: Option<&CheckCache>,
) -> Result<(), CheckFailure> {
    if cert.alpha.size() != cert.beta.size() {
        return Err(fail(format!(
            "size mismatch: |{}| = {} vs |{}| = {}",
            cert.alpha,
            cert.alpha.size(),
            cert.beta,
            cert.beta.size()
        )));
    }
    let expect_children = match cert.rule {
        Rule::BruteForce | Rule::Axiom | Rule::Dominance | Rule::SigmaTwo => 0,
        Rule::Transpose => 1,
        Rule::Semigroup | Rule::VerticalSum => 2,
        Rule::Unknown => return Err(fail("unknown rule")),
    };
    if cert.children.len() != expect_children {
        return Err(fail(format!(
            "rule {:?} expects {} children, found {}",
            cert.rule,
            expect_children,
            cert.children.len()
        )));
    }
    match cert.rule {
        Rule::BruteForce => {
            let n = cert.alpha.size();
            if let Some(fact) = policy.manifest.lookup(&cert.alpha, &cert.beta) {
                if let (Some(stored), Some(known)) = (&cert.coefficient, &fact.coefficient) {
                    if stored != known {
                        return Err(fail(format!(
                            "stored coefficient {stored} disagrees with manifest value {known}"
                        )));
                    }
                }
                if let Some(stored) = &cert.coefficient {
                    if !stored.is_positive() {
                        return Err(fail("stored coefficient is not positive"));
                    }
                }
                return Ok(());
            }
            if n > policy.brute_force_size_cap {
                return Err(fail(format!(
                    "brute-force leaf of size {n} exceeds cap {} and is absent from the manifest",
                    policy.brute_force_size_cap
                )));
            }
            let stored = match (&cert.coefficient, cert.source) {
                (Some(c), _) => c.clone(),
                (None, Some(LeafSource::Manifest)) => {
                    return Err(fail("manifest-sourced leaf not present in the active manifest"));
                }
                (None, _) => return Err(fail("brute-force leaf without a coefficient")),
            };
            if !stored.is_positive() {
                return Err(fail("stored coefficient is not positive"));
            }
            let actual = pair_coefficient(&cert.alpha, &cert.beta)
                .map_err(|e| fail(format!("oracle failure: {e}")))?;
            if actual != stored {
                return Err(fail(format!(
                    "re-execution disagrees: stored {stored}, computed {actual}"
                )));
            }
            Ok(())
        }
        Rule::Axiom | Rule::Dominance | Rule::SigmaTwo => {
            let name = axiom_of(cert)?;
            if !policy.allowlist.contains(&name) {
                return Err(fail(format!("axiom {name} is not on the allowlist")));
            }
            axiom_precondition(name, &cert.alpha, &cert.beta).map_err(fail)?;
            if cert.alpha.size() <= policy.audit_cap {
                let actual = pair_coefficient(&cert.alpha, &cert.beta)
                    .map_err(|e| fail(format!("oracle failure: {e}")))?;
                if !actual.is_positive() {
                    return Err(fail(format!("audited axiom instance {name} is not positive")));
                }
            }
            Ok(())
        }
        Rule::Semigroup => {
            let (l, r) = (&cert.children[0], &cert.children[1]);
            if cert.alpha != l.alpha.row_add(&r.alpha) {
                return Err(fail("first component is not the rowwise sum of the children"));
            }
            if cert.beta != l.beta.row_add(&r.beta) {
                return Err(fail("second component is not the rowwise sum of the children"));
            }
            check_children(cert, policy, cache)
        }
        Rule::VerticalSum => {
            let (l, r) = (&cert.children[0], &cert.children[1]);
            if cert.alpha != l.alpha.vertical_sum(&r.alpha) {
                return Err(fail("first component is not the vertical sum of the children"));
            }
            if cert.beta != l.beta.row_add(&r.beta) {
                return Err(fail("second component is not the rowwise sum of the children"));
            }
            check_children(cert, policy, cache)
        }
        Rule::Transpose => {
            let child = &cert.children[0];
            if child.alpha != cert.alpha {
                return Err(fail("transpose child must share the first component"));
            }
            if child.beta != cert.beta.conjugate() {
                return Err(fail("transpose child must conclude the conjugated second component"));
            }
            check_children(cert, policy, cache)
        }
        Rule::Unknown => unreachable!(),
    }
}

fn check_children(
    cert: &Certificate,
    policy: &RulePolicy,
    cache: Option<&CheckCache>,
) -> Result<(), CheckFailure> {
    for (i, child) in cert.children.iter().enumerate() {
        let result = match cache {
            Some(c) => {
                let key = Arc::as_ptr(child) as usize;
                if let Some(hit) = c.map.get(&key) {
                    hit.1.clone()
                } else {
                    let r = check_rel(child, policy, cache);
                    if c.map.len() < c.cap {
                        c.map.insert(key, (child.clone(), r.clone()));
                    }
                    r
                }
            }
            None => check_rel(child, policy, cache),
        };
        if let Err(mut f) = result {
            f.path.insert(0, i);
            return Err(f);
        }
    }
    Ok(())
}

/// Validates every node of the certificate under the policy.
pub fn check_certificate(cert: &Certificate, policy: &RulePolicy) -> Result<(), CheckFailure> {
    check_rel(cert, policy, None)
}

/// Batch variant sharing validated subtrees across roots.
pub fn check_certificate_cached(
    cert: &Certificate,
    policy: &RulePolicy,
    cache: &CheckCache,
) -> Result<(), CheckFailure> {
    check_rel(cert, policy, Some(cache))
}

/// Brute-force leaf: computes and stores the exact coefficient.
pub fn leaf_from_oracle(
    alpha: &Partition,
    beta: &Partition,
    policy: &RulePolicy,
) -> Result<Certificate, CertificateError> {
    if alpha.size() != beta.size() {
        return Err(CertificateError::SizeMismatch(alpha.clone(), beta.clone()));
    }
    if alpha.size() > policy.brute_force_size_cap {
        return Err(CertificateError::CapExceeded(
            alpha.clone(),
            beta.clone(),
            policy.brute_force_size_cap,
        ));
    }
    let coefficient = pair_coefficient(alpha, beta)?;
    if !coefficient.is_positive() {
        return Err(CertificateError::NotPositive(alpha.clone(), beta.clone()));
    }
    let mut c = Certificate::node(Rule::BruteForce, alpha.clone(), beta.clone());
    c.coefficient = Some(coefficient);
    c.source = Some(LeafSource::Oracle);
    Ok(c)
}

/// Leaf satisfied from the manifest; under an extended policy a missing
/// fact is derived from the oracle instead.
pub fn leaf_from_manifest(
    alpha: &Partition,
    beta: &Partition,
    policy: &RulePolicy,
) -> Result<Certificate, CertificateError> {
    if let Some(fact) = policy.manifest.lookup(alpha, beta) {
        let mut c = Certificate::node(Rule::BruteForce, alpha.clone(), beta.clone());
        c.coefficient = fact.coefficient.clone();
        c.source = Some(LeafSource::Manifest);
        return Ok(c);
    }
    if policy.extended {
        return leaf_from_oracle(alpha, beta, policy);
    }
    Err(CertificateError::NotInManifest(alpha.clone(), beta.clone()))
}

/// Axiom leaf; the named result's syntactic precondition is checked
/// structurally at construction.
pub fn axiom_leaf(
    name: AxiomName,
    alpha: &Partition,
    beta: &Partition,
    policy: &RulePolicy,
) -> Result<Certificate, CertificateError> {
    if !policy.allowlist.contains(&name) {
        return Err(CertificateError::NotAllowlisted(name.to_string()));
    }
    axiom_precondition(name, alpha, beta).map_err(|reason| CertificateError::PreconditionFailed {
        name: name.to_string(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        reason,
    })?;
    let rule = match name {
        AxiomName::Dominance => Rule::Dominance,
        AxiomName::SigmaTwo => Rule::SigmaTwo,
    };
    let mut c = Certificate::node(rule, alpha.clone(), beta.clone());
    c.citation = Some(name.citation().to_string());
    Ok(c)
}

/// Iterated semigroup combination of `s` copies of the base conclusion.
pub fn derive_scalar_multiple(
    base: &Certificate,
    s: u64,
) -> Result<Certificate, CertificateError> {
    if s == 0 {
        return Err(CertificateError::BadScalar);
    }
    let base = Arc::new(base.clone());
    let mut acc = base.clone();
    for _ in 1..s {
        acc = Arc::new(Certificate::semigroup(acc, base.clone()));
    }
    Ok(Arc::try_unwrap(acc).unwrap_or_else(|arc| (*arc).clone()))
}

/// Re-verifies every allowlisted axiom instance up to the audit cap
/// against the oracle. Failures are report entries, not errors.
pub fn audit_axioms(policy: &RulePolicy) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("audit", (0, policy.audit_cap));
    for name in &policy.allowlist {
        match name {
            AxiomName::SigmaTwo => {
                let mut m = 1u64;
                while 2 * m - 1 <= policy.audit_cap {
                    let strip = sigma(m as u32, 2.min(m as u32 + 1)).expect("valid strip");
                    for beta in partitions_of(2 * m - 1) {
                        if beta.len() > 4 {
                            continue;
                        }
                        push_audit_entry(&mut report, *name, &strip, &beta);
                    }
                    m += 1;
                }
            }
            AxiomName::Dominance => {
                for n in 1..=policy.audit_cap {
                    let all: Vec<Partition> = partitions_of(n).collect();
                    for alpha in &all {
                        if !alpha.parts().windows(2).all(|w| w[0] > w[1]) {
                            continue;
                        }
                        for beta in &all {
                            if beta.dominates(alpha).expect("same size") {
                                push_audit_entry(&mut report, *name, alpha, beta);
                            }
                        }
                    }
                }
            }
        }
    }
    report.elapsed_millis = start.elapsed().as_millis() as u64;
    report
}

fn push_audit_entry(
    report: &mut VerificationReport,
    name: AxiomName,
    alpha: &Partition,
    beta: &Partition,
) {
    let t = std::time::Instant::now();
    let status = match pair_coefficient(alpha, beta) {
        Ok(c) if c.is_positive() => TargetStatus::Certified,
        Ok(_) => TargetStatus::Failed("oracle value is zero".into()),
        Err(e) => TargetStatus::Failed(e.to_string()),
    };
    report.push(TargetRecord {
        target: format!("{name} alpha={alpha} beta={beta}"),
        status,
        certificate_path: None,
        millis: t.elapsed().as_millis() as u64,
    });
}
