//! Persisted positivity facts for leaves whose re-derivation is an
//! hours-scale computation (pairs of size 34 and 35).
//!
//! The shipped manifest is marked re-derivable: an extended verification
//! run recomputes every fact with the oracle and persists the exact
//! coefficients. The checker accepts a brute-force leaf without
//! re-execution when its pair appears here.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::characters::CharInt;
use crate::partitions::Partition;

use super::CertificateError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ManifestFact {
    pub alpha: Partition,
    pub beta: Partition,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficient: Option<CharInt>,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ManifestFile {
    v: u32,
    facts: Vec<ManifestFact>,
}

/// A set of `(alpha, beta)` positivity facts keyed by the pair.
#[derive(Debug, Clone, Default)]
pub struct Manifest {
    facts: BTreeMap<(Partition, Partition), ManifestFact>,
}

impl Manifest {
    pub fn empty() -> Self {
        Manifest::default()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn lookup(&self, alpha: &Partition, beta: &Partition) -> Option<&ManifestFact> {
        self.facts.get(&(alpha.clone(), beta.clone()))
    }

    pub fn insert(&mut self, fact: ManifestFact) {
        self.facts
            .insert((fact.alpha.clone(), fact.beta.clone()), fact);
    }

    pub fn facts(&self) -> impl Iterator<Item = &ManifestFact> {
        self.facts.values()
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let file: ManifestFile =
            serde_json::from_str(text).map_err(|e| CertificateError::Serialization(e.to_string()))?;
        if file.v != 1 {
            return Err(CertificateError::SchemaVersion(file.v));
        }
        let mut m = Manifest::empty();
        for fact in file.facts {
            m.insert(fact);
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let file = ManifestFile {
            v: 1,
            facts: self.facts.values().cloned().collect(),
        };
        serde_json::to_string_pretty(&file).expect("manifest serializes")
    }

    pub fn load(path: &Path) -> Result<Self, CertificateError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CertificateError::Io(format!("{}: {e}", path.display())))?;
        Manifest::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), CertificateError> {
        std::fs::write(path, self.to_json())
            .map_err(|e| CertificateError::Io(format!("{}: {e}", path.display())))
    }
}

static EMBEDDED: Lazy<Arc<Manifest>> = Lazy::new(|| {
    Arc::new(
        Manifest::from_json(include_str!("../../data/default_manifest.json"))
            .expect("embedded manifest is valid"),
    )
});

/// The manifest compiled into the library.
pub fn embedded_manifest() -> Arc<Manifest> {
    EMBEDDED.clone()
}
