use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::estimate::{
    estimate_mu, estimate_mu_10, estimate_mu_mixed, estimate_nu, estimate_nu_mixed, MomentEstimate, MomentKey,
    MomentKind,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: Option<u64>,
}

/// Cache of constants keyed by their canonical [`MomentKey`] string.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MomentTable {
    entries: BTreeMap<String, TableEntry>,
}

impl MomentTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, e: MomentEstimate) {
        let entry = TableEntry { value: e.value, std_error: e.std_error, n_samples: e.n_samples, seed: e.seed };
        self.entries.insert(e.key.to_string(), entry);
    }

    pub fn get(&self, key: &MomentKey) -> Option<MomentEstimate> {
        self.entries.get(&key.to_string()).map(|e| MomentEstimate {
            key: key.clone(),
            value: e.value,
            std_error: e.std_error,
            n_samples: e.n_samples,
            seed: e.seed,
        })
    }

    pub fn contains(&self, key: &MomentKey) -> bool {
        self.entries.contains_key(&key.to_string())
    }

    pub fn iter(&self) -> impl Iterator<Item = MomentEstimate> + '_ {
        self.entries.iter().map(|(k, e)| MomentEstimate {
            key: k.parse().expect("table keys are validated on entry"),
            value: e.value,
            std_error: e.std_error,
            n_samples: e.n_samples,
            seed: e.seed,
        })
    }

    /// Estimates `key` unless already present and returns the entry.
    pub fn ensure(&mut self, key: &MomentKey, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
        if let Some(e) = self.get(key) {
            return Ok(e);
        }
        let e = estimate_key(key, n_samples, seed)?;
        self.insert(e.clone());
        Ok(e)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, TableEntry> = serde_json::from_str(text)?;
        for (k, e) in &raw {
            k.parse::<MomentKey>()?;
            if !(e.value.is_finite() && e.std_error.is_finite() && e.std_error >= 0.0) {
                return Err(Error::param(format!("moment `{k}`: value and std_error must be finite, std_error >= 0")));
            }
        }
        Ok(MomentTable { entries: raw })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.entries).expect("plain map serializes");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Loads `path` if it exists, otherwise starts empty.
    pub fn load_or_default(path: &Path) -> Result<Self> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Runs the estimator that `key` names.
pub fn estimate_key(key: &MomentKey, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    let (i, a, d) = (key.indices(), key.alphas(), key.dim());
    match key.kind() {
        MomentKind::Mu => estimate_mu(i[0], a[0], d, n_samples, seed),
        MomentKind::Nu => estimate_nu(i[0], a[0], d, n_samples, seed),
        MomentKind::MuMixed => estimate_mu_mixed(i[0], i[1], i[2], a[0], a[1], d, n_samples, seed),
        MomentKind::NuMixed => estimate_nu_mixed(i[0], i[1], i[2], a[0], a[1], d, n_samples, seed),
        MomentKind::Mu10 => estimate_mu_10(i[0], i[1], d, n_samples, seed),
    }
}
