//! Data inputs steering the KM translation: the preposition map, state
//! negation pairs, opposite-action pairs, module grouping, and the curated
//! patch applied after the direct translation.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ConfigError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad json in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

fn load_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// (state class, participant relation) -> English preposition.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct PrepositionMap {
    #[serde(default)]
    pub defaults: BTreeMap<String, String>,
    /// Per-state overrides, keyed by KM state class name.
    #[serde(default)]
    pub overrides: BTreeMap<String, BTreeMap<String, String>>,
}

impl PrepositionMap {
    pub fn lookup(&self, state: &str, relation: &str) -> Option<&str> {
        self.overrides
            .get(state)
            .and_then(|m| m.get(relation))
            .or_else(|| self.defaults.get(relation))
            .map(String::as_str)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct TranslationConfig {
    #[serde(default)]
    pub prepositions: PrepositionMap,
    /// State classes that are the negation of another state
    /// (e.g. Be-Inaccessible -> Be-Accessible).
    #[serde(default)]
    pub state_negations: BTreeMap<String, String>,
    /// Pairs inspected by the opposite-action consistency report.
    #[serde(default)]
    pub action_opposites: Vec<(String, String)>,
}

impl TranslationConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        load_json(path)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum PatchSpecKind {
    A(String),
    MustBeA(String),
    MustntBeA(String),
    AtMost(u8, String),
    AtLeast(u8, String),
    Exactly(u8, String),
    TheAttrOfSelf(String),
    ExcludedValues(String),
    UnifyConstraint(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PatchAttrSpec {
    pub class: String,
    pub attr: String,
    pub spec: PatchSpecKind,
}

/// Hand additions applied after the direct translation: extra attribute
/// constraints and action renames.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Patch {
    #[serde(default)]
    pub renames: BTreeMap<String, String>,
    #[serde(default)]
    pub attr_specs: Vec<PatchAttrSpec>,
}

impl Patch {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        load_json(path)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupModule {
    pub name: String,
    #[serde(default)]
    pub depends_on: Vec<String>,
    /// KM symbols (classes and slots) whose translations live in this module.
    pub symbols: Vec<String>,
}

/// Curated assignment of translated symbols to library modules.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Groups {
    pub library: String,
    pub modules: Vec<GroupModule>,
}

impl Groups {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        load_json(path)
    }
}
