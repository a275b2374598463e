//! JSON file formats and file-level helpers.
//!
//! Model files:
//!
//! ```json
//! {
//!   "propositions": ["q", "r"],
//!   "states": [
//!     {"name": "s", "labels": ["q"],
//!      "actions": {"a": {"s": "1/2", "t": "1/2"}}},
//!     {"name": "t", "labels": ["r"], "actions": {"a": {"t": "1"}}}
//!   ]
//! }
//! ```
//!
//! Probabilities are JSON numbers or `"p/q"` fraction strings (see
//! [`crate::prob::Prob`]). Deterministic Rabin automaton files:
//!
//! ```json
//! {
//!   "alphabet": ["q", "r"],
//!   "locations": [
//!     {"name": "l0", "labels": ["q"], "successors": ["l0", "l1"]}
//!   ],
//!   "initial": ["l0"],
//!   "pairs": [{"P": [], "R": ["l1"]}]
//! }
//! ```
//!
//! Serialization is canonical: states and locations keep their declared
//! order, per-state actions are sorted by name, and re-validating a
//! serialized model yields an identical structure.

use crate::mdp::{validate, Mdp, ModelError, ValidationWarning};
use crate::prob::Prob;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

/// Unvalidated model description, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawModel {
    pub propositions: Vec<String>,
    pub states: Vec<RawState>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawState {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub actions: BTreeMap<String, BTreeMap<String, Prob>>,
}

/// Unvalidated deterministic Rabin automaton description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDra {
    pub alphabet: Vec<String>,
    pub locations: Vec<RawLocation>,
    pub initial: Vec<String>,
    pub pairs: Vec<RawPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawLocation {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub successors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawPair {
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<String>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Model(#[from] ModelError),
}

/// Reads and validates a model file.
pub fn read_model(path: &Path) -> Result<(Mdp, Vec<ValidationWarning>), IoError> {
    let text = std::fs::read_to_string(path)?;
    let raw: RawModel = serde_json::from_str(&text)?;
    Ok(validate(&raw)?)
}

/// Canonical pretty-printed JSON for a model.
pub fn model_to_json(m: &Mdp) -> String {
    let mut s = serde_json::to_string_pretty(&m.to_raw()).expect("model serialization");
    s.push('\n');
    s
}

/// Writes a model file in canonical form.
pub fn write_model(m: &Mdp, path: &Path) -> Result<(), IoError> {
    Ok(std::fs::write(path, model_to_json(m))?)
}

/// Reads a raw automaton description (validation lives in [`crate::rabin`]).
pub fn read_raw_dra(path: &Path) -> Result<RawDra, IoError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Canonical pretty-printed JSON for a raw automaton description.
pub fn dra_to_json(raw: &RawDra) -> String {
    let mut s = serde_json::to_string_pretty(raw).expect("automaton serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn model_json_round_trip_preserves_structure() {
        for m in corpus::small_models() {
            let text = model_to_json(&m);
            let raw: RawModel = serde_json::from_str(&text).unwrap();
            let (back, _) = validate(&raw).unwrap();
            assert_eq!(m, back, "round trip changed {}", m.state_name(0));
            // State order is preserved verbatim.
            let names: Vec<&str> = raw.states.iter().map(|s| s.name.as_str()).collect();
            let orig: Vec<&str> = (0..m.n_states()).map(|s| m.state_name(s)).collect();
            assert_eq!(names, orig);
        }
    }

    #[test]
    fn model_json_is_deterministic() {
        let a = model_to_json(&corpus::convex_choice());
        let b = model_to_json(&corpus::convex_choice());
        assert_eq!(a, b);
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = corpus::lookalike_family();
        write_model(&m, &path).unwrap();
        let (back, warnings) = read_model(&path).unwrap();
        assert_eq!(m, back);
        assert!(warnings.is_empty());
    }

    #[test]
    fn missing_files_and_bad_json_are_reported() {
        assert!(matches!(
            read_model(Path::new("/nonexistent/x.json")),
            Err(IoError::Io(_))
        ));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{ not json").unwrap();
        assert!(matches!(read_model(&path), Err(IoError::Json(_))));
    }
}
