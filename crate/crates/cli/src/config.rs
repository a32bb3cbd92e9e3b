//! JSON pipeline configuration.
//!
//! ```json
//! {
//!   "roles": {"trigger1": "Stream 1", "trigger2": "Stream 2", "consequence": "Stream 3"},
//!   "windows": {"trigger": 10, "consequence": 10},
//!   "vocabularies": {
//!     "trigger1": [{"label": "Small", "a": 0, "b": 0, "c": 3, "d": 6}],
//!     "trigger2": [...], "delta_t": [...], "consequence": [...]
//!   },
//!   "min_support": 0.0,
//!   "min_confidence": 0.0
//! }
//! ```
//!
//! Thresholds default to 0. Each vocabulary is named after its role.

use std::fs;
use std::path::{Path, PathBuf};

use itassoc_core::{
    validate_vocabulary, FuzzyInterval, MiningConfig, Severity, ValidationReport, Vocabulary, WindowConfig,
};
use serde::Deserialize;
use thiserror::Error;

use crate::streams::RoleMap;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub roles: RoleMap,
    pub mining: MiningConfig,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config is not valid JSON: {0}")]
    Malformed(serde_json::Error),
    #[error("config field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("config failed validation:\n{}", format_errors(.0))]
    Invalid(ValidationReport),
}

fn format_errors(report: &ValidationReport) -> String {
    report.errors().map(|f| format!("  {f}")).collect::<Vec<_>>().join("\n")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    roles: RawRoles,
    windows: RawWindows,
    vocabularies: RawVocabularies,
    #[serde(default)]
    min_support: f64,
    #[serde(default)]
    min_confidence: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRoles {
    trigger1: String,
    trigger2: String,
    consequence: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWindows {
    trigger: f64,
    consequence: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVocabularies {
    trigger1: Vec<RawInterval>,
    trigger2: Vec<RawInterval>,
    delta_t: Vec<RawInterval>,
    consequence: Vec<RawInterval>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    label: String,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

fn vocabulary(name: &str, raw: Vec<RawInterval>) -> Vocabulary {
    Vocabulary {
        name: name.into(),
        intervals: raw
            .into_iter()
            .map(|RawInterval { label, a, b, c, d }| FuzzyInterval { label, a, b, c, d })
            .collect(),
    }
}

/// Reads and checks a config file. The report holds every finding,
/// including informational ones, of a config that passed.
pub fn load_config(path: impl AsRef<Path>) -> Result<(PipelineConfig, ValidationReport), ConfigError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<(PipelineConfig, ValidationReport), ConfigError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawConfig = match serde_path_to_error::deserialize(&mut de) {
        Ok(raw) => raw,
        Err(err) => {
            let field = err.path().to_string();
            let inner = err.into_inner();
            return Err(match inner.classify() {
                serde_json::error::Category::Data => ConfigError::Schema { field, message: inner.to_string() },
                _ => ConfigError::Malformed(inner),
            });
        }
    };
    de.end().map_err(ConfigError::Malformed)?;

    for (field, value) in [("min_support", raw.min_support), ("min_confidence", raw.min_confidence)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(ConfigError::Schema { field: field.into(), message: format!("must be within [0, 1], got {value}") });
        }
    }
    for (field, value) in [("windows.trigger", raw.windows.trigger), ("windows.consequence", raw.windows.consequence)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(ConfigError::Schema { field: field.into(), message: format!("must be positive, got {value}") });
        }
    }
    let windows = WindowConfig::new(raw.windows.trigger, raw.windows.consequence)
        .expect("window ranges checked above");

    let roles = RoleMap::new(raw.roles.trigger1, raw.roles.trigger2, raw.roles.consequence);
    let vocabs = raw.vocabularies;
    let vocab_trigger1 = vocabulary("trigger1", vocabs.trigger1);
    let vocab_trigger2 = vocabulary("trigger2", vocabs.trigger2);
    let vocab_delta_t = vocabulary("delta_t", vocabs.delta_t);
    let vocab_consequence = vocabulary("consequence", vocabs.consequence);

    let mut report = check_roles(&roles);
    for vocab in [&vocab_trigger1, &vocab_trigger2, &vocab_delta_t, &vocab_consequence] {
        report.extend(validate_vocabulary(vocab));
    }
    if report.has_errors() {
        return Err(ConfigError::Invalid(report));
    }

    let mining = MiningConfig::new(windows, vocab_trigger1, vocab_trigger2, vocab_delta_t, vocab_consequence)
        .with_thresholds(raw.min_support, raw.min_confidence)
        .expect("threshold ranges checked above");
    Ok((PipelineConfig { roles, mining }, report))
}

fn check_roles(roles: &RoleMap) -> ValidationReport {
    let mut report = ValidationReport::new();
    let pairs: Vec<_> = roles.iter().collect();
    for (role, name) in &pairs {
        if name.is_empty() {
            report.push(Severity::Error, "roles", format!("{role} names no stream"));
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[i].1 == pairs[j].1 && !pairs[i].1.is_empty() {
                report.push(
                    Severity::Error,
                    "roles",
                    format!("{} and {} both name stream '{}'", pairs[i].0, pairs[j].0, pairs[i].1),
                );
            }
        }
    }
    report
}
