//! Group-spec files.
//!
//! A spec file is a JSON object with exactly one of
//!
//! * `"generators"`: a list of row-major 2×2 matrices `[[a, b], [c, d]]`, or
//! * `"family"`: `{"kind": ..., ...}` with kind one of `cyclic-parabolic`
//!   (`translation`, default 1), `cyclic-hyperbolic` (`lambda`),
//!   `schottky-pair` (`circles`: four `[center, radius]` pairs) or
//!   `flute-truncated` (`translation_lengths`),
//!
//! plus optional `"max_word_length"` (default 10) and `"dedup_tol"`.

use std::fs;
use std::path::Path;

use horoflow_core::group::{Circle, Family, GroupSpec};
use horoflow_core::hyperbolic::Mobius;
use horoflow_core::tol::DEDUP_TOL;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_MAX_WORD_LENGTH: usize = 10;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed group spec: {0}")]
    Parse(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<[[f64; 2]; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_word_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dedup_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyFile {
    CyclicParabolic {
        #[serde(default = "unit_translation")]
        translation: f64,
    },
    CyclicHyperbolic {
        lambda: f64,
    },
    SchottkyPair {
        circles: [[f64; 2]; 4],
    },
    FluteTruncated {
        translation_lengths: Vec<f64>,
    },
}

fn unit_translation() -> f64 {
    1.0
}

impl FamilyFile {
    fn to_family(&self) -> Family {
        match self {
            FamilyFile::CyclicParabolic { translation } => Family::CyclicParabolic {
                translation: *translation,
            },
            FamilyFile::CyclicHyperbolic { lambda } => Family::CyclicHyperbolic { lambda: *lambda },
            FamilyFile::SchottkyPair { circles } => Family::SchottkyPair {
                circles: circles.map(|[center, radius]| Circle::new(center, radius)),
            },
            FamilyFile::FluteTruncated {
                translation_lengths,
            } => Family::FluteTruncated {
                translation_lengths: translation_lengths.clone(),
            },
        }
    }
}

pub fn load_group_spec(path: &Path) -> Result<GroupSpec, SpecError> {
    let text = fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_group_spec(&text)
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    resolve(&file)
}

/// Turns a parsed file into a validated spec.
pub fn resolve(file: &SpecFile) -> Result<GroupSpec, SpecError> {
    let generators = match (&file.generators, &file.family) {
        (Some(rows), None) => rows
            .iter()
            .map(|&[[a, b], [c, d]]| {
                Mobius::new(a, b, c, d).map_err(|e| SpecError::InvalidGenerator(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(family)) => family
            .to_family()
            .generators()
            .map_err(|e| SpecError::InvalidGenerator(e.to_string()))?,
        _ => {
            return Err(SpecError::Parse(
                "exactly one of \"generators\" and \"family\" is required".into(),
            ))
        }
    };
    let depth = file.max_word_length.unwrap_or(DEFAULT_MAX_WORD_LENGTH);
    let tol = file.dedup_tol.unwrap_or(DEDUP_TOL);
    if depth == 0 {
        return Err(SpecError::Parse("max_word_length must be positive".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpecError::Parse("dedup_tol must be positive".into()));
    }
    GroupSpec::new(generators, depth, tol).map_err(|e| SpecError::InvalidGenerator(e.to_string()))
}

/// The spec with every family resolved to explicit generators.
pub fn resolved_file(spec: &GroupSpec) -> SpecFile {
    SpecFile {
        generators: Some(
            spec.generators()
                .iter()
                .map(|g| {
                    let [a, b, c, d] = g.coefficients();
                    [[a, b], [c, d]]
                })
                .collect(),
        ),
        family: None,
        max_word_length: Some(spec.max_word_length()),
        dedup_tol: Some(spec.dedup_tol()),
    }
}
