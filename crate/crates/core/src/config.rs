//! System configuration: JSON files and named presets.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::MatrixError;
use crate::matrix::{CoxeterMatrix, Order};
use crate::presets;
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSet, Word};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid configuration JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid Coxeter matrix: {0}")]
    Matrix(#[from] MatrixError),
    #[error("generator list has {names} names but the order table has {rows} rows")]
    NameCount { names: usize, rows: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("unknown generator {name:?}; expected one of {known}")]
    UnknownGenerator { name: String, known: String },
    #[error("unknown system preset {0:?}; known presets: A2, A3, B3, H3, I2(m), I2(inf), tilde-A2, G1")]
    UnknownPreset(String),
}

/// On-disk form of a Coxeter system:
/// `{"generators": ["s0","t0","t1"], "orders": [[1,"inf",3],["inf",1,2],[3,2,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub generators: Vec<String>,
    pub orders: Vec<Vec<Order>>,
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_matrix(generators: &[&str], matrix: &CoxeterMatrix) -> Self {
        SystemConfig {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            orders: matrix.rows(),
        }
    }

    /// Looks up a preset: `A2`, `A3`, `B3`, `H3`, `I2(m)`, `I2(inf)`,
    /// `tilde-A2`, `G1`.
    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        let abc = ["a", "b", "c"];
        let config = match name {
            "A2" => Self::from_matrix(&abc[..2], &presets::a_matrix(2)),
            "A3" => Self::from_matrix(&abc, &presets::a_matrix(3)),
            "B3" => Self::from_matrix(&abc, &presets::b_matrix(3)),
            "H3" => Self::from_matrix(&abc, &presets::linear_matrix(&[5, 3])),
            "tilde-A2" => Self::from_matrix(&abc, &presets::tilde_a2_matrix()),
            "G1" => Self::from_matrix(&["s0", "t0", "t1"], &presets::g1_matrix()),
            other => {
                let m = other
                    .strip_prefix("I2(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|m| match m {
                        "inf" => Some(Order::Infinite),
                        digits => digits.parse::<u32>().ok().filter(|&m| m >= 2).map(Order::Finite),
                    })
                    .ok_or_else(|| ConfigError::UnknownPreset(other.to_string()))?;
                Self::from_matrix(&abc[..2], &presets::i2_matrix(m))
            }
        };
        Ok(config)
    }

    pub fn build(self, name: &str) -> Result<NamedSystem, ConfigError> {
        if self.generators.len() != self.orders.len() {
            return Err(ConfigError::NameCount {
                names: self.generators.len(),
                rows: self.orders.len(),
            });
        }
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.as_str()) {
                return Err(ConfigError::DuplicateName(g.clone()));
            }
        }
        let matrix = CoxeterMatrix::new(self.orders)?;
        Ok(NamedSystem {
            name: name.to_string(),
            generators: self.generators,
            system: CoxeterSystem::new(matrix),
        })
    }
}

/// A Coxeter system with human-readable generator names.
#[derive(Clone, Debug)]
pub struct NamedSystem {
    pub name: String,
    pub generators: Vec<String>,
    pub system: CoxeterSystem,
}

impl NamedSystem {
    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        SystemConfig::preset(name)?.build(name)
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, ConfigError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| ConfigError::UnknownGenerator {
                name: name.to_string(),
                known: self.generators.join(", "),
            })
    }

    /// Parses a comma-separated list of generator names; empty input is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, ConfigError> {
        let letters = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.generator_index(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::from_indices(letters))
    }

    pub fn parse_subset(&self, text: &str) -> Result<GenSet, ConfigError> {
        Ok(self.parse_word(text)?.support())
    }

    pub fn word_names(&self, w: &Word) -> Vec<String> {
        w.letters().map(|s| self.generators[s].clone()).collect()
    }

    pub fn element_names(&self, w: &Element) -> Vec<String> {
        self.word_names(w.canonical())
    }

    pub fn subset_names(&self, t: GenSet) -> Vec<String> {
        t.iter().map(|s| self.generators[s].clone()).collect()
    }
}
