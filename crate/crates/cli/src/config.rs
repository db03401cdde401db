//! Serializable job descriptions. Every CLI invocation is first turned into a
//! [`JobConfig`], so a run can be replayed from its JSON form.

use std::path::PathBuf;

use kmcrystal::{validate_cartan, CartanData};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CONFIG_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CartanSource {
    /// A builtin name such as `A2`, `G2` or `A1^(1)`.
    Builtin(String),
    /// Rows of the matrix `a_ij = ⟨α_j, α_i^∨⟩`.
    Matrix(Vec<Vec<i64>>),
    /// A JSON file holding either a bare matrix or `{"matrix": …, "symmetrizer": …}`.
    File(PathBuf),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CartanFile {
    Bare(Vec<Vec<i64>>),
    Full { matrix: Vec<Vec<i64>>, symmetrizer: Option<Vec<i64>> },
}

impl CartanSource {
    pub fn load(&self) -> Result<CartanData, CliError> {
        match self {
            CartanSource::Builtin(name) => Ok(CartanData::from_name(name)?),
            CartanSource::Matrix(m) => Ok(validate_cartan(m.clone(), None)?),
            CartanSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
                let parsed: CartanFile = serde_json::from_str(&text)
                    .map_err(|e| kmcrystal::Error::Parse(format!("{}: {e}", path.display())))?;
                Ok(match parsed {
                    CartanFile::Bare(m) => validate_cartan(m, None)?,
                    CartanFile::Full { matrix, symmetrizer } => validate_cartan(matrix, symmetrizer)?,
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    E,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    /// Inverse dominance order on weight tuples with equal totals.
    Tuple,
    /// Dominance order on single weights.
    Weight,
    /// Sum-then-lexicographic order on exponent sequences.
    Exponents,
    /// Plain lexicographic order on exponent sequences.
    Lex,
}

/// One tensor factor of a label: coroot pairings of its weight, plus an
/// optional string parametrization when the weight space is not one-dimensional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub pairings: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub string: Option<Vec<u32>>,
}

/// A string word as a finite prefix followed by a repeating cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSpec {
    #[serde(default)]
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    Crystal,
    TensorOp { label: Vec<FactorSpec>, op: Op, i: usize },
    Signature { label: Vec<FactorSpec>, i: usize },
    Decompose,
    StringParam { label: Vec<FactorSpec>, word: Option<WordSpec> },
    Compare { mode: CompareMode, a: String, b: String, word: Option<WordSpec> },
    Condense { partition: Vec<usize>, p: usize, r: usize },
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Crystal => "crystal",
            Command::TensorOp { .. } => "tensor-op",
            Command::Signature { .. } => "signature",
            Command::Decompose => "decompose",
            Command::StringParam { .. } => "string-param",
            Command::Compare { .. } => "compare",
            Command::Condense { .. } => "condense",
            Command::Verify => "verify",
        }
    }

    fn needs_crystals(&self) -> bool {
        match self {
            Command::Condense { .. } => false,
            Command::Compare { mode, .. } => matches!(mode, CompareMode::Tuple | CompareMode::Weight),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub cartan: Option<CartanSource>,
    /// Highest weights of the tensor factors, as coroot pairings.
    #[serde(default)]
    pub hw: Vec<Vec<i64>>,
    /// Depth cutoff for crystal generation; required outside finite type.
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub seed: u64,
    pub command: Command,
}

impl JobConfig {
    /// Structural checks that do not need any computation.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != CONFIG_SCHEMA_VERSION {
            return Err(CliError::Usage(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.command.needs_crystals() {
            if self.cartan.is_none() {
                return Err(CliError::Usage(format!("{} requires --cartan", self.command.name())));
            }
            let needs_hw = !matches!(self.command, Command::Compare { .. });
            if needs_hw && self.hw.is_empty() {
                return Err(CliError::Usage(format!("{} requires --hw", self.command.name())));
            }
        }
        if matches!(self.command, Command::Crystal) && self.hw.len() != 1 {
            return Err(CliError::Usage("crystal takes exactly one highest weight".into()));
        }
        if self.format == Format::Dot && !matches!(self.command, Command::Crystal) {
            return Err(CliError::Usage(format!(
                "--format dot is only available for crystal, not {}",
                self.command.name()
            )));
        }
        Ok(())
    }
}
