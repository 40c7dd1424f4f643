//! Majorana-to-Pauli assignments and their JSON form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::tree::TernaryTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "jw")]
    JordanWigner,
    #[serde(rename = "bk")]
    BravyiKitaev,
    #[serde(rename = "btt")]
    BalancedTernaryTree,
    #[serde(rename = "hatt-unopt")]
    HattUnopt,
    #[serde(rename = "hatt")]
    Hatt,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::JordanWigner, Method::BravyiKitaev, Method::BalancedTernaryTree, Method::HattUnopt, Method::Hatt];

    pub fn name(self) -> &'static str {
        match self {
            Method::JordanWigner => "jw",
            Method::BravyiKitaev => "bk",
            Method::BalancedTernaryTree => "btt",
            Method::HattUnopt => "hatt-unopt",
            Method::Hatt => "hatt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mapping method {s:?}")))
    }
}

/// `strings[j]` represents Majorana operator `M_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    n_modes: usize,
    method: Method,
    vacuum_preserving: bool,
    strings: Vec<PauliString>,
    tree: Option<TernaryTree>,
}

impl Mapping {
    /// Checks shape only (2N strings on N qubits). Algebraic validity is
    /// checked separately by the `verify` module.
    pub fn new(n_modes: usize, method: Method, vacuum_preserving: bool, strings: Vec<PauliString>) -> Result<Self> {
        if strings.len() != 2 * n_modes {
            return Err(Error::InvalidArgument(format!(
                "{n_modes} modes need {} strings, got {}",
                2 * n_modes,
                strings.len()
            )));
        }
        if let Some(s) = strings.iter().find(|s| s.n_qubits() != n_modes) {
            return Err(Error::LengthMismatch { left: s.n_qubits(), right: n_modes });
        }
        Ok(Self { n_modes, method, vacuum_preserving, strings, tree: None })
    }

    pub fn with_tree(mut self, tree: TernaryTree) -> Self {
        self.tree = Some(tree);
        self
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Whether the constructor claims vacuum preservation.
    pub fn vacuum_preserving(&self) -> bool {
        self.vacuum_preserving
    }

    pub fn strings(&self) -> &[PauliString] {
        &self.strings
    }

    pub fn string(&self, majorana: usize) -> &PauliString {
        &self.strings[majorana]
    }

    pub fn tree(&self) -> Option<&TernaryTree> {
        self.tree.as_ref()
    }

    pub fn to_json(&self) -> String {
        let file = MappingFile {
            n_modes: self.n_modes,
            method: self.method,
            vacuum_preserving: self.vacuum_preserving,
            strings: self.strings.iter().map(PauliString::to_dense).collect(),
        };
        serde_json::to_string_pretty(&file).expect("mapping serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MappingFile = serde_json::from_str(text)?;
        let strings = file
            .strings
            .iter()
            .map(|s| PauliString::parse_dense(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.n_modes, file.method, file.vacuum_preserving, strings)
    }
}

#[derive(Serialize, Deserialize)]
struct MappingFile {
    n_modes: usize,
    method: Method,
    vacuum_preserving: bool,
    strings: Vec<String>,
}
