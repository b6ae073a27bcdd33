//! Subgroup descriptions: inline generator lists or JSON files of the form
//! `{"ambientRank": 2, "modulus": 3, "generators": [{"word": "xy", "residue": 1}]}`.

use std::path::Path;

use hnrank::{CoreGraph, VoltageGraph, Word};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::syntax::{parse_word, print_word, Syntax};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SubgroupSpec {
    pub ambient_rank: usize,
    /// 0 and 1 both mean the plain free group.
    #[serde(default)]
    pub modulus: u64,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub word: String,
    #[serde(default)]
    pub residue: u64,
}

/// A parsed subgroup of `F_rank × Z/modulus` (modulus ≥ 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub rank: usize,
    pub modulus: u64,
    pub generators: Vec<(Word, u64)>,
}

impl SubgroupSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("subgroup file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn resolve(&self, syntax: Syntax) -> Result<Subgroup, CliError> {
        if self.ambient_rank == 0 {
            return Err(CliError::Parse("ambientRank must be ≥ 1".into()));
        }
        let modulus = self.modulus.max(1);
        let generators = self
            .generators
            .iter()
            .map(|g| {
                if modulus > 1 && g.residue >= modulus {
                    return Err(CliError::Parse(format!(
                        "residue {} of {:?} not reduced mod {modulus}",
                        g.residue, g.word
                    )));
                }
                Ok((parse_word(&g.word, syntax, self.ambient_rank)?, g.residue % modulus))
            })
            .collect::<Result<_, _>>()?;
        Ok(Subgroup {
            rank: self.ambient_rank,
            modulus,
            generators,
        })
    }
}

impl Subgroup {
    pub fn new(rank: usize, modulus: u64, generators: Vec<(Word, u64)>) -> Result<Self, CliError> {
        SubgroupSpec {
            ambient_rank: rank,
            modulus,
            generators: generators
                .iter()
                .map(|(w, c)| GeneratorSpec {
                    word: print_word(w, Syntax::Indexed),
                    residue: *c,
                })
                .collect(),
        }
        .resolve(Syntax::Indexed)
    }

    pub fn to_spec(&self, syntax: Syntax) -> SubgroupSpec {
        SubgroupSpec {
            ambient_rank: self.rank,
            modulus: self.modulus,
            generators: self
                .generators
                .iter()
                .map(|(w, c)| GeneratorSpec {
                    word: print_word(w, syntax),
                    residue: *c,
                })
                .collect(),
        }
    }

    pub fn voltage_graph(&self) -> Result<VoltageGraph, CliError> {
        Ok(VoltageGraph::fold(&self.generators, self.rank, self.modulus)?)
    }

    /// Core graph of the projection to `F_rank` (residues ignored).
    pub fn core_graph(&self) -> Result<CoreGraph, CliError> {
        let words: Vec<Word> = self.generators.iter().map(|(w, _)| w.clone()).collect();
        Ok(CoreGraph::fold_from_generators(&words, self.rank)?)
    }
}
