//! JSON bilinear-map files.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BilinearMap, BimapError};
use crate::algebra::{parse_expr, Algebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapTerm {
    pub gen: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<MapTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub algebra: String,
    pub entries: Vec<MapEntry>,
}

impl From<&BilinearMap> for MapFile {
    fn from(phi: &BilinearMap) -> Self {
        let alg = phi.algebra_arc();
        MapFile {
            algebra: alg.name().to_string(),
            entries: phi
                .entries()
                .map(|((x, y), e)| MapEntry {
                    left: alg.gen_name(*x),
                    right: alg.gen_name(*y),
                    value: e
                        .terms()
                        .map(|(g, p)| MapTerm {
                            gen: alg.gen_name(*g),
                            coeff: p.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl MapFile {
    /// Resolves generator names against `alg`; the file's algebra name must match.
    /// Repeated entries for one pair are summed.
    pub fn into_map(self, alg: &Arc<Algebra>) -> Result<BilinearMap, BimapError> {
        if self.algebra != alg.name() {
            return Err(BimapError::MismatchedAlgebra {
                expected: alg.name().to_string(),
                found: self.algebra,
            });
        }
        let mut phi = BilinearMap::zero(alg.clone());
        for entry in self.entries {
            let x = alg.parse_gen(&entry.left)?;
            let y = alg.parse_gen(&entry.right)?;
            let mut value = phi.get(x, y);
            for term in entry.value {
                value.add_term(alg.parse_gen(&term.gen)?, parse_expr(&term.coeff)?);
            }
            phi.set(x, y, value)?;
        }
        Ok(phi)
    }
}

impl BilinearMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MapFile::from(self)).expect("serializable")
    }

    pub fn from_json(alg: &Arc<Algebra>, text: &str) -> Result<BilinearMap, BimapError> {
        serde_json::from_str::<MapFile>(text)?.into_map(alg)
    }
}

pub fn load_map(alg: &Arc<Algebra>, path: impl AsRef<Path>) -> Result<BilinearMap, BimapError> {
    BilinearMap::from_json(alg, &std::fs::read_to_string(path)?)
}
