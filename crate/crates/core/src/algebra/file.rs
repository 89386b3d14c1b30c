//! JSON algebra-definition files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_expr, Algebra, AlgebraError, BValue, RuleSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub left: String,
    pub right: String,
    pub target: Option<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub modulus: u32,
    pub families: Vec<String>,
    pub b: String,
    pub rules: Vec<RuleEntry>,
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<Algebra, AlgebraError> {
        let b: BValue = self.b.parse()?;
        let rules = self
            .rules
            .into_iter()
            .map(|r| {
                Ok(RuleSpec {
                    coeff: parse_expr(&r.coeff)?,
                    left: r.left,
                    right: r.right,
                    target: r.target,
                })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Algebra::new(self.name, self.modulus, self.families, b, rules)
    }
}

impl From<&Algebra> for AlgebraFile {
    fn from(a: &Algebra) -> Self {
        let nf = a.families().len();
        let rules = (0..nf)
            .flat_map(|l| (0..nf).map(move |r| (l, r)))
            .map(|(l, r)| {
                let rule = a.rule(l, r);
                RuleEntry {
                    left: a.families()[l].clone(),
                    right: a.families()[r].clone(),
                    target: rule.target.map(|t| a.families()[t].clone()),
                    coeff: rule.coeff.to_string(),
                }
            })
            .collect();
        AlgebraFile {
            name: a.name().to_string(),
            modulus: a.modulus(),
            families: a.families().to_vec(),
            b: a.b().to_string(),
            rules,
        }
    }
}

impl Algebra {
    pub fn from_json(text: &str) -> Result<Algebra, AlgebraError> {
        serde_json::from_str::<AlgebraFile>(text)?.into_algebra()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from(self)).expect("serializable")
    }
}

/// Reads and validates an algebra file. The axioms are not checked.
pub fn load_algebra(path: impl AsRef<Path>) -> Result<Algebra, AlgebraError> {
    Algebra::from_json(&std::fs::read_to_string(path)?)
}
