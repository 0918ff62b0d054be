//! JSON context configuration.
//!
//! A config document names the three ingredients of a context: a Lie
//! algebra by structure constants (omitted brackets default to zero, the
//! mirrored entry is filled in automatically), a group backend, and an
//! action of the group on the algebra. Rationals are written as JSON
//! integers or as "p/q" strings; group elements are written as a Cayley
//! index, a permutation in one-line form, or a rational matrix, whichever
//! the group kind expects.
//!
//! Loading builds the context and returns any validation sample elements
//! listed in the file; running the validators is left to the caller so
//! that failures can be reported rather than swallowed.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::algebra::LieAlgebra;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement};
use crate::linalg::SMat;
use crate::reps::Representation;
use crate::scalar::Scalar;

/// A rational in a config file: a JSON integer or a "p/q" string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    fn to_scalar(&self) -> Result<Scalar> {
        match self {
            Rational::Int(n) => Ok(Scalar::from_int(*n)),
            Rational::Text(s) => s.parse(),
        }
    }
}

fn to_coords(vals: &[Rational]) -> Result<Vec<Scalar>> {
    vals.iter().map(Rational::to_scalar).collect()
}

fn to_matrix(rows: &[Vec<Rational>]) -> Result<SMat> {
    let rows = rows.iter().map(|r| to_coords(r)).collect::<Result<Vec<_>>>()?;
    SMat::from_rows(rows)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    value: Vec<Rational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraConfig {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GroupConfig {
    Cayley { table: Vec<Vec<u16>> },
    Permutation { degree: usize },
    Matrix { size: usize },
}

/// A group element literal; which shape is legal depends on the group kind.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ElementConfig {
    Index(u16),
    OneLine(Vec<u8>),
    Matrix(Vec<Vec<Rational>>),
}

impl ElementConfig {
    fn realize(&self, group: &Group) -> Result<GroupElement> {
        let elem = match (self, group) {
            (ElementConfig::Index(k), Group::Cayley { .. }) => GroupElement::Cayley(*k),
            (ElementConfig::OneLine(v), Group::Permutation { .. }) => {
                GroupElement::Perm(v.clone())
            }
            (ElementConfig::Matrix(rows), Group::Matrix { .. }) => {
                GroupElement::Mat(to_matrix(rows)?)
            }
            _ => {
                return Err(Error::GroupVariant(
                    "group element literal does not match the group kind".into(),
                ))
            }
        };
        group.contains(&elem)?;
        Ok(elem)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepEntry {
    element: ElementConfig,
    matrix: Vec<Vec<Rational>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RepConfig {
    Trivial,
    /// The algebra realized by matrices (one per basis vector, bracket =
    /// commutator); matrix group elements act by conjugation.
    Adjoint { realization: Vec<Vec<Vec<Rational>>> },
    /// Explicit action matrix per group element.
    Table { entries: Vec<RepEntry> },
}

/// Top-level config document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextConfig {
    #[serde(default)]
    label: Option<String>,
    algebra: AlgebraConfig,
    group: GroupConfig,
    representation: RepConfig,
    /// Optional group elements handed to the validators; useful for matrix
    /// groups, whose homomorphism law can only be spot-checked.
    #[serde(default)]
    samples: Vec<ElementConfig>,
}

impl ContextConfig {
    /// Build the context plus the realized validation samples.
    pub fn build(&self) -> Result<(Context, Vec<GroupElement>)> {
        let dim = self.algebra.dim;
        let names: Vec<String> = match &self.algebra.basis {
            Some(given) => {
                if given.len() != dim {
                    return Err(Error::Dimension(format!(
                        "{} basis names for a dimension-{dim} algebra",
                        given.len()
                    )));
                }
                given.clone()
            }
            None => (1..=dim).map(|k| format!("e{k}")).collect(),
        };
        for (idx, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
            let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !(head_ok && tail_ok) {
                return Err(Error::Invalid(format!(
                    "basis name {name:?} is not an identifier"
                )));
            }
            if names[..idx].contains(name) {
                return Err(Error::Invalid(format!("duplicate basis name {name:?}")));
            }
        }

        let mut entries = Vec::with_capacity(self.algebra.brackets.len());
        for b in &self.algebra.brackets {
            entries.push((b.i, b.j, to_coords(&b.value)?));
        }
        let algebra = LieAlgebra::from_brackets(names, &entries)?;

        let group = match &self.group {
            GroupConfig::Cayley { table } => Group::cayley(table.clone())?,
            GroupConfig::Permutation { degree } => Group::permutation(*degree)?,
            GroupConfig::Matrix { size } => Group::matrix(*size)?,
        };

        let rep = match &self.representation {
            RepConfig::Trivial => Representation::Trivial,
            RepConfig::Adjoint { realization } => {
                let mats = realization
                    .iter()
                    .map(|m| to_matrix(m))
                    .collect::<Result<Vec<_>>>()?;
                Representation::Conjugation { realization: mats }
            }
            RepConfig::Table { entries } => {
                let mut map = BTreeMap::new();
                for entry in entries {
                    let elem = entry.element.realize(&group)?;
                    let matrix = to_matrix(&entry.matrix)?;
                    if map.insert(elem, matrix).is_some() {
                        return Err(Error::Invalid(
                            "duplicate action table entry for one group element".into(),
                        ));
                    }
                }
                Representation::Table { entries: map }
            }
        };

        let samples = self
            .samples
            .iter()
            .map(|e| e.realize(&group))
            .collect::<Result<Vec<_>>>()?;

        let label = self.label.clone().unwrap_or_else(|| "context".to_string());
        let ctx = Context::new(label, algebra, group, rep)?;
        Ok((ctx, samples))
    }
}

/// Parse a JSON document and build its context.
pub fn parse_context(text: &str) -> Result<(Context, Vec<GroupElement>)> {
    let doc: ContextConfig =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))?;
    doc.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::contexts;

    #[test]
    fn abelian_cyclic_trivial_document_loads_and_validates() {
        let text = r#"{
            "label": "tiny",
            "algebra": { "dim": 3 },
            "group": { "kind": "cayley",
                       "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]] },
            "representation": { "kind": "trivial" }
        }"#;
        let (ctx, samples) = parse_context(text).unwrap();
        assert_eq!(ctx.label(), "tiny");
        assert_eq!(ctx.dim(), 3);
        assert!(samples.is_empty());
        let report = ctx.validate(None);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn conjugation_document_matches_the_builtin_action() {
        let text = r#"{
            "algebra": {
                "dim": 3,
                "brackets": [ { "i": 0, "j": 1, "value": [0, 0, 1] } ]
            },
            "group": { "kind": "matrix", "size": 3 },
            "representation": { "kind": "adjoint", "realization": [
                [[0,1,0],[0,0,0],[0,0,0]],
                [[0,0,0],[0,0,1],[0,0,0]],
                [[0,0,1],[0,0,0],[0,0,0]]
            ] },
            "samples": [
                [[1,2,0],[0,1,0],[0,0,1]],
                [[1,0,"1/2"],[0,1,3],[0,0,1]]
            ]
        }"#;
        let (ctx, samples) = parse_context(text).unwrap();
        assert_eq!(samples.len(), 2);
        let report = ctx.validate(Some(&samples));
        assert!(report.passed(), "{report}");
        let builtin = contexts::c2();
        for p in &samples {
            assert_eq!(
                ctx.act_matrix(p).unwrap(),
                builtin.act_matrix(p).unwrap()
            );
        }
    }

    #[test]
    fn action_table_document_loads() {
        // Z/2 acting on the abelian plane by the sign flip; any invertible
        // matrix is a bracket automorphism when all brackets vanish.
        let text = r#"{
            "algebra": { "dim": 2, "basis": ["x", "y"] },
            "group": { "kind": "cayley", "table": [[0,1],[1,0]] },
            "representation": { "kind": "table", "entries": [
                { "element": 0, "matrix": [[1,0],[0,1]] },
                { "element": 1, "matrix": [[-1,0],[0,-1]] }
            ] }
        }"#;
        let (ctx, _) = parse_context(text).unwrap();
        let report = ctx.validate(None);
        assert!(report.passed(), "{report}");
        assert_eq!(ctx.algebra().index_of("y"), Some(1));
    }

    #[test]
    fn mismatched_element_literals_are_rejected() {
        let text = r#"{
            "algebra": { "dim": 1 },
            "group": { "kind": "cayley", "table": [[0]] },
            "representation": { "kind": "table", "entries": [
                { "element": [[1]], "matrix": [[1]] }
            ] }
        }"#;
        assert!(parse_context(text).is_err());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        // Unknown top-level field.
        assert!(parse_context(r#"{ "algebra": { "dim": 1 }, "group": { "kind": "cayley", "table": [[0]] }, "representation": { "kind": "trivial" }, "extra": 1 }"#).is_err());
        // Bad rational text.
        assert!(parse_context(r#"{ "algebra": { "dim": 2, "brackets": [ { "i": 0, "j": 1, "value": ["1//2", 0] } ] }, "group": { "kind": "cayley", "table": [[0]] }, "representation": { "kind": "trivial" } }"#).is_err());
        // Duplicate basis names.
        assert!(parse_context(r#"{ "algebra": { "dim": 2, "basis": ["x", "x"] }, "group": { "kind": "cayley", "table": [[0]] }, "representation": { "kind": "trivial" } }"#).is_err());
        // Basis name that cannot be referenced from an expression.
        assert!(parse_context(r#"{ "algebra": { "dim": 1, "basis": ["1bad"] }, "group": { "kind": "cayley", "table": [[0]] }, "representation": { "kind": "trivial" } }"#).is_err());
    }

    #[test]
    fn invalid_actions_build_but_fail_validation() {
        // The shear e1 -> e1 + e3 is a bracket automorphism, but its square
        // is not the identity, so the order-2 table breaks the
        // homomorphism law and the validator must say so.
        let text = r#"{
            "algebra": {
                "dim": 3,
                "brackets": [ { "i": 0, "j": 1, "value": [0, 0, 1] } ]
            },
            "group": { "kind": "cayley", "table": [[0,1],[1,0]] },
            "representation": { "kind": "table", "entries": [
                { "element": 0, "matrix": [[1,0,0],[0,1,0],[0,0,1]] },
                { "element": 1, "matrix": [[1,0,0],[0,1,0],[1,0,1]] }
            ] }
        }"#;
        let (ctx, _) = parse_context(text).unwrap();
        let report = ctx.validate(None);
        assert!(!report.passed());
    }
}
