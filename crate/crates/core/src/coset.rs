//! Manifest-driven dimension bookkeeping for coset spaces.
//!
//! A manifest is a JSON list of identities `{"name", "lhs", "rhs"}` whose sides are
//! lists of terms. A term is an integer or a list of integers standing for their
//! product, so `[[7, 26], 3]` reads `7·26 + 3`. Optional fields: `"relation"` (`"eq"`,
//! the default, or `"le"`) and `"kind"` (`"dimension"`, `"representation"`,
//! `"inequality"`).

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The manifest shipped with the crate.
pub const DEFAULT_MANIFEST: &str = include_str!("../data/dims.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Int(i64),
    Product(Vec<i64>),
}

impl Term {
    pub fn value(&self) -> Result<i64> {
        match self {
            Term::Int(v) => Ok(*v),
            Term::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::Invalid("empty product term".into()));
                }
                fs.iter().try_fold(1i64, |acc, f| {
                    acc.checked_mul(*f)
                        .ok_or_else(|| Error::Invalid("product term overflows".into()))
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    #[default]
    Eq,
    Le,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    #[default]
    Dimension,
    Representation,
    Inequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    #[serde(default)]
    pub kind: IdentityKind,
    #[serde(default)]
    pub relation: Relation,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

fn side(terms: &[Term]) -> Result<i64> {
    if terms.is_empty() {
        return Err(Error::Invalid("empty side".into()));
    }
    terms.iter().try_fold(0i64, |acc, t| {
        acc.checked_add(t.value()?)
            .ok_or_else(|| Error::Invalid("sum overflows".into()))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditLine {
    pub name: String,
    pub kind: IdentityKind,
    pub relation: Relation,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl Identity {
    pub fn evaluate(&self) -> Result<AuditLine> {
        let (l, r) = (side(&self.lhs)?, side(&self.rhs)?);
        let holds = match self.relation {
            Relation::Eq => l == r,
            Relation::Le => l <= r,
        };
        Ok(AuditLine {
            name: self.name.clone(),
            kind: self.kind,
            relation: self.relation,
            lhs: l,
            rhs: r,
            holds,
        })
    }
}

pub fn parse_manifest(json: &str) -> Result<Vec<Identity>> {
    let m: Vec<Identity> = serde_json::from_str(json)?;
    let mut names = std::collections::BTreeSet::new();
    for id in &m {
        if id.name.is_empty() || !names.insert(id.name.as_str()) {
            return Err(Error::Invalid(format!("missing or duplicate name {:?}", id.name)));
        }
    }
    Ok(m)
}

pub fn default_manifest() -> Vec<Identity> {
    parse_manifest(DEFAULT_MANIFEST).expect("shipped manifest parses")
}

/// Evaluates every identity, in manifest order.
pub fn audit(manifest: &[Identity]) -> Result<Vec<AuditLine>> {
    manifest.iter().map(Identity::evaluate).collect()
}

/// Only the identities of one kind.
pub fn audit_kind(manifest: &[Identity], kind: IdentityKind) -> Result<Vec<AuditLine>> {
    manifest
        .iter()
        .filter(|i| i.kind == kind)
        .map(Identity::evaluate)
        .collect()
}
