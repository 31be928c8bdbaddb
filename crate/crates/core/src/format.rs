//! JSON file format for graded algebras.
//!
//! ```json
//! {
//!   "field": { "p": 3 },
//!   "group": { "elements": ["e", "c"], "table": [["e", "c"], ["c", "e"]], "identity": "e" },
//!   "basis": [{ "name": "1", "degree": "e" }, { "name": "x", "degree": "c" }],
//!   "structure": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
//!   "unit": [1, 0]
//! }
//! ```
//!
//! `structure` lists `b_i b_j ∋ coeff b_k` as `[i, j, k, coeff]` with
//! `0 < coeff < p`, each triple at most once. Group elements are referenced
//! by label. Writing sorts the structure constants, so writing a parsed
//! file reproduces it byte for byte whenever it was written by this module.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub identity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub group: GroupSpec,
    pub basis: Vec<BasisSpec>,
    pub structure: Vec<(usize, usize, usize, u32)>,
    pub unit: Vec<u32>,
}

pub fn group_spec(g: &FiniteGroup) -> GroupSpec {
    GroupSpec {
        elements: g.labels().to_vec(),
        table: g.table_rows().iter().map(|r| r.iter().map(|&x| g.label(x).to_string()).collect()).collect(),
        identity: g.label(g.identity()).to_string(),
    }
}

pub fn parse_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let index: HashMap<&str, usize> = spec.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let look = |s: &str| index.get(s).copied().ok_or_else(|| Error::Validation(format!("unknown group element {s}")));
    let table = spec
        .table
        .iter()
        .map(|r| r.iter().map(|s| look(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_table(spec.elements.clone(), table, look(&spec.identity)?)
}

impl AlgebraFile {
    pub fn from_algebra(a: &GradedAlgebra) -> Self {
        let g = a.group();
        let mut structure = a.entries();
        structure.sort_unstable();
        AlgebraFile {
            field: FieldSpec { p: a.field().p() },
            group: group_spec(g),
            basis: a
                .names()
                .iter()
                .zip(a.degrees())
                .map(|(n, &d)| BasisSpec { name: n.clone(), degree: g.label(d).to_string() })
                .collect(),
            structure,
            unit: a.unit().to_vec(),
        }
    }

    /// Parses and fully validates (group axioms, grading, associativity,
    /// unit), applying the size limits first.
    pub fn to_algebra(&self, limits: &Limits) -> Result<GradedAlgebra> {
        let p = self.field.p;
        limits.check(p, self.group.elements.len(), self.basis.len())?;
        let f = PrimeField::new(p)?;
        let g = Arc::new(parse_group(&self.group)?);
        let degrees = self.basis.iter().map(|b| g.parse_element(&b.degree)).collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        for &(i, j, k, c) in &self.structure {
            if c == 0 || c >= p {
                return Err(Error::Validation(format!("coefficient {c} of ({i},{j},{k}) is not in 1..p")));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::Validation(format!("structure constant ({i},{j},{k}) listed twice")));
            }
        }
        if let Some(&u) = self.unit.iter().find(|&&u| u >= p) {
            return Err(Error::Validation(format!("unit coordinate {u} is not reduced mod p")));
        }
        let names = self.basis.iter().map(|b| b.name.clone()).collect();
        GradedAlgebra::new(f, g, names, degrees, &self.structure, self.unit.clone())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Validation(format!("bad algebra file: {e}")))
    }
}

pub fn write_algebra(a: &GradedAlgebra) -> String {
    AlgebraFile::from_algebra(a).to_json()
}

pub fn read_algebra(s: &str, limits: &Limits) -> Result<GradedAlgebra> {
    AlgebraFile::from_json(s)?.to_algebra(limits)
}

/// A corpus file: named algebra files.
///
/// ```json
/// { "instances": [ { "name": "dual numbers", "algebra": { ... } } ] }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub instances: Vec<NamedAlgebraFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedAlgebraFile {
    pub name: String,
    pub algebra: AlgebraFile,
}

/// Parses and validates every instance of a corpus file.
pub fn read_corpus(s: &str, limits: &Limits) -> Result<Vec<crate::corpus::CorpusEntry>> {
    let file: CorpusFile = serde_json::from_str(s).map_err(|e| Error::Validation(format!("bad corpus file: {e}")))?;
    file.instances
        .iter()
        .map(|n| {
            let a = n.algebra.to_algebra(limits).map_err(|e| match e {
                Error::Validation(m) => Error::Validation(format!("{}: {m}", n.name)),
                other => other,
            })?;
            Ok(crate::corpus::CorpusEntry {
                name: n.name.clone(),
                algebra: Arc::new(a),
                expect_qf: None,
                graded_simple: false,
            })
        })
        .collect()
}

pub fn write_corpus(entries: &[crate::corpus::CorpusEntry]) -> String {
    let file = CorpusFile {
        instances: entries
            .iter()
            .map(|e| NamedAlgebraFile { name: e.name.clone(), algebra: AlgebraFile::from_algebra(&e.algebra) })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}
