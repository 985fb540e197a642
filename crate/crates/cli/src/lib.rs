//! On-disk formats shared by the command-line tool and its tests: ideal
//! files, point files, and the report structures the subcommands emit.
//!
//! Everything is JSON with a fixed field order, so serializing the same
//! value twice gives byte-identical output and the golden-file suite can
//! compare raw bytes. Ideal files store each generator as a list of terms
//! in graded lexicographic order (total degree first, then the exponent
//! vector), highest term first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use schubertq_core::bottsamelson::PipelineReport;
use schubertq_core::exactmath::{Ambient, Monomial, Poly, PolySystem, Rational, SystemMetadata};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unsupported schema version `{0}`, expected `{SCHEMA_VERSION}`")]
    SchemaVersion(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("generator {generator}, term {term}: {got} exponents for {expected} variables")]
    ExponentArity { generator: usize, term: usize, expected: usize, got: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// One monomial with its coefficient. Coefficients serialize as `"p/q"`
/// strings; exponents line up with the file's variable list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: Rational,
    pub exps: Vec<u32>,
}

/// A polynomial system as stored on disk. Generator order is whatever the
/// construction produced; term order inside a generator is graded lex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealFile {
    pub schema_version: String,
    pub variables: Vec<String>,
    pub generators: Vec<Vec<TermRecord>>,
    pub metadata: SystemMetadata,
}

impl IdealFile {
    pub fn from_system(system: &PolySystem) -> Self {
        let generators = system
            .generators()
            .iter()
            .map(|poly| {
                let mut terms: Vec<(&Monomial, &Rational)> = poly.terms().collect();
                terms.sort_by(|a, b| {
                    b.0.degree()
                        .cmp(&a.0.degree())
                        .then_with(|| b.0.exponents().cmp(a.0.exponents()))
                });
                terms
                    .into_iter()
                    .map(|(mono, coeff)| TermRecord {
                        coeff: coeff.clone(),
                        exps: mono.exponents().to_vec(),
                    })
                    .collect()
            })
            .collect();
        IdealFile {
            schema_version: SCHEMA_VERSION.to_string(),
            variables: system.ambient().names().to_vec(),
            generators,
            metadata: system.metadata().clone(),
        }
    }

    pub fn to_system(&self) -> Result<PolySystem, FormatError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(FormatError::SchemaVersion(self.schema_version.clone()));
        }
        for i in 1..self.variables.len() {
            if self.variables[..i].contains(&self.variables[i]) {
                return Err(FormatError::DuplicateVariable(self.variables[i].clone()));
            }
        }
        let ambient = Ambient::new(self.variables.clone());
        let mut generators = Vec::with_capacity(self.generators.len());
        for (g, terms) in self.generators.iter().enumerate() {
            for (t, term) in terms.iter().enumerate() {
                if term.exps.len() != ambient.len() {
                    return Err(FormatError::ExponentArity {
                        generator: g,
                        term: t,
                        expected: ambient.len(),
                        got: term.exps.len(),
                    });
                }
            }
            generators.push(Poly::from_terms(
                &ambient,
                terms
                    .iter()
                    .map(|term| (Monomial::new(term.exps.clone()), term.coeff.clone())),
            ));
        }
        Ok(PolySystem::new(ambient, generators, self.metadata.clone()))
    }

    pub fn to_json_bytes(&self) -> Vec<u8> {
        to_canonical_json(self)
    }

    pub fn from_json_slice(bytes: &[u8]) -> Result<Self, FormatError> {
        Ok(serde_json::from_slice(bytes)?)
    }
}

/// Pretty-printed JSON with a trailing newline; the one serializer every
/// artifact goes through so identical values are identical bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("reports serialize");
    bytes.push(b'\n');
    bytes
}

/// A point file is a JSON array of `"p/q"` coordinate strings.
pub fn point_from_json_slice(bytes: &[u8]) -> Result<Vec<Rational>, FormatError> {
    Ok(serde_json::from_slice(bytes)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub on_variety: bool,
    pub jacobian_rank: usize,
    pub required_rank: usize,
    pub witness: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replayed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDegree {
    pub degree: usize,
    pub cells: usize,
    pub partitions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub m: usize,
    pub n: usize,
    pub betti: Vec<usize>,
    pub total: usize,
    pub basis: Vec<HomologyDegree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub seed: u64,
    pub sections_checked: usize,
    pub certified: bool,
    pub pipeline: PipelineReport,
}
