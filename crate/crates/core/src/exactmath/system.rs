use serde::{Deserialize, Serialize};

use super::{Ambient, ExactError, Poly, Rational, RationalMatrix};

/// Construction record carried alongside a generated system. The
/// `construction` tag names the recipe that produced the generators; the
/// optional fields describe its inputs and targets and are omitted from
/// serialized output when absent.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SystemMetadata {
    pub construction: String,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none", default)]
    pub box_size: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partition: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank_target: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base_generator_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base_metadata: Option<Box<SystemMetadata>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cleared_denominator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zeroed_factor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl SystemMetadata {
    pub fn named(construction: &str) -> Self {
        SystemMetadata { construction: construction.to_string(), ..Default::default() }
    }
}

/// A finite generating set for an ideal over a fixed ambient, together with
/// the metadata of how it was built. Generator order is part of the value:
/// constructions emit generators in a documented deterministic order and
/// serialization preserves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    ambient: Ambient,
    generators: Vec<Poly>,
    metadata: SystemMetadata,
}

impl PolySystem {
    pub fn new(ambient: Ambient, generators: Vec<Poly>, metadata: SystemMetadata) -> Self {
        for g in &generators {
            assert!(g.ambient() == &ambient, "generator ambient mismatch");
        }
        PolySystem { ambient, generators, metadata }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn metadata(&self) -> &SystemMetadata {
        &self.metadata
    }

    pub fn metadata_mut(&mut self) -> &mut SystemMetadata {
        &mut self.metadata
    }

    /// Largest total degree over all generators; 0 when every generator is
    /// zero or the list is empty.
    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn evaluate_all(&self, point: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        self.generators.iter().map(|g| g.evaluate(point)).collect()
    }

    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool, ExactError> {
        for g in &self.generators {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Jacobian matrix at a point: one row per generator, one column per
    /// ambient coordinate.
    pub fn jacobian_at(&self, point: &[Rational]) -> Result<RationalMatrix, ExactError> {
        if point.len() != self.ambient.len() {
            return Err(ExactError::AmbientMismatch {
                expected: self.ambient.len(),
                got: point.len(),
            });
        }
        let nvars = self.ambient.len();
        let mut rows = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut row = Vec::with_capacity(nvars);
            for v in 0..nvars {
                row.push(g.partial_derivative(v).evaluate(point)?);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(RationalMatrix::zeros(0, nvars));
        }
        Ok(RationalMatrix::from_rows(rows))
    }
}
