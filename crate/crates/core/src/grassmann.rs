//! The embedded real Grassmannian of m-planes in R^{m+n}: the matrix model
//! cut out by symmetry, idempotency and trace, canonical flag projectors,
//! exact rational point sampling, and membership tests.

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactmath::{
    Ambient, Poly, PolyMatrix, PolySystem, Rational, RationalMatrix, SystemMetadata,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("flag index {index} exceeds the ambient size {size}")]
    InvalidFlagIndex { index: usize, size: usize },
    #[error("spanning set is not a basis of an m-plane (dependent or wrong count)")]
    DegenerateSpan,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    AmbientMismatch { expected: usize, rows: usize, cols: usize },
    #[error("matrix is not a symmetric idempotent of trace {m}")]
    NotOnGrassmannian { m: usize },
}

/// Row-major coordinate names for a `size`×`size` matrix block: `x11`, `x12`,
/// .. for single-digit sizes, `x1_1` style with a separator otherwise.
pub(crate) fn matrix_entry_names(prefix: &str, size: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(size * size);
    for i in 1..=size {
        for j in 1..=size {
            if size <= 9 {
                names.push(format!("{prefix}{i}{j}"));
            } else {
                names.push(format!("{prefix}{i}_{j}"));
            }
        }
    }
    names
}

/// Ambient of the (m+n)² matrix coordinates x_{ij}.
pub fn grassmann_ambient(size: usize) -> Ambient {
    Ambient::new(matrix_entry_names("x", size))
}

/// The diagonal projector D_ℓ onto the first ℓ coordinates of R^N.
pub fn flag_projector(ell: usize, size: usize) -> Result<RationalMatrix, GrassmannError> {
    if ell > size {
        return Err(GrassmannError::InvalidFlagIndex { index: ell, size });
    }
    let mut d = RationalMatrix::zeros(size, size);
    for i in 0..ell {
        d.set(i, i, Rational::one());
    }
    Ok(d)
}

/// The symmetric-idempotent-trace generator block for one matrix factor
/// living at `offset` in the ambient: symmetry differences for i < j
/// (row-major), the (m+n)² idempotency entries of X²−X (row-major), then the
/// trace polynomial Σ x_{ii} − trace_value.
pub(crate) fn grassmann_block_generators(
    ambient: &Ambient,
    offset: usize,
    size: usize,
    trace_value: usize,
) -> Vec<Poly> {
    let x = PolyMatrix::of_variables(ambient, offset, size, size);
    let mut generators = Vec::with_capacity(size * (size - 1) / 2 + size * size + 1);
    for i in 0..size {
        for j in i + 1..size {
            generators.push(x.get(i, j) - x.get(j, i));
        }
    }
    let idem = x.mul(&x).sub(&x);
    generators.extend(idem.entries().cloned());
    let trace = &x.trace() - &Poly::constant(ambient, Rational::from_int(trace_value as i64));
    generators.push(trace);
    generators
}

/// Generators of the Grassmannian ideal over the (m+n)² matrix coordinates,
/// in this fixed order: the (m+n)(m+n−1)/2 symmetry differences x_{ij}−x_{ji}
/// for i < j (row-major), the (m+n)² entries of X²−X (row-major), and the
/// trace polynomial Σ x_{ii} − m.
pub fn grassmann_ideal(m: usize, n: usize) -> PolySystem {
    assert!(m >= 1 && n >= 1, "box sides must be positive");
    let size = m + n;
    let ambient = grassmann_ambient(size);
    let generators = grassmann_block_generators(&ambient, 0, size, m);

    let mut metadata = SystemMetadata::named("grassmann");
    metadata.box_size = Some([m, n]);
    metadata.dimension = Some(m * n);
    PolySystem::new(ambient, generators, metadata)
}

/// Position of the trace generator inside [`grassmann_ideal`]'s list (it is
/// the last one; callers that need the trace-free subsystem use this).
pub fn trace_generator_index(m: usize, n: usize) -> usize {
    let size = m + n;
    size * (size - 1) / 2 + size * size
}

/// A point of the Grassmannian: a symmetric idempotent of trace m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannPoint {
    matrix: RationalMatrix,
    m: usize,
    n: usize,
}

impl GrassmannPoint {
    pub fn new(matrix: RationalMatrix, m: usize, n: usize) -> Result<Self, GrassmannError> {
        let size = m + n;
        if matrix.rows() != size || matrix.cols() != size {
            return Err(GrassmannError::AmbientMismatch {
                expected: size,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let idempotent = matrix.mul(&matrix) == matrix;
        if !matrix.is_symmetric() || !idempotent || matrix.trace() != Rational::from_int(m as i64)
        {
            return Err(GrassmannError::NotOnGrassmannian { m });
        }
        Ok(GrassmannPoint { matrix, m, n })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major coordinates, matching the [`grassmann_ambient`] order.
    pub fn coordinates(&self) -> Vec<Rational> {
        self.matrix.flatten()
    }
}

impl Serialize for GrassmannPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Rational>> = (0..self.matrix.rows())
            .map(|i| self.matrix.row(i).to_vec())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GrassmannPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows: Vec<Vec<Rational>> = Vec::deserialize(deserializer)?;
        let matrix = RationalMatrix::from_rows(rows);
        let trace = matrix.trace();
        if !trace.is_integer() || trace.is_negative() {
            return Err(D::Error::custom("matrix trace is not a natural number"));
        }
        let m: usize = trace
            .numer()
            .try_into()
            .map_err(|_| D::Error::custom("matrix trace out of range"))?;
        let n = matrix
            .rows()
            .checked_sub(m)
            .ok_or_else(|| D::Error::custom("matrix trace exceeds its size"))?;
        GrassmannPoint::new(matrix, m, n).map_err(D::Error::custom)
    }
}

/// Orthogonal projection onto the span of `m` independent vectors, computed
/// exactly as A(AᵀA)⁻¹Aᵀ with the vectors as the columns of A.
pub fn projection_onto_span(
    vectors: &[Vec<Rational>],
    m: usize,
    n: usize,
) -> Result<GrassmannPoint, GrassmannError> {
    let size = m + n;
    if vectors.len() != m {
        return Err(GrassmannError::DegenerateSpan);
    }
    for v in vectors {
        if v.len() != size {
            return Err(GrassmannError::AmbientMismatch {
                expected: size,
                rows: v.len(),
                cols: 1,
            });
        }
    }
    let a = RationalMatrix::from_columns(vectors);
    let at = a.transpose();
    let gram = at.mul(&a);
    let inv = gram.inverse().ok_or(GrassmannError::DegenerateSpan)?;
    let p = a.mul(&inv).mul(&at);
    GrassmannPoint::new(p, m, n)
}

/// Membership in the Grassmannian: symmetric, idempotent, trace m. This is
/// exactly the vanishing of every [`grassmann_ideal`] generator.
pub fn is_on_grassmannian(
    p: &RationalMatrix,
    m: usize,
    n: usize,
) -> Result<bool, GrassmannError> {
    let size = m + n;
    if p.rows() != size || p.cols() != size {
        return Err(GrassmannError::AmbientMismatch {
            expected: size,
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    Ok(p.is_symmetric() && p.mul(p) == *p && p.trace() == Rational::from_int(m as i64))
}

/// Draws a uniform-ish rational point: spans with m integer vectors with
/// entries in −3..=3, rejecting dependent draws. Small integer coordinates
/// keep the projection's denominators small.
pub fn sample_grassmann_point<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
) -> GrassmannPoint {
    let size = m + n;
    loop {
        let vectors: Vec<Vec<Rational>> = (0..m)
            .map(|_| {
                (0..size)
                    .map(|_| Rational::from_int(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        if RationalMatrix::from_columns(&vectors).rank() != m {
            continue;
        }
        match projection_onto_span(&vectors, m, n) {
            Ok(point) => return point,
            Err(_) => continue,
        }
    }
}
