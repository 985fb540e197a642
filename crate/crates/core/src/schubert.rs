//! Schubert varieties and open cells for the canonical flag, cut out by
//! minor conditions on (X−I)·D_ℓ, plus the block embedding of a smaller
//! Grassmannian as a Schubert variety.

use rand::Rng;
use thiserror::Error;

use crate::exactmath::{PolyMatrix, PolySystem, Rational, RationalMatrix};
use crate::grassmann::{
    flag_projector, grassmann_ideal, is_on_grassmannian, projection_onto_span, GrassmannPoint,
};
use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("point is not on the ambient Grassmannian")]
    NotOnGrassmannian,
    #[error("no block embedding of a ({mp},{np}) Grassmannian into the ({m},{n}) one")]
    InvalidEmbedding { mp: usize, np: usize, m: usize, n: usize },
}

/// For a projection P onto W, dim(W ∩ R_ℓ) computed exactly as
/// ℓ − rank((P−I)D_ℓ); the intersection with the first ℓ coordinates is the
/// kernel of P−I restricted to them.
fn flag_intersection_dim(p: &RationalMatrix, ell: usize) -> usize {
    let size = p.rows();
    let shifted = p.sub(&RationalMatrix::identity(size));
    let d = flag_projector(ell, size).expect("ell <= size");
    ell - shifted.mul(&d).rank()
}

/// Generators of the Schubert variety σ_λ: the Grassmannian generators
/// followed, for each k = 1..m, by all (n−λ_k+1)-minors of (X−I)·D_{n+k−λ_k}
/// (identically zero minors dropped, k ascending, then row-set/column-set
/// lexicographic). Stages with λ_k = 0 are vacuous on the Grassmannian but
/// still emitted.
pub fn schubert_ideal(lambda: &Partition) -> PolySystem {
    let (m, n) = lambda.box_size();
    let base = grassmann_ideal(m, n);
    let ambient = base.ambient().clone();
    let size = m + n;

    let x = PolyMatrix::of_variables(&ambient, 0, size, size);
    let shifted = x.sub(&PolyMatrix::identity(&ambient, size));

    let mut generators = base.generators().to_vec();
    for k in 1..=m {
        let ell = n + k - lambda.parts()[k - 1];
        let d = flag_projector(ell, size).expect("ell <= size");
        let staged = shifted.mul(&PolyMatrix::from_rational(&ambient, &d));
        let minor_size = n - lambda.parts()[k - 1] + 1;
        generators.extend(staged.minors(minor_size).expect("minor size fits"));
    }

    let mut metadata = base.metadata().clone();
    metadata.construction = "schubert".to_string();
    metadata.partition = Some(lambda.parts().to_vec());
    metadata.dimension = Some(lambda.cell_dimension());
    PolySystem::new(ambient, generators, metadata)
}

/// Membership in σ_λ: P is on the Grassmannian and
/// rank((P−I)·D_{n+k−λ_k}) ≤ n−λ_k for every k, i.e. the span of P meets the
/// first n+k−λ_k coordinates in dimension at least k.
pub fn schubert_membership(
    p: &RationalMatrix,
    lambda: &Partition,
) -> Result<bool, SchubertError> {
    let (m, n) = lambda.box_size();
    if !is_on_grassmannian(p, m, n).map_err(|_| SchubertError::NotOnGrassmannian)? {
        return Err(SchubertError::NotOnGrassmannian);
    }
    for k in 1..=m {
        let ell = n + k - lambda.parts()[k - 1];
        if flag_intersection_dim(p, ell) < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the open cell Ω_λ: the flag intersection dimension
/// dim(W ∩ R_ℓ) equals #{k : n+k−λ_k ≤ ℓ} for every ℓ = 1..m+n. On the
/// windows n+k−λ_k ≤ ℓ ≤ n+k−λ_{k+1} this is the equality rank condition
/// with λ_{m+1} := 0; below the first window it pins the dimension to 0,
/// which makes the cells a partition of the Grassmannian.
pub fn open_cell_membership(
    p: &RationalMatrix,
    lambda: &Partition,
) -> Result<bool, SchubertError> {
    let (m, n) = lambda.box_size();
    if !is_on_grassmannian(p, m, n).map_err(|_| SchubertError::NotOnGrassmannian)? {
        return Err(SchubertError::NotOnGrassmannian);
    }
    for ell in 1..=m + n {
        let target = (1..=m)
            .filter(|&k| n + k - lambda.parts()[k - 1] <= ell)
            .count();
        if flag_intersection_dim(p, ell) != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The block embedding of G_{mp,np} into G_{m,n}: identity on the first
/// m−mp coordinates, the small projection in the middle window, zero on the
/// last n−np. Its image is the Schubert variety of the partition with
/// λ_k = n for k ≤ m−mp and λ_k = n−np otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubGrassmannEmbedding {
    mp: usize,
    np: usize,
    m: usize,
    n: usize,
}

impl SubGrassmannEmbedding {
    pub fn source_box(&self) -> (usize, usize) {
        (self.mp, self.np)
    }

    pub fn target_box(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Places a point of G_{mp,np} into the window; the result is exactly a
    /// point of G_{m,n}.
    pub fn apply(&self, point: &GrassmannPoint) -> Result<GrassmannPoint, SchubertError> {
        if (point.m(), point.n()) != (self.mp, self.np) {
            return Err(SchubertError::InvalidEmbedding {
                mp: self.mp,
                np: self.np,
                m: self.m,
                n: self.n,
            });
        }
        let size = self.m + self.n;
        let offset = self.m - self.mp;
        let window = self.mp + self.np;
        let mut out = RationalMatrix::zeros(size, size);
        for i in 0..offset {
            out.set(i, i, Rational::one());
        }
        for i in 0..window {
            for j in 0..window {
                out.set(offset + i, offset + j, point.matrix().get(i, j).clone());
            }
        }
        GrassmannPoint::new(out, self.m, self.n)
            .map_err(|_| SchubertError::NotOnGrassmannian)
    }

    /// The partition whose Schubert variety is the image: window-full rows on
    /// top, width n−np below.
    pub fn image_partition(&self) -> Partition {
        let mut parts = vec![self.n; self.m - self.mp];
        parts.extend(std::iter::repeat(self.n - self.np).take(self.mp));
        Partition::new(self.m, self.n, parts).expect("block partition fits")
    }
}

/// Builds the embedding and the ideal of its image Schubert variety.
pub fn subgrassmannian_embedding(
    mp: usize,
    np: usize,
    m: usize,
    n: usize,
) -> Result<(SubGrassmannEmbedding, PolySystem), SchubertError> {
    if mp > m || np > n {
        return Err(SchubertError::InvalidEmbedding { mp, np, m, n });
    }
    let embedding = SubGrassmannEmbedding { mp, np, m, n };
    let ideal = schubert_ideal(&embedding.image_partition());
    Ok((embedding, ideal))
}

/// Draws a rational point of the open cell Ω_λ: spans an echelon basis whose
/// k-th vector has a 1 in the pivot coordinate n+k−λ_k, free small-integer
/// entries in the non-pivot coordinates below it, and zeros elsewhere. Every
/// such span meets the flag in exactly the Ω_λ dimensions, so no rejection is
/// needed.
pub fn sample_open_cell_point<R: Rng + ?Sized>(
    lambda: &Partition,
    rng: &mut R,
) -> GrassmannPoint {
    let (m, n) = lambda.box_size();
    let size = m + n;
    let pivots: Vec<usize> = (1..=m)
        .map(|k| n + k - lambda.parts()[k - 1] - 1)
        .collect();
    let vectors: Vec<Vec<Rational>> = pivots
        .iter()
        .map(|&pivot| {
            (0..size)
                .map(|j| {
                    if j == pivot {
                        Rational::one()
                    } else if j < pivot && !pivots.contains(&j) {
                        Rational::from_int(rng.gen_range(-3..=3))
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    projection_onto_span(&vectors, m, n).expect("echelon vectors are independent")
}
