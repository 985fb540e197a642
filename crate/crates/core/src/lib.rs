//! Exact-rational models of embedded Grassmannians, Schubert varieties,
//! Bott-Samelson resolutions and universal bundles.
//!
//! Everything here is computed over ℚ with zero tolerance: polynomial systems
//! are explicit generator lists, points are rational matrices, ranks come from
//! fraction-free elimination, and every certificate is an exact equality.
//!
//! Module map:
//! - [`exactmath`]: rationals, sparse multivariate polynomials, exact matrices.
//! - [`partitions`]: Young diagrams in a box, profiles, normalization, Betti numbers.
//! - [`grassmann`]: the projection-matrix Grassmannian G_{m,n} and point sampling.
//! - [`schubert`]: Schubert cells/varieties and their minor ideals.
//! - [`bottsamelson`]: Bott-Samelson systems, base points, sections, rank certificates.
//! - [`bundles`]: universal vector/sphere bundles and pullbacks.
//! - [`certify`]: Jacobian witnesses, overtness, compactification transforms.

pub mod bottsamelson;
pub mod bundles;
pub mod certify;
pub mod exactmath;
pub mod grassmann;
pub mod partitions;
pub mod schubert;
