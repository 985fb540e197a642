//! The universal vector bundle and its fiberwise spherization over an
//! embedded Grassmannian, products of sphere bundles with one fiber zeroed
//! out, and pullbacks of the sphere bundle along polynomial (or certified
//! rational) maps.

use rand::Rng;
use thiserror::Error;

use crate::exactmath::{
    Ambient, Poly, PolyMatrix, PolySystem, Rational, RationalMatrix, SystemMetadata,
};
use crate::grassmann::{grassmann_block_generators, matrix_entry_names};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("map needs at least one square factor matrix, all over one ambient")]
    MalformedMap,
    #[error("denominator vanishes at certificate point {index}")]
    DenominatorVanishes { index: usize },
    #[error("denominator carries no nonvanishing certificate points")]
    UncertifiedDenominator,
    #[error("system ambient has {got} variables, the map source has {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("no factor {index} in a product of {count}")]
    InvalidFactorIndex { index: usize, count: usize },
}

/// A common denominator for a rational map, valid only at points where it
/// provably does not vanish; the registered points are that evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Denominator {
    poly: Poly,
    certificate_points: Vec<Vec<Rational>>,
}

impl Denominator {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn certificate_points(&self) -> &[Vec<Rational>] {
        &self.certificate_points
    }
}

/// A tuple of square matrices of polynomials over one source ambient,
/// optionally divided by a shared denominator. This is the map format the
/// sphere-bundle pullback accepts: one factor per target Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    source: Ambient,
    factors: Vec<PolyMatrix>,
    denominator: Option<Denominator>,
}

impl PolyMap {
    pub fn new(factors: Vec<PolyMatrix>) -> Result<Self, BundleError> {
        let first = factors.first().ok_or(BundleError::MalformedMap)?;
        let source = first.ambient().clone();
        for f in &factors {
            if f.rows() != f.cols() || f.ambient() != &source {
                return Err(BundleError::MalformedMap);
            }
        }
        Ok(PolyMap { source, factors, denominator: None })
    }

    /// Attaches a common denominator together with the points witnessing
    /// that it does not vanish; rejects any witness where it does.
    pub fn with_denominator(
        factors: Vec<PolyMatrix>,
        poly: Poly,
        certificate_points: Vec<Vec<Rational>>,
    ) -> Result<Self, BundleError> {
        let mut map = PolyMap::new(factors)?;
        if poly.ambient() != &map.source {
            return Err(BundleError::AmbientMismatch {
                expected: map.source.len(),
                got: poly.ambient().len(),
            });
        }
        for (index, point) in certificate_points.iter().enumerate() {
            let value = poly.evaluate(point).map_err(|_| BundleError::AmbientMismatch {
                expected: map.source.len(),
                got: point.len(),
            })?;
            if value.is_zero() {
                return Err(BundleError::DenominatorVanishes { index });
            }
        }
        map.denominator = Some(Denominator { poly, certificate_points });
        Ok(map)
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn factors(&self) -> &[PolyMatrix] {
        &self.factors
    }

    pub fn denominator(&self) -> Option<&Denominator> {
        self.denominator.as_ref()
    }

    /// Value of factor `i` at a point, dividing by the denominator when one
    /// is present; errors where the denominator vanishes.
    pub fn evaluate_factor(
        &self,
        i: usize,
        point: &[Rational],
    ) -> Result<RationalMatrix, BundleError> {
        let factor = self.factors.get(i).ok_or(BundleError::InvalidFactorIndex {
            index: i,
            count: self.factors.len(),
        })?;
        let numerator = factor.evaluate(point).map_err(|_| BundleError::AmbientMismatch {
            expected: self.source.len(),
            got: point.len(),
        })?;
        match &self.denominator {
            None => Ok(numerator),
            Some(d) => {
                let q = d.poly.evaluate(point).expect("point length checked above");
                if q.is_zero() {
                    return Err(BundleError::DenominatorVanishes { index: usize::MAX });
                }
                Ok(numerator.scale(&q.recip().expect("nonzero")))
            }
        }
    }
}

fn fiber_names(size: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=size).map(|j| format!("y{j}")).collect();
    names.push("t".to_string());
    names
}

fn factor_fiber_names(factor: usize, size: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=size).map(|j| format!("y{factor}_{j}")).collect();
    names.push(format!("t{factor}"));
    names
}

/// The universal bundle over the Grassmannian: pairs (X, y) with X a
/// projector and y in its range. Generators are the Grassmannian block
/// followed by the m+n entries of Xy − y; the fiber variables are named
/// y1..y{m+n}.
pub fn universal_bundle_ideal(m: usize, n: usize) -> PolySystem {
    let size = m + n;
    let mut names = matrix_entry_names("x", size);
    names.extend((1..=size).map(|j| format!("y{j}")));
    let ambient = Ambient::new(names);

    let mut generators = grassmann_block_generators(&ambient, 0, size, m);
    let x = PolyMatrix::of_variables(&ambient, 0, size, size);
    let y = PolyMatrix::of_variables(&ambient, size * size, size, 1);
    generators.extend(x.mul(&y).sub(&y).entries().cloned());

    let mut metadata = SystemMetadata::named("universal_bundle");
    metadata.box_size = Some([m, n]);
    metadata.dimension = Some(m * (n + 1));
    PolySystem::new(ambient, generators, metadata)
}

/// The fiberwise one-point compactification of the universal bundle: the
/// universal-bundle generators plus the single sphere equation
/// |y|² + t² − t over one extra variable t.
pub fn sphere_bundle_ideal(m: usize, n: usize) -> PolySystem {
    let size = m + n;
    let mut names = matrix_entry_names("x", size);
    names.extend(fiber_names(size));
    let ambient = Ambient::new(names);

    let mut generators = grassmann_block_generators(&ambient, 0, size, m);
    let x = PolyMatrix::of_variables(&ambient, 0, size, size);
    let y = PolyMatrix::of_variables(&ambient, size * size, size, 1);
    generators.extend(x.mul(&y).sub(&y).entries().cloned());
    generators.push(sphere_equation(&ambient, size * size, size));

    let mut metadata = SystemMetadata::named("sphere_bundle");
    metadata.box_size = Some([m, n]);
    metadata.dimension = Some(m * (n + 1));
    PolySystem::new(ambient, generators, metadata)
}

/// Σ y_j² + t² − t for a fiber block of `size` variables starting at
/// `offset`, with t immediately after the block.
fn sphere_equation(ambient: &Ambient, offset: usize, size: usize) -> Poly {
    let mut sum = Poly::zero(ambient);
    for j in 0..size {
        let yj = Poly::variable(ambient, offset + j);
        sum = &sum + &(&yj * &yj);
    }
    let t = Poly::variable(ambient, offset + size);
    &(&sum + &(&t * &t)) - &t
}

/// The product of sphere bundles over the listed Grassmannians with the
/// fiber of factor `i0` (0-based) pinned to the origin: all product
/// generators, then the fiber variables y and t of that factor appended as
/// generators. A single factor keeps the plain x/y/t names; products prefix
/// each block with its 1-based factor number.
pub fn sub_bundle_zeroed(
    boxes: &[(usize, usize)],
    i0: usize,
) -> Result<PolySystem, BundleError> {
    let count = boxes.len();
    if i0 >= count {
        return Err(BundleError::InvalidFactorIndex { index: i0, count });
    }
    if count == 1 {
        let (m, n) = boxes[0];
        let base = sphere_bundle_ideal(m, n);
        let ambient = base.ambient().clone();
        let size = m + n;
        let mut generators = base.generators().to_vec();
        for j in 0..=size {
            generators.push(Poly::variable(&ambient, size * size + j));
        }
        let mut metadata = base.metadata().clone();
        metadata.construction = "sub_bundle_zeroed".to_string();
        metadata.zeroed_factor = Some(i0);
        metadata.factors = Some(1);
        metadata.dimension = Some(m * n);
        return Ok(PolySystem::new(ambient, generators, metadata));
    }

    let mut names = Vec::new();
    let mut offsets = Vec::with_capacity(count);
    for (idx, &(m, n)) in boxes.iter().enumerate() {
        let size = m + n;
        offsets.push(names.len());
        names.extend(matrix_entry_names(&format!("x{}_", idx + 1), size));
        names.extend(factor_fiber_names(idx + 1, size));
    }
    let ambient = Ambient::new(names);

    let mut generators = Vec::new();
    for (idx, &(m, n)) in boxes.iter().enumerate() {
        let size = m + n;
        let offset = offsets[idx];
        generators.extend(grassmann_block_generators(&ambient, offset, size, m));
        let x = PolyMatrix::of_variables(&ambient, offset, size, size);
        let y = PolyMatrix::of_variables(&ambient, offset + size * size, size, 1);
        generators.extend(x.mul(&y).sub(&y).entries().cloned());
        generators.push(sphere_equation(&ambient, offset + size * size, size));
    }
    let (m0, n0) = boxes[i0];
    let zero_offset = offsets[i0] + (m0 + n0) * (m0 + n0);
    for j in 0..=(m0 + n0) {
        generators.push(Poly::variable(&ambient, zero_offset + j));
    }

    let mut metadata = SystemMetadata::named("sub_bundle_zeroed");
    metadata.factors = Some(count);
    metadata.zeroed_factor = Some(i0);
    metadata.dimension = Some(
        boxes
            .iter()
            .enumerate()
            .map(|(idx, &(m, n))| if idx == i0 { m * n } else { m * (n + 1) })
            .sum(),
    );
    Ok(PolySystem::new(ambient, generators, metadata))
}

/// Pullback of the product sphere bundle along `mu`: the base system's
/// generators over the extended ambient, then per factor the entries of
/// μ_i(x)·y^i − y^i and the sphere equation of that fiber. A denominator is
/// cleared through the linear entries (μ_i(x)·y^i − q(x)·y^i) and must carry
/// at least one nonvanishing certificate point.
pub fn pullback_sphere_bundle_ideal(
    base: &PolySystem,
    mu: &PolyMap,
) -> Result<PolySystem, BundleError> {
    if base.ambient() != mu.source() {
        return Err(BundleError::AmbientMismatch {
            expected: mu.source().len(),
            got: base.ambient().len(),
        });
    }
    let q = match mu.denominator() {
        None => None,
        Some(d) => {
            if d.certificate_points().is_empty() {
                return Err(BundleError::UncertifiedDenominator);
            }
            Some(d.poly().clone())
        }
    };

    let count = mu.factors().len();
    let mut extra = Vec::new();
    let mut offsets = Vec::with_capacity(count);
    for (idx, factor) in mu.factors().iter().enumerate() {
        offsets.push(base.ambient().len() + extra.len());
        if count == 1 {
            extra.extend(fiber_names(factor.rows()));
        } else {
            extra.extend(factor_fiber_names(idx + 1, factor.rows()));
        }
    }
    let ambient = base.ambient().extend(&extra);

    let mut generators: Vec<Poly> =
        base.generators().iter().map(|g| g.lift_to(&ambient)).collect();
    for (idx, factor) in mu.factors().iter().enumerate() {
        let size = factor.rows();
        let offset = offsets[idx];
        let lifted = PolyMatrix::from_fn(&ambient, size, size, |i, j| {
            factor.get(i, j).lift_to(&ambient)
        });
        let y = PolyMatrix::of_variables(&ambient, offset, size, 1);
        let scaled_y = match &q {
            None => y.clone(),
            Some(q) => {
                let q = q.lift_to(&ambient);
                PolyMatrix::from_fn(&ambient, size, 1, |i, _| &q * y.get(i, 0))
            }
        };
        generators.extend(lifted.mul(&y).sub(&scaled_y).entries().cloned());
        generators.push(sphere_equation(&ambient, offset, size));
    }

    let mut metadata = SystemMetadata::named("pullback");
    metadata.factors = Some(count);
    metadata.base_generator_count = Some(base.generator_count());
    metadata.base_metadata = Some(Box::new(base.metadata().clone()));
    metadata.cleared_denominator = q.map(|q| q.to_string());
    Ok(PolySystem::new(ambient, generators, metadata))
}

/// A rational point of the sphere bundle over the coordinate base point: the
/// inverse stereographic image of an integer fiber vector u, giving
/// (D_m, u/(|u|²+1), 1/(|u|²+1)) with u supported on the first m
/// coordinates. Returned flattened in ambient order.
pub fn sample_sphere_bundle_point<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
) -> Vec<Rational> {
    let size = m + n;
    let mut coords = crate::grassmann::flag_projector(m, size)
        .expect("m within the matrix size")
        .flatten();
    let u: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
    let norm: i64 = u.iter().map(|v| v * v).sum();
    let scale = Rational::ratio(1, norm + 1);
    for j in 0..size {
        if j < m {
            coords.push(Rational::from_int(u[j]) * scale.clone());
        } else {
            coords.push(Rational::zero());
        }
    }
    coords.push(scale);
    coords
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::grassmann::{grassmann_ideal, sample_grassmann_point, trace_generator_index};

    fn d1_with_fiber(y: [i64; 2]) -> Vec<Rational> {
        let mut p = vec![
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        p.push(Rational::from_int(y[0]));
        p.push(Rational::from_int(y[1]));
        p
    }

    #[test]
    fn universal_bundle_counts_and_membership() {
        let sys = universal_bundle_ideal(1, 1);
        assert_eq!(sys.ambient().len(), 6);
        assert_eq!(sys.generator_count(), 6 + 2);
        assert_eq!(sys.metadata().dimension, Some(2));

        assert!(sys.vanishes_at(&d1_with_fiber([5, 0])).unwrap());
        let off = sys.evaluate_all(&d1_with_fiber([0, 1])).unwrap();
        assert_eq!(off[7], -Rational::one());
        assert!(!sys.vanishes_at(&d1_with_fiber([0, 1])).unwrap());
    }

    #[test]
    fn sphere_bundle_vanishes_at_documented_points() {
        let sys = sphere_bundle_ideal(1, 1);
        assert_eq!(sys.ambient().len(), 7);
        assert_eq!(sys.ambient().name(4), "y1");
        assert_eq!(sys.ambient().name(6), "t");

        let mut on = d1_with_fiber([0, 0]);
        on[4] = Rational::ratio(1, 2);
        on.push(Rational::ratio(1, 2));
        assert!(sys.vanishes_at(&on).unwrap());

        let mut pole = d1_with_fiber([0, 0]);
        pole.push(Rational::zero());
        assert!(sys.vanishes_at(&pole).unwrap());
    }

    #[test]
    fn sphere_phi_components_have_documented_rank() {
        // Without the trace generator, the membership components (symmetry,
        // idempotency, Xy−y) cut out the union of vector bundles times the
        // t-line, of codimension (m+n)²−mn+n; adding the sphere equation
        // raises the exact rank by one.
        for (m, n) in [(1usize, 1usize), (1, 2), (2, 1)] {
            let sys = sphere_bundle_ideal(m, n);
            let skip = trace_generator_index(m, n);
            let no_trace: Vec<Poly> = sys
                .generators()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, g)| g.clone())
                .collect();
            let mut membership = no_trace.clone();
            let sphere = membership.pop().unwrap();
            assert_eq!(sphere.degree(), Some(2));
            let phi =
                PolySystem::new(sys.ambient().clone(), no_trace, SystemMetadata::named("phi"));
            let membership = PolySystem::new(
                sys.ambient().clone(),
                membership,
                SystemMetadata::named("membership"),
            );
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..3 {
                let point = sample_sphere_bundle_point(m, n, &mut rng);
                assert!(sys.vanishes_at(&point).unwrap());
                let size = m + n;
                let threshold = size * size - m * n + n;
                assert_eq!(membership.jacobian_at(&point).unwrap().rank(), threshold);
                assert_eq!(phi.jacobian_at(&point).unwrap().rank(), threshold + 1);
            }
        }
    }

    #[test]
    fn fiber_points_satisfy_the_sphere_condition_only() {
        let sys = sphere_bundle_ideal(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = sample_grassmann_point(2, 1, &mut rng);
        let z: Vec<Rational> = (0..3).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
        let u = p.matrix().mul_vec(&z);
        let norm: Rational = u.iter().map(|v| v.clone() * v.clone()).sum();
        let scale = (norm + Rational::one()).recip().unwrap();

        let mut point = p.coordinates();
        point.extend(u.iter().map(|v| v.clone() * scale.clone()));
        point.push(scale.clone());
        assert!(sys.vanishes_at(&point).unwrap());

        let mut wrong_t = point.clone();
        wrong_t[12] = scale + Rational::one();
        assert!(!sys.vanishes_at(&wrong_t).unwrap());

        let off_range: Vec<Rational> = (0..3)
            .map(|i| {
                let ei = if i == 0 { Rational::one() } else { Rational::zero() };
                ei - p.matrix().get(0, i).clone()
            })
            .collect();
        if off_range.iter().any(|v| !v.is_zero()) {
            let mut bad = p.coordinates();
            bad.extend(off_range);
            bad.push(Rational::zero());
            assert!(!sys.vanishes_at(&bad).unwrap());
        }
    }

    #[test]
    fn zeroed_single_factor_reduces_to_base_times_origin() {
        let sys = sub_bundle_zeroed(&[(1, 1)], 0).unwrap();
        let sphere = sphere_bundle_ideal(1, 1);
        assert_eq!(sys.ambient(), sphere.ambient());
        assert_eq!(sys.generator_count(), sphere.generator_count() + 3);
        assert_eq!(sys.metadata().zeroed_factor, Some(0));
        assert_eq!(sys.metadata().dimension, Some(1));

        let mut origin = d1_with_fiber([0, 0]);
        origin.push(Rational::zero());
        assert!(sys.vanishes_at(&origin).unwrap());
        let mut nonzero = d1_with_fiber([0, 0]);
        nonzero[4] = Rational::ratio(1, 2);
        nonzero.push(Rational::ratio(1, 2));
        assert!(!sys.vanishes_at(&nonzero).unwrap());
    }

    #[test]
    fn zeroed_product_keeps_the_other_fiber_free() {
        let sys = sub_bundle_zeroed(&[(1, 1), (1, 1)], 1).unwrap();
        assert_eq!(sys.ambient().len(), 14);
        assert_eq!(sys.ambient().name(4), "y1_1");
        assert_eq!(sys.ambient().name(6), "t1");
        assert_eq!(sys.ambient().name(11), "y2_1");
        assert_eq!(sys.metadata().dimension, Some(2 + 1));

        let mut point = d1_with_fiber([0, 0]);
        point[4] = Rational::ratio(1, 2);
        point.push(Rational::ratio(1, 2));
        point.extend(d1_with_fiber([0, 0]));
        point.push(Rational::zero());
        assert!(sys.vanishes_at(&point).unwrap());

        let mut bad = point.clone();
        bad[11] = Rational::ratio(1, 2);
        bad[13] = Rational::ratio(1, 2);
        assert!(!sys.vanishes_at(&bad).unwrap());

        assert_eq!(
            sub_bundle_zeroed(&[(1, 1)], 1).unwrap_err(),
            BundleError::InvalidFactorIndex { index: 1, count: 1 }
        );
    }

    #[test]
    fn constant_map_pullback_is_the_fiber() {
        let ambient = Ambient::from_names(&["x"]);
        let w = PolySystem::new(
            ambient.clone(),
            vec![Poly::parse(&ambient, "x - 1").unwrap()],
            SystemMetadata::named("point"),
        );
        let d1 = RationalMatrix::from_rows(vec![
            vec![Rational::one(), Rational::zero()],
            vec![Rational::zero(), Rational::zero()],
        ]);
        let mu = PolyMap::new(vec![PolyMatrix::from_rational(&ambient, &d1)]).unwrap();
        let sys = pullback_sphere_bundle_ideal(&w, &mu).unwrap();
        assert_eq!(sys.ambient().names(), ["x", "y1", "y2", "t"]);
        assert_eq!(sys.generator_count(), 1 + 2 + 1);

        let circle = |y1: Rational, t: Rational| {
            vec![Rational::one(), y1, Rational::zero(), t]
        };
        assert!(sys.vanishes_at(&circle(Rational::ratio(1, 2), Rational::ratio(1, 2))).unwrap());
        assert!(sys.vanishes_at(&circle(Rational::zero(), Rational::one())).unwrap());
        assert!(!sys.vanishes_at(&circle(Rational::one(), Rational::one())).unwrap());
        let mut y2_off = circle(Rational::zero(), Rational::zero());
        y2_off[2] = Rational::one();
        assert!(!sys.vanishes_at(&y2_off).unwrap());
    }

    #[test]
    fn identity_pullback_recovers_the_sphere_bundle() {
        let base = grassmann_ideal(1, 1);
        let x = PolyMatrix::of_variables(base.ambient(), 0, 2, 2);
        let mu = PolyMap::new(vec![x]).unwrap();
        let sys = pullback_sphere_bundle_ideal(&base, &mu).unwrap();
        let sphere = sphere_bundle_ideal(1, 1);
        assert_eq!(sys.ambient(), sphere.ambient());
        assert_eq!(sys.generators(), sphere.generators());
    }

    #[test]
    fn pullback_agrees_with_substitution_at_points() {
        // Base: the parabola x2 = x1², mapped into G_{1,1} by the projection
        // onto span(1, x1), scaled by the denominator 1 + x1².
        let ambient = Ambient::from_names(&["x1", "x2"]);
        let w = PolySystem::new(
            ambient.clone(),
            vec![Poly::parse(&ambient, "x2 - x1^2").unwrap()],
            SystemMetadata::named("parabola"),
        );
        let numerator = PolyMatrix::from_fn(&ambient, 2, 2, |i, j| {
            let name = match (i, j) {
                (0, 0) => "1",
                (1, 1) => "x1^2",
                _ => "x1",
            };
            Poly::parse(&ambient, name).unwrap()
        });
        let q = Poly::parse(&ambient, "x1^2 + 1").unwrap();
        let witness = vec![Rational::from_int(2), Rational::from_int(4)];
        let mu = PolyMap::with_denominator(vec![numerator], q, vec![witness]).unwrap();
        let sys = pullback_sphere_bundle_ideal(&w, &mu).unwrap();
        assert_eq!(sys.metadata().cleared_denominator.as_deref(), Some("x1^2 + 1"));

        let sphere = sphere_bundle_ideal(1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x1 = Rational::from_int(rng.gen_range(-3..=3));
            let base_point = vec![x1.clone(), x1.clone() * x1.clone()];
            let projector = mu.evaluate_factor(0, &base_point).unwrap();

            let u = Rational::from_int(rng.gen_range(-2..=2));
            let fiber = projector.mul_vec(&[u.clone(), Rational::zero()]);
            let norm: Rational = fiber.iter().map(|v| v.clone() * v.clone()).sum();
            let scale = (norm + Rational::one()).recip().unwrap();
            let y: Vec<Rational> = fiber.iter().map(|v| v.clone() * scale.clone()).collect();

            let mut pulled = base_point.clone();
            pulled.extend(y.iter().cloned());
            pulled.push(scale.clone());
            assert!(sys.vanishes_at(&pulled).unwrap());

            let mut downstairs = projector.flatten();
            downstairs.extend(y);
            downstairs.push(scale);
            assert!(sphere.vanishes_at(&downstairs).unwrap());

            let mut bad = pulled.clone();
            bad[4] = bad[4].clone() + Rational::one();
            let downstairs_bad = downstairs_with(&projector, &bad[2..]);
            assert_eq!(
                sys.vanishes_at(&bad).unwrap(),
                sphere.vanishes_at(&downstairs_bad).unwrap()
            );
        }
    }

    fn downstairs_with(projector: &RationalMatrix, fiber: &[Rational]) -> Vec<Rational> {
        let mut d = projector.flatten();
        d.extend(fiber.iter().cloned());
        d
    }

    #[test]
    fn denominators_demand_certificates() {
        let ambient = Ambient::from_names(&["x"]);
        let w = PolySystem::new(
            ambient.clone(),
            vec![Poly::parse(&ambient, "x - 1").unwrap()],
            SystemMetadata::named("point"),
        );
        let factor = PolyMatrix::identity(&ambient, 2);
        let q = Poly::parse(&ambient, "x").unwrap();

        let zero_witness = PolyMap::with_denominator(
            vec![factor.clone()],
            q.clone(),
            vec![vec![Rational::zero()]],
        );
        assert_eq!(zero_witness.unwrap_err(), BundleError::DenominatorVanishes { index: 0 });

        let uncertified =
            PolyMap::with_denominator(vec![factor], q, Vec::new()).unwrap();
        assert_eq!(
            pullback_sphere_bundle_ideal(&w, &uncertified).unwrap_err(),
            BundleError::UncertifiedDenominator
        );
    }

    #[test]
    fn zero_section_lies_on_every_pullback() {
        let base = grassmann_ideal(1, 2);
        let x = PolyMatrix::of_variables(base.ambient(), 0, 3, 3);
        let mu = PolyMap::new(vec![x]).unwrap();
        let sys = pullback_sphere_bundle_ideal(&base, &mu).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3 {
            let p = sample_grassmann_point(1, 2, &mut rng);
            let mut point = p.coordinates();
            point.extend(std::iter::repeat(Rational::zero()).take(4));
            assert!(sys.vanishes_at(&point).unwrap());
        }
    }
}
