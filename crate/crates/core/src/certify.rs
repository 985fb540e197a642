//! Exactness certificates and compactification transforms.
//!
//! A [`Certificate`] pairs a verdict with a replayable evidence payload:
//! re-running the recorded check against the same system must reproduce the
//! verdict, see [`replay_certificate`]. All checks are exact. Jacobian ranks
//! come from fraction-free elimination, leading forms are compared as
//! polynomials, and no rule here ever asserts a negative: when nothing
//! applies the verdict is [`CertificateKind::Unknown`].
//!
//! The last two functions, [`inversion_compactify`] and [`puncture_lift`],
//! transform generator lists rather than certifying them. The first mirrors a
//! variety through the unit sphere so that statements about behaviour at
//! infinity become statements at the origin; the second removes the origin
//! branch again by adjoining an inverse of the squared radius.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{
    Ambient, ExactError, Monomial, Poly, PolySystem, Rational, SystemMetadata,
};
use crate::grassmann::grassmann_ideal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("generator {generator} does not vanish at the proposed witness point")]
    PointNotOnVariety { generator: usize },
    #[error("expected dimension {expected_dim} must be smaller than the ambient size {ambient}")]
    InvalidExpectedDimension { expected_dim: usize, ambient: usize },
    #[error("the zero polynomial has no leading form to inspect")]
    ZeroPolynomial,
    #[error("homogenizing exponent {exponent} is below the maximum generator degree {max_degree}")]
    DegreeTooSmall { exponent: u32, max_degree: u32 },
    #[error("the puncture constant must be nonzero")]
    ZeroConstant,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    QJacobianWitness,
    Overt,
    ProjectivelyQClosed,
    Unknown,
}

/// What was actually checked. Every variant carries enough data to re-run
/// the check; none of them records intermediate eliminations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Exact Jacobian rank at a rational point on the variety, meeting the
    /// bound `required = ambient - expected_dim`.
    JacobianWitness { point: Vec<Rational>, rank: usize, required: usize },
    /// A rank that fell short of the bound. Kept so the failed attempt can
    /// be replayed too.
    JacobianShortfall { point: Vec<Rational>, rank: usize, required: usize },
    /// One variable, positive degree: the leading term is c·x^d, whose only
    /// real zero is the origin.
    OvertUnivariate { variable: String, degree: u32 },
    /// Leading form with even exponents and positive coefficients only,
    /// containing the pure power x_j^degree of every variable. Such a form
    /// is positive away from the origin.
    OvertDiagonalForm { degree: u32 },
    /// The summed squares of the generators are overt, so the zero set is
    /// bounded and inversion adds only the origin.
    SosOvert { inner: Box<Certificate> },
    /// Square matrix blocks for which the collapse quadric |Y|² − tr Y was
    /// rewritten as an explicit combination of listed generators, with the
    /// block squares and designated fiber generators jointly covering every
    /// ambient variable. Appending the quadrics makes the summed squares
    /// overt without changing the zero set.
    ProjectorCollapse { blocks: usize, fiber_generators: usize },
    /// The generator list extends a certified system over the same ambient,
    /// so the zero set is a closed subset of an already-certified one.
    Containment { parent: String, inner: Box<Certificate> },
    /// No rule applied. Never a proof of anything.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub evidence: Evidence,
}

impl Certificate {
    fn unknown(reason: &str) -> Certificate {
        Certificate {
            kind: CertificateKind::Unknown,
            evidence: Evidence::Inconclusive { reason: reason.to_string() },
        }
    }

    /// True for every kind except `Unknown`.
    pub fn is_conclusive(&self) -> bool {
        self.kind != CertificateKind::Unknown
    }
}

/// Checks that `point` lies on the variety and that the Jacobian there has
/// rank at least `ambient - expected_dim`. Since the rank of the Jacobian
/// never exceeds the codimension of a component through a smooth point, a
/// witness pins the local dimension to exactly `expected_dim` and proves the
/// point is regular. A short rank is reported as `Unknown`: the point might
/// be singular or the generators might just be degenerate there.
pub fn verify_q_jacobian_witness(
    system: &PolySystem,
    point: &[Rational],
    expected_dim: usize,
) -> Result<Certificate, CertifyError> {
    let ambient = system.ambient().len();
    if expected_dim >= ambient {
        return Err(CertifyError::InvalidExpectedDimension { expected_dim, ambient });
    }
    let values = system.evaluate_all(point)?;
    if let Some(generator) = values.iter().position(|v| !v.is_zero()) {
        return Err(CertifyError::PointNotOnVariety { generator });
    }
    let required = ambient - expected_dim;
    let rank = system.jacobian_at(point)?.rank();
    if rank >= required {
        Ok(Certificate {
            kind: CertificateKind::QJacobianWitness,
            evidence: Evidence::JacobianWitness { point: point.to_vec(), rank, required },
        })
    } else {
        Ok(Certificate {
            kind: CertificateKind::Unknown,
            evidence: Evidence::JacobianShortfall { point: point.to_vec(), rank, required },
        })
    }
}

/// Σ gᵢ² over the generators. The collapse has the same zero set as the
/// system over the reals and turns questions about the whole list into
/// questions about one polynomial.
pub fn sos_collapse(system: &PolySystem) -> Poly {
    assert!(system.generator_count() > 0, "sos_collapse needs at least one generator");
    let mut sum = Poly::zero(system.ambient());
    for g in system.generators() {
        sum = &sum + &(g * g);
    }
    sum
}

/// Overtness of a single polynomial: its leading form should have no real
/// zero besides the origin, which bounds the zero set of the polynomial
/// away from infinity in every direction. Two syntactic rules are applied.
/// A univariate polynomial of positive degree always qualifies. In several
/// variables the leading form qualifies when every monomial has even
/// exponents and a positive coefficient and every variable contributes its
/// pure power: the form is then a sum of nonnegative terms that dominates
/// each x_j^degree. Anything else comes back `Unknown`.
pub fn overt_certificate(p: &Poly) -> Result<Certificate, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let lead = p.leading_form().expect("nonzero polynomial");
    let degree = lead.degree().expect("nonzero polynomial");
    let ambient = p.ambient();
    if ambient.len() == 1 && degree >= 1 {
        return Ok(Certificate {
            kind: CertificateKind::Overt,
            evidence: Evidence::OvertUnivariate {
                variable: ambient.name(0).to_string(),
                degree,
            },
        });
    }
    let even_and_positive = lead
        .terms()
        .all(|(mono, coeff)| mono.exponents().iter().all(|e| e % 2 == 0) && !coeff.is_negative());
    let all_pure_powers = (0..ambient.len()).all(|j| {
        let mut exps = vec![0u32; ambient.len()];
        exps[j] = degree;
        !lead.coefficient(&Monomial::new(exps)).is_zero()
    });
    if even_and_positive && all_pure_powers {
        return Ok(Certificate {
            kind: CertificateKind::Overt,
            evidence: Evidence::OvertDiagonalForm { degree },
        });
    }
    Ok(Certificate::unknown(
        "leading form has an odd exponent, a negative coefficient, or a missing pure power",
    ))
}

/// Certifies that the real zero set stays closed under the inversion
/// x ↦ x/|x|², which holds exactly when the set is bounded. Three rules are
/// tried in order: the summed squares of the generators may be overt
/// outright; the system may decompose into projector blocks whose collapse
/// quadrics make the summed squares overt; or the generators may extend an
/// already-certified parent system. `Unknown` otherwise, including for
/// genuinely unbounded sets like a hyperbola or the universal bundle.
pub fn projectively_q_closed_certificate(system: &PolySystem) -> Certificate {
    if system.generator_count() == 0 {
        return Certificate::unknown("an empty generator list cuts out the whole ambient space");
    }
    let sos = sos_collapse(system);
    if !sos.is_zero() {
        let inner = overt_certificate(&sos).expect("nonzero by construction");
        if inner.kind == CertificateKind::Overt {
            return Certificate {
                kind: CertificateKind::ProjectivelyQClosed,
                evidence: Evidence::SosOvert { inner: Box::new(inner) },
            };
        }
    }
    if let Some(evidence) = projector_collapse_route(system) {
        return Certificate { kind: CertificateKind::ProjectivelyQClosed, evidence };
    }
    if let Some(certificate) = containment_route(system) {
        return certificate;
    }
    Certificate::unknown("no sum-of-squares, projector-collapse, or containment rule applies")
}

/// One square matrix block of the ambient: `size`² variables starting at
/// `var_offset`, with the block's symmetry differences and idempotency
/// entries sitting at known positions in the generator list.
struct BlockLayout {
    var_offset: usize,
    size: usize,
    sym_start: usize,
    idem_start: usize,
}

fn grassmann_block_layout(var_offset: usize, gen_start: usize, size: usize) -> BlockLayout {
    BlockLayout {
        var_offset,
        size,
        sym_start: gen_start,
        idem_start: gen_start + size * (size - 1) / 2,
    }
}

fn grassmann_block_len(size: usize) -> usize {
    size * (size - 1) / 2 + size * size + 1
}

/// Where the projector blocks and designated fiber generators sit for each
/// construction this crate emits. Returns `None` for constructions without
/// a projector structure; the subsequent symbolic checks re-verify every
/// position, so a stale or foreign tag can only lead to `Unknown`, never to
/// a wrong certificate.
fn projector_layouts(system: &PolySystem) -> Option<(Vec<BlockLayout>, Vec<usize>)> {
    let md = system.metadata();
    match md.construction.as_str() {
        "grassmann" | "schubert" | "universal_bundle" => {
            let [m, n] = md.box_size?;
            Some((vec![grassmann_block_layout(0, 0, m + n)], Vec::new()))
        }
        "sphere_bundle" => {
            let [m, n] = md.box_size?;
            let size = m + n;
            Some((
                vec![grassmann_block_layout(0, 0, size)],
                vec![grassmann_block_len(size) + size],
            ))
        }
        "sub_bundle_zeroed" => {
            if md.factors == Some(1) {
                let [m, n] = md.box_size?;
                let size = m + n;
                return Some((
                    vec![grassmann_block_layout(0, 0, size)],
                    vec![grassmann_block_len(size) + size],
                ));
            }
            let sizes = product_factor_sizes(system.ambient(), md.factors?)?;
            let mut blocks = Vec::with_capacity(sizes.len());
            let mut fibers = Vec::with_capacity(sizes.len());
            let mut var_offset = 0;
            let mut gen_start = 0;
            for size in sizes {
                blocks.push(grassmann_block_layout(var_offset, gen_start, size));
                fibers.push(gen_start + grassmann_block_len(size) + size);
                var_offset += size * size + size + 1;
                gen_start += grassmann_block_len(size) + size + 1;
            }
            Some((blocks, fibers))
        }
        "bott_samelson" => {
            let [m, n] = md.box_size?;
            let factors = md.factors?;
            let size = m + n;
            let len = grassmann_block_len(size);
            let mut blocks = vec![grassmann_block_layout(0, 0, size)];
            for b in 1..factors {
                let gen_start = len + (b - 1) * (len + 2 * size * size);
                blocks.push(grassmann_block_layout(b * size * size, gen_start, size));
            }
            Some((blocks, Vec::new()))
        }
        _ => None,
    }
}

/// Factor sizes of a product ambient laid out as x{i}_.., y{i}_.., t{i} per
/// factor, recovered from the positions of the t variables.
fn product_factor_sizes(ambient: &Ambient, count: usize) -> Option<Vec<usize>> {
    let mut sizes = Vec::with_capacity(count);
    let mut start = 0;
    for factor in 1..=count {
        let t = ambient.index_of(&format!("t{factor}"))?;
        let span = t.checked_sub(start)? + 1;
        let size = (1..span).find(|s| s * s + s + 1 == span)?;
        sizes.push(size);
        start = t + 1;
    }
    (start == ambient.len()).then_some(sizes)
}

/// The projector route. For each block Y the collapse quadric
/// |Y|² − tr Y must equal Σᵢ (idempotency diagonal)ᵢᵢ + Σ (symmetry diff)²
/// as a polynomial identity over the listed generators, which puts it in the
/// ideal. With every generator of degree at most two, the summed squares of
/// the augmented list have leading form Σ (quadratic parts)², and that form
/// vanishes only where all quadratic parts do. The coverage check makes the
/// designated parts add up to Σ xⱼ² over the whole ambient, so the only
/// common zero is the origin and the collapse is overt.
fn projector_collapse_route(system: &PolySystem) -> Option<Evidence> {
    let (blocks, fiber_gens) = projector_layouts(system)?;
    if system.max_degree() > 2 {
        return None;
    }
    let ambient = system.ambient();
    let gens = system.generators();
    let mut coverage = Poly::zero(ambient);
    for block in &blocks {
        let mut squares = Poly::zero(ambient);
        let mut trace = Poly::zero(ambient);
        for i in 0..block.size {
            for j in 0..block.size {
                let v = Poly::variable(ambient, block.var_offset + i * block.size + j);
                squares = &squares + &(&v * &v);
                if i == j {
                    trace = &trace + &v;
                }
            }
        }
        let collapse = &squares - &trace;
        let mut derived = Poly::zero(ambient);
        for i in 0..block.size {
            derived = &derived + gens.get(block.idem_start + i * block.size + i)?;
        }
        for k in 0..block.size * (block.size - 1) / 2 {
            let g = gens.get(block.sym_start + k)?;
            derived = &derived + &(g * g);
        }
        if collapse != derived {
            return None;
        }
        coverage = &coverage + &squares;
    }
    for &index in &fiber_gens {
        let g = gens.get(index)?;
        if g.degree() != Some(2) {
            return None;
        }
        coverage = &coverage + &g.leading_form().expect("degree two");
    }
    let everything = coordinate_square_sum(ambient, 0..ambient.len());
    if coverage != everything {
        return None;
    }
    Some(Evidence::ProjectorCollapse { blocks: blocks.len(), fiber_generators: fiber_gens.len() })
}

/// Schubert systems start with the full Grassmannian generator list and only
/// add minors, so their zero set is a closed subset of the Grassmannian.
/// The prefix is compared polynomial by polynomial before the parent is
/// certified.
fn containment_route(system: &PolySystem) -> Option<Certificate> {
    let md = system.metadata();
    if md.construction != "schubert" {
        return None;
    }
    let [m, n] = md.box_size?;
    let parent = grassmann_ideal(m, n);
    if system.ambient() != parent.ambient()
        || system.generator_count() < parent.generator_count()
        || system.generators()[..parent.generator_count()] != parent.generators()[..]
    {
        return None;
    }
    let inner = projectively_q_closed_certificate(&parent);
    if inner.kind != CertificateKind::ProjectivelyQClosed {
        return None;
    }
    Some(Certificate {
        kind: CertificateKind::ProjectivelyQClosed,
        evidence: Evidence::Containment { parent: "grassmann".to_string(), inner: Box::new(inner) },
    })
}

fn coordinate_square_sum(ambient: &Ambient, vars: std::ops::Range<usize>) -> Poly {
    let mut sum = Poly::zero(ambient);
    for v in vars {
        let x = Poly::variable(ambient, v);
        sum = &sum + &(&x * &x);
    }
    sum
}

/// Mirrors the variety through the unit sphere: each term c·x^α of each
/// generator is multiplied by |x|^{2(e−|α|)}. For p ≠ 0 the transformed
/// generators at x = p/|p|² equal the originals at p divided by |p|^{2e},
/// so the zero sets correspond exactly away from the origin; the origin
/// itself lands in the transformed zero set whenever e exceeds the degree of
/// every term. The exponent must be at least the maximum generator degree.
pub fn inversion_compactify(system: &PolySystem, e: u32) -> Result<PolySystem, CertifyError> {
    let max_degree = system.max_degree();
    if e < max_degree {
        return Err(CertifyError::DegreeTooSmall { exponent: e, max_degree });
    }
    let ambient = system.ambient();
    let radius = coordinate_square_sum(ambient, 0..ambient.len());
    let generators = system
        .generators()
        .iter()
        .map(|g| {
            let mut out = Poly::zero(ambient);
            for (mono, coeff) in g.terms() {
                let term = Poly::from_terms(ambient, [(mono.clone(), coeff.clone())]);
                out = &out + &(&term * &radius.pow(e - mono.degree()));
            }
            out
        })
        .collect();
    let mut metadata = SystemMetadata::named("inversion_compactify");
    metadata.note = Some(format!("exponent e = {e}"));
    metadata.base_metadata = Some(Box::new(system.metadata().clone()));
    Ok(PolySystem::new(ambient.clone(), generators, metadata))
}

/// Removes the origin branch a compactification introduced: one fresh
/// variable y is adjoined together with the relation y·|x|² = constant,
/// which forces |x|² ≠ 0 on the lifted zero set and is satisfiable with
/// y = constant/|p|² over every other point p of the original set.
pub fn puncture_lift(system: &PolySystem, constant: &Rational) -> Result<PolySystem, CertifyError> {
    if constant.is_zero() {
        return Err(CertifyError::ZeroConstant);
    }
    let base = system.ambient();
    let mut fresh = "y".to_string();
    while base.index_of(&fresh).is_some() {
        fresh.push('_');
    }
    let ambient = base.extend(&[fresh]);
    let radius = coordinate_square_sum(&ambient, 0..base.len());
    let y = Poly::variable(&ambient, ambient.len() - 1);
    let mut generators: Vec<Poly> =
        system.generators().iter().map(|g| g.lift_to(&ambient)).collect();
    generators.push(&(&y * &radius) - &Poly::constant(&ambient, constant.clone()));
    let mut metadata = SystemMetadata::named("puncture_lift");
    metadata.note = Some(format!("y * |x|^2 = {constant}"));
    metadata.base_metadata = Some(Box::new(system.metadata().clone()));
    Ok(PolySystem::new(ambient, generators, metadata))
}

/// Re-runs the check recorded in a certificate against `system` and reports
/// whether the recomputation reproduces the certificate exactly. Malformed
/// or mismatched payloads replay as false rather than erroring.
pub fn replay_certificate(system: &PolySystem, certificate: &Certificate) -> bool {
    let fresh = match &certificate.evidence {
        Evidence::JacobianWitness { point, required, .. }
        | Evidence::JacobianShortfall { point, required, .. } => {
            let Some(expected_dim) = system.ambient().len().checked_sub(*required) else {
                return false;
            };
            match verify_q_jacobian_witness(system, point, expected_dim) {
                Ok(cert) => cert,
                Err(_) => return false,
            }
        }
        Evidence::OvertUnivariate { .. } | Evidence::OvertDiagonalForm { .. } => {
            if system.generator_count() == 0 {
                return false;
            }
            let target = if system.generator_count() == 1 {
                system.generators()[0].clone()
            } else {
                sos_collapse(system)
            };
            match overt_certificate(&target) {
                Ok(cert) => cert,
                Err(_) => return false,
            }
        }
        _ => projectively_q_closed_certificate(system),
    };
    &fresh == certificate
}
