//! Randomized and exhaustive cross-checks of the library's exact invariants.
//! Oracles here are deliberately independent of the implementation: ranks are
//! re-derived from cofactor determinants, derivatives from shift expansions,
//! Betti sums from binomial identities.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use schubertq_core::bottsamelson::section_over_cell;
use schubertq_core::bundles::sample_sphere_bundle_point;
use schubertq_core::certify::{
    overt_certificate, puncture_lift, sos_collapse, verify_q_jacobian_witness, CertificateKind,
    inversion_compactify,
};
use schubertq_core::exactmath::{
    Ambient, Monomial, Poly, PolyMatrix, PolySystem, Rational, RationalMatrix, SystemMetadata,
};
use schubertq_core::grassmann::{
    grassmann_ideal, is_on_grassmannian, sample_grassmann_point, GrassmannPoint,
};
use schubertq_core::partitions::{betti_numbers, partitions_in_box, Partition};
use schubertq_core::schubert::{
    open_cell_membership, sample_open_cell_point, schubert_ideal, schubert_membership,
};

fn plane() -> Ambient {
    Ambient::from_names(&["x1", "x2", "x3"])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::ratio(p, q))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -5i64..=5), 0..5).prop_map(|terms| {
        Poly::from_terms(
            &plane(),
            terms.into_iter().map(|((e1, e2, e3), c)| {
                (Monomial::new(vec![e1, e2, e3]), Rational::from_int(c))
            }),
        )
    })
}

fn small_point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 3)
}

fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=4).prop_flat_map(|size| {
        prop::collection::vec(
            prop::collection::vec((-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::ratio(p, q)), size),
            size,
        )
        .prop_map(RationalMatrix::from_rows)
    })
}

fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let mut i = k;
        while i > 0 {
            i -= 1;
            if current[i] + 1 <= n - (k - i) {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

fn cofactor_determinant(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut det = Rational::zero();
    let mut negate = false;
    for (k, &r) in rows.iter().enumerate() {
        let entry = m.get(r, cols[0]);
        if !entry.is_zero() {
            let mut sub = rows.to_vec();
            sub.remove(k);
            let minor = cofactor_determinant(m, &sub, &cols[1..]);
            let signed = if negate { -(entry * &minor) } else { entry * &minor };
            det = &det + &signed;
        }
        negate = !negate;
    }
    det
}

fn minor_rank(m: &RationalMatrix) -> usize {
    let bound = m.rows().min(m.cols());
    for k in (1..=bound).rev() {
        for rows in index_combinations(m.rows(), k) {
            for cols in index_combinations(m.cols(), k) {
                if !cofactor_determinant(m, &rows, &cols).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Coefficient of t in p(point + t·e_j), expanded binomially term by term.
fn shift_linear_coefficient(p: &Poly, point: &[Rational], j: usize) -> Rational {
    let mut total = Rational::zero();
    for (mono, coeff) in p.terms() {
        let exps = mono.exponents();
        if exps[j] == 0 {
            continue;
        }
        let mut contribution = coeff.clone();
        for (i, &e) in exps.iter().enumerate() {
            if i == j {
                continue;
            }
            for _ in 0..e {
                contribution = &contribution * &point[i];
            }
        }
        contribution = &contribution * &Rational::from_int(exps[j] as i64);
        for _ in 0..exps[j] - 1 {
            contribution = &contribution * &point[j];
        }
        total = &total + &contribution;
    }
    total
}

proptest! {
    #[test]
    fn polynomial_arithmetic_is_a_commutative_ring(
        p in small_poly(),
        q in small_poly(),
        r in small_poly(),
    ) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p - &p, Poly::zero(&plane()));
    }

    #[test]
    fn printed_polynomials_parse_back(p in small_poly()) {
        let text = p.to_string();
        prop_assert_eq!(Poly::parse(&plane(), &text).unwrap(), p);
    }

    #[test]
    fn jacobian_entries_match_shift_expansion(p in small_poly(), point in small_point()) {
        for j in 0..3 {
            let direct = p.partial_derivative(j).evaluate(&point).unwrap();
            prop_assert_eq!(direct, shift_linear_coefficient(&p, &point, j));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_agrees_with_the_minor_oracle(m in small_matrix()) {
        prop_assert_eq!(m.rank(), minor_rank(&m));
        let all_rows: Vec<usize> = (0..m.rows()).collect();
        let det = cofactor_determinant(&m, &all_rows, &all_rows);
        prop_assert_eq!(m.rank() == m.rows(), !det.is_zero());
    }

    #[test]
    fn symbolic_minors_commute_with_evaluation(
        point in prop::collection::vec(rational(), 9),
        size in 1usize..=2,
    ) {
        let names: Vec<String> = (0..9).map(|i| format!("m{i}")).collect();
        let ambient = Ambient::new(names);
        let matrix = PolyMatrix::of_variables(&ambient, 0, 3, 3);
        let minors = matrix.minors(size).unwrap();
        let value = matrix.evaluate(&point).unwrap();
        let mut oracle = Vec::new();
        for rows in index_combinations(3, size) {
            for cols in index_combinations(3, size) {
                oracle.push(cofactor_determinant(&value, &rows, &cols));
            }
        }
        let evaluated: Vec<Rational> =
            minors.iter().map(|p| p.evaluate(&point).unwrap()).collect();
        prop_assert_eq!(evaluated, oracle);
    }
}

#[test]
fn profiles_rebuild_their_partitions() {
    for m in 1..=4 {
        for n in 1..=4 {
            for lambda in partitions_in_box(m, n) {
                assert_eq!(lambda.profile().rebuild_parts(), lambda.parts());
            }
        }
    }
}

#[test]
fn betti_numbers_sum_to_binomials() {
    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for m in 1..=5 {
        for n in 1..=5 {
            let betti = betti_numbers(m, n);
            assert_eq!(betti.len(), m * n + 1);
            assert_eq!(betti.iter().sum::<usize>(), binomial(m + n, m));
            assert_eq!(betti, betti_numbers(n, m));
        }
    }
}

#[test]
fn normalization_shrinks_to_a_normalized_core() {
    use schubertq_core::partitions::{NormalizeMove, NormalizedCore};
    for m in 1..=4 {
        for n in 1..=4 {
            for lambda in partitions_in_box(m, n) {
                let (core, moves) = lambda.normalize();
                let spent: usize = moves
                    .iter()
                    .map(|mv| match mv {
                        NormalizeMove::StripTop { rows } => *rows,
                        NormalizeMove::ShrinkAmbient { amount } => *amount,
                    })
                    .sum();
                for mv in &moves {
                    match mv {
                        NormalizeMove::StripTop { rows } => assert!(*rows > 0),
                        NormalizeMove::ShrinkAmbient { amount } => assert!(*amount > 0),
                    }
                }
                match core {
                    NormalizedCore::Core(core) => {
                        assert!(core.is_normalized());
                        let (cm, cn) = core.box_size();
                        assert_eq!(cm + cn + spent, m + n);
                        if lambda.is_normalized() {
                            assert_eq!(core, lambda);
                            assert!(moves.is_empty());
                        }
                    }
                    NormalizedCore::Point { box_n } => {
                        assert_eq!(box_n + spent, m + n);
                    }
                }
            }
        }
    }
}

#[test]
fn cell_dimension_complements_weight() {
    for m in 1..=4 {
        for n in 1..=4 {
            for lambda in partitions_in_box(m, n) {
                assert_eq!(lambda.cell_dimension() + lambda.weight(), m * n);
            }
        }
    }
}

#[test]
fn bruhat_leq_is_a_partial_order() {
    for (m, n) in [(2, 2), (2, 3)] {
        let all = partitions_in_box(m, n);
        for a in &all {
            assert!(a.bruhat_leq(a).unwrap());
            for b in &all {
                let ab = a.bruhat_leq(b).unwrap();
                let ba = b.bruhat_leq(a).unwrap();
                if ab && ba {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if ab && b.bruhat_leq(c).unwrap() {
                        assert!(a.bruhat_leq(c).unwrap());
                    }
                }
            }
        }
    }
    let small = Partition::new(1, 1, vec![0]).unwrap();
    let wide = Partition::new(1, 2, vec![1]).unwrap();
    assert!(small.bruhat_leq(&wide).is_err());
}

#[test]
fn erasing_a_depression_decrements_the_count() {
    for m in 1..=3 {
        for n in 1..=3 {
            for lambda in partitions_in_box(m, n) {
                if !lambda.is_normalized() {
                    continue;
                }
                let before = lambda.profile().depressions.len();
                match lambda.erase_first_depression() {
                    Ok(smaller) => {
                        assert_eq!(smaller.profile().depressions.len() + 1, before);
                    }
                    Err(_) => assert_eq!(before, 0),
                }
            }
        }
    }
}

#[test]
fn sampled_span_projections_are_exact() {
    for m in 1..=3usize {
        for n in 1..=3usize {
            for seed in 0..4u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let point = sample_grassmann_point(m, n, &mut rng);
                let p = point.matrix();
                assert!(p.is_symmetric());
                assert_eq!(p.mul(p), *p);
                assert_eq!(p.rank(), m);
                assert_eq!(p.trace(), Rational::from_int(m as i64));
            }
        }
    }
}

#[test]
fn grassmann_jacobians_have_constant_rank() {
    for m in 1..=2usize {
        for n in 1..=2usize {
            let system = grassmann_ideal(m, n);
            let expected = (m + n) * (m + n) - m * n;
            for seed in 0..4u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let point = sample_grassmann_point(m, n, &mut rng).coordinates();
                assert!(system.vanishes_at(&point).unwrap());
                assert_eq!(system.jacobian_at(&point).unwrap().rank(), expected);
            }
        }
    }
}

#[test]
fn signed_permutations_preserve_the_grassmannian() {
    use rand::seq::SliceRandom;
    use rand::Rng;
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let size = m + n;
        for seed in 0..6u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..size).collect();
            order.shuffle(&mut rng);
            let mut g = RationalMatrix::zeros(size, size);
            for (row, &col) in order.iter().enumerate() {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                g.set(row, col, Rational::from_int(sign));
            }
            let p = sample_grassmann_point(m, n, &mut rng);
            let conjugated = g.transpose().mul(p.matrix()).mul(&g);
            assert!(is_on_grassmannian(&conjugated, m, n).unwrap());
        }
    }
}

fn small_boxes() -> Vec<(usize, usize)> {
    vec![(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]
}

#[test]
fn membership_matches_minor_vanishing() {
    for (m, n) in small_boxes() {
        let grassmann_count = grassmann_ideal(m, n).generator_count();
        let mut points: Vec<GrassmannPoint> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            points.push(sample_grassmann_point(m, n, &mut rng));
        }
        for lambda in partitions_in_box(m, n) {
            points.push(sample_open_cell_point(&lambda, &mut rng));
        }
        for lambda in partitions_in_box(m, n) {
            let system = schubert_ideal(&lambda);
            for point in &points {
                let coords = point.coordinates();
                let minors_vanish = system.generators()[grassmann_count..]
                    .iter()
                    .all(|g| g.evaluate(&coords).unwrap().is_zero());
                let member = schubert_membership(point.matrix(), &lambda).unwrap();
                assert_eq!(member, minors_vanish, "{lambda:?} at {coords:?}");
            }
        }
    }
}

#[test]
fn containment_follows_bruhat_order() {
    for (m, n) in small_boxes() {
        let all = partitions_in_box(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for mu in &all {
            let samples: Vec<GrassmannPoint> =
                (0..2).map(|_| sample_open_cell_point(mu, &mut rng)).collect();
            for lambda in &all {
                if lambda.bruhat_leq(mu).unwrap() {
                    for point in &samples {
                        assert!(schubert_membership(point.matrix(), lambda).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn each_sample_lies_in_exactly_one_open_cell() {
    for (m, n) in small_boxes() {
        let all = partitions_in_box(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut points: Vec<GrassmannPoint> = Vec::new();
        for _ in 0..2 {
            points.push(sample_grassmann_point(m, n, &mut rng));
        }
        for lambda in &all {
            let point = sample_open_cell_point(lambda, &mut rng);
            assert!(open_cell_membership(point.matrix(), lambda).unwrap());
            points.push(point);
        }
        for point in &points {
            let homes: Vec<&Partition> = all
                .iter()
                .filter(|lambda| open_cell_membership(point.matrix(), lambda).unwrap())
                .collect();
            assert_eq!(homes.len(), 1);
            let home = homes[0];
            for nu in &all {
                assert_eq!(
                    schubert_membership(point.matrix(), nu).unwrap(),
                    nu.bruhat_leq(home).unwrap()
                );
            }
        }
    }
}

#[test]
fn sections_solve_the_system_in_the_two_box() {
    use schubertq_core::bottsamelson::bott_samelson_ideal;
    for lambda in partitions_in_box(2, 2) {
        if !lambda.is_normalized() {
            continue;
        }
        let resolution = bott_samelson_ideal(&lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3 {
            let point = sample_open_cell_point(&lambda, &mut rng);
            let tuple = section_over_cell(&point, &lambda).unwrap();
            assert!(resolution.system.vanishes_at(&tuple).unwrap());
        }
    }
}

#[test]
fn sphere_bundle_jacobian_ranks_split_as_documented() {
    use schubertq_core::bundles::sphere_bundle_ideal;
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let size = m + n;
        let system = sphere_bundle_ideal(m, n);
        let threshold = size * size - m * n + n;
        let mut membership_gens = system.generators().to_vec();
        let sphere_equation = membership_gens.pop().unwrap();
        let trace_index = schubertq_core::grassmann::trace_generator_index(m, n);
        membership_gens.remove(trace_index);
        let membership = PolySystem::new(
            system.ambient().clone(),
            membership_gens.clone(),
            SystemMetadata::named("test"),
        );
        let mut phi_gens = membership_gens;
        phi_gens.push(sphere_equation);
        let phi = PolySystem::new(system.ambient().clone(), phi_gens, SystemMetadata::named("test"));
        for seed in 0..3u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let point = sample_sphere_bundle_point(m, n, &mut rng);
            assert!(system.vanishes_at(&point).unwrap());
            assert_eq!(membership.jacobian_at(&point).unwrap().rank(), threshold);
            assert_eq!(phi.jacobian_at(&point).unwrap().rank(), threshold + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sos_vanishing_equals_simultaneous_vanishing(
        gens in prop::collection::vec(small_poly(), 1..4),
        point in small_point(),
    ) {
        let system = PolySystem::new(plane(), gens, SystemMetadata::named("test"));
        let sos = sos_collapse(&system);
        prop_assert_eq!(
            sos.evaluate(&point).unwrap().is_zero(),
            system.vanishes_at(&point).unwrap()
        );
    }

    #[test]
    fn witness_verdicts_survive_redundant_padding(h in small_poly()) {
        let ambient = plane();
        let g = Poly::parse(&ambient, "x1^2 + x2^2 + x3^2 - 1").unwrap();
        let base = PolySystem::new(ambient.clone(), vec![g.clone()], SystemMetadata::named("test"));
        let padded = PolySystem::new(
            ambient,
            vec![g.clone(), &h * &g],
            SystemMetadata::named("test"),
        );
        let point = vec![Rational::ratio(3, 5), Rational::ratio(4, 5), Rational::zero()];
        let plain = verify_q_jacobian_witness(&base, &point, 2).unwrap();
        let fat = verify_q_jacobian_witness(&padded, &point, 2).unwrap();
        prop_assert_eq!(plain.kind, fat.kind);
        prop_assert_eq!(plain.evidence, fat.evidence);
    }

    #[test]
    fn overt_positive_verdicts_are_sound(
        p in small_poly(),
        probes in prop::collection::vec(small_point(), 4),
    ) {
        if !p.is_zero() {
            let cert = overt_certificate(&p).unwrap();
            if cert.kind == CertificateKind::Overt {
                let lead = p.leading_form().unwrap();
                for probe in probes {
                    if probe.iter().all(Rational::is_zero) {
                        continue;
                    }
                    prop_assert!(!lead.evaluate(&probe).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn compactification_preserves_membership_off_the_origin(
        p in small_poly(),
        point in small_point(),
    ) {
        if point.iter().all(Rational::is_zero) {
            return Ok(());
        }
        let system = PolySystem::new(plane(), vec![p.clone()], SystemMetadata::named("test"));
        let out = inversion_compactify(&system, system.max_degree()).unwrap();
        let norm = point.iter().fold(Rational::zero(), |acc, x| &acc + &(x * x));
        let scale = norm.recip().unwrap();
        let mirrored: Vec<Rational> = point.iter().map(|x| x * &scale).collect();
        prop_assert_eq!(
            out.vanishes_at(&mirrored).unwrap(),
            system.vanishes_at(&point).unwrap()
        );
    }

    #[test]
    fn puncture_lifts_mirror_membership(
        p in small_poly(),
        point in small_point(),
        c in (1i64..=9, 1i64..=3).prop_map(|(a, b)| Rational::ratio(a, b)),
    ) {
        if point.iter().all(Rational::is_zero) {
            return Ok(());
        }
        let system = PolySystem::new(plane(), vec![p.clone()], SystemMetadata::named("test"));
        let lifted = puncture_lift(&system, &c).unwrap();
        let norm = point.iter().fold(Rational::zero(), |acc, x| &acc + &(x * x));
        let mut upstairs = point.clone();
        upstairs.push(&c / &norm);
        prop_assert_eq!(
            lifted.vanishes_at(&upstairs).unwrap(),
            system.vanishes_at(&point).unwrap()
        );
        let mut origin = vec![Rational::zero(); 3];
        origin.push(c);
        prop_assert!(!lifted.vanishes_at(&origin).unwrap());
    }
}
