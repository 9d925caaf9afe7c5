mod common;

use apartments_core::combinatorics::{count_complementary_containing, maximal_inexact};
use apartments_core::transform::{
    check_compatibility_preserving, check_orthogonality_preserving, pipeline_check, plane_rotation, Stage,
};
use apartments_core::{ExactUnitary, GaussianRational, GeometricApartment, MapFixture, Matrix};
use num_rational::BigRational;
use rand::Rng;

const PYTHAGOREAN: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Product of random plane rotations and a diagonal of fourth roots of unity.
fn random_unitary(rng: &mut impl Rng, n: usize) -> ExactUnitary {
    let mut m = Matrix::identity(n);
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let (a, b, c) = PYTHAGOREAN[rng.gen_range(0..PYTHAGOREAN.len())];
        let r = plane_rotation(n, i, j, &ratio(a, c), &ratio(b, c)).unwrap();
        m = r.matrix().mul(&m).unwrap();
    }
    let mut phases = Matrix::identity(n);
    for i in 0..n {
        phases[(i, i)] = [(1, 0), (0, 1), (-1, 0), (0, -1)]
            .map(|(re, im)| GaussianRational::from_ints(re, im))[rng.gen_range(0..4)]
        .clone();
    }
    ExactUnitary::new(phases.mul(&m).unwrap(), rng.gen_bool(0.5)).unwrap()
}

#[test]
fn apply_preserves_inner_products_up_to_conjugation() {
    let mut rng = common::rng(31);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let u = random_unitary(&mut rng, n);
        let x = common::random_vector(&mut rng, n, 3);
        let y = common::random_vector(&mut rng, n, 3);
        let before = x.hermitian_inner(&y).unwrap();
        let after = u.apply_vector(&x).unwrap().hermitian_inner(&u.apply_vector(&y).unwrap()).unwrap();
        if u.is_conjugating() {
            assert_eq!(after, before.conj());
        } else {
            assert_eq!(after, before);
        }
    }
}

#[test]
fn apply_preserves_dimension_orthogonality_and_compatibility() {
    let mut rng = common::rng(32);
    for _ in 0..80 {
        let n = rng.gen_range(2..=5);
        let u = random_unitary(&mut rng, n);
        let (x, y) = common::random_pair(&mut rng, n);
        let (ux, uy) = (u.apply(&x).unwrap(), u.apply(&y).unwrap());
        assert_eq!(ux.dim(), x.dim());
        assert_eq!(ux.is_orthogonal(&uy).unwrap(), x.is_orthogonal(&y).unwrap());
        assert_eq!(
            apartments_core::is_compatible(&ux, &uy).unwrap(),
            apartments_core::is_compatible(&x, &y).unwrap()
        );
    }
}

#[test]
fn rotated_apartment_meets_the_original_in_a_maximal_inexact_set() {
    for n in 3..=7 {
        for k in 1..n {
            let a = GeometricApartment::standard(n, k).unwrap();
            for p in a.shape().pairs() {
                for (num_c, num_s, den) in [(3, 4, 5), (12, -5, 13)] {
                    let r = plane_rotation(n, p.lo(), p.hi(), &ratio(num_c, den), &ratio(num_s, den)).unwrap();
                    let shared = a.shared_members(&r.image_apartment(&a).unwrap()).unwrap();
                    assert_eq!(shared, maximal_inexact(a.shape(), p).unwrap(), "n={n} k={k} {p:?}");
                }
            }
        }
    }
}

#[test]
fn quarter_turn_rotation_keeps_the_apartment() {
    // c = 0 only swaps the base vectors up to sign
    let a = GeometricApartment::standard(5, 2).unwrap();
    let r = plane_rotation(5, 0, 1, &ratio(0, 1), &ratio(1, 1)).unwrap();
    assert_eq!(a.shared_members(&r.image_apartment(&a).unwrap()).unwrap().len(), 10);
}

#[test]
fn random_unitary_fixtures_pass_every_check() {
    let mut rng = common::rng(33);
    for _ in 0..6 {
        let n = rng.gen_range(4..=5);
        let k = rng.gen_range(2..n - 1);
        let base = common::random_orthogonal_base(&mut rng, n);
        let a = GeometricApartment::new(base, k).unwrap();
        let u = random_unitary(&mut rng, n);
        let b = apartments_core::transform::perturbed_apartment(&a, a.shape().pairs().next().unwrap()).unwrap();
        let f = MapFixture::from_unitary_on_apartments(&u, &[a.clone(), b.clone()], "random").unwrap();
        assert!(check_compatibility_preserving(&f).unwrap().passes());
        assert!(check_orthogonality_preserving(&f).unwrap().passes());
        for apt in [&a, &b] {
            let report = pipeline_check(&f, apt).unwrap();
            assert!(report.passes(), "{report:?}");
        }
    }
}

#[test]
fn count_stage_agrees_with_coordinates_on_both_sides() {
    let mut rng = common::rng(34);
    let n = 5;
    let a = GeometricApartment::standard(n, 2).unwrap();
    let u = random_unitary(&mut rng, n);
    let image = u.image_apartment(&a).unwrap();
    let f = MapFixture::from_unitary_on_apartments(&u, std::slice::from_ref(&a), "standard").unwrap();
    let report = pipeline_check(&f, &a).unwrap();
    assert_eq!(report.stage(Stage::ComplementaryCount).failures, 0);
    for (x, xs) in a.members() {
        for (y, ys) in a.members() {
            let fx = image.coordinatize(f.image_of(&xs).unwrap()).unwrap().unwrap();
            let fy = image.coordinatize(f.image_of(&ys).unwrap()).unwrap().unwrap();
            assert_eq!(
                count_complementary_containing(a.shape(), &x, &y).unwrap(),
                count_complementary_containing(image.shape(), &fx, &fy).unwrap()
            );
        }
    }
}

#[test]
fn rank_one_compatibility_and_orthogonality_reports_coincide() {
    let mut rng = common::rng(35);
    let n = 4;
    let a = GeometricApartment::standard(n, 1).unwrap();
    let b = apartments_core::transform::perturbed_apartment(&a, a.shape().pairs().next().unwrap()).unwrap();
    let f = MapFixture::from_unitary_on_apartments(&random_unitary(&mut rng, n), &[a, b], "lines").unwrap();
    let g = f.with_images_swapped(0, 5).unwrap();
    for fixture in [&f, &g] {
        let compat = check_compatibility_preserving(fixture).unwrap();
        let orth = check_orthogonality_preserving(fixture).unwrap();
        let strip = |r: &apartments_core::transform::PreservationReport| {
            r.violations.iter().map(|v| (v.first, v.second)).collect::<Vec<_>>()
        };
        assert_eq!(strip(&compat), strip(&orth));
    }
    assert!(!check_orthogonality_preserving(&g).unwrap().passes());
}
