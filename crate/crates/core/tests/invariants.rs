//! Property tests for the exact arithmetic layers and the counting masses.

use fqlab::cyclotomic::CycNum;
use fqlab::distlab::{self, pinned};
use fqlab::field::FieldSpec;
use fqlab::grid::{grid_size, GridPoint, PointSet};
use fqlab::simplex;
use num_rational::BigRational;
use proptest::prelude::*;

fn cyc_from(p: u64, raw: &[i64]) -> CycNum {
    let coeffs: Vec<BigRational> =
        raw[..(p - 1) as usize].iter().map(|&c| BigRational::from_integer(c.into())).collect();
    CycNum::from_coeffs(coeffs)
}

fn small_p() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11)]
}

fn coeff_vec() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..10, 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(p in small_p(), av in coeff_vec(), bv in coeff_vec(), cv in coeff_vec()) {
        let a = cyc_from(p, &av);
        let b = cyc_from(p, &bv);
        let c = cyc_from(p, &cv);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert!(a.norm_sq().is_real());
    }

    #[test]
    fn embedding_is_a_homomorphism(p in small_p(), av in coeff_vec(), bv in coeff_vec()) {
        let a = cyc_from(p, &av);
        let b = cyc_from(p, &bv);
        let sum_err = (a.add(&b).embed() - (a.embed() + b.embed())).norm();
        let mul_err = (a.mul(&b).embed() - (a.embed() * b.embed())).norm();
        prop_assert!(sum_err < 1e-12 && mul_err < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counting_masses(seed in 0u64..10_000, qsel in 0usize..3, size_frac in 1u64..5) {
        let q = [3u64, 5, 7][qsel];
        let field = FieldSpec::new(q, 1).unwrap();
        let n = grid_size(q, 2);
        let size = (n * size_frac / 5).max(1);
        let mut rng = fqlab::DetRng::new(seed);
        let e = PointSet::from_indices(q, 2, rng.distinct(n, size));

        // Σ_t ν(t) = |E|²
        let table = distlab::nu(&field, &e).unwrap();
        prop_assert_eq!(table.mass(), size * size);

        // Σ_t ν_y(t) = |E| and Σ_s η_y(s) = |E| for every pin
        for y in e.points().into_iter().take(4) {
            prop_assert_eq!(pinned::pinned_nu(&field, &e, &y).unwrap().mass(), size);
            prop_assert_eq!(pinned::eta(&field, &e, &y).unwrap().mass(), size);
        }

        // second-moment bounds hold on every draw
        prop_assert!(pinned::pinned_second_moment_check(&field, &e).unwrap().holds);
        prop_assert!(pinned::dot_second_moment_check(&field, &e).unwrap().holds);
    }

    #[test]
    fn isometries_preserve_counts(seed in 0u64..10_000) {
        let field = FieldSpec::new(5, 1).unwrap();
        let mut rng = fqlab::DetRng::new(seed);
        let e = PointSet::from_indices(5, 2, rng.distinct(25, 8));
        let o = simplex::random_orthogonal(&field, 2, seed ^ 0xabc);
        prop_assert!(o.is_orthogonal(&field));
        let tau = GridPoint::decode(5, 2, rng.below(25));
        let moved = simplex::apply_isometry(&field, &e, &o, &tau);

        let t1 = distlab::nu(&field, &e).unwrap();
        let t2 = distlab::nu(&field, &moved).unwrap();
        prop_assert_eq!(t1.counts(), t2.counts());
        prop_assert_eq!(
            distlab::distance_set(&field, &e).unwrap(),
            distlab::distance_set(&field, &moved).unwrap()
        );
    }

    #[test]
    fn canonical_class_isometry_invariance(seed in 0u64..10_000) {
        let field = FieldSpec::new(5, 1).unwrap();
        let mut rng = fqlab::DetRng::new(seed);
        let tuple: Vec<GridPoint> =
            (0..3).map(|_| GridPoint::decode(5, 2, rng.below(25))).collect();
        let o = simplex::random_orthogonal(&field, 2, seed);
        let tau = GridPoint::decode(5, 2, rng.below(25));
        let moved: Vec<GridPoint> = tuple
            .iter()
            .map(|v| fqlab::grid::add_points(&field, &o.apply(&field, v), &tau))
            .collect();
        prop_assert_eq!(
            simplex::canonical_class(&field, &tuple),
            simplex::canonical_class(&field, &moved)
        );
    }
}
