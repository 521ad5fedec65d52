//! Cartesian-product slices E_z = π(E) × {z} and the slice-pinned counts.
//!
//! π drops the last coordinate; the pins ỹ = (π(y), z) range over E_z,
//! which need not be a subset of E. Under |E||E_z| ≥ q^d the mean pinned
//! distance image exceeds q/3 and the mean pinned dot image exceeds q/2
//! (the latter for z ≠ 0).

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::{grid_size, PointSet};
use super::pinned::PairKind;
use super::CheckStatus;
use num_bigint::BigInt;
use num_rational::BigRational;

/// E_z = π(E) × {z}, as a point set in the same dimension d.
pub fn slice(field: &FieldSpec, set: &PointSet, z: Fq) -> Result<PointSet> {
    let _ = field;
    if set.is_empty() {
        return Err(Error::ZSliceEmpty);
    }
    let q = set.q();
    let low = grid_size(q, set.d() - 1);
    let mut proj: Vec<u64> = set.members().iter().map(|&i| i % low).collect();
    proj.sort_unstable();
    proj.dedup();
    Ok(PointSet::from_indices(q, set.d(), proj.into_iter().map(|i| i + z.index() * low)))
}

#[derive(Debug, Clone)]
pub struct SliceCheck {
    pub status: CheckStatus,
    /// Mean image size over the pin pool E_z.
    pub mean: BigRational,
    /// The theorem threshold (q/3 for distances, q/2 for dot products).
    pub threshold: BigRational,
    pub pool_size: u64,
}

/// Mean over ỹ ∈ E_z of |Δ^{(z)}_y(E)| (distance) or |Π^{(z)}_y(E)| (dot).
/// Skipped when the size hypothesis |E||E_z| ≥ q^d fails, or for the dot
/// kind with z = 0.
pub fn slice_pinned_check(
    field: &FieldSpec,
    set: &PointSet,
    z: Fq,
    kind: PairKind,
) -> Result<SliceCheck> {
    let q = field.q();
    let d = set.d();
    let pins = slice(field, set, z)?;
    let mc = set.member_coords();
    let pin_mc = pins.member_coords();
    let mut seen = vec![false; q as usize];
    let mut sum_images: u128 = 0;
    for pin in 0..pin_mc.len() {
        seen.fill(false);
        let y = pin_mc.coord(pin);
        for x in 0..mc.len() {
            let xc = mc.coord(x);
            let v = match kind {
                PairKind::Distance => {
                    let mut acc = Fq::ZERO;
                    for (&a, &b) in xc.iter().zip(y.iter()) {
                        let t = field.sub(a, b);
                        acc = field.add(acc, field.mul(t, t));
                    }
                    acc
                }
                PairKind::Dot => {
                    let mut acc = Fq::ZERO;
                    for (&a, &b) in xc.iter().zip(y.iter()) {
                        acc = field.add(acc, field.mul(a, b));
                    }
                    acc
                }
            };
            seen[v.0 as usize] = true;
        }
        sum_images += seen.iter().filter(|&&s| s).count() as u128;
    }
    let pool = pins.len();
    let mean = BigRational::new(BigInt::from(sum_images), BigInt::from(pool));
    let (tn, td) = match kind {
        PairKind::Distance => (q, 3u64),
        PairKind::Dot => (q, 2u64),
    };
    let threshold = BigRational::new(BigInt::from(tn), BigInt::from(td));
    let hypothesis = (set.len() as u128) * (pool as u128) >= (q as u128).pow(d)
        && !(kind == PairKind::Dot && z == Fq::ZERO);
    let status = if !hypothesis {
        CheckStatus::Skipped
    } else if mean > threshold {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(SliceCheck { status, mean, threshold, pool_size: pool })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cartesian_product;
    use crate::grid::GridPoint;

    #[test]
    fn slice_of_full_grid() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let full = PointSet::full(5, 3);
        let ez = slice(&f5, &full, Fq(2)).unwrap();
        assert_eq!(ez.len(), 25);
        for p in ez.points() {
            assert_eq!(p.coords[2], Fq(2));
        }
        // full grid: every pinned distance image is all of F_q, mean = q > q/3
        let check = slice_pinned_check(&f5, &full, Fq(2), PairKind::Distance).unwrap();
        assert_eq!(check.status, CheckStatus::Pass);
        assert_eq!(check.mean, BigRational::from_integer(5.into()));
    }

    #[test]
    fn slice_is_projection_cross_z() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let e = PointSet::from_points(
            3,
            2,
            &[
                GridPoint::new(vec![Fq(0), Fq(1)]),
                GridPoint::new(vec![Fq(0), Fq(2)]),
                GridPoint::new(vec![Fq(2), Fq(0)]),
            ],
        );
        let ez = slice(&f3, &e, Fq(1)).unwrap();
        // π(E) = {0, 2}: two pins at last coordinate 1
        assert_eq!(
            ez.points(),
            vec![GridPoint::new(vec![Fq(0), Fq(1)]), GridPoint::new(vec![Fq(2), Fq(1)])]
        );
        assert!(matches!(
            slice(&f3, &PointSet::empty(3, 2), Fq(0)),
            Err(Error::ZSliceEmpty)
        ));
    }

    #[test]
    fn product_set_slice_checks() {
        // E = A×A ⊆ F_5², A = {0,1,2,3}, z = 1: |E||E_z| = 16·4 ≥ 25
        let f5 = FieldSpec::new(5, 1).unwrap();
        let a: Vec<Fq> = (0..4).map(Fq).collect();
        let e = cartesian_product(&f5, &[a.clone(), a]).unwrap();
        let dist = slice_pinned_check(&f5, &e, Fq(1), PairKind::Distance).unwrap();
        assert_eq!(dist.status, CheckStatus::Pass, "{dist:?}");
        let dot = slice_pinned_check(&f5, &e, Fq(1), PairKind::Dot).unwrap();
        assert_eq!(dot.status, CheckStatus::Pass, "{dot:?}");
        // z = 0 in dot kind is vacuous
        let dot0 = slice_pinned_check(&f5, &e, Fq(0), PairKind::Dot).unwrap();
        assert_eq!(dot0.status, CheckStatus::Skipped);
        // tiny set: hypothesis fails
        let tiny = PointSet::from_indices(5, 2, [0u64, 6]);
        let sk = slice_pinned_check(&f5, &tiny, Fq(1), PairKind::Distance).unwrap();
        assert_eq!(sk.status, CheckStatus::Skipped);
    }

    #[test]
    fn product_thresholds_at_corollary_scale() {
        // E = A^d with |E| ≥ q^{d²/(2d−1)}: every z-slice check passes
        for (q, d, m) in [(5u64, 2u32, 3u64), (7, 2, 4), (5, 3, 3), (9, 2, 5)] {
            let field = FieldSpec::from_q(q).unwrap();
            let a: Vec<Fq> = (0..m as u32).map(Fq).collect();
            let sets: Vec<Vec<Fq>> = (0..d).map(|_| a.clone()).collect();
            let e = cartesian_product(&field, &sets).unwrap();
            // hypothesis |E||E_z| = m^d·m^{d−1} ≥ q^d must hold for the chosen m
            assert!(
                (e.len() as u128) * (m as u128).pow(d - 1) >= (q as u128).pow(d),
                "bad test parameters q={q} d={d} m={m}"
            );
            for z in 0..q.min(4) {
                let dist = slice_pinned_check(&field, &e, Fq(z as u32), PairKind::Distance).unwrap();
                assert_eq!(dist.status, CheckStatus::Pass, "q={q} d={d} z={z} {dist:?}");
                if z != 0 {
                    let dot = slice_pinned_check(&field, &e, Fq(z as u32), PairKind::Dot).unwrap();
                    assert_eq!(dot.status, CheckStatus::Pass, "q={q} d={d} z={z} {dot:?}");
                }
            }
        }
    }
}
