//! k-star counting: for a pin tuple (y¹, …, y^k) ∈ E^k and a moving point
//! x ∈ E, the distance vector (‖x−y¹‖, …, ‖x−y^k‖) or the dot-product
//! vector (x·y¹, …, x·y^k). Provides the per-tuple count tables, mean image
//! sizes over the pin pool, and the second moment
//!
//! ```text
//!   Σ_{y⃗∈E^k} Σ_{t⃗} ν²_{y⃗}(t⃗)  =  Σ_{x,x′∈E} w(x,x′)^k
//! ```
//!
//! where w(x,x′) counts the y ∈ E equidistant from (resp. with equal dot
//! products against) x and x′ — the pair-factored form is an exact
//! rearrangement of the tuple enumeration and keeps the sweep polynomial.

use super::pinned::PairKind;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::{GridPoint, PointSet};
use crate::rng::DetRng;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Sparse table (t₁, …, t_k) → count; total mass |E|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KStarTable {
    pub k: u32,
    counts: BTreeMap<Vec<u32>, u64>,
    mass: u64,
}

impl KStarTable {
    pub fn get(&self, key: &[Fq]) -> u64 {
        let key: Vec<u32> = key.iter().map(|t| t.0).collect();
        self.counts.get(&key).copied().unwrap_or(0)
    }
    pub fn mass(&self) -> u64 {
        self.mass
    }
    pub fn support_size(&self) -> u64 {
        self.counts.len() as u64
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &u64)> {
        self.counts.iter()
    }
    pub fn sum_squares(&self) -> u128 {
        self.counts.values().map(|&c| (c as u128) * (c as u128)).sum()
    }
}

/// ν_{y⃗}(t⃗) for one pin tuple; pins must lie in E.
pub fn kstar_nu(
    field: &FieldSpec,
    set: &PointSet,
    pins: &[GridPoint],
    kind: PairKind,
) -> Result<KStarTable> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for pin in pins {
        if !set.contains_point(pin) {
            return Err(Error::ShapeMismatch("pin tuple must be drawn from E".into()));
        }
    }
    let mc = set.member_coords();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for i in 0..mc.len() {
        let x = mc.point(i);
        let key: Vec<u32> = pins
            .iter()
            .map(|y| match kind {
                PairKind::Distance => crate::grid::norm_diff(field, &x, y).0,
                PairKind::Dot => crate::grid::dot(field, &x, y).0,
            })
            .collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(KStarTable { k: pins.len() as u32, counts, mass: set.len() })
}

#[derive(Debug, Clone)]
pub struct MeanImageReport {
    /// Mean of |image| over the pin tuples visited.
    pub mean: BigRational,
    pub tuples: u64,
    pub sampled: bool,
}

/// Mean over pin tuples y⃗ ∈ E^k of the image size |Δ_{y⃗}(E)| (or the dot
/// analog). Exhaustive when |E|^{k+1} ≤ tuple_cap, otherwise seeded
/// sampling of pin tuples. `sphere_mode` additionally requires E ⊆ S₁.
#[allow(clippy::too_many_arguments)]
pub fn kstar_mean_image(
    field: &FieldSpec,
    set: &PointSet,
    k: u32,
    kind: PairKind,
    sphere_mode: bool,
    tuple_cap: u64,
    sample: Option<(u64, u64)>,
) -> Result<MeanImageReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mc = set.member_coords();
    let n = mc.len();
    let q = field.q();
    if sphere_mode {
        for i in 0..n {
            let x = mc.coord(i);
            let mut acc = Fq::ZERO;
            for &c in x {
                acc = field.add(acc, field.mul(c, c));
            }
            if acc != Fq::ONE {
                return Err(Error::ShapeMismatch("sphere mode requires E ⊆ S₁".into()));
            }
        }
    }
    let work = (n as u128).pow(k + 1);
    let sampled = work > tuple_cap as u128;

    // image size of one pin tuple (members given by index)
    let mut keys: Vec<u128> = Vec::with_capacity(n);
    let mut image_of = |pins: &[usize]| -> u64 {
        keys.clear();
        for x in 0..n {
            let mut key = 0u128;
            for &pin in pins {
                let v = match kind {
                    PairKind::Distance => mc.norm_between(field, x, pin),
                    PairKind::Dot => mc.dot_between(field, x, pin),
                };
                key = key * q as u128 + v.index() as u128;
            }
            keys.push(key);
        }
        keys.sort_unstable();
        keys.dedup();
        keys.len() as u64
    };

    let mut sum_images = 0u128;
    let mut tuples = 0u64;
    if !sampled {
        let mut idx = vec![0usize; k as usize];
        loop {
            sum_images += image_of(&idx) as u128;
            tuples += 1;
            let mut carry = 0;
            while carry < k as usize {
                idx[carry] += 1;
                if idx[carry] == n {
                    idx[carry] = 0;
                    carry += 1;
                } else {
                    break;
                }
            }
            if carry == k as usize {
                break;
            }
        }
    } else {
        let (seed, count) =
            sample.ok_or(Error::CapExceeded { needed: work, cap: tuple_cap as u128 })?;
        let mut rng = DetRng::stream(seed, &[0x57a2, q, k as u64]);
        let mut idx = vec![0usize; k as usize];
        for _ in 0..count {
            for slot in idx.iter_mut() {
                *slot = rng.below(n as u64) as usize;
            }
            sum_images += image_of(&idx) as u128;
            tuples += 1;
        }
    }
    Ok(MeanImageReport {
        mean: BigRational::new(BigInt::from(sum_images), BigInt::from(tuples)),
        tuples,
        sampled,
    })
}

#[derive(Debug, Clone)]
pub struct KStarMomentReport {
    /// Σ_{y⃗} Σ_{t⃗} ν² — exact integer.
    pub lhs: u128,
    /// |E|^{k+2}/q^k + q^d|E|^k — the reference scale with hidden constant.
    pub rhs_reference: BigRational,
    pub ratio: f64,
}

/// Exact k-star second moment via the pair-factored rearrangement.
pub fn kstar_second_moment(
    field: &FieldSpec,
    set: &PointSet,
    k: u32,
    kind: PairKind,
) -> Result<KStarMomentReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mc = set.member_coords();
    let n = mc.len();
    let mut lhs: u128 = 0;
    for x in 0..n {
        for x2 in 0..n {
            // w = #{y ∈ E : pairing(x, y) = pairing(x2, y)}
            let mut w: u128 = 0;
            match kind {
                PairKind::Distance => {
                    for y in 0..n {
                        if mc.norm_between(field, x, y) == mc.norm_between(field, x2, y) {
                            w += 1;
                        }
                    }
                }
                PairKind::Dot => {
                    for y in 0..n {
                        if mc.dot_between(field, x, y) == mc.dot_between(field, x2, y) {
                            w += 1;
                        }
                    }
                }
            }
            lhs += w.pow(k);
        }
    }
    let q = BigInt::from(field.q());
    let e = BigInt::from(set.len());
    let rhs = BigRational::new(e.pow(k + 2), q.pow(k))
        + BigRational::from_integer(q.pow(set.d()) * e.pow(k));
    let ratio = crate::scalar::rat_to_f64(
        &(BigRational::from_integer(BigInt::from(lhs)) / rhs.clone()),
    );
    Ok(KStarMomentReport { lhs, rhs_reference: rhs, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::grid_size;

    fn random_set(q: u64, d: u32, size: u64, seed: u64) -> PointSet {
        let mut rng = DetRng::new(seed);
        PointSet::from_indices(q, d, rng.distinct(grid_size(q, d), size))
    }

    /// Direct tuple-enumeration oracle for the second moment.
    fn brute_second_moment(
        field: &FieldSpec,
        set: &PointSet,
        k: u32,
        kind: PairKind,
    ) -> u128 {
        let pts = set.points();
        let n = pts.len();
        let mut total = 0u128;
        let mut idx = vec![0usize; k as usize];
        loop {
            let pins: Vec<GridPoint> = idx.iter().map(|&i| pts[i].clone()).collect();
            let table = kstar_nu(field, set, &pins, kind).unwrap();
            total += table.sum_squares();
            let mut carry = 0;
            while carry < k as usize {
                idx[carry] += 1;
                if idx[carry] == n {
                    idx[carry] = 0;
                    carry += 1;
                } else {
                    break;
                }
            }
            if carry == k as usize {
                break;
            }
        }
        total
    }

    #[test]
    fn kstar_nu_mass_and_consistency_with_pinned() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let e = random_set(5, 2, 11, 3);
        let y = e.points()[2].clone();
        // k = 1 reduces exactly to the pinned count
        let table = kstar_nu(&f5, &e, std::slice::from_ref(&y), PairKind::Distance).unwrap();
        assert_eq!(table.mass(), 11);
        let pinned = crate::distlab::pinned::pinned_nu(&f5, &e, &y).unwrap();
        for t in 0..5u32 {
            assert_eq!(table.get(&[Fq(t)]), pinned.get(Fq(t)));
        }
        // pins must come from E
        let outside = GridPoint::new(vec![Fq(4), Fq(4)]);
        if !e.contains_point(&outside) {
            assert!(kstar_nu(&f5, &e, &[outside], PairKind::Distance).is_err());
        }
    }

    #[test]
    fn second_moment_matches_brute_force() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        // the two-point hand case
        let two = PointSet::from_indices(3, 2, [0u64, 1]);
        for k in [1u32, 2, 3] {
            for kind in [PairKind::Distance, PairKind::Dot] {
                let fast = kstar_second_moment(&f3, &two, k, kind).unwrap();
                assert_eq!(fast.lhs, brute_second_moment(&f3, &two, k, kind), "k={k}");
            }
        }
        // small random sets and the full grid
        let f5 = FieldSpec::new(5, 1).unwrap();
        for seed in 0..3 {
            let e = random_set(5, 2, 6, 50 + seed);
            for k in [1u32, 2] {
                let fast = kstar_second_moment(&f5, &e, k, PairKind::Distance).unwrap();
                assert_eq!(fast.lhs, brute_second_moment(&f5, &e, k, PairKind::Distance));
                let fdot = kstar_second_moment(&f5, &e, k, PairKind::Dot).unwrap();
                assert_eq!(fdot.lhs, brute_second_moment(&f5, &e, k, PairKind::Dot));
            }
        }
        let full = PointSet::full(3, 2);
        let fast = kstar_second_moment(&f3, &full, 2, PairKind::Distance).unwrap();
        assert_eq!(fast.lhs, brute_second_moment(&f3, &full, 2, PairKind::Distance));
        assert!(fast.ratio <= 8.0, "ratio {}", fast.ratio);
    }

    #[test]
    fn k1_second_moment_matches_pinned_sweep() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        let e = random_set(7, 2, 19, 4);
        let k1 = kstar_second_moment(&f7, &e, 1, PairKind::Distance).unwrap();
        let pinned = crate::distlab::pinned::pinned_second_moment_check(&f7, &e).unwrap();
        assert_eq!(k1.lhs, pinned.lhs);
        let k1d = kstar_second_moment(&f7, &e, 1, PairKind::Dot).unwrap();
        let dot = crate::distlab::pinned::dot_second_moment_check(&f7, &e).unwrap();
        assert_eq!(k1d.lhs, dot.lhs);
    }

    #[test]
    fn mean_image_full_grid_value() {
        // Full grid of F_3², k = 2, distances: diagonal pin pairs see the
        // q diagonal values; distinct pins see 6 of the 9 pairs (circle
        // intersections can be empty in the plane). Mean = (9·3 + 72·6)/81.
        let f3 = FieldSpec::new(3, 1).unwrap();
        let full = PointSet::full(3, 2);
        let rep =
            kstar_mean_image(&f3, &full, 2, PairKind::Distance, false, 1 << 20, None).unwrap();
        assert!(!rep.sampled);
        assert_eq!(rep.tuples, 81);
        assert_eq!(rep.mean, BigRational::new(459.into(), 81.into()));
        // comfortably above the soft q^k/4 reference
        assert!(rep.mean >= BigRational::new(9.into(), 4.into()));
    }

    #[test]
    fn mean_image_sampling_is_deterministic_and_capped() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let e = random_set(5, 2, 12, 8);
        let a =
            kstar_mean_image(&f5, &e, 2, PairKind::Dot, false, 10, Some((3, 40))).unwrap();
        let b =
            kstar_mean_image(&f5, &e, 2, PairKind::Dot, false, 10, Some((3, 40))).unwrap();
        assert!(a.sampled);
        assert_eq!(a.mean, b.mean);
        assert!(matches!(
            kstar_mean_image(&f5, &e, 2, PairKind::Dot, false, 10, None),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sphere_mode_requires_unit_sphere() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let pack = crate::spectrum::SpherePack::new(&f5, 3);
        let s1 = pack.sphere_set(Fq::ONE);
        let rep = kstar_mean_image(&f5, &s1, 1, PairKind::Distance, true, 1 << 22, None).unwrap();
        assert!(rep.mean > BigRational::new(5.into(), 4.into()), "mean {}", rep.mean);
        // a set off the sphere is rejected in sphere mode
        let off = PointSet::from_indices(5, 3, [0u64, 1]);
        assert!(kstar_mean_image(&f5, &off, 1, PairKind::Distance, true, 1 << 22, None).is_err());
    }
}
