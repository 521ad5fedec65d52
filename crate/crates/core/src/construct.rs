//! Point-set constructors: grids, seeded random sets, isotropic lines,
//! embedded subfield products, cartesian products, spheres and sphere
//! subsets.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::{grid_size, GridPoint, PointSet};
use crate::rng::DetRng;
use crate::spectrum::SpherePack;

/// The whole grid F_q^d.
pub fn grid(field: &FieldSpec, d: u32) -> PointSet {
    PointSet::full(field.q(), d)
}

/// `size` distinct points drawn uniformly, seeded.
pub fn random_set(field: &FieldSpec, d: u32, size: u64, seed: u64) -> Result<PointSet> {
    let n = grid_size(field.q(), d);
    if size > n {
        return Err(Error::ConstructionUnavailable(format!(
            "requested {size} points from a grid of {n}"
        )));
    }
    let mut rng = DetRng::stream(seed, &[0x7268, field.q(), d as u64]);
    Ok(PointSet::from_indices(field.q(), d, rng.distinct(n, size)))
}

/// The isotropic line Z = {(t, it)} ⊆ F_q², where i² = −1. Available
/// exactly when q ≡ 1 (mod 4).
pub fn isotropic_line(field: &FieldSpec) -> Result<PointSet> {
    let i = field.sqrt_minus_one().ok_or_else(|| {
        Error::ConstructionUnavailable(format!(
            "no square root of −1 in F_{} (q ≡ 3 mod 4)",
            field.q()
        ))
    })?;
    let pts: Vec<GridPoint> = (0..field.q())
        .map(|t| {
            let t = Fq(t as u32);
            GridPoint::new(vec![t, field.mul(i, t)])
        })
        .collect();
    Ok(PointSet::from_points(field.q(), 2, &pts))
}

/// The embedded subfield power (F_{p^{l/2}})^d ⊆ F_q^d (requires even l).
pub fn subfield_power(field: &FieldSpec, d: u32) -> Result<PointSet> {
    let sub = field.subfield_elements()?;
    let sets: Vec<Vec<Fq>> = (0..d).map(|_| sub.clone()).collect();
    cartesian_product(field, &sets)
}

/// A₁ × A₂ × … × A_d.
pub fn cartesian_product(field: &FieldSpec, sets: &[Vec<Fq>]) -> Result<PointSet> {
    let d = sets.len() as u32;
    if sets.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptySet);
    }
    let q = field.q();
    let mut idxs = vec![0u64];
    for coords in sets.iter().rev() {
        let mut next = Vec::with_capacity(idxs.len() * coords.len());
        for &base in &idxs {
            for &c in coords {
                next.push(base * q + c.index());
            }
        }
        idxs = next;
    }
    Ok(PointSet::from_indices(q, d, idxs))
}

/// The full sphere S_t ⊆ F_q^d.
pub fn sphere_full(field: &FieldSpec, d: u32, t: Fq) -> PointSet {
    SpherePack::new(field, d).sphere_set(t)
}

/// A seeded `size`-point subset of S_t.
pub fn sphere_subset(field: &FieldSpec, d: u32, t: Fq, size: u64, seed: u64) -> Result<PointSet> {
    let sphere = sphere_full(field, d, t);
    if size > sphere.len() {
        return Err(Error::ConstructionUnavailable(format!(
            "sphere S_{} in d={d} has {} points, requested {size}",
            t.index(),
            sphere.len()
        )));
    }
    let members = sphere.members();
    let mut rng = DetRng::stream(seed, &[0x5f3a, field.q(), d as u64, t.index()]);
    let picks = rng.distinct(members.len() as u64, size);
    Ok(PointSet::from_indices(field.q(), d, picks.into_iter().map(|i| members[i as usize])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlab::distance_set;

    #[test]
    fn isotropic_line_has_one_distance() {
        for q in [5u64, 13, 25, 9] {
            let field = FieldSpec::from_q(q).unwrap();
            let z = isotropic_line(&field).unwrap();
            assert_eq!(z.len(), q);
            assert_eq!(distance_set(&field, &z).unwrap(), vec![Fq::ZERO], "q={q}");
        }
        // unavailable at q ≡ 3 (mod 4)
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert!(matches!(isotropic_line(&f7), Err(Error::ConstructionUnavailable(_))));
    }

    #[test]
    fn subfield_power_is_sharp() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let e = subfield_power(&f9, 2).unwrap();
        assert_eq!(e.len(), 9);
        let delta = distance_set(&f9, &e).unwrap();
        assert!(delta.iter().all(|t| t.index() < 3));
        let f25 = FieldSpec::new(5, 2).unwrap();
        let e3 = subfield_power(&f25, 3).unwrap();
        assert_eq!(e3.len(), 125);
    }

    #[test]
    fn cartesian_product_layout() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let e = cartesian_product(&f5, &[vec![Fq(1), Fq(2)], vec![Fq(0), Fq(3)]]).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.contains_point(&GridPoint::new(vec![Fq(2), Fq(3)])));
        assert!(!e.contains_point(&GridPoint::new(vec![Fq(3), Fq(2)])));
    }

    #[test]
    fn random_and_sphere_subsets_are_seeded() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        let a = random_set(&f7, 2, 14, 7).unwrap();
        let b = random_set(&f7, 2, 14, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_set(&f7, 2, 14, 8).unwrap());

        let s = sphere_subset(&f7, 3, Fq::ONE, 10, 5).unwrap();
        assert_eq!(s.len(), 10);
        assert!(s.is_subset_of(&sphere_full(&f7, 3, Fq::ONE)));
        assert!(sphere_subset(&f7, 2, Fq::ONE, 1000, 5).is_err());
    }
}
