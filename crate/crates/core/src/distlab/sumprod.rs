//! Sum-product set computations over F_q: iterated product-sum sets
//! A·A + … + A·A, linear combination sets a₁A + … + a_{d−1}A + zA, and the
//! coefficient-tuple scan behind the sum-product consequence of the sliced
//! dot-product bound.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::rng::DetRng;
use num_bigint::BigInt;
use num_rational::BigRational;

/// A subset of F_q as a boolean table.
pub type FqSet = Vec<bool>;

pub fn fq_set_from(field: &FieldSpec, elems: &[Fq]) -> FqSet {
    let mut set = vec![false; field.q() as usize];
    for &a in elems {
        set[a.0 as usize] = true;
    }
    set
}

pub fn fq_set_size(set: &FqSet) -> u64 {
    set.iter().filter(|&&b| b).count() as u64
}

pub fn fq_set_elems(set: &FqSet) -> Vec<Fq> {
    set.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| Fq(i as u32)).collect()
}

/// {a·b : a, b ∈ A}.
pub fn product_set(field: &FieldSpec, a: &FqSet) -> FqSet {
    let elems = fq_set_elems(a);
    let mut out = vec![false; field.q() as usize];
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i..] {
            out[field.mul(x, y).0 as usize] = true;
        }
    }
    out
}

/// {x + y : x ∈ X, y ∈ Y}.
pub fn sumset(field: &FieldSpec, x: &FqSet, y: &FqSet) -> FqSet {
    let xs = fq_set_elems(x);
    let ys = fq_set_elems(y);
    let mut out = vec![false; field.q() as usize];
    for &a in &xs {
        for &b in &ys {
            out[field.add(a, b).0 as usize] = true;
        }
    }
    out
}

/// {c·a : a ∈ A}.
pub fn dilate(field: &FieldSpec, a: &FqSet, c: Fq) -> FqSet {
    let mut out = vec![false; field.q() as usize];
    for x in fq_set_elems(a) {
        out[field.mul(c, x).0 as usize] = true;
    }
    out
}

/// A·A + A·A + … + A·A with `count` product-set summands.
pub fn product_sumset(field: &FieldSpec, a: &FqSet, count: u32) -> Result<FqSet> {
    if fq_set_size(a) == 0 {
        return Err(Error::EmptySet);
    }
    assert!(count >= 1);
    let aa = product_set(field, a);
    let mut acc = aa.clone();
    for _ in 1..count {
        acc = sumset(field, &acc, &aa);
    }
    Ok(acc)
}

/// a₁A + a₂A + … + a_{d−1}A + zA.
pub fn linear_sumset(field: &FieldSpec, a: &FqSet, coeffs: &[Fq], z: Fq) -> Result<FqSet> {
    if fq_set_size(a) == 0 {
        return Err(Error::EmptySet);
    }
    let mut acc = dilate(field, a, z);
    for &c in coeffs {
        acc = sumset(field, &acc, &dilate(field, a, c));
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    /// Fraction of coefficient tuples with |a₁A + … + zA| > q/2.
    pub fraction: BigRational,
    pub tuples_tested: u64,
    pub sampled: bool,
    /// Smallest linear-sumset size seen across the tuples.
    pub min_size: u64,
}

/// Scan coefficient tuples (a₁, …, a_{d−1}) ∈ A^{d−1} and report the
/// fraction whose linear sumset covers more than half of F_q. Enumeration
/// is exhaustive up to `tuple_cap`; above it, `sample` seeded tuples are
/// drawn (reported as sampled).
pub fn sum_product_scan(
    field: &FieldSpec,
    a: &FqSet,
    z: Fq,
    d: u32,
    tuple_cap: u64,
    sample: Option<(u64, u64)>,
) -> Result<ScanReport> {
    let n = fq_set_size(a);
    if n == 0 {
        return Err(Error::EmptySet);
    }
    assert!(z != Fq::ZERO, "the scan requires z ≠ 0");
    assert!(d >= 2);
    let elems = fq_set_elems(a);
    let q = field.q();
    let k = (d - 1) as usize;
    let total = (n as u128).pow(k as u32);
    let za = dilate(field, a, z);
    // per-tuple evaluation reuses the precomputed zA part
    let eval = |coeffs: &[Fq]| -> u64 {
        let mut acc = za.clone();
        for &c in coeffs {
            acc = sumset(field, &acc, &dilate(field, a, c));
        }
        fq_set_size(&acc)
    };
    let mut above = 0u64;
    let mut tested = 0u64;
    let mut min_size = u64::MAX;
    let sampled = total > tuple_cap as u128;
    if !sampled {
        // odometer over A^{k}
        let mut idx = vec![0usize; k];
        loop {
            let coeffs: Vec<Fq> = idx.iter().map(|&i| elems[i]).collect();
            let size = eval(&coeffs);
            min_size = min_size.min(size);
            if 2 * size > q {
                above += 1;
            }
            tested += 1;
            let mut carry = 0;
            while carry < k {
                idx[carry] += 1;
                if idx[carry] == elems.len() {
                    idx[carry] = 0;
                    carry += 1;
                } else {
                    break;
                }
            }
            if carry == k {
                break;
            }
        }
    } else {
        let (seed, count) = sample.ok_or(Error::CapExceeded {
            needed: total,
            cap: tuple_cap as u128,
        })?;
        let mut rng = DetRng::stream(seed, &[0x5ca7, q, d as u64]);
        for _ in 0..count {
            let coeffs: Vec<Fq> =
                (0..k).map(|_| elems[rng.below(elems.len() as u64) as usize]).collect();
            let size = eval(&coeffs);
            min_size = min_size.min(size);
            if 2 * size > q {
                above += 1;
            }
            tested += 1;
        }
    }
    Ok(ScanReport {
        fraction: BigRational::new(BigInt::from(above), BigInt::from(tested)),
        tuples_tested: tested,
        sampled,
        min_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_of(field: &FieldSpec, v: &[u32]) -> FqSet {
        fq_set_from(field, &v.iter().map(|&x| Fq(x)).collect::<Vec<_>>())
    }

    #[test]
    fn product_sumset_examples() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        // A = {1,2}: A·A = {1,2,4}, A·A + A·A = F_5
        let a = set_of(&f5, &[1, 2]);
        assert_eq!(fq_set_elems(&product_set(&f5, &a)), vec![Fq(1), Fq(2), Fq(4)]);
        let two = product_sumset(&f5, &a, 2).unwrap();
        assert_eq!(fq_set_size(&two), 5);

        // A = F_q^*: A·A + A·A ⊇ {s + (−s)} ∋ 0, in fact = F_q
        let all_nz = set_of(&f5, &[1, 2, 3, 4]);
        assert_eq!(fq_set_size(&product_sumset(&f5, &all_nz, 2).unwrap()), 5);

        assert!(matches!(
            product_sumset(&f5, &set_of(&f5, &[]), 2),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn linear_sumset_examples() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        // A = {1,2}, a₁ = 1, z = 1: A + A = {2,3,4}
        let a = set_of(&f5, &[1, 2]);
        let s = linear_sumset(&f5, &a, &[Fq(1)], Fq(1)).unwrap();
        assert_eq!(fq_set_elems(&s), vec![Fq(2), Fq(3), Fq(4)]);
        assert_eq!(fq_set_size(&s), 3); // 3 > 5/2: beats the q/2 threshold
    }

    #[test]
    fn containment_theorem_scale() {
        // |A| > q^{3/4} in the plane setting: A·A + A·A ⊇ F_q^*
        let f13 = FieldSpec::new(13, 1).unwrap();
        let a = set_of(&f13, &[1, 2, 3, 5, 7, 8, 11, 12]); // 8 > 13^{3/4} ≈ 6.85
        let s = product_sumset(&f13, &a, 2).unwrap();
        for t in 1..13u32 {
            assert!(s[t as usize], "missing {t}");
        }
    }

    #[test]
    fn scan_fraction_meets_quarter_default() {
        for (q, d) in [(5u64, 2u32), (7, 2), (11, 2), (13, 2), (5, 3), (7, 3)] {
            let field = FieldSpec::from_q(q).unwrap();
            let m = crate::distlab::ceil_q_pow(q, d, 2 * d - 1);
            let a = fq_set_from(&field, &(0..m as u32).map(|i| Fq(i + 1)).collect::<Vec<_>>());
            let rep = sum_product_scan(&field, &a, Fq(1), d, 1 << 20, None).unwrap();
            assert!(!rep.sampled);
            assert!(
                rep.fraction >= BigRational::new(1.into(), 4.into()),
                "q={q} d={d} fraction={}",
                rep.fraction
            );
        }
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let f13 = FieldSpec::new(13, 1).unwrap();
        let a = set_of(&f13, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let r1 = sum_product_scan(&f13, &a, Fq(2), 4, 10, Some((9, 50))).unwrap();
        let r2 = sum_product_scan(&f13, &a, Fq(2), 4, 10, Some((9, 50))).unwrap();
        assert!(r1.sampled);
        assert_eq!(r1.fraction, r2.fraction);
        assert_eq!(r1.tuples_tested, 50);
        // no sampling parameters: cap errors out
        assert!(matches!(
            sum_product_scan(&f13, &a, Fq(2), 4, 10, None),
            Err(Error::CapExceeded { .. })
        ));
    }
}
