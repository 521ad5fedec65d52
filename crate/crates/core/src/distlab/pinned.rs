//! Pinned distance sets Δ_y(E) = {‖x−y‖ : x ∈ E} and pinned dot-product
//! sets Π_y(E) = {x·y : x ∈ E}, their per-pin counting functions ν_y and
//! η_y, pin statistics over the pool y ∈ E, and the exact second-moment
//! bounds
//!
//! ```text
//!   Σ_{y∈E} Σ_t ν_y²(t) < q^{−1}|E|³ + q^d|E|            (distances, strict)
//!   Σ_{y∈E} Σ_s η_y²(s) ≤ q^{−1}|E|³ + q^d|E| − q^{d−1}|E|   (dot products)
//! ```
//!
//! compared as exact integers after clearing the q denominator.

use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::{dot, GridPoint, PointSet};
use super::CountTable;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Which pairing drives the pinned count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Distance,
    Dot,
}

/// ν_y(t) = #{x ∈ E : ‖x − y‖ = t}.
pub fn pinned_nu(field: &FieldSpec, set: &PointSet, y: &GridPoint) -> Result<CountTable> {
    pinned_table(field, set, y, PairKind::Distance)
}

/// η_y(s) = #{x ∈ E : x·y = s}.
pub fn eta(field: &FieldSpec, set: &PointSet, y: &GridPoint) -> Result<CountTable> {
    pinned_table(field, set, y, PairKind::Dot)
}

fn pinned_table(
    field: &FieldSpec,
    set: &PointSet,
    y: &GridPoint,
    kind: PairKind,
) -> Result<CountTable> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mc = set.member_coords();
    let mut counts = vec![0u64; field.q() as usize];
    for i in 0..mc.len() {
        let x = mc.coord(i);
        let v = match kind {
            PairKind::Distance => {
                let mut acc = Fq::ZERO;
                for (&a, &b) in x.iter().zip(y.coords.iter()) {
                    let t = field.sub(a, b);
                    acc = field.add(acc, field.mul(t, t));
                }
                acc
            }
            PairKind::Dot => {
                let mut acc = Fq::ZERO;
                for (&a, &b) in x.iter().zip(y.coords.iter()) {
                    acc = field.add(acc, field.mul(a, b));
                }
                acc
            }
        };
        counts[v.0 as usize] += 1;
    }
    Ok(CountTable::new(counts, set.len()))
}

/// Δ_y(E) as the support of ν_y.
pub fn pinned_distance_set(field: &FieldSpec, set: &PointSet, y: &GridPoint) -> Result<Vec<Fq>> {
    Ok(pinned_nu(field, set, y)?.support())
}

/// Π_y(E) as the support of η_y.
pub fn pinned_dot_set(field: &FieldSpec, set: &PointSet, y: &GridPoint) -> Result<Vec<Fq>> {
    Ok(eta(field, set, y)?.support())
}

/// Statistics of pin image sizes over the pool y ∈ E.
#[derive(Debug, Clone)]
pub struct PinStats {
    /// |Δ_y(E)| (or |Π_y(E)|) per pin, pin order = ascending member index.
    pub image_sizes: Vec<u64>,
    /// Σ_y image size.
    pub sum_images: u128,
    /// Σ_y Σ_t (count)².
    pub sum_squares: u128,
    /// Mean image size over the pool.
    pub mean: BigRational,
    /// Fraction of pins whose image size strictly exceeds the threshold.
    pub fraction_above: BigRational,
    /// Pins above threshold (the witness subset E′).
    pub witness: PointSet,
}

impl PinStats {
    /// mean > num/den, compared exactly.
    pub fn mean_exceeds(&self, num: u64, den: u64) -> bool {
        self.mean > BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Sweep all pins y ∈ E; threshold is a rational num/den (the theorems use
/// q/2 and q/3).
pub fn pin_statistics(
    field: &FieldSpec,
    set: &PointSet,
    kind: PairKind,
    threshold: (u64, u64),
) -> Result<PinStats> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mc = set.member_coords();
    let n = mc.len();
    let q = field.q() as usize;
    let mut counts = vec![0u64; q];
    let mut image_sizes = Vec::with_capacity(n);
    let mut sum_images = 0u128;
    let mut sum_squares = 0u128;
    let mut witness_idx = Vec::new();
    let (tn, td) = threshold;
    for pin in 0..n {
        counts.fill(0);
        match kind {
            PairKind::Distance => {
                for x in 0..n {
                    counts[mc.norm_between(field, x, pin).0 as usize] += 1;
                }
            }
            PairKind::Dot => {
                for x in 0..n {
                    counts[mc.dot_between(field, x, pin).0 as usize] += 1;
                }
            }
        }
        let image = counts.iter().filter(|&&c| c > 0).count() as u64;
        sum_images += image as u128;
        sum_squares += counts.iter().map(|&c| (c as u128) * (c as u128)).sum::<u128>();
        if image as u128 * td as u128 > tn as u128 {
            witness_idx.push(mc.members[pin]);
        }
        image_sizes.push(image);
    }
    let witness = PointSet::from_indices(set.q(), set.d(), witness_idx);
    Ok(PinStats {
        sum_images,
        sum_squares,
        mean: BigRational::new(BigInt::from(sum_images), BigInt::from(n)),
        fraction_above: BigRational::new(BigInt::from(witness.len()), BigInt::from(n)),
        witness,
        image_sizes,
    })
}

/// Distance-kind pin sweep at the q/2 theorem threshold.
pub fn distance_pin_statistics(field: &FieldSpec, set: &PointSet) -> Result<PinStats> {
    pin_statistics(field, set, PairKind::Distance, (field.q(), 2))
}

/// Dot-kind pin sweep at the q/2 theorem threshold.
pub fn dot_pin_statistics(field: &FieldSpec, set: &PointSet) -> Result<PinStats> {
    pin_statistics(field, set, PairKind::Dot, (field.q(), 2))
}

#[derive(Debug, Clone)]
pub struct SecondMomentReport {
    /// Σ_y Σ_t (count)² — an integer.
    pub lhs: u128,
    /// The reference side, as an exact rational.
    pub rhs: BigRational,
    pub holds: bool,
}

/// Strict bound for pinned distances: Σ_y Σ_t ν_y²(t) < q^{−1}|E|³ + q^d|E|.
pub fn pinned_second_moment_check(field: &FieldSpec, set: &PointSet) -> Result<SecondMomentReport> {
    let stats = pin_statistics(field, set, PairKind::Distance, (field.q(), 2))?;
    let q = field.q() as u128;
    let e = set.len() as u128;
    let lhs = stats.sum_squares;
    // q·LHS < |E|³ + q^{d+1}|E|
    let rhs_scaled = e.pow(3) + q.pow(set.d() + 1) * e;
    Ok(SecondMomentReport {
        lhs,
        rhs: BigRational::new(BigInt::from(rhs_scaled), BigInt::from(q)),
        holds: q * lhs < rhs_scaled,
    })
}

/// Non-strict bound for pinned dot products:
/// Σ_y Σ_s η_y²(s) ≤ q^{−1}|E|³ + q^d|E| − q^{d−1}|E|.
pub fn dot_second_moment_check(field: &FieldSpec, set: &PointSet) -> Result<SecondMomentReport> {
    let stats = pin_statistics(field, set, PairKind::Dot, (field.q(), 2))?;
    let q = field.q() as u128;
    let e = set.len() as u128;
    let lhs = stats.sum_squares;
    // q·LHS ≤ |E|³ + q^{d+1}|E| − q^d|E|
    let rhs_scaled = e.pow(3) + q.pow(set.d() + 1) * e - q.pow(set.d()) * e;
    Ok(SecondMomentReport {
        lhs,
        rhs: BigRational::new(BigInt::from(rhs_scaled), BigInt::from(q)),
        holds: q * lhs <= rhs_scaled,
    })
}

/// Exact transform identity η̂_y(t) = q^{d−1} Ê(ty): both sides reduce to
/// the integer cyclotomic equality Σ_s η_y(s)χ(−ts) = Σ_{x∈E} χ(−x·(ty)).
pub fn eta_transform_check(
    field: &FieldSpec,
    set: &PointSet,
    y: &GridPoint,
    t: Fq,
) -> Result<bool> {
    let table = eta(field, set, y)?;
    let p = field.p();
    let mut lhs = Cyc::<i64>::zero();
    for (s, &c) in table.counts().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let e = field.trace_exp(field.mul(t, Fq(s as u32)));
        let term = Cyc::<i64>::from_i64(c as i64).mul_root(p, (p - e) % p);
        lhs = lhs.add(&term);
    }
    let ty = GridPoint::new(y.coords.iter().map(|&c| field.mul(t, c)).collect());
    let mut rhs = Cyc::<i64>::zero();
    let mc = set.member_coords();
    for i in 0..mc.len() {
        let e = field.trace_exp(dot(field, &mc.point(i), &ty));
        rhs = rhs.add(&Cyc::<i64>::one().mul_root(p, (p - e) % p));
    }
    Ok(lhs == rhs)
}
