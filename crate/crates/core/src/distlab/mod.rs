//! Distance/dot-product counting functions and the theorem-level checks
//! built on them: the pair-counting function ν(t) and distance set Δ(E),
//! the exact spectral identities for ν in the plane, the Wolff-type lower
//! bound, pinned and sliced statistics, k-star moments, and sum-product
//! set operations.

pub mod kstar;
pub mod pinned;
pub mod slices;
pub mod sumprod;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::PointSet;
use crate::spectrum::{indicator_spectrum, SpherePack};
use num_bigint::BigInt;
use num_rational::BigRational;

/// A count table over F_q (ν(t), ν_y(t), η_y(s), …) with its checked mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<u64>,
    mass: u64,
}

impl CountTable {
    pub fn new(counts: Vec<u64>, expected_mass: u64) -> Self {
        let mass: u64 = counts.iter().sum();
        assert_eq!(mass, expected_mass, "count table mass mismatch");
        CountTable { counts, mass }
    }

    pub fn get(&self, t: Fq) -> u64 {
        self.counts[t.0 as usize]
    }
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
    pub fn mass(&self) -> u64 {
        self.mass
    }
    /// {t : table(t) > 0}.
    pub fn support(&self) -> Vec<Fq> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(t, _)| Fq(t as u32))
            .collect()
    }
    pub fn support_size(&self) -> u64 {
        self.counts.iter().filter(|&&c| c > 0).count() as u64
    }
    pub fn sum_squares(&self) -> u128 {
        self.counts.iter().map(|&c| (c as u128) * (c as u128)).sum()
    }
}

/// ν(t) = #{(x, y) ∈ E × E : ‖x − y‖ = t}, by pair enumeration.
pub fn nu(field: &FieldSpec, set: &PointSet) -> Result<CountTable> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mc = set.member_coords();
    let n = mc.len();
    let mut counts = vec![0u64; field.q() as usize];
    for i in 0..n {
        counts[0] += 1; // the diagonal pair (x, x)
        for j in i + 1..n {
            let t = mc.norm_between(field, i, j);
            counts[t.0 as usize] += 2;
        }
    }
    Ok(CountTable::new(counts, (n as u64) * (n as u64)))
}

/// Δ(E) = {‖x − y‖ : x, y ∈ E}.
pub fn distance_set(field: &FieldSpec, set: &PointSet) -> Result<Vec<Fq>> {
    Ok(nu(field, set)?.support())
}

/// Result of the exact spectral identity ν(t) = q^{2d} Σ_m |Ê(m)|² Ŝ_t(m),
/// checked for every t.
#[derive(Debug, Clone)]
pub struct SpectralNuReport {
    pub holds: bool,
    pub bad_t: Option<Fq>,
}

/// Exact check of the spectral pair-count identity against an
/// already-built sphere pack carrying spectra.
pub fn spectral_nu_check(
    field: &FieldSpec,
    pack: &SpherePack,
    set: &PointSet,
) -> Result<SpectralNuReport> {
    let spectra = pack.spectra.as_ref().expect("pack must carry sphere spectra");
    let table = nu(field, set)?;
    let u = indicator_spectrum(field, set);
    let p = field.p() as usize;
    let nc = p - 1;
    let n = set.grid_len();
    let qd = n as i128;
    let mut norm_buf = vec![0i64; nc];
    let mut tmp = vec![0i64; 2 * p];
    // |U_E(m)|² is reused by every t: precompute once
    let mut energies = vec![0i64; n as usize * nc];
    for m in 0..n {
        u.norm_sq_into(m, &mut norm_buf, &mut tmp);
        energies[m as usize * nc..(m as usize + 1) * nc].copy_from_slice(&norm_buf);
    }
    for t in 0..field.q() {
        // Σ_m |U_E(m)|² U_{S_t}(m), folding ζ^{p−1} once at the end
        let mut acc = vec![0i128; p];
        let st = &spectra[t as usize];
        for m in 0..n {
            let a = &energies[m as usize * nc..(m as usize + 1) * nc];
            let b = st.coeffs(m);
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    if bj == 0 {
                        continue;
                    }
                    let mut e = i + j;
                    if e >= p {
                        e -= p;
                    }
                    acc[e] += ai as i128 * bj as i128;
                }
            }
        }
        let top = acc[p - 1];
        let rational_ok = acc[1..p - 1].iter().all(|&c| c == top);
        let value = acc[0] - top;
        // identity scaled by q^d: q^d·ν(t) = Σ_m |U_E|² U_{S_t}
        if !rational_ok || value != qd * table.get(Fq(t as u32)) as i128 {
            return Ok(SpectralNuReport { holds: false, bad_t: Some(Fq(t as u32)) });
        }
    }
    Ok(SpectralNuReport { holds: true, bad_t: None })
}

/// Both sides of the planar second-moment identity
/// Σ_t ν²(t) = q⁶ Σ_t σ_E²(t) + q^{−1}|E|⁴ − q|E|², cleared of denominators.
#[derive(Debug, Clone)]
pub struct LemmaMainReport {
    pub lhs_sum_nu_sq: u128,
    pub defect: i128,
}

pub fn lemma_main_check(field: &FieldSpec, set: &PointSet) -> Result<LemmaMainReport> {
    if set.d() != 2 {
        return Err(Error::WrongDimension { expected: 2, got: set.d() });
    }
    let q = field.q() as i128;
    let table = nu(field, set)?;
    let lhs = table.sum_squares();
    let (_, profile) = crate::spheres::sigma_profile_exact(field, set);
    let mut acc = crate::cyclotomic::Cyc::<i128>::zero();
    for w in &profile {
        acc = acc.add(&w.mul(w));
    }
    let sum_w_sq = acc
        .rational_part()
        .expect("Σ_t W_t² must be rational (Galois-invariant aggregate)");
    let e = set.len() as i128;
    // q²·Σν² = ΣW² + q·|E|⁴ − q³·|E|²
    let lhs_scaled = q * q * lhs as i128;
    let rhs_scaled = sum_w_sq + q * e.pow(4) - q.pow(3) * e * e;
    Ok(LemmaMainReport { lhs_sum_nu_sq: lhs, defect: (lhs_scaled - rhs_scaled).abs() })
}

/// Defect of ν(0) = q^{−1}|E|² + q³ Σ_{‖m‖=0}|Ê(m)|² − |E| (d = 2, q ≡ 1 mod 4),
/// compared exactly after clearing q. Zero means the identity holds.
pub fn nu_zero_closed_form(field: &FieldSpec, set: &PointSet) -> Result<i128> {
    if set.d() != 2 {
        return Err(Error::WrongDimension { expected: 2, got: set.d() });
    }
    if field.q() % 4 != 1 {
        return Err(Error::WrongFieldClass(1));
    }
    let q = field.q() as i128;
    let table = nu(field, set)?;
    let (_, profile) = crate::spheres::sigma_profile_exact(field, set);
    let w0 = profile[0]
        .rational_part()
        .expect("W₀ must be rational when q ≡ 1 (mod 4) in the plane");
    let e = set.len() as i128;
    // q·ν(0) = |E|² + W₀ − q·|E|
    let lhs = q * table.get(Fq::ZERO) as i128;
    let rhs = e * e + w0 - q * e;
    Ok((lhs - rhs).abs())
}

/// Smallest n with n^den ≥ q^num, i.e. ⌈q^{num/den}⌉ computed exactly.
pub fn ceil_q_pow(q: u64, num: u32, den: u32) -> u64 {
    let target = (q as u128).pow(num);
    let mut lo = 1u64;
    let mut hi = 1u64;
    while (hi as u128).pow(den) < target {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if (mid as u128).pow(den) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// ε_q = (1 − 2q^{−1})² / (1 + √3 − √3 q^{−2/3}).
pub fn wolff_epsilon(q: u64) -> f64 {
    let qf = q as f64;
    let num = (1.0 - 2.0 / qf).powi(2);
    let den = 1.0 + 3f64.sqrt() - 3f64.sqrt() * qf.powf(-2.0 / 3.0);
    num / den
}

/// Outcome classification for checks whose hypotheses may not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct WolffReport {
    pub status: CheckStatus,
    pub distance_count: u64,
    pub threshold: f64,
    pub margin: f64,
}

/// |Δ(E)| > q/(1+√3) for q ≡ 3 (mod 4), |Δ(E)| > ε_q·q for q ≡ 1 (mod 4),
/// under |E| ≥ q^{4/3} (and q > 9 in the ≡1 case); otherwise skipped.
pub fn wolff_check(field: &FieldSpec, set: &PointSet) -> Result<WolffReport> {
    if set.d() != 2 {
        return Err(Error::WrongDimension { expected: 2, got: set.d() });
    }
    let q = field.q();
    let delta = distance_set(field, set)?.len() as u64;
    let size_ok = (set.len() as u128).pow(3) >= (q as u128).pow(4);
    let threshold = if q % 4 == 3 {
        q as f64 / (1.0 + 3f64.sqrt())
    } else {
        wolff_epsilon(q) * q as f64
    };
    let status = if !size_ok || (q % 4 == 1 && q <= 9) {
        CheckStatus::Skipped
    } else if (delta as f64) > threshold {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(WolffReport { status, distance_count: delta, threshold, margin: delta as f64 - threshold })
}

/// |E| / q^d as an exact rational (report convenience).
pub fn density(field: &FieldSpec, set: &PointSet) -> BigRational {
    let _ = field;
    BigRational::new(BigInt::from(set.len()), BigInt::from(set.grid_len()))
}

/// Build one sphere pack with spectra for reuse across many sets on the
/// same (q, d).
pub fn shared_pack_with_spectra(field: &FieldSpec, d: u32) -> SpherePack {
    SpherePack::new(field, d).with_spectra(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{grid_size, GridPoint};
    use crate::rng::DetRng;

    fn random_set(q: u64, d: u32, size: u64, seed: u64) -> PointSet {
        let mut rng = DetRng::new(seed);
        PointSet::from_indices(q, d, rng.distinct(grid_size(q, d), size))
    }

    #[test]
    fn nu_and_distance_set_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        // E = {(0,0), (1,0)} ⊆ F_3²
        let e = PointSet::from_points(
            3,
            2,
            &[GridPoint::new(vec![Fq(0), Fq(0)]), GridPoint::new(vec![Fq(1), Fq(0)])],
        );
        let table = nu(&f3, &e).unwrap();
        assert_eq!(table.counts(), &[2, 2, 0]);
        assert_eq!(distance_set(&f3, &e).unwrap(), vec![Fq(0), Fq(1)]);

        // E = F_q^d: Δ = F_q (so |Δ| = |E|^{1/d})
        let full = PointSet::full(3, 2);
        assert_eq!(distance_set(&f3, &full).unwrap().len(), 3);

        // isotropic line Z = {(t, 2t)} ⊆ F_5²: Δ(Z) = {0}
        let f5 = FieldSpec::new(5, 1).unwrap();
        let z = PointSet::from_points(
            5,
            2,
            &(0..5).map(|t| GridPoint::new(vec![Fq(t), Fq((2 * t) % 5)])).collect::<Vec<_>>(),
        );
        assert_eq!(distance_set(&f5, &z).unwrap(), vec![Fq(0)]);

        // empty set errors
        assert!(matches!(nu(&f5, &PointSet::empty(5, 2)), Err(Error::EmptySet)));
    }

    #[test]
    fn mass_conservation() {
        for seed in 0..5 {
            let f = FieldSpec::new(7, 1).unwrap();
            let e = random_set(7, 2, 3 + seed * 7, 40 + seed);
            let table = nu(&f, &e).unwrap();
            assert_eq!(table.mass(), e.len() * e.len());
        }
    }

    #[test]
    fn spectral_nu_identity_holds() {
        for (q, d) in [(3u64, 2u32), (5, 2), (3, 3), (7, 2)] {
            let field = FieldSpec::from_q(q).unwrap();
            let pack = shared_pack_with_spectra(&field, d);
            for seed in 0..4u64 {
                let size = 1 + (seed * 5 + 2) % (grid_size(q, d) - 1);
                let e = random_set(q, d, size, 17 * q + seed);
                let rep = spectral_nu_check(&field, &pack, &e).unwrap();
                assert!(rep.holds, "q={q} d={d} seed={seed} bad_t={:?}", rep.bad_t);
            }
            let full = PointSet::full(q, d);
            assert!(spectral_nu_check(&field, &pack, &full).unwrap().holds);
        }
    }

    #[test]
    fn lemma_main_hand_case_and_random() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let e = PointSet::from_indices(3, 2, [0u64, 1]);
        let rep = lemma_main_check(&f3, &e).unwrap();
        assert_eq!(rep.lhs_sum_nu_sq, 8);
        assert_eq!(rep.defect, 0);

        // full grid: ν(t) = q²|S_t| so Σν² = 81·33 = 2673 at q=3
        let full = PointSet::full(3, 2);
        let rep = lemma_main_check(&f3, &full).unwrap();
        assert_eq!(rep.lhs_sum_nu_sq, 2673);
        assert_eq!(rep.defect, 0);

        for q in [3u64, 5, 7, 9, 11, 13] {
            let field = FieldSpec::from_q(q).unwrap();
            for seed in 0..6u64 {
                let size = 1 + (seed * 11 + 3) % (q * q - 1);
                let e = random_set(q, 2, size, 900 + 31 * q + seed);
                let rep = lemma_main_check(&field, &e).unwrap();
                assert_eq!(rep.defect, 0, "q={q} seed={seed}");
            }
        }

        assert!(matches!(
            lemma_main_check(&f3, &PointSet::full(3, 3)),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn nu_zero_closed_form_cases() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        // isotropic line: every pair at distance zero, ν(0) = 25
        let z = PointSet::from_points(
            5,
            2,
            &(0..5).map(|t| GridPoint::new(vec![Fq(t), Fq((2 * t) % 5)])).collect::<Vec<_>>(),
        );
        assert_eq!(nu(&f5, &z).unwrap().get(Fq::ZERO), 25);
        assert_eq!(nu_zero_closed_form(&f5, &z).unwrap(), 0);

        let single = PointSet::from_indices(5, 2, [0u64]);
        assert_eq!(nu_zero_closed_form(&f5, &single).unwrap(), 0);

        for q in [5u64, 9, 13] {
            let field = FieldSpec::from_q(q).unwrap();
            for seed in 0..5u64 {
                let e = random_set(q, 2, 1 + (seed * 13 + 4) % (q * q - 1), 70 + q + seed);
                assert_eq!(nu_zero_closed_form(&field, &e).unwrap(), 0, "q={q} seed={seed}");
            }
        }

        let f7 = FieldSpec::new(7, 1).unwrap();
        assert!(matches!(
            nu_zero_closed_form(&f7, &PointSet::full(7, 2)),
            Err(Error::WrongFieldClass(1))
        ));
    }

    #[test]
    fn ceil_q_pow_values() {
        assert_eq!(ceil_q_pow(7, 4, 3), 14); // 7^{4/3} ≈ 13.39
        assert_eq!(ceil_q_pow(11, 4, 3), 25); // ≈ 24.46
        assert_eq!(ceil_q_pow(5, 3, 2), 12); // 5^{3/2} ≈ 11.18
        assert_eq!(ceil_q_pow(9, 3, 2), 27); // exact power
        assert_eq!(ceil_q_pow(5, 2, 1), 25);
        assert_eq!(ceil_q_pow(13, 2, 3), 6); // 13^{2/3} ≈ 5.53
    }

    #[test]
    fn wolff_epsilon_values() {
        // ε_13 ≈ 0.29601…, and ε_q → 1/(1+√3) ≈ 0.36603
        assert!((wolff_epsilon(13) - 0.29601).abs() < 5e-4, "{}", wolff_epsilon(13));
        assert!((wolff_epsilon(1_000_000_007) - 1.0 / (1.0 + 3f64.sqrt())).abs() < 1e-5);
        for q in [13u64, 17, 25, 29, 101] {
            let e = wolff_epsilon(q);
            assert!(e > 0.0 && e < 1.0);
        }
    }

    #[test]
    fn wolff_check_statuses() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        // small set: vacuous hypothesis → skipped
        let tiny = random_set(7, 2, 5, 1);
        assert_eq!(wolff_check(&f7, &tiny).unwrap().status, CheckStatus::Skipped);
        // |E| = ⌈q^{4/3}⌉ = 14: the bound is a theorem, every draw passes
        for seed in 0..20 {
            let e = random_set(7, 2, 14, 300 + seed);
            let rep = wolff_check(&f7, &e).unwrap();
            assert_eq!(rep.status, CheckStatus::Pass, "seed={seed} {rep:?}");
        }
        // q = 5 ≡ 1 (mod 4) but ≤ 9: skipped even when the set is large
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(wolff_check(&f5, &PointSet::full(5, 2)).unwrap().status, CheckStatus::Skipped);
        // q = 13: full grid passes
        let f13 = FieldSpec::new(13, 1).unwrap();
        let rep = wolff_check(&f13, &PointSet::full(13, 2)).unwrap();
        assert_eq!(rep.status, CheckStatus::Pass);
        assert_eq!(rep.distance_count, 13);
    }

    #[test]
    fn subfield_sharpness() {
        // q = 9 = 3², E = (embedded F_3)²: all distances lie in the prime field
        let f9 = FieldSpec::new(3, 2).unwrap();
        let sub = f9.subfield_elements().unwrap();
        let mut idxs = Vec::new();
        for &a in &sub {
            for &b in &sub {
                idxs.push(GridPoint::new(vec![a, b]).encode(9));
            }
        }
        let e = PointSet::from_indices(9, 2, idxs);
        assert_eq!(e.len(), 9);
        let delta = distance_set(&f9, &e).unwrap();
        assert!(delta.iter().all(|t| t.index() < 3), "Δ ⊆ embedded F_3");
        assert!(delta.len() as u64 <= 3);
    }
}
