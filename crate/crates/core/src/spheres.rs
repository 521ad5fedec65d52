//! Spheres S_t = {x ∈ F_q^d : ‖x‖ = t}: exact cardinalities and Fourier
//! coefficients (enumerated and in closed form), the three sphere-sum
//! identities, the spectral sphere-energy profile σ_E, the Mattila-type
//! functional M_E(q), and the restricted second-moment maximum in the plane.

use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::fourier::{dft, energy_on_set, GridFunction};
use crate::gauss::gauss_sum;
use crate::grid::{grid_size, GridPoint, PointSet};
use crate::scalar::{q_pow_neg, Scalar};
use crate::spectrum::{indicator_spectrum, sigma_profile_scaled, SpherePack};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// The sphere of radius parameter t.
#[derive(Debug, Clone)]
pub struct Sphere {
    pub t: Fq,
    pub points: PointSet,
}

/// S_t by exhaustive scan.
pub fn sphere_points(field: &FieldSpec, d: u32, t: Fq) -> Sphere {
    let pack = SpherePack::new(field, d);
    Sphere { t, points: pack.sphere_set(t) }
}

/// |S_t| from the classical point-count formulas:
/// odd d:  q^{d−1} + q^{(d−1)/2} ψ((−1)^{(d−1)/2} t)
/// even d: q^{d−1} + μ(t) q^{(d−2)/2} ψ((−1)^{d/2}),  μ(0) = q−1, μ(t≠0) = −1.
pub fn sphere_size_closed_form(field: &FieldSpec, d: u32, t: Fq) -> u64 {
    let q = field.q() as i128;
    let qd1 = q.pow(d - 1);
    let minus_one = field.minus_one();
    let val = if d % 2 == 1 {
        let sign_el = field.pow(minus_one, ((d - 1) / 2) as u64);
        let psi = field.quadratic_char(field.mul(sign_el, t)) as i128;
        qd1 + q.pow((d - 1) / 2) * psi
    } else {
        let mu: i128 = if t == Fq::ZERO { q - 1 } else { -1 };
        let sign_el = field.pow(minus_one, (d / 2) as u64);
        let psi = field.quadratic_char(sign_el) as i128;
        qd1 + mu * q.pow((d - 2) / 2) * psi
    };
    u64::try_from(val).expect("sphere count is nonnegative")
}

/// Ŝ_t(m) in closed form, including the δ₀ term:
///
/// ```text
///   Ŝ_t(m) = q^{−1}δ₀(m) + q^{−d−1} ψ^d(−1) G₁^d Σ_{s≠0} χ(‖m‖/(4s) + st) ψ^d(s)
/// ```
pub fn sphere_fourier_closed_form<T: Scalar>(
    field: &FieldSpec,
    d: u32,
    t: Fq,
    m: &GridPoint,
) -> T {
    let m_norm = crate::grid::norm(field, m);
    let is_zero_vec = m.coords.iter().all(|&c| c == Fq::ZERO);
    sphere_fourier_closed_form_by_norm(field, d, t, m_norm, is_zero_vec)
}

/// Same value, driven by ‖m‖ and the m = 0 flag (the formula depends on m
/// only through these).
pub fn sphere_fourier_closed_form_by_norm<T: Scalar>(
    field: &FieldSpec,
    d: u32,
    t: Fq,
    m_norm: Fq,
    m_is_zero: bool,
) -> T {
    let q = field.q();
    let ctx = T::root_ctx(field.p());
    let four = field.element(4 % field.p()); // 4 = 1+1+1+1, reduced mod p
    let mut sum = T::zero();
    for s in 1..q {
        let s = Fq(s as u32);
        let quarter = field.div(m_norm, field.mul(four, s)).expect("s ≠ 0");
        let e = field.trace_exp(field.add(quarter, field.mul(s, t)));
        let psi_d = if d % 2 == 1 { field.quadratic_char(s) } else { 1 };
        match psi_d {
            1 => T::root(&ctx, e).mul_root_add(&ctx, 0, &mut sum),
            _ => sum = sum.sub(&T::root(&ctx, e)),
        }
    }
    let g = gauss_sum::<T>(field, Fq::ONE);
    let mut g_pow = T::one();
    for _ in 0..d {
        g_pow = g_pow.mul(&g);
    }
    let psi_d_minus1 = if d % 2 == 1 { field.psi_minus_one() } else { 1 };
    let mut tail = g_pow.mul(&sum).mul(&q_pow_neg::<T>(q, d + 1));
    if psi_d_minus1 == -1 {
        tail = T::zero().sub(&tail);
    }
    if m_is_zero {
        T::one().div_int(q).add(&tail)
    } else {
        tail
    }
}

/// Outcome of one exact sphere-identity sweep.
#[derive(Debug, Clone)]
pub struct SphereLemmaReport {
    pub q: u64,
    pub d: u32,
    /// Σ_t |S_t|² and its predicted value q^{2d−1} + q^d − q^{d−1}.
    pub sum_sizes_sq: u128,
    pub sum_sizes_sq_expected: u128,
    pub identity_sizes: bool,
    /// Σ_t |Ŝ_t(m)|² = q^{−d} − q^{−d−1} for every m ≠ 0 (checked scaled by q^{2d}).
    pub identity_l2: bool,
    /// Σ_t |S_t|Ŝ_t(m) is real-rational and ≤ 1 − q^{−1} for every m ≠ 0.
    pub identity_weighted: bool,
    /// First failing m for each of the two per-m identities, if any.
    pub l2_counterexample: Option<u64>,
    pub weighted_counterexample: Option<u64>,
}

impl SphereLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.identity_sizes && self.identity_l2 && self.identity_weighted
    }
}

/// Exact verification of the three sphere identities over all m ≠ 0.
pub fn verify_sphere_lemma(field: &FieldSpec, d: u32) -> SphereLemmaReport {
    let pack = SpherePack::new(field, d).with_spectra(field);
    verify_sphere_lemma_with_pack(field, &pack)
}

/// Same sweep against an already-built pack (shared across checks).
pub fn verify_sphere_lemma_with_pack(field: &FieldSpec, pack: &SpherePack) -> SphereLemmaReport {
    let q = field.q();
    let d = pack.d;
    let spectra = pack.spectra.as_ref().expect("spectra built");
    let n = grid_size(q, d);

    let sum_sizes_sq: u128 = pack.sizes.iter().map(|&s| (s as u128) * (s as u128)).sum();
    let expected: u128 =
        (q as u128).pow(2 * d - 1) + (q as u128).pow(d) - (q as u128).pow(d - 1);
    let identity_sizes = sum_sizes_sq == expected;

    // per-m targets, scaled by q^{2d} resp. q^d
    let l2_target = (q as i128).pow(d) - (q as i128).pow(d - 1);
    let weighted_cap = (q as i128).pow(d) - (q as i128).pow(d - 1);

    let p = field.p() as usize;
    let nc = p - 1;
    let results: Vec<(Option<u64>, Option<u64>)> = (1..n)
        .into_par_iter()
        .map(|m| {
            let mut out = vec![0i64; nc];
            let mut tmp = vec![0i64; 2 * p];
            // Σ_t |U_t(m)|²: individual terms live in Z[ζ_p], the sum must
            // collapse to the rational target. Same for the size-weighted sum.
            let mut l2_coords = vec![0i128; nc];
            let mut weighted = vec![0i128; nc];
            for (t, spec_t) in spectra.iter().enumerate() {
                spec_t.norm_sq_into(m, &mut out, &mut tmp);
                for (a, &c) in l2_coords.iter_mut().zip(out.iter()) {
                    *a += c as i128;
                }
                for (w, &c) in weighted.iter_mut().zip(spec_t.coeffs(m)) {
                    *w += pack.sizes[t] as i128 * c as i128;
                }
            }
            let l2_ok = l2_coords[1..].iter().all(|&c| c == 0) && l2_coords[0] == l2_target;
            let weighted_ok =
                weighted[1..].iter().all(|&c| c == 0) && weighted[0] <= weighted_cap;
            (
                if l2_ok { None } else { Some(m) },
                if weighted_ok { None } else { Some(m) },
            )
        })
        .collect();

    let l2_counterexample = results.iter().filter_map(|r| r.0).min();
    let weighted_counterexample = results.iter().filter_map(|r| r.1).min();

    SphereLemmaReport {
        q,
        d,
        sum_sizes_sq,
        sum_sizes_sq_expected: expected,
        identity_sizes,
        identity_l2: l2_counterexample.is_none(),
        identity_weighted: weighted_counterexample.is_none(),
        l2_counterexample,
        weighted_counterexample,
    }
}

/// σ_E(t) = Σ_{‖m‖=t} |Ê(m)|², for every t, in the generic value type.
/// The individual values are real cyclotomic numbers (rational only in
/// aggregate), so exact mode returns them as `CycNum`.
pub fn sigma_profile<T: Scalar>(field: &FieldSpec, set: &PointSet) -> Result<Vec<T>> {
    if set.is_empty() {
        // well-defined (all zeros), no spectral work needed
        return Ok(vec![T::zero(); field.q() as usize]);
    }
    let f: GridFunction<T> = GridFunction::indicator(set);
    let spec = dft(field, &f);
    let pack = SpherePack::new(field, set.d());
    (0..field.q())
        .map(|t| energy_on_set(&spec, &pack.sphere_set(Fq(t as u32))))
        .collect()
}

/// Exact σ-profile as q^{2d}-scaled cyclotomic integers W_t, plus the pack
/// used to compute it (shared by downstream checks).
pub fn sigma_profile_exact(
    field: &FieldSpec,
    set: &PointSet,
) -> (SpherePack, Vec<Cyc<i128>>) {
    let pack = SpherePack::new(field, set.d());
    let u = indicator_spectrum(field, set);
    let profile = sigma_profile_scaled(&pack, &u);
    (pack, profile)
}

/// M_E(q) = q^{3d+1} |E|^{−4} Σ_{t≠0} σ_E²(t), exact.
pub fn mattila_m(field: &FieldSpec, set: &PointSet) -> Result<BigRational> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let (_, profile) = sigma_profile_exact(field, set);
    mattila_m_from_profile(field, set, &profile)
}

pub fn mattila_m_from_profile(
    field: &FieldSpec,
    set: &PointSet,
    profile: &[Cyc<i128>],
) -> Result<BigRational> {
    let q = field.q();
    let d = set.d();
    // Σ_{t≠0} W_t² must be rational even though single W_t are not.
    let mut acc = Cyc::<i128>::zero();
    for w in profile.iter().skip(1) {
        acc = acc.add(&w.mul(w));
    }
    let sum = acc
        .rational_part()
        .expect("Galois-invariant sphere-energy aggregate must be rational");
    // M = q^{3d+1} |E|^{−4} q^{−4d} ΣW² = q·ΣW² / (q^d |E|⁴)
    let e4 = BigInt::from(set.len()).pow(4);
    let num = BigInt::from(sum) * BigInt::from(q);
    let den = BigInt::from(q).pow(d) * e4;
    Ok(BigRational::new(num, den))
}

/// min{q, q/M_E(q)} with M = 0 mapped to bound q.
pub fn mattila_bound(field: &FieldSpec, set: &PointSet) -> Result<BigRational> {
    let m = mattila_m(field, set)?;
    let q = BigRational::from_integer(BigInt::from(field.q()));
    if m <= BigRational::one() {
        Ok(q)
    } else {
        Ok(q / m)
    }
}

/// Restricted second-moment maximum in the plane.
#[derive(Debug, Clone)]
pub struct RestrictionReport {
    /// max_{t≠0} Σ_{m∈S_t}|Ê(m)|², numerically embedded.
    pub max_energy: f64,
    pub argmax_t: u64,
    /// max_energy · q³ / (√3 |E|^{3/2}).
    pub ratio: f64,
}

/// max over t ≠ 0 of the sphere-restricted spectral energy, with its ratio
/// to the √3|E|^{3/2}/q³ reference bound.
pub fn restriction_max(field: &FieldSpec, set: &PointSet) -> Result<RestrictionReport> {
    if set.d() != 2 {
        return Err(Error::WrongDimension { expected: 2, got: set.d() });
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let q = field.q();
    let (_, profile) = sigma_profile_exact(field, set);
    let scale = (q as f64).powi(-4); // W_t = q^{2d} σ_t, d = 2
    let mut best = (0.0f64, 0u64);
    for (t, w) in profile.iter().enumerate().skip(1) {
        let val = w.embed().re * scale;
        if val > best.0 {
            best = (val, t as u64);
        }
    }
    let e = set.len() as f64;
    let bound = 3f64.sqrt() * e.powf(1.5) / (q as f64).powi(3);
    Ok(RestrictionReport { max_energy: best.0, argmax_t: best.1, ratio: best.0 / bound })
}

/// Exact rational embedding helper for reports.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// True iff r is zero (used by report margins).
pub fn rational_is_zero(r: &BigRational) -> bool {
    r.is_zero() || r.abs().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::rng::DetRng;
    use crate::scalar::rational;
    use num_complex::Complex64;

    #[test]
    fn sphere_enumeration_spot_checks() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        // q=3, d=2: S_0 = {(0,0)}, S_1 = {(0,±1),(±1,0)}
        let s0 = sphere_points(&f3, 2, Fq::ZERO);
        assert_eq!(s0.points.members(), vec![0]);
        let s1 = sphere_points(&f3, 2, Fq::ONE);
        assert_eq!(s1.points.len(), 4);
        // q=5, d=2: |S_0| = 9 (two isotropic lines through the origin)
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(sphere_points(&f5, 2, Fq::ZERO).points.len(), 9);
    }

    #[test]
    fn closed_form_sizes_match_enumeration() {
        for (q, d) in [(3u64, 2u32), (3, 3), (5, 2), (5, 3), (7, 2), (9, 2), (9, 3), (25, 2)] {
            let field = FieldSpec::from_q(q).unwrap();
            let pack = SpherePack::new(&field, d);
            for t in 0..q {
                let t = Fq(t as u32);
                assert_eq!(
                    sphere_size_closed_form(&field, d, t),
                    pack.sizes[t.0 as usize],
                    "q={q} d={d} t={t:?}"
                );
            }
            assert_eq!(pack.sizes.iter().sum::<u64>(), grid_size(q, d));
        }
        // spot values
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(sphere_size_closed_form(&f3, 2, Fq::ZERO), 1);
        assert_eq!(sphere_size_closed_form(&f3, 2, Fq::ONE), 4);
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(sphere_size_closed_form(&f5, 2, Fq::ZERO), 9);
    }

    #[test]
    fn fourier_closed_form_equals_direct_transform() {
        for (q, d) in [(3u64, 2u32), (5, 2), (3, 3), (9, 2)] {
            let field = FieldSpec::from_q(q).unwrap();
            let pack = SpherePack::new(&field, d).with_spectra(&field);
            let spectra = pack.spectra.as_ref().unwrap();
            let n = grid_size(q, d);
            for t in 0..q {
                for m in 0..n {
                    let mp = GridPoint::decode(q, d, m);
                    let closed: CycNum =
                        sphere_fourier_closed_form(&field, d, Fq(t as u32), &mp);
                    let direct = spectra[t as usize].normalized_value(m);
                    assert_eq!(closed, direct, "q={q} d={d} t={t} m={m}");
                }
            }
        }
    }

    #[test]
    fn fourier_closed_form_at_zero_is_density() {
        for (q, d) in [(5u64, 2u32), (7, 2), (9, 2)] {
            let field = FieldSpec::from_q(q).unwrap();
            for t in 0..q {
                let closed: CycNum =
                    sphere_fourier_closed_form(&field, d, Fq(t as u32), &GridPoint::origin(d));
                let want = rational(
                    sphere_size_closed_form(&field, d, Fq(t as u32)) as i64,
                    grid_size(q, d),
                );
                assert_eq!(closed, want, "q={q} d={d} t={t}");
            }
        }
    }

    #[test]
    fn sphere_lemma_small_fields() {
        for (q, d) in [(3u64, 2u32), (5, 2), (3, 3), (5, 3), (9, 2)] {
            let field = FieldSpec::from_q(q).unwrap();
            let report = verify_sphere_lemma(&field, d);
            assert!(report.all_hold(), "q={q} d={d}: {report:?}");
        }
        // spot: q=3, d=2 gives Σ|S_t|² = 1 + 16 + 16 = 33 = 3⁵ + 3² − 3
        let report = verify_sphere_lemma(&FieldSpec::new(3, 1).unwrap(), 2);
        assert_eq!(report.sum_sizes_sq, 33);
        // spot: q=5, d=3 gives 5⁵ + 5³ − 5² = 3225
        let report = verify_sphere_lemma(&FieldSpec::new(5, 1).unwrap(), 3);
        assert_eq!(report.sum_sizes_sq, 3225);
    }

    #[test]
    fn sphere_lemma_l2_spot_value() {
        // q=3, d=2, m=(1,0): Σ_t |Ŝ_t(m)|² = 2/27, i.e. scaled Σ|U_t|² = 6
        let field = FieldSpec::new(3, 1).unwrap();
        let pack = SpherePack::new(&field, 2).with_spectra(&field);
        let spectra = pack.spectra.as_ref().unwrap();
        let m = GridPoint::new(vec![Fq(1), Fq(0)]).encode(3);
        let mut total = CycNum::zero();
        for spec_t in spectra.iter() {
            let v = spec_t.normalized_value(m);
            total = total.add(&v.norm_sq());
        }
        assert_eq!(total, rational(2, 27));
    }

    #[test]
    fn sigma_mass_is_plancherel() {
        let field = FieldSpec::new(3, 1).unwrap();
        let mut rng = DetRng::new(5);
        let set = PointSet::from_indices(3, 2, rng.distinct(9, 5));
        let profile: Vec<CycNum> = sigma_profile(&field, &set).unwrap();
        let mut total = CycNum::zero();
        for s in &profile {
            total = total.add(s);
        }
        assert_eq!(total, rational(5, 9));
        // empty set: all zeros
        let zero: Vec<CycNum> = sigma_profile(&field, &PointSet::empty(3, 2)).unwrap();
        assert!(zero.iter().all(|s| s.is_zero()));
        // full grid: σ concentrates at t = 0 with value 1
        let full: Vec<CycNum> = sigma_profile(&field, &PointSet::full(3, 2)).unwrap();
        assert_eq!(full[0], CycNum::one());
        assert!(full[1..].iter().all(|s| s.is_zero()));
    }

    #[test]
    fn sigma_profiles_agree_between_modes() {
        let field = FieldSpec::new(5, 1).unwrap();
        let mut rng = DetRng::new(6);
        let set = PointSet::from_indices(5, 2, rng.distinct(25, 8));
        let exact: Vec<CycNum> = sigma_profile(&field, &set).unwrap();
        let float: Vec<Complex64> = sigma_profile(&field, &set).unwrap();
        let (_, scaled) = sigma_profile_exact(&field, &set);
        for t in 0..5usize {
            assert!((exact[t].embed() - float[t]).norm() < 1e-9);
            let from_scaled = scaled[t].embed().re / 625.0;
            assert!((exact[t].embed().re - from_scaled).abs() < 1e-9);
        }
    }

    #[test]
    fn mattila_functional_cases() {
        let field = FieldSpec::new(5, 1).unwrap();
        // full grid: Ê = δ₀, σ_E(t≠0) = 0, M = 0, bound = q
        let full = PointSet::full(5, 2);
        assert!(mattila_m(&field, &full).unwrap().is_zero());
        assert_eq!(
            mattila_bound(&field, &full).unwrap(),
            BigRational::from_integer(5.into())
        );
        // single point: |U(m)| = 1 everywhere, so W_t = |S_t| and
        // M = q·Σ_{t≠0}|S_t|²/(q²·1) = 5·(4·16)/25 = 64/5
        let single = PointSet::from_indices(5, 2, [7u64]);
        let m = mattila_m(&field, &single).unwrap();
        assert_eq!(m, BigRational::new(64.into(), 5.into()));
        // empty set is an error
        assert!(matches!(
            mattila_m(&field, &PointSet::empty(5, 2)),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn restriction_bounds() {
        let field = FieldSpec::new(7, 1).unwrap();
        // full grid: Ê supported at 0 which is not on S_{t≠0}: max = 0
        let full = PointSet::full(7, 2);
        let r = restriction_max(&field, &full).unwrap();
        assert_eq!(r.max_energy, 0.0);
        // single point: Σ_{S_t}|Ê|² = q^{−4}|S_t|, ratio ≤ (1 + 1/q)/√3
        let single = PointSet::from_indices(7, 2, [3u64]);
        let r = restriction_max(&field, &single).unwrap();
        assert!(r.ratio <= (1.0 + 1.0 / 7.0) / 3f64.sqrt() + 1e-12, "ratio {}", r.ratio);
        // wrong dimension
        assert!(matches!(
            restriction_max(&field, &PointSet::full(7, 3)),
            Err(Error::WrongDimension { .. })
        ));
        // random sets stay below the reference bound with the 1 + 5/q guard
        let mut rng = DetRng::new(11);
        for _ in 0..40 {
            let set = PointSet::from_indices(7, 2, rng.distinct(49, 14));
            let r = restriction_max(&field, &set).unwrap();
            assert!(r.ratio <= 1.0 + 5.0 / 7.0, "ratio {}", r.ratio);
        }
    }
}
