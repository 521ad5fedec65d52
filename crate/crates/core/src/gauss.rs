//! The canonical additive character, the quadratic character, and Gauss sums.
//!
//! χ(a) = ζ_p^{Tr(a)} and ψ(a) = a^{(q−1)/2} ∈ {−1, 0, +1}. The Gauss sum
//!
//! ```text
//!   G_a(ψ, χ) = Σ_{s ∈ F_q^*} ψ(s) χ(as)
//! ```
//!
//! has |G_a|² = q for a ≠ 0 and G_0 = 0; for a = 1 it is pinned exactly by
//! the classical evaluation: (−1)^{l−1}√q when p ≡ 1 (mod 4), and
//! (−1)^{l−1} i^l √q when p ≡ 3 (mod 4).

use crate::field::{FieldSpec, Fq};
use crate::scalar::Scalar;
use num_complex::Complex64;

/// χ(a) = ζ_p^{Tr(a)}.
pub fn additive_char<T: Scalar>(field: &FieldSpec, a: Fq) -> T {
    let ctx = T::root_ctx(field.p());
    T::root(&ctx, field.trace_exp(a))
}

/// ψ(a) ∈ {−1, 0, +1}.
pub fn quadratic_char(field: &FieldSpec, a: Fq) -> i8 {
    field.quadratic_char(a)
}

/// G_a(ψ, χ) by direct summation over F_q^*.
pub fn gauss_sum<T: Scalar>(field: &FieldSpec, a: Fq) -> T {
    let ctx = T::root_ctx(field.p());
    let mut acc = T::zero();
    for s in 1..field.q() {
        let s = Fq(s as u32);
        let e = field.trace_exp(field.mul(a, s));
        match field.quadratic_char(s) {
            1 => T::root(&ctx, e).mul_root_add(&ctx, 0, &mut acc),
            -1 => {
                let term = T::root(&ctx, e);
                acc = acc.sub(&term);
            }
            _ => unreachable!("s ranges over nonzero elements"),
        }
    }
    acc
}

/// The exact evaluation of G_1(ψ, χ) as a complex number.
pub fn gauss_sum_closed_form(field: &FieldSpec) -> Complex64 {
    let q = field.q() as f64;
    let l = field.l();
    let sign = if (l - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let root_q = q.sqrt();
    if field.p() % 4 == 1 {
        Complex64::new(sign * root_q, 0.0)
    } else {
        // i^l cycles 1, i, −1, −i
        let il = match l % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        il * sign * root_q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::scalar::rational;

    #[test]
    fn character_values_and_orthogonality() {
        // χ(0) = 1; q=3: χ(1) = ζ₃; q=9 with modulus x²+1: χ(x) = 1 since Tr(x) = 0
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(additive_char::<CycNum>(&f3, Fq::ZERO), CycNum::one());
        assert_eq!(additive_char::<CycNum>(&f3, Fq::ONE), CycNum::root(3, 1));
        let f9 = FieldSpec::new(3, 2).unwrap();
        let x = f9.from_digits(&[0, 1]);
        assert_eq!(additive_char::<CycNum>(&f9, x), CycNum::one());

        for q in [3u64, 5, 9, 27, 25] {
            let field = FieldSpec::from_q(q).unwrap();
            // χ(a+b) = χ(a)χ(b)
            for a in (0..q).step_by(2) {
                for b in (0..q).step_by(3) {
                    let (a, b) = (Fq(a as u32), Fq(b as u32));
                    let lhs = additive_char::<CycNum>(&field, field.add(a, b));
                    let rhs = additive_char::<CycNum>(&field, a)
                        .mul(&additive_char::<CycNum>(&field, b));
                    assert_eq!(lhs, rhs);
                }
            }
            // Σ_s χ(st) = q·[t = 0], exactly, for every t
            for t in 0..q {
                let t = Fq(t as u32);
                let mut acc = CycNum::zero();
                for s in 0..q {
                    acc = acc.add(&additive_char::<CycNum>(&field, field.mul(Fq(s as u32), t)));
                }
                let want = if t == Fq::ZERO { CycNum::from_i64(q as i64) } else { CycNum::zero() };
                assert_eq!(acc, want, "q={q} t={t:?}");
            }
        }
    }

    #[test]
    fn gauss_sum_small_fields() {
        // q=3, a=1: G = ζ₃ − ζ₃²  (= i√3)
        let f3 = FieldSpec::new(3, 1).unwrap();
        let g3 = gauss_sum::<CycNum>(&f3, Fq::ONE);
        assert_eq!(g3, CycNum::root(3, 1).sub(&CycNum::root(3, 2)));
        let e3 = g3.embed();
        assert!((e3 - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);

        // q=5, a=1: G = ζ + ζ⁴ − ζ² − ζ³  (= √5)
        let f5 = FieldSpec::new(5, 1).unwrap();
        let g5 = gauss_sum::<CycNum>(&f5, Fq::ONE);
        let want = CycNum::root(5, 1)
            .add(&CycNum::root(5, 4))
            .sub(&CycNum::root(5, 2))
            .sub(&CycNum::root(5, 3));
        assert_eq!(g5, want);
        assert!((g5.embed() - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);

        // a = 0 kills the sum
        assert!(gauss_sum::<CycNum>(&f5, Fq::ZERO).is_zero());
    }

    #[test]
    fn closed_form_matrix() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125] {
            let field = FieldSpec::from_q(q).unwrap();
            let exact = gauss_sum::<CycNum>(&field, Fq::ONE);
            let closed = gauss_sum_closed_form(&field);
            let err = (exact.embed() - closed).norm();
            assert!(err < 1e-9 * (q as f64).sqrt(), "q={q} err={err}");
            // G² = ψ(−1)·q as an exact identity, and for every a ≠ 0
            let want = CycNum::from_i64(field.psi_minus_one() as i64 * q as i64);
            for a in 1..q {
                let g = gauss_sum::<CycNum>(&field, Fq(a as u32));
                assert_eq!(g.mul(&g), want, "q={q} a={a}");
                // |G_a|² = q
                assert_eq!(g.norm_sq(), CycNum::from_i64(q as i64));
            }
        }
    }

    #[test]
    fn closed_form_spot_values() {
        // q=3: i√3. q=9: (−1)·i²·3 = 3. q=5: √5.
        let f3 = gauss_sum_closed_form(&FieldSpec::new(3, 1).unwrap());
        assert!((f3 - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        let f9 = gauss_sum_closed_form(&FieldSpec::new(3, 2).unwrap());
        assert!((f9 - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        let f5 = gauss_sum_closed_form(&FieldSpec::new(5, 1).unwrap());
        assert!((f5 - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rational_helper() {
        assert_eq!(rational(2, 4), rational(1, 2));
    }
}
