//! The value type abstraction for grid functions and spectra.
//!
//! Exact mode works in Q(ζ_p) ([`CycNum`]); float mode works in complex
//! doubles. Multiplication by a root of unity is the hot operation of the
//! tensor transform, so each type supplies it through a precomputed context:
//! a table of the p-th roots for floats, nothing but p itself for exact
//! values (where it is a coefficient rotation).

use crate::cyclotomic::CycNum;
use num_complex::Complex64;
use num_rational::BigRational;
use std::fmt::Debug;

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Precomputed data for fast multiplication by p-th roots of unity.
    type RootCtx: Send + Sync;

    /// True for representations where `==` is mathematical equality.
    const EXACT: bool;

    fn root_ctx(p: u64) -> Self::RootCtx;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    /// ζ_p^k.
    fn root(ctx: &Self::RootCtx, k: u64) -> Self;
    /// acc += self · ζ_p^k.
    fn mul_root_add(&self, ctx: &Self::RootCtx, k: u64, acc: &mut Self);

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn conj(&self) -> Self;
    /// |self|² (a real value of the same type).
    fn norm_sq(&self) -> Self;
    /// Exact division by a positive integer (the q^{−d} transform prefactor).
    fn div_int(&self, n: u64) -> Self;

    fn is_zero(&self) -> bool;
    fn embed(&self) -> Complex64;

    /// Magnitude of the numeric embedding; 0 exactly when `is_zero` for
    /// exact values.
    fn abs(&self) -> f64 {
        self.embed().norm()
    }
}

impl Scalar for CycNum {
    type RootCtx = u64;
    const EXACT: bool = true;

    fn root_ctx(p: u64) -> u64 {
        p
    }
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn from_i64(n: i64) -> Self {
        CycNum::from_i64(n)
    }
    fn root(ctx: &u64, k: u64) -> Self {
        CycNum::root(*ctx, k)
    }
    fn mul_root_add(&self, ctx: &u64, k: u64, acc: &mut Self) {
        acc.add_assign(&self.mul_root(*ctx, k));
    }
    fn add(&self, rhs: &Self) -> Self {
        CycNum::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        CycNum::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        CycNum::mul(self, rhs)
    }
    fn conj(&self) -> Self {
        CycNum::conj(self)
    }
    fn norm_sq(&self) -> Self {
        CycNum::norm_sq(self)
    }
    fn div_int(&self, n: u64) -> Self {
        CycNum::div_int(self, n)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn embed(&self) -> Complex64 {
        CycNum::embed(self)
    }
}

impl Scalar for Complex64 {
    type RootCtx = Vec<Complex64>;
    const EXACT: bool = false;

    fn root_ctx(p: u64) -> Vec<Complex64> {
        (0..p)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (p as f64);
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect()
    }
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn root(ctx: &Vec<Complex64>, k: u64) -> Self {
        ctx[(k as usize) % ctx.len()]
    }
    fn mul_root_add(&self, ctx: &Vec<Complex64>, k: u64, acc: &mut Self) {
        *acc += self * ctx[(k as usize) % ctx.len()];
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn norm_sq(&self) -> Self {
        Complex64::new(self.norm_sqr(), 0.0)
    }
    fn div_int(&self, n: u64) -> Self {
        self / (n as f64)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn embed(&self) -> Complex64 {
        *self
    }
}

/// Rational q^{−e} as an exact scalar; floats get the obvious value.
pub fn q_pow_neg<T: Scalar>(q: u64, e: u32) -> T {
    let mut x = T::one();
    for _ in 0..e {
        x = x.div_int(q);
    }
    x
}

/// Convenience: an exact rational as a `CycNum`.
pub fn rational(num: i64, den: u64) -> CycNum {
    CycNum::from_ratio(num, den)
}

/// Convenience: BigRational → f64.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
