//! Exact arithmetic in the cyclotomic field Q(ζ_p), p an odd prime.
//!
//! Elements are stored in the power basis {ζ^0, …, ζ^{p−2}}; the relation
//! 1 + ζ + … + ζ^{p−1} = 0 is applied eagerly so the ζ^{p−1} coordinate is
//! always absorbed. Two encodings share the representation:
//!
//! * a length-1 coefficient vector is a plain rational, valid in Q(ζ_p)
//!   for every p (this is what `zero`/`one` produce, so constants do not
//!   need to know p);
//! * a length-(p−1) vector is a general element of Q(ζ_p).
//!
//! The type is generic over the coefficient ring so the same reduction
//! logic serves exact rationals (`CycNum`) and the scaled-integer spectra
//! used by the identity checks (`Cyc<i64>`, `Cyc<i128>`).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// Coefficient ring for cyclotomic elements.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, rhs: &Self);
    fn sub_assign(&mut self, rhs: &Self);
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! int_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn zero() -> Self {
                0
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn add_assign(&mut self, rhs: &Self) {
                *self += rhs;
            }
            fn sub_assign(&mut self, rhs: &Self) {
                *self -= rhs;
            }
            fn neg(&self) -> Self {
                -self
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}
int_coeff!(i64);
int_coeff!(i128);

/// An element of Q(ζ_p) (or Z\[ζ_p\] for integer coefficients).
#[derive(Clone, Debug)]
pub struct Cyc<C: Coeff> {
    coeffs: Vec<C>,
}

/// Exact element of Q(ζ_p): the crate's exact spectral value type.
pub type CycNum = Cyc<BigRational>;

impl<C: Coeff> Cyc<C> {
    pub fn zero() -> Self {
        Cyc { coeffs: vec![C::zero()] }
    }

    pub fn one() -> Self {
        Cyc { coeffs: vec![C::from_i64(1)] }
    }

    pub fn from_scalar(c: C) -> Self {
        Cyc { coeffs: vec![c] }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_scalar(C::from_i64(n))
    }

    /// ζ_p^k.
    pub fn root(p: u64, k: u64) -> Self {
        let k = k % p;
        let n = (p - 1) as usize;
        if k == 0 {
            return Self::one();
        }
        let mut coeffs = vec![C::zero(); n];
        if k as usize == n {
            // ζ^{p−1} = −(1 + ζ + … + ζ^{p−2})
            let m1 = C::from_i64(-1);
            for c in coeffs.iter_mut() {
                *c = m1.clone();
            }
        } else {
            coeffs[k as usize] = C::from_i64(1);
        }
        Cyc { coeffs }
    }

    /// Raw coefficients in the basis {ζ^0, …}; length 1 or p−1.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        Cyc { coeffs }
    }

    /// The order p implied by the representation, if ambient (len = p−1).
    fn order(&self) -> Option<u64> {
        if self.coeffs.len() == 1 {
            None
        } else {
            Some(self.coeffs.len() as u64 + 1)
        }
    }

    fn promoted(&self, n: usize) -> Vec<C> {
        if self.coeffs.len() == n {
            self.coeffs.clone()
        } else {
            assert_eq!(self.coeffs.len(), 1, "mixed cyclotomic orders");
            let mut v = vec![C::zero(); n];
            v[0] = self.coeffs[0].clone();
            v
        }
    }

    fn unify(a: &Self, b: &Self) -> usize {
        match (a.order(), b.order()) {
            (None, None) => 1,
            (Some(p), None) | (None, Some(p)) => (p - 1) as usize,
            (Some(pa), Some(pb)) => {
                assert_eq!(pa, pb, "mixed cyclotomic orders {pa} vs {pb}");
                (pa - 1) as usize
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// True iff the element lies in Q (all non-constant coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(C::is_zero)
    }

    pub fn rational_part(&self) -> Option<C> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = Self::unify(self, rhs);
        let mut out = self.promoted(n);
        let r = rhs.promoted(n);
        for (o, x) in out.iter_mut().zip(r.iter()) {
            o.add_assign(x);
        }
        Cyc { coeffs: out }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = Self::unify(self, rhs);
        let mut out = self.promoted(n);
        let r = rhs.promoted(n);
        for (o, x) in out.iter_mut().zip(r.iter()) {
            o.sub_assign(x);
        }
        Cyc { coeffs: out }
    }

    pub fn neg(&self) -> Self {
        Cyc { coeffs: self.coeffs.iter().map(C::neg).collect() }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Fast paths for rational operands.
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            return Cyc { coeffs: rhs.coeffs.iter().map(|x| c.mul(x)).collect() };
        }
        if rhs.coeffs.len() == 1 {
            let c = &rhs.coeffs[0];
            return Cyc { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() };
        }
        let n = Self::unify(self, rhs);
        let p = n + 1;
        // Convolution with exponents folded mod p into a length-p scratch,
        // then absorb ζ^{p−1}.
        let mut scratch = vec![C::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = (i + j) % p;
                scratch[e].add_assign(&a.mul(b));
            }
        }
        fold(scratch)
    }

    /// Multiply by ζ_p^k: a coefficient rotation, no ring products.
    pub fn mul_root(&self, p: u64, k: u64) -> Self {
        let n = (p - 1) as usize;
        let k = (k % p) as usize;
        if k == 0 {
            return Cyc { coeffs: self.promoted(n) };
        }
        let src = self.promoted(n);
        let mut scratch = vec![C::zero(); n + 1];
        for (j, c) in src.into_iter().enumerate() {
            scratch[(j + k) % (n + 1)] = c;
        }
        fold(scratch)
    }

    /// Complex conjugate: ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> Self {
        match self.order() {
            None => self.clone(),
            Some(p) => {
                let n = (p - 1) as usize;
                let mut scratch = vec![C::zero(); n + 1];
                for (j, c) in self.coeffs.iter().enumerate() {
                    let e = if j == 0 { 0 } else { n + 1 - j };
                    scratch[e] = c.clone();
                }
                fold(scratch)
            }
        }
    }

    /// |z|² = z·conj(z); real, but not rational in general.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Numeric embedding ζ_p ↦ e^{2πi/p}.
    pub fn embed(&self) -> Complex64 {
        match self.order() {
            None => Complex64::new(self.coeffs[0].to_f64(), 0.0),
            Some(p) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let theta = 2.0 * std::f64::consts::PI * (j as f64) / (p as f64);
                    acc += Complex64::new(theta.cos(), theta.sin()) * c.to_f64();
                }
                acc
            }
        }
    }
}

/// Absorb the ζ^{p−1} slot of a length-p scratch vector back into the basis.
fn fold<C: Coeff>(mut scratch: Vec<C>) -> Cyc<C> {
    let top = scratch.pop().expect("nonempty scratch");
    if !top.is_zero() {
        for c in scratch.iter_mut() {
            c.sub_assign(&top);
        }
    }
    Cyc { coeffs: scratch }
}

impl<C: Coeff> PartialEq for Cyc<C> {
    fn eq(&self, other: &Self) -> bool {
        let n = Self::unify(self, other);
        self.promoted(n) == other.promoted(n)
    }
}

impl CycNum {
    pub fn from_rational(r: BigRational) -> Self {
        Self::from_scalar(r)
    }

    pub fn from_ratio(num: i64, den: u64) -> Self {
        Self::from_scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact division by a nonzero integer.
    pub fn div_int(&self, n: u64) -> Self {
        assert!(n > 0);
        let d = BigRational::from_integer(BigInt::from(n));
        Cyc { coeffs: self.coeffs.iter().map(|c| c / &d).collect() }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.rational_part()
    }

    /// Nonnegative rational square root if the element is one.
    pub fn is_nonneg_rational(&self) -> bool {
        self.as_rational().map(|r| !r.is_negative()).unwrap_or(false)
    }
}

impl<C: Coeff> fmt::Display for Cyc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c:?}")?;
            } else {
                write!(f, "{c:?}·z^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
