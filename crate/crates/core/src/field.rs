//! Arithmetic in F_q, q = p^l with p an odd prime.
//!
//! Elements are canonical indices in `[0, q)`: the base-p digits of the index
//! are the coefficients of the representative polynomial, constant term least
//! significant. The index encoding fixes enumeration order everywhere else in
//! the crate (grids, point-set files, sphere partitions).

use crate::error::{Error, Result};

/// An element of F_q, as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn index(self) -> u64 {
        self.0 as u64
    }
}

const TABLE_MAX_Q: u64 = 2048;

#[derive(Debug, Clone)]
enum Repr {
    /// l = 1: plain modular arithmetic.
    Prime,
    /// l ≥ 2, q small: dense q×q add/mul tables.
    Tabled { add: Vec<u32>, mul: Vec<u32> },
    /// l ≥ 2, q large: on-the-fly polynomial arithmetic.
    Poly,
}

/// The field F_{p^l} with a fixed monic irreducible modulus.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    l: u32,
    q: u64,
    /// Monic modulus, length l+1, constant term first. For l = 1 this is [0, 1] (the polynomial x).
    modulus: Vec<u64>,
    repr: Repr,
    inv: Vec<u32>,
    /// Quadratic character ψ(a) ∈ {−1, 0, +1}.
    psi: Vec<i8>,
    /// Tr(a) as an integer in [0, p).
    trace: Vec<u32>,
}

impl FieldSpec {
    /// F_{p^l} with the default modulus: the lexicographically least monic
    /// irreducible of degree l over Z_p, coefficients compared from the
    /// constant term upward.
    pub fn new(p: u64, l: u32) -> Result<FieldSpec> {
        check_char(p)?;
        assert!(l >= 1, "extension degree must be at least 1");
        let modulus = if l == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, l)
        };
        Self::build(p, l, modulus)
    }

    /// F_{p^l} with an explicit monic modulus (constant term first, length l+1).
    pub fn with_modulus(p: u64, l: u32, modulus: Vec<u64>) -> Result<FieldSpec> {
        check_char(p)?;
        if modulus.len() != l as usize + 1
            || modulus[l as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || (l >= 2 && !is_irreducible(p, &modulus))
        {
            return Err(Error::NotIrreducible { p, degree: l });
        }
        Self::build(p, l, modulus)
    }

    /// Resolve q = p^l (p recovered as the unique prime base).
    pub fn from_q(q: u64) -> Result<FieldSpec> {
        let (p, l) = split_prime_power(q)?;
        Self::new(p, l)
    }

    fn build(p: u64, l: u32, modulus: Vec<u64>) -> Result<FieldSpec> {
        let q = p.checked_pow(l).expect("q overflow");
        assert!(q <= 1 << 21, "q = {q} beyond supported range");
        let repr = if l == 1 {
            Repr::Prime
        } else if q <= TABLE_MAX_Q {
            let mut add = vec![0u32; (q * q) as usize];
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let s = poly_add_idx(p, l, a, b);
                    let m = poly_mul_idx(p, l, &modulus, a, b);
                    add[(a * q + b) as usize] = s as u32;
                    add[(b * q + a) as usize] = s as u32;
                    mul[(a * q + b) as usize] = m as u32;
                    mul[(b * q + a) as usize] = m as u32;
                }
            }
            Repr::Tabled { add, mul }
        } else {
            Repr::Poly
        };

        let mut spec = FieldSpec {
            p,
            l,
            q,
            modulus,
            repr,
            inv: Vec::new(),
            psi: Vec::new(),
            trace: Vec::new(),
        };

        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            inv[a as usize] = spec.pow(Fq(a as u32), q - 2).0;
        }
        spec.inv = inv;

        let mut psi = vec![-1i8; q as usize];
        psi[0] = 0;
        for s in 1..q {
            let sq = spec.mul(Fq(s as u32), Fq(s as u32));
            psi[sq.0 as usize] = 1;
        }
        spec.psi = psi;

        let mut trace = vec![0u32; q as usize];
        for a in 0..q {
            let mut acc = Fq(a as u32);
            let mut frob = Fq(a as u32);
            for _ in 1..l {
                frob = spec.pow(frob, p);
                acc = spec.add(acc, frob);
            }
            debug_assert!(acc.index() < p, "trace left the prime subfield");
            trace[a as usize] = acc.0;
        }
        spec.trace = trace;

        Ok(spec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn element(&self, idx: u64) -> Fq {
        assert!(idx < self.q, "index {idx} out of range for q={}", self.q);
        Fq(idx as u32)
    }

    /// −1 as a field element.
    pub fn minus_one(&self) -> Fq {
        self.neg(Fq::ONE)
    }

    /// Base-p digits of an element, constant term first, length l.
    pub fn digits(&self, a: Fq) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.l as usize);
        let mut x = a.index();
        for _ in 0..self.l {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    pub fn from_digits(&self, digits: &[u64]) -> Fq {
        assert!(digits.len() <= self.l as usize);
        let mut idx = 0u64;
        for &d in digits.iter().rev() {
            assert!(d < self.p);
            idx = idx * self.p + d;
        }
        Fq(idx as u32)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match &self.repr {
            Repr::Prime => Fq(((a.index() + b.index()) % self.p) as u32),
            Repr::Tabled { add, .. } => Fq(add[(a.index() * self.q + b.index()) as usize]),
            Repr::Poly => Fq(poly_add_idx(self.p, self.l, a.index(), b.index()) as u32),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        match &self.repr {
            Repr::Prime => Fq(((self.p - a.index()) % self.p) as u32),
            _ => {
                let digits: Vec<u64> =
                    self.digits(a).iter().map(|&d| (self.p - d) % self.p).collect();
                self.from_digits(&digits)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        match &self.repr {
            Repr::Prime => Fq(((a.index() * b.index()) % self.p) as u32),
            Repr::Tabled { mul, .. } => Fq(mul[(a.index() * self.q + b.index()) as usize]),
            Repr::Poly => Fq(poly_mul_idx(self.p, self.l, &self.modulus, a.index(), b.index()) as u32),
        }
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a == Fq::ZERO {
            return Err(Error::DivisionByZero);
        }
        Ok(Fq(self.inv[a.0 as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Field trace Tr(a) = a + a^p + … + a^{p^{l−1}}, as an element of the
    /// prime subfield (its index is the integer value in [0, p)).
    pub fn trace(&self, a: Fq) -> Fq {
        Fq(self.trace[a.0 as usize])
    }

    /// Tr(a) as an integer exponent in [0, p), ready for ζ_p^Tr(a).
    #[inline]
    pub fn trace_exp(&self, a: Fq) -> u64 {
        self.trace[a.0 as usize] as u64
    }

    /// Quadratic character ψ(a): 0 at 0, +1 on nonzero squares, −1 otherwise.
    #[inline]
    pub fn quadratic_char(&self, a: Fq) -> i8 {
        self.psi[a.0 as usize]
    }

    /// ψ(−1) = (−1)^{(q−1)/2}: +1 iff q ≡ 1 (mod 4).
    pub fn psi_minus_one(&self) -> i8 {
        self.quadratic_char(self.minus_one())
    }

    /// A square root of −1, if q ≡ 1 (mod 4).
    pub fn sqrt_minus_one(&self) -> Option<Fq> {
        let m1 = self.minus_one();
        (0..self.q).map(|i| Fq(i as u32)).find(|&i| self.mul(i, i) == m1)
    }

    /// Elements of the subfield F_{p^{l/2}} (requires l even): the fixed
    /// points of the (l/2)-fold Frobenius.
    pub fn subfield_elements(&self) -> Result<Vec<Fq>> {
        if !self.l.is_multiple_of(2) {
            return Err(Error::ConstructionUnavailable(format!(
                "subfield F_p^(l/2) needs even l, got l={}",
                self.l
            )));
        }
        let e = self.p.pow(self.l / 2);
        let els: Vec<Fq> =
            (0..self.q).map(|i| Fq(i as u32)).filter(|&a| self.pow(a, e) == a).collect();
        debug_assert_eq!(els.len() as u64, e);
        Ok(els)
    }

    /// Header string used by point-set files and report config echoes.
    pub fn describe(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("q={} p={} l={} modulus={}", self.q, self.p, self.l, coeffs.join(","))
    }
}

fn check_char(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 3 {
        return Err(Error::NotPrime(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        p = q;
    }
    let mut l = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        l += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrime(q));
    }
    check_char(p)?;
    Ok((p, l))
}

// ---- dense polynomial arithmetic on index encodings (build-time / fallback) ----

fn idx_digits(p: u64, l: u32, mut x: u64) -> Vec<u64> {
    let mut v = vec![0u64; l as usize];
    for d in v.iter_mut() {
        *d = x % p;
        x /= p;
    }
    v
}

fn digits_idx(p: u64, digits: &[u64]) -> u64 {
    let mut idx = 0u64;
    for &d in digits.iter().rev() {
        idx = idx * p + d;
    }
    idx
}

fn poly_add_idx(p: u64, l: u32, a: u64, b: u64) -> u64 {
    let da = idx_digits(p, l, a);
    let db = idx_digits(p, l, b);
    let sum: Vec<u64> = da.iter().zip(db.iter()).map(|(x, y)| (x + y) % p).collect();
    digits_idx(p, &sum)
}

fn poly_mul_idx(p: u64, l: u32, modulus: &[u64], a: u64, b: u64) -> u64 {
    let da = idx_digits(p, l, a);
    let db = idx_digits(p, l, b);
    let prod = poly_mulmod(p, modulus, &da, &db);
    digits_idx(p, &prod)
}

// ---- modulus selection ----

/// Lexicographically least monic irreducible of degree l over Z_p,
/// coefficient tuples (c_0, …, c_{l−1}) compared left to right.
fn least_irreducible(p: u64, l: u32) -> Vec<u64> {
    let n = p.pow(l);
    for enc in 0..n {
        // decode enc so that c_0 is the most significant digit: increasing
        // enc then walks the tuples (c_0, …, c_{l−1}) in lexicographic order
        let mut coeffs = vec![0u64; l as usize + 1];
        coeffs[l as usize] = 1;
        let mut x = enc;
        for i in (0..l as usize).rev() {
            coeffs[i] = x % p;
            x /= p;
        }
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists");
}

/// Deterministic irreducibility test (Rabin): f of degree l is irreducible
/// over Z_p iff x^{p^l} ≡ x (mod f) and gcd(x^{p^{l/r}} − x, f) = 1 for
/// every prime r dividing l.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let l = (f.len() - 1) as u32;
    if l == 0 {
        return false;
    }
    if l == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    let x = vec![0, 1];
    // x^{p^l} mod f
    let mut xp = x.clone();
    for _ in 0..l {
        xp = poly_powmod(p, f, &xp, p);
    }
    if !is_zero_poly(&poly_sub(p, &xp, &x)) {
        return false;
    }
    for r in prime_divisors(l as u64) {
        let steps = l as u64 / r;
        let mut xe = x.clone();
        for _ in 0..steps {
            xe = poly_powmod(p, f, &xe, p);
        }
        let diff = poly_sub(p, &xe, &x);
        if poly_gcd_deg(p, f, &diff) != 0 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

/// (a·b) mod f over Z_p.
fn poly_mulmod(p: u64, f: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let l = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce mod the monic f
    for i in (l..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &fc) in f.iter().take(l).enumerate() {
            let idx = i - l + j;
            prod[idx] = (prod[idx] + c * (p - fc)) % p;
        }
    }
    prod.truncate(l.max(1));
    poly_trim(&mut prod);
    prod
}

fn poly_powmod(p: u64, f: &[u64], a: &[u64], mut e: u64) -> Vec<u64> {
    let mut base = a.to_vec();
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(p, f, &acc, &base);
        }
        base = poly_mulmod(p, f, &base, &base);
        e >>= 1;
    }
    acc
}

/// Degree of gcd(f, g) over Z_p (only the degree is needed).
fn poly_gcd_deg(p: u64, f: &[u64], g: &[u64]) -> usize {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !is_zero_poly(&b) {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a.len() - 1
}

fn is_zero_poly(v: &[u64]) -> bool {
    v.len() == 1 && v[0] == 0
}

fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while !is_zero_poly(&r) && r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        for (j, &bc) in b.iter().enumerate() {
            let idx = dr - db + j;
            r[idx] = (r[idx] + c * (p - bc)) % p;
        }
        debug_assert_eq!(r[dr], 0);
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a ≠ 0
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_lex_least() {
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]); // x² + 1
        assert_eq!(FieldSpec::new(5, 2).unwrap().modulus(), &[1, 1, 1]); // x² + x + 1
        assert_eq!(FieldSpec::new(3, 1).unwrap().modulus(), &[0, 1]);
        // degree 3 over Z_3: x³ + 2x + 1 is the least irreducible
        let f27 = FieldSpec::new(3, 3).unwrap();
        assert!(is_irreducible(3, f27.modulus()));
        let enc = |m: &[u64]| -> u64 {
            m[..m.len() - 1].iter().fold(0, |acc, &c| acc * 3 + c)
        };
        // nothing lexicographically smaller is irreducible
        let chosen = f27.modulus().to_vec();
        for e in 0..enc(&chosen) {
            let mut coeffs = vec![0u64; 4];
            coeffs[3] = 1;
            let mut x = e;
            for i in (0..3).rev() {
                coeffs[i] = x % 3;
                x /= 3;
            }
            assert!(!is_irreducible(3, &coeffs), "smaller irreducible {coeffs:?}");
        }
    }

    #[test]
    fn characteristic_two_rejected() {
        assert_eq!(FieldSpec::new(2, 1).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(FieldSpec::from_q(8).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(FieldSpec::from_q(12).unwrap_err(), Error::NotPrime(12));
    }

    #[test]
    fn bad_modulus_rejected() {
        // x² + 2 has root 1? 1+2=3=0 mod 3: reducible
        assert!(FieldSpec::with_modulus(3, 2, vec![2, 0, 1]).is_err());
        // not monic
        assert!(FieldSpec::with_modulus(3, 2, vec![1, 0, 2]).is_err());
        // x² + 1 is fine
        assert!(FieldSpec::with_modulus(3, 2, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn arithmetic_in_f9() {
        // q = 9, modulus x² + 1: x·x = −1 = 2
        let f = FieldSpec::new(3, 2).unwrap();
        let x = f.from_digits(&[0, 1]);
        assert_eq!(f.mul(x, x), Fq(2));
        // trace(x) = x + x³ = x − x = 0
        assert_eq!(f.trace(x), Fq::ZERO);
        assert_eq!(f.trace(Fq::ZERO), Fq::ZERO);
    }

    #[test]
    fn arithmetic_in_f5() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.add(Fq(2), Fq(4)), Fq(1));
        assert_eq!(f.quadratic_char(Fq(4)), 1); // 4 = 2²
        assert_eq!(f.quadratic_char(Fq(0)), 0);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.quadratic_char(Fq(2)), -1);
    }

    #[test]
    fn field_axioms_hold_exhaustively() {
        for q in [3u64, 5, 9, 25, 27] {
            let f = FieldSpec::from_q(q).unwrap();
            for a in 0..q {
                let a = Fq(a as u32);
                if a != Fq::ZERO {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                for b in 0..q {
                    let b = Fq(b as u32);
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // distributivity spot
                    assert_eq!(
                        f.mul(a, f.add(b, Fq::ONE)),
                        f.add(f.mul(a, b), f.mul(a, Fq::ONE))
                    );
                }
            }
            assert_eq!(f.inv(Fq::ZERO).unwrap_err(), Error::DivisionByZero);
        }
    }

    #[test]
    fn trace_is_additive_and_onto_prime_field() {
        for q in [9u64, 27, 25, 121] {
            let f = FieldSpec::from_q(q).unwrap();
            for a in (0..q).step_by(3) {
                for b in (0..q).step_by(5) {
                    let (a, b) = (Fq(a as u32), Fq(b as u32));
                    assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
                    assert!(f.trace(a).index() < f.p());
                }
            }
            // l = 1: trace is the identity
            let fp = FieldSpec::new(f.p(), 1).unwrap();
            for a in 0..f.p() {
                assert_eq!(fp.trace(Fq(a as u32)), Fq(a as u32));
            }
        }
    }

    #[test]
    fn quadratic_char_is_multiplicative() {
        // exhaustive for q ≤ 121
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121] {
            let f = FieldSpec::from_q(q).unwrap();
            let mut sum = 0i64;
            for a in 0..q {
                sum += f.quadratic_char(Fq(a as u32)) as i64;
                for b in 0..q {
                    if a == 0 || b == 0 {
                        continue;
                    }
                    let (a, b) = (Fq(a as u32), Fq(b as u32));
                    assert_eq!(
                        f.quadratic_char(f.mul(a, b)),
                        f.quadratic_char(a) * f.quadratic_char(b)
                    );
                }
            }
            assert_eq!(sum, 0, "character sum must vanish, q={q}");
            // ψ(a) = a^((q−1)/2) read in {−1, 0, +1}
            for a in 1..q {
                let pw = f.pow(Fq(a as u32), (q - 1) / 2);
                let want = if pw == Fq::ONE { 1 } else { -1 };
                assert_eq!(f.quadratic_char(Fq(a as u32)), want);
            }
        }
    }

    #[test]
    fn subfield_has_right_size_and_is_closed() {
        let f = FieldSpec::new(3, 2).unwrap();
        let s = f.subfield_elements().unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&Fq::ZERO) && s.contains(&Fq::ONE));
        for &a in &s {
            for &b in &s {
                assert!(s.contains(&f.mul(a, b)));
                assert!(s.contains(&f.add(a, b)));
            }
        }
        let f125 = FieldSpec::new(5, 3).unwrap();
        assert!(f125.subfield_elements().is_err());
    }

    #[test]
    fn sqrt_minus_one_exists_iff_q_is_1_mod_4() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let f = FieldSpec::from_q(q).unwrap();
            let i = f.sqrt_minus_one();
            assert_eq!(i.is_some(), q % 4 == 1, "q={q}");
            if let Some(i) = i {
                assert_eq!(f.mul(i, i), f.minus_one());
            }
        }
    }
}
