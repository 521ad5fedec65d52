//! Dense Fourier analysis on F_q^d.
//!
//! The transform pair, with χ the canonical additive character:
//!
//! ```text
//!   f̂(m) = q^{−d} Σ_x χ(−x·m) f(x)        f(x) = Σ_m χ(x·m) f̂(m)
//! ```
//!
//! `dft`/`idft` factor the transform one coordinate at a time
//! (O(d·q^{d+1}) character operations); `naive_dft` is the quadratic
//! double loop kept as a test oracle. Float-mode sums always run in
//! ascending index order, so results are bit-reproducible regardless of
//! the worker pool that executes the independent fibers.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::{grid_size, GridPoint, PointSet};
use crate::scalar::{q_pow_neg, Scalar};
use rayon::prelude::*;

/// A function F_q^d → values, dense over the mixed-radix point encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T: Scalar> {
    q: u64,
    d: u32,
    values: Vec<T>,
}

/// The transform f̂, same shape as the function it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable<T: Scalar>(pub GridFunction<T>);

impl<T: Scalar> GridFunction<T> {
    pub fn from_values(q: u64, d: u32, values: Vec<T>) -> Self {
        assert_eq!(values.len() as u64, grid_size(q, d));
        GridFunction { q, d, values }
    }

    pub fn constant(q: u64, d: u32, value: T) -> Self {
        GridFunction { q, d, values: vec![value; grid_size(q, d) as usize] }
    }

    /// Indicator function E(x).
    pub fn indicator(set: &PointSet) -> Self {
        let mut values = vec![T::zero(); set.grid_len() as usize];
        for idx in set.members() {
            values[idx as usize] = T::one();
        }
        GridFunction { q: set.q(), d: set.d(), values }
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn values(&self) -> &[T] {
        &self.values
    }
    pub fn value(&self, idx: u64) -> &T {
        &self.values[idx as usize]
    }
    pub fn value_at(&self, pt: &GridPoint) -> &T {
        &self.values[pt.encode(self.q) as usize]
    }

    /// Pointwise translate: g(x) = f(x − τ).
    pub fn translate(&self, field: &FieldSpec, tau: &GridPoint) -> Self {
        let q = self.q;
        let mut values = vec![T::zero(); self.values.len()];
        for (idx, v) in self.values.iter().enumerate() {
            let x = GridPoint::decode(q, self.d, idx as u64);
            let shifted = crate::grid::add_points(field, &x, tau);
            values[shifted.encode(q) as usize] = v.clone();
        }
        GridFunction { q, d: self.d, values }
    }

    /// Max |f − g| over the grid, via the numeric embedding.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.q, self.d), (other.q, other.d));
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a.embed() - b.embed()).norm())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> SpectralTable<T> {
    pub fn q(&self) -> u64 {
        self.0.q()
    }
    pub fn d(&self) -> u32 {
        self.0.d()
    }
    pub fn value(&self, idx: u64) -> &T {
        self.0.value(idx)
    }
    pub fn value_at(&self, pt: &GridPoint) -> &T {
        self.0.value_at(pt)
    }
    pub fn values(&self) -> &[T] {
        self.0.values()
    }
}

/// Character exponent source: e(s, m) = Tr(s·m) mod p.
enum ExpSource {
    /// l = 1: Tr is the identity, the product is plain modular arithmetic.
    Direct { p: u64 },
    /// Extension fields: a dense q×q table (q is small whenever l ≥ 2).
    Table { q: u64, tab: Vec<u16> },
}

impl ExpSource {
    fn new(field: &FieldSpec) -> Self {
        if field.l() == 1 {
            ExpSource::Direct { p: field.p() }
        } else {
            let q = field.q();
            assert!(q <= 4096, "extension-field transform beyond supported size");
            let mut tab = vec![0u16; (q * q) as usize];
            for s in 0..q {
                for m in 0..q {
                    tab[(s * q + m) as usize] =
                        field.trace_exp(field.mul(Fq(s as u32), Fq(m as u32))) as u16;
                }
            }
            ExpSource::Table { q, tab }
        }
    }
}

/// Transform along the first coordinate: every q-aligned chunk is one
/// contiguous fiber. `negate` selects χ(−·) (the forward transform).
fn pass_axis0<T: Scalar>(
    values: &mut [T],
    q: u64,
    exps: &ExpSource,
    ctx: &T::RootCtx,
    p: u64,
    negate: bool,
) {
    let qs = q as usize;
    let fiber = |chunk: &mut [T], scratch: &mut Vec<T>| {
        scratch.clear();
        scratch.extend_from_slice(chunk);
        match exps {
            ExpSource::Direct { p } => {
                // e(s, m) = s·m mod p advances by a fixed step in s
                for (m, slot) in chunk.iter_mut().enumerate() {
                    let step = if negate { (p - m as u64 % p) % p } else { m as u64 % p };
                    let mut acc = T::zero();
                    let mut e = 0u64;
                    for v in scratch.iter() {
                        v.mul_root_add(ctx, e, &mut acc);
                        e += step;
                        if e >= *p {
                            e -= p;
                        }
                    }
                    *slot = acc;
                }
            }
            ExpSource::Table { q, tab } => {
                for (m, slot) in chunk.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (s, v) in scratch.iter().enumerate() {
                        let mut e = tab[s * *q as usize + m] as u64;
                        if negate && e != 0 {
                            e = p - e;
                        }
                        v.mul_root_add(ctx, e, &mut acc);
                    }
                    *slot = acc;
                }
            }
        }
    };
    if values.len() >= (1 << 14) {
        values.par_chunks_mut(qs).for_each(|chunk| {
            let mut scratch = Vec::with_capacity(qs);
            fiber(chunk, &mut scratch);
        });
    } else {
        let mut scratch = Vec::with_capacity(qs);
        for chunk in values.chunks_mut(qs) {
            fiber(chunk, &mut scratch);
        }
    }
}

/// Rotate coordinates (x₁, …, x_d) ↦ (x₂, …, x_d, x₁): after d rounds of
/// pass-then-rotate every coordinate has been transformed once and the
/// array is back in its original orientation.
fn rotate_axes<T: Clone>(values: &[T], q: u64) -> Vec<T> {
    let n = values.len() as u64;
    let hi = n / q;
    let mut out = values.to_vec();
    for (idx, v) in values.iter().enumerate() {
        let idx = idx as u64;
        out[((idx % q) * hi + idx / q) as usize] = v.clone();
    }
    out
}

fn tensor_transform<T: Scalar>(field: &FieldSpec, f: &GridFunction<T>, negate: bool) -> Vec<T> {
    let exps = ExpSource::new(field);
    let ctx = T::root_ctx(field.p());
    let mut values = f.values.clone();
    for _ in 0..f.d {
        pass_axis0(&mut values, f.q, &exps, &ctx, field.p(), negate);
        if f.d > 1 {
            values = rotate_axes(&values, f.q);
        }
    }
    values
}

/// Forward transform f̂(m) = q^{−d} Σ_x χ(−x·m) f(x).
pub fn dft<T: Scalar>(field: &FieldSpec, f: &GridFunction<T>) -> SpectralTable<T> {
    assert_eq!(field.q(), f.q, "field/grid mismatch");
    let mut values = tensor_transform(field, f, true);
    let scale = q_pow_neg::<T>(f.q, f.d);
    for v in values.iter_mut() {
        *v = v.mul(&scale);
    }
    SpectralTable(GridFunction { q: f.q, d: f.d, values })
}

/// Inverse transform f(x) = Σ_m χ(x·m) f̂(m).
pub fn idft<T: Scalar>(field: &FieldSpec, spec: &SpectralTable<T>) -> GridFunction<T> {
    let f = &spec.0;
    assert_eq!(field.q(), f.q, "field/grid mismatch");
    let values = tensor_transform(field, f, false);
    GridFunction { q: f.q, d: f.d, values }
}

/// Cap-checked forward transform (`q^d` against the configured grid cap).
pub fn dft_capped<T: Scalar>(
    field: &FieldSpec,
    f: &GridFunction<T>,
    cap: u64,
) -> Result<SpectralTable<T>> {
    let n = grid_size(f.q, f.d);
    if n > cap {
        return Err(Error::CapExceeded { needed: n as u128, cap: cap as u128 });
    }
    Ok(dft(field, f))
}

/// Quadratic-time transform, kept as the oracle for the tensor path.
pub fn naive_dft<T: Scalar>(field: &FieldSpec, f: &GridFunction<T>) -> SpectralTable<T> {
    assert_eq!(field.q(), f.q);
    let q = f.q;
    let d = f.d;
    let n = grid_size(q, d) as usize;
    let ctx = T::root_ctx(field.p());
    let p = field.p();
    let mut values = Vec::with_capacity(n);
    for mi in 0..n as u64 {
        let m = GridPoint::decode(q, d, mi);
        let mut acc = T::zero();
        for (xi, v) in f.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let x = GridPoint::decode(q, d, xi as u64);
            let e = field.trace_exp(crate::grid::dot(field, &x, &m));
            v.mul_root_add(&ctx, (p - e) % p, &mut acc);
        }
        values.push(acc.div_int(grid_size(q, d)));
    }
    SpectralTable(GridFunction { q, d, values })
}

/// Σ_m |f̂(m)|² − q^{−d} Σ_x |f(x)|², from an already-computed spectrum.
/// Exactly zero in exact mode.
pub fn plancherel_defect<T: Scalar>(f: &GridFunction<T>, spec: &SpectralTable<T>) -> T {
    let mut lhs = T::zero();
    for v in spec.values() {
        lhs = lhs.add(&v.norm_sq());
    }
    let mut rhs = T::zero();
    for v in f.values() {
        rhs = rhs.add(&v.norm_sq());
    }
    lhs.sub(&rhs.div_int(grid_size(f.q, f.d)))
}

/// Σ_{m ∈ M} |F(m)|².
pub fn energy_on_set<T: Scalar>(spec: &SpectralTable<T>, set: &PointSet) -> Result<T> {
    if (spec.q(), spec.d()) != (set.q(), set.d()) {
        return Err(Error::ShapeMismatch(format!(
            "spectrum on q={},d={} vs set on q={},d={}",
            spec.q(),
            spec.d(),
            set.q(),
            set.d()
        )));
    }
    let mut acc = T::zero();
    for idx in set.members() {
        acc = acc.add(&spec.value(idx).norm_sq());
    }
    Ok(acc)
}
