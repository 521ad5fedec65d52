//! Scaled-integer spectra of indicator functions.
//!
//! For a set E ⊆ F_q^d the unnormalized transform
//!
//! ```text
//!   U_E(m) = Σ_{x∈E} χ(−x·m) = q^d · Ê(m)
//! ```
//!
//! lies in Z\[ζ_p\], so every exact identity of the sphere/distance apparatus
//! can be cleared of q-power denominators and verified in integer cyclotomic
//! arithmetic. [`CycGrid`] stores such a spectrum flat (p−1 coordinates per
//! grid point) and the tensor passes reduce to rotate-and-add on `i64`
//! rows, which keeps full-matrix identity sweeps cheap even at q^d ≈ 10⁶.
//!
//! [`SpherePack`] bundles what the identity checks need per (q, d): the
//! norm classification of the grid, sphere sizes, and (on demand) the
//! spectra U_{S_t} of every sphere indicator.

use crate::cyclotomic::{Cyc, CycNum};
use crate::field::{FieldSpec, Fq};
use crate::grid::{grid_size, PointSet};
use num_rational::BigRational;
use rayon::prelude::*;

/// Flat integer cyclotomic table over F_q^d: value(idx) = Σ_j data[idx·nc+j]·ζ_p^j.
#[derive(Debug, Clone, PartialEq)]
pub struct CycGrid {
    p: u64,
    q: u64,
    d: u32,
    nc: usize,
    data: Vec<i64>,
}

impl CycGrid {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn points(&self) -> u64 {
        grid_size(self.q, self.d)
    }

    #[inline]
    pub fn coeffs(&self, idx: u64) -> &[i64] {
        let i = idx as usize * self.nc;
        &self.data[i..i + self.nc]
    }

    pub fn value(&self, idx: u64) -> Cyc<i64> {
        Cyc::from_coeffs(self.coeffs(idx).to_vec())
    }

    /// The true (normalized) transform value q^{−d}·U(idx) as a CycNum.
    pub fn normalized_value(&self, idx: u64) -> CycNum {
        let coeffs: Vec<BigRational> = self
            .coeffs(idx)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        CycNum::from_coeffs(coeffs).div_int(self.points())
    }

    /// |U(idx)|² into `out` (length p−1), using `tmp` of length ≥ 2p.
    #[inline]
    pub fn norm_sq_into(&self, idx: u64, out: &mut [i64], tmp: &mut [i64]) {
        let src = self.coeffs(idx);
        let p = self.p as usize;
        let (conj, scratch) = tmp.split_at_mut(p);
        conj.fill(0);
        conj[0] = src[0];
        for (j, &c) in src.iter().enumerate().skip(1) {
            conj[p - j] = c;
        }
        // fold conj's ζ^{p−1} slot
        let top = conj[p - 1];
        if top != 0 {
            for c in conj[..p - 1].iter_mut() {
                *c -= top;
            }
        }
        scratch.fill(0);
        for (i, &a) in src.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in conj[..p - 1].iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let mut e = i + j;
                if e >= p {
                    e -= p;
                }
                scratch[e] += a * b;
            }
        }
        let top = scratch[p - 1];
        for (o, &s) in out.iter_mut().zip(scratch.iter()) {
            *o = s - top;
        }
    }
}

/// U_E for an indicator set: the forward character sum Σ_{x∈E} χ(−x·m).
pub fn indicator_spectrum(field: &FieldSpec, set: &PointSet) -> CycGrid {
    assert_eq!(field.q(), set.q());
    let q = set.q();
    let d = set.d();
    let p = field.p();
    let nc = (p - 1) as usize;
    let n = grid_size(q, d) as usize;
    let mut data = vec![0i64; n * nc];
    // constant coordinate of ζ^0 holds the raw indicator
    for idx in set.members() {
        data[idx as usize * nc] = 1;
    }
    let mut grid = CycGrid { p, q, d, nc, data };
    let etab = exp_table(field);
    for axis in 0..d {
        int_pass(&mut grid, axis, &etab);
    }
    grid
}

/// Character exponent table e(s, m) = Tr(s·m), dense q×q.
fn exp_table(field: &FieldSpec) -> Vec<u16> {
    let q = field.q();
    assert!(q <= 4096, "integer spectrum beyond supported field size");
    let mut tab = vec![0u16; (q * q) as usize];
    for s in 0..q {
        for m in 0..q {
            tab[(s * q + m) as usize] =
                field.trace_exp(field.mul(Fq(s as u32), Fq(m as u32))) as u16;
        }
    }
    tab
}

/// One forward tensor pass (χ(−·)) over `axis`, flat integer rows.
fn int_pass(grid: &mut CycGrid, axis: u32, etab: &[u16]) {
    let q = grid.q as usize;
    let p = grid.p as usize;
    let nc = grid.nc;
    let stride = (grid.q.pow(axis) as usize) * nc;
    let block = stride * q;
    let process = |chunk: &mut [i64], scratch: &mut Vec<i64>, acc: &mut Vec<i64>| {
        for lo in (0..stride).step_by(nc) {
            scratch.clear();
            for s in 0..q {
                scratch.extend_from_slice(&chunk[lo + s * stride..lo + s * stride + nc]);
            }
            for m in 0..q {
                acc.fill(0);
                for s in 0..q {
                    let e = etab[s * q + m] as usize;
                    let e = if e == 0 { 0 } else { p - e }; // χ(−s·m)
                    let row = &scratch[s * nc..s * nc + nc];
                    for (j, &c) in row.iter().enumerate() {
                        if c != 0 {
                            let mut t = j + e;
                            if t >= p {
                                t -= p;
                            }
                            acc[t] += c;
                        }
                    }
                }
                let top = acc[p - 1];
                let out = &mut chunk[lo + m * stride..lo + m * stride + nc];
                for (o, &a) in out.iter_mut().zip(acc.iter()) {
                    *o = a - top;
                }
            }
        }
    };
    if grid.data.len() >= (1 << 16) {
        grid.data.par_chunks_mut(block).for_each(|chunk| {
            let mut scratch = Vec::with_capacity(q * nc);
            let mut acc = vec![0i64; p];
            process(chunk, &mut scratch, &mut acc);
        });
    } else {
        let mut scratch = Vec::with_capacity(q * nc);
        let mut acc = vec![0i64; p];
        for chunk in grid.data.chunks_mut(block) {
            process(chunk, &mut scratch, &mut acc);
        }
    }
}

/// Norm classification of F_q^d plus per-sphere data.
pub struct SpherePack {
    pub q: u64,
    pub d: u32,
    /// ‖x‖ for every point index.
    pub norm_of: Vec<u32>,
    /// Member indices of S_t, per t.
    pub members: Vec<Vec<u32>>,
    /// |S_t| per t.
    pub sizes: Vec<u64>,
    /// U_{S_t} per t, if built.
    pub spectra: Option<Vec<CycGrid>>,
}

impl SpherePack {
    pub fn new(field: &FieldSpec, d: u32) -> SpherePack {
        let q = field.q();
        let n = grid_size(q, d);
        let mut norm_of = vec![0u32; n as usize];
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); q as usize];
        let mut digits = vec![0u64; d as usize];
        for idx in 0..n {
            if idx > 0 {
                // increment mixed-radix digits
                for slot in digits.iter_mut() {
                    *slot += 1;
                    if *slot == q {
                        *slot = 0;
                    } else {
                        break;
                    }
                }
            }
            let mut norm_acc = Fq::ZERO;
            for &c in &digits {
                let c = Fq(c as u32);
                norm_acc = field.add(norm_acc, field.mul(c, c));
            }
            norm_of[idx as usize] = norm_acc.0;
            members[norm_acc.0 as usize].push(idx as u32);
        }
        let sizes = members.iter().map(|v| v.len() as u64).collect();
        SpherePack { q, d, norm_of, members, sizes, spectra: None }
    }

    /// Compute U_{S_t} for every t (independent transforms, run in parallel).
    pub fn with_spectra(mut self, field: &FieldSpec) -> SpherePack {
        let spectra: Vec<CycGrid> = (0..self.q as usize)
            .into_par_iter()
            .map(|t| {
                let set = PointSet::from_indices(
                    self.q,
                    self.d,
                    self.members[t].iter().map(|&i| i as u64),
                );
                indicator_spectrum(field, &set)
            })
            .collect();
        self.spectra = Some(spectra);
        self
    }

    pub fn sphere_set(&self, t: Fq) -> PointSet {
        PointSet::from_indices(self.q, self.d, self.members[t.0 as usize].iter().map(|&i| i as u64))
    }
}

/// W_t = Σ_{m ∈ S_t} |U(m)|² for every t: the q^{2d}-scaled sphere-energy
/// profile of the spectrum (real cyclotomic integers, i128 coordinates).
pub fn sigma_profile_scaled(pack: &SpherePack, spectrum: &CycGrid) -> Vec<Cyc<i128>> {
    let nc = (spectrum.p() - 1) as usize;
    let p = spectrum.p() as usize;
    (0..pack.q as usize)
        .into_par_iter()
        .map(|t| {
            let mut acc = vec![0i128; nc];
            let mut out = vec![0i64; nc];
            let mut tmp = vec![0i64; 2 * p];
            for &m in &pack.members[t] {
                spectrum.norm_sq_into(m as u64, &mut out, &mut tmp);
                for (a, &o) in acc.iter_mut().zip(out.iter()) {
                    *a += o as i128;
                }
            }
            Cyc::from_coeffs(acc)
        })
        .collect()
}
