//! Points of F_q^d and dense point sets.
//!
//! A point is encoded as a mixed-radix index Σ xᵢ q^i with coordinate 1
//! least significant; a [`PointSet`] is a dense bit array over those indices
//! plus a cached cardinality.

use crate::field::{FieldSpec, Fq};

/// A point of F_q^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub coords: Vec<Fq>,
}

impl GridPoint {
    pub fn new(coords: Vec<Fq>) -> Self {
        GridPoint { coords }
    }

    pub fn dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn origin(d: u32) -> Self {
        GridPoint { coords: vec![Fq::ZERO; d as usize] }
    }

    pub fn encode(&self, q: u64) -> u64 {
        let mut idx = 0u64;
        for &c in self.coords.iter().rev() {
            idx = idx * q + c.index();
        }
        idx
    }

    pub fn decode(q: u64, d: u32, mut idx: u64) -> Self {
        let mut coords = Vec::with_capacity(d as usize);
        for _ in 0..d {
            coords.push(Fq((idx % q) as u32));
            idx /= q;
        }
        GridPoint { coords }
    }
}

/// ‖x‖ = x₁² + … + x_d².
pub fn norm(field: &FieldSpec, x: &GridPoint) -> Fq {
    let mut acc = Fq::ZERO;
    for &c in &x.coords {
        acc = field.add(acc, field.mul(c, c));
    }
    acc
}

/// ‖x − y‖.
pub fn norm_diff(field: &FieldSpec, x: &GridPoint, y: &GridPoint) -> Fq {
    assert_eq!(x.coords.len(), y.coords.len());
    let mut acc = Fq::ZERO;
    for (&a, &b) in x.coords.iter().zip(y.coords.iter()) {
        let d = field.sub(a, b);
        acc = field.add(acc, field.mul(d, d));
    }
    acc
}

/// x · y.
pub fn dot(field: &FieldSpec, x: &GridPoint, y: &GridPoint) -> Fq {
    assert_eq!(x.coords.len(), y.coords.len());
    let mut acc = Fq::ZERO;
    for (&a, &b) in x.coords.iter().zip(y.coords.iter()) {
        acc = field.add(acc, field.mul(a, b));
    }
    acc
}

pub fn add_points(field: &FieldSpec, x: &GridPoint, y: &GridPoint) -> GridPoint {
    GridPoint::new(
        x.coords.iter().zip(y.coords.iter()).map(|(&a, &b)| field.add(a, b)).collect(),
    )
}

pub fn sub_points(field: &FieldSpec, x: &GridPoint, y: &GridPoint) -> GridPoint {
    GridPoint::new(
        x.coords.iter().zip(y.coords.iter()).map(|(&a, &b)| field.sub(a, b)).collect(),
    )
}

pub fn neg_point(field: &FieldSpec, x: &GridPoint) -> GridPoint {
    GridPoint::new(x.coords.iter().map(|&a| field.neg(a)).collect())
}

/// Number of grid points q^d (checked).
pub fn grid_size(q: u64, d: u32) -> u64 {
    q.checked_pow(d).expect("grid size overflow")
}

/// A subset E ⊆ F_q^d as a dense bit array; immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    q: u64,
    d: u32,
    bits: Vec<u64>,
    card: u64,
}

impl PointSet {
    pub fn empty(q: u64, d: u32) -> Self {
        let n = grid_size(q, d);
        PointSet { q, d, bits: vec![0u64; n.div_ceil(64) as usize], card: 0 }
    }

    pub fn full(q: u64, d: u32) -> Self {
        Self::from_indices(q, d, 0..grid_size(q, d))
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(q: u64, d: u32, idxs: I) -> Self {
        let n = grid_size(q, d);
        let mut bits = vec![0u64; n.div_ceil(64) as usize];
        for i in idxs {
            assert!(i < n, "point index {i} out of range");
            bits[(i / 64) as usize] |= 1u64 << (i % 64);
        }
        let card = bits.iter().map(|w| w.count_ones() as u64).sum();
        PointSet { q, d, bits, card }
    }

    pub fn from_points<'a, I: IntoIterator<Item = &'a GridPoint>>(q: u64, d: u32, pts: I) -> Self {
        Self::from_indices(q, d, pts.into_iter().map(|p| p.encode(q)))
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn len(&self) -> u64 {
        self.card
    }
    pub fn is_empty(&self) -> bool {
        self.card == 0
    }
    pub fn grid_len(&self) -> u64 {
        grid_size(self.q, self.d)
    }

    #[inline]
    pub fn contains(&self, idx: u64) -> bool {
        self.bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub fn contains_point(&self, pt: &GridPoint) -> bool {
        self.contains(pt.encode(self.q))
    }

    /// Member indices, ascending.
    pub fn members(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.card as usize);
        for (w, &word) in self.bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as u64;
                out.push(w as u64 * 64 + b);
                word &= word - 1;
            }
        }
        out
    }

    pub fn points(&self) -> Vec<GridPoint> {
        self.members().iter().map(|&i| GridPoint::decode(self.q, self.d, i)).collect()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        assert_eq!((self.q, self.d), (other.q, other.d));
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Member coordinates as a flat row-major array (len = |E|·d), decoded once.
    pub fn member_coords(&self) -> MemberCoords {
        let members = self.members();
        let d = self.d as usize;
        let mut coords = Vec::with_capacity(members.len() * d);
        for &idx in &members {
            let mut x = idx;
            for _ in 0..d {
                coords.push(Fq((x % self.q) as u32));
                x /= self.q;
            }
        }
        MemberCoords { members, coords, d }
    }
}

/// Decoded member list: index i has coordinates `coords[i*d..(i+1)*d]`.
pub struct MemberCoords {
    pub members: Vec<u64>,
    pub coords: Vec<Fq>,
    d: usize,
}

impl MemberCoords {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    #[inline]
    pub fn coord(&self, i: usize) -> &[Fq] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }
    pub fn point(&self, i: usize) -> GridPoint {
        GridPoint::new(self.coord(i).to_vec())
    }

    /// ‖x_i − x_j‖ between members.
    pub fn norm_between(&self, field: &FieldSpec, i: usize, j: usize) -> Fq {
        let (a, b) = (self.coord(i), self.coord(j));
        let mut acc = Fq::ZERO;
        for k in 0..self.d {
            let t = field.sub(a[k], b[k]);
            acc = field.add(acc, field.mul(t, t));
        }
        acc
    }

    /// x_i · x_j between members.
    pub fn dot_between(&self, field: &FieldSpec, i: usize, j: usize) -> Fq {
        let (a, b) = (self.coord(i), self.coord(j));
        let mut acc = Fq::ZERO;
        for k in 0..self.d {
            acc = field.add(acc, field.mul(a[k], b[k]));
        }
        acc
    }
}
