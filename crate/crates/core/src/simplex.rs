//! Congruence classification of (k+1)-point configurations.
//!
//! Two spanning tuples are congruent (equal up to an orthogonal map and a
//! translation) exactly when their pairwise-norm matrices agree, so the
//! congruence class of a tuple is keyed by its distance matrix up to a
//! relabeling of the vertices. The census of a set counts distinct keys
//! over all admissible tuples; random orthogonal maps (products of
//! reflections) provide the invariance checks.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::grid::{GridPoint, PointSet};
use crate::rng::DetRng;
use std::collections::HashSet;

/// Pairwise-norm matrix of a (k+1)-tuple: symmetric, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub k: u32,
    /// Row-major (k+1)×(k+1) entries, as canonical element indices.
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn entry(&self, i: usize, j: usize) -> Fq {
        Fq(self.entries[i * (self.k as usize + 1) + j])
    }

    /// Row-major upper-triangle encoding: (0,1), (0,2), …, (k−1,k).
    pub fn upper_triangle(&self) -> Vec<u32> {
        let n = self.k as usize + 1;
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.entries[i * n + j]);
            }
        }
        out
    }
}

/// The congruence-class key: the lexicographically least upper-triangle
/// encoding over all vertex permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexClass(pub Vec<u32>);

pub fn distance_matrix(field: &FieldSpec, tuple: &[GridPoint]) -> DistanceMatrix {
    let n = tuple.len();
    assert!(n >= 2, "a simplex needs at least two vertices");
    let mut entries = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let t = crate::grid::norm_diff(field, &tuple[i], &tuple[j]).0;
            entries[i * n + j] = t;
            entries[j * n + i] = t;
        }
    }
    DistanceMatrix { k: (n - 1) as u32, entries }
}

/// Maximum simplex order supported by exhaustive permutation minimization.
pub const MAX_K: u32 = 5;

/// Lexicographically least upper triangle over all (k+1)! vertex orders.
pub fn canonical_class(field: &FieldSpec, tuple: &[GridPoint]) -> SimplexClass {
    let m = distance_matrix(field, tuple);
    canonical_class_of_matrix(&m)
}

pub fn canonical_class_of_matrix(m: &DistanceMatrix) -> SimplexClass {
    let n = m.k as usize + 1;
    assert!(m.k <= MAX_K, "permutation minimization supports k ≤ {MAX_K}");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u32>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut tri = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                tri.push(m.entries[p[i] * n + p[j]]);
            }
        }
        match &best {
            Some(b) if *b <= tri => {}
            _ => best = Some(tri),
        }
    });
    SimplexClass(best.expect("at least one permutation"))
}

fn permute<F: FnMut(&[usize])>(items: &mut Vec<usize>, start: usize, visit: &mut F) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Nondegeneracy filters; both are on for the default census.
#[derive(Debug, Clone, Copy)]
pub struct Filters {
    /// Require {V_i − V_0} to have rank k over F_q.
    pub spanning: bool,
    /// Require every pairwise distance to be nonzero.
    pub nonzero_distances: bool,
}

impl Filters {
    pub const NONDEGENERATE: Filters = Filters { spanning: true, nonzero_distances: true };
    pub const RAW: Filters = Filters { spanning: false, nonzero_distances: false };
}

/// True iff the tuple spans a k-dimensional subspace (after translating
/// V_0 to the origin) and, if requested, avoids zero distances.
pub fn is_nondegenerate(
    field: &FieldSpec,
    tuple: &[GridPoint],
    filters: Filters,
) -> Result<bool> {
    let k = (tuple.len() - 1) as u32;
    let d = tuple[0].dim();
    if k > d {
        return Err(Error::KExceedsD { k, d });
    }
    if filters.nonzero_distances {
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                if crate::grid::norm_diff(field, &tuple[i], &tuple[j]) == Fq::ZERO {
                    return Ok(false);
                }
            }
        }
    }
    if filters.spanning {
        let rows: Vec<Vec<Fq>> = tuple[1..]
            .iter()
            .map(|v| {
                v.coords
                    .iter()
                    .zip(tuple[0].coords.iter())
                    .map(|(&a, &b)| field.sub(a, b))
                    .collect()
            })
            .collect();
        if rank(field, rows) < k as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Row rank over F_q by Gaussian elimination.
fn rank(field: &FieldSpec, mut rows: Vec<Vec<Fq>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != Fq::ZERO) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][col]).expect("pivot nonzero");
        let (upper, lower) = rows.split_at_mut(r + 1);
        let pivot_row = &upper[r];
        for row in lower.iter_mut() {
            if row[col] == Fq::ZERO {
                continue;
            }
            let factor = field.mul(row[col], inv);
            for (cell, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let sub = field.mul(factor, pv);
                *cell = field.sub(*cell, sub);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// How tuples are enumerated for the census.
#[derive(Debug, Clone, Copy)]
pub enum CensusMode {
    Exact,
    /// Seeded sampling of `count` tuples: the result is a lower bound on
    /// the census.
    Sampled { seed: u64, count: u64 },
}

/// Number of distinct congruence-class keys among admissible (k+1)-tuples.
pub fn simplex_census(
    field: &FieldSpec,
    set: &PointSet,
    k: u32,
    filters: Filters,
    mode: CensusMode,
    tuple_cap: u64,
) -> Result<u64> {
    if k > set.d() {
        return Err(Error::KExceedsD { k, d: set.d() });
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = set.len() as usize;
    let r = k as usize + 1;
    // Keys are permutation-invariant, so unordered tuples suffice for the
    // exact census. With either filter on, repeated vertices are excluded
    // anyway; raw mode enumerates multisets.
    let with_repetition = !filters.spanning && !filters.nonzero_distances;
    if let CensusMode::Exact = mode {
        let total = if with_repetition {
            (n as u128 + k as u128).pow(r as u32) // generous over-count
        } else {
            (n as u128).pow(r as u32)
        };
        if total > tuple_cap as u128 {
            return Err(Error::CapExceeded { needed: total, cap: tuple_cap as u128 });
        }
    }
    let mc = set.member_coords();
    // Pairwise norms between members, computed once.
    let mut pair_norm = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let t = mc.norm_between(field, i, j).0;
            pair_norm[i * n + j] = t;
            pair_norm[j * n + i] = t;
        }
    }
    let mut keys: HashSet<SimplexClass> = HashSet::new();

    let consider = |idx: &[usize], keys: &mut HashSet<SimplexClass>| {
        if filters.nonzero_distances {
            for a in 0..r {
                for b in a + 1..r {
                    if idx[a] == idx[b] || pair_norm[idx[a] * n + idx[b]] == 0 {
                        return;
                    }
                }
            }
        }
        if filters.spanning {
            let base = mc.coord(idx[0]);
            let rows: Vec<Vec<Fq>> = idx[1..]
                .iter()
                .map(|&i| {
                    mc.coord(i)
                        .iter()
                        .zip(base.iter())
                        .map(|(&a, &b)| field.sub(a, b))
                        .collect()
                })
                .collect();
            if rank(field, rows) < k as usize {
                return;
            }
        }
        let mut entries = vec![0u32; r * r];
        for a in 0..r {
            for b in a + 1..r {
                let t = if idx[a] == idx[b] { 0 } else { pair_norm[idx[a] * n + idx[b]] };
                entries[a * r + b] = t;
                entries[b * r + a] = t;
            }
        }
        let m = DistanceMatrix { k, entries };
        keys.insert(canonical_class_of_matrix(&m));
    };

    match mode {
        CensusMode::Exact => {
            let mut idx = vec![0usize; r];
            enumerate_combos(n, r, with_repetition, &mut idx, 0, 0, &mut |combo| {
                consider(combo, &mut keys)
            });
        }
        CensusMode::Sampled { seed, count } => {
            let mut rng = DetRng::stream(seed, &[0xce45, set.q(), k as u64]);
            let mut idx = vec![0usize; r];
            for _ in 0..count {
                for slot in idx.iter_mut() {
                    *slot = rng.below(n as u64) as usize;
                }
                consider(&idx, &mut keys);
            }
        }
    }
    Ok(keys.len() as u64)
}

fn enumerate_combos<F: FnMut(&[usize])>(
    n: usize,
    r: usize,
    with_repetition: bool,
    idx: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut F,
) {
    if depth == r {
        visit(idx);
        return;
    }
    let lo = start;
    for i in lo..n {
        idx[depth] = i;
        let next = if with_repetition { i } else { i + 1 };
        enumerate_combos(n, r, with_repetition, idx, depth + 1, next, visit);
    }
}

/// Reference census, by a different route than lex-min canonicalization:
/// collect the raw upper-triangle vector of every admissible *ordered*
/// tuple, then count orbits of the collected set under the vertex
/// permutation action with a union-find. Quadratic in the number of raw
/// vectors times (k+1)!, kept for cross-checking `simplex_census`.
pub fn census_oracle(
    field: &FieldSpec,
    set: &PointSet,
    k: u32,
    filters: Filters,
    tuple_cap: u64,
) -> Result<u64> {
    if k > set.d() {
        return Err(Error::KExceedsD { k, d: set.d() });
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let pts = set.points();
    let n = pts.len();
    let r = k as usize + 1;
    let total = (n as u128).pow(r as u32);
    if total > tuple_cap as u128 {
        return Err(Error::CapExceeded { needed: total, cap: tuple_cap as u128 });
    }
    // every ordered tuple, raw triangles into a set
    let mut raw: HashSet<Vec<u32>> = HashSet::new();
    let mut idx = vec![0usize; r];
    loop {
        let tuple: Vec<GridPoint> = idx.iter().map(|&i| pts[i].clone()).collect();
        if is_nondegenerate(field, &tuple, filters)? {
            raw.insert(distance_matrix(field, &tuple).upper_triangle());
        }
        let mut carry = 0;
        while carry < r {
            idx[carry] += 1;
            if idx[carry] == n {
                idx[carry] = 0;
                carry += 1;
            } else {
                break;
            }
        }
        if carry == r {
            break;
        }
    }
    // union-find over the raw vectors under the permutation action
    let vecs: Vec<Vec<u32>> = raw.iter().cloned().collect();
    let id_of: std::collections::HashMap<&Vec<u32>, usize> =
        vecs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vecs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let pair_index = |i: usize, j: usize| -> usize {
        // position of (min,max) in row-major upper-triangle order
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * r - i * (i + 1) / 2 + (j - i - 1)
    };
    let mut perm: Vec<usize> = (0..r).collect();
    for (vi, v) in vecs.iter().enumerate() {
        let mut targets = Vec::new();
        permute(&mut perm, 0, &mut |p| {
            let mut out = vec![0u32; v.len()];
            let mut slot = 0;
            for i in 0..r {
                for j in i + 1..r {
                    out[slot] = v[pair_index(p[i], p[j])];
                    slot += 1;
                }
            }
            targets.push(out);
        });
        for t in targets {
            let ti = *id_of.get(&t).expect("orbit stays inside the collected set");
            let (a, b) = (find(&mut parent, vi), find(&mut parent, ti));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut roots = HashSet::new();
    for i in 0..vecs.len() {
        roots.insert(find(&mut parent, i));
    }
    Ok(roots.len() as u64)
}

/// An orthogonal matrix over F_q with its determinant.
#[derive(Debug, Clone)]
pub struct Orthogonal {
    pub d: u32,
    /// Row-major d×d.
    pub rows: Vec<Fq>,
    pub det: Fq,
}

impl Orthogonal {
    pub fn identity(_field: &FieldSpec, d: u32) -> Orthogonal {
        let mut rows = vec![Fq::ZERO; (d * d) as usize];
        for i in 0..d as usize {
            rows[i * d as usize + i] = Fq::ONE;
        }
        Orthogonal { d, rows, det: Fq::ONE }
    }

    pub fn apply(&self, field: &FieldSpec, x: &GridPoint) -> GridPoint {
        let d = self.d as usize;
        let coords = (0..d)
            .map(|i| {
                let mut acc = Fq::ZERO;
                for j in 0..d {
                    acc = field.add(acc, field.mul(self.rows[i * d + j], x.coords[j]));
                }
                acc
            })
            .collect();
        GridPoint::new(coords)
    }

    /// OᵀO as a row-major matrix (identity for a valid orthogonal map).
    pub fn gram(&self, field: &FieldSpec) -> Vec<Fq> {
        let d = self.d as usize;
        let mut out = vec![Fq::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Fq::ZERO;
                for r in 0..d {
                    acc = field.add(acc, field.mul(self.rows[r * d + i], self.rows[r * d + j]));
                }
                out[i * d + j] = acc;
            }
        }
        out
    }

    pub fn is_orthogonal(&self, field: &FieldSpec) -> bool {
        let d = self.d as usize;
        let gram = self.gram(field);
        (0..d).all(|i| {
            (0..d).all(|j| gram[i * d + j] == if i == j { Fq::ONE } else { Fq::ZERO })
        })
    }
}

/// A seeded random orthogonal map: the product of `reflections` reflections
/// x ↦ x − 2(x·v)v/‖v‖ through random non-isotropic vectors. An even count
/// lands in SO_d; the determinant is reported either way.
pub fn random_orthogonal_with(
    field: &FieldSpec,
    d: u32,
    seed: u64,
    reflections: u32,
) -> Orthogonal {
    let mut rng = DetRng::stream(seed, &[0x0f7b, field.q(), d as u64]);
    let mut o = Orthogonal::identity(field, d);
    for _ in 0..reflections {
        let v = loop {
            let v = GridPoint::new(
                (0..d).map(|_| Fq(rng.below(field.q()) as u32)).collect(),
            );
            if crate::grid::norm(field, &v) != Fq::ZERO {
                break v;
            }
        };
        o = compose_reflection(field, &o, &v);
    }
    o.det = determinant(field, &o);
    o
}

/// Default sampler: 2d reflections (determinant +1).
pub fn random_orthogonal(field: &FieldSpec, d: u32, seed: u64) -> Orthogonal {
    random_orthogonal_with(field, d, seed, 2 * d)
}

fn compose_reflection(field: &FieldSpec, o: &Orthogonal, v: &GridPoint) -> Orthogonal {
    let d = o.d as usize;
    let norm_inv = field.inv(crate::grid::norm(field, v)).expect("non-isotropic");
    let two = field.add(Fq::ONE, Fq::ONE);
    let scale = field.mul(two, norm_inv);
    // R = I − scale·v vᵀ, new = R·O
    let mut rows = vec![Fq::ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = o.rows[i * d + j];
            // subtract scale·v_i·(v · O_col_j)
            let mut vo = Fq::ZERO;
            for r in 0..d {
                vo = field.add(vo, field.mul(v.coords[r], o.rows[r * d + j]));
            }
            let corr = field.mul(field.mul(scale, v.coords[i]), vo);
            acc = field.sub(acc, corr);
            rows[i * d + j] = acc;
        }
    }
    Orthogonal { d: o.d, rows, det: Fq::ONE }
}

/// det(O) by Gaussian elimination.
pub fn determinant(field: &FieldSpec, o: &Orthogonal) -> Fq {
    let d = o.d as usize;
    let mut m: Vec<Fq> = o.rows.clone();
    let mut det = Fq::ONE;
    for col in 0..d {
        let Some(pivot) = (col..d).find(|&i| m[i * d + col] != Fq::ZERO) else {
            return Fq::ZERO;
        };
        if pivot != col {
            for c in 0..d {
                m.swap(pivot * d + c, col * d + c);
            }
            det = field.neg(det);
        }
        det = field.mul(det, m[col * d + col]);
        let inv = field.inv(m[col * d + col]).expect("pivot nonzero");
        for i in col + 1..d {
            let factor = field.mul(m[i * d + col], inv);
            for c in col..d {
                let sub = field.mul(factor, m[col * d + c]);
                m[i * d + c] = field.sub(m[i * d + c], sub);
            }
        }
    }
    det
}

/// {O(x) + τ : x ∈ E}.
pub fn apply_isometry(
    field: &FieldSpec,
    set: &PointSet,
    o: &Orthogonal,
    tau: &GridPoint,
) -> PointSet {
    let pts: Vec<GridPoint> = set
        .points()
        .iter()
        .map(|x| crate::grid::add_points(field, &o.apply(field, x), tau))
        .collect();
    let out = PointSet::from_points(set.q(), set.d(), &pts);
    assert_eq!(out.len(), set.len(), "isometries are injective");
    out
}
