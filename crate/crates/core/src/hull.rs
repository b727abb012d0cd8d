//! Exact volume of the convex hull of a small lattice point set.
//!
//! Facets are found by brute force: every affinely independent `q`-subset
//! spans a hyperplane, which is kept when all points lie on one side. This
//! costs `O(C(N, q)·N)` determinant evaluations for `N` points in
//! dimension `q`, fine for the handful of dimensions and at most a few
//! hundred points that occur here; larger inputs are refused.
//!
//! The volume comes from a pulling triangulation: pick the first point of
//! a face, cone it over every facet of the face not containing it, recurse.
//! Faces of faces are intersections with facets of the full polytope.

use std::collections::{BTreeSet, HashMap};

use crate::error::{GermError, Result};

pub const MAX_POINTS: usize = 200;
pub const MAX_SUBSETS: u64 = 50_000_000;
/// Coordinates must stay below this so that `i128` determinants of size
/// at most `MAX_DIM` cannot overflow.
pub const MAX_COORD: i64 = 1 << 12;
pub const MAX_DIM: usize = 5;

pub type Point = Vec<i64>;

/// Determinant of a small square integer matrix (fraction-free elimination).
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev: i128 = 1;
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[c][c];
    }
    sign * m[k - 1][k - 1]
}

/// Dimension of the affine hull of the given points.
pub fn affine_dim(points: &[&Point]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let q = base.len();
    let mut rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| (0..q).map(|j| (p[j] - base[j]) as i128).collect())
        .collect();
    // integer row echelon with gcd reduction to keep entries small
    let mut rank = 0;
    for c in 0..q {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            if rows[i][c] == 0 {
                continue;
            }
            let (a, b) = (rows[rank][c], rows[i][c]);
            for j in 0..q {
                rows[i][j] = a * rows[i][j] - b * rows[rank][j];
            }
            let g = rows[i].iter().fold(0i128, |g, &v| gcd(g, v));
            if g > 1 {
                rows[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Normal vector of the hyperplane through `q` points in `R^q` (zero when
/// they are affinely dependent).
fn hyperplane_normal(points: &[&Point]) -> Vec<i128> {
    let q = points[0].len();
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| (0..q).map(|j| (p[j] - points[0][j]) as i128).collect())
        .collect();
    (0..q)
        .map(|k| {
            let minor: Vec<Vec<i128>> = diffs
                .iter()
                .map(|r| (0..q).filter(|&j| j != k).map(|j| r[j]).collect())
                .collect();
            let d = det(minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// A full-dimensional convex polytope given by its point set and facets
/// (each facet is the sorted set of indices of points lying on it).
pub struct Polytope {
    points: Vec<Point>,
    facets: Vec<Vec<usize>>,
}

impl Polytope {
    /// Fails if the points are not full-dimensional or exceed the guards.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let points: Vec<Point> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let q = points.first().map(Vec::len).unwrap_or(0);
        if q == 0 || q > MAX_DIM {
            return Err(GermError::ResourceLimit(format!(
                "hull dimension {q} outside 1..={MAX_DIM}"
            )));
        }
        if points.len() > MAX_POINTS || binomial(points.len() as u64, q as u64) > MAX_SUBSETS {
            return Err(GermError::ResourceLimit(format!(
                "{} hull candidates in dimension {q} exceed the brute-force facet guard",
                points.len()
            )));
        }
        if points
            .iter()
            .flatten()
            .any(|&c| !(0..MAX_COORD).contains(&c))
        {
            return Err(GermError::ResourceLimit(format!(
                "hull coordinates must lie in [0, {MAX_COORD})"
            )));
        }
        let refs: Vec<&Point> = points.iter().collect();
        if affine_dim(&refs) != q {
            return Err(GermError::InvalidInput(
                "hull points are not full-dimensional".into(),
            ));
        }
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        combinations(points.len(), q, |subset| {
            let chosen: Vec<&Point> = subset.iter().map(|&i| &points[i]).collect();
            let normal = hyperplane_normal(&chosen);
            if normal.iter().all(|&a| a == 0) {
                return;
            }
            let offset: i128 = (0..q).map(|j| normal[j] * chosen[0][j] as i128).sum();
            let (mut pos, mut neg) = (false, false);
            let mut on = Vec::new();
            for (i, p) in points.iter().enumerate() {
                let s: i128 = (0..q).map(|j| normal[j] * p[j] as i128).sum::<i128>() - offset;
                match s.signum() {
                    1 => pos = true,
                    -1 => neg = true,
                    _ => on.push(i),
                }
                if pos && neg {
                    return;
                }
            }
            facets.insert(on);
        });
        Ok(Polytope {
            points,
            facets: facets.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Indices of points that are vertices (0-dimensional faces).
    pub fn vertices(&self) -> Vec<usize> {
        let mut memo = HashMap::new();
        let all: Vec<usize> = (0..self.points.len()).collect();
        let mut faces = vec![all];
        for d in (1..=self.dim()).rev() {
            let mut next = BTreeSet::new();
            for f in &faces {
                for g in self.subfaces(f, d, &mut memo) {
                    next.insert(g);
                }
            }
            faces = next.into_iter().collect();
        }
        faces.into_iter().map(|f| f[0]).collect()
    }

    fn subfaces(
        &self,
        face: &[usize],
        dim: usize,
        memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(face) {
            return v.clone();
        }
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        if dim == self.dim() {
            out.extend(self.facets.iter().cloned());
        } else {
            for g in &self.facets {
                let inter: Vec<usize> = face.iter().copied().filter(|i| g.contains(i)).collect();
                if inter.is_empty() || inter.len() == face.len() {
                    continue;
                }
                let refs: Vec<&Point> = inter.iter().map(|&i| &self.points[i]).collect();
                if affine_dim(&refs) + 1 == dim {
                    out.insert(inter);
                }
            }
        }
        let out: Vec<Vec<usize>> = out.into_iter().collect();
        memo.insert(face.to_vec(), out.clone());
        out
    }

    fn triangulate(
        &self,
        face: &[usize],
        dim: usize,
        memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
        out: &mut Vec<Vec<usize>>,
        prefix: &mut Vec<usize>,
    ) {
        let apex = face[0];
        if dim == 0 {
            prefix.push(apex);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        prefix.push(apex);
        for g in self.subfaces(face, dim, memo) {
            if g.contains(&apex) {
                continue;
            }
            self.triangulate(&g, dim - 1, memo, out, prefix);
        }
        prefix.pop();
    }

    /// Simplices of a pulling triangulation, as point index lists.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.points.len()).collect();
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        self.triangulate(&all, self.dim(), &mut memo, &mut out, &mut Vec::new());
        out
    }

    /// `q!` times the volume; always an integer for lattice polytopes.
    pub fn normalized_volume(&self) -> i128 {
        let q = self.dim();
        self.triangulation()
            .iter()
            .map(|s| {
                let base = &self.points[s[0]];
                let m: Vec<Vec<i128>> = s[1..]
                    .iter()
                    .map(|&i| {
                        (0..q)
                            .map(|j| (self.points[i][j] - base[j]) as i128)
                            .collect()
                    })
                    .collect();
                det(m).abs()
            })
            .sum()
    }
}
