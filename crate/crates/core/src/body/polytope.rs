use serde::{Deserialize, Serialize};

use super::ConvexBody;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};
use crate::vec2::Vec2;

/// A vertex-listed convex polytope in `ℝ^d`, `d ≥ 2`, with the origin in its
/// interior. Facets are found by brute force over `d`-subsets of vertices,
/// which is adequate for the small bodies this crate deals with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polytope<T> {
    dim: usize,
    vertices: Vec<Vec<T>>,
    /// Facet normals `f` scaled so that the facet is `{x : f·x = 1}`.
    facets: Vec<Vec<T>>,
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut d = T::one();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).expect("finite")).expect("nonempty");
        if m[p][c] == T::zero() {
            return T::zero();
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = d * m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                let sub = f * m[c][k];
                m[r][k] = m[r][k] - sub;
            }
        }
    }
    d
}

/// Rank of a row set, relative tolerance `eps`.
fn rank<T: Scalar>(mut m: Vec<Vec<T>>, eps: T) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len())
            .filter(|&i| m[i][c].abs() > eps)
            .max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).expect("finite"))
        else {
            continue;
        };
        m.swap(p, r);
        for i in 0..m.len() {
            if i != r {
                let f = m[i][c] / m[r][c];
                for k in c..cols {
                    let sub = f * m[r][k];
                    m[i][k] = m[i][k] - sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Lexicographic iteration over `k`-subsets of `0..n`.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
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

impl<T: Scalar> Polytope<T> {
    pub fn new(vertices: Vec<Vec<T>>, tol: Tol<T>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        if dim < 2 || vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidBody("vertices must share a dimension d >= 2".into()));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBody("non-finite coordinate".into()));
        }
        let scale = vertices.iter().flatten().fold(T::one(), |m, x| m.max(x.abs()));
        let eps = tol.get() * scale;

        let diffs: Vec<Vec<T>> =
            vertices[1..].iter().map(|v| v.iter().zip(&vertices[0]).map(|(&a, &b)| a - b).collect()).collect();
        if rank(diffs, eps) < dim {
            return Err(Error::InvalidBody("vertices do not span a full-dimensional body".into()));
        }

        let mut facets: Vec<Vec<T>> = Vec::new();
        let mut origin_ok = true;
        for_each_subset(vertices.len(), dim, |subset| {
            // normal through the subset via cofactors of the difference matrix
            let base = &vertices[subset[0]];
            let rows: Vec<Vec<T>> =
                subset[1..].iter().map(|&i| vertices[i].iter().zip(base).map(|(&a, &b)| a - b).collect()).collect();
            let normal: Vec<T> = (0..dim)
                .map(|j| {
                    let minor: Vec<Vec<T>> = rows
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                        .collect();
                    let d = if minor.is_empty() { T::one() } else { det(minor) };
                    if j % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect();
            let nn = dot(&normal, &normal).sqrt();
            if nn <= eps {
                return;
            }
            let unit: Vec<T> = normal.iter().map(|&x| x / nn).collect();
            let c = dot(&unit, base);
            let side: Vec<T> = vertices.iter().map(|v| dot(&unit, v) - c).collect();
            let (unit, c) = if side.iter().all(|&s| s <= eps) {
                (unit, c)
            } else if side.iter().all(|&s| s >= -eps) {
                (unit.iter().map(|&x| -x).collect(), -c)
            } else {
                return;
            };
            if c <= eps {
                origin_ok = false;
                return;
            }
            let f: Vec<T> = unit.iter().map(|&x| x / c).collect();
            let fscale = f.iter().fold(T::one(), |m, x| m.max(x.abs()));
            if !facets.iter().any(|g| g.iter().zip(&f).all(|(&a, &b)| (a - b).abs() <= eps * fscale)) {
                facets.push(f);
            }
        });
        if !origin_ok {
            return Err(Error::OriginNotInterior);
        }

        for (index, v) in vertices.iter().enumerate() {
            let active: Vec<Vec<T>> = facets.iter().filter(|f| (dot(f, v) - T::one()).abs() <= eps).cloned().collect();
            if rank(active, eps) < dim {
                return Err(Error::NonExtremeVertex { index });
            }
        }
        Ok(Polytope { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    /// Polar body as half-spaces `{y : y·v ≤ 1}`, one per vertex.
    pub fn polar_halfspaces(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<T>] {
        &self.facets
    }

    pub fn support(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        self.vertices.iter().map(|v| dot(v, x)).fold(T::neg_infinity(), T::max)
    }

    pub fn gauge(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        self.facets.iter().map(|f| dot(f, x)).fold(T::neg_infinity(), T::max)
    }

    /// Vertex description of the polar body; planar only.
    pub fn polar(&self) -> Result<ConvexBody<T>> {
        if self.dim != 2 {
            return Err(Error::DimensionUnsupported { dim: self.dim });
        }
        Ok(self.to_planar()?.polar())
    }

    pub fn to_planar(&self) -> Result<ConvexBody<T>> {
        if self.dim != 2 {
            return Err(Error::DimensionUnsupported { dim: self.dim });
        }
        let pts: Vec<Vec2<T>> = self.vertices.iter().map(|v| Vec2::new(v[0], v[1])).collect();
        ConvexBody::polygon(&pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Polytope<f64> {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(vec![
                if i & 1 == 0 { -1.0 } else { 1.0 },
                if i & 2 == 0 { -1.0 } else { 1.0 },
                if i & 4 == 0 { -1.0 } else { 1.0 },
            ]);
        }
        Polytope::new(v, Tol::default()).unwrap()
    }

    #[test]
    fn cube_support_and_gauge() {
        let c = cube();
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.support(&[1.0, 1.0, 1.0]), 3.0);
        assert_eq!(c.gauge(&[0.5, -0.25, 0.1]), 0.5);
        assert!(matches!(c.polar(), Err(Error::DimensionUnsupported { dim: 3 })));
    }

    #[test]
    fn octahedron_gauge_is_l1() {
        let mut v = Vec::new();
        for axis in 0..3 {
            for s in [-1.0, 1.0] {
                let mut p = vec![0.0; 3];
                p[axis] = s;
                v.push(p);
            }
        }
        let o: Polytope<f64> = Polytope::new(v, Tol::default()).unwrap();
        assert_eq!(o.facets().len(), 8);
        assert!((o.gauge(&[0.2, -0.3, 0.4]) - 0.9).abs() < 1e-12);
        assert_eq!(o.support(&[0.2, -0.3, 0.4]), 0.4);
    }

    #[test]
    fn rejects_non_extreme_and_offset() {
        let mut v = cube().vertices().to_vec();
        v.push(vec![1.0, 0.0, 0.0]);
        assert!(matches!(Polytope::new(v, Tol::default()), Err(Error::NonExtremeVertex { index: 8 })));
        let shifted: Vec<Vec<f64>> = cube().vertices().iter().map(|p| vec![p[0] + 2.0, p[1], p[2]]).collect();
        assert!(matches!(Polytope::new(shifted, Tol::default()), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn planar_polytope_matches_polygon_body() {
        let p: Polytope<f64> =
            Polytope::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]], Tol::default())
                .unwrap();
        let body = p.to_planar().unwrap();
        let x = [0.3f64, -0.8];
        assert!((p.gauge(&x) - body.gauge(Vec2::new(0.3, -0.8))).abs() < 1e-12);
        assert!(p.polar().unwrap().as_polygon().is_some());
    }
}
