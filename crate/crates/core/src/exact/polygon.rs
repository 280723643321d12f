//! Convex lattice polygons in the plane, including segments.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

pub const fn pt(x: i64, y: i64) -> Pt {
    Pt { x, y }
}

impl Pt {
    pub fn cross(self, o: Pt) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Number of lattice segments the vector spans.
    pub fn lattice_length(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn primitive(self) -> Pt {
        let g = self.lattice_length();
        if g == 0 {
            self
        } else {
            pt(self.x / g, self.y / g)
        }
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        pt(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        pt(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        pt(-self.x, -self.y)
    }
}

impl Mul<Pt> for i64 {
    type Output = Pt;
    fn mul(self, p: Pt) -> Pt {
        pt(self * p.x, self * p.y)
    }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Orders direction vectors by angle in `[0, 2π)` measured from `(1,0)`.
pub fn angle_cmp(a: Pt, b: Pt) -> Ordering {
    let half = |v: Pt| {
        if v.y > 0 || (v.y == 0 && v.x > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Convex lattice polygon with counterclockwise extreme vertices, or a segment
/// given by its two endpoints. Single points are not polygons.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<Pt>,
}

impl fmt::Debug for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.vertices)
    }
}

impl LatticePolygon {
    /// Convex hull of the given points; collinear boundary points are dropped.
    pub fn hull(points: &[Pt]) -> Result<Self> {
        let mut pts: Vec<Pt> = points.to_vec();
        pts.sort_by_key(|p| (p.x, p.y));
        pts.dedup();
        if pts.len() < 2 {
            return Err(Error::Malformed(
                "a polygon needs two distinct points".into(),
            ));
        }
        let mut lower: Vec<Pt> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 {
                let n = lower.len();
                if (lower[n - 1] - lower[n - 2]).cross(p - lower[n - 2]) <= 0 {
                    lower.pop();
                } else {
                    break;
                }
            }
            lower.push(p);
        }
        let mut upper: Vec<Pt> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 {
                let n = upper.len();
                if (upper[n - 1] - upper[n - 2]).cross(p - upper[n - 2]) <= 0 {
                    upper.pop();
                } else {
                    break;
                }
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 2 {
            // all points collinear: hull degenerates to the two extremes
            lower = vec![pts[0], *pts.last().unwrap()];
        }
        Ok(Self::from_ccw(lower))
    }

    pub fn segment(a: Pt, b: Pt) -> Result<Self> {
        if a == b {
            return Err(Error::Malformed("degenerate segment".into()));
        }
        Ok(Self::from_ccw(vec![a, b]))
    }

    /// Rotates a counterclockwise vertex cycle to start at its smallest vertex,
    /// so equal polygons compare equal.
    fn from_ccw(mut vertices: Vec<Pt>) -> Self {
        let first = (0..vertices.len())
            .min_by_key(|&i| (vertices[i].x, vertices[i].y))
            .unwrap_or(0);
        vertices.rotate_left(first);
        LatticePolygon { vertices }
    }

    /// The triangle with corners `(0,0)`, `(d,0)`, `(0,d)`.
    pub fn standard_triangle(d: i64) -> Self {
        LatticePolygon {
            vertices: vec![pt(0, 0), pt(d, 0), pt(0, d)],
        }
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Boundary edges as (start, end), counterclockwise. A segment yields both
    /// orientations.
    pub fn edges(&self) -> Vec<(Pt, Pt)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Twice the Euclidean area: the unit simplex has area 1.
    pub fn normalized_area(&self) -> i64 {
        let n = self.vertices.len();
        let twice: i64 = (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum();
        twice.abs()
    }

    pub fn translate(&self, by: Pt) -> Self {
        LatticePolygon {
            vertices: self.vertices.iter().map(|&v| v + by).collect(),
        }
    }

    pub fn contains_point(&self, p: Pt) -> bool {
        if self.is_segment() {
            let (a, b) = (self.vertices[0], self.vertices[1]);
            let ab = b - a;
            let ap = p - a;
            ab.cross(ap) == 0
                && (ap.x * ab.x + ap.y * ab.y) >= 0
                && (ap.x * ab.x + ap.y * ab.y) <= ab.x * ab.x + ab.y * ab.y
        } else {
            self.edges().iter().all(|&(a, b)| (b - a).cross(p - a) >= 0)
        }
    }

    /// Exact containment: every vertex of `inner` lies in `self`.
    pub fn contains(&self, inner: &LatticePolygon) -> bool {
        inner.vertices.iter().all(|&v| self.contains_point(v))
    }

    /// Lattice points of the closed polygon.
    pub fn lattice_points(&self) -> Vec<Pt> {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains_point(pt(x, y)) {
                    out.push(pt(x, y));
                }
            }
        }
        out
    }
}

/// One summand's share of a boundary edge of a Minkowski sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeContribution {
    pub summand: usize,
    pub length: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumEdge {
    pub start: Pt,
    pub end: Pt,
    pub contributions: Vec<EdgeContribution>,
}

impl SumEdge {
    pub fn direction(&self) -> Pt {
        (self.end - self.start).primitive()
    }
}

#[derive(Debug, Clone)]
pub struct MinkowskiSum {
    pub polygon: LatticePolygon,
    /// Counterclockwise boundary edges with the summand edges that build them.
    pub edges: Vec<SumEdge>,
}

/// Minkowski sum of convex polygons (segments allowed), reporting for each
/// boundary edge of the sum which summand edges contribute to it.
pub fn minkowski_sum(summands: &[LatticePolygon]) -> Result<MinkowskiSum> {
    if summands.is_empty() {
        return Err(Error::Malformed("Minkowski sum of nothing".into()));
    }
    let start = summands
        .iter()
        .map(|p| *p.vertices.iter().min_by_key(|v| (v.y, v.x)).unwrap())
        .fold(pt(0, 0), |acc, v| acc + v);
    let mut pieces: Vec<(Pt, usize, i64)> = Vec::new();
    for (i, p) in summands.iter().enumerate() {
        for (a, b) in p.edges() {
            let v = b - a;
            pieces.push((v.primitive(), i, v.lattice_length()));
        }
    }
    pieces.sort_by(|a, b| angle_cmp(a.0, b.0).then(a.1.cmp(&b.1)));
    let mut edges: Vec<SumEdge> = Vec::new();
    let mut cur = start;
    let mut i = 0;
    while i < pieces.len() {
        let dir = pieces[i].0;
        let mut contributions = Vec::new();
        let mut total = 0;
        while i < pieces.len() && pieces[i].0 == dir {
            contributions.push(EdgeContribution {
                summand: pieces[i].1,
                length: pieces[i].2,
            });
            total += pieces[i].2;
            i += 1;
        }
        let end = cur + total * dir;
        edges.push(SumEdge {
            start: cur,
            end,
            contributions,
        });
        cur = end;
    }
    debug_assert_eq!(cur, start, "Minkowski boundary does not close");
    let vertices: Vec<Pt> = edges.iter().map(|e| e.start).collect();
    let polygon = if edges.len() == 2 {
        LatticePolygon::segment(vertices[0], vertices[1])?
    } else {
        LatticePolygon::from_ccw(vertices)
    };
    Ok(MinkowskiSum { polygon, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: Pt, b: Pt, c: Pt) -> LatticePolygon {
        LatticePolygon::hull(&[a, b, c]).unwrap()
    }

    #[test]
    fn areas() {
        let simplex = tri(pt(0, 0), pt(1, 0), pt(0, 1));
        assert_eq!(simplex.normalized_area(), 1);
        assert_eq!(tri(pt(0, 0), pt(2, 0), pt(0, 1)).normalized_area(), 2);
        let seg = LatticePolygon::segment(pt(0, 0), pt(3, 0)).unwrap();
        assert_eq!(seg.normalized_area(), 0);
        assert_eq!(LatticePolygon::standard_triangle(3).normalized_area(), 9);
    }

    #[test]
    fn hull_drops_collinear_and_interior_points() {
        let p = LatticePolygon::hull(&[pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 2), pt(0, 1), pt(1, 1)])
            .unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(2, 0), pt(0, 2)]);
        let s = LatticePolygon::hull(&[pt(0, 0), pt(1, 1), pt(2, 2)]).unwrap();
        assert!(s.is_segment());
        assert_eq!(s.vertices(), &[pt(0, 0), pt(2, 2)]);
        assert!(LatticePolygon::hull(&[pt(1, 1), pt(1, 1)]).is_err());
    }

    #[test]
    fn square_from_two_segments() {
        let a = LatticePolygon::segment(pt(0, 0), pt(1, 0)).unwrap();
        let b = LatticePolygon::segment(pt(0, 0), pt(0, 1)).unwrap();
        let sum = minkowski_sum(&[a, b]).unwrap();
        assert_eq!(
            sum.polygon.vertices(),
            &[pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]
        );
        assert_eq!(sum.polygon.normalized_area(), 2);
        assert!(sum.edges.iter().all(|e| e.contributions.len() == 1));
    }

    #[test]
    fn doubled_simplex_reports_two_unit_pieces_per_edge() {
        let t = tri(pt(0, 0), pt(1, 0), pt(0, 1));
        let sum = minkowski_sum(&[t.clone(), t]).unwrap();
        assert_eq!(sum.polygon.vertices(), &[pt(0, 0), pt(2, 0), pt(0, 2)]);
        for e in &sum.edges {
            let lens: Vec<i64> = e.contributions.iter().map(|c| c.length).collect();
            assert_eq!(lens, vec![1, 1]);
        }
    }

    #[test]
    fn triangle_plus_parallel_segment() {
        // triangle spanned by u=(1,0), w=(0,1) plus an extra u-segment
        let t = tri(pt(0, 0), pt(1, 0), pt(1, 1));
        let s = LatticePolygon::segment(pt(0, 0), pt(1, 0)).unwrap();
        let sum = minkowski_sum(&[t, s]).unwrap();
        assert_eq!(sum.polygon.vertices().len(), 4);
        let bottom = sum
            .edges
            .iter()
            .find(|e| e.direction() == pt(1, 0))
            .unwrap();
        let mut lens: Vec<(usize, i64)> = bottom
            .contributions
            .iter()
            .map(|c| (c.summand, c.length))
            .collect();
        lens.sort();
        assert_eq!(lens, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn empty_sum_is_an_error() {
        assert!(minkowski_sum(&[]).is_err());
    }

    #[test]
    fn containment() {
        let d2 = LatticePolygon::standard_triangle(2);
        let d3 = LatticePolygon::standard_triangle(3);
        assert!(d3.contains(&tri(pt(0, 0), pt(1, 0), pt(0, 1))));
        let square = LatticePolygon::hull(&[pt(0, 1), pt(2, 1), pt(2, 3), pt(0, 3)]).unwrap();
        assert!(!d2.contains(&square));
        // (1,3) lies beyond the hypotenuse x + y = 3
        assert!(!d3.contains(&tri(pt(0, 3), pt(1, 2), pt(1, 3))));
        assert!(d3.contains(&tri(pt(0, 3), pt(1, 2), pt(0, 2))));
        let seg = LatticePolygon::segment(pt(0, 0), pt(2, 0)).unwrap();
        assert!(seg.contains_point(pt(1, 0)));
        assert!(!seg.contains_point(pt(3, 0)));
        assert_eq!(d2.lattice_points().len(), 6);
    }

    #[test]
    fn area_superadditive_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let mut mk = || {
                let pts: Vec<Pt> = (0..4)
                    .map(|_| pt(rng.gen_range(0..5), rng.gen_range(0..5)))
                    .collect();
                LatticePolygon::hull(&pts)
            };
            let (Ok(a), Ok(b)) = (mk(), mk()) else {
                continue;
            };
            let s = minkowski_sum(&[a.clone(), b.clone()]).unwrap();
            assert!(s.polygon.normalized_area() >= a.normalized_area() + b.normalized_area());
            let brute = LatticePolygon::hull(
                &a.vertices()
                    .iter()
                    .flat_map(|&p| b.vertices().iter().map(move |&q| p + q))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(s.polygon, brute);
        }
    }
}
