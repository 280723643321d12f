//! Combinatorial types of marked rational tropical curves in the plane.
//!
//! Leaves `0..n` are the marked ends through points, leaves `n..n+l` the free
//! marked ends, and the next `3d` leaves the non-contracted ends with directions
//! `(−1,0)`, `(0,−1)`, `(1,1)`, `d` of each. Internal vertices follow the leaves. Trees are grown by inserting leaves in
//! index order, each either into an existing edge or onto an existing internal
//! vertex; every tree arises exactly once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{pt, Pt};

/// Largest inputs the exhaustive enumeration accepts, by degree and number
/// of marked ends (point conditions plus free ends).
pub fn within_budget(d: u32, marks: usize) -> bool {
    match d {
        1 => marks <= 6,
        2 => marks <= 5,
        3 => marks <= 3,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveType {
    pub d: u32,
    /// Psi power of each marked end through a point, in mark order.
    pub rs: Vec<u32>,
    /// Number of free marked ends, which carry no condition.
    pub free: usize,
    /// Adjacency lists; leaves first, then internal vertices.
    pub adjacency: Vec<Vec<usize>>,
}

/// Direction of a non-contracted end; `first_end` is the index of the first one.
pub fn end_direction(d: u32, first_end: usize, leaf: usize) -> Pt {
    match (leaf - first_end) / d as usize {
        0 => pt(-1, 0),
        1 => pt(0, -1),
        _ => pt(1, 1),
    }
}

impl CurveType {
    pub fn marks(&self) -> usize {
        self.rs.len()
    }

    pub fn first_end(&self) -> usize {
        self.rs.len() + self.free
    }

    pub fn leaves(&self) -> usize {
        self.first_end() + 3 * self.d as usize
    }

    pub fn internal_vertices(&self) -> std::ops::Range<usize> {
        self.leaves()..self.adjacency.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// The internal vertex carrying mark `k`.
    pub fn mark_vertex(&self, k: usize) -> usize {
        self.adjacency[k][0]
    }

    /// Edges joining two internal vertices, each as `(parent, child)` with the
    /// parent nearer to mark 0's vertex.
    pub fn bounded_edges(&self) -> Vec<(usize, usize)> {
        let root = self.mark_vertex(0);
        let leaves = self.leaves();
        let mut out = Vec::new();
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, parent)) = stack.pop() {
            for &w in &self.adjacency[v] {
                if w != parent && w >= leaves {
                    out.push((v, w));
                    stack.push((w, v));
                }
            }
        }
        out
    }

    /// Sum of the end directions on the far side of `child` from `parent`:
    /// the weighted direction of the edge `parent → child`.
    pub fn edge_direction(&self, parent: usize, child: usize) -> Pt {
        let first = self.first_end();
        let mut sum = pt(0, 0);
        let mut stack = vec![(child, parent)];
        while let Some((v, from)) = stack.pop() {
            if v < self.leaves() {
                if v >= first {
                    sum = sum + end_direction(self.d, first, v);
                }
                continue;
            }
            for &w in &self.adjacency[v] {
                if w != from {
                    stack.push((w, v));
                }
            }
        }
        sum
    }

    /// Valence `r_k + 3` at the vertex of point mark `k`, 3 elsewhere, at
    /// most one point mark per vertex. Free ends add nothing to the excess.
    pub fn satisfies_valences(&self) -> bool {
        let mut excess = vec![None; self.adjacency.len()];
        for k in 0..self.first_end() {
            if self.mark_vertex(k) < self.leaves() {
                return false;
            }
        }
        for k in 0..self.marks() {
            let v = self.mark_vertex(k);
            if excess[v].is_some() {
                return false;
            }
            excess[v] = Some(self.rs[k] as usize);
        }
        self.internal_vertices()
            .all(|v| self.valence(v) == excess[v].unwrap_or(0) + 3)
    }
}

struct Grower<'a> {
    d: u32,
    rs: &'a [u32],
    free: usize,
    total: usize,
    adjacency: Vec<Vec<usize>>,
    out: Vec<CurveType>,
}

impl Grower<'_> {
    fn n(&self) -> usize {
        self.rs.len()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adjacency.iter().enumerate() {
            for &b in nb {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Conditions that no later insertion can repair, once every point mark
    /// is placed: a vertex above valence `r_k + 3` for every point mark `k` on
    /// it (3 without one), or two ends in one component of the curve with its
    /// point-marked vertices removed. Later insertions only raise valences and
    /// move marks onto new vertices.
    fn hopeless(&self) -> bool {
        let leaves = self.total;
        let n = self.n();
        let first_end = n + self.free;
        let nodes = self.adjacency.len();
        let mut limit = vec![3; nodes];
        let mut marked = vec![false; nodes];
        for k in 0..n {
            let v = self.adjacency[k][0];
            if v < leaves {
                return false;
            }
            marked[v] = true;
            limit[v] = limit[v].max(3 + self.rs[k] as usize);
        }
        if (leaves..nodes).any(|v| self.adjacency[v].len() > limit[v]) {
            return true;
        }
        let mut seen = vec![false; nodes];
        for start in n..nodes {
            if seen[start] || marked[start] || (start < leaves && self.adjacency[start].is_empty())
            {
                continue;
            }
            let mut ends = 0;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                if v >= first_end && v < leaves {
                    ends += 1;
                }
                for &w in &self.adjacency[v] {
                    if !seen[w] && !marked[w] && w >= n {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if ends >= 2 {
                return true;
            }
        }
        false
    }

    fn grow(&mut self, leaf: usize) {
        if leaf == self.total {
            let t = CurveType {
                d: self.d,
                rs: self.rs.to_vec(),
                free: self.free,
                adjacency: self.adjacency.clone(),
            };
            if t.satisfies_valences() {
                self.out.push(t);
            }
            return;
        }
        for (a, b) in self.edges() {
            let w = self.adjacency.len();
            replace(&mut self.adjacency[a], b, w);
            replace(&mut self.adjacency[b], a, w);
            self.adjacency.push(vec![a, b, leaf]);
            self.adjacency[leaf] = vec![w];
            if leaf < self.n() || !self.hopeless() {
                self.grow(leaf + 1);
            }
            self.adjacency[leaf].clear();
            self.adjacency.pop();
            replace(&mut self.adjacency[a], w, b);
            replace(&mut self.adjacency[b], w, a);
        }
        for v in self.total..self.adjacency.len() {
            self.adjacency[v].push(leaf);
            self.adjacency[leaf] = vec![v];
            if leaf < self.n() || !self.hopeless() {
                self.grow(leaf + 1);
            }
            self.adjacency[leaf].clear();
            self.adjacency[v].pop();
        }
    }
}

fn replace(list: &mut [usize], from: usize, to: usize) {
    let slot = list.iter_mut().find(|x| **x == from).expect("edge present");
    *slot = to;
}

/// All curve types of degree `d` with point marks of psi powers `rs` that
/// can pass through general points: valences `r_k + 3` at marked vertices, 3
/// elsewhere, and `2n − 2` bounded edges.
pub fn enumerate_types(d: u32, rs: &[u32]) -> Result<Vec<CurveType>> {
    enumerate_types_with_free(d, 0, rs)
}

/// As `enumerate_types`, with `free` additional marked ends carrying no
/// condition. These may share a vertex with a point mark.
pub fn enumerate_types_with_free(d: u32, free: u32, rs: &[u32]) -> Result<Vec<CurveType>> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let n = rs.len();
    let free = free as usize;
    let lhs = free as i64 + 3 * d as i64 - 1;
    let rhs = n as i64 + rs.iter().map(|&r| r as i64).sum::<i64>();
    if lhs != rhs {
        return Err(Error::DimensionMismatch { lhs, rhs });
    }
    if !within_budget(d, n + free) {
        return Err(Error::Budget(format!(
            "curve enumeration covers at most 6, 5, 3 marked ends in degree 1, 2, 3; \
             got d = {d} with {} marked ends",
            n + free
        )));
    }
    if n == 0 {
        return Err(Error::Precondition(
            "the oracle needs at least one point condition".into(),
        ));
    }
    let total = n + free + 3 * d as usize;
    let mut adjacency = vec![Vec::new(); total];
    adjacency[0].push(1);
    adjacency[1].push(0);
    let mut g = Grower {
        d,
        rs,
        free,
        total,
        adjacency,
        out: Vec::new(),
    };
    g.grow(2);
    let expected_bounded = 2 * n - 2;
    g.out
        .retain(|t| t.bounded_edges().len() == expected_bounded);
    Ok(g.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_for_one_point() {
        let types = enumerate_types(2, &[4]).unwrap();
        assert_eq!(types.len(), 1);
        let t = &types[0];
        assert_eq!(t.valence(t.mark_vertex(0)), 7);
        assert!(t.bounded_edges().is_empty());
    }

    #[test]
    fn valence_handshake() {
        for (d, rs) in [
            (1u32, vec![0u32, 0]),
            (2, vec![1, 0, 0, 0]),
            (2, vec![2, 1]),
        ] {
            for t in enumerate_types(d, &rs).unwrap() {
                let excess: usize = t.internal_vertices().map(|v| t.valence(v) - 3).sum();
                assert_eq!(excess, rs.iter().sum::<u32>() as usize);
            }
        }
    }

    #[test]
    fn unbalanced_inputs_rejected() {
        assert!(matches!(
            enumerate_types(1, &[1, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(enumerate_types(3, &[0; 8]), Err(Error::Budget(_))));
        assert!(enumerate_types(3, &[5, 1]).is_ok());
    }

    #[test]
    fn edge_directions_balance() {
        for t in enumerate_types(2, &[1, 0, 0, 0]).unwrap() {
            for (p, c) in t.bounded_edges() {
                let down = t.edge_direction(p, c);
                let up = t.edge_direction(c, p);
                assert_eq!(down + up, pt(0, 0));
            }
        }
    }
}
