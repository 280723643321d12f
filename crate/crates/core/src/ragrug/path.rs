//! Labelled λ-increasing lattice paths in the triangle Δ_d.
//!
//! λ(x, y) = x − εy for an infinitesimal irrational ε, so λ-order on lattice
//! points is x ascending, then y descending. The paths run from p = (0, d) to
//! q = (d, 0), the λ-minimal and λ-maximal corners of Δ_d.

use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::partition::{compositions, partitions_of};
use crate::exact::rational::factorial;
use crate::exact::{pt, LatticePolygon, Partition, Pt, Rational};

/// True iff `a` comes strictly before `b` in λ-order.
pub fn lambda_less(a: Pt, b: Pt) -> bool {
    a.x < b.x || (a.x == b.x && a.y > b.y)
}

/// Sort key realizing λ-order.
pub fn lambda_key(p: Pt) -> (i64, i64) {
    (p.x, -p.y)
}

/// Which side of the rug a multiplicity is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// Upper side; recursion at left corners, ends along the hypotenuse.
    Plus,
    /// Lower side; recursion at right corners, ends along the two legs.
    Minus,
}

impl Sign {
    /// Whether consecutive steps `a`, `b` form a corner this side recurses on.
    pub fn is_corner(self, a: Pt, b: Pt) -> bool {
        match self {
            Sign::Plus => a.cross(b) > 0,
            Sign::Minus => a.cross(b) < 0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub fn start_point(d: u32) -> Pt {
    pt(0, d as i64)
}

pub fn end_point(d: u32) -> Pt {
    pt(d as i64, 0)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabelledPath {
    points: Vec<Pt>,
    labels: Vec<Partition>,
}

impl fmt::Debug for LabelledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.points[0])?;
        for (p, l) in self.points[1..].iter().zip(&self.labels) {
            write!(f, " -{l}-> {p:?}")?;
        }
        Ok(())
    }
}

impl LabelledPath {
    /// Checks λ-monotonicity and that each label partitions its step's length.
    pub fn new(points: Vec<Pt>, labels: Vec<Partition>) -> Result<Self> {
        if points.len() < 2 || labels.len() + 1 != points.len() {
            return Err(Error::Malformed(format!(
                "{} points with {} labels",
                points.len(),
                labels.len()
            )));
        }
        for (w, label) in points.windows(2).zip(&labels) {
            if !lambda_less(w[0], w[1]) {
                return Err(Error::Malformed(format!(
                    "step {:?} -> {:?} is not λ-increasing",
                    w[0], w[1]
                )));
            }
            if label.is_empty() || label.total() as i64 != (w[1] - w[0]).lattice_length() {
                return Err(Error::Malformed(format!(
                    "label {label} does not partition step {:?} -> {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(LabelledPath { points, labels })
    }

    pub(crate) fn new_unchecked(points: Vec<Pt>, labels: Vec<Partition>) -> Self {
        debug_assert!(Self::new(points.clone(), labels.clone()).is_ok());
        LabelledPath { points, labels }
    }

    pub fn points(&self) -> &[Pt] {
        &self.points
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn step_count(&self) -> usize {
        self.labels.len()
    }

    pub fn step(&self, k: usize) -> Pt {
        self.points[k + 1] - self.points[k]
    }

    /// Runs from p to q inside Δ_d.
    pub fn is_full(&self, d: u32) -> bool {
        let tri = LatticePolygon::standard_triangle(d as i64);
        self.points[0] == start_point(d)
            && *self.points.last().unwrap() == end_point(d)
            && self.points.iter().all(|&p| tri.contains_point(p))
    }

    /// Lies on ∂Δ_d on the side matching `sign` (hypotenuse for `Plus`, the legs
    /// through the origin for `Minus`) with only all-ones labels.
    pub fn is_end_path(&self, sign: Sign, d: u32) -> bool {
        if !self.is_full(d) || !self.labels.iter().all(Partition::is_all_ones) {
            return false;
        }
        let d = d as i64;
        match sign {
            Sign::Plus => self.points.iter().all(|p| p.x + p.y == d),
            Sign::Minus => self
                .points
                .windows(2)
                .all(|w| (w[0].x == 0 && w[1].x == 0) || (w[0].y == 0 && w[1].y == 0)),
        }
    }

    /// Index `k` of the first corner (steps `k`, `k+1`) of the given orientation.
    pub fn first_corner(&self, sign: Sign) -> Option<usize> {
        (0..self.step_count().saturating_sub(1))
            .find(|&k| sign.is_corner(self.step(k), self.step(k + 1)))
    }
}

/// All boundary end paths of Δ_d for one side, labels all ones.
pub fn enumerate_end_paths(d: u32, sign: Sign) -> Vec<LabelledPath> {
    let di = d as i64;
    match sign {
        Sign::Plus => compositions(d)
            .into_iter()
            .map(|comp| {
                let mut points = vec![start_point(d)];
                let mut x = 0;
                for &len in &comp {
                    x += len as i64;
                    points.push(pt(x, di - x));
                }
                let labels = comp.iter().map(|&l| Partition::ones(l)).collect();
                LabelledPath::new_unchecked(points, labels)
            })
            .collect(),
        Sign::Minus => {
            let mut out = Vec::new();
            for left in compositions(d) {
                for bottom in compositions(d) {
                    let mut points = vec![start_point(d)];
                    let mut y = di;
                    for &len in &left {
                        y -= len as i64;
                        points.push(pt(0, y));
                    }
                    let mut x = 0;
                    for &len in &bottom {
                        x += len as i64;
                        points.push(pt(x, 0));
                    }
                    let labels = left
                        .iter()
                        .chain(&bottom)
                        .map(|&l| Partition::ones(l))
                        .collect();
                    out.push(LabelledPath::new_unchecked(points, labels));
                }
            }
            out
        }
    }
}

/// Product of `1/|α_k|!` over the steps of an end path.
pub fn end_path_multiplicity(path: &LabelledPath, sign: Sign, d: u32) -> Result<Rational> {
    if !path.is_end_path(sign, d) {
        return Err(Error::Precondition(format!(
            "{path:?} is not a {sign} end path of degree {d}"
        )));
    }
    let denom = path
        .labels()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, l| {
            acc * factorial(l.len() as u64)
        });
    Ok(Rational::new(num_bigint::BigInt::one(), denom))
}

/// Every labelled λ-increasing lattice path from p to q in Δ_d.
pub fn enumerate_labelled_paths(d: u32) -> Vec<LabelledPath> {
    let tri = LatticePolygon::standard_triangle(d as i64);
    let mut pts = tri.lattice_points();
    pts.sort_by_key(|&p| lambda_key(p));
    let inner = &pts[1..pts.len() - 1];
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << inner.len()) {
        let mut points = vec![pts[0]];
        points.extend(
            inner
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        );
        points.push(*pts.last().unwrap());
        let options: Vec<Vec<Partition>> = points
            .windows(2)
            .map(|w| partitions_of((w[1] - w[0]).lattice_length() as u32))
            .collect();
        let mut idx = vec![0usize; options.len()];
        loop {
            let labels = idx
                .iter()
                .zip(&options)
                .map(|(&i, o)| o[i].clone())
                .collect();
            out.push(LabelledPath::new_unchecked(points.clone(), labels));
            let mut j = 0;
            while j < idx.len() {
                idx[j] += 1;
                if idx[j] < options[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
    }
    out
}
