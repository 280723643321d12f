//! Rag rugs: chains of labelled lattice polygons from p to q in Δ_d.

use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exact::partition::partitions_with_parts;
use crate::exact::{LatticePolygon, Partition, Pt, Rational};

use super::multiplicity::PathMultiplicity;
use super::path::{end_point, lambda_key, lambda_less, start_point, LabelledPath, Sign};

/// Boundary edge of a rug polygon, oriented in λ-increasing direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RugEdge {
    pub start: Pt,
    pub end: Pt,
    pub label: Partition,
}

/// One polygon of a rag rug. A segment has the same edge in both chains,
/// carrying an independent label on each side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RugPiece {
    pub polygon: LatticePolygon,
    /// Descendant power of the mark sitting on this polygon.
    pub psi: u32,
    pub upper: Vec<RugEdge>,
    pub lower: Vec<RugEdge>,
}

impl RugPiece {
    pub fn parts(&self) -> usize {
        self.upper
            .iter()
            .chain(&self.lower)
            .map(|e| e.label.len())
            .sum()
    }

    pub fn lambda_min(&self) -> Pt {
        self.upper[0].start
    }

    pub fn lambda_max(&self) -> Pt {
        self.upper.last().unwrap().end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RagRug {
    pub degree: u32,
    pub pieces: Vec<RugPiece>,
}

/// Upper and lower vertex chains of a polygon between its λ-extremes.
fn chains(poly: &LatticePolygon) -> (Vec<Pt>, Vec<Pt>) {
    let v = poly.vertices();
    let n = v.len();
    let lo = (0..n).min_by_key(|&i| lambda_key(v[i])).unwrap();
    let hi = (0..n).max_by_key(|&i| lambda_key(v[i])).unwrap();
    if n == 2 {
        return (vec![v[lo], v[hi]], vec![v[lo], v[hi]]);
    }
    // counterclockwise from the λ-minimum runs along the bottom
    let mut lower = vec![v[lo]];
    let mut i = lo;
    while i != hi {
        i = (i + 1) % n;
        lower.push(v[i]);
    }
    let mut upper = vec![v[lo]];
    let mut i = lo;
    while i != hi {
        i = (i + n - 1) % n;
        upper.push(v[i]);
    }
    (upper, lower)
}

/// Which side of a boundary line of Δ_d an edge lies on, if any.
fn boundary_side(a: Pt, b: Pt, d: i64) -> Option<Sign> {
    if (a.x == 0 && b.x == 0) || (a.y == 0 && b.y == 0) {
        Some(Sign::Minus)
    } else if a.x + a.y == d && b.x + b.y == d {
        Some(Sign::Plus)
    } else {
        None
    }
}

/// Label slots of a polygon: the edge, which chain it sits on, and whether the
/// label is forced to all ones by lying on the matching side of ∂Δ_d.
struct Slot {
    start: Pt,
    end: Pt,
    sign: Sign,
    forced: bool,
}

fn slots(poly: &LatticePolygon, d: u32) -> Vec<Slot> {
    let (upper, lower) = chains(poly);
    let mut out = Vec::new();
    for (sign, chain) in [(Sign::Plus, &upper), (Sign::Minus, &lower)] {
        for w in chain.windows(2) {
            let side = boundary_side(w[0], w[1], d as i64);
            out.push(Slot {
                start: w[0],
                end: w[1],
                sign,
                forced: side == Some(sign),
            });
        }
    }
    out
}

/// All labellings of `poly` whose parts total `psi + 2`.
pub fn piece_labellings(poly: &LatticePolygon, psi: u32, d: u32) -> Vec<RugPiece> {
    let slots = slots(poly, d);
    let target = psi as usize + 2;
    let options: Vec<Vec<Partition>> = slots
        .iter()
        .map(|s| {
            let len = (s.end - s.start).lattice_length() as u32;
            if s.forced {
                vec![Partition::ones(len)]
            } else {
                (1..=len as usize)
                    .flat_map(|k| partitions_with_parts(len, k))
                    .collect()
            }
        })
        .collect();
    let min_parts: usize = options
        .iter()
        .map(|o| o.iter().map(Partition::len).min().unwrap())
        .sum();
    if min_parts > target {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Partition> = Vec::new();
    fn go(
        options: &[Vec<Partition>],
        left: usize,
        chosen: &mut Vec<Partition>,
        emit: &mut dyn FnMut(&[Partition]),
    ) {
        if chosen.len() == options.len() {
            if left == 0 {
                emit(chosen);
            }
            return;
        }
        for p in &options[chosen.len()] {
            if p.len() <= left {
                chosen.push(p.clone());
                go(options, left - p.len(), chosen, emit);
                chosen.pop();
            }
        }
    }
    go(&options, target, &mut chosen, &mut |labels| {
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for (s, l) in slots.iter().zip(labels) {
            let e = RugEdge {
                start: s.start,
                end: s.end,
                label: l.clone(),
            };
            match s.sign {
                Sign::Plus => upper.push(e),
                Sign::Minus => lower.push(e),
            }
        }
        out.push(RugPiece {
            polygon: poly.clone(),
            psi,
            upper,
            lower,
        });
    });
    out
}

/// Convex lattice polygons (segments included) inside Δ_d.
pub fn polygon_catalog(d: u32) -> Vec<LatticePolygon> {
    let pts = LatticePolygon::standard_triangle(d as i64).lattice_points();
    let mut seen = BTreeSet::new();
    let n = pts.len();
    // every lattice polygon is the hull of its vertices, which are a subset
    for mask in 1u64..(1u64 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: Vec<Pt> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pts[i])
            .collect();
        let hull = LatticePolygon::hull(&subset).expect("two distinct points");
        if hull.vertices().len() == subset.len() {
            seen.insert(hull);
        }
    }
    seen.into_iter().collect()
}

impl RagRug {
    /// Checks the chain conditions for a hand-built rug.
    pub fn new(degree: u32, pieces: Vec<RugPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Malformed(
                "a rag rug needs at least one polygon".into(),
            ));
        }
        let tri = LatticePolygon::standard_triangle(degree as i64);
        let mut at = start_point(degree);
        for (i, piece) in pieces.iter().enumerate() {
            if !tri.contains(&piece.polygon) {
                return Err(Error::Malformed(format!("polygon {i} leaves the triangle")));
            }
            if piece.lambda_min() != at {
                return Err(Error::Malformed(format!(
                    "polygon {i} does not start at {at:?}"
                )));
            }
            let expected = piece_labellings(&piece.polygon, piece.psi, degree);
            if !expected.contains(piece) {
                return Err(Error::Malformed(format!(
                    "polygon {i} is not correctly labelled"
                )));
            }
            at = piece.lambda_max();
        }
        if at != end_point(degree) {
            return Err(Error::Malformed(format!("rug ends at {at:?}")));
        }
        Ok(RagRug { degree, pieces })
    }

    pub fn form(&self) -> Vec<u32> {
        self.pieces.iter().map(|p| p.psi).collect()
    }

    fn side_path(&self, sign: Sign) -> LabelledPath {
        let mut points = vec![start_point(self.degree)];
        let mut labels = Vec::new();
        for piece in &self.pieces {
            let chain = match sign {
                Sign::Plus => &piece.upper,
                Sign::Minus => &piece.lower,
            };
            for e in chain {
                points.push(e.end);
                labels.push(e.label.clone());
            }
        }
        LabelledPath::new_unchecked(points, labels)
    }

    pub fn upper_path(&self) -> LabelledPath {
        self.side_path(Sign::Plus)
    }

    pub fn lower_path(&self) -> LabelledPath {
        self.side_path(Sign::Minus)
    }

    /// Germs of one side's labels, each sourced at its own polygon.
    pub(crate) fn side_germs(&self, sign: Sign) -> Vec<Vec<super::multiplicity::Germ>> {
        let mut out = Vec::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            let chain = match sign {
                Sign::Plus => &piece.upper,
                Sign::Minus => &piece.lower,
            };
            for e in chain {
                out.push(
                    e.label
                        .parts()
                        .iter()
                        .map(|&w| super::multiplicity::Germ {
                            weight: w,
                            source: i as u32,
                        })
                        .collect(),
                );
            }
        }
        out
    }
}

/// Every rag rug of degree `d` with the given ordered form `r_1, …, r_n`.
pub fn enumerate_rag_rugs(d: u32, form: &[u32]) -> Result<Vec<RagRug>> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let lhs = 3 * d as i64 - 1;
    let rhs = form.len() as i64 + form.iter().map(|&r| r as i64).sum::<i64>();
    if lhs != rhs {
        return Err(Error::DimensionMismatch { lhs, rhs });
    }
    let mut by_start: HashMap<Pt, Vec<LatticePolygon>> = HashMap::new();
    for poly in polygon_catalog(d) {
        let lo = *poly
            .vertices()
            .iter()
            .min_by_key(|&&v| lambda_key(v))
            .unwrap();
        by_start.entry(lo).or_default().push(poly);
    }
    let mut labelled: HashMap<(LatticePolygon, u32), Vec<RugPiece>> = HashMap::new();
    let mut out = Vec::new();
    let mut chain: Vec<RugPiece> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        d: u32,
        form: &[u32],
        at: Pt,
        by_start: &HashMap<Pt, Vec<LatticePolygon>>,
        labelled: &mut HashMap<(LatticePolygon, u32), Vec<RugPiece>>,
        chain: &mut Vec<RugPiece>,
        out: &mut Vec<RagRug>,
    ) {
        let i = chain.len();
        if i == form.len() {
            if at == end_point(d) {
                out.push(RagRug {
                    degree: d,
                    pieces: chain.clone(),
                });
            }
            return;
        }
        let Some(polys) = by_start.get(&at) else {
            return;
        };
        for poly in polys {
            let hi = *poly
                .vertices()
                .iter()
                .max_by_key(|&&v| lambda_key(v))
                .unwrap();
            debug_assert!(lambda_less(at, hi));
            // each later polygon advances at least one lattice point in λ-order
            if i + 1 < form.len() && hi == end_point(d) {
                continue;
            }
            let pieces = labelled
                .entry((poly.clone(), form[i]))
                .or_insert_with(|| piece_labellings(poly, form[i], d))
                .clone();
            for piece in pieces {
                chain.push(piece);
                go(d, form, hi, by_start, labelled, chain, out);
                chain.pop();
            }
        }
    }
    go(
        d,
        form,
        start_point(d),
        &by_start,
        &mut labelled,
        &mut chain,
        &mut out,
    );
    Ok(out)
}

/// `μ₊(γ₊) · μ₋(γ₋)` with shared memo tables.
pub fn rug_multiplicity(rug: &RagRug, memo: &mut RugMemo) -> Result<Rational> {
    let up = memo.plus.multiplicity(&rug.upper_path(), Sign::Plus)?;
    if up.is_zero() {
        return Ok(Rational::zero());
    }
    let down = memo.minus.multiplicity(&rug.lower_path(), Sign::Minus)?;
    Ok(up * down)
}

/// Path-multiplicity memo tables for both sides of one degree.
#[derive(Debug)]
pub struct RugMemo {
    plus: PathMultiplicity,
    minus: PathMultiplicity,
}

impl RugMemo {
    pub fn new(d: u32) -> Self {
        RugMemo {
            plus: PathMultiplicity::new(d),
            minus: PathMultiplicity::new(d),
        }
    }
}

/// Sum of multiplicities over all rugs of the form, reducible ones included.
pub fn total_rug_multiplicity(d: u32, form: &[u32]) -> Result<Rational> {
    let mut memo = RugMemo::new(d);
    let mut acc = Rational::zero();
    for rug in enumerate_rag_rugs(d, form)? {
        acc += rug_multiplicity(&rug, &mut memo)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pt;
    use crate::exact::rational::ratio;

    #[test]
    fn chains_of_a_square() {
        let sq = LatticePolygon::hull(&[pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap();
        let (upper, lower) = chains(&sq);
        assert_eq!(upper, vec![pt(0, 1), pt(1, 1), pt(1, 0)]);
        assert_eq!(lower, vec![pt(0, 1), pt(0, 0), pt(1, 0)]);
    }

    #[test]
    fn catalog_sizes() {
        // Δ_1: three segments and the triangle
        assert_eq!(polygon_catalog(1).len(), 4);
        assert!(polygon_catalog(2)
            .iter()
            .all(|p| LatticePolygon::standard_triangle(2).contains(p)));
    }

    #[test]
    fn unit_segment_labelling() {
        let seg = LatticePolygon::segment(pt(0, 1), pt(1, 0)).unwrap();
        let ls = piece_labellings(&seg, 0, 1);
        // hypotenuse of Δ_1: upper forced to (1), lower free (1)
        assert_eq!(ls.len(), 1);
        assert!(piece_labellings(&seg, 1, 1).is_empty());
        let seg2 = LatticePolygon::segment(pt(0, 2), pt(2, 0)).unwrap();
        assert!(piece_labellings(&seg2, 0, 2).is_empty());
        let inner = LatticePolygon::segment(pt(0, 2), pt(1, 0)).unwrap();
        assert_eq!(piece_labellings(&inner, 0, 2).len(), 1);
        let long = LatticePolygon::segment(pt(0, 2), pt(0, 0)).unwrap();
        assert!(piece_labellings(&long, 0, 2).is_empty());
    }

    #[test]
    fn lines_through_two_points() {
        assert_eq!(total_rug_multiplicity(1, &[0, 0]).unwrap(), ratio(1, 1));
    }

    #[test]
    fn one_point_degree_one() {
        assert_eq!(total_rug_multiplicity(1, &[1]).unwrap(), ratio(1, 1));
    }

    #[test]
    fn form_must_fill_the_dimension() {
        assert!(matches!(
            enumerate_rag_rugs(1, &[1, 0]),
            Err(Error::DimensionMismatch { lhs: 2, rhs: 3 })
        ));
        assert!(enumerate_rag_rugs(2, &[1, 1]).is_err());
        assert!(enumerate_rag_rugs(0, &[]).is_err());
    }

    #[test]
    fn hand_built_rug_validates() {
        let seg = LatticePolygon::segment(pt(0, 1), pt(1, 0)).unwrap();
        let piece = piece_labellings(&seg, 0, 1).remove(0);
        assert_eq!(RagRug::new(1, vec![piece.clone()]).unwrap().form(), vec![0]);
        let other = piece_labellings(&LatticePolygon::segment(pt(0, 0), pt(1, 0)).unwrap(), 0, 1);
        assert!(RagRug::new(1, vec![piece, other[0].clone()]).is_err());
    }
}
