//! Labelled subdivisions of rag rugs and the irreducible count.
//!
//! Each rug polygon is one vertex of a graph. Every triangle of a corner
//! filling is another vertex, joined to the vertices its two paired germs grow
//! out of. A subdivision is reducible when this graph is disconnected; those
//! correspond to curves that split into several components and are excluded.

use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{Pt, Rational};

use super::multiplicity::{
    side_subdivisions, GermPath, LabelledEdge, NodeId, SideSubdivision, UnionFind,
};
use super::path::Sign;
use super::rug::{enumerate_rag_rugs, rug_multiplicity, RagRug, RugMemo};

/// A rag rug together with a full corner-filling history on both sides.
#[derive(Debug, Clone, Serialize)]
pub struct LabelledSubdivision {
    pub rug: RagRug,
    pub upper: SideSubdivision,
    pub lower: SideSubdivision,
}

/// Identity of a subdivision: polygons with their edge labels, independent of
/// the recursion that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubdivisionKey {
    pieces: Vec<(Vec<Pt>, u32)>,
    cells: Vec<Vec<Pt>>,
    edges: Vec<(Sign, LabelledEdge)>,
}

impl LabelledSubdivision {
    pub fn multiplicity(&self) -> Rational {
        &self.upper.multiplicity * &self.lower.multiplicity
    }

    pub fn key(&self) -> SubdivisionKey {
        let mut cells: Vec<Vec<Pt>> = self
            .upper
            .cells
            .iter()
            .chain(&self.lower.cells)
            .map(|c| c.polygon.vertices().to_vec())
            .collect();
        cells.sort();
        let mut edges: Vec<(Sign, LabelledEdge)> = Vec::new();
        for piece in &self.rug.pieces {
            for (sign, chain) in [(Sign::Plus, &piece.upper), (Sign::Minus, &piece.lower)] {
                edges.extend(chain.iter().map(|e| {
                    (
                        sign,
                        LabelledEdge {
                            start: e.start,
                            end: e.end,
                            label: e.label.clone(),
                        },
                    )
                }));
            }
        }
        edges.extend(self.upper.edges.iter().map(|e| (Sign::Plus, e.clone())));
        edges.extend(self.lower.edges.iter().map(|e| (Sign::Minus, e.clone())));
        edges.sort();
        SubdivisionKey {
            pieces: self
                .rug
                .pieces
                .iter()
                .map(|p| (p.polygon.vertices().to_vec(), p.psi))
                .collect(),
            cells,
            edges,
        }
    }
}

/// Whether the polygon/triangle graph of the subdivision is disconnected.
pub fn is_reducible(s: &LabelledSubdivision) -> Result<bool> {
    let pieces = s.rug.pieces.len();
    if s.upper.sign != Sign::Plus || s.lower.sign != Sign::Minus {
        return Err(Error::Malformed("subdivision sides are swapped".into()));
    }
    let upper_nodes = s.upper.node_end as usize;
    let lower_nodes = s.lower.node_end as usize;
    if upper_nodes < pieces || lower_nodes < upper_nodes {
        return Err(Error::Malformed("subdivision node ranges overlap".into()));
    }
    let mut uf = UnionFind::new(lower_nodes);
    for cell in s.upper.cells.iter().chain(&s.lower.cells) {
        for t in &cell.triangles {
            uf.union(t.node as usize, t.first.source as usize);
            uf.union(t.node as usize, t.second.source as usize);
        }
    }
    let root = uf.find(0);
    Ok((1..lower_nodes).any(|v| uf.find(v) != root))
}

fn germ_path(rug: &RagRug, sign: Sign) -> Result<GermPath> {
    let path = match sign {
        Sign::Plus => rug.upper_path(),
        Sign::Minus => rug.lower_path(),
    };
    GermPath::new(path, rug.side_germs(sign))
}

/// All labelled subdivisions of one rug; the lower side's triangle nodes are
/// numbered after the upper side's.
pub fn possible_subdivisions(rug: &RagRug) -> Result<Vec<LabelledSubdivision>> {
    let d = rug.degree;
    let n = rug.pieces.len() as NodeId;
    let uppers = side_subdivisions(&germ_path(rug, Sign::Plus)?, Sign::Plus, d, n)?;
    if uppers.is_empty() {
        return Ok(Vec::new());
    }
    let offset = uppers.iter().map(|u| u.node_end).max().unwrap_or(n);
    let lowers = side_subdivisions(&germ_path(rug, Sign::Minus)?, Sign::Minus, d, offset)?;
    let mut out = Vec::new();
    for up in &uppers {
        for low in &lowers {
            out.push(LabelledSubdivision {
                rug: rug.clone(),
                upper: up.clone(),
                lower: low.clone(),
            });
        }
    }
    Ok(out)
}

/// Totals from summing over all rugs of one form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RugCount {
    /// Irreducible count, equal to the invariant itself.
    #[serde(with = "crate::exact::rational::as_json")]
    pub irreducible: Rational,
    /// Sum of all rug multiplicities.
    #[serde(with = "crate::exact::rational::as_json")]
    pub total: Rational,
    #[serde(with = "crate::exact::rational::as_json")]
    pub reducible: Rational,
    pub rugs: usize,
    /// Rugs with nonzero multiplicity.
    pub contributing_rugs: usize,
}

/// Multiplicity carried by one side's subdivisions, grouped by how they join
/// the rug polygons.
fn side_blocks(subs: &[SideSubdivision], pieces: usize) -> HashMap<Vec<usize>, Rational> {
    let mut out: HashMap<Vec<usize>, Rational> = HashMap::new();
    for s in subs {
        *out.entry(s.polygon_blocks(pieces))
            .or_insert_with(Rational::zero) += &s.multiplicity;
    }
    out
}

fn blocks_connect(a: &[usize], b: &[usize]) -> bool {
    let mut uf = UnionFind::new(a.len());
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        uf.union(i, x);
        uf.union(i, y);
    }
    (1..a.len()).all(|i| uf.find(i) == uf.find(0))
}

/// One contributing rug with its multiplicity and irreducible part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RugReport {
    pub rug: RagRug,
    #[serde(with = "crate::exact::rational::as_json")]
    pub multiplicity: Rational,
    #[serde(with = "crate::exact::rational::as_json")]
    pub irreducible: Rational,
}

impl RugReport {
    /// Weight of the reducible possible subdivisions removed from this rug.
    pub fn reducible(&self) -> Rational {
        &self.multiplicity - &self.irreducible
    }
}

fn report(rug: &RagRug, memo: &mut RugMemo) -> Result<Option<RugReport>> {
    let d = rug.degree;
    let mu = rug_multiplicity(rug, memo)?;
    if mu.is_zero() {
        return Ok(None);
    }
    let pieces = rug.pieces.len();
    let n = pieces as NodeId;
    let uppers = side_subdivisions(&germ_path(rug, Sign::Plus)?, Sign::Plus, d, n)?;
    let lowers = side_subdivisions(&germ_path(rug, Sign::Minus)?, Sign::Minus, d, n)?;
    let up = side_blocks(&uppers, pieces);
    let low = side_blocks(&lowers, pieces);
    let mut side_total = Rational::zero();
    let mut irreducible = Rational::zero();
    for (bu, mu_u) in &up {
        for (bl, mu_l) in &low {
            let m = mu_u * mu_l;
            side_total += &m;
            if blocks_connect(bu, bl) {
                irreducible += m;
            }
        }
    }
    if side_total != mu {
        return Err(Error::Internal(format!(
            "subdivisions of a rug sum to {side_total}, path multiplicities give {mu}"
        )));
    }
    Ok(Some(RugReport {
        rug: rug.clone(),
        multiplicity: mu,
        irreducible,
    }))
}

/// Every rug of the form with nonzero multiplicity, in enumeration order.
pub fn rug_reports(d: u32, form: &[u32]) -> Result<Vec<RugReport>> {
    let rugs = enumerate_rag_rugs(d, form)?;
    let mut memo = RugMemo::new(d);
    let mut out = Vec::new();
    for rug in &rugs {
        out.extend(report(rug, &mut memo)?);
    }
    Ok(out)
}

/// Irreducible rug count for degree `d` and ordered form `r_1, …, r_n`.
pub fn count_rag_rugs(d: u32, form: &[u32]) -> Result<RugCount> {
    let rugs = enumerate_rag_rugs(d, form)?;
    let mut memo = RugMemo::new(d);
    let mut count = RugCount {
        irreducible: Rational::zero(),
        total: Rational::zero(),
        reducible: Rational::zero(),
        rugs: rugs.len(),
        contributing_rugs: 0,
    };
    for rug in &rugs {
        if let Some(r) = report(rug, &mut memo)? {
            count.contributing_rugs += 1;
            count.total += &r.multiplicity;
            count.irreducible += &r.irreducible;
        }
    }
    count.reducible = &count.total - &count.irreducible;
    Ok(count)
}
