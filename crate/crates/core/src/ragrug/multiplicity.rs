//! Multiplicities of labelled paths, and the subdivisions that realize them.

use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{LatticePolygon, Partition, Pt, Rational};

use super::corner::{corner_choices, PartOrigin};
use super::path::{end_path_multiplicity, LabelledPath, Sign};

/// Memoized path multiplicities for one degree.
#[derive(Debug)]
pub struct PathMultiplicity {
    d: u32,
    memo: HashMap<(Sign, LabelledPath), Rational>,
}

impl PathMultiplicity {
    pub fn new(d: u32) -> Self {
        PathMultiplicity {
            d,
            memo: HashMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Multiplicity of a full path: end paths contribute `∏ 1/|α|!`, paths
    /// without a corner of the side's orientation contribute 0, everything else
    /// recurses over the fillings of the first such corner.
    pub fn multiplicity(&mut self, path: &LabelledPath, sign: Sign) -> Result<Rational> {
        if !path.is_full(self.d) {
            return Err(Error::Precondition(format!(
                "{path:?} does not run from (0,{d}) to ({d},0) inside the degree {d} triangle",
                d = self.d
            )));
        }
        self.eval(path, sign)
    }

    fn eval(&mut self, path: &LabelledPath, sign: Sign) -> Result<Rational> {
        if let Some(v) = self.memo.get(&(sign, path.clone())) {
            return Ok(v.clone());
        }
        let value = if path.is_end_path(sign, self.d) {
            end_path_multiplicity(path, sign, self.d)?
        } else {
            match path.first_corner(sign) {
                None => Rational::zero(),
                Some(k) => {
                    let mut acc = Rational::zero();
                    for choice in corner_choices(path, k, self.d)? {
                        acc += int(choice.weight) * self.eval(&choice.path, sign)?;
                    }
                    acc
                }
            }
        };
        self.memo.insert((sign, path.clone()), value.clone());
        Ok(value)
    }
}

/// Multiplicity of a single path, without sharing a memo table.
pub fn path_multiplicity(path: &LabelledPath, sign: Sign, d: u32) -> Result<Rational> {
    PathMultiplicity::new(d).multiplicity(path, sign)
}

/// Identifier of a vertex of the reducibility graph. Ids below the number of
/// rug polygons stand for those polygons.
pub type NodeId = u32;

/// One part of a label, remembering the graph vertex it grows out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Germ {
    pub weight: u32,
    pub source: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellTriangle {
    pub node: NodeId,
    pub first: Germ,
    pub second: Germ,
}

/// One polygon of a subdivision produced by filling a corner.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub polygon: LatticePolygon,
    pub triangles: Vec<CellTriangle>,
    /// Unpaired germs carried straight across the cell.
    pub passes: Vec<Germ>,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LabelledEdge {
    pub start: Pt,
    pub end: Pt,
    pub label: Partition,
}

/// A complete corner-filling history for one side of a rug.
#[derive(Debug, Clone, Serialize)]
pub struct SideSubdivision {
    pub sign: Sign,
    pub cells: Vec<Cell>,
    /// Edges created by the fillings, in creation order.
    pub edges: Vec<LabelledEdge>,
    #[serde(with = "crate::exact::rational::as_json")]
    pub multiplicity: Rational,
    /// One past the largest node id in use.
    pub node_end: NodeId,
}

/// Labels of a path with germ sources, each list ordered by weight descending
/// then source ascending, matching the partition's part order.
#[derive(Debug, Clone)]
pub struct GermPath {
    pub path: LabelledPath,
    pub germs: Vec<Vec<Germ>>,
}

impl GermPath {
    pub fn new(path: LabelledPath, mut germs: Vec<Vec<Germ>>) -> Result<Self> {
        if germs.len() != path.step_count() {
            return Err(Error::Malformed("one germ list per step required".into()));
        }
        for (g, label) in germs.iter_mut().zip(path.labels()) {
            g.sort_by(|a, b| b.weight.cmp(&a.weight).then(a.source.cmp(&b.source)));
            if g.iter().map(|x| x.weight).collect::<Vec<_>>() != label.parts() {
                return Err(Error::Malformed(format!(
                    "germs {g:?} do not match label {label}"
                )));
            }
        }
        Ok(GermPath { path, germs })
    }
}

/// Every way to fill the side down to its end path, with germ bookkeeping.
/// New triangle nodes are numbered from `first_node`.
pub fn side_subdivisions(
    start: &GermPath,
    sign: Sign,
    d: u32,
    first_node: NodeId,
) -> Result<Vec<SideSubdivision>> {
    if !start.path.is_full(d) {
        return Err(Error::Precondition(format!(
            "{:?} is not a full path",
            start.path
        )));
    }
    let mut out = Vec::new();
    let mut trail = Trail {
        cells: Vec::new(),
        edges: Vec::new(),
    };
    expand(start, sign, d, first_node, int(1), &mut trail, &mut out)?;
    Ok(out)
}

struct Trail {
    cells: Vec<Cell>,
    edges: Vec<LabelledEdge>,
}

fn expand(
    gp: &GermPath,
    sign: Sign,
    d: u32,
    next_node: NodeId,
    weight: Rational,
    trail: &mut Trail,
    out: &mut Vec<SideSubdivision>,
) -> Result<()> {
    let path = &gp.path;
    if path.is_end_path(sign, d) {
        out.push(SideSubdivision {
            sign,
            cells: trail.cells.clone(),
            edges: trail.edges.clone(),
            multiplicity: weight * end_path_multiplicity(path, sign, d)?,
            node_end: next_node,
        });
        return Ok(());
    }
    let Some(k) = path.first_corner(sign) else {
        return Ok(());
    };
    for choice in corner_choices(path, k, d)? {
        let first = &gp.germs[k];
        let second = &gp.germs[k + 1];
        let triangles: Vec<CellTriangle> = choice
            .triangles
            .iter()
            .enumerate()
            .map(|(l, t)| CellTriangle {
                node: next_node + l as NodeId,
                first: first[t.first],
                second: second[t.second],
            })
            .collect();
        let passes: Vec<Germ> = choice
            .first_unpaired
            .iter()
            .map(|&i| first[i])
            .chain(choice.second_unpaired.iter().map(|&j| second[j]))
            .collect();
        let far_germs: Vec<Vec<Germ>> = choice
            .far
            .iter()
            .map(|f| {
                f.parts
                    .iter()
                    .map(|&(w, o)| Germ {
                        weight: w,
                        source: match o {
                            PartOrigin::Triangle(l) => triangles[l].node,
                            PartOrigin::First(i) => first[i].source,
                            PartOrigin::Second(j) => second[j].source,
                        },
                    })
                    .collect()
            })
            .collect();
        let mut germs: Vec<Vec<Germ>> = gp.germs[..k].to_vec();
        germs.extend(far_germs);
        germs.extend_from_slice(&gp.germs[k + 2..]);
        let next = GermPath::new(choice.path.clone(), germs)?;

        let n_cells = trail.cells.len();
        let n_edges = trail.edges.len();
        trail.edges.extend(choice.far.iter().map(|f| LabelledEdge {
            start: f.start,
            end: f.end,
            label: f.label(),
        }));
        trail.cells.push(Cell {
            polygon: choice.cell.clone(),
            triangles: triangles.clone(),
            passes,
            weight: choice.weight,
        });
        expand(
            &next,
            sign,
            d,
            next_node + triangles.len() as NodeId,
            &weight * int(choice.weight),
            trail,
            out,
        )?;
        trail.cells.truncate(n_cells);
        trail.edges.truncate(n_edges);
    }
    Ok(())
}

/// Minimal union-find over dense ids.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl SideSubdivision {
    /// For each rug polygon `0..pieces`, the smallest polygon index it is
    /// joined to through this side's triangles.
    pub fn polygon_blocks(&self, pieces: usize) -> Vec<usize> {
        let mut uf = UnionFind::new((self.node_end as usize).max(pieces));
        for c in &self.cells {
            for t in &c.triangles {
                uf.union(t.node as usize, t.first.source as usize);
                uf.union(t.node as usize, t.second.source as usize);
            }
        }
        (0..pieces).map(|i| uf.find(i)).collect()
    }
}
