//! Filling one corner of a labelled path with a Minkowski sum of triangles and
//! segments, producing the next path of the recursion.

use crate::error::{Error, Result};
use crate::exact::{minkowski_sum, pt, LatticePolygon, Partition, Pt};

use super::path::LabelledPath;

/// Where one part of a new step's label comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartOrigin {
    /// Third edge of the `l`-th triangle summand.
    Triangle(usize),
    /// Unpaired part at this index of the first corner step's label.
    First(usize),
    /// Unpaired part at this index of the second corner step's label.
    Second(usize),
}

/// Triangle spanned by `a·u` and `b·w` pairing one part from each corner step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSummand {
    /// Index into the first step's label.
    pub first: usize,
    /// Index into the second step's label.
    pub second: usize,
    pub a: u32,
    pub b: u32,
    /// Lattice length of the third edge.
    pub third: u32,
    /// Normalized area `a·b·|u × w|`.
    pub area: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarStep {
    pub start: Pt,
    pub end: Pt,
    /// Weight and origin of each part, weights descending.
    pub parts: Vec<(u32, PartOrigin)>,
}

impl FarStep {
    pub fn label(&self) -> Partition {
        Partition::new(self.parts.iter().map(|p| p.0).collect())
    }
}

#[derive(Debug, Clone)]
pub struct CornerChoice {
    /// The corner sits between steps `corner` and `corner + 1`.
    pub corner: usize,
    pub triangles: Vec<TriangleSummand>,
    pub first_unpaired: Vec<usize>,
    pub second_unpaired: Vec<usize>,
    /// The Minkowski sum placed in Δ_d.
    pub cell: LatticePolygon,
    /// Product of the triangle areas.
    pub weight: i64,
    /// Replacement for the two corner steps, in path direction.
    pub far: Vec<FarStep>,
    pub path: LabelledPath,
}

/// Multisets of value pairs `(a, b)` with `a` from `first` and `b` from
/// `second`, each part used at most once. Returned as index pairs, always
/// taking the lowest unused index carrying the value.
fn pairings(first: &Partition, second: &Partition) -> Vec<Vec<(usize, usize)>> {
    let fc = first.counts();
    let sc = second.counts();
    let cells: Vec<(usize, usize)> = (0..fc.len())
        .flat_map(|i| (0..sc.len()).map(move |j| (i, j)))
        .collect();

    fn go(
        cells: &[(usize, usize)],
        pos: usize,
        left_f: &mut Vec<usize>,
        left_s: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize, usize)>,
        out: &mut Vec<Vec<(usize, usize, usize)>>,
    ) {
        if pos == cells.len() {
            out.push(cur.clone());
            return;
        }
        let (i, j) = cells[pos];
        let max = left_f[i].min(left_s[j]);
        for x in 0..=max {
            left_f[i] -= x;
            left_s[j] -= x;
            if x > 0 {
                cur.push((i, j, x));
            }
            go(cells, pos + 1, left_f, left_s, cur, out);
            if x > 0 {
                cur.pop();
            }
            left_f[i] += x;
            left_s[j] += x;
        }
    }

    let mut left_f: Vec<usize> = fc.iter().map(|c| c.1).collect();
    let mut left_s: Vec<usize> = sc.iter().map(|c| c.1).collect();
    let mut raw = Vec::new();
    go(
        &cells,
        0,
        &mut left_f,
        &mut left_s,
        &mut Vec::new(),
        &mut raw,
    );

    let offsets = |counts: &[(u32, usize)]| {
        let mut acc = 0;
        counts
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.1;
                o
            })
            .collect::<Vec<usize>>()
    };
    let fo = offsets(&fc);
    let so = offsets(&sc);
    raw.into_iter()
        .map(|assignment| {
            let mut used_f = vec![0usize; fc.len()];
            let mut used_s = vec![0usize; sc.len()];
            let mut pairs = Vec::new();
            for (i, j, x) in assignment {
                for _ in 0..x {
                    pairs.push((fo[i] + used_f[i], so[j] + used_s[j]));
                    used_f[i] += 1;
                    used_s[j] += 1;
                }
            }
            pairs
        })
        .collect()
}

/// All admissible fillings of the corner between steps `k` and `k + 1` whose
/// cell stays inside Δ_d.
pub fn corner_choices(path: &LabelledPath, k: usize, d: u32) -> Result<Vec<CornerChoice>> {
    if k + 1 >= path.step_count() {
        return Err(Error::Precondition(format!(
            "no corner after step {k} in {path:?}"
        )));
    }
    let step_u = path.step(k);
    let step_w = path.step(k + 1);
    let (u, w) = (step_u.primitive(), step_w.primitive());
    let turn = u.cross(w);
    if turn == 0 {
        return Err(Error::Precondition(format!(
            "steps {k}, {} of {path:?} are parallel",
            k + 1
        )));
    }
    let alpha = &path.labels()[k];
    let beta = &path.labels()[k + 1];
    let origin = path.points()[k];
    let far_end = step_u + step_w;
    let triangle = LatticePolygon::standard_triangle(d as i64);

    let mut out = Vec::new();
    for pairs in pairings(alpha, beta) {
        let mut summands = Vec::new();
        let mut triangles = Vec::new();
        for &(i, j) in &pairs {
            let a = alpha.parts()[i];
            let b = beta.parts()[j];
            let au = a as i64 * u;
            let bw = b as i64 * w;
            summands.push(LatticePolygon::hull(&[pt(0, 0), au, au + bw])?);
            triangles.push(TriangleSummand {
                first: i,
                second: j,
                a,
                b,
                third: (au + bw).lattice_length() as u32,
                area: (a as i64 * b as i64 * turn).abs(),
            });
        }
        let first_unpaired: Vec<usize> = (0..alpha.len())
            .filter(|i| !pairs.iter().any(|p| p.0 == *i))
            .collect();
        let second_unpaired: Vec<usize> = (0..beta.len())
            .filter(|j| !pairs.iter().any(|p| p.1 == *j))
            .collect();
        for &i in &first_unpaired {
            summands.push(LatticePolygon::segment(
                pt(0, 0),
                alpha.parts()[i] as i64 * u,
            )?);
        }
        for &j in &second_unpaired {
            summands.push(LatticePolygon::segment(
                pt(0, 0),
                beta.parts()[j] as i64 * w,
            )?);
        }

        // The corner chain starts at the sum of the summands' base points, 0.
        let sum = minkowski_sum(&summands)?;
        let cell = sum.polygon.translate(origin);
        if !triangle.contains(&cell) {
            continue;
        }
        let edges = &sum.edges;
        let m = edges.len();
        let i0 = edges
            .iter()
            .position(|e| e.start == pt(0, 0))
            .ok_or_else(|| Error::Internal("corner vertex missing from Minkowski sum".into()))?;
        let raw_far: Vec<(Pt, Pt, &[crate::exact::polygon::EdgeContribution])> = if turn > 0 {
            debug_assert_eq!(edges[i0].end, step_u);
            debug_assert_eq!(edges[(i0 + 1) % m].end, far_end);
            (2..m)
                .rev()
                .map(|s| {
                    let e = &edges[(i0 + s) % m];
                    (e.end, e.start, e.contributions.as_slice())
                })
                .collect()
        } else {
            let mut v = Vec::new();
            let mut s = i0;
            while edges[s].start != far_end {
                v.push((
                    edges[s].start,
                    edges[s].end,
                    edges[s].contributions.as_slice(),
                ));
                s = (s + 1) % m;
                if s == i0 {
                    return Err(Error::Internal(
                        "far chain never reaches the corner end".into(),
                    ));
                }
            }
            v
        };

        let r = triangles.len();
        let e_count = first_unpaired.len();
        let far: Vec<FarStep> = raw_far
            .into_iter()
            .map(|(start, end, contributions)| {
                let mut parts: Vec<(u32, PartOrigin)> = contributions
                    .iter()
                    .map(|c| {
                        let o = if c.summand < r {
                            PartOrigin::Triangle(c.summand)
                        } else if c.summand < r + e_count {
                            PartOrigin::First(first_unpaired[c.summand - r])
                        } else {
                            PartOrigin::Second(second_unpaired[c.summand - r - e_count])
                        };
                        (c.length as u32, o)
                    })
                    .collect();
                parts.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
                FarStep {
                    start: start + origin,
                    end: end + origin,
                    parts,
                }
            })
            .collect();

        let mut points: Vec<Pt> = path.points()[..=k].to_vec();
        let mut labels: Vec<Partition> = path.labels()[..k].to_vec();
        for f in &far {
            points.push(f.end);
            labels.push(f.label());
        }
        points.extend_from_slice(&path.points()[k + 3..]);
        labels.extend_from_slice(&path.labels()[k + 2..]);
        let new_path = LabelledPath::new(points, labels)
            .map_err(|e| Error::Internal(format!("corner filling broke the path: {e}")))?;

        out.push(CornerChoice {
            corner: k,
            weight: triangles.iter().map(|t| t.area).product(),
            triangles,
            first_unpaired,
            second_unpaired,
            cell,
            far,
            path: new_path,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(points: &[(i64, i64)], labels: &[&[u32]]) -> LabelledPath {
        LabelledPath::new(
            points.iter().map(|&(x, y)| pt(x, y)).collect(),
            labels.iter().map(|l| Partition::new(l.to_vec())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn pairings_are_value_based() {
        let ones = Partition::ones(2);
        // r = 0, 1, 2 with a single choice each
        assert_eq!(pairings(&ones, &ones).len(), 3);
        let mixed = Partition::new(vec![2, 1]);
        // (0 pairs), (2,1), (1,1), (2,1)+(1,1)
        assert_eq!(pairings(&mixed, &ones).len(), 4);
        for p in pairings(&mixed, &Partition::new(vec![3, 1])) {
            let mut f: Vec<usize> = p.iter().map(|x| x.0).collect();
            f.dedup();
            assert_eq!(f.len(), p.len());
        }
    }

    #[test]
    fn unit_corner_gives_triangle_or_parallelogram() {
        // (0,1) -> (0,0) -> (1,0) turns left
        let p = path(&[(0, 1), (0, 0), (1, 0)], &[&[1], &[1]]);
        let choices = corner_choices(&p, 0, 1).unwrap();
        // the parallelogram leaves Δ_1
        assert_eq!(choices.len(), 1);
        let c = &choices[0];
        assert_eq!(c.weight, 1);
        assert_eq!(c.path.points(), &[pt(0, 1), pt(1, 0)]);
        assert_eq!(c.path.labels(), &[Partition::ones(1)]);
        assert_eq!(c.far[0].parts, vec![(1, PartOrigin::Triangle(0))]);

        let big = corner_choices(&p, 0, 2).unwrap();
        assert_eq!(big.len(), 2);
        let para = big.iter().find(|c| c.triangles.is_empty()).unwrap();
        assert_eq!(para.weight, 1);
        assert_eq!(para.path.points(), &[pt(0, 1), pt(1, 1), pt(1, 0)]);
        assert_eq!(para.far[0].parts, vec![(1, PartOrigin::Second(0))]);
        assert_eq!(para.far[1].parts, vec![(1, PartOrigin::First(0))]);
    }

    #[test]
    fn right_corner_far_chain_runs_forward() {
        // (0,1) -> (1,1) -> (1,0) turns right
        let p = path(&[(0, 1), (1, 1), (1, 0)], &[&[1], &[1]]);
        let choices = corner_choices(&p, 0, 2).unwrap();
        let tri = choices.iter().find(|c| c.triangles.len() == 1).unwrap();
        assert_eq!(tri.path.points(), &[pt(0, 1), pt(1, 0)]);
        let para = choices.iter().find(|c| c.triangles.is_empty()).unwrap();
        assert_eq!(para.path.points(), &[pt(0, 1), pt(0, 0), pt(1, 0)]);
    }

    #[test]
    fn doubled_label_makes_weighted_triangle() {
        // (0,2) -> (0,0) with (2), then (0,0) -> (1,0) with (1)
        let p = path(&[(0, 2), (0, 0), (1, 0)], &[&[2], &[1]]);
        let choices = corner_choices(&p, 0, 2).unwrap();
        let tri = choices.iter().find(|c| c.triangles.len() == 1).unwrap();
        assert_eq!(tri.weight, 2);
        assert_eq!(tri.path.points(), &[pt(0, 2), pt(1, 0)]);
        assert_eq!(tri.path.labels(), &[Partition::ones(1)]);
    }
}
