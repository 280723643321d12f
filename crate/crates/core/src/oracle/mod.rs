//! Ground truth for small degrees: enumerate curve types, solve for the curves
//! through random integer points, and add up `|det|` of the evaluation map.

pub mod types;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::rational::label_factor;
use crate::exact::{det_i128, pt, IntMatrix, Pt, Rational};
use crate::wdvv::{divisor_reduce, string_reduce, InvariantQuery};

pub use types::{enumerate_types, enumerate_types_with_free, within_budget, CurveType};

const COORDINATE_BOUND: i64 = 1_000_000;
const MAX_ATTEMPTS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    pub points: Vec<Pt>,
    pub seed: u64,
}

impl PointConfig {
    /// No two points share a line of direction (1,0), (0,1), (1,1) or (1,−1).
    pub fn is_screened(points: &[Pt]) -> bool {
        points.iter().enumerate().all(|(i, a)| {
            points[..i].iter().all(|b| {
                a.x != b.x && a.y != b.y && a.x - a.y != b.x - b.y && a.x + a.y != b.x + b.y
            })
        })
    }

    /// `n` integer points with coordinates in `[−10⁶, 10⁶]`, redrawn until screened.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let points: Vec<Pt> = (0..n)
                .map(|_| {
                    pt(
                        rng.gen_range(-COORDINATE_BOUND..=COORDINATE_BOUND),
                        rng.gen_range(-COORDINATE_BOUND..=COORDINATE_BOUND),
                    )
                })
                .collect();
            if Self::is_screened(&points) {
                return PointConfig { points, seed };
            }
        }
    }
}

/// Evaluation matrix of a type: columns are the root position `(x, y)` and
/// the bounded edge lengths, rows the two coordinates of each marked vertex.
pub fn evaluation_matrix(t: &CurveType) -> IntMatrix {
    let edges = t.bounded_edges();
    let n = t.marks();
    let mut m = IntMatrix::zeros(2 * n, 2 + edges.len());
    let mut path_to: Vec<Vec<usize>> = vec![Vec::new(); t.adjacency.len()];
    for (i, &(p, c)) in edges.iter().enumerate() {
        // edges come out parent-first, so the parent's path is already known
        let mut path = path_to[p].clone();
        path.push(i);
        path_to[c] = path;
    }
    let dirs: Vec<Pt> = edges.iter().map(|&(p, c)| t.edge_direction(p, c)).collect();
    for k in 0..n {
        let v = t.mark_vertex(k);
        m.set(2 * k, 0, 1);
        m.set(2 * k + 1, 1, 1);
        for &e in &path_to[v] {
            m.set(2 * k, 2 + e, dirs[e].x);
            m.set(2 * k + 1, 2 + e, dirs[e].y);
        }
    }
    m
}

/// `|det|` of the evaluation map if the type has a curve through `cfg` with
/// all bounded edges of positive length, else 0.
pub fn evaluate_type(t: &CurveType, cfg: &PointConfig) -> Result<BigInt> {
    if cfg.points.len() != t.marks() {
        return Err(Error::Malformed(format!(
            "{} points for {} marked ends",
            cfg.points.len(),
            t.marks()
        )));
    }
    let m = evaluation_matrix(t);
    if !m.is_square() {
        return Ok(BigInt::zero());
    }
    match evaluate_machine(&m, cfg) {
        Some(w) => Ok(BigInt::from(w)),
        None => evaluate_exact(&m, cfg),
    }
}

fn rhs(cfg: &PointConfig) -> impl Iterator<Item = i64> + '_ {
    cfg.points.iter().flat_map(|p| [p.x, p.y])
}

/// Cramer's rule in `i128`: a length is positive iff replacing its column by
/// the right-hand side keeps the sign of the determinant. `None` on overflow.
fn evaluate_machine(m: &IntMatrix, cfg: &PointConfig) -> Option<u128> {
    let n = m.rows();
    let entries: Vec<i128> = (0..n * n)
        .map(|i| i128::try_from(m.get(i / n, i % n)).ok())
        .collect::<Option<_>>()?;
    let det = det_i128(&mut entries.clone(), n)?;
    if det == 0 {
        return Some(0);
    }
    let b: Vec<i128> = rhs(cfg).map(i128::from).collect();
    for col in 2..n {
        let mut a = entries.clone();
        for (row, &v) in b.iter().enumerate() {
            a[row * n + col] = v;
        }
        let numer = det_i128(&mut a, n)?;
        if numer.signum() != det.signum() {
            return Some(0);
        }
    }
    Some(det.unsigned_abs())
}

fn evaluate_exact(m: &IntMatrix, cfg: &PointConfig) -> Result<BigInt> {
    let det = m.det_exact()?;
    if det.is_zero() {
        return Ok(det);
    }
    let b: Vec<BigInt> = rhs(cfg).map(BigInt::from).collect();
    let Some(solution) = m.solve(&b)? else {
        return Err(Error::Internal(
            "nonzero determinant but singular solve".into(),
        ));
    };
    if solution[2..].iter().all(|l| l.is_positive()) {
        Ok(det.abs())
    } else {
        Ok(BigInt::zero())
    }
}

/// Labelled count through one configuration, before dividing by `(d!)³`.
/// Types are evaluated on all available threads; the sum is order-independent.
pub fn labelled_count(types: &[CurveType], cfg: &PointConfig) -> Result<BigInt> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = types.len().div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = types
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .try_fold(BigInt::zero(), |acc, t| Ok(acc + evaluate_type(t, cfg)?))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .try_fold(BigInt::zero(), |acc, part: Result<BigInt>| Ok(acc + part?))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    #[serde(with = "crate::exact::rational::as_json")]
    pub value: Rational,
    pub types: usize,
    /// The two seeds whose configurations agreed.
    pub seeds: (u64, u64),
    pub attempts: u32,
}

fn partner_seed(seed: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(0x2545_F491_4F6C_DD1D)
}

/// `⟨∏ τ_{r_k}(2)⟩_d` by brute force. Two configurations from independent
/// seeds must agree; otherwise both are redrawn, a bounded number of times.
pub fn oracle_invariant(d: u32, rs: &[u32], seed: u64) -> Result<OracleResult> {
    oracle_invariant_with_free(d, 0, rs, seed)
}

/// `⟨τ₀(0)^free ∏ τ_{r_k}(2)⟩_d` by brute force, as `oracle_invariant`.
pub fn oracle_invariant_with_free(
    d: u32,
    free: u32,
    rs: &[u32],
    seed: u64,
) -> Result<OracleResult> {
    let types = enumerate_types_with_free(d, free, rs)?;
    let denom = Rational::from_integer(label_factor(d));
    let mut s1 = seed;
    for attempt in 1..=MAX_ATTEMPTS {
        let s2 = partner_seed(s1);
        let a = labelled_count(&types, &PointConfig::random(rs.len(), s1))?;
        let b = labelled_count(&types, &PointConfig::random(rs.len(), s2))?;
        if a == b {
            return Ok(OracleResult {
                value: Rational::from_integer(a) / denom,
                types: types.len(),
                seeds: (s1, s2),
                attempts: attempt,
            });
        }
        s1 = partner_seed(s2);
    }
    let rs: Vec<String> = rs.iter().map(u32::to_string).collect();
    Err(Error::SeedDisagreement {
        query: format!("d={d};l={free};m=0;rs={}", rs.join(",")),
        attempts: MAX_ATTEMPTS,
    })
}

/// Oracle values for any query. Lines are removed by the divisor identity;
/// free ends are enumerated directly when within budget and otherwise removed
/// by the string identity. Each enumerated query is computed once.
#[derive(Debug)]
pub struct OracleReference {
    seed: u64,
    points: HashMap<InvariantQuery, Rational>,
}

impl OracleReference {
    pub fn new(seed: u64) -> Self {
        OracleReference {
            seed,
            points: HashMap::new(),
        }
    }

    /// Dimension-invalid queries are 0.
    pub fn value(&mut self, q: &InvariantQuery) -> Result<Rational> {
        if q.d == 0 {
            return Err(Error::InvalidDegree(0));
        }
        if !q.dimension_valid() {
            return Ok(Rational::zero());
        }
        if let Some((factor, rest)) = divisor_reduce(q) {
            return Ok(Rational::from_integer(factor.into()) * self.value(&rest)?);
        }
        if q.l > 0 && !within_budget(q.d, q.n() + q.l as usize) {
            let mut total = Rational::zero();
            for (c, rest) in string_reduce(q)? {
                total += Rational::from_integer(c.into()) * self.value(&rest)?;
            }
            return Ok(total);
        }
        if let Some(v) = self.points.get(q) {
            return Ok(v.clone());
        }
        let v = oracle_invariant_with_free(q.d, q.l, q.rs(), self.seed)?.value;
        self.points.insert(q.clone(), v.clone());
        Ok(v)
    }
}
