//! Reduction of any invariant to the closed forms: divisor, then string, then
//! the one-point value, the all-zero base case, or the WDVV equation.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, int, label_factor};
use crate::exact::Rational;
use crate::ragrug::count_rag_rugs;

use super::cache::MemoCache;
use super::query::{InvariantQuery, InvariantValue, Method};

/// Known plane curve counts N_1 … N_4.
const PLANE_CURVE_COUNTS: [i64; 4] = [1, 1, 12, 620];

pub fn plane_curve_count_table(d: u32) -> Option<Rational> {
    PLANE_CURVE_COUNTS
        .get((d as usize).checked_sub(1)?)
        .map(|&n| int(n))
}

/// `⟨τ_{3d−2}(2)⟩_d = 1/(d!)³`.
pub fn one_point_value(d: u32) -> Rational {
    Rational::new(BigInt::from(1), label_factor(d))
}

/// For `m ≥ 1`: the factor `d` and the query with one line removed.
pub fn divisor_reduce(q: &InvariantQuery) -> Option<(u32, InvariantQuery)> {
    (q.m > 0).then(|| (q.d, InvariantQuery::new(q.d, q.l, q.m - 1, q.rs().to_vec())))
}

/// For `l ≥ 1`, `m = 0`: one term per distinct positive psi power `v`, with
/// coefficient the number of ends carrying `v`. Empty when all powers are 0.
pub fn string_reduce(q: &InvariantQuery) -> Result<Vec<(u32, InvariantQuery)>> {
    if q.l == 0 || q.m != 0 {
        return Err(Error::Precondition(format!(
            "string reduction needs l ≥ 1 and m = 0, got {q}"
        )));
    }
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &r in q.rs() {
        *counts.entry(r).or_default() += 1;
    }
    Ok(counts
        .iter()
        .rev()
        .filter(|(&v, _)| v > 0)
        .map(|(&v, &c)| {
            let mut rs = q.rs().to_vec();
            let pos = rs.iter().position(|&r| r == v).unwrap();
            rs[pos] = v - 1;
            (c, InvariantQuery::new(q.d, q.l - 1, 0, rs))
        })
        .collect())
}

/// Where the all-zero base values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseSource {
    /// Count irreducible rag rugs, checked against the table where it applies.
    #[default]
    RagRug,
    /// Use the table for d ≤ 4, falling back to rag rugs beyond it.
    Table,
}

/// Extra insertion `τ₀(e)`: a free end, a line, or an unpsi'd point.
fn insert_end(q: &mut (u32, u32, Vec<u32>), e: u32) {
    match e {
        0 => q.0 += 1,
        1 => q.1 += 1,
        _ => q.2.push(0),
    }
}

#[derive(Debug)]
pub struct Engine {
    cache: MemoCache,
    base: BaseSource,
    base_values: HashMap<u32, Rational>,
    stack: Vec<(u32, u64, u32)>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(MemoCache::in_memory(), BaseSource::default())
    }
}

impl Engine {
    pub fn new(cache: MemoCache, base: BaseSource) -> Self {
        Engine {
            cache,
            base,
            base_values: HashMap::new(),
            stack: Vec::new(),
        }
    }

    pub fn cache(&self) -> &MemoCache {
        &self.cache
    }

    pub fn cache_mut(&mut self) -> &mut MemoCache {
        &mut self.cache
    }

    pub fn into_cache(self) -> MemoCache {
        self.cache
    }

    /// Top-level entry: rejects `d = 0` and dimension mismatches.
    pub fn compute_invariant(&mut self, q: &InvariantQuery) -> Result<InvariantValue> {
        q.validate()?;
        if let Some(v) = self.cache.get(q) {
            return Ok(InvariantValue::new(q.d, v.clone(), Method::Cache));
        }
        let method = self.method_for(q);
        let value = self.value(q)?;
        Ok(InvariantValue::new(q.d, value, method))
    }

    /// The rule the reduction applies first to a valid query.
    pub fn method_for(&self, q: &InvariantQuery) -> Method {
        if q.m > 0 {
            Method::Divisor
        } else if q.l > 0 {
            Method::String
        } else if q.n() == 1 {
            Method::ClosedForm
        } else if q.rs().iter().all(|&r| r == 0) {
            Method::BaseAllZero
        } else {
            Method::Wdvv
        }
    }

    /// Value of any query; dimension-invalid ones are 0.
    pub fn value(&mut self, q: &InvariantQuery) -> Result<Rational> {
        if q.d == 0 {
            return Err(Error::InvalidDegree(0));
        }
        if !q.dimension_valid() {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.cache.get(q) {
            return Ok(v.clone());
        }
        let measure = q.measure();
        if let Some(parent) = self.stack.last() {
            if measure >= *parent {
                return Err(Error::Internal(format!(
                    "reduction of {q} does not decrease {parent:?} -> {measure:?}"
                )));
            }
        }
        self.stack.push(measure);
        let result = self.reduce(q);
        self.stack.pop();
        let v = result?;
        self.cache.insert(q.clone(), v.clone())?;
        Ok(v)
    }

    fn reduce(&mut self, q: &InvariantQuery) -> Result<Rational> {
        if let Some((factor, rest)) = divisor_reduce(q) {
            return Ok(int(factor as i64) * self.value(&rest)?);
        }
        if q.l > 0 {
            let mut acc = Rational::zero();
            for (c, rest) in string_reduce(q)? {
                acc += int(c as i64) * self.value(&rest)?;
            }
            return Ok(acc);
        }
        if q.n() == 1 {
            if q.rs()[0] + 2 != 3 * q.d {
                return Err(Error::Internal(format!("one-point query {q} is not 3d-2")));
            }
            return Ok(one_point_value(q.d));
        }
        if q.rs().iter().all(|&r| r == 0) {
            return self.base_all_zero(q.d);
        }
        self.wdvv_step(q, 0, 1)
    }

    /// N_d, the number of rational degree-d curves through 3d − 1 points.
    pub fn base_all_zero(&mut self, d: u32) -> Result<Rational> {
        if let Some(v) = self.base_values.get(&d) {
            return Ok(v.clone());
        }
        let table = plane_curve_count_table(d);
        let v = match (self.base, table) {
            (BaseSource::Table, Some(t)) => t,
            (_, table) => {
                let counted = count_rag_rugs(d, &vec![0; (3 * d - 1) as usize])?.irreducible;
                if let Some(t) = table {
                    if t != counted {
                        return Err(Error::Internal(format!(
                            "rag rugs give N_{d} = {counted}, expected {t}"
                        )));
                    }
                }
                counted
            }
        };
        self.base_values.insert(d, v.clone());
        Ok(v)
    }

    /// The WDVV sum for a points-only query, with the ends at positions
    /// `end3` (positive psi power) and `end4` of the sorted `rs`. Equals
    /// `d` times the invariant.
    pub fn wdvv_sum(&mut self, q: &InvariantQuery, end3: usize, end4: usize) -> Result<Rational> {
        let rs = q.rs();
        if q.l != 0 || q.m != 0 || rs.len() < 2 {
            return Err(Error::Precondition(format!(
                "WDVV needs l = m = 0 and n ≥ 2, got {q}"
            )));
        }
        if end3 == end4 || end3 >= rs.len() || end4 >= rs.len() || rs[end3] == 0 {
            return Err(Error::Precondition(format!(
                "ends ({end3}, {end4}) are not admissible for {q}"
            )));
        }
        let (r3, r4) = (rs[end3], rs[end4]);
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, &r) in rs.iter().enumerate() {
            if i != end3 && i != end4 {
                *counts.entry(r).or_default() += 1;
            }
        }
        let counts: Vec<(u32, u32)> = counts.into_iter().collect();

        let mut total = Rational::zero();
        let mut taken = vec![0u32; counts.len()];
        loop {
            let coefficient: BigInt = counts
                .iter()
                .zip(&taken)
                .map(|(&(_, c), &t)| binomial(c as u64, t as u64))
                .product();
            let mut first: Vec<u32> = Vec::new();
            let mut second: Vec<u32> = Vec::new();
            for (&(v, c), &t) in counts.iter().zip(&taken) {
                first.extend(std::iter::repeat_n(v, t as usize));
                second.extend(std::iter::repeat_n(v, (c - t) as usize));
            }
            let mut split = Rational::zero();
            for d1 in 1..q.d {
                let d2 = q.d - d1;
                for e in 0..=2 {
                    let f = 2 - e;
                    // ⟨τ₀(0) τ_{r3} N₁ τ₀(e)⟩ · ⟨τ₀(1) τ_{r4} N₂ τ₀(f)⟩
                    let mut a = (1, 0, [vec![r3], first.clone()].concat());
                    let mut b = (0, 1, [vec![r4], second.clone()].concat());
                    insert_end(&mut a, e);
                    insert_end(&mut b, f);
                    split += self.product(d1, a, d2, b)?;
                    // ⟨τ₀(0) τ₀(1) N₁ τ₀(e)⟩ · ⟨τ_{r3} τ_{r4} N₂ τ₀(f)⟩
                    let mut a = (1, 1, first.clone());
                    let mut b = (0, 0, [vec![r3, r4], second.clone()].concat());
                    insert_end(&mut a, e);
                    insert_end(&mut b, f);
                    split -= self.product(d1, a, d2, b)?;
                }
            }
            total += Rational::from_integer(coefficient) * split;

            let mut i = 0;
            while i < counts.len() {
                taken[i] += 1;
                if taken[i] <= counts[i].1 {
                    break;
                }
                taken[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                break;
            }
        }
        Ok(total)
    }

    /// The invariant via WDVV with an explicit choice of ends.
    pub fn wdvv_step(&mut self, q: &InvariantQuery, end3: usize, end4: usize) -> Result<Rational> {
        Ok(self.wdvv_sum(q, end3, end4)? / int(q.d as i64))
    }

    fn product(
        &mut self,
        d1: u32,
        a: (u32, u32, Vec<u32>),
        d2: u32,
        b: (u32, u32, Vec<u32>),
    ) -> Result<Rational> {
        let qa = InvariantQuery::new(d1, a.0, a.1, a.2);
        let qb = InvariantQuery::new(d2, b.0, b.1, b.2);
        if !qa.dimension_valid() || !qb.dimension_valid() {
            return Ok(Rational::zero());
        }
        let va = self.value(&qa)?;
        if va.is_zero() {
            return Ok(va);
        }
        Ok(va * self.value(&qb)?)
    }
}

/// One-shot evaluation with a fresh in-memory engine.
pub fn compute_invariant(q: &InvariantQuery) -> Result<InvariantValue> {
    Engine::default().compute_invariant(q)
}
