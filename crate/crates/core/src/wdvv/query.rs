use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::rational::label_factor;
use crate::exact::Rational;

/// `⟨τ₀(0)^l τ₀(1)^m ∏ τ_{r_k}(2)⟩_d`, with `rs` kept sorted descending so that
/// queries differing by a permutation of the point conditions are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantQuery {
    pub d: u32,
    pub l: u32,
    pub m: u32,
    rs: Vec<u32>,
}

impl InvariantQuery {
    pub fn new(d: u32, l: u32, m: u32, mut rs: Vec<u32>) -> Self {
        rs.sort_unstable_by(|a, b| b.cmp(a));
        InvariantQuery { d, l, m, rs }
    }

    /// Points only: `⟨∏ τ_{r_k}(2)⟩_d`.
    pub fn points(d: u32, rs: Vec<u32>) -> Self {
        Self::new(d, 0, 0, rs)
    }

    pub fn rs(&self) -> &[u32] {
        &self.rs
    }

    pub fn n(&self) -> usize {
        self.rs.len()
    }

    /// `(l + 3d − 1, n + Σr)`; the query is zero-dimensional iff they agree.
    pub fn dimension_sides(&self) -> (i64, i64) {
        let lhs = self.l as i64 + 3 * self.d as i64 - 1;
        let rhs = self.rs.len() as i64 + self.rs.iter().map(|&r| r as i64).sum::<i64>();
        (lhs, rhs)
    }

    pub fn dimension_valid(&self) -> bool {
        let (lhs, rhs) = self.dimension_sides();
        lhs == rhs
    }

    /// Rejects `d = 0` and dimension mismatches.
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidDegree(0));
        }
        let (lhs, rhs) = self.dimension_sides();
        if lhs != rhs {
            return Err(Error::DimensionMismatch { lhs, rhs });
        }
        Ok(())
    }

    /// Every dimension-valid query with the given `d`, `l`, `m`, one per
    /// multiset of psi powers, in lexicographically decreasing order of `rs`.
    pub fn all_valid(d: u32, l: u32, m: u32) -> Vec<Self> {
        fn go(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for r in (0..=max.min(left - 1)).rev() {
                cur.push(r);
                go(left - r - 1, r, cur, out);
                cur.pop();
            }
        }
        let Some(weight) = (l + 3 * d).checked_sub(1) else {
            return Vec::new();
        };
        let mut forms = Vec::new();
        go(weight, weight, &mut Vec::new(), &mut forms);
        forms.into_iter().map(|rs| Self::new(d, l, m, rs)).collect()
    }

    /// `(d, n + Σr, l + m)`; every reduction strictly decreases it.
    pub(crate) fn measure(&self) -> (u32, u64, u32) {
        let weight = self.rs.len() as u64 + self.rs.iter().map(|&r| r as u64).sum::<u64>();
        (self.d, weight, self.l + self.m)
    }
}

impl fmt::Display for InvariantQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.rs.iter().map(u32::to_string).collect();
        write!(
            f,
            "d={};l={};m={};rs={}",
            self.d,
            self.l,
            self.m,
            rs.join(",")
        )
    }
}

impl FromStr for InvariantQuery {
    type Err = Error;

    /// Parses the canonical key form `d=<d>;l=<l>;m=<m>;rs=<r1>,<r2>,…`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("invalid query key {s:?}"));
        let fields: Vec<&str> = s.trim().split(';').collect();
        let [d, l, m, rs] = fields.as_slice() else {
            return Err(bad());
        };
        let num = |field: &str, name: &str| -> Result<u32> {
            field
                .strip_prefix(name)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)
        };
        let rs = rs.strip_prefix("rs=").ok_or_else(bad)?;
        let rs: Vec<u32> = if rs.is_empty() {
            Vec::new()
        } else {
            rs.split(',')
                .map(|r| r.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        Ok(InvariantQuery::new(
            num(d, "d")?,
            num(l, "l")?,
            num(m, "m")?,
            rs,
        ))
    }
}

/// Which rule produced a value at the top of the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    String,
    Divisor,
    Wdvv,
    BaseAllZero,
    Cache,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::String => "string",
            Method::Divisor => "divisor",
            Method::Wdvv => "wdvv",
            Method::BaseAllZero => "base-all-zero",
            Method::Cache => "cache",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: Rational,
    /// `value · (d!)³`, the count before dividing out end labellings.
    pub labelled_value: Rational,
    pub method: Method,
}

impl InvariantValue {
    pub fn new(d: u32, value: Rational, method: Method) -> Self {
        let labelled_value = &value * Rational::from_integer(label_factor(d));
        InvariantValue {
            value,
            labelled_value,
            method,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_key() {
        let q = InvariantQuery::new(3, 0, 1, vec![0, 2, 0, 2]);
        assert_eq!(q.rs(), &[2, 2, 0, 0]);
        assert_eq!(q.to_string(), "d=3;l=0;m=1;rs=2,2,0,0");
        assert_eq!(q, InvariantQuery::new(3, 0, 1, vec![2, 0, 2, 0]));
        assert_eq!(
            "d=3;l=0;m=1;rs=2,2,0,0".parse::<InvariantQuery>().unwrap(),
            q
        );
        let empty = InvariantQuery::new(1, 2, 0, vec![]);
        assert_eq!(empty.to_string().parse::<InvariantQuery>().unwrap(), empty);
        assert!("d=1;l=0;rs=1".parse::<InvariantQuery>().is_err());
        assert!("d=1;l=0;m=0;rs=x".parse::<InvariantQuery>().is_err());
    }

    #[test]
    fn dimension_condition() {
        assert!(InvariantQuery::points(1, vec![0, 0]).dimension_valid());
        assert!(InvariantQuery::points(2, vec![4]).dimension_valid());
        assert!(!InvariantQuery::points(1, vec![1, 0]).dimension_valid());
        assert!(matches!(
            InvariantQuery::points(1, vec![1, 0]).validate(),
            Err(Error::DimensionMismatch { lhs: 2, rhs: 3 })
        ));
        assert!(matches!(
            InvariantQuery::points(0, vec![]).validate(),
            Err(Error::InvalidDegree(0))
        ));
        // lines do not enter the dimension count
        assert!(InvariantQuery::new(2, 0, 3, vec![1, 0, 0, 0]).dimension_valid());
    }

    #[test]
    fn valid_query_listing() {
        let qs = InvariantQuery::all_valid(2, 0, 0);
        assert_eq!(qs.len(), 7);
        assert_eq!(qs[0].rs(), &[4]);
        assert_eq!(qs[6].rs(), &[0, 0, 0, 0, 0]);
        assert!(qs.iter().all(InvariantQuery::dimension_valid));
        assert_eq!(InvariantQuery::all_valid(1, 2, 1).len(), 5);
    }
}
