//! Counting curves with unlabelled non-contracted ends, each weighted by
//! ν_C = ∏ 1/b! over groups of b parallel ends at one vertex, gives the same
//! invariant as the labelled count divided by (d!)³.

use std::collections::HashMap;

use num_bigint::BigInt;
use tropgw::exact::rational::{factorial, label_factor};
use tropgw::exact::Rational;
use tropgw::oracle::{enumerate_types, evaluate_type, oracle_invariant, CurveType, PointConfig};

/// Rooted canonical string: marks keep their index, ends only their direction.
fn canonical(t: &CurveType, v: usize, from: usize) -> String {
    let first = t.first_end();
    if v < t.leaves() && from != usize::MAX {
        return if v < first {
            format!("m{v}")
        } else {
            format!("e{}", (v - first) / t.d as usize)
        };
    }
    let mut children: Vec<String> = t.adjacency[v]
        .iter()
        .filter(|&&w| w != from)
        .map(|&w| canonical(t, w, v))
        .collect();
    children.sort();
    format!("({})", children.join(","))
}

fn nu(t: &CurveType) -> Rational {
    let first = t.first_end();
    let mut denom = BigInt::from(1);
    for v in t.internal_vertices() {
        let mut per_direction = [0u64; 3];
        for &w in &t.adjacency[v] {
            if w >= first && w < t.leaves() {
                per_direction[(w - first) / t.d as usize] += 1;
            }
        }
        for b in per_direction {
            denom *= factorial(b);
        }
    }
    Rational::new(BigInt::from(1), denom)
}

fn check(d: u32, rs: &[u32], seed: u64) {
    let types = enumerate_types(d, rs).unwrap();
    let cfg = PointConfig::random(rs.len(), seed);
    let mut classes: HashMap<String, Vec<&CurveType>> = HashMap::new();
    for t in &types {
        classes
            .entry(canonical(t, 0, usize::MAX))
            .or_default()
            .push(t);
    }
    let mut unlabelled = Rational::from_integer(0.into());
    for members in classes.values() {
        let rep = members[0];
        let nu_c = nu(rep);
        // the class is the orbit of the labelling group, of size s = ν_C · (d!)³
        assert_eq!(
            Rational::from_integer(members.len().into()),
            &nu_c * Rational::from_integer(label_factor(d)),
            "{d} {rs:?}"
        );
        let w = evaluate_type(rep, &cfg).unwrap();
        for m in members {
            assert_eq!(
                evaluate_type(m, &cfg).unwrap(),
                w,
                "relabelling changed a determinant"
            );
        }
        unlabelled += nu_c * Rational::from_integer(w);
    }
    let labelled = oracle_invariant(d, rs, seed).unwrap();
    assert_eq!(unlabelled, labelled.value, "{d} {rs:?}");
}

#[test]
fn lines() {
    check(1, &[0, 0], 3);
    check(1, &[1], 3);
}

#[test]
fn conics() {
    for rs in [
        &[4][..],
        &[3, 0],
        &[2, 1],
        &[2, 0, 0],
        &[1, 1, 0],
        &[1, 0, 0, 0],
    ] {
        check(2, rs, 8);
    }
}
