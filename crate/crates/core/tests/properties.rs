//! Randomised identities. Every comparison is between exact rationals.

mod common;

use proptest::prelude::*;
use proptest::sample::select;
use tropgw::exact::rational::int;
use tropgw::exact::Rational;
use tropgw::oracle::{oracle_invariant, oracle_invariant_with_free, within_budget};
use tropgw::ragrug::{
    count_rag_rugs, enumerate_rag_rugs, is_reducible, possible_subdivisions, rug_multiplicity,
    RugMemo,
};
use tropgw::wdvv::{string_reduce, Engine, InvariantQuery, Method};

fn query_pool(
    degrees: std::ops::RangeInclusive<u32>,
    ls: std::ops::RangeInclusive<u32>,
    m: u32,
) -> Vec<InvariantQuery> {
    degrees
        .flat_map(|d| {
            ls.clone()
                .flat_map(move |l| InvariantQuery::all_valid(d, l, m))
        })
        .collect()
}

/// Point-only queries the oracle enumerates in well under a second.
fn cheap_oracle_forms() -> Vec<(u32, Vec<u32>)> {
    let mut out = Vec::new();
    for d in 1..=2 {
        for f in common::forms(3 * d - 1) {
            if f.len() <= 3 {
                out.push((d, f));
            }
        }
    }
    out
}

fn permutations(pool: Vec<(u32, Vec<u32>)>) -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>)> {
    select(pool).prop_flat_map(|(d, f)| {
        let original = f.clone();
        Just(f)
            .prop_shuffle()
            .prop_map(move |p| (d, original.clone(), p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn oracle_is_independent_of_the_points((d, f) in select(cheap_oracle_forms()), s1 in any::<u64>(), s2 in any::<u64>()) {
        prop_assert_eq!(oracle_invariant(d, &f, s1).unwrap().value, oracle_invariant(d, &f, s2).unwrap().value);
    }

    #[test]
    fn oracle_is_symmetric_in_the_points((d, f, p) in permutations(cheap_oracle_forms()), seed in any::<u64>()) {
        prop_assert_eq!(oracle_invariant(d, &f, seed).unwrap().value, oracle_invariant(d, &p, seed).unwrap().value);
    }

    #[test]
    fn engine_is_symmetric_in_the_points(q in select(query_pool(1..=4, 0..=1, 0)), seed in any::<u64>()) {
        let mut shuffled = q.rs().to_vec();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        let p = InvariantQuery::new(q.d, q.l, q.m, shuffled);
        prop_assert_eq!(Engine::default().value(&q).unwrap(), Engine::default().value(&p).unwrap());
    }

    #[test]
    fn rag_rug_count_is_symmetric_in_the_form(
        (d, f, p) in permutations((1..=3).flat_map(|d| common::forms(3 * d - 1).into_iter().filter(|f| f.len() <= 4).map(move |f| (d, f))).collect())
    ) {
        prop_assert_eq!(count_rag_rugs(d, &f).unwrap().irreducible, count_rag_rugs(d, &p).unwrap().irreducible);
    }

    #[test]
    fn wdvv_does_not_depend_on_the_chosen_ends(q in select(query_pool(2..=4, 0..=0, 0))) {
        let rs = q.rs();
        prop_assume!(rs.len() >= 2 && rs[0] > 0);
        let mut engine = Engine::default();
        let value = engine.value(&q).unwrap();
        for i in 0..rs.len() {
            for j in 0..rs.len() {
                if i != j && rs[i] > 0 {
                    prop_assert_eq!(&engine.wdvv_step(&q, i, j).unwrap(), &value, "ends ({}, {})", i, j);
                }
            }
        }
    }

    #[test]
    fn string_identity(q in select(query_pool(1..=2, 1..=2, 0).into_iter().filter(|q| within_budget(q.d, q.n() + q.l as usize)).collect::<Vec<_>>()), seed in any::<u64>()) {
        let mut engine = Engine::default();
        let mut rhs = Rational::from_integer(0.into());
        for (c, rest) in string_reduce(&q).unwrap() {
            rhs += int(c as i64) * engine.value(&rest).unwrap();
        }
        // as a reduction inside the engine
        let v = engine.compute_invariant(&q).unwrap();
        prop_assert_eq!(v.method, Method::String);
        prop_assert_eq!(&v.value, &rhs);
        // as an equality with the free end enumerated directly
        let direct = oracle_invariant_with_free(q.d, q.l, q.rs(), seed).unwrap().value;
        prop_assert_eq!(direct, rhs);
    }

    #[test]
    fn divisor_identity(q in select(query_pool(1..=2, 0..=1, 0).into_iter().filter(|q| within_budget(q.d, q.n() + q.l as usize) && q.n() <= 4).collect::<Vec<_>>()), seed in any::<u64>()) {
        let with_line = InvariantQuery::new(q.d, q.l, 1, q.rs().to_vec());
        let v = Engine::default().compute_invariant(&with_line).unwrap();
        prop_assert_eq!(v.method, Method::Divisor);
        let without = Engine::default().value(&q).unwrap();
        prop_assert_eq!(&v.value, &(&without * int(q.d as i64)));
        let direct = oracle_invariant_with_free(q.d, q.l, q.rs(), seed).unwrap().value;
        prop_assert_eq!(v.value, direct * int(q.d as i64));
    }

    #[test]
    fn subdivisions_sum_to_the_rug(
        (d, f) in select((1..=3).flat_map(|d| common::forms(3 * d - 1).into_iter().filter(|f| f.len() <= 4).map(move |f| (d, f))).collect::<Vec<_>>())
    ) {
        let mut memo = RugMemo::new(d);
        let mut irreducible = Rational::from_integer(0.into());
        for rug in enumerate_rag_rugs(d, &f).unwrap() {
            let subs = possible_subdivisions(&rug).unwrap();
            let total: Rational = subs.iter().map(|s| s.multiplicity()).sum();
            prop_assert_eq!(total, rug_multiplicity(&rug, &mut memo).unwrap());
            for s in &subs {
                if !is_reducible(s).unwrap() {
                    irreducible += s.multiplicity();
                }
            }
        }
        prop_assert_eq!(irreducible, count_rag_rugs(d, &f).unwrap().irreducible);
    }
}
