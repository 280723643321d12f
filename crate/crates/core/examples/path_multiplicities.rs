//! Labelled lattice paths in Δ_d: end-path multiplicities on both sides and
//! the distribution of upper and lower multiplicities over all full paths.
//!
//! Usage: cargo run --example path_multiplicities [degree]

use std::collections::BTreeMap;
use tropgw::exact::rational::display;
use tropgw::ragrug::{
    end_path_multiplicity, enumerate_end_paths, enumerate_labelled_paths, PathMultiplicity, Sign,
};

fn main() -> tropgw::Result<()> {
    let d: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    for sign in [Sign::Plus, Sign::Minus] {
        println!("end paths, {sign:?}:");
        for p in enumerate_end_paths(d, sign) {
            println!(
                "    {p:?}  mu = {}",
                display(&end_path_multiplicity(&p, sign, d)?)
            );
        }
    }
    let mut memo = PathMultiplicity::new(d);
    let mut histogram: BTreeMap<(Sign, String), usize> = BTreeMap::new();
    let paths: Vec<_> = enumerate_labelled_paths(d)
        .into_iter()
        .filter(|p| p.is_full(d))
        .collect();
    for p in &paths {
        for sign in [Sign::Plus, Sign::Minus] {
            let mu = memo.multiplicity(p, sign)?;
            *histogram.entry((sign, display(&mu))).or_default() += 1;
        }
    }
    println!(
        "{} full labelled paths; multiplicity: number of paths",
        paths.len()
    );
    for ((sign, mu), count) in histogram {
        println!("    {sign:?} {mu}: {count}");
    }
    Ok(())
}
