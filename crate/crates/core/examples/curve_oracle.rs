//! Brute-force count of tropical curves through random integer points,
//! compared with the reduction engine.
//!
//! Usage: cargo run --release --example curve_oracle [degree] [psi, e.g. 1,0,0,0] [seed]

use std::time::Instant;
use tropgw::exact::rational::display;
use tropgw::oracle::{oracle_invariant, PointConfig};
use tropgw::{compute_invariant, InvariantQuery};

fn main() -> tropgw::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let rs: Vec<u32> = match args.next() {
        Some(s) => s.split(',').filter_map(|r| r.parse().ok()).collect(),
        None => vec![1, 0, 0, 0],
    };
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let start = Instant::now();
    let r = oracle_invariant(d, &rs, seed)?;
    println!(
        "points {:?}",
        PointConfig::random(rs.len(), r.seeds.0).points
    );
    println!(
        "oracle: {} from {} types (seeds {} and {} agree), {:.2?}",
        display(&r.value),
        r.types,
        r.seeds.0,
        r.seeds.1,
        start.elapsed()
    );
    let engine = compute_invariant(&InvariantQuery::points(d, rs))?;
    println!("engine: {} ({})", display(&engine.value), engine.method);
    Ok(())
}
