//! Plane curve counts N_d through 3d-1 points from the irreducible rag-rug count.
//!
//! Usage: cargo run --release --example kontsevich_numbers [max_degree]

use std::time::Instant;
use tropgw::exact::rational::display;
use tropgw::ragrug::count_rag_rugs;

fn main() -> tropgw::Result<()> {
    let max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    for d in 1..=max {
        let start = Instant::now();
        let count = count_rag_rugs(d, &vec![0; (3 * d - 1) as usize])?;
        println!(
            "N_{d} = {:>4}   rugs {:>6} (contributing {:>4}), reducible weight {}, {:.2?}",
            display(&count.irreducible),
            count.rugs,
            count.contributing_rugs,
            display(&count.reducible),
            start.elapsed()
        );
    }
    Ok(())
}
