//! The lattice weight at the origin of a product of tropical linear forms
//! equals |det| of their coefficient matrix.
//!
//! Usage: cargo run --example determinant_kernel [count] [seed]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropgw::exact::IntMatrix;

fn main() -> tropgw::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for i in 0..count {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows)?;
        let (det, weight) = (m.det_exact()?, m.weight_at_origin()?);
        if i < 3 {
            println!("{m:?}\n    det {det}, weight {weight}");
        }
        if weight != num_traits::Signed::abs(&det) {
            mismatches += 1;
            println!("mismatch: {m:?}");
        }
    }
    println!("{count} matrices, {mismatches} mismatches");
    Ok(())
}
