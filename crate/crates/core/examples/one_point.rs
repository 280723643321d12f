//! One-point invariants ⟨τ_{3d−2}(2)⟩_d = 1/(d!)³ and the recursion
//! d³ · ⟨τ_{3d−2}(2)⟩_d = ⟨τ_{3d−5}(2)⟩_{d−1}.
//!
//! Usage: cargo run --example one_point [max_degree]

use tropgw::exact::rational::{display, int};
use tropgw::{compute_invariant, InvariantQuery};

fn main() -> tropgw::Result<()> {
    let max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let mut previous = None;
    for d in 1..=max {
        let v = compute_invariant(&InvariantQuery::points(d, vec![3 * d - 2]))?;
        print!(
            "d = {d}: ⟨τ_{}(2)⟩ = {} ({})",
            3 * d - 2,
            display(&v.value),
            v.method
        );
        if let Some(p) = previous.replace(v.value.clone()) {
            let scaled = &v.value * int((d * d * d) as i64);
            print!(
                ", d³ · value = {} = previous: {}",
                display(&scaled),
                scaled == p
            );
        }
        println!();
    }
    Ok(())
}
