//! Any invariant ⟨τ₀(0)^l τ₀(1)^m ∏ τ_r(2)⟩_d through the reduction engine,
//! with the rule applied first and the labelled count.
//!
//! Usage: cargo run --example wdvv_invariant [d=3;l=0;m=1;rs=2,2,0,0]

use tropgw::exact::rational::display;
use tropgw::wdvv::{Engine, InvariantQuery};

fn main() -> tropgw::Result<()> {
    let key = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "d=3;l=0;m=1;rs=2,2,0,0".into());
    let q: InvariantQuery = key.parse()?;
    let mut engine = Engine::default();
    let v = engine.compute_invariant(&q)?;
    println!("{q}");
    println!("value          {}", display(&v.value));
    println!("labelled value {}", display(&v.labelled_value));
    println!("first rule     {}", v.method);
    if q.l == 0 && q.m == 0 && q.rs().len() >= 2 && q.rs()[0] > 0 {
        // the result must not depend on which second end enters the equation
        for end4 in 1..q.rs().len() {
            println!(
                "ends (0, {end4})   {}",
                display(&engine.wdvv_step(&q, 0, end4)?)
            );
        }
    }
    Ok(())
}
