//! Rag rugs of one degree and form, each with its multiplicity and the weight
//! of its reducible subdivisions.
//!
//! Usage: cargo run --example rag_rugs [degree] [form, e.g. 2,2,0,0]

use tropgw::exact::rational::display;
use tropgw::ragrug::{count_rag_rugs, rug_reports};

fn main() -> tropgw::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let form: Vec<u32> = match args.next() {
        Some(s) => s.split(',').filter_map(|r| r.parse().ok()).collect(),
        None => vec![2, 2, 0, 0],
    };
    for (i, r) in rug_reports(d, &form)?.iter().enumerate() {
        println!(
            "rug {i}: mu = {}, reducible part = {}",
            display(&r.multiplicity),
            display(&r.reducible())
        );
        for p in &r.rug.pieces {
            println!("    psi {} on {:?}", p.psi, p.polygon.vertices());
        }
    }
    let c = count_rag_rugs(d, &form)?;
    println!(
        "irreducible {} = total {} - reducible {}",
        display(&c.irreducible),
        display(&c.total),
        display(&c.reducible)
    );
    Ok(())
}
