//! Independent reference values shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use tropgw::exact::rational::binomial;

/// N_1 … N_max by the classical recursion
/// N_d = Σ N_a N_b a² b (b·C(3d−4, 3a−2) − a·C(3d−4, 3a−1)) over a + b = d.
pub fn kontsevich(max: u32) -> Vec<BigInt> {
    let mut n: Vec<BigInt> = vec![BigInt::from(0), BigInt::from(1)];
    for d in 2..=max as u64 {
        let mut total = BigInt::from(0);
        for a in 1..d {
            let b = d - a;
            let ab = &n[a as usize] * &n[b as usize] * BigInt::from(a * a * b);
            let c = BigInt::from(b) * binomial(3 * d - 4, 3 * a - 2)
                - BigInt::from(a) * binomial(3 * d - 4, 3 * a - 1);
            total += ab * c;
        }
        n.push(total);
    }
    n.split_off(1)
}

/// Multisets of psi powers, sorted descending, with `n + Σr = weight`.
pub fn forms(weight: u32) -> Vec<Vec<u32>> {
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
    let mut out = Vec::new();
    go(weight, weight, &mut Vec::new(), &mut out);
    out
}
