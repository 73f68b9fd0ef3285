#![allow(dead_code)]

use permrf_core::gf::prime::prime_powers_between;
use permrf_core::{FieldTower, TowerSpec};

/// Every `(q, n)` with `n ≥ 2` and `q^n ≤ max_size`.
pub fn small_fields(max_size: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in prime_powers_between(2, max_size) {
        let mut n = 2;
        while q.pow(n) <= max_size {
            out.push((q, n));
            n += 1;
        }
    }
    out
}

pub fn tower(q: u64, n: u32) -> FieldTower {
    TowerSpec::for_q(q, n).unwrap().build(1 << 24).unwrap()
}

pub fn small_towers(max_size: u64) -> Vec<FieldTower> {
    small_fields(max_size).into_iter().map(|(q, n)| tower(q, n)).collect()
}
