//! Dense univariate polynomials over a [`GfTable`], coefficients low to high.
//!
//! Only what modulus selection and tower construction need. The zero
//! polynomial is the empty vector; every result is trimmed.

use super::table::{decode_digits, GfTable};

pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &GfTable, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: &GfTable, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn mul(f: &GfTable, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem(f: &GfTable, a: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = f.inv(m[dm]).unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - dm];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let coef = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        q[shift] = coef;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] = f.sub(r[shift + i], f.mul(coef, c));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &GfTable, a: &[u32], m: &[u32]) -> Vec<u32> {
    div_rem(f, a, m).1
}

pub fn gcd(f: &GfTable, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    // normalise to monic
    if let Some(d) = degree(&a) {
        let inv = f.inv(a[d]).unwrap();
        a.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    a
}

pub fn pow_mod(f: &GfTable, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut result = rem(f, &[1], m);
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    result
}

/// Evaluates `a` at `x` by Horner's rule.
pub fn eval(f: &GfTable, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Monic irreducibility over `f`: `gcd(X^{s^i} - X, a) = 1` for `i <= deg/2`.
pub fn is_irreducible(f: &GfTable, a: &[u32]) -> bool {
    let a = trim(a.to_vec());
    let Some(d) = degree(&a) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=d / 2 {
        xp = pow_mod(f, &xp, f.size() as u64, &a);
        let g = gcd(f, &sub(f, &xp, &x), &a);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `d` whose low-to-high
/// coefficient tuple, read as a base-`|f|` integer, is smallest.
pub fn canonical_irreducible(f: &GfTable, d: usize) -> Vec<u32> {
    let s = f.size();
    let count = (s as u64).pow(d as u32);
    for k in 0..count {
        let mut cand = decode_digits(k as u32, s, d);
        cand.push(1);
        if is_irreducible(f, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
