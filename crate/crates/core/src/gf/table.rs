//! Table-driven arithmetic for one level of a field tower.
//!
//! Elements are canonical encodings: the base-`p` digits of the encoding are
//! the flattened coefficient vector, so addition is digitwise and
//! multiplication goes through discrete logarithms.

use super::poly;
use super::prime::prime_factors;

#[derive(Debug, Clone)]
pub struct GfTable {
    p: u32,
    digits: u32,
    size: u32,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < size - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
}

impl GfTable {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Self {
        let order = p as u64 - 1;
        let factors = prime_factors(order);
        let modpow = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            b %= p as u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p as u64;
                }
                b = b * b % p as u64;
                e >>= 1;
            }
            r
        };
        let gen = (1..p as u64)
            .find(|&g| factors.iter().all(|&r| modpow(g, order / r) != 1))
            .expect("every prime field has a primitive root");
        let mut exp = Vec::with_capacity(order as usize);
        let mut x = 1u64;
        for _ in 0..order {
            exp.push(x as u32);
            x = x * gen % p as u64;
        }
        Self::from_exp(p, 1, p, exp)
    }

    /// The extension `base[X]/(modulus)`; `modulus` must be monic irreducible.
    pub fn extension(base: &GfTable, modulus: &[u32]) -> Self {
        let d = modulus.len() - 1;
        let s = base.size;
        let size = s.pow(d as u32);
        if d == 1 {
            return base.clone();
        }
        let order = size as u64 - 1;
        let factors = prime_factors(order);
        let is_primitive = |cand: &[u32]| {
            factors.iter().all(|&r| {
                let pw = poly::pow_mod(base, cand, order / r, modulus);
                !(pw.len() == 1 && pw[0] == 1)
            })
        };
        let gen = (1..size)
            .map(|k| decode_digits(k, s, d))
            .find(|c| is_primitive(&poly::trim(c.clone())))
            .expect("multiplicative group of a finite field is cyclic");
        let gen = poly::trim(gen);
        let mut exp = Vec::with_capacity(order as usize);
        let mut x = vec![1u32];
        for _ in 0..order {
            exp.push(encode_digits(&x, s));
            x = poly::rem(base, &poly::mul(base, &x, &gen), modulus);
        }
        Self::from_exp(base.p, base.digits * d as u32, size, exp)
    }

    fn from_exp(p: u32, digits: u32, size: u32, exp: Vec<u32>) -> Self {
        let mut log = vec![0u32; size as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        GfTable {
            p,
            digits,
            size,
            exp,
            log,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = (p - a % p) % p;
            out += d * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let mut e = self.log[a as usize] + self.log[b as usize];
        if e >= order {
            e -= order;
        }
        self.exp[e as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.size - 1;
        let l = self.log[a as usize];
        Some(self.exp[((order - l) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % order)) % order) as usize]
    }

    /// `a * k` for an integer scalar `k` (repeated addition).
    pub fn scalar(&self, a: u32, k: u64) -> u32 {
        let k = (k % self.p as u64) as u32;
        let mut out = 0;
        for _ in 0..k {
            out = self.add(out, a);
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    #[allow(dead_code)]
    pub(crate) fn digits(&self) -> u32 {
        self.digits
    }
}

/// Splits `k` into `d` base-`s` digits, low to high.
pub fn decode_digits(mut k: u32, s: u32, d: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        out.push(k % s);
        k /= s;
    }
    out
}

pub fn encode_digits(coeffs: &[u32], s: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * s + c)
}
