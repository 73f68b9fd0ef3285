//! Small-integer number theory used while building fields.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^m` into `(p, m)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        m += 1;
    }
    Some((p, m))
}

/// Prime powers in `[lo, hi]`, ascending.
pub fn prime_powers_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_factors(360), [2, 3, 5]);
        assert_eq!(prime_powers_between(420, 432), [421, 431]);
    }
}
