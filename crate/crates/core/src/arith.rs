//! Elementary number theory on machine integers and big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Writes `q = p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    for e in (1..=63u32).rev() {
        let root = integer_root(q, e);
        if root >= 2 && root.checked_pow(e) == Some(q) && is_prime(root) {
            return Some((root, e));
        }
    }
    None
}

fn integer_root(n: u64, k: u32) -> u64 {
    if k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    // float estimate is within one of the true root for u64 inputs
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Euler's totient: the number of units modulo `n`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    factorize(n).into_iter().fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Least `k >= 1` with `a^k = 1 (mod n)`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("modulus must be >= 2, got {n}")));
    }
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let a = a % n;
    let mut order = euler_phi(n);
    for (p, _) in factorize(order) {
        while order.is_multiple_of(p) && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Largest `v` with `ell^v | value`.
pub fn l_adic_valuation(value: &BigInt, ell: u64) -> Result<u32> {
    if value.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if ell < 2 {
        return Err(Error::InvalidPrime { value: ell, expected: "a prime" });
    }
    let ell = BigInt::from(ell);
    let mut v = 0;
    let mut n = value.clone();
    loop {
        let (q, r) = n.div_rem(&ell);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// Machine-integer convenience wrapper around [`l_adic_valuation`].
pub fn valuation_u64(value: u64, ell: u64) -> Result<u32> {
    l_adic_valuation(&BigInt::from(value), ell)
}

/// Smallest unit modulo `n` whose multiplicative order is exactly `order`.
pub fn smallest_unit_of_order(order: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return (order == 1).then_some(0);
    }
    (1..n).find(|&c| c.gcd(&n) == 1 && multiplicative_order(c, n).ok() == Some(order))
}

pub fn big_pow(base: u64, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    let b = BigInt::from(base);
    for _ in 0..exp {
        acc *= &b;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    fn brute_order(a: u64, n: u64) -> u64 {
        let mut x = a % n;
        let mut k = 1;
        while x != 1 {
            x = x * a % n;
            k += 1;
        }
        k
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(12), 4);
        for n in 1..500 {
            assert_eq!(euler_phi(n), brute_phi(n), "n = {n}");
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(17, 13).unwrap(), 6);
        for n in 2..50 {
            assert_eq!(multiplicative_order(1, n).unwrap(), 1);
        }
        assert_eq!(multiplicative_order(6, 9), Err(Error::NotCoprime { a: 6, n: 9 }));
    }

    #[test]
    fn order_matches_brute_force_and_divides_phi() {
        for n in 2..=200u64 {
            for a in 1..n {
                if a.gcd(&n) != 1 {
                    continue;
                }
                let k = multiplicative_order(a, n).unwrap();
                assert_eq!(k, brute_order(a, n));
                assert_eq!(euler_phi(n) % k, 0);
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation_u64(63, 7).unwrap(), 1);
        assert_eq!(valuation_u64(1, 7).unwrap(), 0);
        assert_eq!(valuation_u64(343, 7).unwrap(), 3);
        assert_eq!(l_adic_valuation(&BigInt::from(-49), 7).unwrap(), 2);
        assert_eq!(valuation_u64(0, 7), Err(Error::ZeroValuation));
    }

    #[test]
    fn primality_and_prime_powers() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes.len(), 25);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(1 << 40), Some((2, 40)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_unit_of_order(6, 7), Some(3));
        assert_eq!(smallest_unit_of_order(1, 7), Some(1));
        assert_eq!(smallest_unit_of_order(10, 11), Some(2));
    }
}
