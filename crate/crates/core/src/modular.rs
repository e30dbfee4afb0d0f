//! Word-size prime arithmetic and Chinese remaindering.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

#[inline]
pub fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    ((x as u128 * y as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(x: u64, y: u64, p: u64) -> u64 {
    let s = x + y;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, in decreasing order.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(candidate) {
            out.push(candidate);
        }
        candidate -= 2;
    }
    out
}

/// Number of primes from [`primes`] whose product exceeds `2 * bound`, so
/// that any integer of absolute value at most `bound` is recovered from its
/// residues.
pub fn primes_for_bound(bound: &BigUint) -> usize {
    let bits = bound.bits() as usize + 2;
    // every prime is above 2^61
    bits.div_ceil(61).max(1)
}

pub fn residue(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((x % &m) + &m) % &m;
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

/// Garner reconstruction to the symmetric range `(-M/2, M/2]`.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    debug_assert_eq!(residues.len(), primes.len());
    // mixed-radix digits
    let k = primes.len();
    let mut digits: Vec<u64> = Vec::with_capacity(k);
    for i in 0..k {
        let p = primes[i];
        let mut x = residues[i] % p;
        for j in 0..i {
            let d = digits[j] % p;
            x = (x + p - d) % p;
            x = mul_mod(x, inv_mod(primes[j] % p, p), p);
        }
        digits.push(x);
    }
    let mut value = BigUint::zero();
    let mut radix = BigUint::one();
    let mut modulus = BigUint::one();
    for (i, &d) in digits.iter().enumerate() {
        value += &radix * d;
        radix *= primes[i];
        modulus *= primes[i];
    }
    let half = &modulus >> 1;
    if value > half {
        BigInt::from_biguint(Sign::Minus, modulus - value)
    } else {
        BigInt::from_biguint(Sign::Plus, value)
    }
}
