//! Integer primality and factorization helpers.
//!
//! Deterministic Miller-Rabin below 2^64 (fixed witness set), Pollard rho
//! with Brent cycling above trial-division range. Inputs in this crate are
//! desk scale (divisor chains of finite rings, residue characteristics), so
//! nothing here is tuned for cryptographic sizes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const MR_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let small = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // write n-1 = d * 2^s
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of a positive integer, ascending primes.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factorization needs a positive input");
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let push = |p: BigInt, k: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += k;
        } else {
            out.push((p, k));
        }
    };
    // trial division
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1u32 << 16);
    while &d * &d <= rest && d <= limit {
        let mut k = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            k += 1;
        }
        if k > 0 {
            push(d.clone(), k, &mut out);
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    // what remains is 1, prime, or a product of primes beyond the trial range
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, 1, &mut out);
            continue;
        }
        let f = pollard_rho(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn pollard_rho(n: &BigInt) -> BigInt {
    debug_assert!(!is_prime(n) && n > &BigInt::from(3u32));
    if n.is_even() {
        return BigInt::from(2u32);
    }
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2u32);
        let mut y = BigInt::from(2u32);
        let mut d = BigInt::one();
        let f = |v: &BigInt| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// If `n = p^k` with `k >= 0`, return `k`.
pub fn perfect_power_of(n: &BigInt, p: &BigInt) -> Option<u32> {
    if !n.is_positive() || !p.is_positive() {
        return None;
    }
    let mut rest = n.clone();
    let mut k = 0;
    while !rest.is_one() {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return None;
        }
        rest = q;
        k += 1;
    }
    Some(k)
}

/// log base `b` of `n` when exact.
pub fn exact_log(n: &BigInt, b: &BigInt) -> Option<u32> {
    if b <= &BigInt::one() {
        return None;
    }
    perfect_power_of(n, b)
}
