//! Integer number theory used across the crate: deterministic primality for
//! 64-bit inputs, prime-power decomposition and small factorizations.

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The first twelve primes as witnesses are
/// sufficient for every n < 3.3 * 10^24, so in particular for all of u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
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

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Largest `r` with `r^k <= n`.
fn integer_root(n: u64, k: u32) -> u64 {
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow_le = |r: u64| -> bool {
        match r.checked_pow(k) {
            Some(v) => v <= n,
            None => false,
        }
    };
    while r > 0 && !pow_le(r) {
        r -= 1;
    }
    while pow_le(r + 1) {
        r += 1;
    }
    r
}

/// Decomposes `q = p^m` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    for m in (1..=63u32).rev() {
        let r = integer_root(q, m);
        if r >= 2 && r.checked_pow(m) == Some(q) && is_prime(r) {
            return Some((r, m));
        }
    }
    None
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// Distinct prime divisors of `n` by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All prime powers in `lo..=hi`, ascending.
pub fn prime_powers_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 {
        return Vec::new();
    }
    let lo = lo.max(2);
    let n = hi as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    for p in 2..=n {
        if !sieve[p] {
            continue;
        }
        let mut pk = p as u64;
        loop {
            if pk >= lo {
                out.push(pk);
            }
            match pk.checked_mul(p as u64) {
                Some(next) if next <= hi => pk = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}
