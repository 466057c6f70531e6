//! Small integer helpers: primality, prime powers, gcd/lcm.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// Prime-power parts of `n`, ascending by prime.
pub fn prime_power_parts(mut n: u64) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut q = 1;
            while n.is_multiple_of(d) {
                n /= d;
                q *= d;
            }
            parts.push(q);
        }
        d += 1;
    }
    if n > 1 {
        parts.push(n);
    }
    parts
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Exact integer logarithm: `Some(e)` when `n == base^e`.
pub fn exact_log(base: u64, mut n: u64) -> Option<u32> {
    if base < 2 || n == 0 {
        return None;
    }
    let mut e = 0;
    while n.is_multiple_of(base) {
        n /= base;
        e += 1;
    }
    (n == 1).then_some(e)
}
