//! Small exact integer helpers shared by the algebraic modules.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `p^e`, or `None` on overflow.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

/// p-adic valuation of `n`, capped at `cap`; `n = 0` has valuation `cap`.
pub fn valuation_capped(mut n: u64, p: u64, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut v = 0;
    while v < cap && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Multiplicative order of `a` modulo `m`, given the order `group_order` of
/// a group containing `a` (any multiple of the true order works).
pub fn order_dividing(a: u64, m: u64, group_order: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut order = group_order;
    for q in prime_divisors(group_order) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_divisors() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(97), vec![97]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
    }

    #[test]
    fn valuation() {
        assert_eq!(valuation_capped(24, 2, 10), 3);
        assert_eq!(valuation_capped(0, 3, 4), 4);
        assert_eq!(valuation_capped(81, 3, 2), 2);
    }

    #[test]
    fn orders_by_powering() {
        for m in [5u64, 9, 25, 16, 49] {
            let phi = (1..m).filter(|&a| gcd(a, m) == 1).count() as u64;
            for a in (1..m).filter(|&a| gcd(a, m) == 1) {
                let brute = (1..=phi).find(|&k| pow_mod(a, k, m) == 1).unwrap();
                assert_eq!(order_dividing(a, m, phi), brute, "a={a} m={m}");
            }
        }
    }
}
