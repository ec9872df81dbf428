//! Arithmetic in the prime field F_p. Values are stored reduced, in `0..p`.

/// Returns true when `p` is prime (trial division; p stays small here).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    // p < 2^31 is enforced at descriptor construction, so a*b fits in u64.
    (a * b) % p
}

/// Multiplicative inverse by Fermat's little theorem.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow(a, p - 2, p)
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Reduces a possibly negative literal into `0..p`.
pub fn reduce_i64(v: i64, p: u64) -> u64 {
    let m = (v % p as i64 + p as i64) as u64;
    m % p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(101));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(91));
    }

    #[test]
    fn field_ops_mod5() {
        let p = 5;
        assert_eq!(add(3, 4, p), 2);
        assert_eq!(sub(1, 3, p), 3);
        assert_eq!(mul(3, 4, p), 2);
        assert_eq!(inv(2, p), 3);
        assert_eq!(neg(2, p), 3);
        assert_eq!(reduce_i64(-7, p), 3);
        for a in 1..p {
            assert_eq!(mul(a, inv(a, p), p), 1);
        }
    }
}
