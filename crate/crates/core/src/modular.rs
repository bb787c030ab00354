//! Small modular-arithmetic helpers for residue constraints.

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x mod q` in `0..q`.
pub fn reduce(x: i64, q: u64) -> u64 {
    x.rem_euclid(q as i64) as u64
}

pub fn coprime(a: i64, q: u64) -> bool {
    gcd(reduce(a, q), q) == 1
}

/// Inverse of `a` modulo `q`, if it exists.
pub fn inverse(a: i64, q: u64) -> Option<u64> {
    let a = reduce(a, q) as i128;
    let q = q as i128;
    let (mut old_r, mut r) = (a, q);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(q) as u64)
}

/// `(a * c1 + b * c2) mod q`.
pub fn combine(a: i64, b: i64, c1: u64, c2: u64, q: u64) -> u64 {
    let v = reduce(a, q) as u128 * c1 as u128 + reduce(b, q) as u128 * c2 as u128;
    (v % q as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(reduce(-1, 5), 4);
        assert_eq!(inverse(3, 7), Some(5));
        assert_eq!(inverse(2, 4), None);
        assert_eq!(inverse(-1, 5), Some(4));
        assert!(coprime(-3, 4));
        assert!(!coprime(6, 4));
        assert_eq!(combine(2, -1, 3, 4, 5), 2);
    }

    proptest! {
        #[test]
        fn inverse_inverts(a in -50i64..50, q in 2u64..30) {
            match inverse(a, q) {
                Some(inv) => prop_assert_eq!(reduce(a, q) * inv % q, 1 % q),
                None => prop_assert!(gcd(reduce(a, q), q) != 1),
            }
        }
    }
}
