//! Small integer helpers shared across modules.

use crate::error::{Error, Result};

/// Deterministic primality test by trial division. Fine for the word-sized
/// primes this crate deals with.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut k = 5u64;
    while k.checked_mul(k).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(k) || n.is_multiple_of(k + 2) {
            return false;
        }
        k += 6;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Ceiling division for positive denominators.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    debug_assert!(b > 0);
    a.div_ceil(b)
}

/// Ramification index (p-1)·p^(m-1) of the p^m-th cyclotomic extension.
pub fn cyclotomic_ramification(p: u64, m: u32) -> Result<u64> {
    ensure_prime(p)?;
    if m < 1 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    p.checked_pow(m - 1)
        .and_then(|q| q.checked_mul(p - 1))
        .ok_or_else(|| Error::Overflow(format!("(p-1)p^(m-1) with p={p}, m={m}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 7919];
        for p in primes {
            assert!(is_prime(p), "{p} should be prime");
        }
        for n in [0u64, 1, 4, 9, 15, 21, 91, 7917] {
            assert!(!is_prime(n), "{n} should be composite");
        }
    }

    #[test]
    fn ramification_values() {
        assert_eq!(cyclotomic_ramification(3, 1).unwrap(), 2);
        assert_eq!(cyclotomic_ramification(3, 2).unwrap(), 6);
        assert_eq!(cyclotomic_ramification(2, 2).unwrap(), 2);
        assert_eq!(cyclotomic_ramification(5, 1).unwrap(), 4);
        assert!(matches!(
            cyclotomic_ramification(4, 1),
            Err(Error::NotPrime(4))
        ));
    }
}
