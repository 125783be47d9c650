//! Polynomial helpers for the quotient-ring builder: exact coefficients of
//! the shifted cyclotomic polynomials, the Eisenstein criterion over Z/p^K,
//! and a deterministic search for irreducible polynomials over F_p.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::ensure_prime;
use crate::error::{Error, Result};

/// Exact coefficients (ascending degree) of the p^m-th cyclotomic
/// polynomial evaluated at X+1, i.e. the sum of (X+1)^(i*p^(m-1)) for
/// i = 0..p-1. The result is monic of degree (p-1)p^(m-1) and Eisenstein
/// at p.
pub fn cyclotomic_eisenstein(p: u64, m: u32) -> Result<Vec<BigUint>> {
    ensure_prime(p)?;
    if m < 1 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    let step = p
        .checked_pow(m - 1)
        .ok_or_else(|| Error::Overflow(format!("p^(m-1) with p={p}, m={m}")))?;
    let degree = step
        .checked_mul(p - 1)
        .and_then(|d| usize::try_from(d).ok())
        .ok_or_else(|| Error::Overflow("cyclotomic degree".into()))?;

    let mut coeffs = vec![BigUint::zero(); degree + 1];
    for i in 0..p {
        let exponent = i * step;
        // binomial row of (X+1)^exponent, built incrementally
        let mut binom = BigUint::one();
        coeffs[0] += &binom;
        for k in 0..exponent {
            binom = binom * (exponent - k) / (k + 1);
            coeffs[(k + 1) as usize] += &binom;
        }
    }
    debug_assert!(coeffs.last().is_some_and(One::is_one));
    Ok(coeffs)
}

/// Eisenstein criterion for a monic polynomial with canonical coefficients
/// in [0, p^K): every non-leading coefficient divisible by p and the
/// constant term not divisible by p^2. Needs K >= 2 to be decidable.
pub fn check_eisenstein(coeffs: &[BigUint], p: u64, precision: u32) -> Result<bool> {
    if precision < 2 {
        return Err(Error::Precision {
            required: 2,
            actual: precision,
        });
    }
    if coeffs.len() < 2 {
        return Err(Error::Domain("polynomial must have degree >= 1".into()));
    }
    if !coeffs.last().unwrap().is_one() {
        return Err(Error::Domain("polynomial must be monic".into()));
    }
    let p_big = BigUint::from(p);
    let p_sq = &p_big * &p_big;
    let lower_in_p = coeffs[..coeffs.len() - 1]
        .iter()
        .all(|c| (c % &p_big).is_zero());
    let constant_exact = !(&coeffs[0] % &p_sq).is_zero();
    Ok(lower_in_p && constant_exact)
}

/// Remainder of monic division over F_p; used only for divisibility tests.
fn fp_divides(divisor: &[u64], target: &[u64], p: u64) -> bool {
    debug_assert_eq!(*divisor.last().unwrap(), 1, "divisor must be monic");
    let mut rem: Vec<u64> = target.to_vec();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (k, &g) in divisor.iter().enumerate().take(dd) {
                let pos = top - dd + k;
                rem[pos] = (rem[pos] + p - (lead * g) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// True when the monic polynomial (ascending coefficients, entries < p) has
/// no monic divisor of degree between 1 and deg/2.
pub fn fp_irreducible(coeffs: &[u64], p: u64) -> bool {
    let degree = coeffs.len() - 1;
    debug_assert!(degree >= 1 && coeffs[degree] == 1);
    for t in 1..=degree / 2 {
        let mut counter = vec![0u64; t];
        loop {
            let mut divisor = counter.clone();
            divisor.push(1);
            if fp_divides(&divisor, coeffs, p) {
                return false;
            }
            // advance the base-p counter
            let mut pos = 0;
            loop {
                if pos == t {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] < p {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == t {
                break;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of the given degree over F_p, in
/// lexicographic order of the low-coefficient counter. Degree 1 yields Y.
pub fn find_irreducible(p: u64, degree: usize) -> Result<Vec<u64>> {
    ensure_prime(p)?;
    if degree < 1 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    let total = p
        .checked_pow(degree as u32)
        .ok_or_else(|| Error::Overflow("irreducible search space".into()))?;
    for k in 0..total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = k;
        for _ in 0..degree {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        if fp_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    // every finite field has irreducibles in all degrees
    Err(Error::Domain(format!(
        "no irreducible polynomial of degree {degree} over F_{p}"
    )))
}
