//! Integer sequences used by the derivative formulas.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n!!` with the empty-product conventions `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(invalid(format!("double factorial of {n}")));
    }
    let mut acc = BigUint::one();
    let mut i = n;
    while i > 1 {
        acc *= i as u64;
        i -= 2;
    }
    Ok(acc)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Lah number `L(n, k) = C(n−1, k−1) · n!/k!`.
pub fn lah(n: u32, k: u32) -> Result<BigUint> {
    if k < 1 || k > n {
        return Err(invalid(format!("lah({n}, {k}) needs 1 ≤ k ≤ n")));
    }
    let ratio = (k + 1..=n).fold(BigUint::one(), |acc, i| acc * i);
    Ok(binomial(u64::from(n - 1), i64::from(k - 1)) * ratio)
}

/// Stirling number of the second kind from the alternating sum
/// `(1/k!) Σ (−1)^{k−ℓ} C(k, ℓ) ℓ^n`.
pub fn stirling2(n: u32, k: u32) -> Result<BigUint> {
    if k < 1 || k > n {
        return Err(invalid(format!("stirling2({n}, {k}) needs 1 ≤ k ≤ n")));
    }
    let mut sum = BigInt::zero();
    for l in 0..=k {
        let term = BigInt::from(binomial(u64::from(k), i64::from(l))) * BigInt::from(l).pow(n);
        if (k - l) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(factorial(k)));
    assert!(r.is_zero(), "alternating sum for S({n},{k}) not divisible by {k}!");
    Ok(q.to_biguint().expect("Stirling numbers are nonnegative"))
}

fn tan_cot_sum(p: u32, q: u32) -> BigInt {
    // p − q is odd here, so the half-integers below are integers.
    let half = (p - q - 1) / 2;
    let mut sum = BigInt::zero();
    for l in 0..=half {
        let term = BigInt::from(binomial(u64::from(p) + 1, i64::from(l)))
            * BigInt::from(half - l + 1).pow(p);
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

fn check_pq(p: u32, q: u32) -> Result<()> {
    if p == 0 || p <= q {
        return Err(invalid(format!("need p > q ≥ 0 and p ≥ 1, got p={p}, q={q}")));
    }
    Ok(())
}

/// Coefficient `α_{p,q}` of the multiple-angle expansion of `tan^{(p)}`.
pub fn alpha_pq(p: u32, q: u32) -> Result<BigInt> {
    check_pq(p, q)?;
    if (p - q) % 2 == 0 {
        return Ok(BigInt::zero());
    }
    let even_p = u32::from(p % 2 == 0);
    let negative = ((q - even_p) / 2) % 2 == 1;
    let v: BigInt = tan_cot_sum(p, q) * 2;
    Ok(if negative { -v } else { v })
}

/// Coefficient `β_{p,q}` of the multiple-angle expansion of `cot^{(p)}`.
pub fn beta_pq(p: u32, q: u32) -> Result<BigInt> {
    check_pq(p, q)?;
    if (p - q) % 2 == 0 {
        return Ok(BigInt::zero());
    }
    let v: BigInt = tan_cot_sum(p, q) * 2;
    Ok(if p % 2 == 1 { -v } else { v })
}
