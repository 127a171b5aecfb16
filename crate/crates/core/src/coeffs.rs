//! The coefficient triangle `a_{m,k}` of the arcsine derivatives.
//!
//! `arcsin^{(m)}(x)` is a sum of `a_{m,k} x^k (1−x²)^{−(m+k)/2 + ...}` over `k`
//! with `m − k` odd. The table built from the two seeds and the five row
//! recurrences is the canonical source of these numbers; the closed forms below
//! are compared against it.

use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::{double_factorial, factorial};
use crate::error::{invalid, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    // rows[m][k] for 0 ≤ k < m; zero where m − k is even.
    rows: Vec<Vec<BigUint>>,
}

impl CoeffTable {
    /// Builds every row up to `max_m` (at least the two seed rows).
    pub fn build(max_m: usize) -> Self {
        let seeds = CoeffTable {
            rows: vec![vec![], vec![BigUint::one()], vec![BigUint::zero(), BigUint::one()]],
        };
        seeds.extend(max_m)
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    /// `a_{m,k}`, zero outside the stored triangle or at even gaps.
    pub fn get(&self, m: usize, k: usize) -> BigUint {
        self.rows
            .get(m)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn get_rational(&self, m: usize, k: usize) -> Rational {
        Rational::from_integer(BigInt::from(self.get(m, k)))
    }

    /// All stored `(m, k, a_{m,k})` in row order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.rows.iter().enumerate().flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .filter(move |(k, _)| (m - k) % 2 == 1)
                .map(move |(k, a)| (m, k, a))
        })
    }

    /// A new table with rows up to `max_m`; `self` is left untouched.
    pub fn extend(&self, max_m: usize) -> Self {
        let mut rows = self.rows.clone();
        for m in rows.len()..=max_m {
            let prev = &rows[m - 1];
            let mut row = vec![BigUint::zero(); m];
            if m % 2 == 0 {
                let k = m / 2;
                row[2 * k - 1] = &prev[2 * k - 2] * (4 * k - 3);
                for i in 0..k - 1 {
                    row[2 * i + 1] =
                        &prev[2 * (i + 1)] * (2 * (i + 1)) + &prev[2 * i] * (2 * k + 2 * i - 1);
                }
            } else {
                let k = (m - 1) / 2;
                row[0] = prev[1].clone();
                row[2 * k] = &prev[2 * k - 1] * (4 * k - 1);
                for i in 1..k {
                    row[2 * i] =
                        &prev[2 * i + 1] * (2 * i + 1) + &prev[2 * i - 1] * (2 * k + 2 * i - 1);
                }
            }
            rows.push(row);
        }
        CoeffTable { rows }
    }
}

static SHARED: RwLock<Option<Arc<CoeffTable>>> = RwLock::new(None);

/// Process-wide table covering at least rows `0..=min_m`.
pub fn shared_table(min_m: usize) -> Arc<CoeffTable> {
    if let Some(t) = SHARED.read().expect("table lock").as_ref() {
        if t.max_m() >= min_m {
            return Arc::clone(t);
        }
    }
    let mut guard = SHARED.write().expect("table lock");
    let table = match guard.as_ref() {
        Some(t) if t.max_m() >= min_m => return Arc::clone(t),
        Some(t) => t.extend(min_m.max(2 * t.max_m())),
        None => CoeffTable::build(min_m.max(32)),
    };
    let table = Arc::new(table);
    *guard = Some(Arc::clone(&table));
    table
}

fn dfact(n: i64) -> BigUint {
    double_factorial(n).expect("argument ≥ −1")
}

/// `a_{k+1,k} = (2k−1)!!`.
pub fn band_k_plus_1(k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(invalid("band a_{k+1,k} needs k ≥ 1"));
    }
    Ok(dfact(2 * i64::from(k) - 1))
}

/// `a_{k+3,k} = (2k+1)!! (k+1)(k+2)/2`.
pub fn band_k_plus_3(k: u32) -> BigUint {
    let k64 = u64::from(k);
    dfact(2 * i64::from(k) + 1) * ((k64 + 1) * (k64 + 2)) / 2u32
}

/// `a_{k+5,k} = (2k+3)!! (k+1)(k+2)(k+3)(k+4)/8`.
pub fn band_k_plus_5(k: u32) -> BigUint {
    let k = u64::from(k);
    dfact(2 * k as i64 + 3) * ((k + 1) * (k + 2) * (k + 3) * (k + 4)) / 8u32
}

/// The published closed form `(m+k−2)!! (m−1)! / (2^{m−k−2} k!)` for `m ≥ k+2 ≥ 3`.
///
/// Agrees with the table only for gaps `m − k ∈ {3, 5}`.
pub fn paper_closed_form(m: u32, k: u32) -> Result<Rational> {
    if k < 1 || m < k + 2 {
        return Err(invalid(format!("closed form needs m ≥ k+2 ≥ 3, got m={m}, k={k}")));
    }
    let num = dfact(i64::from(m + k) - 2) * factorial(m - 1);
    let den = (BigUint::one() << (m - k - 2)) * factorial(k);
    Ok(Rational::new(num.into(), den.into()))
}

/// `(m+k−2)!! (m−1)! / ((m−k−1)!! k!)` for `m ≥ k+1` with `m − k` odd.
pub fn corrected_closed_form(m: u32, k: u32) -> Result<BigUint> {
    if m < k + 1 || (m - k) % 2 == 0 {
        return Err(invalid(format!(
            "a_{{m,k}} needs m ≥ k+1 and m − k odd, got m={m}, k={k}"
        )));
    }
    let num = dfact(i64::from(m + k) - 2) * factorial(m - 1);
    let den = dfact(i64::from(m - k) - 1) * factorial(k);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "corrected closed form not integral at ({m},{k})");
    Ok(q)
}
