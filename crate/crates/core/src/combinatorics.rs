//! Exact factorials and binomial coefficients over big integers.
//!
//! Every count in this crate is exact; factorials overflow `u64` already at
//! 21!, so all values here are [`BigInt`]. Series and polynomial operations
//! build one table per call and index into it instead of recomputing
//! factorial products term by term.

use num_bigint::BigInt;
use num_traits::One;

/// Pascal's triangle up to a fixed row, built once per operation.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    /// Build all rows `0..=max_n`.
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        Self { rows }
    }

    /// `C(n, k)`; zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::ZERO;
        }
        self.rows[n][k].clone()
    }
}

/// Cumulative factorial table: `get(k)` is `k!` for `k <= max_n`.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    values: Vec<BigInt>,
}

impl FactorialTable {
    pub fn new(max_n: usize) -> Self {
        let mut values = Vec::with_capacity(max_n + 1);
        values.push(BigInt::one());
        for k in 1..=max_n {
            let next = &values[k - 1] * BigInt::from(k);
            values.push(next);
        }
        Self { values }
    }

    pub fn get(&self, k: usize) -> BigInt {
        self.values[k].clone()
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    FactorialTable::new(n).get(n)
}
