//! Truncated bivariate exponential generating functions.
//!
//! A [`BiSeries`] with bounds `(max_m, max_n)` stores a dense table of
//! [`WeightPoly`] coefficients `A[m][n]` for `0 <= m <= max_m`,
//! `0 <= n <= max_n`, read as
//!
//! ```text
//!     sum_{m,n} A[m][n] * t^m * s^n / (m! * n!)
//! ```
//!
//! so the stored entry is the *labelled* count (the weight enumerator of
//! structures on `m` labelled men and `n` labelled women), not the ordinary
//! power-series coefficient. Products follow the binomial convolution
//!
//! ```text
//!     C[m][n] = sum_{a<=m} sum_{b<=n} C(m,a) * C(n,b) * A[a][b] * B[m-a][n-b]
//! ```
//!
//! which is exactly how labelled structures on a shared population compose:
//! choose which labels each factor takes. Truncation is exact — degrees in
//! `t` and `s` are nonnegative and additive, so every retained output cell
//! depends only on retained input cells.
//!
//! `exp`, `inv_one_minus` and `log_inv_one_minus` are power sums
//! `sum f^k / k!`, `sum u^k` and `sum u^k / k`; they require a vanishing
//! constant term, which makes the sum finite: `f^k` contributes nothing
//! below total degree `k`, so `k` ranges over `0..=max_m + max_n`.

use std::ops::{Add, Mul};

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::WeightPoly;
use crate::combinatorics::{BinomialTable, FactorialTable};

/// Error cases for series operations whose preconditions involve data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// `exp`, `inv_one_minus` and `log_inv_one_minus` need `A[0][0] = 0`.
    #[error("series has a nonzero constant term: {0}")]
    NonzeroConstantTerm(String),
    /// An operation that must preserve integer coefficients produced a
    /// fractional one. This indicates a defect in the engine, never a
    /// property of valid input.
    #[error("integrality violation at cell ({m}, {n}): {coeff}")]
    IntegralityViolation { m: usize, n: usize, coeff: String },
}

/// Truncated bivariate EGF with labelled [`WeightPoly`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    max_m: usize,
    max_n: usize,
    // coeffs[m][n], dense, fully populated
    coeffs: Vec<Vec<WeightPoly>>,
}

impl BiSeries {
    /// The zero series at the given truncation bounds.
    pub fn zero(max_m: usize, max_n: usize) -> Self {
        Self {
            max_m,
            max_n,
            coeffs: vec![vec![WeightPoly::zero(); max_n + 1]; max_m + 1],
        }
    }

    /// The multiplicative identity: `A[0][0] = 1`, everything else zero.
    pub fn one(max_m: usize, max_n: usize) -> Self {
        let mut s = Self::zero(max_m, max_n);
        s.coeffs[0][0] = WeightPoly::one();
        s
    }

    /// Build a series from labelled coefficients. Terms beyond the bounds
    /// are truncated away; repeated cells accumulate.
    pub fn from_terms<I>(max_m: usize, max_n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, WeightPoly)>,
    {
        let mut s = Self::zero(max_m, max_n);
        for (m, n, poly) in terms {
            if m <= max_m && n <= max_n {
                s.coeffs[m][n] += &poly;
            }
        }
        s
    }

    /// The series of the single monomial `poly * t^m * s^n` (ordinary
    /// form), i.e. labelled coefficient `m! * n! * poly` at `(m, n)`.
    pub fn monomial_ordinary(
        max_m: usize,
        max_n: usize,
        m: usize,
        n: usize,
        poly: WeightPoly,
    ) -> Self {
        let facts = FactorialTable::new(m.max(n));
        let labelled = poly.scale_int(&(facts.get(m) * facts.get(n)));
        Self::from_terms(max_m, max_n, [(m, n, labelled)])
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Labelled coefficient at `(m, n)`.
    ///
    /// Panics when the cell is outside the truncation bounds; those
    /// coefficients were never computed and reading one is a caller bug.
    pub fn coeff(&self, m: usize, n: usize) -> &WeightPoly {
        assert!(
            m <= self.max_m && n <= self.max_n,
            "coefficient ({m}, {n}) is out of range for bounds ({}, {})",
            self.max_m,
            self.max_n
        );
        &self.coeffs[m][n]
    }

    /// Labelled coefficient at `(m, n)`, `None` when out of range.
    pub fn get(&self, m: usize, n: usize) -> Option<&WeightPoly> {
        self.coeffs.get(m).and_then(|row| row.get(n))
    }

    /// Every cell scaled by `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|p| p.scale(c)).collect())
            .collect();
        Self {
            max_m: self.max_m,
            max_n: self.max_n,
            coeffs,
        }
    }

    /// Restrict to smaller bounds, dropping the outer cells.
    pub fn truncated(&self, max_m: usize, max_n: usize) -> Self {
        assert!(
            max_m <= self.max_m && max_n <= self.max_n,
            "cannot truncate bounds ({}, {}) to larger bounds ({max_m}, {max_n})",
            self.max_m,
            self.max_n
        );
        let coeffs = self.coeffs[..=max_m]
            .iter()
            .map(|row| row[..=max_n].to_vec())
            .collect();
        Self {
            max_m,
            max_n,
            coeffs,
        }
    }

    /// True when every cell is an integer polynomial.
    pub fn is_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().all(WeightPoly::is_integral))
    }

    fn assert_same_bounds(&self, other: &Self, op: &str) {
        assert!(
            self.max_m == other.max_m && self.max_n == other.max_n,
            "{op} requires equal truncation bounds, got ({}, {}) and ({}, {})",
            self.max_m,
            self.max_n,
            other.max_m,
            other.max_n
        );
    }

    fn require_zero_constant(&self) -> Result<(), SeriesError> {
        if self.coeffs[0][0].is_zero() {
            Ok(())
        } else {
            Err(SeriesError::NonzeroConstantTerm(
                self.coeffs[0][0].to_string(),
            ))
        }
    }

    /// `sum_{k=0}^{max_m+max_n} self^k / k!`, the truncated exponential.
    ///
    /// Requires a vanishing constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.require_zero_constant()?;
        let order = self.max_m + self.max_n;
        let facts = FactorialTable::new(order);
        let mut acc = Self::one(self.max_m, self.max_n);
        let mut power = Self::one(self.max_m, self.max_n);
        for k in 1..=order {
            power = &power * self;
            let coeff = BigRational::new(1.into(), facts.get(k));
            acc = &acc + &power.scale(&coeff);
        }
        Ok(acc)
    }

    /// `sum_{k=0}^{max_m+max_n} self^k`, the truncated `(1 - self)^{-1}`.
    pub fn inv_one_minus(&self) -> Result<Self, SeriesError> {
        self.require_zero_constant()?;
        let order = self.max_m + self.max_n;
        let mut acc = Self::one(self.max_m, self.max_n);
        let mut power = Self::one(self.max_m, self.max_n);
        for _ in 1..=order {
            power = &power * self;
            acc = &acc + &power;
        }
        Ok(acc)
    }

    /// `sum_{k=1}^{max_m+max_n} self^k / k`, the truncated `-log(1 - self)`.
    ///
    /// When the input has integer labelled coefficients the result must too:
    /// the labelled count of `self^k` at any cell counts ordered `k`-tuples
    /// of structures with disjoint nonempty label blocks, and rotating the
    /// blocks acts freely, so `k` divides each count. A fractional result is
    /// therefore reported as an engine defect.
    pub fn log_inv_one_minus(&self) -> Result<Self, SeriesError> {
        self.require_zero_constant()?;
        let order = self.max_m + self.max_n;
        let mut acc = Self::zero(self.max_m, self.max_n);
        let mut power = Self::one(self.max_m, self.max_n);
        for k in 1..=order {
            power = &power * self;
            let coeff = BigRational::new(1.into(), k.into());
            acc = &acc + &power.scale(&coeff);
        }
        if self.is_integral() {
            if let Some((m, n)) = acc.first_fractional_cell() {
                return Err(SeriesError::IntegralityViolation {
                    m,
                    n,
                    coeff: acc.coeffs[m][n].to_string(),
                });
            }
        }
        Ok(acc)
    }

    fn first_fractional_cell(&self) -> Option<(usize, usize)> {
        for (m, row) in self.coeffs.iter().enumerate() {
            for (n, poly) in row.iter().enumerate() {
                if !poly.is_integral() {
                    return Some((m, n));
                }
            }
        }
        None
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;

    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.assert_same_bounds(rhs, "series addition");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a + b).collect())
            .collect();
        BiSeries {
            max_m: self.max_m,
            max_n: self.max_n,
            coeffs,
        }
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;

    /// Binomial convolution of labelled coefficients.
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        self.assert_same_bounds(rhs, "series multiplication");
        let binom = BinomialTable::new(self.max_m.max(self.max_n));
        let mut out = BiSeries::zero(self.max_m, self.max_n);
        for m in 0..=self.max_m {
            for n in 0..=self.max_n {
                let mut cell = WeightPoly::zero();
                for a in 0..=m {
                    for b in 0..=n {
                        let p = &self.coeffs[a][b];
                        let q = &rhs.coeffs[m - a][n - b];
                        if p.is_zero() || q.is_zero() {
                            continue;
                        }
                        let ways = binom.get(m, a) * binom.get(n, b);
                        cell += &(p * q).scale_int(&ways);
                    }
                }
                out.coeffs[m][n] = cell;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(s: &str) -> WeightPoly {
        s.parse().unwrap()
    }

    /// `e^t` truncated: every `A[m][0] = 1`.
    fn exp_t(max_m: usize, max_n: usize) -> BiSeries {
        BiSeries::from_terms(max_m, max_n, [(1, 0, WeightPoly::one())])
            .exp()
            .unwrap()
    }

    #[test]
    fn one_and_zero() {
        let one = BiSeries::one(2, 2);
        assert!(one.coeff(0, 0).is_one());
        assert!(one.coeff(1, 1).is_zero());
        assert_eq!(BiSeries::zero(1, 1), BiSeries::zero(1, 1));
    }

    #[test]
    fn add_identity_and_terms() {
        let f = BiSeries::from_terms(2, 2, [(1, 0, WeightPoly::one())]);
        let g = BiSeries::from_terms(2, 2, [(0, 1, WeightPoly::one())]);
        let sum = &f + &g;
        assert!(sum.coeff(1, 0).is_one());
        assert!(sum.coeff(0, 1).is_one());
        assert_eq!(&f + &BiSeries::zero(2, 2), f);
    }

    #[test]
    #[should_panic(expected = "equal truncation bounds")]
    fn add_bound_mismatch_panics() {
        let _ = &BiSeries::one(2, 2) + &BiSeries::one(2, 3);
    }

    #[test]
    fn mul_identity() {
        let f = BiSeries::from_terms(3, 3, [(1, 1, p("x")), (2, 0, p("y"))]);
        assert_eq!(&f * &BiSeries::one(3, 3), f);
    }

    #[test]
    fn mul_exponentials() {
        // e^t * e^s has every labelled coefficient equal to 1
        let et = exp_t(3, 3);
        let es = BiSeries::from_terms(3, 3, [(0, 1, WeightPoly::one())])
            .exp()
            .unwrap();
        let product = &et * &es;
        for m in 0..=3 {
            for n in 0..=3 {
                assert!(product.coeff(m, n).is_one(), "cell ({m}, {n})");
            }
        }
        // and equals exp(t + s) directly
        let t_plus_s =
            BiSeries::from_terms(3, 3, [(1, 0, WeightPoly::one()), (0, 1, WeightPoly::one())]);
        assert_eq!(product, t_plus_s.exp().unwrap());
    }

    #[test]
    fn mul_single_term_square() {
        let f = BiSeries::from_terms(2, 2, [(1, 1, p("x"))]);
        let sq = &f * &f;
        assert_eq!(sq.coeff(2, 2), &p("4*x^2"));
        assert!(sq.coeff(1, 1).is_zero());
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = BiSeries::zero(2, 2).exp().unwrap();
        assert_eq!(e, BiSeries::one(2, 2));
    }

    #[test]
    fn exp_t_rows_are_one() {
        let e = exp_t(4, 2);
        for m in 0..=4 {
            assert!(e.coeff(m, 0).is_one());
        }
        assert!(e.coeff(1, 1).is_zero());
    }

    #[test]
    fn exp_hermite_seed() {
        // exp(t + s + x*t*s) at (1,1) is 1 + x
        let seed = BiSeries::from_terms(
            2,
            2,
            [
                (1, 0, WeightPoly::one()),
                (0, 1, WeightPoly::one()),
                (1, 1, p("x")),
            ],
        );
        let e = seed.exp().unwrap();
        assert_eq!(e.coeff(1, 1), &p("1 + x"));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let err = BiSeries::one(2, 2).exp().unwrap_err();
        assert!(matches!(err, SeriesError::NonzeroConstantTerm(_)));
    }

    #[test]
    fn inv_one_minus_geometric() {
        let u = BiSeries::from_terms(2, 2, [(1, 1, p("x*y"))]);
        let inv = u.inv_one_minus().unwrap();
        assert!(inv.coeff(0, 0).is_one());
        assert_eq!(inv.coeff(1, 1), &p("x*y"));
        assert_eq!(inv.coeff(2, 2), &p("4*x^2*y^2"));
        assert_eq!(
            BiSeries::zero(2, 2).inv_one_minus().unwrap(),
            BiSeries::one(2, 2)
        );
    }

    #[test]
    fn inverse_property() {
        // (1 - u) * inv_one_minus(u) = 1 up to truncation
        let u = BiSeries::from_terms(3, 3, [(1, 1, p("x*y")), (1, 0, p("2"))]);
        let one_minus_u = &BiSeries::one(3, 3) + &u.scale(&-BigRational::one());
        assert_eq!(
            &one_minus_u * &u.inv_one_minus().unwrap(),
            BiSeries::one(3, 3)
        );
    }

    #[test]
    fn log_inv_one_minus_cycle_counts() {
        let u = BiSeries::from_terms(2, 2, [(1, 1, p("x*y"))]);
        let log = u.log_inv_one_minus().unwrap();
        assert!(log.coeff(0, 0).is_zero());
        assert_eq!(log.coeff(1, 1), &p("x*y"));
        assert_eq!(log.coeff(2, 2), &p("2*x^2*y^2"));
        let zero_log = BiSeries::zero(2, 2).log_inv_one_minus().unwrap();
        assert_eq!(zero_log, BiSeries::zero(2, 2));
    }

    #[test]
    fn exp_log_roundtrip() {
        let u = BiSeries::from_terms(3, 3, [(1, 1, p("x*y")), (0, 1, p("1"))]);
        let via_log = u.log_inv_one_minus().unwrap().exp().unwrap();
        assert_eq!(via_log, u.inv_one_minus().unwrap());
    }

    #[test]
    fn monomial_ordinary_labels() {
        // x*y * t^2 * s has labelled coefficient 2! * 1! * x*y at (2, 1)
        let s = BiSeries::monomial_ordinary(3, 3, 2, 1, p("x*y"));
        assert_eq!(s.coeff(2, 1), &p("2*x*y"));
        assert!(s.coeff(1, 1).is_zero());
    }

    #[test]
    fn truncation_drops_out_of_range_terms() {
        let s = BiSeries::from_terms(1, 1, [(2, 0, WeightPoly::one())]);
        assert_eq!(s, BiSeries::zero(1, 1));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn coeff_out_of_range_panics() {
        let s = BiSeries::one(2, 2);
        let _ = s.coeff(3, 0);
    }

    #[test]
    fn truncated_view() {
        let u = BiSeries::from_terms(3, 3, [(1, 1, p("x*y"))]);
        let big = u.inv_one_minus().unwrap();
        let small = big.truncated(2, 2);
        assert_eq!(small.coeff(2, 2), &p("4*x^2*y^2"));
        assert_eq!(small.max_m(), 2);
    }
}
