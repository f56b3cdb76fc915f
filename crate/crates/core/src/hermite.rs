//! Bipartite Hermite polynomials `H_{m,n}(x)` and their pair products.
//!
//! `H_{m,n}(x)` is the weight enumerator of partial matchings between `m`
//! labelled men and `n` labelled women, each matched pair weighted `x`:
//!
//! ```text
//!     H_{m,n}(x) = sum_{k=0}^{min(m,n)} C(m,k) * C(n,k) * k! * x^k
//! ```
//!
//! (choose the `k` married men, the `k` married women, then match them up).
//! The generating function over all `(m, n)` is `exp(t + s + x*t*s)`: the
//! connected pieces of a matching are a lone man (`t`), a lone woman (`s`)
//! and a married couple (`x*t*s`).

use crate::algebra::WeightPoly;
use crate::combinatorics::BinomialTable;
use crate::series::BiSeries;

/// `H_{m,n}(x)` by the closed formula. Degree `min(m, n)`, constant term 1,
/// all coefficients positive integers.
pub fn hermite_poly(m: usize, n: usize) -> WeightPoly {
    let binom = BinomialTable::new(m.max(n));
    let mut poly = WeightPoly::zero();
    let mut k_factorial = num_bigint::BigInt::from(1);
    for k in 0..=m.min(n) {
        if k > 0 {
            k_factorial *= num_bigint::BigInt::from(k);
        }
        let count = binom.get(m, k) * binom.get(n, k) * &k_factorial;
        poly += &WeightPoly::monomial(k as u32, 0).scale_int(&count);
    }
    debug_assert!(poly.has_positive_integer_coeffs());
    poly
}

/// The series `exp(t + s + x*t*s)`, whose labelled coefficient at `(m, n)`
/// is `hermite_poly(m, n)`.
pub fn hermite_biegf(max_m: usize, max_n: usize) -> BiSeries {
    let connected = BiSeries::from_terms(
        max_m,
        max_n,
        [
            (1, 0, WeightPoly::one()),
            (0, 1, WeightPoly::one()),
            (1, 1, WeightPoly::var_x()),
        ],
    );
    // constant term is zero by construction, so exp cannot fail
    connected.exp().expect("seed series has no constant term")
}

/// `H_{m,n}(x) * H_{m,n}(y)`: the weight enumerator of independent
/// marriage and affair matchings on the same population. The second factor
/// is the same polynomial with the variables exchanged.
pub fn hermite_pair_poly(m: usize, n: usize) -> WeightPoly {
    let in_x = hermite_poly(m, n);
    let in_y = in_x.swap_vars();
    &in_x * &in_y
}
