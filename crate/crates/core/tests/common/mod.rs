//! Shared generators for property tests: small random polynomials and
//! series with the term sizes the engine sees at desk scale. Series are
//! kept sparse so that triple products at bounds (4, 4) stay quick.

use biegf::algebra::WeightPoly;
use biegf::series::BiSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Exponent pairs of total degree at most two.
pub const LOW_DEGREE_EXPONENTS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

/// Polynomial with up to three terms supported on [`LOW_DEGREE_EXPONENTS`]
/// and integer coefficients in `-2..=2` (repeated exponents accumulate and
/// may cancel).
pub fn arb_weight_poly() -> impl Strategy<Value = WeightPoly> {
    proptest::collection::vec((0usize..6, -2i64..=2), 0..=3).prop_map(|picks| {
        let mut poly = WeightPoly::zero();
        for (slot, c) in picks {
            let (i, j) = LOW_DEGREE_EXPONENTS[slot];
            poly += &WeightPoly::monomial_with(i, j, BigRational::from_integer(BigInt::from(c)));
        }
        poly
    })
}

/// Random series at fixed bounds with up to six populated cells.
pub fn arb_biseries(max_m: usize, max_n: usize) -> impl Strategy<Value = BiSeries> {
    let cells = (max_m + 1) * (max_n + 1);
    proptest::collection::vec((0..cells, arb_weight_poly()), 0..=6).prop_map(move |picks| {
        BiSeries::from_terms(
            max_m,
            max_n,
            picks
                .into_iter()
                .map(|(idx, poly)| (idx / (max_n + 1), idx % (max_n + 1), poly)),
        )
    })
}

/// Random series with a vanishing constant term, as `exp`, `inv_one_minus`
/// and `log_inv_one_minus` require.
pub fn arb_biseries_no_constant(max_m: usize, max_n: usize) -> impl Strategy<Value = BiSeries> {
    arb_biseries(max_m, max_n).prop_map(move |series| {
        let mut terms = Vec::new();
        for m in 0..=max_m {
            for n in 0..=max_n {
                if (m, n) != (0, 0) {
                    terms.push((m, n, series.coeff(m, n).clone()));
                }
            }
        }
        BiSeries::from_terms(max_m, max_n, terms)
    })
}
