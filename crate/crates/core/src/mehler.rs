//! Three independent constructions of the same bivariate series, and the
//! cellwise comparison that checks them against each other.
//!
//! The series under test is the generating function of marital-extramarital
//! profiles, whose labelled coefficient at `(m, n)` is
//! `H_{m,n}(x) * H_{m,n}(y)`. It is built three ways:
//!
//! 1. [`lhs_series`] — directly from the Hermite pair products, cell by
//!    cell (closed formula, no series arithmetic).
//! 2. [`rhs_component_series`] — as `exp` of the sum of the seven
//!    connected-component series (the exponential-formula route).
//! 3. [`rhs_closed_series`] — from the closed form
//!    `(1 - x*y*t*s)^{-1} * exp((t + s + x*t*s + y*t*s) / (1 - x*y*t*s))`.
//!
//! Equality of all three on every cell is the bipartite Mehler identity;
//! [`verify`] compares exact polynomial coefficients and reports every
//! mismatch rather than stopping at the first.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::WeightPoly;
use crate::hermite::hermite_pair_poly;
use crate::profiles::all_components_series;
use crate::series::BiSeries;

/// The pair-product enumerator, tabulated cell by cell.
pub fn lhs_series(max_m: usize, max_n: usize) -> BiSeries {
    BiSeries::from_terms(
        max_m,
        max_n,
        (0..=max_m).flat_map(|m| (0..=max_n).map(move |n| (m, n, hermite_pair_poly(m, n)))),
    )
}

/// `exp` of the summed connected-component series.
pub fn rhs_component_series(max_m: usize, max_n: usize) -> BiSeries {
    all_components_series(max_m, max_n)
        .exp()
        .expect("component series has no constant term")
}

/// The closed form: with `g = (1 - x*y*t*s)^{-1}`, this is
/// `g * exp((t + s + (x + y)*t*s) * g)`.
pub fn rhs_closed_series(max_m: usize, max_n: usize) -> BiSeries {
    let doubled_edge = BiSeries::from_terms(
        max_m,
        max_n,
        [(1, 1, &WeightPoly::var_x() * &WeightPoly::var_y())],
    );
    let g = doubled_edge
        .inv_one_minus()
        .expect("doubled edge has no constant term");
    let numerator = BiSeries::from_terms(
        max_m,
        max_n,
        [
            (1, 0, WeightPoly::one()),
            (0, 1, WeightPoly::one()),
            (1, 1, &WeightPoly::var_x() + &WeightPoly::var_y()),
        ],
    );
    let exponent = &numerator * &g;
    let series = &g
        * &exponent
            .exp()
            .expect("exponent vanishes at the constant term");
    assert!(
        series.is_integral(),
        "closed-form series must have integer labelled coefficients"
    );
    series
}

/// Names for the three constructions, used in reports.
pub const FORM_NAMES: [&str; 3] = ["lhs", "component", "closed"];

/// One disagreeing cell: which two forms disagreed and both polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub m: usize,
    pub n: usize,
    /// The compared pair, e.g. `"lhs/closed"`.
    pub forms: String,
    pub expected: WeightPoly,
    pub actual: WeightPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyStatus {
    Pass,
    Fail,
}

/// Outcome of a three-way comparison: `status` is `Pass` exactly when
/// `mismatches` is empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_m: usize,
    pub max_n: usize,
    pub status: VerifyStatus,
    pub mismatches: Vec<Mismatch>,
    /// Time to build each form, keyed by [`FORM_NAMES`].
    pub elapsed_ms: BTreeMap<String, u128>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }

    /// Number of compared cells per form pair.
    pub fn cells(&self) -> usize {
        (self.max_m + 1) * (self.max_n + 1)
    }
}

/// Build all three series and compare every pair on every cell.
///
/// Mismatches are data, not errors: the report carries both polynomials
/// for each disagreeing cell.
pub fn verify(max_m: usize, max_n: usize) -> VerifyReport {
    let mut elapsed_ms = BTreeMap::new();
    let mut timed = |name: &str, build: &dyn Fn() -> BiSeries| {
        let start = Instant::now();
        let series = build();
        elapsed_ms.insert(name.to_string(), start.elapsed().as_millis());
        series
    };
    let lhs = timed("lhs", &|| lhs_series(max_m, max_n));
    let component = timed("component", &|| rhs_component_series(max_m, max_n));
    let closed = timed("closed", &|| rhs_closed_series(max_m, max_n));

    let mut mismatches = Vec::new();
    let pairs = [
        ("lhs/component", &lhs, &component),
        ("lhs/closed", &lhs, &closed),
        ("component/closed", &component, &closed),
    ];
    for (forms, expected, actual) in pairs {
        for m in 0..=max_m {
            for n in 0..=max_n {
                if expected.coeff(m, n) != actual.coeff(m, n) {
                    mismatches.push(Mismatch {
                        m,
                        n,
                        forms: forms.to_string(),
                        expected: expected.coeff(m, n).clone(),
                        actual: actual.coeff(m, n).clone(),
                    });
                }
            }
        }
    }

    let status = if mismatches.is_empty() {
        VerifyStatus::Pass
    } else {
        VerifyStatus::Fail
    };
    VerifyReport {
        max_m,
        max_n,
        status,
        mismatches,
        elapsed_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_poly;
    use num_rational::BigRational;

    fn p(s: &str) -> WeightPoly {
        s.parse().unwrap()
    }

    #[test]
    fn lhs_low_cells() {
        let lhs = lhs_series(2, 2);
        assert!(lhs.coeff(0, 0).is_one());
        assert_eq!(lhs.coeff(1, 1), &p("1 + x + y + x*y"));
        let expected = &p("1 + 4*x + 2*x^2") * &p("1 + 4*y + 2*y^2");
        assert_eq!(lhs.coeff(2, 2), &expected);
    }

    #[test]
    fn component_form_low_cells() {
        let series = rhs_component_series(2, 2);
        assert!(series.coeff(0, 0).is_one());
        assert!(series.coeff(1, 0).is_one());
        assert_eq!(series.coeff(1, 1), &p("1 + x + y + x*y"));
    }

    #[test]
    fn closed_form_low_cells() {
        let series = rhs_closed_series(2, 2);
        assert!(series.coeff(0, 0).is_one());
        assert!(series.coeff(1, 0).is_one());
        assert_eq!(series.coeff(1, 1), &p("1 + x + y + x*y"));
    }

    #[test]
    fn verify_trivial_bounds() {
        assert!(verify(0, 0).passed());
        assert!(verify(1, 0).passed());
    }

    #[test]
    fn verify_small_bounds() {
        let report = verify(4, 4);
        assert!(report.passed());
        assert!(report.mismatches.is_empty());
        assert_eq!(report.cells(), 25);
        assert_eq!(report.elapsed_ms.len(), 3);
    }

    #[test]
    fn specialization_to_marital_model() {
        let lhs = lhs_series(4, 4);
        for m in 0..=4 {
            for n in 0..=4 {
                assert_eq!(lhs.coeff(m, n).set_y_zero(), hermite_poly(m, n));
            }
        }
    }

    #[test]
    fn total_count_matches_enumeration_oracle() {
        use crate::profiles::{enumerate_marital, DEFAULT_MARITAL_LIMIT};
        let one = BigRational::from_integer(1.into());
        let lhs = lhs_series(4, 4);
        for m in 0..=4 {
            for n in 0..=4 {
                let enumerated = enumerate_marital(m as u32, n as u32, DEFAULT_MARITAL_LIMIT)
                    .unwrap()
                    .eval(&one, &one);
                let total = lhs.coeff(m, n).eval(&one, &one);
                assert_eq!(total, &enumerated * &enumerated, "cell ({m}, {n})");
            }
        }
    }

    #[test]
    fn report_json_schema() {
        let report = verify(1, 1);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["status"], "pass");
        assert_eq!(json["max_m"], 1);
        assert!(json["mismatches"].as_array().unwrap().is_empty());
        assert!(json["elapsed_ms"].is_object());
        let back: VerifyReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn mismatch_serialization_uses_poly_text() {
        let mismatch = Mismatch {
            m: 1,
            n: 1,
            forms: "lhs/closed".to_string(),
            expected: p("1 + x"),
            actual: p("1 + 2*x"),
        };
        let json = serde_json::to_value(&mismatch).unwrap();
        assert_eq!(json["expected"], "1 + x");
        assert_eq!(json["actual"], "1 + 2*x");
    }
}
