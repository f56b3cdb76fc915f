//! Exact calculus for bivariate exponential generating functions, built to
//! check the two-sex Mehler identity for the bipartite Hermite polynomials
//! by exact coefficient comparison.
//!
//! The pieces, bottom up:
//!
//! - [`algebra`]: sparse exact polynomials in the marriage weight `x` and
//!   affair weight `y`.
//! - [`combinatorics`]: big-integer factorials and binomials.
//! - [`series`]: truncated bivariate EGFs with labelled coefficients and
//!   the binomial-convolution product, `exp`, `1/(1-u)` and `-log(1-u)`.
//! - [`hermite`]: the matching enumerators `H_{m,n}(x)`, their generating
//!   function `exp(t + s + x*t*s)`, and the pair products
//!   `H_{m,n}(x) * H_{m,n}(y)`.
//! - [`profiles`]: explicit profiles on labelled people, brute-force
//!   enumeration oracles, the path/cycle component decomposition, and the
//!   closed-form series of each component case.
//! - [`mehler`]: the three constructions of the profile enumerator and the
//!   exact three-way verification.
//!
//! Everything is exact (big rationals internally, integer results at the
//! combinatorial level); nothing is ever compared in floating point. All
//! values are immutable after construction, so they can be shared or sent
//! across threads freely.

pub mod algebra;
pub mod combinatorics;
pub mod hermite;
pub mod mehler;
pub mod profiles;
pub mod series;

pub use algebra::{ParseError, WeightPoly};
pub use mehler::{verify, VerifyReport, VerifyStatus};
pub use series::{BiSeries, SeriesError};
