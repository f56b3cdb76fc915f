//! Exact polynomials in the two relationship weights `x` and `y`.
//!
//! A [`WeightPoly`] is a sparse map from exponent pairs `(i, j)` (the powers
//! of `x` and `y`) to exact rational coefficients.
//!
//! Invariants:
//! - No stored term has a zero coefficient (enforced on every insertion).
//! - At most one term per exponent pair; equal polynomials have identical
//!   term maps, so `PartialEq` is structural equality.
//!
//! All results at the combinatorial level are integer polynomials, but the
//! series engine divides by `k!` and `k` along the way, so coefficients stay
//! rational internally and integrality is checked where enumerative results
//! are produced (see [`WeightPoly::is_integral`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Error produced when polynomial text does not follow the term grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

/// Sparse exact polynomial in `x` (marriage weight) and `y` (affair weight).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl WeightPoly {
    /// The zero polynomial (empty term map).
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// A constant polynomial; `constant(0)` is the zero polynomial.
    pub fn constant(c: BigRational) -> Self {
        Self::monomial_with(0, 0, c)
    }

    /// The variable `x`.
    pub fn var_x() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `y`.
    pub fn var_y() -> Self {
        Self::monomial(0, 1)
    }

    /// The monomial `x^i * y^j` with coefficient 1.
    pub fn monomial(i: u32, j: u32) -> Self {
        Self::monomial_with(i, j, BigRational::one())
    }

    /// The monomial `c * x^i * y^j`.
    pub fn monomial_with(i: u32, j: u32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    /// Integer constant convenience.
    pub fn from_int(v: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// True when every coefficient is a positive integer.
    pub fn has_positive_integer_coeffs(&self) -> bool {
        self.is_integral() && self.terms.values().all(|c| c.is_positive())
    }

    /// Coefficient of `x^i * y^j` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms as `((x_exp, y_exp), coefficient)` in map order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: (u32, u32), c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Every coefficient multiplied by `c`; `scale(p, 0)` is zero.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        Self { terms }
    }

    /// Scale by an exact integer.
    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    /// Exchange the roles of `x` and `y` (swap each term's exponent pair).
    pub fn swap_vars(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((j, i), c.clone()))
            .collect();
        Self { terms }
    }

    /// Substitute `y := 0`, keeping only terms with no `y` factor.
    pub fn set_y_zero(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&(_, j), _)| j == 0)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Self { terms }
    }

    /// Evaluate at exact rational values of `x` and `y`.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..i {
                term *= x;
            }
            for _ in 0..j {
                term *= y;
            }
            total += term;
        }
        total
    }
}

impl Add for &WeightPoly {
    type Output = WeightPoly;

    fn add(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl AddAssign<&WeightPoly> for WeightPoly {
    fn add_assign(&mut self, rhs: &WeightPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Sub for &WeightPoly {
    type Output = WeightPoly;

    fn sub(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c.clone());
        }
        out
    }
}

impl Neg for &WeightPoly {
    type Output = WeightPoly;

    fn neg(self) -> WeightPoly {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        WeightPoly { terms }
    }
}

impl Mul for &WeightPoly {
    type Output = WeightPoly;

    fn mul(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = WeightPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        out
    }
}

// Display order groups terms by ascending y-degree and, within each group,
// ascending x-degree, so `1 + x + y + x*y` rather than `1 + y + x + x*y`.
impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (j, i));
        for (idx, key) in keys.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write_term(f, *key, &self.terms[key])?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, (i, j): (u32, u32), c: &BigRational) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    let abs = c.abs();
    let explicit_coeff = !abs.is_one() || (i == 0 && j == 0);
    if explicit_coeff {
        factors.push(abs.to_string());
    }
    for (var, exp) in [("x", i), ("y", j)] {
        match exp {
            0 => {}
            1 => factors.push(var.to_string()),
            e => factors.push(format!("{var}^{e}")),
        }
    }
    let sign = if c.is_negative() { "-" } else { "" };
    write!(f, "{sign}{}", factors.join("*"))
}

impl FromStr for WeightPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

impl Serialize for WeightPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WeightPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Recursive-descent parser for `term ("+" term)*` where a term is an
/// optionally signed coefficient (integer or `a/b`) and/or `*`-joined
/// variable powers `x[^e]` / `y[^e]`. Whitespace is insignificant.
struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<WeightPoly, ParseError> {
        let mut poly = WeightPoly::zero();
        let (key, coeff) = self.term()?;
        poly.add_term(key, &coeff);
        loop {
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                return Ok(poly);
            }
            self.expect(b'+')?;
            let (key, coeff) = self.term()?;
            poly.add_term(key, &coeff);
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError::new(
                self.pos,
                format!("expected '{}'", b as char),
            )),
        }
    }

    fn term(&mut self) -> Result<((u32, u32), BigRational), ParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => self.rational()?,
            Some(b'x') | Some(b'y') => BigRational::one(),
            _ => {
                return Err(ParseError::new(
                    self.pos,
                    "expected a coefficient or a variable",
                ))
            }
        };
        if negative {
            coeff = -coeff;
        }
        let mut x_exp: Option<u32> = None;
        let mut y_exp: Option<u32> = None;
        // Variable factors: either right after an explicit coefficient via
        // '*', or the term started with a bare variable.
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.var_power(&mut x_exp, &mut y_exp)?;
                }
                Some(b'x') | Some(b'y') => {
                    self.var_power(&mut x_exp, &mut y_exp)?;
                }
                _ => break,
            }
        }
        Ok(((x_exp.unwrap_or(0), y_exp.unwrap_or(0)), coeff))
    }

    fn var_power(
        &mut self,
        x_exp: &mut Option<u32>,
        y_exp: &mut Option<u32>,
    ) -> Result<(), ParseError> {
        let start = self.pos;
        let slot = match self.peek() {
            Some(b'x') => x_exp,
            Some(b'y') => y_exp,
            _ => return Err(ParseError::new(self.pos, "expected variable 'x' or 'y'")),
        };
        let var = self.bytes[self.pos] as char;
        if slot.is_some() {
            return Err(ParseError::new(
                start,
                format!("variable '{var}' appears twice in one term"),
            ));
        }
        self.pos += 1;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() == Some(b'-') {
                return Err(ParseError::new(self.pos, "negative exponent"));
            }
            self.uint()?
        } else {
            1
        };
        *slot = Some(exp);
        Ok(())
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a digit"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::new(start, "exponent out of range"))
    }

    fn bigint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse()
            .map_err(|_| ParseError::new(start, "malformed integer"))
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let numer = self.bigint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom_pos = self.pos;
            let denom = self.bigint()?;
            if denom.is_zero() {
                return Err(ParseError::new(denom_pos, "zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }
}
