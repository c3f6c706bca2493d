//! Dense polynomials in `q` with arbitrary-precision integer coefficients.
//!
//! A [`QPolynomial`] stores its coefficients starting at its lowest nonzero
//! degree, so `q^40 (1 + q)` costs two coefficients. The zero polynomial has
//! no coefficients and no degree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QPolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{num} is not divisible by {den}")]
    NotDivisible { num: String, den: String },
    #[error("shape report requested for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds reversal window [0, {window}]")]
    DegreeExceedsWindow { degree: usize, window: usize },
    #[error("shift by q^{shift} leaves a negative exponent")]
    NegativeDegree { shift: i64 },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    min_degree: usize,
    coeffs: Vec<BigInt>,
}

/// Symmetry/unimodality summary of a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub symmetric: bool,
    pub unimodal: bool,
    pub center_times_two: usize,
    #[serde(serialize_with = "bigint_as_string")]
    pub coefficient_sum: BigInt,
}

fn bigint_as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        Self::from_coeffs(degree, vec![c.into()])
    }

    /// Builds `sum_j coeffs[j] * q^(min_degree + j)`, stripping zeros at both ends.
    pub fn from_coeffs(min_degree: usize, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { min_degree, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(min_degree: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(min_degree, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 + q + ... + q^(len-1)`, the q-integer `[len]_q`. Zero when `len == 0`.
    pub fn geometric(len: usize) -> Self {
        Self::from_coeffs(0, vec![BigInt::one(); len])
    }

    /// `1 - q^e`. Zero when `e == 0`.
    pub fn one_minus_q_pow(e: usize) -> Self {
        if e == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = BigInt::one();
        coeffs[e] = -BigInt::one();
        Self::from_coeffs(0, coeffs)
    }

    /// The q-Pochhammer symbol `(q)_n = (1-q)(1-q^2)...(1-q^n)`.
    pub fn q_pochhammer(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, e| &acc * &Self::one_minus_q_pow(e))
    }

    fn normalize(&mut self) {
        let trailing = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        self.coeffs.truncate(self.coeffs.len() - trailing);
        let leading = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading > 0 {
            self.coeffs.drain(..leading);
            self.min_degree += leading;
        }
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (!self.is_zero()).then_some(self.min_degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.min_degree + self.coeffs.len() - 1)
    }

    /// Coefficients from `min_degree` upward; empty for zero.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        degree
            .checked_sub(self.min_degree)
            .and_then(|j| self.coeffs.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms as `(degree, coefficient)` in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        let base = self.min_degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (base + j, c))
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.min_degree, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `q^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            min_degree: self.min_degree + d,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Multiplies by `q^d` for a possibly negative `d`; fails if a term would
    /// land below degree zero.
    pub fn shift_signed(&self, d: i64) -> Result<Self, QPolyError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let target = self.min_degree as i64 + d;
        if target < 0 {
            return Err(QPolyError::NegativeDegree { shift: d });
        }
        Ok(Self {
            min_degree: target as usize,
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().unwrap().max(other.max_degree().unwrap());
        let mut coeffs = vec![BigInt::zero(); hi - lo + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[self.min_degree - lo + j] += c;
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            coeffs[other.min_degree - lo + j] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a_idx, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b_idx, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[a_idx + b_idx] += a * b;
                }
            }
        }
        Self::from_coeffs(self.min_degree + other.min_degree, coeffs)
    }

    /// Exact quotient `self / den`. Any nonzero remainder, or a quotient that
    /// would need non-integer coefficients, is reported as `NotDivisible`.
    pub fn exact_divide(&self, den: &Self) -> Result<Self, QPolyError> {
        if den.is_zero() {
            return Err(QPolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_divisible = || QPolyError::NotDivisible {
            num: self.to_string(),
            den: den.to_string(),
        };
        // Both operands have nonzero constant term after the offset is removed,
        // so the quotient's offset is exactly the difference of offsets.
        let offset = self
            .min_degree
            .checked_sub(den.min_degree)
            .ok_or_else(not_divisible)?;
        if self.coeffs.len() < den.coeffs.len() {
            return Err(not_divisible());
        }
        let lead = den.coeffs.last().unwrap();
        let dlen = den.coeffs.len();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for qi in (0..qlen).rev() {
            let top = &rem[qi + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (factor, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            for (dj, d) in den.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[qi + dj] -= &factor * d;
                }
            }
            quot[qi] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        Ok(Self::from_coeffs(offset, quot))
    }

    /// The Gaussian polynomial `[M+N choose N]_q`, generating function of
    /// partitions inside an `N x M` box. Computed as `(q)_{M+N}` divided
    /// exactly by every factor of `(q)_M (q)_N`.
    pub fn q_binomial(m: usize, n: usize) -> Self {
        let mut acc = Self::q_pochhammer(m + n);
        for e in (1..=m).chain(1..=n) {
            acc = acc
                .exact_divide(&Self::one_minus_q_pow(e))
                .expect("q-Pochhammer quotient is always a polynomial");
        }
        acc
    }

    /// `[top choose bottom]_q` with the conventions `[j choose 0] = 1` and
    /// `[j choose k] = 0` for `j < k`.
    pub fn gaussian(top: usize, bottom: usize) -> Self {
        if bottom > top {
            Self::zero()
        } else {
            Self::q_binomial(top - bottom, bottom)
        }
    }

    pub fn shape_report(&self) -> Result<ShapeReport, QPolyError> {
        if self.is_zero() {
            return Err(QPolyError::ZeroPolynomial);
        }
        let c = &self.coeffs;
        let symmetric = c.iter().eq(c.iter().rev());
        let rise = c.windows(2).take_while(|w| w[0] <= w[1]).count();
        let unimodal = c[rise..].windows(2).all(|w| w[0] >= w[1]);
        Ok(ShapeReport {
            symmetric,
            unimodal,
            center_times_two: self.min_degree + self.max_degree().unwrap(),
            coefficient_sum: self.eval_at_one(),
        })
    }

    /// `rev_J`: maps the coefficient of `q^d` to `q^(J-d)`.
    pub fn reverse_within(&self, window: usize) -> Result<Self, QPolyError> {
        let Some(max) = self.max_degree() else {
            return Ok(Self::zero());
        };
        if max > window {
            return Err(QPolyError::DegreeExceedsWindow { degree: max, window });
        }
        Ok(Self {
            min_degree: window - max,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        })
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (deg, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let unit = mag.is_one();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    match deg {
                        1 => f.write_str("q")?,
                        d => write!(f, "q^{d}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl PartialOrd for QPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.min_degree, &self.coeffs).cmp(&(other.min_degree, &other.coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct QPolynomialJson {
    min_degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QPolynomialJson {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = QPolynomialJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(raw.min_degree, coeffs))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&QPolynomial> for &QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                QPolynomial::$inner(self, rhs)
            }
        }
        impl $trait for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                QPolynomial::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, multiply);

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::neg(self)
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::neg(&self)
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}
