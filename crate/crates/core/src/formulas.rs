//! Closed forms and recurrences for major-index generating functions of
//! two-row and `(m, k, 1)` tableaux, the 321-avoider polynomials built from
//! them, the relations among the length-3 avoidance classes, and the
//! `(m,k,1) -> (m+1,k+1)` tableau bijection.
//!
//! Out-of-range indices produce the zero polynomial. Every closed form
//! divides exactly; a `NotDivisible` error from here means a formula is wrong.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::perm::{distribution, BivariatePolynomial, Permutation};
use crate::qpoly::{QPolyError, QPolynomial};
use crate::tableaux::{frt_multiplicity, Shape, StandardYoungTableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Poly(#[from] QPolyError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("n = {0} is outside the supported range")]
    InvalidN(usize),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("expected exactly 2 descents, found {0}")]
    WrongDescentCount(usize),
    #[error("{0} is not in the image of the bijection")]
    NotInImage(String),
    #[error("prefactor {0} is not an integer")]
    NonIntegral(String),
}

/// Shape `(n-k, k)` with `i` descents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoRowIndex {
    pub n: usize,
    pub k: usize,
    pub i: usize,
}

impl TwoRowIndex {
    pub fn new(n: usize, k: usize, i: usize) -> Self {
        Self { n, k, i }
    }

    /// All `(n, k, i)` with `1 <= i <= k <= n/2`.
    pub fn all_with_descents(n: usize) -> impl Iterator<Item = TwoRowIndex> {
        (1..=n / 2).flat_map(move |k| (1..=k).map(move |i| TwoRowIndex { n, k, i }))
    }
}

/// Shape `(m, k, 1)` with `i` descents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThreeRowIndex {
    pub m: usize,
    pub k: usize,
    pub i: usize,
}

impl ThreeRowIndex {
    pub fn new(m: usize, k: usize, i: usize) -> Result<Self, FormulaError> {
        if k == 0 || k > m {
            return Err(FormulaError::WrongShape(format!("({m},{k},1) is not a partition with three rows")));
        }
        if i < 2 {
            return Err(FormulaError::InvalidParams(format!("i = {i}; an (m,k,1) tableau has at least 2 descents")));
        }
        Ok(Self { m, k, i })
    }

    pub fn size(&self) -> usize {
        self.m + self.k + 1
    }
}

/// Closed form for the maj generating function of shape-`(n-k,k)` tableaux
/// with `i` descents:
/// `q^(k+i²-i) (1-q^(n-2k+1)) / (1-q^i) · [k-1 choose i-1]_q · [n-k choose i-1]_q`.
///
/// `i = 0` gives `1` for the one-row shape and `0` otherwise.
pub fn f_two_row(idx: TwoRowIndex) -> Result<QPolynomial, FormulaError> {
    let TwoRowIndex { n, k, i } = idx;
    if 2 * k > n {
        return Ok(QPolynomial::zero());
    }
    if i == 0 {
        return Ok(if k == 0 { QPolynomial::one() } else { QPolynomial::zero() });
    }
    if k < i {
        return Ok(QPolynomial::zero());
    }
    let num = QPolynomial::one_minus_q_pow(n - 2 * k + 1).shift(k + i * i - i)
        * QPolynomial::gaussian(k - 1, i - 1)
        * QPolynomial::gaussian(n - k, i - 1);
    Ok(num.exact_divide(&QPolynomial::one_minus_q_pow(i))?)
}

/// Evaluates the two-row polynomials by peeling off the largest entry
/// (top-row end vs. second-row end), starting from the one-descent case
/// `q^k + ... + q^(n-k)`. Memoized on `(n, k, i)`.
#[derive(Debug, Default)]
pub struct TwoRowRecurrence {
    memo: HashMap<(usize, usize, usize), QPolynomial>,
}

impl TwoRowRecurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, n: usize, k: usize, i: usize) -> QPolynomial {
        if 2 * k > n {
            return QPolynomial::zero();
        }
        if i == 0 {
            return if k == 0 { QPolynomial::one() } else { QPolynomial::zero() };
        }
        if k == 0 || i > k {
            return QPolynomial::zero();
        }
        if i == 1 {
            return QPolynomial::geometric(n - 2 * k + 1).shift(k);
        }
        if let Some(p) = self.memo.get(&(n, k, i)) {
            return p.clone();
        }
        // n in the top row: shape (n-k-1, k), same descents
        let mut acc = self.eval(n - 1, k, i);
        // top row ends at n-k+k0, which tops a descent; the rest of row two is forced
        for k0 in i - 1..k {
            acc = &acc + &self.eval(n - k - 1 + k0, k0, i - 1).shift(n - k + k0);
        }
        self.memo.insert((n, k, i), acc.clone());
        acc
    }
}

pub fn f_two_row_recurrence(idx: TwoRowIndex) -> QPolynomial {
    TwoRowRecurrence::new().eval(idx.n, idx.k, idx.i)
}

/// `A_{n,i}(q)`: maj distribution of 321-avoiders of length `n` with `i`
/// descents, as the two-row tableau polynomials weighted by the number of
/// permutations sharing each recording tableau.
pub fn a_polynomial(n: usize, i: usize) -> Result<QPolynomial, FormulaError> {
    if i == 0 {
        return Ok(QPolynomial::one());
    }
    let mut acc = QPolynomial::zero();
    for k in i..=n / 2 {
        let mult = frt_multiplicity(n, k).expect("k <= n/2");
        acc = &acc + &f_two_row(TwoRowIndex::new(n, k, i))?.scale(&mult);
    }
    Ok(acc)
}

/// Closed form for shape `(m, k, 1)`:
/// `q^(k+i²-2i+2) (1-q^(m-k+1)) (1-q^(i-1)) / ((1-q^i)(1-q)) · [k choose i-1]_q · [m+1 choose i-1]_q`.
pub fn f_three_row(idx: ThreeRowIndex) -> Result<QPolynomial, FormulaError> {
    let ThreeRowIndex { m, k, i } = idx;
    let num = QPolynomial::one_minus_q_pow(m - k + 1).shift(k + i * i + 2 - 2 * i)
        * QPolynomial::one_minus_q_pow(i - 1)
        * QPolynomial::gaussian(k, i - 1)
        * QPolynomial::gaussian(m + 1, i - 1);
    let quotient = num
        .exact_divide(&QPolynomial::one_minus_q_pow(i))?
        .exact_divide(&QPolynomial::one_minus_q_pow(1))?;
    Ok(quotient)
}

/// Four-way split on where the largest entry `m+k+1` of an `(m,k,1)` tableau
/// sits. Two-row terms come from [`f_two_row`]; three-row terms with fewer
/// than two descents vanish. Memoized on `(m, k, i)`.
#[derive(Debug, Default)]
pub struct ThreeRowRecurrence {
    memo: HashMap<(usize, usize, usize), QPolynomial>,
}

impl ThreeRowRecurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, m: usize, k: usize, i: usize) -> Result<QPolynomial, FormulaError> {
        if k == 0 || k > m || i < 2 {
            return Ok(QPolynomial::zero());
        }
        if let Some(p) = self.memo.get(&(m, k, i)) {
            return Ok(p.clone());
        }
        // largest entry ends the first row
        let mut acc = self.eval(m - 1, k, i)?;
        // largest entry is the third row
        acc = &acc + &f_two_row(TwoRowIndex::new(m + k, k, i - 1))?.shift(m + k);
        for k0 in 1..k {
            // ends a second-row run that starts at a descent bottom
            acc = &acc + &self.eval(m - 1, k0, i - 1)?.shift(m + k0 + 1);
            // ends a second-row run that follows the third-row entry
            acc = &acc + &f_two_row(TwoRowIndex::new(m + k0, k0, i - 1))?.shift(m + k0);
        }
        self.memo.insert((m, k, i), acc.clone());
        Ok(acc)
    }
}

pub fn f_three_row_recurrence(idx: ThreeRowIndex) -> Result<QPolynomial, FormulaError> {
    ThreeRowRecurrence::new().eval(idx.m, idx.k, idx.i)
}

/// The two q-binomial summation identities used in the two-row proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBinomialIdentity {
    /// `sum_{j=0}^{n} q^j [m+j choose m] = [n+m+1 choose m+1]`
    ShiftedColumnSum { m: usize, n: usize },
    /// `sum_{j=a}^{b} q^{2j} [j choose a] = q^{2a} ([b+2 choose a+2] - q [b+1 choose a+2])`
    EvenPowerSum { a: usize, b: usize },
}

impl QBinomialIdentity {
    /// Both sides, each computed on its own.
    pub fn sides(self) -> Result<(QPolynomial, QPolynomial), FormulaError> {
        match self {
            Self::ShiftedColumnSum { m, n } => {
                let lhs = (0..=n).map(|j| QPolynomial::gaussian(m + j, m).shift(j)).sum();
                let rhs = QPolynomial::gaussian(n + m + 1, m + 1);
                Ok((lhs, rhs))
            }
            Self::EvenPowerSum { a, b } => {
                if a > b {
                    return Err(FormulaError::InvalidParams(format!("a = {a} exceeds B = {b}")));
                }
                let lhs = (a..=b).map(|j| QPolynomial::gaussian(j, a).shift(2 * j)).sum();
                let rhs = (QPolynomial::gaussian(b + 2, a + 2) - QPolynomial::gaussian(b + 1, a + 2).shift(1))
                    .shift(2 * a);
                Ok((lhs, rhs))
            }
        }
    }
}

/// Numbered front end: `which = 1` takes `(m, n)`, `which = 2` takes `(a, B)`.
pub fn qbinomial_identity_check(which: u8, params: (i64, i64)) -> Result<(QPolynomial, QPolynomial), FormulaError> {
    let (x, y) = params;
    if x < 0 || y < 0 {
        return Err(FormulaError::InvalidParams(format!("negative parameter in {params:?}")));
    }
    let (x, y) = (x as usize, y as usize);
    match which {
        1 => QBinomialIdentity::ShiftedColumnSum { m: x, n: y }.sides(),
        2 => QBinomialIdentity::EvenPowerSum { a: x, b: y }.sides(),
        _ => Err(FormulaError::InvalidParams(format!("unknown identity {which}"))),
    }
}

pub fn catalan(j: usize) -> BigInt {
    num_integer::binomial(BigInt::from(2 * j), BigInt::from(j)) / (j + 1)
}

/// Top-degree-in-`t` coefficient `g_{321,n,⌊n/2⌋}`. With `h = ⌊n/2⌋`:
/// `C_h q^(h²)` for even `n`, and `(4h+2)/(h+2) C_h (q^(h²) + ... + q^(h²+h))`
/// for odd `n`.
pub fn catalan_top_term(n: usize) -> Result<QPolynomial, FormulaError> {
    if n < 2 {
        return Err(FormulaError::InvalidN(n));
    }
    let h = n / 2;
    if n.is_multiple_of(2) {
        return Ok(QPolynomial::monomial(catalan(h), h * h));
    }
    let (prefactor, rem) = (catalan(h) * (4 * h + 2)).div_rem(&BigInt::from(h + 2));
    if !rem.is_zero() {
        return Err(FormulaError::NonIntegral(format!("(4·{h}+2)/({h}+2)·C_{h}")));
    }
    Ok(QPolynomial::geometric(h + 1).shift(h * h).scale(&prefactor))
}

/// Length-3 classes whose (maj, des) distribution is derived rather than enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelatedPattern {
    P123,
    P231,
    P213,
    P312,
}

impl RelatedPattern {
    pub fn pattern(self) -> Permutation {
        let s = match self {
            Self::P123 => "123",
            Self::P231 => "231",
            Self::P213 => "213",
            Self::P312 => "312",
        };
        s.parse().expect("valid pattern")
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "123" => Some(Self::P123),
            "231" => Some(Self::P231),
            "213" => Some(Self::P213),
            "312" => Some(Self::P312),
            _ => None,
        }
    }
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// 123-avoiders from the 321 polynomials: reversal sends `j` descents to
/// `n-1-j` and maj `M` to `n(n-1)/2 - nj + M`.
pub fn distribution_123_from_a(n: usize) -> Result<BivariatePolynomial, FormulaError> {
    let mut out = BivariatePolynomial::new();
    for j in 0..=n / 2 {
        if j + 1 > n {
            break;
        }
        let a = a_polynomial(n, j)?;
        out.add_term(n - 1 - j, &a.shift_signed(binom2(n) as i64 - (n * j) as i64)?);
    }
    Ok(out)
}

/// 231/213/312 distributions from the 132 distribution `f132` of length `n`.
pub fn derive_from_132(which: RelatedPattern, n: usize, f132: &BivariatePolynomial) -> Result<BivariatePolynomial, FormulaError> {
    let top = n.saturating_sub(1);
    let mut out = BivariatePolynomial::new();
    for i in 0..n {
        let term = match which {
            RelatedPattern::P231 => {
                let shift = binom2(n) as i64 - (n * (top - i)) as i64;
                f132.get(top - i).shift_signed(shift)?
            }
            RelatedPattern::P213 => f132.get(top - i).reverse_within(binom2(n))?,
            RelatedPattern::P312 => f132.get(i).reverse_within(n * i)?,
            RelatedPattern::P123 => {
                return Err(FormulaError::InvalidParams("123 is derived from the 321 polynomials".into()))
            }
        };
        out.add_term(i, &term);
    }
    Ok(out)
}

/// Distribution of `which` obtained without enumerating that class.
pub fn related_distribution(which: RelatedPattern, n: usize) -> Result<BivariatePolynomial, FormulaError> {
    match which {
        RelatedPattern::P123 => distribution_123_from_a(n),
        _ => {
            let f132 = distribution(n, &"132".parse().expect("valid pattern"));
            derive_from_132(which, n, &f132)
        }
    }
}

/// Coefficients of `q^3, q^4, q^5` in `g_{132,n,2}`.
pub fn g132_low_coefficients(n: usize) -> Result<(u64, u64, u64), FormulaError> {
    if n < 5 {
        return Err(FormulaError::InvalidN(n));
    }
    let n = n as u64;
    let c = (n - 1) * (n - 2) / 2;
    Ok((c, c - 1, n * n - 4 * n + 1))
}

/// `sum_{i=1}^{n-1} (n-i) q^i`.
pub fn g132_one_descent(n: usize) -> QPolynomial {
    QPolynomial::from_coeffs(1, (1..n).map(|i| BigInt::from(n - i)).collect())
}

fn three_row_dims(t: &StandardYoungTableau) -> Option<(usize, usize)> {
    match t.rows() {
        [a, b, c] if c.len() == 1 => Some((a.len(), b.len())),
        _ => None,
    }
}

fn insert_after(row: &mut Vec<usize>, anchor: usize, value: usize) {
    let pos = row.iter().position(|&v| v == anchor).map_or(row.len(), |p| p + 1);
    row.insert(pos, value);
}

fn remove_value(row: &mut Vec<usize>, value: usize) -> bool {
    match row.iter().position(|&v| v == value) {
        Some(p) => {
            row.remove(p);
            true
        }
        None => false,
    }
}

/// Length `j` of the run `d+1, d+2, ..., d+j` at the start of row two.
fn second_row_run(row2: &[usize], d: usize) -> usize {
    row2.iter().zip(d + 1..).take_while(|(&v, want)| v == *want).count()
}

/// Sends a 2-descent tableau of shape `(m, k, 1)` to a 2-descent tableau of
/// shape `(m+1, k+1)` whose major index is one larger.
pub fn mk1_bijection(t: &StandardYoungTableau) -> Result<StandardYoungTableau, FormulaError> {
    let (m, k) = three_row_dims(t).ok_or_else(|| FormulaError::WrongShape(format!("{} is not of shape (m,k,1)", t.shape())))?;
    let stats = t.statistics();
    if stats.des != 2 {
        return Err(FormulaError::WrongDescentCount(stats.des));
    }
    let (i1, i2) = (stats.descent_set[0], stats.descent_set[1]);
    let mut rows = t.rows().to_vec();
    let j = second_row_run(&rows[1], i1);
    let top_run = i1 + j;

    // 1. third-row entry i2+1 joins row two right after i1+j
    let third = rows[2].pop().expect("three rows");
    debug_assert_eq!(third, i2 + 1);
    insert_after(&mut rows[1], top_run, third);
    // 2. i1+j moves up, right after i1
    remove_value(&mut rows[1], top_run);
    insert_after(&mut rows[0], i1, top_run);
    // 3. make room for a new i1+j
    for v in rows.iter_mut().flatten() {
        if *v >= top_run {
            *v += 1;
        }
    }
    // 4. new i1+j closes the second-row run
    rows[1].insert(j - 1, top_run);
    rows.truncate(2);

    let out = StandardYoungTableau::new(rows).map_err(|e| FormulaError::WrongShape(e.to_string()))?;
    debug_assert_eq!(out.shape().parts(), &[m + 1, k + 1]);
    Ok(out)
}

/// Inverse of [`mk1_bijection`].
pub fn mk1_bijection_inverse(t: &StandardYoungTableau) -> Result<StandardYoungTableau, FormulaError> {
    let not_in_image = || FormulaError::NotInImage(t.to_string());
    let (top, second) = match t.rows() {
        [a, b] if b.len() >= 2 => (a.len(), b.len()),
        _ => return Err(FormulaError::WrongShape(format!("{} is not of shape (m+1,k+1) with k >= 1", t.shape()))),
    };
    let stats = t.statistics();
    if stats.des != 2 {
        return Err(FormulaError::WrongDescentCount(stats.des));
    }
    let (d1, d2) = (stats.descent_set[0], stats.descent_set[1]);
    let mut rows = t.rows().to_vec();

    // second descent bottom drops to a new third row
    if !remove_value(&mut rows[1], d2 + 1) {
        return Err(not_in_image());
    }
    rows.push(vec![d2 + 1]);
    // drop i1+j and close the gap
    let j = second_row_run(&rows[1], d1);
    if j == 0 {
        return Err(not_in_image());
    }
    let gap = d1 + j;
    remove_value(&mut rows[1], gap);
    for v in rows.iter_mut().flatten() {
        if *v > gap {
            *v -= 1;
        }
    }
    // the entry now numbered i1+j returns to row two
    if !remove_value(&mut rows[0], gap) {
        return Err(not_in_image());
    }
    let pos = rows[1].iter().position(|&v| v > gap).unwrap_or(rows[1].len());
    rows[1].insert(pos, gap);

    let pre = StandardYoungTableau::new(rows).map_err(|_| not_in_image())?;
    if three_row_dims(&pre) != Some((top - 1, second - 1)) || pre.statistics().des != 2 {
        return Err(not_in_image());
    }
    if mk1_bijection(&pre).as_ref() != Ok(t) {
        return Err(not_in_image());
    }
    Ok(pre)
}

/// Shape `(m, k, 1)`.
pub fn mk1_shape(m: usize, k: usize) -> Result<Shape, FormulaError> {
    Shape::new(vec![m, k, 1]).map_err(|e| FormulaError::WrongShape(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{distribution_of, enumerate_avoiders, Permutation};
    use crate::tableaux::{enumerate_syt, maj_distribution_by_descents};
    use std::collections::HashSet;

    fn p(min: usize, c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(min, c)
    }

    fn two(n: usize, k: usize, i: usize) -> QPolynomial {
        f_two_row(TwoRowIndex::new(n, k, i)).unwrap()
    }

    fn three(m: usize, k: usize, i: usize) -> QPolynomial {
        f_three_row(ThreeRowIndex::new(m, k, i).unwrap()).unwrap()
    }

    fn oracle_two(n: usize, k: usize, i: usize) -> QPolynomial {
        maj_distribution_by_descents(&Shape::two_row(n, k).unwrap()).get(i)
    }

    #[test]
    fn f_two_row_examples() {
        assert_eq!(two(5, 2, 1), p(2, &[1, 1]));
        assert_eq!(two(5, 2, 2), p(4, &[1, 1, 1]));
        assert_eq!(two(5, 2, 2), oracle_two(5, 2, 2));
        assert_eq!(two(6, 2, 2), p(4, &[1, 1, 2, 1, 1]));
        assert_eq!(two(6, 2, 2), oracle_two(6, 2, 2));
        assert!(two(6, 3, 0).is_zero());
        assert_eq!(two(6, 0, 0), QPolynomial::one());
        assert!(two(6, 2, 3).is_zero());
        assert!(two(6, 4, 1).is_zero());
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(f_two_row_recurrence(TwoRowIndex::new(5, 2, 2)), p(4, &[1, 1, 1]));
        assert_eq!(f_two_row_recurrence(TwoRowIndex::new(4, 1, 1)), p(1, &[1, 1, 1]));
        // square shape: the first term has shape (k-1, k)
        let mut rec = TwoRowRecurrence::new();
        assert!(rec.eval(5, 3, 2).is_zero());
        assert_eq!(rec.eval(6, 3, 2), oracle_two(6, 3, 2));
    }

    #[test]
    fn formula_matches_recurrence_to_thirty() {
        let mut rec = TwoRowRecurrence::new();
        for n in 1..=30 {
            for idx in TwoRowIndex::all_with_descents(n) {
                assert_eq!(f_two_row(idx).unwrap(), rec.eval(idx.n, idx.k, idx.i), "{idx:?}");
            }
        }
    }

    #[test]
    fn formula_matches_oracle_small() {
        for n in 0..=10 {
            for k in 0..=n / 2 {
                let oracle = maj_distribution_by_descents(&Shape::two_row(n, k).unwrap());
                for i in 0..=k + 1 {
                    assert_eq!(two(n, k, i), oracle.get(i), "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn a_polynomial_examples() {
        assert_eq!(a_polynomial(5, 2).unwrap(), p(4, &[5, 5, 5]));
        assert_eq!(a_polynomial(5, 1).unwrap(), p(1, &[4, 9, 9, 4]));
        assert_eq!(a_polynomial(7, 0).unwrap(), QPolynomial::one());
        for n in 1..=20 {
            let one_plus_q = p(0, &[1, 1]);
            let pow = (0..n).fold(QPolynomial::one(), |acc, _| &acc * &one_plus_q);
            assert_eq!(a_polynomial(n, 1).unwrap(), pow - QPolynomial::geometric(n + 1), "n={n}");
        }
    }

    #[test]
    fn a_polynomial_matches_enumeration() {
        let p321: Permutation = "321".parse().unwrap();
        for n in 1..=9 {
            let d = distribution(n, &p321);
            for i in 0..=n / 2 + 1 {
                assert_eq!(a_polynomial(n, i).unwrap(), d.get(i), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn three_row_examples() {
        assert_eq!(three(2, 1, 2), p(3, &[1, 1, 1]));
        let oracle = maj_distribution_by_descents(&mk1_shape(2, 1).unwrap());
        assert_eq!(oracle.get(2), p(3, &[1, 1, 1]));
        for k in 1..=6 {
            let product = QPolynomial::geometric(k) * QPolynomial::geometric(k + 1);
            let expected = product.shift(k + 2).exact_divide(&p(0, &[1, 1])).unwrap();
            assert_eq!(three(k, k, 2), expected, "k={k}");
        }
        assert_eq!(
            f_three_row_recurrence(ThreeRowIndex::new(3, 2, 3).unwrap()).unwrap(),
            maj_distribution_by_descents(&mk1_shape(3, 2).unwrap()).get(3)
        );
        assert_eq!(three(3, 2, 3), maj_distribution_by_descents(&mk1_shape(3, 2).unwrap()).get(3));
        assert_eq!(f_three_row_recurrence(ThreeRowIndex::new(2, 1, 2).unwrap()).unwrap(), p(3, &[1, 1, 1]));
        assert!(ThreeRowIndex::new(2, 3, 2).is_err());
        assert!(ThreeRowIndex::new(3, 2, 1).is_err());
    }

    #[test]
    fn three_row_square_first_term_vanishes() {
        let mut rec = ThreeRowRecurrence::new();
        assert!(rec.eval(2, 3, 2).unwrap().is_zero());
        for k in 1..=5 {
            for i in 2..=k + 1 {
                assert_eq!(
                    rec.eval(k, k, i).unwrap(),
                    maj_distribution_by_descents(&mk1_shape(k, k).unwrap()).get(i)
                );
            }
        }
    }

    #[test]
    fn three_row_i2_relation() {
        for size in 3..=14 {
            for k in 1..size {
                let m = size - 1 - k;
                if m < k {
                    continue;
                }
                assert_eq!(three(m, k, 2).shift(1), two(m + k + 2, k + 1, 2), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn identity_examples() {
        let (l, r) = qbinomial_identity_check(2, (0, 1)).unwrap();
        assert_eq!(l, p(0, &[1, 0, 1]));
        assert_eq!(r, p(0, &[1, 0, 1]));
        for m in 0..5 {
            let (l, r) = qbinomial_identity_check(1, (m, 0)).unwrap();
            assert_eq!((l.clone(), r), (QPolynomial::one(), QPolynomial::one()));
        }
        for a in 0..5 {
            let (l, r) = qbinomial_identity_check(2, (a, a)).unwrap();
            assert_eq!(l, QPolynomial::monomial(1, 2 * a as usize));
            assert_eq!(l, r);
        }
        assert!(qbinomial_identity_check(2, (3, 2)).is_err());
        assert!(qbinomial_identity_check(1, (-1, 2)).is_err());
        assert!(qbinomial_identity_check(3, (1, 2)).is_err());
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_top_term(5).unwrap(), p(4, &[5, 5, 5]));
        // the alternating recording tableau 1,3,5,.../2,4,6,... has maj h²
        assert_eq!(catalan_top_term(4).unwrap(), p(4, &[2]));
        assert_eq!(catalan_top_term(2).unwrap(), p(1, &[1]));
        assert_eq!(catalan_top_term(1), Err(FormulaError::InvalidN(1)));
        let p321: Permutation = "321".parse().unwrap();
        for n in 2..=9 {
            let d = distribution(n, &p321);
            assert_eq!(catalan_top_term(n).unwrap(), d.get(n / 2), "n={n}");
        }
    }

    #[test]
    fn related_examples() {
        assert_eq!(
            related_distribution(RelatedPattern::P231, 5).unwrap(),
            distribution(5, &"132".parse().unwrap())
        );
        assert_eq!(
            related_distribution(RelatedPattern::P213, 5).unwrap().to_string(),
            "1 + (q + 2*q^2 + 3*q^3 + 4*q^4)*t + (q^3 + 2*q^4 + 6*q^5 + 5*q^6 + 6*q^7)*t^2 \
             + (q^6 + 2*q^7 + 3*q^8 + 4*q^9)*t^3 + q^10*t^4"
        );
        assert_eq!(
            related_distribution(RelatedPattern::P123, 5).unwrap().to_string(),
            "(5*q^4 + 5*q^5 + 5*q^6)*t^2 + (4*q^6 + 9*q^7 + 9*q^8 + 4*q^9)*t^3 + q^10*t^4"
        );
    }

    #[test]
    fn related_matches_direct_enumeration() {
        for which in [RelatedPattern::P123, RelatedPattern::P231, RelatedPattern::P213, RelatedPattern::P312] {
            for n in 1..=8 {
                let direct: Vec<Permutation> = enumerate_avoiders(n, &which.pattern()).collect();
                assert_eq!(related_distribution(which, n).unwrap(), distribution_of(&direct), "{which:?} n={n}");
            }
        }
    }

    #[test]
    fn g132_examples() {
        assert_eq!(g132_low_coefficients(5).unwrap(), (6, 5, 6));
        assert_eq!(g132_low_coefficients(6).unwrap(), (10, 9, 13));
        assert_eq!(g132_low_coefficients(4), Err(FormulaError::InvalidN(4)));
        let p132: Permutation = "132".parse().unwrap();
        for n in 5..=8 {
            let d = distribution(n, &p132);
            let g2 = d.get(2);
            let (a, b, c) = g132_low_coefficients(n).unwrap();
            assert_eq!((g2.coeff(3), g2.coeff(4), g2.coeff(5)), (a.into(), b.into(), c.into()));
            assert_eq!(d.get(1), g132_one_descent(n));
        }
    }

    fn two_descent_syt(shape: &Shape) -> Vec<StandardYoungTableau> {
        enumerate_syt(shape).filter(|t| t.statistics().des == 2).collect()
    }

    #[test]
    fn bijection_example() {
        let t: StandardYoungTableau = "1,4/2/3".parse().unwrap();
        let s = mk1_bijection(&t).unwrap();
        assert_eq!(s.shape(), "3,2".parse().unwrap());
        assert_eq!(s.statistics().des, 2);
        assert_eq!(s.statistics().maj, 4);
        assert_eq!(t.statistics().maj, 3);
        assert_eq!(mk1_bijection_inverse(&s).unwrap(), t);
    }

    #[test]
    fn bijection_error_paths() {
        let t: StandardYoungTableau = "1,2/3,4".parse().unwrap();
        assert!(matches!(mk1_bijection(&t), Err(FormulaError::WrongShape(_))));
        let t: StandardYoungTableau = "1,3,4/2/5".parse().unwrap();
        assert_eq!(t.statistics().des, 2);
        let t3: StandardYoungTableau = "1,4/2,5/3,6".parse().unwrap();
        assert!(matches!(mk1_bijection(&t3), Err(FormulaError::WrongShape(_))));
        let wrong_des: StandardYoungTableau = "1,3,5/2,6/4".parse().unwrap();
        assert!(mk1_bijection(&wrong_des).is_err());
        let one_des: StandardYoungTableau = "1,2,3/4,5".parse().unwrap();
        assert_eq!(mk1_bijection_inverse(&one_des), Err(FormulaError::WrongDescentCount(1)));
        let flat: StandardYoungTableau = "1,2,3,4".parse().unwrap();
        assert!(matches!(mk1_bijection_inverse(&flat), Err(FormulaError::WrongShape(_))));
    }

    #[test]
    fn bijection_exhaustive_small() {
        for size in 3..=9 {
            for k in 1..size {
                let m = size - 1 - k;
                if m < k {
                    continue;
                }
                let domain = two_descent_syt(&mk1_shape(m, k).unwrap());
                let target = two_descent_syt(&Shape::new(vec![m + 1, k + 1]).unwrap());
                assert_eq!(domain.len(), target.len(), "m={m} k={k}");
                let mut images = HashSet::new();
                for t in &domain {
                    let s = mk1_bijection(t).unwrap();
                    assert_eq!(s.statistics().des, 2);
                    assert_eq!(s.statistics().maj, t.statistics().maj + 1);
                    assert_eq!(&mk1_bijection_inverse(&s).unwrap(), t);
                    assert!(images.insert(s));
                }
            }
        }
    }
}
