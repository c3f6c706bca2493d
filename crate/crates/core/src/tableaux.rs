//! Integer partitions, standard Young tableaux and the objects attached to
//! them: hook lengths, hook-length counts, the q-hook maj generating
//! function, RSK, and the two-row tableau / lattice path correspondence.
//!
//! Row 1 is the top row. Entry `i` is a descent of a tableau when it sits in
//! a strictly higher row (smaller row index) than `i + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::perm::{BivariatePolynomial, PermStats, Permutation};
use crate::qpoly::{QPolyError, QPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("tableau has {0} rows, at most 2 allowed")]
    TooManyRows(usize),
    #[error("invalid lattice path: {0}")]
    InvalidPath(String),
}

/// A partition `parts[0] >= parts[1] >= ... >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.contains(&0) {
            return Err(TableauError::InvalidShape(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::InvalidShape(format!("{parts:?} is not nonincreasing")));
        }
        Ok(Self { parts })
    }

    /// The two-row shape `(n-k, k)`; `(n)` when `k == 0`.
    pub fn two_row(n: usize, k: usize) -> Result<Self, TableauError> {
        if 2 * k > n {
            return Err(TableauError::InvalidShape(format!("({}, {k}) with n = {n}", n as i64 - k as i64)));
        }
        Self::new([n - k, k].into_iter().filter(|&p| p > 0).collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    /// `b(λ) = sum (i-1) λ_i`.
    pub fn b_value(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    pub fn conjugate(&self) -> Shape {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Shape { parts }
    }
}

/// Every partition of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Shape> {
    fn go(remaining: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if remaining == 0 {
            out.push(Shape { parts: cur.clone() });
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            cur.push(p);
            go(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Shape {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Shape::new(Vec::new());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| TableauError::InvalidShape(s.to_string()))?;
        Shape::new(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardYoungTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardYoungTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let bad = |msg: &str| Err(TableauError::InvalidTableau(format!("{rows:?}: {msg}")));
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        if Shape::new(lens).is_err() {
            return bad("row lengths do not form a partition");
        }
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > n || seen[v] {
                return bad("entries are not 1..n");
            }
            seen[v] = true;
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] >= w[1])) {
            return bad("rows must increase");
        }
        if rows.windows(2).any(|w| w[1].iter().zip(&w[0]).any(|(below, above)| below <= above)) {
            return bad("columns must increase");
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `row_of()[v]` is the 0-based row holding entry `v` (index 0 unused).
    pub fn row_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.size() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                out[v] = r;
            }
        }
        out
    }

    pub fn statistics(&self) -> PermStats {
        let row = self.row_of();
        let descents = (1..self.size()).filter(|&i| row[i] < row[i + 1]).collect();
        PermStats::from_descents(descents)
    }

    /// Builds the tableau whose entry `t` (1-based) lies in row `word[t-1]`.
    fn from_row_word(word: &[usize], num_rows: usize) -> Self {
        let mut rows = vec![Vec::new(); num_rows];
        for (t, &r) in word.iter().enumerate() {
            rows[r].push(t + 1);
        }
        rows.retain(|r| !r.is_empty());
        Self { rows }
    }
}

impl fmt::Display for StandardYoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join("/"))
    }
}

impl FromStr for StandardYoungTableau {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        let rows = s
            .split('/')
            .map(|r| r.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| TableauError::InvalidTableau(s.to_string()))?;
        Self::new(rows)
    }
}

/// Stream of every SYT of a shape, built by placing `1, 2, ..., n` one at a
/// time; ordered lexicographically by the sequence of chosen rows.
pub struct SytIter {
    parts: Vec<usize>,
    n: usize,
    word: Vec<usize>,
    fill: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl SytIter {
    fn can_place(&self, r: usize) -> bool {
        self.fill[r] < self.parts[r] && (r == 0 || self.fill[r - 1] > self.fill[r])
    }

    fn pop(&mut self) {
        match self.word.pop() {
            Some(r) => self.fill[r] -= 1,
            None => self.done = true,
        }
    }
}

impl Iterator for SytIter {
    type Item = StandardYoungTableau;

    fn next(&mut self) -> Option<StandardYoungTableau> {
        while !self.done {
            let depth = self.word.len();
            if depth == self.n {
                let out = StandardYoungTableau::from_row_word(&self.word, self.parts.len());
                self.pop();
                if self.n == 0 {
                    self.done = true;
                }
                return Some(out);
            }
            let start = self.cursor[depth];
            match (start..self.parts.len()).find(|&r| self.can_place(r)) {
                Some(r) => {
                    self.word.push(r);
                    self.fill[r] += 1;
                    self.cursor[depth] = r + 1;
                    self.cursor[depth + 1] = 0;
                }
                None => self.pop(),
            }
        }
        None
    }
}

pub fn enumerate_syt(shape: &Shape) -> SytIter {
    let n = shape.size();
    SytIter {
        parts: shape.parts.clone(),
        n,
        word: Vec::with_capacity(n),
        fill: vec![0; shape.num_rows()],
        cursor: vec![0; n + 1],
        done: false,
    }
}

/// Hook length of every cell, row by row.
pub fn hook_lengths(shape: &Shape) -> Vec<Vec<usize>> {
    let conj = shape.conjugate();
    shape
        .parts
        .iter()
        .enumerate()
        .map(|(i, &len)| (0..len).map(|j| (len - j - 1) + (conj.parts[j] - i - 1) + 1).collect())
        .collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Frame–Robinson–Thrall: `n! / prod h_ij`.
pub fn frt_count(shape: &Shape) -> BigInt {
    let hooks: BigInt = hook_lengths(shape).iter().flatten().fold(BigInt::one(), |acc, &h| acc * h);
    let (q, r) = factorial(shape.size()).div_rem(&hooks);
    assert!(r.is_zero(), "hook product does not divide n! for {shape}");
    q
}

/// Number of SYT of shape `(n-k, k)`: `binom(n,k) (n-2k+1)/(n-k+1)`.
pub fn frt_multiplicity(n: usize, k: usize) -> Result<BigInt, TableauError> {
    if 2 * k > n {
        return Err(TableauError::InvalidShape(format!("k = {k} exceeds n/2 for n = {n}")));
    }
    let binom = num_integer::binomial(BigInt::from(n), BigInt::from(k));
    let (q, r) = (binom * (n - 2 * k + 1)).div_rem(&BigInt::from(n - k + 1));
    assert!(r.is_zero(), "two-row hook count is not integral at n={n} k={k}");
    Ok(q)
}

/// Stanley's q-hook formula `q^b(λ) (q)_n / prod (1 - q^h)`, dividing out
/// one hook factor at a time.
pub fn stanley_maj_gf(shape: &Shape) -> Result<QPolynomial, QPolyError> {
    let mut acc = QPolynomial::q_pochhammer(shape.size()).shift(shape.b_value());
    for &h in hook_lengths(shape).iter().flatten() {
        acc = acc.exact_divide(&QPolynomial::one_minus_q_pow(h))?;
    }
    Ok(acc)
}

/// Brute force: bucket every SYT of the shape by descent count and sum `q^maj`.
pub fn maj_distribution_by_descents(shape: &Shape) -> BivariatePolynomial {
    let mut counts: Vec<Vec<u64>> = Vec::new();
    for t in enumerate_syt(shape) {
        let s = t.statistics();
        if counts.len() <= s.des {
            counts.resize(s.des + 1, Vec::new());
        }
        let row = &mut counts[s.des];
        if row.len() <= s.maj {
            row.resize(s.maj + 1, 0);
        }
        row[s.maj] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, row)| (i, QPolynomial::from_coeffs(0, row.into_iter().map(BigInt::from).collect())))
        .collect()
}

/// Robinson–Schensted row insertion: `(P, Q)` = (insertion, recording).
pub fn rsk(p: &Permutation) -> (StandardYoungTableau, StandardYoungTableau) {
    let mut ins: Vec<Vec<usize>> = Vec::new();
    let mut rec: Vec<Vec<usize>> = Vec::new();
    for (step, &v) in p.values().iter().enumerate() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == ins.len() {
                ins.push(vec![x]);
                rec.push(vec![step + 1]);
                break;
            }
            let row = &mut ins[r];
            match row.iter().position(|&y| y > x) {
                Some(pos) => {
                    x = std::mem::replace(&mut row[pos], x);
                    r += 1;
                }
                None => {
                    row.push(x);
                    rec[r].push(step + 1);
                    break;
                }
            }
        }
    }
    (StandardYoungTableau { rows: ins }, StandardYoungTableau { rows: rec })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    East,
    South,
}

/// A path of East/South unit steps that never has more South than East
/// steps in any prefix. `peaks` holds each 1-based index `j` where step `j`
/// is East and step `j+1` is South.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
    peaks: Vec<usize>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self, TableauError> {
        let mut balance: i64 = 0;
        for (j, s) in steps.iter().enumerate() {
            balance += match s {
                Step::East => 1,
                Step::South => -1,
            };
            if balance < 0 {
                return Err(TableauError::InvalidPath(format!("crosses the diagonal at step {}", j + 1)));
            }
        }
        let peaks = steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::East && w[1] == Step::South)
            .map(|(j, _)| j + 1)
            .collect();
        Ok(Self { steps, peaks })
    }

    /// Like [`LatticePath::new`], additionally checking a supplied peak set.
    pub fn with_peaks(steps: Vec<Step>, peaks: Vec<usize>) -> Result<Self, TableauError> {
        let path = Self::new(steps)?;
        if path.peaks != peaks {
            return Err(TableauError::InvalidPath(format!(
                "peaks {peaks:?} disagree with steps (expected {:?})",
                path.peaks
            )));
        }
        Ok(path)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn peaks(&self) -> &[usize] {
        &self.peaks
    }

    pub fn peak_sum(&self) -> usize {
        self.peaks.iter().sum()
    }

    pub fn east_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::East).count()
    }

    pub fn south_count(&self) -> usize {
        self.steps.len() - self.east_count()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::East => "E",
                Step::South => "S",
            })?;
        }
        let peaks: Vec<String> = self.peaks.iter().map(|p| p.to_string()).collect();
        write!(f, " peaks={}", peaks.join(","))
    }
}

impl FromStr for LatticePath {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::InvalidPath(s.to_string());
        let mut fields = s.split_whitespace();
        let steps = fields
            .next()
            .unwrap_or("")
            .chars()
            .map(|c| match c {
                'E' => Ok(Step::East),
                'S' => Ok(Step::South),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        match fields.next() {
            None => Self::new(steps),
            Some(p) => {
                let list = p.strip_prefix("peaks=").ok_or_else(bad)?;
                let peaks = if list.is_empty() {
                    Vec::new()
                } else {
                    list.split(',').map(|x| x.parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?
                };
                Self::with_peaks(steps, peaks)
            }
        }
    }
}

/// Step `j` is East when `j` is in the top row, South when in the second row.
pub fn syt_to_lattice_path(t: &StandardYoungTableau) -> Result<LatticePath, TableauError> {
    if t.rows.len() > 2 {
        return Err(TableauError::TooManyRows(t.rows.len()));
    }
    let row = t.row_of();
    let steps = (1..=t.size())
        .map(|v| if row[v] == 0 { Step::East } else { Step::South })
        .collect();
    LatticePath::new(steps)
}

pub fn lattice_path_to_syt(path: &LatticePath) -> StandardYoungTableau {
    let word: Vec<usize> = path.steps.iter().map(|s| usize::from(*s == Step::South)).collect();
    StandardYoungTableau::from_row_word(&word, 2)
}

/// All diagonal-respecting paths with the given numbers of East and South steps.
pub fn all_lattice_paths(east: usize, south: usize) -> Vec<LatticePath> {
    match Shape::new(vec![east, south].into_iter().filter(|&p| p > 0).collect()) {
        Ok(shape) => enumerate_syt(&shape)
            .map(|t| syt_to_lattice_path(&t).expect("two-row tableau"))
            .collect(),
        Err(_) => Vec::new(),
    }
}
