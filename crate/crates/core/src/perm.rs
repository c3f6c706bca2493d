//! Permutations of `1..=n`, their descent statistics, pattern containment,
//! and avoidance-class enumeration.
//!
//! Positions are 1-based everywhere in the public API: a descent at `i`
//! means `values[i-1] > values[i]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::QPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("{0:?} is not a permutation of 1..n")]
    NotAPermutation(Vec<usize>),
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

/// Descent set, descent number and major index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PermStats {
    pub descent_set: Vec<usize>,
    pub des: usize,
    pub maj: usize,
}

impl PermStats {
    pub fn from_descents(descent_set: Vec<usize>) -> Self {
        Self {
            des: descent_set.len(),
            maj: descent_set.iter().sum(),
            descent_set,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
    ReverseComplement,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation(values));
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn statistics(&self) -> PermStats {
        let descents = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect();
        PermStats::from_descents(descents)
    }

    pub fn transform(&self, which: Symmetry) -> Self {
        let n = self.len();
        let values = match which {
            Symmetry::Reverse => self.values.iter().rev().copied().collect(),
            Symmetry::Complement => self.values.iter().map(|&v| n + 1 - v).collect(),
            Symmetry::ReverseComplement => self.values.iter().rev().map(|&v| n + 1 - v).collect(),
        };
        Self { values }
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k == 0 {
            return true;
        }
        let mut chosen = Vec::with_capacity(k);
        embed(&self.values, &pattern.values, 0, &mut chosen)
    }

    /// All permutations of length `n` (lexicographic), for brute-force oracles.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        AllPermutations {
            current: Some((1..=n).collect()),
        }
    }
}

/// Backtracking search for an occurrence of `pattern` in `seq`, choosing
/// `pattern[chosen.len()]`'s position among indices `>= start`.
fn embed(seq: &[usize], pattern: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
    let t = chosen.len();
    if t == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - t;
    for idx in start..=seq.len().saturating_sub(remaining) {
        if idx >= seq.len() {
            break;
        }
        let v = seq[idx];
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(s, &ci)| (seq[ci] < v) == (pattern[s] < pattern[t]));
        if consistent {
            chosen.push(idx);
            if embed(seq, pattern, idx + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// True iff `seq` has an occurrence of `pattern` whose last letter is the
/// last element of `seq`.
fn ends_with_occurrence(seq: &[usize], pattern: &[usize]) -> bool {
    let k = pattern.len();
    let Some((&last, prefix)) = seq.split_last() else {
        return false;
    };
    if k <= 1 {
        return true;
    }
    if prefix.len() < k - 1 {
        return false;
    }
    let head = &pattern[..k - 1];
    let tail = pattern[k - 1];
    // Only candidates on the correct side of `last` can fill each pattern slot.
    fn go(prefix: &[usize], head: &[usize], tail: usize, last: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        let t = chosen.len();
        if t == head.len() {
            return true;
        }
        let remaining = head.len() - t;
        for idx in start..prefix.len() {
            if prefix.len() - idx < remaining {
                break;
            }
            let v = prefix[idx];
            if (v < last) != (head[t] < tail) {
                continue;
            }
            if chosen
                .iter()
                .enumerate()
                .all(|(s, &ci)| (prefix[ci] < v) == (head[s] < head[t]))
            {
                chosen.push(idx);
                if go(prefix, head, tail, last, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(prefix, head, tail, last, 0, &mut Vec::with_capacity(k - 1))
}

struct AllPermutations {
    current: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        // next lexicographic permutation
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.current = Some(succ);
        }
        Some(Permutation { values: cur })
    }
}

/// Lexicographic stream of the permutations of length `n` avoiding a pattern.
///
/// Depth-first over prefixes; a prefix is abandoned as soon as its newest
/// entry completes an occurrence of the pattern.
pub struct Avoiders {
    n: usize,
    pattern: Vec<usize>,
    prefix: Vec<usize>,
    used: Vec<bool>,
    cursor: Vec<usize>,
    fixed: usize,
    done: bool,
}

impl Avoiders {
    fn with_prefix(n: usize, pattern: &Permutation, start: &[usize]) -> Self {
        let mut used = vec![false; n + 1];
        let mut prefix = Vec::with_capacity(n);
        let mut done = false;
        for &v in start {
            prefix.push(v);
            used[v] = true;
            if ends_with_occurrence(&prefix, pattern.values()) {
                done = true;
            }
        }
        Self {
            n,
            pattern: pattern.values.clone(),
            fixed: start.len(),
            prefix,
            used,
            cursor: vec![1; n + 1],
            done,
        }
    }

    fn pop(&mut self) -> bool {
        if self.prefix.len() <= self.fixed {
            self.done = true;
            return false;
        }
        let v = self.prefix.pop().unwrap();
        self.used[v] = false;
        true
    }
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while !self.done {
            let depth = self.prefix.len();
            if depth == self.n {
                let out = Permutation {
                    values: self.prefix.clone(),
                };
                self.pop();
                return Some(out);
            }
            let mut v = self.cursor[depth];
            let mut advanced = false;
            while v <= self.n {
                if !self.used[v] {
                    self.prefix.push(v);
                    if ends_with_occurrence(&self.prefix, &self.pattern) {
                        self.prefix.pop();
                    } else {
                        self.used[v] = true;
                        self.cursor[depth] = v + 1;
                        self.cursor[depth + 1] = 1;
                        advanced = true;
                        break;
                    }
                }
                v += 1;
            }
            if !advanced {
                self.pop();
            }
        }
        None
    }
}

/// Stream of `S_n(pattern)` in lexicographic order.
pub fn enumerate_avoiders(n: usize, pattern: &Permutation) -> Avoiders {
    Avoiders::with_prefix(n, pattern, &[])
}

/// Map from descent count `i` to the coefficient of `t^i`.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BivariatePolynomial {
    terms: BTreeMap<usize, QPolynomial>,
}

impl BivariatePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `p * t^i`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, i: usize, p: &QPolynomial) {
        let sum = match self.terms.get(&i) {
            Some(existing) => existing + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&i);
        } else {
            self.terms.insert(i, sum);
        }
    }

    /// Coefficient of `t^i` (zero if absent).
    pub fn get(&self, i: usize) -> QPolynomial {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<usize, QPolynomial> {
        &self.terms
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn merge(mut self, other: &Self) -> Self {
        for (&i, p) in &other.terms {
            self.add_term(i, p);
        }
        self
    }
}

impl FromIterator<(usize, QPolynomial)> for BivariatePolynomial {
    fn from_iter<I: IntoIterator<Item = (usize, QPolynomial)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (i, p) in iter {
            out.add_term(i, &p);
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&i, p)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let t = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let single = p.terms().count() == 1;
            match (i, single) {
                (0, _) if single => write!(f, "{p}")?,
                (0, _) => write!(f, "({p})")?,
                (_, true) if *p == QPolynomial::one() => f.write_str(&t)?,
                (_, true) => write!(f, "{p}*{t}")?,
                (_, false) => write!(f, "({p})*{t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePolynomial({self})")
    }
}

/// Accumulates `q^maj t^des` counts.
#[derive(Default)]
struct Tally {
    counts: Vec<Vec<u64>>,
}

impl Tally {
    fn record(&mut self, des: usize, maj: usize) {
        if self.counts.len() <= des {
            self.counts.resize(des + 1, Vec::new());
        }
        let row = &mut self.counts[des];
        if row.len() <= maj {
            row.resize(maj + 1, 0);
        }
        row[maj] += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (des, row) in other.counts.into_iter().enumerate() {
            for (maj, c) in row.into_iter().enumerate() {
                if c > 0 {
                    if self.counts.len() <= des {
                        self.counts.resize(des + 1, Vec::new());
                    }
                    let r = &mut self.counts[des];
                    if r.len() <= maj {
                        r.resize(maj + 1, 0);
                    }
                    r[maj] += c;
                }
            }
        }
        self
    }

    fn into_bivariate(self) -> BivariatePolynomial {
        self.counts
            .into_iter()
            .enumerate()
            .map(|(des, row)| {
                (des, QPolynomial::from_coeffs(0, row.into_iter().map(BigInt::from).collect()))
            })
            .collect()
    }
}

/// Exact `sum q^maj t^des` over `S_n(pattern)`, partitioned by first entry
/// across worker threads.
pub fn distribution(n: usize, pattern: &Permutation) -> BivariatePolynomial {
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut tally = Tally::default();
            for p in Avoiders::with_prefix(n, pattern, &[first]) {
                let s = p.statistics();
                tally.record(s.des, s.maj);
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
        .into_bivariate()
}

/// Distribution over any explicit set of permutations; used by oracles.
pub fn distribution_of<'a>(perms: impl IntoIterator<Item = &'a Permutation>) -> BivariatePolynomial {
    let mut tally = Tally::default();
    for p in perms {
        let s = p.statistics();
        tally.record(s.des, s.maj);
    }
    tally.into_bivariate()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PermError::Parse(s.to_string());
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn catalan(n: u64) -> u64 {
        (0..n).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    #[test]
    fn statistics_examples() {
        let s = perm("123").statistics();
        assert_eq!((s.descent_set.clone(), s.des, s.maj), (vec![], 0, 0));
        let s = perm("3142").statistics();
        assert_eq!(s.descent_set, vec![1, 3]);
        assert_eq!((s.des, s.maj), (2, 4));
        let p = perm("2143");
        assert_eq!(p.transform(Symmetry::ReverseComplement), p);
        assert_eq!(p.transform(Symmetry::ReverseComplement).statistics().des, 2);
    }

    #[test]
    fn transform_examples() {
        assert_eq!(perm("123").transform(Symmetry::ReverseComplement), perm("123"));
        assert_eq!(perm("312").transform(Symmetry::Reverse), perm("213"));
        assert_eq!(perm("312").transform(Symmetry::Complement), perm("132"));
    }

    #[test]
    fn containment_examples() {
        assert!(perm("132").contains_pattern(&perm("132")));
        assert!(!Permutation::identity(7).contains_pattern(&perm("321")));
        assert!(perm("2413").contains_pattern(&perm("21")));
        assert!(!perm("2413").contains_pattern(&perm("123")));
        let count = Permutation::all(5).filter(|p| !p.contains_pattern(&perm("321"))).count();
        assert_eq!(count, 42);
    }

    #[test]
    fn enumerate_examples() {
        let got: Vec<_> = enumerate_avoiders(3, &perm("321")).collect();
        assert_eq!(got.len(), 5);
        assert!(!got.contains(&perm("321")));
        let got: Vec<_> = enumerate_avoiders(1, &perm("21")).collect();
        assert_eq!(got, vec![perm("1")]);
        assert_eq!(enumerate_avoiders(3, &perm("1")).count(), 0);

    }

    #[test]
    fn length_four_classes_separate_at_six() {
        // Brute force gives 103 for both classes at n = 5; they first differ at n = 6.
        let count = |n: usize, pat: &str| {
            let fast = enumerate_avoiders(n, &perm(pat)).count();
            let oracle = Permutation::all(n).filter(|p| !p.contains_pattern(&perm(pat))).count();
            assert_eq!(fast, oracle);
            fast
        };
        assert_eq!((count(5, "1234"), count(5, "2413")), (103, 103));
        assert_eq!((count(6, "1234"), count(6, "2413")), (513, 512));
    }

    #[test]
    fn all_permutations_lexicographic() {
        let all: Vec<_> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutation::all(6).count(), 720);
    }

    #[test]
    fn length_three_classes_are_catalan() {
        for pat in ["123", "132", "213", "231", "312", "321"] {
            for n in 1..=9 {
                assert_eq!(enumerate_avoiders(n, &perm(pat)).count() as u64, catalan(n as u64), "{pat} n={n}");
            }
        }
    }

    #[test]
    fn enumeration_matches_filter_oracle() {
        let mut patterns: Vec<Permutation> = Permutation::all(3).collect();
        patterns.extend(Permutation::all(4));
        for n in 1..=8 {
            let all: Vec<Permutation> = Permutation::all(n).collect();
            for pat in &patterns {
                let oracle: Vec<&Permutation> = all.iter().filter(|p| !p.contains_pattern(pat)).collect();
                let fast: Vec<Permutation> = enumerate_avoiders(n, pat).collect();
                assert_eq!(fast.len(), oracle.len(), "n={n} pattern={pat}");
                assert!(fast.iter().zip(oracle).all(|(a, b)| a == b), "n={n} pattern={pat}");
            }
        }
    }

    #[test]
    fn rc_symmetry_on_321_class() {
        let p321 = perm("321");
        for n in 1..=9 {
            for s in enumerate_avoiders(n, &p321) {
                let rc = s.transform(Symmetry::ReverseComplement);
                assert!(!rc.contains_pattern(&p321));
                let (a, b) = (s.statistics(), rc.statistics());
                assert_eq!(a.des, b.des);
                assert_eq!(b.maj, n * a.des - a.maj);
            }
        }
    }

    #[test]
    fn reverse_maps_321_to_123() {
        let (p321, p123) = (perm("321"), perm("123"));
        for n in 1..=9 {
            for s in enumerate_avoiders(n, &p321) {
                let r = s.transform(Symmetry::Reverse);
                assert!(!r.contains_pattern(&p123));
                let (a, b) = (s.statistics(), r.statistics());
                assert_eq!(b.des, n - 1 - a.des);
                assert_eq!(b.maj + n * a.des, n * (n - 1) / 2 + a.maj);
            }
        }
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(
            distribution(5, &perm("321")).to_string(),
            "1 + (4*q + 9*q^2 + 9*q^3 + 4*q^4)*t + (5*q^4 + 5*q^5 + 5*q^6)*t^2"
        );
        assert_eq!(
            distribution(5, &perm("132")).to_string(),
            "1 + (4*q + 3*q^2 + 2*q^3 + q^4)*t + (6*q^3 + 5*q^4 + 6*q^5 + 2*q^6 + q^7)*t^2 \
             + (4*q^6 + 3*q^7 + 2*q^8 + q^9)*t^3 + q^10*t^4"
        );
        assert_eq!(distribution(1, &perm("321")).to_string(), "1");
        assert_eq!(distribution(1, &perm("1")).to_string(), "0");
    }

    #[test]
    fn distribution_matches_filter_oracle_and_321_shape() {
        let p321 = perm("321");
        for n in 1..=9 {
            let all: Vec<Permutation> = Permutation::all(n).filter(|p| !p.contains_pattern(&p321)).collect();
            let d = distribution(n, &p321);
            assert_eq!(d, distribution_of(&all));
            assert!(d.t_degree().unwrap() <= n / 2);
            for (&i, a) in d.terms() {
                let r = a.shape_report().unwrap();
                assert!(r.symmetric);
                assert_eq!(r.center_times_two, n * i);
                assert_eq!(a.min_degree(), Some(i * i));
                assert_eq!(a.max_degree(), Some(n * i - i * i));
            }
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(perm("31425").to_string(), "31425");
        let big = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn bivariate_json() {
        let d = distribution(3, &perm("321"));
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"0":{"min_degree":0,"coeffs":["1"]},"1":{"min_degree":1,"coeffs":["2","2"]}}"#
        );
        assert_eq!(serde_json::from_str::<BivariatePolynomial>(&json).unwrap(), d);
    }
}
