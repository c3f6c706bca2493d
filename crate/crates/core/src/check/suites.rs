use std::collections::HashSet;
use std::fmt::Display;

use rayon::prelude::*;

use super::{Counterexample, Params, Suite, SuiteOptions};
use crate::formulas::{
    a_polynomial, catalan_top_term, f_three_row, f_two_row, g132_low_coefficients, g132_one_descent,
    mk1_bijection, mk1_bijection_inverse, mk1_shape, related_distribution, QBinomialIdentity, RelatedPattern,
    ThreeRowIndex, ThreeRowRecurrence, TwoRowIndex, TwoRowRecurrence,
};
use crate::params;
use crate::perm::{distribution, Permutation};
use crate::qpoly::QPolynomial;
use crate::tableaux::{enumerate_syt, maj_distribution_by_descents, partitions, rsk, stanley_maj_gf, Shape};

/// Memo tables carried from one unit to the next.
#[derive(Default)]
pub(super) struct SuiteState {
    two_row: TwoRowRecurrence,
    three_row: ThreeRowRecurrence,
}

type UnitOutcome = (u64, Vec<Counterexample>);

pub(super) fn run_unit(suite: Suite, v: usize, opts: &SuiteOptions, state: &mut SuiteState) -> UnitOutcome {
    match suite {
        Suite::Unimodality => unimodality(v),
        Suite::FormulaVsOracle => formula_vs_oracle(v),
        Suite::FormulaVsRecurrence => formula_vs_recurrence(v, &mut state.two_row),
        Suite::Identities => identities(v),
        Suite::Rsk => rsk_properties(v),
        Suite::Relations => relations(v),
        Suite::Catalan => catalan(v),
        Suite::ThreeRow => three_row(v, opts.oracle_max_n.unwrap_or(opts.max_n.min(13)), &mut state.three_row),
        Suite::Bijection => bijection(v),
        Suite::NonUnimodality132 => non_unimodality_132(v),
        Suite::StanleyHook => stanley_hook(v),
    }
}

fn par_cases<T: Sync>(cases: &[T], check: impl Fn(&T) -> Vec<Counterexample> + Sync) -> UnitOutcome {
    let failures = cases.par_iter().flat_map_iter(&check).collect();
    (cases.len() as u64, failures)
}

fn mismatch(p: Params, expected: impl Display, actual: impl Display) -> Vec<Counterexample> {
    vec![Counterexample::new(p, expected, actual)]
}

fn compare(p: Params, expected: &QPolynomial, actual: &QPolynomial) -> Vec<Counterexample> {
    if expected == actual {
        Vec::new()
    } else {
        mismatch(p, expected, actual)
    }
}

fn two_row_params(idx: TwoRowIndex) -> Params {
    params! {"n" => idx.n, "k" => idx.k, "i" => idx.i}
}

fn three_row_params(m: usize, k: usize, i: usize) -> Params {
    params! {"m" => m, "k" => k, "i" => i}
}

/// Symmetric, unimodal, centred at `n·i/2`, with the expected degree range.
fn unimodality(n: usize) -> UnitOutcome {
    let cases: Vec<_> = TwoRowIndex::all_with_descents(n).collect();
    let (count, mut failures) = par_cases(&cases, |&idx| {
        let TwoRowIndex { n, k, i } = idx;
        let p = two_row_params(idx);
        let f = match f_two_row(idx) {
            Ok(f) => f,
            Err(e) => return mismatch(p, "polynomial", format!("error: {e}")),
        };
        let Ok(r) = f.shape_report() else {
            return mismatch(p, "nonzero polynomial", "0");
        };
        let lo = k + i * i - i;
        let hi = n * i - lo;
        let expected = format!("symmetric unimodal center_times_two={} degrees {lo}..{hi}", n * i);
        let actual = format!(
            "symmetric={} unimodal={} center_times_two={} degrees {}..{}",
            r.symmetric,
            r.unimodal,
            r.center_times_two,
            f.min_degree().unwrap(),
            f.max_degree().unwrap()
        );
        let ok = r.symmetric
            && r.unimodal
            && r.center_times_two == n * i
            && f.min_degree() == Some(lo)
            && f.max_degree() == Some(hi);
        if ok {
            Vec::new()
        } else {
            mismatch(p, expected, actual)
        }
    });
    // A_{n,2} is a sum of polynomials sharing a centre, so unimodality is not automatic.
    if n >= 4 {
        let p = params! {"n" => n, "i" => 2usize, "poly" => "A"};
        match a_polynomial(n, 2).map(|a| a.shape_report()) {
            Ok(Ok(r)) if r.unimodal => {}
            Ok(Ok(_)) => failures.extend(mismatch(p, "unimodal", a_polynomial(n, 2).unwrap())),
            Ok(Err(e)) => failures.extend(mismatch(p, "unimodal", format!("error: {e}"))),
            Err(e) => failures.extend(mismatch(p, "unimodal", format!("error: {e}"))),
        }
        return (count + 1, failures);
    }
    (count, failures)
}

fn formula_vs_oracle(n: usize) -> UnitOutcome {
    let shapes: Vec<usize> = (0..=n / 2).collect();
    let per_shape: Vec<_> = shapes
        .par_iter()
        .map(|&k| {
            let shape = Shape::two_row(n, k).expect("k <= n/2");
            let oracle = maj_distribution_by_descents(&shape);
            let mut failures = Vec::new();
            let top = oracle.t_degree().unwrap_or(0).max(k);
            for i in 0..=top {
                let idx = TwoRowIndex::new(n, k, i);
                let expected = oracle.get(i);
                log::debug!("n={n} k={k} i={i}: {} tableaux", expected.eval_at_one());
                match f_two_row(idx) {
                    Ok(f) => failures.extend(compare(two_row_params(idx), &expected, &f)),
                    Err(e) => failures.extend(mismatch(two_row_params(idx), &expected, format!("error: {e}"))),
                }
            }
            (top as u64 + 1, failures)
        })
        .collect();
    per_shape
        .into_iter()
        .fold((0, Vec::new()), |(c, mut f), (c2, f2)| {
            f.extend(f2);
            (c + c2, f)
        })
}

fn formula_vs_recurrence(n: usize, rec: &mut TwoRowRecurrence) -> UnitOutcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for idx in TwoRowIndex::all_with_descents(n) {
        count += 1;
        let r = rec.eval(idx.n, idx.k, idx.i);
        match f_two_row(idx) {
            Ok(f) => failures.extend(compare(two_row_params(idx), &r, &f)),
            Err(e) => failures.extend(mismatch(two_row_params(idx), &r, format!("error: {e}"))),
        }
    }
    (count, failures)
}

/// Every identity instance whose largest parameter equals `bound`.
fn identities(bound: usize) -> UnitOutcome {
    let mut cases = Vec::new();
    for x in 0..=bound {
        cases.push(QBinomialIdentity::ShiftedColumnSum { m: x, n: bound });
        if x < bound {
            cases.push(QBinomialIdentity::ShiftedColumnSum { m: bound, n: x });
        }
        cases.push(QBinomialIdentity::EvenPowerSum { a: x, b: bound });
    }
    par_cases(&cases, |&id| {
        let p = match id {
            QBinomialIdentity::ShiftedColumnSum { m, n } => params! {"identity" => 1usize, "m" => m, "n" => n},
            QBinomialIdentity::EvenPowerSum { a, b } => params! {"identity" => 2usize, "a" => a, "b" => b},
        };
        match id.sides() {
            Ok((lhs, rhs)) => compare(p, &rhs, &lhs),
            Err(e) => mismatch(p, "equal sides", format!("error: {e}")),
        }
    })
}

fn rsk_properties(n: usize) -> UnitOutcome {
    let pattern: Permutation = "321".parse().expect("valid pattern");
    let perms: Vec<_> = Permutation::all(n).collect();
    par_cases(&perms, |sigma| {
        let p = || params! {"n" => n, "sigma" => sigma.to_string()};
        let (ins, rec) = rsk(sigma);
        let mut out = Vec::new();
        if ins.shape() != rec.shape() {
            out.extend(mismatch(p(), ins.shape(), rec.shape()));
        }
        let avoids = !sigma.contains_pattern(&pattern);
        if avoids != (ins.shape().num_rows() <= 2) {
            out.extend(mismatch(p(), format!("avoids 321 = {avoids}"), format!("shape {}", ins.shape())));
        }
        let (d_sigma, d_rec) = (sigma.statistics().descent_set, rec.statistics().descent_set);
        if d_sigma != d_rec {
            out.extend(mismatch(p(), format!("{d_sigma:?}"), format!("{d_rec:?}")));
        }
        out
    })
}

/// Derived length-3 distributions against direct enumeration, and the
/// 321 polynomials against the tableau sums.
fn relations(n: usize) -> UnitOutcome {
    let which = [RelatedPattern::P123, RelatedPattern::P231, RelatedPattern::P213, RelatedPattern::P312];
    let (mut count, mut failures) = par_cases(&which, |&w| {
        let pattern = w.pattern();
        let p = params! {"n" => n, "pattern" => pattern.to_string()};
        let direct = distribution(n, &pattern);
        match related_distribution(w, n) {
            Ok(d) if d == direct => Vec::new(),
            Ok(d) => mismatch(p, direct, d),
            Err(e) => mismatch(p, direct, format!("error: {e}")),
        }
    });
    let f321 = distribution(n, &"321".parse().expect("valid pattern"));
    for i in 0..n {
        count += 1;
        let p = params! {"n" => n, "i" => i, "poly" => "A"};
        match a_polynomial(n, i) {
            Ok(a) => failures.extend(compare(p, &f321.get(i), &a)),
            Err(e) => failures.extend(mismatch(p, f321.get(i), format!("error: {e}"))),
        }
    }
    (count, failures)
}

fn catalan(n: usize) -> UnitOutcome {
    let top = distribution(n, &"321".parse().expect("valid pattern")).get(n / 2);
    let p = params! {"n" => n};
    match catalan_top_term(n) {
        Ok(c) => (1, compare(p, &top, &c)),
        Err(e) => (1, mismatch(p, top, format!("error: {e}"))),
    }
}

fn three_row(size: usize, oracle_max: usize, rec: &mut ThreeRowRecurrence) -> UnitOutcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..size {
        let Some(m) = size.checked_sub(k + 1).filter(|&m| m >= k) else {
            continue;
        };
        let oracle = (size <= oracle_max).then(|| maj_distribution_by_descents(&mk1_shape(m, k).expect("m >= k >= 1")));
        let top = oracle.as_ref().and_then(|o| o.t_degree()).unwrap_or(0).max(k + 2);
        for i in 2..=top {
            count += 1;
            let p = three_row_params(m, k, i);
            let idx = ThreeRowIndex::new(m, k, i).expect("validated above");
            let closed = match f_three_row(idx) {
                Ok(f) => f,
                Err(e) => {
                    failures.extend(mismatch(p, "polynomial", format!("error: {e}")));
                    continue;
                }
            };
            match rec.eval(m, k, i) {
                Ok(r) => failures.extend(compare(p.clone(), &r, &closed)),
                Err(e) => failures.extend(mismatch(p.clone(), &closed, format!("recurrence error: {e}"))),
            }
            if let Some(o) = &oracle {
                failures.extend(compare(p.clone(), &o.get(i), &closed));
            }
            if i == 2 {
                let mut rp = p;
                rp.insert("relation".into(), "q*f3 = f2".into());
                match f_two_row(TwoRowIndex::new(m + k + 2, k + 1, 2)) {
                    Ok(two) => failures.extend(compare(rp, &two, &closed.shift(1))),
                    Err(e) => failures.extend(mismatch(rp, "polynomial", format!("error: {e}"))),
                }
            }
        }
        // one-descent slot must be empty
        if let Some(o) = &oracle {
            let p = three_row_params(m, k, 1);
            failures.extend(compare(p, &QPolynomial::zero(), &o.get(1)));
        }
    }
    (count, failures)
}

fn bijection(size: usize) -> UnitOutcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..size {
        let Some(m) = size.checked_sub(k + 1).filter(|&m| m >= k) else {
            continue;
        };
        let domain: Vec<_> = enumerate_syt(&mk1_shape(m, k).expect("m >= k >= 1"))
            .filter(|t| t.statistics().des == 2)
            .collect();
        let target = Shape::new(vec![m + 1, k + 1]).expect("m >= k");
        let (c, f) = par_cases(&domain, |t| {
            let p = || params! {"m" => m, "k" => k, "tableau" => t.to_string()};
            let s = match mk1_bijection(t) {
                Ok(s) => s,
                Err(e) => return mismatch(p(), "image tableau", format!("error: {e}")),
            };
            let (ts, ss) = (t.statistics(), s.statistics());
            let mut out = Vec::new();
            if s.shape() != target || ss.des != 2 || ss.maj != ts.maj + 1 {
                out.extend(mismatch(
                    p(),
                    format!("shape {target}, des 2, maj {}", ts.maj + 1),
                    format!("{s}: shape {}, des {}, maj {}", s.shape(), ss.des, ss.maj),
                ));
            }
            match mk1_bijection_inverse(&s) {
                Ok(back) if &back == t => {}
                Ok(back) => out.extend(mismatch(p(), t, back)),
                Err(e) => out.extend(mismatch(p(), t, format!("error: {e}"))),
            }
            out
        });
        count += c;
        failures.extend(f);

        let images: HashSet<_> = domain.iter().filter_map(|t| mk1_bijection(t).ok()).collect();
        let codomain = enumerate_syt(&target).filter(|t| t.statistics().des == 2).count();
        count += 1;
        if images.len() != domain.len() || codomain != domain.len() {
            failures.extend(mismatch(
                params! {"m" => m, "k" => k, "property" => "bijective"},
                format!("{} distinct images = {} targets", domain.len(), codomain),
                format!("{} distinct images, {} targets", images.len(), codomain),
            ));
        }
    }
    (count, failures)
}

/// Low coefficients of the two-descent 132 polynomial dip, so it is never
/// unimodal; the one-descent polynomial is `sum (n-i) q^i` and not symmetric.
fn non_unimodality_132(n: usize) -> UnitOutcome {
    let f132 = distribution(n, &"132".parse().expect("valid pattern"));
    let mut failures = Vec::new();
    let p = |what: &str| params! {"n" => n, "property" => what};

    let g1 = f132.get(1);
    failures.extend(compare(p("g1 closed form"), &g132_one_descent(n), &g1));
    if n < 5 {
        return (1, failures);
    }
    if g1.shape_report().map_or(true, |r| r.symmetric) {
        failures.extend(mismatch(p("g1 not symmetric"), "non-symmetric", &g1));
    }
    let g2 = f132.get(2);
    let low = (
        bigint_u64(&g2.coeff(3)),
        bigint_u64(&g2.coeff(4)),
        bigint_u64(&g2.coeff(5)),
    );
    match g132_low_coefficients(n) {
        Ok(want) if Some(want) == low_tuple(low) => {}
        Ok(want) => failures.extend(mismatch(p("g2 low coefficients"), format!("{want:?}"), format!("{low:?}"))),
        Err(e) => failures.extend(mismatch(p("g2 low coefficients"), format!("{low:?}"), format!("error: {e}"))),
    }
    if g2.shape_report().map_or(true, |r| r.unimodal) {
        failures.extend(mismatch(p("g2 not unimodal"), "non-unimodal", &g2));
    }
    (4, failures)
}

fn bigint_u64(b: &num_bigint::BigInt) -> Option<u64> {
    u64::try_from(b).ok()
}

fn low_tuple(t: (Option<u64>, Option<u64>, Option<u64>)) -> Option<(u64, u64, u64)> {
    Some((t.0?, t.1?, t.2?))
}

fn stanley_hook(n: usize) -> UnitOutcome {
    let shapes = partitions(n);
    par_cases(&shapes, |shape| {
        let p = params! {"shape" => shape.to_string()};
        let brute: QPolynomial = maj_distribution_by_descents(shape).terms().values().cloned().sum();
        match stanley_maj_gf(shape) {
            Ok(f) => compare(p, &brute, &f),
            Err(e) => mismatch(p, brute, format!("error: {e}")),
        }
    })
}
