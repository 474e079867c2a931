//! Counting SL_2(Z)-orbit points of bounded height and fitting the growth
//! exponent of `N(B)`.
//!
//! Completeness of a count rests on a stopping heuristic: matrix shells
//! `max |entry| <= T` grow geometrically until a fixed number of consecutive
//! shells contribute no new form of height `<= B`.

use std::collections::HashSet;
use std::io::{Read, Write};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::binary_forms::{act, disc, BinaryForm, UnimodularMatrix};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountPolicy {
    /// First shell bound.
    pub t0: u64,
    /// Ratio between consecutive shell bounds, `> 1`.
    pub growth: Rational,
    /// Consecutive shells without new forms needed to stop.
    pub stabilization_rounds: u32,
}

impl Default for CountPolicy {
    fn default() -> Self {
        Self {
            t0: 4,
            growth: int(2),
            stabilization_rounds: 2,
        }
    }
}

impl CountPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.t0 == 0 {
            return Err(Error::InvalidPolicy("t0 must be positive".into()));
        }
        if self.growth <= Rational::one() {
            return Err(Error::InvalidPolicy(format!("growth {} must exceed 1", self.growth)));
        }
        if self.stabilization_rounds == 0 {
            return Err(Error::InvalidPolicy("stabilization rounds must be positive".into()));
        }
        Ok(())
    }

    fn next_bound(&self, t: u64) -> u64 {
        let scaled = (Rational::from_integer(t.into()) * &self.growth).ceil().to_integer();
        scaled.to_u64().unwrap_or(u64::MAX).max(t + 1)
    }
}

/// `(B, N(B))` pairs with `B` strictly increasing and `N` nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    entries: Vec<(u64, u64)>,
}

impl CountSeries {
    pub fn new(entries: Vec<(u64, u64)>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidSeries(format!("B not increasing at {}", w[1].0)));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidSeries(format!("N decreases at B = {}", w[1].0)));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// `B,N` header followed by one pair per line.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["B", "N"]).map_err(io)?;
        for (b, n) in &self.entries {
            w.write_record([b.to_string(), n.to_string()]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    /// Reads `B,N` lines; a leading `B,N` header is optional.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(input);
        let mut entries = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.len() != 2 {
                return Err(Error::Parse(format!("line {}: expected 2 fields", i + 1)));
            }
            if i == 0 && &record[0] == "B" && &record[1] == "N" {
                continue;
            }
            let parse = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("line {}: not a count: `{s}`", i + 1)))
            };
            entries.push((parse(&record[0])?, parse(&record[1])?));
        }
        Self::new(entries)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    /// Least-squares slope of `log N` against `log B`.
    pub slope: f64,
    pub intercept: f64,
    /// `exp(intercept)`, the fitted constant `c` in `N ~ c B^slope`.
    pub constant: f64,
    pub residual_norm: f64,
    pub points: usize,
}

/// Ordinary least squares on `(ln B, ln N)` over entries with `N >= 1`.
pub fn fit_exponent(series: &CountSeries) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = series
        .entries
        .iter()
        .filter(|&&(b, n)| n >= 1 && b >= 1)
        .map(|&(b, n)| ((b as f64).ln(), (n as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData(pts.len()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual_norm = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(FitResult {
        slope,
        intercept,
        constant: intercept.exp(),
        residual_norm,
        points: pts.len(),
    })
}

type Entries = [i64; 4];

/// All `t` with `|c0 + t a| <= h`, or `None` if empty. `a = 0` gives the
/// whole line when `|c0| <= h`.
fn t_interval(c0: i64, a: i64, h: i64) -> Option<(i64, i64)> {
    if a == 0 {
        return (c0.abs() <= h).then_some((i64::MIN, i64::MAX));
    }
    let (x, y) = ((-h - c0), (h - c0));
    let (lo, hi) = if a > 0 {
        (Integer::div_ceil(&x, &a), Integer::div_floor(&y, &a))
    } else {
        (Integer::div_ceil(&y, &a), Integer::div_floor(&x, &a))
    };
    (lo <= hi).then_some((lo, hi))
}

fn intersect(p: Option<(i64, i64)>, q: Option<(i64, i64)>) -> Option<(i64, i64)> {
    let (p, q) = (p?, q?);
    let lo = p.0.max(q.0);
    let hi = p.1.min(q.1);
    (lo <= hi).then_some((lo, hi))
}

/// Bottom rows `(c, d)` completing the coprime top row `(a, b)` with
/// `lo < max|entry| <= hi`.
fn complete_row(a: i64, b: i64, lo: i64, hi: i64, emit: &mut impl FnMut(Entries)) {
    let g = a.extended_gcd(&b);
    if g.gcd != 1 {
        return;
    }
    // a x + b y = 1, so d0 = x, c0 = -y gives a d0 - b c0 = 1
    let (c0, d0) = (-g.y, g.x);
    let box_t = |h: i64| intersect(t_interval(c0, a, h), t_interval(d0, b, h));
    let Some(outer) = box_t(hi) else { return };
    let mut run = |range: (i64, i64)| {
        for t in range.0..=range.1 {
            emit([a, b, c0 + t * a, d0 + t * b]);
        }
    };
    if a.abs().max(b.abs()) > lo {
        run(outer);
        return;
    }
    match box_t(lo) {
        None => run(outer),
        Some(inner) => {
            if outer.0 < inner.0 {
                run((outer.0, inner.0 - 1));
            }
            if inner.1 < outer.1 {
                run((inner.1 + 1, outer.1));
            }
        }
    }
}

/// Matrices with `lo < max|entry| <= hi` whose top-row first entry lies in `a_range`.
fn shell(lo: i64, hi: i64, a_range: std::ops::RangeInclusive<i64>, mut emit: impl FnMut(Entries)) {
    for a in a_range {
        for b in -hi..=hi {
            complete_row(a, b, lo, hi, &mut emit);
        }
    }
}

/// Every integer matrix of determinant 1 with entries bounded by `t` in
/// absolute value, each exactly once.
pub fn enumerate_unimodular(t: u64) -> impl Iterator<Item = UnimodularMatrix> {
    let t = i64::try_from(t).expect("bound fits i64");
    let mut out = Vec::new();
    shell(0, t, -t..=t, |m| out.push(m));
    out.into_iter()
        .map(|[a, b, c, d]| UnimodularMatrix::from_i64(a, b, c, d).expect("det 1 by construction"))
}

/// Number of matrices `enumerate_unimodular(t)` yields, without allocating them.
pub fn count_unimodular(t: u64) -> u64 {
    let t = i64::try_from(t).expect("bound fits i64");
    let mut k = 0u64;
    shell(0, t, -t..=t, |_| k += 1);
    k
}

/// `f(z, w)` by homogeneous Horner in checked `i128`.
fn eval_i128(coeffs: &[i128], z: i128, w: i128) -> Option<i128> {
    let mut acc = coeffs[0];
    let mut wp: i128 = 1;
    for x in &coeffs[1..] {
        wp = wp.checked_mul(w)?;
        acc = acc.checked_mul(z)?.checked_add(x.checked_mul(wp)?)?;
    }
    Some(acc)
}

fn act_i128(coeffs: &[i128], m: Entries) -> Option<Vec<i128>> {
    let n = coeffs.len() - 1;
    let [a, b, c, d] = m.map(i128::from);
    let power = |p: i128, q: i128, k: usize| -> Option<Vec<i128>> {
        let mut v = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let binom = i128::from(binomial(k as u64, i as u64));
            v.push(binom.checked_mul(p.checked_pow((k - i) as u32)?)?.checked_mul(q.checked_pow(i as u32)?)?);
        }
        Some(v)
    };
    let mut out = vec![0i128; n + 1];
    for (i, &x) in coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let left = power(a, b, n - i)?;
        let right = power(c, d, i)?;
        for (p, l) in left.iter().enumerate() {
            for (q, r) in right.iter().enumerate() {
                out[p + q] = out[p + q].checked_add(x.checked_mul(*l)?.checked_mul(*r)?)?;
            }
        }
    }
    Some(out)
}

/// The image of `f` under `m` if its height is at most `bound`.
fn image_within(f: &BinaryForm, small: &[i128], m: Entries, bound: i128) -> Option<Vec<i64>> {
    let fits = |v: Option<i128>| v.is_some_and(|x| x.abs() <= bound);
    let exact = |z: i64, w: i64| f.evaluate(&BigInt::from(z), &BigInt::from(w)).abs() <= BigInt::from(bound);
    // leading and trailing coefficients are f(a, c) and f(b, d)
    for (z, w) in [(m[0], m[2]), (m[1], m[3])] {
        match eval_i128(small, i128::from(z), i128::from(w)) {
            Some(v) if v.abs() > bound => return None,
            Some(_) => {}
            None if !exact(z, w) => return None,
            None => {}
        }
    }
    let coeffs: Vec<i128> = match act_i128(small, m) {
        Some(v) => v,
        None => {
            let g = act(f, &UnimodularMatrix::from_i64(m[0], m[1], m[2], m[3]).expect("det 1"));
            if g.coeffs().iter().any(|c| c.abs() > BigInt::from(bound)) {
                return None;
            }
            g.coeffs().iter().map(|c| c.to_i128().expect("bounded")).collect()
        }
    };
    if !coeffs.iter().all(|&c| fits(Some(c))) {
        return None;
    }
    Some(coeffs.into_iter().map(|c| c as i64).collect())
}

/// Polynomial in one variable with ascending `i128` coefficients.
#[derive(Clone, Debug)]
struct Poly(Vec<i128>);

impl Poly {
    fn eval(&self, x: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for c in self.0.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(*c)?;
        }
        Some(acc)
    }

    /// `|p(m + h)| >= |p(m)| - sum_k |p_k(m)| H^k` for `|h| <= H`, from the
    /// Taylor expansion at `m`. `None` on overflow.
    fn lower_bound(&self, m: i128, radius: i128) -> Option<i128> {
        let deg = self.0.len().saturating_sub(1);
        let mut lower = 0i128;
        let mut rpow: i128 = 1;
        for k in 0..=deg {
            // k-th Taylor coefficient at m
            let mut tk: i128 = 0;
            let mut mpow: i128 = 1;
            for j in k..=deg {
                let binom = i128::from(binomial(j as u64, k as u64));
                tk = tk.checked_add(binom.checked_mul(self.0[j])?.checked_mul(mpow)?)?;
                mpow = mpow.checked_mul(m)?;
            }
            if k == 0 {
                lower = tk.checked_abs()?;
            } else {
                rpow = rpow.checked_mul(radius)?;
                lower = lower.checked_sub(tk.checked_abs()?.checked_mul(rpow)?)?;
            }
        }
        Some(lower)
    }
}

/// Calls `hit` for every integer `x` in `[lo, hi]` with `|p(x)| <= bound`,
/// where `exact(x)` decides the leaves the fast path cannot. Intervals are
/// discarded whole when a Taylor lower bound exceeds `bound`.
fn small_values(
    p: &Poly,
    lo: i64,
    hi: i64,
    bound: i128,
    exact: &dyn Fn(i64) -> bool,
    hit: &mut dyn FnMut(i64),
) {
    if lo > hi {
        return;
    }
    if hi - lo < 16 {
        for x in lo..=hi {
            let ok = match p.eval(i128::from(x)) {
                Some(v) => v.abs() <= bound,
                None => exact(x),
            };
            if ok {
                hit(x);
            }
        }
        return;
    }
    let mid = lo + (hi - lo) / 2;
    let radius = (mid - lo).max(hi - mid);
    if let Some(lb) = p.lower_bound(i128::from(mid), i128::from(radius)) {
        if lb > bound {
            return;
        }
    }
    small_values(p, lo, mid, bound, exact, hit);
    small_values(p, mid + 1, hi, bound, exact, hit);
}

/// Ascending coefficients in `t` of `f(b0 + t a, d0 + t c)`; `None` on overflow.
fn line_restriction(coeffs: &[i128], b0: i64, a: i64, d0: i64, c: i64) -> Option<Poly> {
    let n = coeffs.len() - 1;
    // (p + t q)^k ascending in t
    let power = |p: i128, q: i128, k: usize| -> Option<Vec<i128>> {
        let mut v = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let binom = i128::from(binomial(k as u64, i as u64));
            v.push(binom.checked_mul(p.checked_pow((k - i) as u32)?)?.checked_mul(q.checked_pow(i as u32)?)?);
        }
        Some(v)
    };
    let mut out = vec![0i128; n + 1];
    for (i, &x) in coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let left = power(i128::from(b0), i128::from(a), n - i)?;
        let right = power(i128::from(d0), i128::from(c), i)?;
        for (p, l) in left.iter().enumerate() {
            for (q, r) in right.iter().enumerate() {
                out[p + q] = out[p + q].checked_add(x.checked_mul(*l)?.checked_mul(*r)?)?;
            }
        }
    }
    Some(Poly(out))
}

/// Orbit elements of height `<= bound` coming from matrices with
/// `lo < max|entry| <= hi` whose lower-left entry lies in `c_range`.
///
/// Enumerates by columns: the first column `(a, c)` must satisfy
/// `|f(a, c)| <= bound`, the second column `(b0 + t a, d0 + t c)` must
/// satisfy `|f(b, d)| <= bound`; both are located by [`small_values`].
fn pruned_shell(
    f: &BinaryForm,
    small: &[i128],
    lo: i64,
    hi: i64,
    bound: i128,
    c_range: std::ops::RangeInclusive<i64>,
    emit: &mut impl FnMut(Vec<i64>),
) {
    let exact_at = |z: i64, w: i64| f.evaluate(&BigInt::from(z), &BigInt::from(w)).abs() <= BigInt::from(bound);
    let n = small.len() - 1;
    for c in c_range {
        // f(a, c) as a polynomial in a
        let column = (0..=n)
            .map(|k| small[n - k].checked_mul(i128::from(c).checked_pow((n - k) as u32)?))
            .collect::<Option<Vec<i128>>>()
            .map(Poly);
        let mut firsts = Vec::new();
        match &column {
            Some(p) => small_values(p, -hi, hi, bound, &|a| exact_at(a, c), &mut |a| firsts.push(a)),
            None => firsts.extend((-hi..=hi).filter(|&a| exact_at(a, c))),
        }
        for a in firsts {
            let g = a.extended_gcd(&c);
            if g.gcd != 1 {
                continue;
            }
            // a d0 - b0 c = 1
            let (b0, d0) = (-g.y, g.x);
            let box_t = |h: i64| intersect(t_interval(b0, a, h), t_interval(d0, c, h));
            let Some(outer) = box_t(hi) else { continue };
            let ranges: Vec<(i64, i64)> = if a.abs().max(c.abs()) > lo {
                vec![outer]
            } else {
                match box_t(lo) {
                    None => vec![outer],
                    Some(inner) => [(outer.0, inner.0 - 1), (inner.1 + 1, outer.1)]
                        .into_iter()
                        .filter(|r| r.0 <= r.1)
                        .collect(),
                }
            };
            let line = line_restriction(small, b0, a, d0, c);
            let exact_t = |t: i64| exact_at(b0 + t * a, d0 + t * c);
            for (t_lo, t_hi) in ranges {
                let mut check = |t: i64| {
                    let m = [a, b0 + t * a, c, d0 + t * c];
                    if let Some(g) = image_within(f, small, m, bound) {
                        emit(g);
                    }
                };
                match &line {
                    Some(p) => small_values(p, t_lo, t_hi, bound, &exact_t, &mut check),
                    None => (t_lo..=t_hi).filter(|&t| exact_t(t)).for_each(&mut check),
                }
            }
        }
    }
}

/// Distinct orbit elements of height at most `bound`, found shell by shell
/// until the policy's stopping rule fires. The `c`-range of each shell is
/// split into `shards` pieces processed in parallel and merged as a set.
fn collect_orbit(f: &BinaryForm, bound: u64, policy: &CountPolicy, shards: usize) -> Result<HashSet<Vec<i64>>> {
    policy.validate()?;
    if f.degree() >= 2 && disc(f)?.is_zero() {
        return Err(Error::NonGenericForm);
    }
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall(f.degree()));
    }
    let small: Vec<i128> = f
        .coeffs()
        .iter()
        .map(|c| c.to_i128().ok_or_else(|| Error::Parse(format!("coefficient {c} too large"))))
        .collect::<Result<_>>()?;
    let bound128 = i128::from(bound);
    let shards = shards.max(1) as i64;

    let mut found: HashSet<Vec<i64>> = HashSet::new();
    let mut lo: u64 = 0;
    let mut hi: u64 = policy.t0;
    let mut quiet = 0;
    loop {
        let h = i64::try_from(hi).map_err(|_| Error::InvalidPolicy("shell bound overflow".into()))?;
        let l = lo as i64;
        let width = 2 * h + 1;
        let chunk = (width + shards - 1) / shards;
        let parts: Vec<HashSet<Vec<i64>>> = (0..shards)
            .into_par_iter()
            .map(|s| {
                let start = -h + s * chunk;
                let end = (start + chunk - 1).min(h);
                let mut local = HashSet::new();
                if start <= end {
                    pruned_shell(f, &small, l, h, bound128, start..=end, &mut |g| {
                        local.insert(g);
                    });
                }
                local
            })
            .collect();
        let before = found.len();
        for part in parts {
            found.extend(part);
        }
        if found.len() == before {
            quiet += 1;
            if quiet >= policy.stabilization_rounds {
                break;
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        hi = policy.next_bound(hi);
    }
    Ok(found)
}

fn default_shards() -> usize {
    rayon::current_num_threads().max(1) * 4
}

/// Number of distinct forms `SL_2(Z)`-equivalent to `f` with height `<= bound`.
pub fn count_orbit(f: &BinaryForm, bound: u64, policy: &CountPolicy) -> Result<u64> {
    Ok(collect_orbit(f, bound, policy, default_shards())?.len() as u64)
}

/// `count_orbit` at every grid point from one enumeration pass up to the largest bound.
pub fn count_series(f: &BinaryForm, grid: &[u64], policy: &CountPolicy) -> Result<CountSeries> {
    count_series_sharded(f, grid, policy, default_shards())
}

pub fn count_series_sharded(
    f: &BinaryForm,
    grid: &[u64],
    policy: &CountPolicy,
    shards: usize,
) -> Result<CountSeries> {
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSeries("grid must be strictly increasing".into()));
    }
    let Some(&bmax) = grid.last() else {
        return CountSeries::new(Vec::new());
    };
    let forms = collect_orbit(f, bmax, policy, shards)?;
    let mut heights: Vec<u64> = forms
        .iter()
        .map(|g| g.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0))
        .collect();
    heights.sort_unstable();
    let entries = grid
        .iter()
        .map(|&b| (b, heights.partition_point(|&h| h <= b) as u64))
        .collect();
    CountSeries::new(entries)
}

/// The distinct orbit elements themselves, sorted; mostly for inspection.
pub fn orbit_elements(f: &BinaryForm, bound: u64, policy: &CountPolicy) -> Result<Vec<BinaryForm>> {
    let mut v: Vec<Vec<i64>> = collect_orbit(f, bound, policy, default_shards())?.into_iter().collect();
    v.sort();
    v.into_iter().map(|c| BinaryForm::from_i64(&c)).collect()
}

/// `base * 2^k` for `k = 0..len`.
pub fn geometric_grid(base: u64, len: usize) -> Vec<u64> {
    (0..len).map(|k| base << k).collect()
}
