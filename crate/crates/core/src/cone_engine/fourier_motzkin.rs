//! Fourier–Motzkin elimination on affine systems `row . x >= rhs`.
//!
//! Used as an independent oracle for the simplex engine on small systems.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: RationalVector,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(coeffs: RationalVector, rhs: Rational) -> Self {
        Self { coeffs, rhs }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        dot(&self.coeffs, x) >= self.rhs
    }

    /// Positive rescaling to coprime integer coefficients; keeps duplicate
    /// detection exact.
    fn normalized(&self) -> Self {
        let mut lcm = BigInt::one();
        for q in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(q.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if g.is_zero() {
            return self.clone();
        }
        let scaled: Vec<Rational> = ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect();
        let (rhs, coeffs) = scaled.split_last().expect("nonempty");
        Self {
            coeffs: coeffs.to_vec(),
            rhs: rhs.clone(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.rhs.is_positive()
    }

    /// `0 >= rhs` with `rhs > 0`.
    pub fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && self.rhs.is_positive()
    }
}

/// Eliminates `var`: every (positive, negative) row pair is combined so the
/// variable cancels; rows not involving it pass through. The column of
/// `var` is kept (all zero) so dimensions are unchanged.
pub fn eliminate(rows: &[Inequality], var: usize) -> Vec<Inequality> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = BTreeSet::new();
    for row in rows {
        let a = &row.coeffs[var];
        if a.is_positive() {
            pos.push(row);
        } else if a.is_negative() {
            neg.push(row);
        } else {
            out.insert(row.normalized());
        }
    }
    for p in &pos {
        for q in &neg {
            let wp = -&q.coeffs[var];
            let wq = p.coeffs[var].clone();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(x, y)| &wp * x + &wq * y)
                .collect::<Vec<_>>();
            let rhs = &wp * &p.rhs + &wq * &q.rhs;
            let mut combined = Inequality::new(coeffs, rhs);
            combined.coeffs[var] = Rational::zero();
            out.insert(combined.normalized());
        }
    }
    out.into_iter().filter(|r| !r.is_trivial()).collect()
}

/// Feasible interval for `var` given values of every other coordinate.
/// `None` bounds are infinite; returns `None` if the interval is empty.
pub fn lift_interval(
    rows: &[Inequality],
    var: usize,
    point: &[Rational],
) -> Option<(Option<Rational>, Option<Rational>)> {
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for row in rows {
        let a = &row.coeffs[var];
        let rest: Rational = row
            .coeffs
            .iter()
            .zip(point)
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, (c, x))| c * x)
            .sum();
        if a.is_zero() {
            if rest < row.rhs {
                return None;
            }
        } else if a.is_positive() {
            let b = (&row.rhs - &rest) / a;
            if lower.as_ref().is_none_or(|l| b > *l) {
                lower = Some(b);
            }
        } else {
            let b = (&row.rhs - &rest) / a;
            if upper.as_ref().is_none_or(|u| b < *u) {
                upper = Some(b);
            }
        }
    }
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l > u {
            return None;
        }
    }
    Some((lower, upper))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FmBound {
    Min(Rational),
    Unbounded,
    Infeasible,
}

/// Minimum of `x[objective]` over `rows`, by eliminating every other variable.
pub fn minimize(rows: &[Inequality], objective: usize) -> FmBound {
    let dim = rows.first().map_or(0, |r| r.coeffs.len());
    let mut system: Vec<Inequality> = rows.iter().map(Inequality::normalized).collect();
    for var in (0..dim).filter(|&v| v != objective) {
        system = eliminate(&system, var);
    }
    if system.iter().any(Inequality::is_contradiction) {
        return FmBound::Infeasible;
    }
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for row in &system {
        let a = &row.coeffs[objective];
        if a.is_positive() {
            let b = &row.rhs / a;
            if lower.as_ref().is_none_or(|l| b > *l) {
                lower = Some(b);
            }
        } else if a.is_negative() {
            let b = &row.rhs / a;
            if upper.as_ref().is_none_or(|u| b < *u) {
                upper = Some(b);
            }
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) if l > u => FmBound::Infeasible,
        (Some(l), _) => FmBound::Min(l),
        (None, _) => FmBound::Unbounded,
    }
}
