//! Integer binary forms `f = x_0 z^n + x_1 z^{n-1} w + ... + x_n w^n`, the
//! substitution action of SL_2(Z), and discriminants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Coefficients `x_0, ..., x_n`; the degree is `len - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("a form needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Comma-separated integers, degree inferred from the count.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("not an integer: `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `f(z, w)` at an integer point.
    pub fn evaluate(&self, z: &BigInt, w: &BigInt) -> BigInt {
        let n = self.degree();
        let mut acc = BigInt::zero();
        for (i, x) in self.coeffs.iter().enumerate() {
            acc += x * num_traits::pow(z.clone(), n - i) * num_traits::pow(w.clone(), i);
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).expect("det 1")
    }

    pub fn minus_identity() -> Self {
        Self::from_i64(-1, 0, 0, -1).expect("det 1")
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// Max absolute entry.
    pub fn norm(&self) -> BigInt {
        self.entries().into_iter().map(|x| x.abs()).max().expect("four entries")
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Coefficients of `(p z + q w)^k`, indexed by the power of `w`.
fn linear_power(p: &BigInt, q: &BigInt, k: usize) -> Vec<BigInt> {
    (0..=k)
        .map(|i| BigInt::from(binomial(k as u64, i as u64)) * num_traits::pow(p.clone(), k - i) * num_traits::pow(q.clone(), i))
        .collect()
}

/// `f(a z + b w, c z + d w)`. Satisfies `act(act(f, m), m') = act(f, m m')`.
pub fn act(f: &BinaryForm, m: &UnimodularMatrix) -> BinaryForm {
    let n = f.degree();
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, x) in f.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let left = linear_power(&m.a, &m.b, n - i);
        let right = linear_power(&m.c, &m.d, i);
        for (p, l) in left.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (q, r) in right.iter().enumerate() {
                out[p + q] += x * l * r;
            }
        }
    }
    BinaryForm { coeffs: out }
}

pub fn height(f: &BinaryForm) -> BigInt {
    f.coeffs.iter().map(|c| c.abs()).max().expect("nonempty")
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!(v.is_multiple_of(&prev));
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// Sylvester matrix of two polynomials given by descending coefficients.
pub fn sylvester_matrix(p: &[BigInt], q: &[BigInt]) -> Vec<Vec<BigInt>> {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..dq {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in p.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in q.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `(-1)^{n(n-1)/2} Res(p, p') / x_0` with `p(z) = f(z, 1)`.
///
/// When `x_0 = 0` and `x_1 = 0` the form has a double root at infinity and
/// the value is 0. When only `x_0 = 0`, the form is first moved by a shear
/// `(z, w) -> (z, t z + w)` with `f(1, t) != 0`; the discriminant is
/// SL_2-invariant so the value is unchanged.
pub fn disc(f: &BinaryForm) -> Result<BigInt> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    if f.coeffs[0].is_zero() {
        if f.coeffs[1].is_zero() {
            return Ok(BigInt::zero());
        }
        let one = BigInt::one();
        let mut t = BigInt::one();
        // f(1, t) vanishes for at most n values of t
        while f.evaluate(&one, &t).is_zero() {
            t += 1;
        }
        let shear = UnimodularMatrix::new(one.clone(), BigInt::zero(), t, one).expect("det 1");
        return disc(&act(f, &shear));
    }
    let p = &f.coeffs;
    let dp: Vec<BigInt> = p[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigInt::from(n - i))
        .collect();
    let res = bareiss_determinant(sylvester_matrix(p, &dp));
    let (quot, rem) = res.div_rem(&p[0]);
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -quot } else { quot })
}

/// The cubic discriminant polynomial
/// `27 x0^2 x3^2 - 18 x0 x1 x2 x3 + 4 x0 x2^3 + 4 x1^3 x3 - x1^2 x2^2`.
pub fn disc_cubic_classical(x0: &BigInt, x1: &BigInt, x2: &BigInt, x3: &BigInt) -> BigInt {
    BigInt::from(27) * x0 * x0 * x3 * x3 - BigInt::from(18) * x0 * x1 * x2 * x3
        + BigInt::from(4) * x0 * x2 * x2 * x2
        + BigInt::from(4) * x1 * x1 * x1 * x3
        - x1 * x1 * x2 * x2
}

/// Ratio `disc / disc_cubic_classical` over `sample_count` random cubics with
/// coefficients in `[-50, 50]` and nonzero discriminant.
pub fn compare_disc_conventions<R: Rng + ?Sized>(sample_count: usize, rng: &mut R) -> Result<Rational> {
    if sample_count == 0 {
        return Err(Error::InsufficientData(0));
    }
    let mut ratio: Option<Rational> = None;
    let mut taken = 0;
    while taken < sample_count {
        let xs: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect();
        let classical = disc_cubic_classical(&xs[0], &xs[1], &xs[2], &xs[3]);
        if classical.is_zero() {
            continue;
        }
        let ours = disc(&BinaryForm::new(xs)?)?;
        let r = Rational::new(ours, classical);
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev != r => {
                return Err(Error::InconsistentRatio {
                    first: prev.to_string(),
                    second: r.to_string(),
                })
            }
            _ => {}
        }
        taken += 1;
    }
    Ok(ratio.expect("at least one sample"))
}
