//! Invariant Picard data of the generic fiber: `(P^1)^3` blown up along the
//! small diagonal (exceptional divisor `E`) and then along `n - 3` sections
//! (exceptional divisors `F_4, ..., F_n`).
//!
//! Coordinates are over the ordered basis `(g1, g2, g3, E, F4, ..., Fn)`;
//! `F1, F2, F3` are the proper transforms of the large diagonals and are
//! derived classes.

use std::fmt;

use num_traits::Zero;

use crate::cone_engine::{kodaira_energy, KodairaEnergy};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational, RationalMatrix, RationalVector};
use crate::terms::{format_terms, parse_terms};

const E_INDEX: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberClass {
    n: usize,
    coords: RationalVector,
}

impl FiberClass {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPointCount(n));
        }
        Ok(Self {
            n,
            coords: vec![Rational::zero(); n + 1],
        })
    }

    pub fn from_coords(n: usize, coords: RationalVector) -> Result<Self> {
        let mut c = Self::zero(n)?;
        if coords.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                actual: coords.len(),
            });
        }
        c.coords = coords;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn basis_labels(n: usize) -> Vec<String> {
        let mut labels: Vec<String> = ["g1", "g2", "g3", "E"].iter().map(|s| s.to_string()).collect();
        labels.extend((4..=n).map(|k| format!("F{k}")));
        labels
    }

    fn add_scaled(&mut self, other: &FiberClass, q: &Rational) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += q * b;
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            n: self.n,
            coords: self.coords.iter().map(|x| x * q).collect(),
        }
    }

    pub fn plus(&self, other: &FiberClass) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut out = self.clone();
        out.add_scaled(other, &int(1));
        Ok(out)
    }

    /// Parses `q*g1 + q*E + q*F5 + ...`; only basis symbols are accepted.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let labels = Self::basis_labels(n);
        let mut class = Self::zero(n)?;
        for (q, label) in parse_terms(text)? {
            let idx = labels
                .iter()
                .position(|l| *l == label)
                .ok_or_else(|| Error::Parse(format!("unknown fiber symbol `{label}`")))?;
            class.coords[idx] += q;
        }
        Ok(class)
    }
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = Self::basis_labels(self.n);
        f.write_str(&format_terms(self.coords.iter().zip(labels)))
    }
}

/// `sub * A[n-1] + top * A[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AClass {
    pub n: usize,
    pub sub: Rational,
    pub top: Rational,
}

impl AClass {
    pub fn new(n: usize, sub: Rational, top: Rational) -> Self {
        Self { n, sub, top }
    }

    pub fn expand(&self) -> Result<FiberClass> {
        let mut out = FiberClass::zero(self.n)?;
        out.add_scaled(&fiber_class(self.n, FiberName::ASub)?, &self.sub);
        out.add_scaled(&fiber_class(self.n, FiberName::ATop)?, &self.top);
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberName {
    G(usize),
    E,
    F(usize),
    Delta(usize, usize),
    /// `A[n] = E`
    ATop,
    /// `A[n-1] = F1 + ... + Fn`
    ASub,
    K,
    /// Pullback of the hyperplane class, `((n-2) A[n-1] + n A[n]) / 2`.
    LHalf,
    /// `B[2]` on `M_{0,3}(P^1, 1)`; only meaningful for `n = 3`.
    B2N3,
}

impl std::str::FromStr for FiberName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadName(s.to_string());
        let digit = |c: char| c.to_digit(10).map(|d| d as usize).ok_or_else(bad);
        Ok(match s {
            "E" => FiberName::E,
            "A_top" => FiberName::ATop,
            "A_sub" => FiberName::ASub,
            "K" => FiberName::K,
            "Lhalf" => FiberName::LHalf,
            "B2_n3" => FiberName::B2N3,
            _ => {
                if let Some(rest) = s.strip_prefix("Delta") {
                    let mut chars = rest.chars();
                    match (chars.next(), chars.next(), chars.next()) {
                        (Some(i), Some(j), None) => FiberName::Delta(digit(i)?, digit(j)?),
                        _ => return Err(bad()),
                    }
                } else if let Some(rest) = s.strip_prefix('g') {
                    FiberName::G(rest.parse().map_err(|_| bad())?)
                } else if let Some(rest) = s.strip_prefix('F') {
                    FiberName::F(rest.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

fn unit(n: usize, idx: usize) -> FiberClass {
    let mut c = FiberClass::zero(n).expect("n validated");
    c.coords[idx] = int(1);
    c
}

/// `g_i + g_j - E` for `i != j` in `{1, 2, 3}`.
fn large_diagonal(n: usize, i: usize, j: usize) -> Result<FiberClass> {
    for idx in [i, j] {
        if !(1..=3).contains(&idx) {
            return Err(Error::BadIndex { index: idx, n: 3 });
        }
    }
    if i == j {
        return Err(Error::BadIndex { index: j, n: 3 });
    }
    let mut c = unit(n, i - 1);
    c.coords[j - 1] += int(1);
    c.coords[E_INDEX] -= int(1);
    Ok(c)
}

/// Expanded coordinates of a named class.
pub fn fiber_class(n: usize, name: FiberName) -> Result<FiberClass> {
    let zero = FiberClass::zero(n)?;
    Ok(match name {
        FiberName::G(i) => {
            if !(1..=3).contains(&i) {
                return Err(Error::BadIndex { index: i, n: 3 });
            }
            unit(n, i - 1)
        }
        FiberName::E | FiberName::ATop => unit(n, E_INDEX),
        FiberName::F(k) => {
            if !(1..=n).contains(&k) {
                return Err(Error::BadIndex { index: k, n });
            }
            if k >= 4 {
                unit(n, k)
            } else {
                let (i, j) = match k {
                    1 => (2, 3),
                    2 => (1, 3),
                    _ => (1, 2),
                };
                let mut c = large_diagonal(n, i, j)?;
                for m in 4..=n {
                    c.coords[m] -= int(1);
                }
                c
            }
        }
        FiberName::Delta(i, j) => large_diagonal(n, i, j)?,
        FiberName::ASub => {
            let mut c = zero;
            for k in 1..=n {
                c.add_scaled(&fiber_class(n, FiberName::F(k))?, &int(1));
            }
            c
        }
        FiberName::K => {
            let mut c = zero;
            for i in 0..3 {
                c.coords[i] = int(-2);
            }
            c.coords[E_INDEX] = int(1);
            for m in 4..=n {
                c.coords[m] = int(2);
            }
            c
        }
        FiberName::LHalf => {
            let nn = n as i64;
            let mut c = zero;
            c.add_scaled(&fiber_class(n, FiberName::ASub)?, &ratio(nn - 2, 2));
            c.add_scaled(&fiber_class(n, FiberName::ATop)?, &ratio(nn, 2));
            c
        }
        FiberName::B2N3 => {
            if n != 3 {
                return Err(Error::BadIndex { index: n, n: 3 });
            }
            let mut c = zero;
            for i in 0..3 {
                c.coords[i] = int(2);
            }
            c.coords[E_INDEX] = int(-3);
            c
        }
    })
}

/// Unique coordinates of `c` in the span of `A[n-1]` and `A[n]`.
pub fn to_a_basis(c: &FiberClass) -> Result<AClass> {
    let n = c.n;
    let sub = fiber_class(n, FiberName::ASub)?;
    let top = fiber_class(n, FiberName::ATop)?;
    let columns = RationalMatrix::from_rows(
        sub.coords
            .iter()
            .zip(&top.coords)
            .map(|(a, b)| vec![a.clone(), b.clone()])
            .collect(),
    )?;
    let x = columns.solve(&c.coords)?.ok_or(Error::NotInSpan)?;
    Ok(AClass::new(n, x[0].clone(), x[1].clone()))
}

/// Degree on the curve `R` inside `A[n] = E`: `A[n-1] . R = n`, `A[n] . R = 2 - n`.
pub fn pair_r(c: &AClass) -> Rational {
    let n = c.n as i64;
    &c.sub * int(n) + &c.top * int(2 - n)
}

/// Kodaira energy of the hyperplane class with respect to `K + A[n-1] + A[n]`,
/// with the effective cone generated by `A[n-1]` and `A[n]`.
pub fn kodaira_fiber(n: usize) -> Result<Rational> {
    let k = to_a_basis(&fiber_class(n, FiberName::K)?)?;
    let base = [&k.sub + int(1), &k.top + int(1)];
    let l = to_a_basis(&fiber_class(n, FiberName::LHalf)?)?;
    let direction = [l.sub, l.top];
    match kodaira_energy(&base, &direction)? {
        KodairaEnergy::Value(a) => Ok(a),
        other => unreachable!("fiber direction is positive, got {other}"),
    }
}

/// One exact identity between fiber classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: FiberClass,
    pub rhs: FiberClass,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `2((n-2)(g1+g2+g3) - (n-3)E - (n-2)(F4+...+Fn))`, written directly in the basis.
fn hyperplane_multline_rhs(n: usize) -> Result<FiberClass> {
    let nn = n as i64;
    let mut c = FiberClass::zero(n)?;
    for i in 0..3 {
        c.coords[i] = int(2 * (nn - 2));
    }
    c.coords[E_INDEX] = int(-2 * (nn - 3));
    for m in 4..=n {
        c.coords[m] = int(-2 * (nn - 2));
    }
    Ok(c)
}

/// The basis identities of the fiber model for a given `n`:
/// the canonical class as `-A[n-1] - 2A[n]`, the hyperplane multline,
/// the A-basis round trip of `L`, and (for `n = 3`) `B[2] = A[2]`.
pub fn basis_identities(n: usize) -> Result<Vec<IdentityCheck>> {
    let k = fiber_class(n, FiberName::K)?;
    let k_from_a = AClass::new(n, int(-1), int(-2)).expand()?;
    let multline_lhs = AClass::new(n, int(n as i64 - 2), int(n as i64)).expand()?;
    let l = fiber_class(n, FiberName::LHalf)?;
    let mut checks = vec![
        IdentityCheck {
            name: "K = -A[n-1] - 2A[n]",
            lhs: k,
            rhs: k_from_a,
        },
        IdentityCheck {
            name: "(n-2)A[n-1] + nA[n] = 2((n-2)(g1+g2+g3) - (n-3)E - (n-2)(F4+...+Fn))",
            lhs: multline_lhs,
            rhs: hyperplane_multline_rhs(n)?,
        },
        IdentityCheck {
            name: "L round trip through the A-basis",
            lhs: to_a_basis(&l)?.expand()?,
            rhs: l,
        },
    ];
    if n == 3 {
        checks.push(IdentityCheck {
            name: "B[2] = A[2] on n = 3",
            lhs: fiber_class(3, FiberName::B2N3)?,
            rhs: fiber_class(3, FiberName::ASub)?,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn named_classes() {
        assert_eq!(fiber_class(4, FiberName::F(1)).unwrap().coords, coords(&[0, 1, 1, -1, -1]));
        assert_eq!(fiber_class(3, FiberName::K).unwrap().coords, coords(&[-2, -2, -2, 1]));
        assert_eq!(fiber_class(4, FiberName::ASub).unwrap().coords, coords(&[2, 2, 2, -3, -2]));
        assert_eq!(fiber_class(5, FiberName::F(5)).unwrap().coords, coords(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(
            fiber_class(3, FiberName::Delta(1, 3)).unwrap().coords,
            coords(&[1, 0, 1, -1])
        );
    }

    #[test]
    fn bad_names_and_indices() {
        assert!(matches!("Q".parse::<FiberName>(), Err(Error::BadName(_))));
        assert!(matches!("Delta1".parse::<FiberName>(), Err(Error::BadName(_))));
        assert_eq!("Delta12".parse::<FiberName>().unwrap(), FiberName::Delta(1, 2));
        assert_eq!("F7".parse::<FiberName>().unwrap(), FiberName::F(7));
        assert!(matches!(fiber_class(4, FiberName::F(5)), Err(Error::BadIndex { .. })));
        assert!(matches!(fiber_class(4, FiberName::G(4)), Err(Error::BadIndex { .. })));
        assert!(fiber_class(4, FiberName::B2N3).is_err());
        assert!(fiber_class(4, FiberName::Delta(2, 2)).is_err());
    }

    #[test]
    fn a_basis_examples() {
        for n in 3..=12 {
            let k = to_a_basis(&fiber_class(n, FiberName::K).unwrap()).unwrap();
            assert_eq!((k.sub, k.top), (int(-1), int(-2)));
            let l = to_a_basis(&fiber_class(n, FiberName::LHalf).unwrap()).unwrap();
            assert_eq!(l.sub, ratio(n as i64 - 2, 2));
            assert_eq!(l.top, ratio(n as i64, 2));
            assert_eq!(pair_r(&l), int(0));
        }
        assert_eq!(
            to_a_basis(&fiber_class(5, FiberName::G(1)).unwrap()),
            Err(Error::NotInSpan)
        );
    }

    #[test]
    fn pair_r_generators() {
        assert_eq!(pair_r(&AClass::new(6, int(1), int(0))), int(6));
        assert_eq!(pair_r(&AClass::new(6, int(0), int(1))), int(-4));
    }

    #[test]
    fn kodaira_values() {
        assert_eq!(kodaira_fiber(3).unwrap(), ratio(2, 3));
        assert_eq!(kodaira_fiber(10).unwrap(), ratio(1, 5));
        let k = to_a_basis(&fiber_class(7, FiberName::K).unwrap()).unwrap();
        let base = [&k.sub + int(1), &k.top + int(1)];
        assert_eq!(base, [int(0), int(-1)]);
    }

    #[test]
    fn n3_large_diagonal_class() {
        assert_eq!(
            fiber_class(3, FiberName::B2N3).unwrap(),
            fiber_class(3, FiberName::ASub).unwrap()
        );
    }

    #[test]
    fn identities_hold() {
        for n in 3..=9 {
            let checks = basis_identities(n).unwrap();
            assert_eq!(checks.len(), if n == 3 { 4 } else { 3 });
            assert!(checks.iter().all(IdentityCheck::holds));
        }
    }

    #[test]
    fn text_format() {
        let k = fiber_class(5, FiberName::K).unwrap();
        let text = k.to_string();
        assert_eq!(text, "-2*g1 - 2*g2 - 2*g3 + 1*E + 2*F4 + 2*F5");
        assert_eq!(FiberClass::parse(&text, 5).unwrap(), k);
        assert!(FiberClass::parse("1*F6", 5).is_err());
    }
}
