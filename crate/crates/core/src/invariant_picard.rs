//! The S_n-invariant divisor classes of the space of degree-one stable maps
//! to P^1 with n marked points, and their intersection numbers with the
//! boundary curve families `C_s` and `R_s`.
//!
//! Classes are written over `L` and `B[2..=n]`, where `B[s]` sums the
//! boundary divisors `B_S` with `|S| = s`. The one linear relation
//! `(n-1) L = sum_s s(s-1)/2 B[s]` lets every class be reduced to the
//! B-basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational, RationalMatrix};
use crate::terms::{format_terms, parse_terms};

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidPointCount(n))
    } else {
        Ok(())
    }
}

/// Divisor class `coeff_l * L + sum_s coeff_b[s] * B[s]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    n: usize,
    coeff_l: Rational,
    // index s - 2
    coeff_b: Vec<Rational>,
}

impl DivisorClass {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            coeff_l: Rational::zero(),
            coeff_b: vec![Rational::zero(); n - 1],
        })
    }

    /// Builds a class from an `L` coefficient and `(s, coefficient)` pairs.
    /// Repeated `s` values accumulate.
    pub fn new<I>(n: usize, coeff_l: Rational, coeff_b: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut class = Self::zero(n)?;
        class.coeff_l = coeff_l;
        for (s, q) in coeff_b {
            if !(2..=n).contains(&s) {
                return Err(Error::BadIndex { index: s, n });
            }
            class.coeff_b[s - 2] += q;
        }
        Ok(class)
    }

    pub fn l(n: usize) -> Result<Self> {
        Self::new(n, Rational::one(), [])
    }

    pub fn b(n: usize, s: usize) -> Result<Self> {
        Self::new(n, Rational::zero(), [(s, Rational::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff_l(&self) -> &Rational {
        &self.coeff_l
    }

    /// Coefficient of `B[s]`; zero outside `2..=n`.
    pub fn coeff_b(&self, s: usize) -> Rational {
        if (2..=self.n).contains(&s) {
            self.coeff_b[s - 2].clone()
        } else {
            Rational::zero()
        }
    }

    /// B-coefficients in order `B[2], ..., B[n]`.
    pub fn b_coords(&self) -> &[Rational] {
        &self.coeff_b
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_l.is_zero() && self.coeff_b.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            n: self.n,
            coeff_l: &self.coeff_l * q,
            coeff_b: self.coeff_b.iter().map(|x| x * q).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self {
            n: self.n,
            coeff_l: &self.coeff_l + &other.coeff_l,
            coeff_b: self
                .coeff_b
                .iter()
                .zip(&other.coeff_b)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(())
    }

    /// Parses `q*L + q*B[s] + ...` for the given `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut class = Self::zero(n)?;
        for (q, label) in parse_terms(text)? {
            if label == "L" {
                class.coeff_l += q;
                continue;
            }
            let s = label
                .strip_prefix("B[")
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown divisor symbol `{label}`")))?;
            if !(2..=n).contains(&s) {
                return Err(Error::BadIndex { index: s, n });
            }
            class.coeff_b[s - 2] += q;
        }
        Ok(class)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = std::iter::once((&self.coeff_l, "L".to_string())).chain(
            self.coeff_b
                .iter()
                .enumerate()
                .map(|(i, q)| (q, format!("B[{}]", i + 2))),
        );
        f.write_str(&format_terms(terms))
    }
}

/// Panics when the point counts differ; use [`DivisorClass::checked_add`]
/// for a fallible version.
impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("divisor classes on different spaces")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scale(&-Rational::one())
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    /// Fiber of forgetting the attaching point on the bubble component.
    C,
    /// Fiber of forgetting a point `tau` on the main component.
    R,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::C => f.write_str("C"),
            CurveKind::R => f.write_str("R"),
        }
    }
}

/// An S_n-averaged curve class `C_s` or `R_s` on the space with `n` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClassId {
    kind: CurveKind,
    s: usize,
    n: usize,
}

impl CurveClassId {
    pub fn new(kind: CurveKind, s: usize, n: usize) -> Result<Self> {
        check_n(n)?;
        let valid = match kind {
            CurveKind::C => (3..=n).contains(&s),
            CurveKind::R => (2..n).contains(&s),
        };
        if !valid {
            return Err(Error::InvalidCurve(format!("{kind}_{s} on n = {n}")));
        }
        Ok(Self { kind, s, n })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C_3, ..., C_n, R_2, ..., R_{n-1}`: the row order of [`pairing_matrix`].
    pub fn all(n: usize) -> Result<Vec<Self>> {
        check_n(n)?;
        let cs = (3..=n).map(|s| Self { kind: CurveKind::C, s, n });
        let rs = (2..n).map(|s| Self { kind: CurveKind::R, s, n });
        Ok(cs.chain(rs).collect())
    }
}

impl fmt::Display for CurveClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind, self.s)
    }
}

/// Subset of the marked points `{1, ..., 64}` as a bitmask (point `i` is bit `i - 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub fn from_points(points: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &p in points {
            if !(1..=64).contains(&p) {
                return Err(Error::InvalidSubset(format!("point {p} out of range")));
            }
            mask |= 1 << (p - 1);
        }
        Ok(Self(mask))
    }

    pub fn from_mask(mask: u64) -> Self {
        Self(mask)
    }

    /// `{1, ..., s}`
    pub fn initial(s: usize) -> Self {
        Self(if s >= 64 { u64::MAX } else { (1u64 << s) - 1 })
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, point: usize) -> bool {
        (1..=64).contains(&point) && self.0 & (1 << (point - 1)) != 0
    }

    pub fn with(&self, point: usize) -> Self {
        Self(self.0 | (1 << (point - 1)))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn within(&self, n: usize) -> bool {
        self.is_subset_of(&Subset::initial(n))
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=64).filter(move |&p| self.contains(p))
    }
}

/// A non-averaged representative: `C` in `B_S`, or `R` in `B_S` moving the point `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetCurve {
    kind: CurveKind,
    set: Subset,
    tau: Option<usize>,
    n: usize,
}

impl SubsetCurve {
    pub fn new(kind: CurveKind, set: Subset, tau: Option<usize>, n: usize) -> Result<Self> {
        check_n(n)?;
        if !set.within(n) {
            return Err(Error::InvalidSubset(format!("{set:?} not inside 1..={n}")));
        }
        let s = set.len();
        match kind {
            CurveKind::C => {
                if s < 3 {
                    return Err(Error::InvalidCurve(format!("C needs |S| >= 3, got {s}")));
                }
                if tau.is_some() {
                    return Err(Error::InvalidCurve("C curves carry no tau".into()));
                }
            }
            CurveKind::R => {
                if s < 2 || s > n - 1 {
                    return Err(Error::InvalidCurve(format!("R needs 2 <= |S| <= n-1, got {s}")));
                }
                match tau {
                    Some(t) if (1..=n).contains(&t) && !set.contains(t) => {}
                    _ => {
                        return Err(Error::InvalidCurve(format!(
                            "tau must be a point outside S, got {tau:?}"
                        )))
                    }
                }
            }
        }
        Ok(Self { kind, set, tau, n })
    }

    /// Fixed representative `S = {1..s}`, `tau = s + 1`.
    pub fn representative(curve: CurveClassId) -> Self {
        let tau = match curve.kind {
            CurveKind::C => None,
            CurveKind::R => Some(curve.s + 1),
        };
        Self {
            kind: curve.kind,
            set: Subset::initial(curve.s),
            tau,
            n: curve.n,
        }
    }

    pub fn class_id(&self) -> CurveClassId {
        CurveClassId {
            kind: self.kind,
            s: self.set.len(),
            n: self.n,
        }
    }

    pub fn set(&self) -> Subset {
        self.set
    }

    pub fn tau(&self) -> Option<usize> {
        self.tau
    }
}

/// One line of the relation derivation: how often size-`s` subsets contain a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRow {
    pub s: usize,
    /// Sum over all pairs `{a, a'}` of the number of size-`s` subsets containing it.
    pub incidences: u128,
    /// Number of size-`s` subsets.
    pub subsets: u128,
    /// `incidences / subsets`, the coefficient of `B[s]`.
    pub coefficient: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTrace {
    pub n: usize,
    pub pairs: u128,
    /// Number of pairs containing a fixed point: the coefficient of `L`.
    pub pairs_per_point: u128,
    pub rows: Vec<RelationRow>,
}

/// Sums `sum_{S ⊇ {a,a'}} B_S = L_a + L_{a'}` over all pairs by counting.
pub fn relation1_trace(n: usize) -> Result<RelationTrace> {
    check_n(n)?;
    let n128 = n as u128;
    let mut pairs = 0u128;
    let mut per_point = vec![0u128; n];
    for a in 0..n {
        for b in a + 1..n {
            pairs += 1;
            per_point[a] += 1;
            per_point[b] += 1;
        }
    }
    let pairs_per_point = per_point[0];
    debug_assert!(per_point.iter().all(|&c| c == pairs_per_point));

    let rows = (2..=n)
        .map(|s| {
            let s128 = s as u128;
            let containing_pair = binomial(n128 - 2, s128 - 2);
            let incidences = pairs * containing_pair;
            let subsets = binomial(n128, s128);
            debug_assert_eq!(incidences % subsets, 0);
            RelationRow {
                s,
                incidences,
                subsets,
                coefficient: incidences / subsets,
            }
        })
        .collect();
    Ok(RelationTrace {
        n,
        pairs,
        pairs_per_point,
        rows,
    })
}

/// The zero class `(n-1) L - sum_s s(s-1)/2 B[s]`, with coefficients
/// obtained by subset counting and checked against the closed form.
pub fn derive_relation1(n: usize) -> Result<DivisorClass> {
    let trace = relation1_trace(n)?;
    assert_eq!(trace.pairs_per_point, (n - 1) as u128);
    for row in &trace.rows {
        assert_eq!(row.coefficient, (row.s * (row.s - 1) / 2) as u128);
    }
    DivisorClass::new(
        n,
        Rational::from_integer(trace.pairs_per_point.into()),
        trace
            .rows
            .iter()
            .map(|r| (r.s, -Rational::from_integer(r.coefficient.into()))),
    )
}

/// Eliminates `L` using the relation: `B[s]` gains `coeff_l * s(s-1) / (2(n-1))`.
pub fn reduce_to_b(c: &DivisorClass) -> DivisorClass {
    if c.coeff_l.is_zero() {
        return c.clone();
    }
    let n = c.n as i64;
    let coeff_b = c
        .coeff_b
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let s = i as i64 + 2;
            q + &c.coeff_l * Rational::new((s * (s - 1)).into(), (2 * (n - 1)).into())
        })
        .collect();
    DivisorClass {
        n: c.n,
        coeff_l: Rational::zero(),
        coeff_b,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardDivisor {
    Canonical,
    Boundary,
    Hyperplane,
}

pub fn standard_class(n: usize, which: StandardDivisor) -> Result<DivisorClass> {
    match which {
        StandardDivisor::Canonical => {
            DivisorClass::new(n, int(-2), (3..=n).map(|s| (s, int(s as i64 - 2))))
        }
        StandardDivisor::Boundary => DivisorClass::new(n, Rational::zero(), (2..=n).map(|s| (s, int(1)))),
        StandardDivisor::Hyperplane => DivisorClass::l(n),
    }
}

/// `L . curve`: the C-curves are contracted by the map to P^n, the R-curves map to lines.
pub fn pair_l(curve: CurveClassId) -> i64 {
    match curve.kind {
        CurveKind::C => 0,
        CurveKind::R => 1,
    }
}

/// Averaged intersection with `B[j]` from the subsets `T != S` only.
fn off_diagonal_averaged(curve: CurveClassId, j: usize) -> i64 {
    let (s, n) = (curve.s as i64, curve.n as i64);
    let j = j as i64;
    match curve.kind {
        // T = S - {sigma}, one for each sigma in S
        CurveKind::C if j == s - 1 => s,
        CurveKind::C => 0,
        // T = S + {tau}, plus T = {tau, upsilon} for upsilon outside S and tau
        CurveKind::R => {
            let mut v = 0;
            if j == s + 1 {
                v += 1;
            }
            if j == 2 {
                v += n - s - 1;
            }
            v
        }
    }
}

/// Solves the relation paired against the curve for the unknown `B_S . curve`.
pub fn derive_self_pairing(kind: CurveKind, s: usize, n: usize) -> Result<Rational> {
    let curve = CurveClassId::new(kind, s, n)?;
    let lhs = int((n as i64 - 1) * pair_l(curve));
    let known: Rational = (2..=n)
        .map(|j| int((j * (j - 1) / 2) as i64 * off_diagonal_averaged(curve, j)))
        .sum();
    Ok((lhs - known) / int((s * (s - 1) / 2) as i64))
}

fn self_pairing_int(curve: CurveClassId) -> i64 {
    let q = derive_self_pairing(curve.kind, curve.s, curve.n).expect("curve already validated");
    assert!(q.is_integer(), "self-intersection {q} is not integral");
    q.to_integer().to_i64().expect("self-intersection fits i64")
}

/// `B_T . curve` for a subset-level representative.
pub fn pair_subset(curve: &SubsetCurve, t: Subset) -> Result<i64> {
    if !t.within(curve.n) {
        return Err(Error::InvalidSubset(format!("{t:?} not inside 1..={}", curve.n)));
    }
    if t.len() < 2 {
        return Err(Error::InvalidSubset(format!("|T| = {} < 2", t.len())));
    }
    if t == curve.set {
        return Ok(self_pairing_int(curve.class_id()));
    }
    let value = match curve.kind {
        CurveKind::C => i64::from(t.len() + 1 == curve.set.len() && t.is_subset_of(&curve.set)),
        CurveKind::R => {
            let tau = curve.tau.expect("R curves carry tau");
            if t == curve.set.with(tau) {
                1
            } else if t.len() == 2 && t.contains(tau) {
                let other = t.points().find(|&p| p != tau).expect("two points");
                i64::from(!curve.set.contains(other))
            } else {
                0
            }
        }
    };
    Ok(value)
}

/// `B[j] . curve`.
pub fn pair_averaged(curve: CurveClassId, j: usize) -> Result<i64> {
    if !(2..=curve.n).contains(&j) {
        return Err(Error::BadIndex { index: j, n: curve.n });
    }
    let mut v = off_diagonal_averaged(curve, j);
    if j == curve.s {
        v += self_pairing_int(curve);
    }
    Ok(v)
}

/// Bilinear extension of the tables to arbitrary classes.
pub fn pair(c: &DivisorClass, curve: CurveClassId) -> Result<Rational> {
    if c.n != curve.n {
        return Err(Error::DimensionMismatch {
            expected: curve.n,
            actual: c.n,
        });
    }
    let mut total = &c.coeff_l * int(pair_l(curve));
    for (i, q) in c.coeff_b.iter().enumerate() {
        if !q.is_zero() {
            total += q * int(pair_averaged(curve, i + 2)?);
        }
    }
    Ok(total)
}

/// Curve-by-divisor table: rows `C_3..C_n, R_2..R_{n-1}`, columns `B[2..n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub n: usize,
    pub curves: Vec<CurveClassId>,
    pub entries: Vec<Vec<i64>>,
}

impl PairingMatrix {
    pub fn column_labels(&self) -> Vec<String> {
        (2..=self.n).map(|s| format!("B[{s}]")).collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_i64_rows(&self.entries).expect("rectangular table")
    }
}

pub fn pairing_matrix(n: usize) -> Result<PairingMatrix> {
    let curves = CurveClassId::all(n)?;
    let entries = curves
        .iter()
        .map(|&c| (2..=n).map(|j| pair_averaged(c, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingMatrix { n, curves, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn class(n: usize, l: i64, b: &[(usize, Rational)]) -> DivisorClass {
        DivisorClass::new(n, int(l), b.iter().cloned()).unwrap()
    }

    #[test]
    fn relation_small_cases() {
        assert_eq!(derive_relation1(3).unwrap(), class(3, 2, &[(2, int(-1)), (3, int(-3))]));
        assert_eq!(
            derive_relation1(4).unwrap(),
            class(4, 3, &[(2, int(-1)), (3, int(-3)), (4, int(-6))])
        );
    }

    #[test]
    fn reduce_examples() {
        let l = DivisorClass::l(4).unwrap();
        assert_eq!(
            reduce_to_b(&l),
            class(4, 0, &[(2, ratio(1, 3)), (3, int(1)), (4, int(2))])
        );
        let zero = DivisorClass::zero(5).unwrap();
        assert_eq!(reduce_to_b(&zero), zero);
        let k3 = standard_class(3, StandardDivisor::Canonical).unwrap();
        assert_eq!(k3, class(3, -2, &[(3, int(1))]));
        assert_eq!(reduce_to_b(&k3), class(3, 0, &[(2, int(-1)), (3, int(-2))]));
    }

    #[test]
    fn standard_classes() {
        assert_eq!(
            standard_class(4, StandardDivisor::Boundary).unwrap(),
            class(4, 0, &[(2, int(1)), (3, int(1)), (4, int(1))])
        );
        let kb = &standard_class(4, StandardDivisor::Canonical).unwrap()
            + &standard_class(4, StandardDivisor::Boundary).unwrap();
        assert_eq!(
            reduce_to_b(&kb),
            class(4, 0, &[(2, ratio(1, 3)), (4, int(-1))])
        );
        let c4 = CurveClassId::new(CurveKind::C, 4, 4).unwrap();
        assert_eq!(pair(&kb, c4).unwrap(), int(2));
        assert_eq!(pair(&reduce_to_b(&kb), c4).unwrap(), int(2));
    }

    #[test]
    fn subset_table_examples() {
        let s = Subset::from_points(&[1, 2, 3]).unwrap();
        let c = SubsetCurve::new(CurveKind::C, s, None, 5).unwrap();
        assert_eq!(pair_subset(&c, Subset::from_points(&[1, 2]).unwrap()).unwrap(), 1);
        assert_eq!(pair_subset(&c, s).unwrap(), -1);
        assert_eq!(pair_subset(&c, Subset::from_points(&[4, 5]).unwrap()).unwrap(), 0);
        assert!(matches!(
            pair_subset(&c, Subset::from_points(&[1, 6]).unwrap()),
            Err(Error::InvalidSubset(_))
        ));
    }

    #[test]
    fn averaged_examples() {
        let c = |k, s| CurveClassId::new(k, s, 5).unwrap();
        assert_eq!(pair_averaged(c(CurveKind::C, 4), 3).unwrap(), 4);
        assert_eq!(pair_averaged(c(CurveKind::R, 3), 2).unwrap(), 1);
        assert_eq!(pair_averaged(c(CurveKind::R, 2), 2).unwrap(), 1);
        assert_eq!(pair_l(c(CurveKind::C, 3)), 0);
        assert_eq!(pair_l(c(CurveKind::R, 2)), 1);
        assert_eq!(pair(&DivisorClass::l(5).unwrap(), c(CurveKind::R, 2)).unwrap(), int(1));
    }

    #[test]
    fn self_pairing_examples() {
        assert_eq!(derive_self_pairing(CurveKind::C, 4, 5).unwrap(), int(-2));
        assert_eq!(derive_self_pairing(CurveKind::R, 3, 6).unwrap(), int(-1));
        assert_eq!(derive_self_pairing(CurveKind::C, 3, 3).unwrap(), int(-1));
        assert!(derive_self_pairing(CurveKind::R, 3, 3).is_err());
    }

    #[test]
    fn pairing_matrix_small() {
        let m3 = pairing_matrix(3).unwrap();
        assert_eq!(m3.entries, vec![vec![3, -1], vec![-1, 1]]);
        let m4 = pairing_matrix(4).unwrap();
        assert_eq!(
            m4.entries,
            vec![vec![3, -1, 0], vec![0, 4, -2], vec![0, 1, 0], vec![0, -1, 1]]
        );
        assert_eq!(m4.curves.len(), 2 * 4 - 4);
    }

    #[test]
    fn curve_validity() {
        assert!(CurveClassId::new(CurveKind::C, 2, 5).is_err());
        assert!(CurveClassId::new(CurveKind::R, 5, 5).is_err());
        assert!(CurveClassId::new(CurveKind::C, 3, 2).is_err());
        let s = Subset::from_points(&[1, 2]).unwrap();
        assert!(SubsetCurve::new(CurveKind::R, s, Some(2), 4).is_err());
        assert!(SubsetCurve::new(CurveKind::R, s, None, 4).is_err());
        assert!(SubsetCurve::new(CurveKind::C, s, None, 4).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = DivisorClass::parse("-2*L + 1*B[3] + 2*B[4]", 4).unwrap();
        assert_eq!(c.to_string(), "-2*L + 1*B[3] + 2*B[4]");
        let d = DivisorClass::parse(" B[2]-1/3 *B[4]+ L ", 4).unwrap();
        assert_eq!(d.to_string(), "1*L + 1*B[2] - 1/3*B[4]");
        assert!(DivisorClass::parse("1*B[5]", 4).is_err());
        assert!(DivisorClass::parse("1*Q", 4).is_err());
        assert_eq!(DivisorClass::zero(3).unwrap().to_string(), "0");
    }
}
