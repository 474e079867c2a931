//! Exact polyhedral-cone computations: LP minima with dual certificates,
//! dual-cone containment in the orthant, Kodaira-energy thresholds, and
//! Fourier–Motzkin projection.
//!
//! Nothing in this module touches floating point.

pub mod fourier_motzkin;
pub mod simplex;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariant_picard::PairingMatrix;
use crate::rational::{dot, Rational, RationalMatrix, RationalVector};
use fourier_motzkin::Inequality;
use simplex::{SimplexOutcome, StandardLp};

/// The cone `{x : A x >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeH {
    constraints: RationalMatrix,
    labels: Vec<String>,
}

impl ConeH {
    pub fn new(constraints: RationalMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != constraints.cols() {
            return Err(Error::DimensionMismatch {
                expected: constraints.cols(),
                actual: labels.len(),
            });
        }
        Ok(Self { constraints, labels })
    }

    /// Unlabelled cone; coordinates are named `x0, x1, ...`.
    pub fn from_matrix(constraints: RationalMatrix) -> Self {
        let labels = (0..constraints.cols()).map(|i| format!("x{i}")).collect();
        Self { constraints, labels }
    }

    /// Curve rows of the pairing table as half-spaces on the B-coordinates.
    pub fn from_pairing(table: &PairingMatrix) -> Self {
        Self {
            constraints: table.to_rational(),
            labels: table.column_labels(),
        }
    }

    pub fn orthant(dim: usize) -> Self {
        Self::from_matrix(RationalMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.constraints.cols()
    }

    pub fn constraints(&self) -> &RationalMatrix {
        &self.constraints
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.constraints.mul_vec(x)?.iter().all(|v| !v.is_negative()))
    }

    pub fn inequalities(&self) -> Vec<Inequality> {
        self.constraints
            .row_iter()
            .map(|r| Inequality::new(r.to_vec(), Rational::zero()))
            .collect()
    }
}

/// Affine normalization `coeffs . x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub coeffs: RationalVector,
    pub rhs: Rational,
}

impl Normalization {
    /// `x_0 + ... + x_{dim-1} = 1`
    pub fn simplex(dim: usize) -> Self {
        Self {
            coeffs: vec![Rational::one(); dim],
            rhs: Rational::one(),
        }
    }

    /// The equation as a pair of opposite inequalities.
    pub fn inequalities(&self) -> [Inequality; 2] {
        [
            Inequality::new(self.coeffs.clone(), self.rhs.clone()),
            Inequality::new(self.coeffs.iter().map(|c| -c).collect(), -&self.rhs),
        ]
    }
}

/// Minimum of one coordinate over a normalized cone slice, with the
/// multipliers proving it.
///
/// For every feasible `x`: `x_j = y^T A x + mu (N . x) >= mu * rhs`, because
/// `A^T y + mu N = e_j` and `y >= 0`. So `minimum = mu * rhs` is a lower
/// bound, attained by `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub objective_index: usize,
    pub minimum: Rational,
    pub witness: RationalVector,
    pub row_multipliers: RationalVector,
    pub normalization_multiplier: Rational,
    pub pivots: usize,
}

impl LpSolution {
    /// Checks primal feasibility, dual feasibility and equal objective
    /// values, exactly.
    pub fn verify(&self, cone: &ConeH, norm: &Normalization) -> bool {
        let dim = cone.dim();
        if self.witness.len() != dim || self.row_multipliers.len() != cone.constraints.rows() {
            return false;
        }
        let Ok(ax) = cone.constraints.mul_vec(&self.witness) else {
            return false;
        };
        let primal = ax.iter().all(|v| !v.is_negative())
            && dot(&norm.coeffs, &self.witness) == norm.rhs
            && self.witness[self.objective_index] == self.minimum;
        let Ok(mut combo) = cone.constraints.tr_mul_vec(&self.row_multipliers) else {
            return false;
        };
        for (c, w) in combo.iter_mut().zip(&norm.coeffs) {
            *c += &self.normalization_multiplier * w;
        }
        let dual = self.row_multipliers.iter().all(|y| !y.is_negative())
            && combo
                .iter()
                .enumerate()
                .all(|(i, c)| *c == if i == self.objective_index { Rational::one() } else { Rational::zero() });
        primal && dual && &self.normalization_multiplier * &norm.rhs == self.minimum
    }
}

/// `min x_j  s.t.  A x >= 0, N . x = rhs` by exact simplex.
///
/// Free variables are split `x = p - q`; each cone row gets a surplus.
pub fn lp_min(cone: &ConeH, objective_index: usize, norm: &Normalization) -> Result<LpSolution> {
    let dim = cone.dim();
    if objective_index >= dim {
        return Err(Error::BadIndex {
            index: objective_index,
            n: dim,
        });
    }
    if norm.coeffs.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: norm.coeffs.len(),
        });
    }
    let m = cone.constraints.rows();
    let cols = 2 * dim + m;
    let mut a = RationalMatrix::zeros(m + 1, cols);
    for (i, row) in cone.constraints.row_iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            a[(i, j)] = v.clone();
            a[(i, dim + j)] = -v;
        }
        a[(i, 2 * dim + i)] = -Rational::one();
    }
    for (j, v) in norm.coeffs.iter().enumerate() {
        a[(m, j)] = v.clone();
        a[(m, dim + j)] = -v;
    }
    let mut b = vec![Rational::zero(); m + 1];
    b[m] = norm.rhs.clone();
    let mut c = vec![Rational::zero(); cols];
    c[objective_index] = Rational::one();
    c[dim + objective_index] = -Rational::one();

    match simplex::solve(&StandardLp { a, b, c }) {
        SimplexOutcome::Infeasible => Err(Error::Infeasible),
        SimplexOutcome::Unbounded => Err(Error::Unbounded),
        SimplexOutcome::Optimal {
            x,
            duals,
            value,
            pivots,
        } => {
            let witness = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
            Ok(LpSolution {
                objective_index,
                minimum: value,
                witness,
                row_multipliers: duals[..m].to_vec(),
                normalization_multiplier: duals[m].clone(),
                pivots,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMinimum {
    pub index: usize,
    pub label: String,
    /// `None` when the coordinate is unbounded below on the slice.
    pub solution: Option<LpSolution>,
    pub verified: bool,
}

impl CoordinateMinimum {
    pub fn minimum(&self) -> Option<&Rational> {
        self.solution.as_ref().map(|s| &s.minimum)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.minimum().is_some_and(|m| !m.is_negative())
    }
}

/// Evidence that `{d : A d >= 0}` lies in the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub cone: ConeH,
    pub normalization: Normalization,
    pub coordinates: Vec<CoordinateMinimum>,
    pub feasible: bool,
    pub passed: bool,
}

impl Certificate {
    pub fn minima(&self) -> Vec<Option<Rational>> {
        self.coordinates.iter().map(|c| c.minimum().cloned()).collect()
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[Rational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>();
        let constraints: Vec<Value> = self.cone.constraints.row_iter().map(|r| json!(strs(r))).collect();
        let coordinates: Vec<Value> = self
            .coordinates
            .iter()
            .map(|c| match &c.solution {
                Some(s) => json!({
                    "index": c.index,
                    "label": c.label,
                    "minimum": s.minimum.to_string(),
                    "witness": strs(&s.witness),
                    "row_multipliers": strs(&s.row_multipliers),
                    "normalization_multiplier": s.normalization_multiplier.to_string(),
                    "verified": c.verified,
                }),
                None => json!({
                    "index": c.index,
                    "label": c.label,
                    "minimum": "-inf",
                    "verified": c.verified,
                }),
            })
            .collect();
        json!({
            "labels": self.cone.labels,
            "constraints": constraints,
            "normalization": {
                "coeffs": strs(&self.normalization.coeffs),
                "rhs": self.normalization.rhs.to_string(),
            },
            "coordinates": coordinates,
            "feasible": self.feasible,
            "passed": self.passed,
        })
    }
}

/// Minimizes every coordinate over `{d : A d >= 0, sum d = 1}`. Passes iff
/// each minimum exists, is nonnegative, and its dual multipliers check out.
pub fn dual_contained_in_orthant(cone: &ConeH) -> Result<Certificate> {
    if cone.constraints.is_zero() {
        return Err(Error::InvalidCurve("constraint matrix is zero".into()));
    }
    let norm = Normalization::simplex(cone.dim());
    let coordinates = (0..cone.dim())
        .into_par_iter()
        .map(|j| {
            let label = cone.labels[j].clone();
            match lp_min(cone, j, &norm) {
                Ok(sol) => {
                    let verified = sol.verify(cone, &norm);
                    Ok(CoordinateMinimum {
                        index: j,
                        label,
                        solution: Some(sol),
                        verified,
                    })
                }
                Err(Error::Unbounded) => Ok(CoordinateMinimum {
                    index: j,
                    label,
                    solution: None,
                    verified: false,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = coordinates.iter().all(|c| c.verified && c.is_nonnegative());
    Ok(Certificate {
        cone: cone.clone(),
        normalization: norm,
        coordinates,
        feasible: true,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KodairaEnergy {
    Value(Rational),
    /// No `a` puts `base + a * direction` in the cone.
    NotAttainable,
    /// Every sufficiently negative `a` works.
    MinusInfinity,
}

impl std::fmt::Display for KodairaEnergy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaEnergy::Value(q) => write!(f, "{q}"),
            KodairaEnergy::NotAttainable => f.write_str("not-attainable"),
            KodairaEnergy::MinusInfinity => f.write_str("-inf"),
        }
    }
}

/// `inf { a : base + a * direction >= 0 }` against the nonnegative orthant.
pub fn kodaira_energy(base: &[Rational], direction: &[Rational]) -> Result<KodairaEnergy> {
    if base.len() != direction.len() {
        return Err(Error::DimensionMismatch {
            expected: base.len(),
            actual: direction.len(),
        });
    }
    if direction.iter().all(Zero::is_zero) {
        return Err(Error::InvalidCurve("direction must be nonzero".into()));
    }
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for (b, d) in base.iter().zip(direction) {
        if d.is_zero() {
            if b.is_negative() {
                return Ok(KodairaEnergy::NotAttainable);
            }
            continue;
        }
        let threshold = -(b / d);
        if d.is_positive() {
            if lower.as_ref().is_none_or(|l| threshold > *l) {
                lower = Some(threshold);
            }
        } else if upper.as_ref().is_none_or(|u| threshold < *u) {
            upper = Some(threshold);
        }
    }
    Ok(match (lower, upper) {
        (Some(l), Some(u)) if l > u => KodairaEnergy::NotAttainable,
        (Some(l), _) => KodairaEnergy::Value(l),
        (None, _) => KodairaEnergy::MinusInfinity,
    })
}

/// Projects out `var`. The output keeps the same coordinates (with a zero
/// column for `var`); redundant rows may remain.
pub fn fourier_motzkin_project(cone: &ConeH, var: usize) -> Result<ConeH> {
    if var >= cone.dim() {
        return Err(Error::BadIndex {
            index: var,
            n: cone.dim(),
        });
    }
    let rows = fourier_motzkin::eliminate(&cone.inequalities(), var);
    let mut m = RationalMatrix::zeros(0, cone.dim());
    for r in rows {
        debug_assert!(r.rhs.is_zero());
        m.push_row(r.coeffs)?;
    }
    Ok(ConeH {
        constraints: m,
        labels: cone.labels.clone(),
    })
}
