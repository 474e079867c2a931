//! Dense two-phase tableau simplex over exact rationals with Bland's rule.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` and reports optimal dual
//! multipliers alongside the primal solution.

use num_traits::{One, Signed, Zero};

use crate::rational::{Rational, RationalMatrix, RationalVector};

#[derive(Clone, Debug)]
pub struct StandardLp {
    pub a: RationalMatrix,
    pub b: RationalVector,
    pub c: RationalVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexOutcome {
    Optimal {
        x: RationalVector,
        /// One multiplier per equality row; `c - A^T y >= 0` at optimality.
        duals: RationalVector,
        value: Rational,
        pivots: usize,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let factor = self.obj[col].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

pub fn solve(lp: &StandardLp) -> SimplexOutcome {
    let m = lp.a.rows();
    let k = lp.a.cols();
    assert_eq!(lp.b.len(), m);
    assert_eq!(lp.c.len(), k);

    // A structural column that is a signed unit vector can start in the basis
    // in place of an artificial, as long as its row sign is free or matches b.
    let mut unit_cols: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; k];
    for (i, slot) in unit_cols.iter_mut().enumerate() {
        *slot = (0..k).find(|&j| {
            let v = &lp.a[(i, j)];
            !used[j]
                && v.abs().is_one()
                && (lp.b[i].is_zero() || v.is_negative() == lp.b[i].is_negative())
                && (0..m).all(|r| r == i || lp.a[(r, j)].is_zero())
        });
        if let Some(j) = *slot {
            used[j] = true;
        }
    }

    // columns: k structural, m artificial, rhs
    let width = k + m + 1;
    let mut signs = vec![Rational::one(); m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = match unit_cols[i] {
            Some(j) => lp.a[(i, j)].is_negative(),
            None => lp.b[i].is_negative(),
        };
        if flip {
            signs[i] = -Rational::one();
        }
        let mut row = vec![Rational::zero(); width];
        for j in 0..k {
            row[j] = if flip { -lp.a[(i, j)].clone() } else { lp.a[(i, j)].clone() };
        }
        row[k + i] = Rational::one();
        row[k + m] = lp.b[i].abs();
        rows.push(row);
    }

    // phase one: minimize the sum of artificials that start basic
    let mut obj = vec![Rational::zero(); width];
    for (row, unit) in rows.iter().zip(&unit_cols) {
        if unit.is_some() {
            continue;
        }
        for j in 0..k {
            obj[j] -= &row[j];
        }
        obj[k + m] -= &row[k + m];
    }
    let basis = (0..m).map(|i| unit_cols[i].unwrap_or(k + i)).collect();
    let mut t = Tableau {
        rows,
        obj,
        basis,
        width,
        pivots: 0,
    };
    let bounded = t.optimize(k);
    debug_assert!(bounded, "phase one is bounded below by zero");
    if !t.obj[k + m].is_zero() {
        return SimplexOutcome::Infeasible;
    }

    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= k {
            if let Some(col) = (0..k).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            }
        }
    }

    // phase two
    let mut obj = vec![Rational::zero(); width];
    obj[..k].clone_from_slice(&lp.c);
    for (r, row) in t.rows.iter().enumerate() {
        let cb = if t.basis[r] < k { &lp.c[t.basis[r]] } else { continue };
        if cb.is_zero() {
            continue;
        }
        for (o, x) in obj.iter_mut().zip(row) {
            *o -= cb * x;
        }
    }
    t.obj = obj;
    if !t.optimize(k) {
        return SimplexOutcome::Unbounded;
    }

    let mut x = vec![Rational::zero(); k];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < k {
            x[b] = t.rows[r][k + m].clone();
        }
    }
    // reduced cost of a starting unit column e_i is c_j - y'_i; undo the row flips
    let duals = (0..m)
        .map(|i| {
            let y = match unit_cols[i] {
                Some(j) => &lp.c[j] - &t.obj[j],
                None => -(&t.obj[k + i]),
            };
            y * &signs[i]
        })
        .collect();
    let value = -t.obj[k + m].clone();
    SimplexOutcome::Optimal {
        x,
        duals,
        value,
        pivots: t.pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{dot, int, ratio};

    fn lp(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> StandardLp {
        StandardLp {
            a: RationalMatrix::from_i64_rows(a).unwrap(),
            b: b.iter().map(|&x| int(x)).collect(),
            c: c.iter().map(|&x| int(x)).collect(),
        }
    }

    fn check_optimal(lp: &StandardLp, outcome: &SimplexOutcome) {
        let SimplexOutcome::Optimal { x, duals, value, .. } = outcome else {
            panic!("expected optimum, got {outcome:?}");
        };
        assert_eq!(lp.a.mul_vec(x).unwrap(), lp.b);
        assert!(x.iter().all(|v| !v.is_negative()));
        assert_eq!(&dot(&lp.c, x), value);
        assert_eq!(&dot(&lp.b, duals), value);
        let aty = lp.a.tr_mul_vec(duals).unwrap();
        for (cj, aj) in lp.c.iter().zip(&aty) {
            assert!(cj >= aj);
        }
    }

    #[test]
    fn small_optimum() {
        // min -x1 - x2, x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
        let p = lp(&[vec![1, 2, 1, 0], vec![3, 1, 0, 1]], &[4, 6], &[-1, -1, 0, 0]);
        let out = solve(&p);
        check_optimal(&p, &out);
        if let SimplexOutcome::Optimal { value, .. } = out {
            assert_eq!(value, ratio(-14, 5));
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x1 + x2 = -1 with x >= 0
        assert_eq!(solve(&lp(&[vec![1, 1]], &[-1], &[0, 0])), SimplexOutcome::Infeasible);
        // min -x1, x1 - x2 = 0
        assert_eq!(solve(&lp(&[vec![1, -1]], &[0], &[-1, 0])), SimplexOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let p = lp(&[vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]], &[1, 2, 1], &[1, 0, 0]);
        let out = solve(&p);
        check_optimal(&p, &out);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's classic instance cycles under the largest-coefficient rule.
        let a = vec![
            vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9), int(1), int(0), int(0)],
            vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        let p = StandardLp {
            a: RationalMatrix::from_rows(a).unwrap(),
            b: vec![int(0), int(0), int(1)],
            c: vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6), int(0), int(0), int(0)],
        };
        let out = solve(&p);
        check_optimal(&p, &out);
        if let SimplexOutcome::Optimal { value, .. } = out {
            assert_eq!(value, ratio(-1, 20));
        }
    }
}
