//! Exact two-phase simplex over rationals with Bland's rule.
//!
//! Standard form: maximize `c·x` subject to `A x = b`, `x ≥ 0`. Rows with a
//! negative right-hand side are negated before phase 1.

use crate::rational::{one, zero, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows × (cols + 1); last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over columns `allowed`; returns false when unbounded.
    fn optimize(&mut self, obj: &[Rational], allowed: usize) -> bool {
        loop {
            // Reduced costs: obj_j - Σ obj_basis · column.
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = obj[j].clone();
                for (row, &b) in self.t.iter().zip(&self.basis) {
                    if !row[j].is_zero() {
                        rc -= &obj[b] * &row[j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((lr, best)) => {
                            ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|j| if j == i { one() } else { zero() }));
        r.push(if flip { -rhs.clone() } else { rhs.clone() });
        t.push(r);
    }
    let mut tab = Tableau {
        t,
        basis: (n..cols).collect(),
        cols,
    };
    // Phase 1: maximize -Σ artificials.
    let phase1: Vec<Rational> = (0..cols)
        .map(|j| if j < n { zero() } else { -one() })
        .collect();
    tab.optimize(&phase1, cols);
    if tab
        .basis
        .iter()
        .zip(&tab.t)
        .any(|(&bv, row)| bv >= n && !row[cols].is_zero())
    {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-valued) artificials out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }
    // Rows still holding an artificial are redundant; drop them.
    let keep: Vec<usize> = (0..m).filter(|&r| tab.basis[r] < n).collect();
    tab.t = keep.iter().map(|&r| tab.t[r].clone()).collect();
    tab.basis = keep.iter().map(|&r| tab.basis[r]).collect();
    let mut obj: Vec<Rational> = c.to_vec();
    obj.extend((0..m).map(|_| zero()));
    if !tab.optimize(&obj, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![zero(); n];
    for (row, &bv) in tab.t.iter().zip(&tab.basis) {
        x[bv] = row[cols].clone();
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}
