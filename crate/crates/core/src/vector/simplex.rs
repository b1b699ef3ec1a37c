//! Exact two-phase simplex with Bland's rule.

use num_traits::{Signed, Zero};

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in &mut self.rows[r] {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        self.basis[r] = col;
    }

    /// Maximizes `cost · x` over columns `< allowed`; `None` when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Option<Rational> {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    reduced -= &cost[b] * &self.rows[i][j];
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                let mut value = Rational::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    value += &cost[b] * self.rhs(i);
                }
                return Some(value);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave?;
            self.pivot(r, col);
        }
    }
}

/// Maximizes `c · x` subject to `a x = b`, `x >= 0`.
pub(crate) fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = Vec::with_capacity(width + 1);
        t.extend(row.iter().map(|v| if flip { -v.clone() } else { v.clone() }));
        t.extend((0..m).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
        t.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..width).collect(),
        width,
    };

    // Phase one: drive the artificial variables to zero.
    let mut phase1 = vec![Rational::zero(); width];
    for v in &mut phase1[n..] {
        *v = Rational::from_integer((-1).into());
    }
    let w = tab
        .optimize(&phase1, width)
        .expect("phase one is bounded by zero");
    if w.is_negative() {
        return LpOutcome::Infeasible;
    }

    // Pivot remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(col) => tab.pivot(i, col),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = vec![Rational::zero(); width];
    phase2[..n].clone_from_slice(c);
    match tab.optimize(&phase2, n) {
        Some(v) => LpOutcome::Optimal(v),
        None => LpOutcome::Unbounded,
    }
}

/// Feasibility of `{x >= 0 : a x = b}`.
pub(crate) fn feasible(a: &[Vec<Rational>], b: &[Rational], nvars: usize) -> bool {
    let zero = vec![Rational::zero(); nvars];
    !matches!(maximize(a, b, &zero), LpOutcome::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn textbook_optimum() {
        // max x + y  s.t. x + s1 = 2, y + s2 = 3
        let a = vec![
            vec![r(1), r(0), r(1), r(0)],
            vec![r(0), r(1), r(0), r(1)],
        ];
        let out = maximize(&a, &[r(2), r(3)], &[r(1), r(1), r(0), r(0)]);
        assert_eq!(out, LpOutcome::Optimal(r(5)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(
            maximize(&[vec![r(1), r(1)]], &[r(-1)], &[r(0), r(0)]),
            LpOutcome::Infeasible
        );
        assert_eq!(
            maximize(&[vec![r(1), r(-1)]], &[r(0)], &[r(1), r(0)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert!(feasible(&a, &[r(1), r(2)], 2));
        assert!(!feasible(&a, &[r(1), r(3)], 2));
    }
}
