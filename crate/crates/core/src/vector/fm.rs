//! Fourier–Motzkin feasibility of `{x >= 0 : M x = c}`.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// `coeffs · x <= rhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

impl Ineq {
    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Ineq {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(Rational::abs) {
            if !lead.is_one() {
                for c in &mut self.coeffs {
                    *c /= &lead;
                }
                self.rhs /= &lead;
            }
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Decides whether some `x >= 0` satisfies every row of `rows · x = rhs`.
pub(crate) fn feasible(rows: &[Vec<Rational>], rhs: &[Rational], nvars: usize) -> bool {
    let mut eqs: Vec<(Vec<Rational>, Rational)> =
        rows.iter().cloned().zip(rhs.iter().cloned()).collect();
    let mut ineqs: Vec<Ineq> = (0..nvars)
        .map(|j| {
            let mut coeffs = vec![Rational::zero(); nvars];
            coeffs[j] = -Rational::one();
            Ineq {
                coeffs,
                rhs: Rational::zero(),
            }
        })
        .collect();

    // Gaussian substitution of the equalities.
    while let Some((row, c)) = eqs.pop() {
        let Some(p) = row.iter().position(|a| !a.is_zero()) else {
            if !c.is_zero() {
                return false;
            }
            continue;
        };
        let ap = row[p].clone();
        // x_p = (c - sum_{j != p} row_j x_j) / ap
        let sub = |coeffs: &mut Vec<Rational>, rhs: &mut Rational| {
            let alpha = coeffs[p].clone();
            if alpha.is_zero() {
                return;
            }
            let k = &alpha / &ap;
            for (j, a) in row.iter().enumerate() {
                if j != p {
                    coeffs[j] -= &k * a;
                }
            }
            coeffs[p] = Rational::zero();
            *rhs -= &k * &c;
        };
        for (coeffs, r) in &mut eqs {
            sub(coeffs, r);
        }
        for q in &mut ineqs {
            sub(&mut q.coeffs, &mut q.rhs);
        }
    }

    let mut set: HashSet<Ineq> = HashSet::new();
    for q in ineqs {
        if q.is_constant() {
            if q.rhs.is_negative() {
                return false;
            }
        } else {
            set.insert(q.normalized());
        }
    }

    for k in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), HashSet::new());
        for q in set {
            if q.coeffs[k].is_positive() {
                pos.push(q);
            } else if q.coeffs[k].is_negative() {
                neg.push(q);
            } else {
                rest.insert(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let wp = n.coeffs[k].abs();
                let wn = p.coeffs[k].clone();
                let coeffs: Vec<Rational> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| a * &wp + b * &wn)
                    .collect();
                let q = Ineq {
                    coeffs,
                    rhs: &p.rhs * &wp + &n.rhs * &wn,
                };
                if q.is_constant() {
                    if q.rhs.is_negative() {
                        return false;
                    }
                } else {
                    rest.insert(q.normalized());
                }
            }
        }
        set = rest;
    }
    set.iter().all(|q| !q.rhs.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn simple_systems() {
        // x + y = 1
        assert!(feasible(&[vec![r(1), r(1)]], &[r(1)], 2));
        // x + y = -1
        assert!(!feasible(&[vec![r(1), r(1)]], &[r(-1)], 2));
        // x - y = 5
        assert!(feasible(&[vec![r(1), r(-1)]], &[r(5)], 2));
        // 0 = 1
        assert!(!feasible(&[vec![r(0)]], &[r(1)], 1));
        // x = 2, x = 3
        assert!(!feasible(&[vec![r(1)], vec![r(1)]], &[r(2), r(3)], 1));
    }
}
