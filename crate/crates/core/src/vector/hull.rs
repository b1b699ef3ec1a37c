use num_traits::{One, Signed, Zero};

use super::simplex::{self, LpOutcome};
use super::{fm, Rational, RationalVector};
use crate::error::{Error, Result};

/// Generator counts up to this use Fourier–Motzkin; larger ones use simplex.
pub const FM_GENERATOR_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HullKind {
    /// Nontrivial nonnegative combinations.
    Posi,
    /// Convex combinations.
    Chull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Route {
    #[default]
    Auto,
    FourierMotzkin,
    Simplex,
}

pub fn member_positive_hull(target: &RationalVector, generators: &[RationalVector]) -> Result<bool> {
    member(HullKind::Posi, target, generators, Route::Auto)
}

pub fn member_convex_hull(target: &RationalVector, generators: &[RationalVector]) -> Result<bool> {
    member(HullKind::Chull, target, generators, Route::Auto)
}

/// Exact membership of `target` in the hull of `generators`.
///
/// An empty generator list has an empty hull.
pub fn member(
    kind: HullKind,
    target: &RationalVector,
    generators: &[RationalVector],
    route: Route,
) -> Result<bool> {
    let d = target.dim();
    for g in generators {
        if g.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.dim(),
            });
        }
    }
    let m = generators.len();
    if m == 0 {
        return Ok(false);
    }
    let route = match route {
        Route::Auto if m <= FM_GENERATOR_LIMIT => Route::FourierMotzkin,
        Route::Auto => Route::Simplex,
        r => r,
    };

    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| generators.iter().map(|g| g.coords()[k].clone()).collect())
        .collect();
    let mut rhs: Vec<Rational> = target.coords().to_vec();

    let homogeneous = kind == HullKind::Posi && target.is_zero();
    if homogeneous && route == Route::Simplex {
        return Ok(positive_null_combination(&rows, m));
    }
    if kind == HullKind::Chull || homogeneous {
        // For the homogeneous cone case any nonzero solution can be scaled to sum one.
        rows.push(vec![Rational::one(); m]);
        rhs.push(Rational::one());
    }
    Ok(match route {
        Route::FourierMotzkin => fm::feasible(&rows, &rhs, m),
        _ => simplex::feasible(&rows, &rhs, m),
    })
}

/// Maximizes `sum λ` over `{λ : G λ = 0, 0 <= λ <= 1}`; true iff the optimum is positive.
fn positive_null_combination(rows: &[Vec<Rational>], m: usize) -> bool {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(Rational::zero(), m));
            row
        })
        .collect();
    let mut b = vec![Rational::zero(); a.len()];
    for i in 0..m {
        let mut row = vec![Rational::zero(); 2 * m];
        row[i] = Rational::one();
        row[m + i] = Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    let mut c = vec![Rational::one(); m];
    c.extend(std::iter::repeat_n(Rational::zero(), m));
    match simplex::maximize(&a, &b, &c) {
        LpOutcome::Optimal(v) => v.is_positive(),
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            unreachable!("box-constrained system with λ = 0 feasible")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    fn both(kind: HullKind, t: &RationalVector, g: &[RationalVector]) -> bool {
        let a = member(kind, t, g, Route::FourierMotzkin).unwrap();
        let b = member(kind, t, g, Route::Simplex).unwrap();
        assert_eq!(a, b, "routes disagree on {t:?} in {kind:?}{g:?}");
        a
    }

    #[test]
    fn positive_hull_cases() {
        let g1 = v(&[1, -2, 3]);
        assert!(both(HullKind::Posi, &v(&[2, -4, 6]), std::slice::from_ref(&g1)));
        assert!(both(HullKind::Posi, &v(&[0, 0, 0]), &[g1.clone(), v(&[-1, 2, -3])]));
        assert!(!both(HullKind::Posi, &v(&[0, 0, 0]), &[g1]));
        let e = [v(&[1, 0]), v(&[0, 1])];
        assert!(both(HullKind::Posi, &v(&[1, 1]), &e));
        assert!(!both(HullKind::Posi, &v(&[-1, 1]), &e));
    }

    #[test]
    fn convex_hull_cases() {
        let g1 = v(&[2, 0]);
        let g2 = v(&[0, 4]);
        assert!(both(HullKind::Chull, &g1, &[g1.clone(), g2.clone()]));
        assert!(both(HullKind::Chull, &v(&[1, 2]), &[g1.clone(), g2.clone()]));
        // 2 g1 - g2
        assert!(!both(HullKind::Chull, &v(&[4, -4]), &[g1, g2]));
    }

    #[test]
    fn zero_needs_a_nontrivial_combination() {
        assert!(!both(HullKind::Posi, &v(&[0, 0]), &[v(&[1, 0]), v(&[0, 1])]));
        assert!(both(HullKind::Posi, &v(&[0, 0]), &[v(&[0, 0])]));
        assert!(both(
            HullKind::Posi,
            &v(&[0, 0]),
            &[v(&[1, 0]), v(&[-1, 1]), v(&[0, -1])]
        ));
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            member_positive_hull(&v(&[1, 1]), &[v(&[1, 1, 1])]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    fn vec2() -> impl Strategy<Value = RationalVector> {
        (-3i64..=3, -3i64..=3).prop_map(|(a, b)| v(&[a, b]))
    }

    fn vec3() -> impl Strategy<Value = RationalVector> {
        (-2i64..=2, -2i64..=2, -2i64..=2).prop_map(|(a, b, c)| v(&[a, b, c]))
    }

    proptest! {
        #[test]
        fn routes_agree_2d(t in vec2(), g in prop::collection::vec(vec2(), 1..7)) {
            both(HullKind::Posi, &t, &g);
            both(HullKind::Chull, &t, &g);
        }

        #[test]
        fn routes_agree_3d(t in vec3(), g in prop::collection::vec(vec3(), 1..7)) {
            both(HullKind::Posi, &t, &g);
            both(HullKind::Chull, &t, &g);
        }

        #[test]
        fn convex_implies_positive(t in vec3(), g in prop::collection::vec(vec3(), 1..6)) {
            prop_assume!(!t.is_zero());
            if member_convex_hull(&t, &g).unwrap() {
                prop_assert!(member_positive_hull(&t, &g).unwrap());
            }
        }

        #[test]
        fn invariant_under_permutation_and_duplication(
            t in vec2(),
            g in prop::collection::vec(vec2(), 1..5),
            k in 0usize..5,
        ) {
            let mut h = g.clone();
            h.reverse();
            h.push(g[k % g.len()].clone());
            for kind in [HullKind::Posi, HullKind::Chull] {
                prop_assert_eq!(
                    member(kind, &t, &g, Route::Auto).unwrap(),
                    member(kind, &t, &h, Route::Auto).unwrap()
                );
            }
        }

        #[test]
        fn positive_hull_scale_invariant(t in vec3(), g in prop::collection::vec(vec3(), 1..6), p in 1i64..5, q in 1i64..5) {
            let s = t.scale(&Rational::new(p.into(), q.into()));
            prop_assert_eq!(member_positive_hull(&t, &g).unwrap(), member_positive_hull(&s, &g).unwrap());
        }

        #[test]
        fn simplex_beyond_fm_limit_matches_fm(t in vec2(), g in prop::collection::vec(vec2(), 7..10)) {
            // FM still terminates at these sizes in two dimensions; use it as the oracle.
            for kind in [HullKind::Posi, HullKind::Chull] {
                prop_assert_eq!(
                    member(kind, &t, &g, Route::Auto).unwrap(),
                    member(kind, &t, &g, Route::FourierMotzkin).unwrap()
                );
            }
        }
    }
}
