use num_traits::{One, Signed, Zero};

use super::{Rational, RationalVector};
use crate::error::{Error, Result};
use crate::model::{Assessment, ThingSet, Universe, VectorLayout};
use crate::verdict::{Certificate, Verdict};

/// Named assessments computed from a rational-vector catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    /// `a_not = {f <= 0}`, `a_des = {f >= 0, f != 0}`.
    GamblesDefault,
    /// `a_not = {f <= 0}`, `a_des = {min f > 0}`.
    GamblesInfPositive,
    /// Degenerate lotteries on the named prizes go to `a_des` / `a_not`.
    Lottery {
        positive: Vec<String>,
        negative: Vec<String>,
    },
    None,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::GamblesDefault => "gambles_default",
            Preset::GamblesInfPositive => "gambles_inf_positive",
            Preset::Lottery { .. } => "lottery",
            Preset::None => "none",
        }
    }
}

pub fn preset_assessment(universe: &Universe, preset: &Preset) -> Result<Assessment> {
    if *preset == Preset::None {
        return Ok(Assessment::EMPTY);
    }
    let (layout, vectors) = universe
        .rational_vectors()
        .ok_or_else(|| Error::WrongPayload(format!("preset `{}` needs rational vectors", preset.name())))?;
    let pick = |pred: &dyn Fn(&RationalVector) -> bool| -> ThingSet {
        vectors
            .iter()
            .enumerate()
            .filter(|(_, v)| pred(v))
            .map(|(i, _)| i)
            .collect()
    };
    match preset {
        Preset::GamblesDefault => Ok(Assessment::new(
            pick(&RationalVector::is_nonpositive),
            pick(&|v| v.is_nonnegative() && !v.is_zero()),
        )),
        Preset::GamblesInfPositive => Ok(Assessment::new(
            pick(&RationalVector::is_nonpositive),
            pick(&|v| v.min_coord().is_some_and(Signed::is_positive)),
        )),
        Preset::Lottery { positive, negative } => {
            let prizes = prize_labels(layout);
            let degenerate = |names: &[String]| -> Result<ThingSet> {
                let mut out = ThingSet::EMPTY;
                for name in names {
                    let r = prizes
                        .iter()
                        .position(|p| p == name)
                        .ok_or_else(|| Error::MalformedDocument(format!("unknown prize `{name}`")))?;
                    out = out.union(pick(&|v| is_degenerate_on(layout, v, r)));
                }
                Ok(out)
            };
            let a_not = degenerate(negative)?;
            let a_des = degenerate(positive)?;
            Ok(Assessment::new(a_not, a_des))
        }
        Preset::None => unreachable!(),
    }
}

fn prize_labels(layout: &VectorLayout) -> &[String] {
    match layout {
        VectorLayout::Flat(labels) => labels,
        VectorLayout::Grid { prizes, .. } => prizes,
    }
}

/// Every state row puts probability one on prize `r`.
fn is_degenerate_on(layout: &VectorLayout, v: &RationalVector, r: usize) -> bool {
    let width = prize_labels(layout).len();
    v.coords().chunks(width).all(|row| {
        row.iter()
            .enumerate()
            .all(|(k, c)| if k == r { c.is_one() } else { c.is_zero() })
    })
}

/// Checks that every thing is a horse lottery: nonnegative, each state row summing to one.
pub fn validate_horse_lottery(universe: &Universe) -> Result<Verdict> {
    let Some((VectorLayout::Grid { states, prizes }, vectors)) = universe.rational_vectors() else {
        return Err(Error::WrongPayload("horse lotteries need a state x prize grid".into()));
    };
    for (t, v) in vectors.iter().enumerate() {
        if let Some(c) = v.coords().iter().find(|c| c.is_negative()) {
            return Ok(Verdict::Violated(Certificate::HorseLottery {
                thing: t,
                reason: format!("negative entry {c}"),
            }));
        }
        for (x, row) in v.coords().chunks(prizes.len()).enumerate() {
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Ok(Verdict::Violated(Certificate::HorseLottery {
                    thing: t,
                    reason: format!("row for state `{}` sums to {sum}", states[x]),
                }));
            }
        }
    }
    Ok(Verdict::Verified)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Universe {
        Universe::vectors(
            vec!["f".into(), "g".into(), "h".into()],
            VectorLayout::Flat(vec!["a".into(), "b".into()]),
            vec![
                RationalVector::from_ints(&[-1, -2]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_ints(&[1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn gamble_presets() {
        let u = catalog();
        let d = preset_assessment(&u, &Preset::GamblesDefault).unwrap();
        assert_eq!(d.a_not, u.set(["f"]).unwrap());
        assert_eq!(d.a_des, u.set(["g", "h"]).unwrap());
        let i = preset_assessment(&u, &Preset::GamblesInfPositive).unwrap();
        assert_eq!(i.a_des, u.set(["h"]).unwrap());
    }

    #[test]
    fn lottery_preset() {
        let u = Universe::vectors(
            vec!["dinner".into(), "no-meals".into(), "mix".into()],
            VectorLayout::Flat(vec!["dinner".into(), "hunger".into()]),
            vec![
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_fracs(&[(1, 2), (1, 2)]),
            ],
        )
        .unwrap();
        let a = preset_assessment(
            &u,
            &Preset::Lottery {
                positive: vec!["dinner".into()],
                negative: vec!["hunger".into()],
            },
        )
        .unwrap();
        assert_eq!(a.a_not, u.set(["no-meals"]).unwrap());
        assert_eq!(a.a_des, u.set(["dinner"]).unwrap());
    }

    #[test]
    fn presets_need_vectors() {
        let u = Universe::opaque(["x"]).unwrap();
        assert!(matches!(
            preset_assessment(&u, &Preset::GamblesDefault),
            Err(Error::WrongPayload(_))
        ));
    }

    fn horse(rows: &[(i64, i64)]) -> Universe {
        Universe::vectors(
            vec!["h".into()],
            VectorLayout::Grid {
                states: vec!["x1".into(), "x2".into()],
                prizes: vec!["r1".into(), "r2".into()],
            },
            vec![RationalVector::from_fracs(rows)],
        )
        .unwrap()
    }

    #[test]
    fn horse_lottery_validation() {
        let ok = horse(&[(1, 2), (1, 2), (1, 1), (0, 1)]);
        assert_eq!(validate_horse_lottery(&ok).unwrap(), Verdict::Verified);
        let short = horse(&[(1, 2), (1, 3), (1, 1), (0, 1)]);
        assert!(validate_horse_lottery(&short).unwrap().is_violated());
        let negative = horse(&[(3, 2), (-1, 2), (1, 1), (0, 1)]);
        assert!(validate_horse_lottery(&negative).unwrap().is_violated());
    }
}
