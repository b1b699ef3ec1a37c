//! The claim bodies. Each walks its instance space and stops at the first
//! counterexample.

use super::catalog::{all_families, nonempty_families};
use super::{build_ops, InstanceConfig, Op, Scan, Step};
use crate::closure::ClosureSpec;
use crate::coherence::realize::realizable_images;
use crate::coherence::{
    check_axiom, check_production_plain, check_sds, check_sdt, coherence_possible, enumerate_coherent_sds,
    enumerate_coherent_sdts, Axiom, Variant,
};
use crate::error::Result;
use crate::model::{selections, Assessment, Family, QDomain, ThingSet};
use crate::representation::{d_family_from, fin_of, is_finitary, k_fin_from_ds, k_from_d, k_from_ds, represent};
use crate::verdict::{Budget, Strength};

const FULL: QDomain = QDomain::Full;

fn coherent(op: &Op, k: &Family, a: &Assessment, strength: Strength, q: &QDomain) -> Result<bool> {
    let variant = Variant::new(strength, q.clone());
    Ok(check_sds(k, a, &op.cl, &variant, Budget::unlimited())?.is_verified())
}

fn axiom(op: &Op, k: &Family, a: &Assessment, ax: Axiom, q: &QDomain) -> Result<bool> {
    Ok(check_axiom(k, a, &op.cl, ax, q, Budget::unlimited())?.is_verified())
}

fn k5(op: &Op, k: &Family, strength: Strength, q: &QDomain) -> Result<bool> {
    axiom(op, k, &Assessment::EMPTY, Axiom::K5(strength), q)
}

fn qname(q: &QDomain) -> String {
    match q {
        QDomain::Full => "full".into(),
        QDomain::CardBound(c) => format!("card_bound({c})"),
        QDomain::Explicit(f) => format!("explicit({} sets)", f.len()),
    }
}

fn show(op: &Op, k: &Family) -> String {
    op.universe.render_family(k)
}

fn show_a(op: &Op, a: &Assessment) -> String {
    format!(
        "A_not={} A_des={}",
        op.universe.render(a.a_not),
        op.universe.render(a.a_des)
    )
}

fn families(cfg: &InstanceConfig) -> Vec<Family> {
    all_families(cfg.size).collect()
}

/// Subfamilies of `k` picked by the bits of `mask`.
fn pick(k: &Family, mask: u64) -> Family {
    k.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, s)| s)
        .collect()
}

/// Whether `k = K_𝒟 ∩ q` for some nonempty `𝒟 ⊆ sdts`.
///
/// Every representer only holds sets of things met by all members of `k`, and
/// `K_𝒟` shrinks as `𝒟` grows, so the set of all such candidates decides it.
pub(crate) fn representable(k: &Family, sdts: &Family, n: usize, q: &QDomain) -> bool {
    let candidates = sdts.filter(|d| k.iter().all(|a| a.meets(d)));
    !candidates.is_empty() && k_fin_from_ds(&candidates, n, q).is_ok_and(|kd| kd == *k)
}

/// Seeds carrying the hypothesis; the rest are recorded as skipped.
fn with<'a>(
    scan: &mut Scan,
    cfg: &InstanceConfig,
    ops: &'a [Op],
    what: &str,
    keep: impl Fn(&Op) -> bool,
) -> Vec<&'a Op> {
    ops.iter()
        .filter(|op| {
            let k = cfg.ignore_hypotheses || keep(op);
            if !k {
                scan.skip(format!("{}: not {what}", op.name));
            }
            k
        })
        .collect()
}

pub(super) fn prop1(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let ops = build_ops(cfg)?;
    for op in with(scan, cfg, &ops, "the identity", |op| matches!(op.cl.spec(), ClosureSpec::Identity)) {
        for k in nonempty_families(cfg.size) {
            if !axiom(op, &k, &Assessment::EMPTY, Axiom::K2, &FULL)? {
                continue;
            }
            let v = check_production_plain(&k, &op.cl, Strength::Full, &FULL, Budget::unlimited())?;
            scan.ensure(v.is_verified(), || format!("{}: {} is upward closed but {v}", op.name, show(op, &k)))?;
        }
    }
    Ok(())
}

pub(super) fn prop2(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    for op in &build_ops(cfg)? {
        for a in cfg.assessment_list() {
            let possible = coherence_possible(&a, &op.cl)?;
            let some_d = !enumerate_coherent_sdts(&a, &op.cl)?.is_empty();
            let some_k = !enumerate_coherent_sds(&a, &op.cl, &Variant::full())?.is_empty();
            scan.ensure(possible == some_d && some_d == some_k, || {
                format!(
                    "{} {}: possible={possible} sdt={some_d} sds={some_k}",
                    op.name,
                    show_a(op, &a)
                )
            })?;
        }
    }
    Ok(())
}

pub(super) fn prop3(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    for op in &build_ops(cfg)? {
        for a in cfg.assessment_list() {
            for d in ThingSet::full(n).subsets() {
                let sdt = check_sdt(d, &a, &op.cl)?.is_verified();
                let sds = coherent(op, &k_from_d(d, n), &a, Strength::Full, &FULL)?;
                scan.ensure(sdt == sds, || {
                    format!(
                        "{} {}: D={} sdt={sdt} sds={sds}",
                        op.name,
                        show_a(op, &a),
                        op.universe.render(d)
                    )
                })?;
            }
        }
    }
    Ok(())
}

pub(super) fn prop4(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    for op in &build_ops(cfg)? {
        for a in cfg.assessment_list() {
            let ks = enumerate_coherent_sds(&a, &op.cl, &Variant::full())?;
            let m = ks.len();
            for i in 0..m {
                for j in i + 1..m {
                    let pair = ks[i].intersection(&ks[j]);
                    let ok = coherent(op, &pair, &a, Strength::Full, &FULL)?;
                    scan.ensure(ok, || format!("{} {}: {} not coherent", op.name, show_a(op, &a), show(op, &pair)))?;
                    for kl in &ks[j + 1..] {
                        let triple = pair.intersection(kl);
                        let ok = coherent(op, &triple, &a, Strength::Full, &FULL)?;
                        scan.ensure(ok, || {
                            format!("{} {}: {} not coherent", op.name, show_a(op, &a), show(op, &triple))
                        })?;
                    }
                }
            }
            let ds: Vec<ThingSet> = enumerate_coherent_sdts(&a, &op.cl)?.iter().collect();
            let m = ds.len();
            for i in 0..m {
                for j in i + 1..m {
                    let pair = ds[i].intersection(ds[j]);
                    let ok = check_sdt(pair, &a, &op.cl)?.is_verified();
                    scan.ensure(ok, || format!("{}: SDT {} not coherent", op.name, op.universe.render(pair)))?;
                    for &third in &ds[j + 1..] {
                        let triple = pair.intersection(third);
                        let ok = check_sdt(triple, &a, &op.cl)?.is_verified();
                        scan.ensure(ok, || format!("{}: SDT {} not coherent", op.name, op.universe.render(triple)))?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn lemma2(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    for op in &build_ops(cfg)? {
        for a in cfg.assessment_list() {
            for k in enumerate_coherent_sds(&a, &op.cl, &Variant::full())? {
                for mask in 0..1u64 << k.len() {
                    let sub = pick(&k, mask);
                    let options: Vec<ThingSet> = selections(&sub)
                        .iter()
                        .map(|s| op.cl.apply(s.union(a.a_des)))
                        .collect();
                    for b in realizable_images(&options) {
                        scan.ensure(k.contains(b), || {
                            format!(
                                "{} {}: {} from {} escapes {}",
                                op.name,
                                show_a(op, &a),
                                op.universe.render(b),
                                show(op, &sub),
                                show(op, &k)
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn lemma3(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    for op in &build_ops(cfg)? {
        for a in cfg.assessment_list() {
            let sdts = enumerate_coherent_sdts(&a, &op.cl)?;
            for k in enumerate_coherent_sds(&a, &op.cl, &Variant::full())? {
                for mask in 0..1u64 << k.len() {
                    let sub = pick(&k, mask);
                    let ds = d_family_from(&sub, &a, &op.cl)?;
                    let ok = !ds.is_empty() && ds.is_subfamily(&sdts) && {
                        let kd = k_from_ds(&ds, n)?;
                        sub.is_subfamily(&kd) && kd.is_subfamily(&k)
                    };
                    scan.ensure(ok, || {
                        format!(
                            "{} {}: subfamily {} of {} has representers {}",
                            op.name,
                            show_a(op, &a),
                            show(op, &sub),
                            show(op, &k),
                            show(op, &ds)
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

pub(super) fn theorem1(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    for op in &build_ops(cfg)? {
        for a in cfg.assessment_list() {
            let sdts = enumerate_coherent_sdts(&a, &op.cl)?;
            let coherent_ks = enumerate_coherent_sds(&a, &op.cl, &Variant::full())?;
            // Every nonempty 𝒟 gives a coherent K_𝒟, which must have been enumerated.
            let mut represented: Vec<(Family, Family)> = Vec::new();
            for mask in 1..1u64 << sdts.len() {
                let ds = pick(&sdts, mask);
                let kd = k_from_ds(&ds, n)?;
                let found = coherent_ks.binary_search(&kd).is_ok();
                scan.ensure(found, || {
                    format!("{} {}: K_D for D={} is not coherent", op.name, show_a(op, &a), show(op, &ds))
                })?;
                represented.push((kd, ds));
            }
            for k in &coherent_ks {
                let rep = represent(k, &a, &op.cl)?;
                scan.ensure(rep.verified, || {
                    format!("{} {}: representation of {} fails", op.name, show_a(op, &a), show(op, k))
                })?;
                for (kd, ds) in &represented {
                    if kd == k {
                        scan.ensure(ds.is_subfamily(&rep.largest), || {
                            format!(
                                "{} {}: {} represents {} but exceeds the largest representer",
                                op.name,
                                show_a(op, &a),
                                show(op, ds),
                                show(op, k)
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn prop5(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let ops = build_ops(cfg)?;
    let fams = families(cfg);
    for q in cfg.domain_list().iter().filter(|q| q.is_subset_closed()) {
        for op in &ops {
            for k in &fams {
                if !axiom(op, k, &Assessment::EMPTY, Axiom::K2, q)? || !k5(op, k, Strength::Finite, q)? {
                    continue;
                }
                let bin = k5(op, k, Strength::Two, q)?;
                scan.ensure(bin, || format!("{} q={}: {} fails K5bin", op.name, qname(q), show(op, k)))?;
            }
        }
    }
    Ok(())
}

pub(super) fn prop6(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let ops = build_ops(cfg)?;
    let fams = families(cfg);
    let unitary = with(scan, cfg, &ops, "unitary", |op| op.unitary);
    for q in cfg.domain_list().iter().filter(|q| q.is_subset_closed()) {
        for op in &unitary {
            for k in &fams {
                if !axiom(op, k, &Assessment::EMPTY, Axiom::K2, q)? {
                    continue;
                }
                let got: Vec<bool> = Strength::ALL
                    .iter()
                    .map(|&s| k5(op, k, s, q))
                    .collect::<Result<_>>()?;
                scan.ensure(got.iter().all(|&b| b == got[0]), || {
                    format!("{} q={}: {} strengths disagree {got:?}", op.name, qname(q), show(op, k))
                })?;
            }
        }
    }
    Ok(())
}

/// Compares coherence notions on every family, assessment and domain.
fn agree(
    scan: &mut Scan,
    cfg: &InstanceConfig,
    what: &str,
    keep: impl Fn(&Op) -> bool,
    strengths: &[Strength],
) -> Step {
    let ops = build_ops(cfg)?;
    let fams = families(cfg);
    for op in with(scan, cfg, &ops, what, keep) {
        for q in cfg.domain_list() {
            for a in cfg.assessment_list() {
                for k in &fams {
                    let got: Vec<bool> = strengths
                        .iter()
                        .map(|&s| coherent(op, k, &a, s, &q))
                        .collect::<Result<_>>()?;
                    scan.ensure(got.iter().all(|&b| b == got[0]), || {
                        format!(
                            "{} q={} {}: {} gives {strengths:?} = {got:?}",
                            op.name,
                            qname(&q),
                            show_a(op, &a),
                            show(op, k)
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

pub(super) fn cor_finitary(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    agree(scan, cfg, "finitary", |op| op.finitary, &[Strength::Full, Strength::Finite])
}

pub(super) fn prop_incremental(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let ops = build_ops(cfg)?;
    let fams = families(cfg);
    for op in with(scan, cfg, &ops, "incremental", |op| op.incremental) {
        for q in cfg.domain_list() {
            for k in &fams {
                if !axiom(op, k, &Assessment::EMPTY, Axiom::K2, &q)? || !k5(op, k, Strength::Two, &q)? {
                    continue;
                }
                let fin = k5(op, k, Strength::Finite, &q)?;
                scan.ensure(fin, || format!("{} q={}: {} fails K5fin", op.name, qname(&q), show(op, k)))?;
            }
        }
    }
    Ok(())
}

pub(super) fn cor_combined(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    agree(
        scan,
        cfg,
        "finitary and incremental",
        |op| op.finitary && op.incremental,
        &[Strength::Full, Strength::Finite, Strength::Two],
    )
}

pub(super) fn fin_finitary(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    for q in cfg.domain_list() {
        for k in all_families(n) {
            let fk = fin_of(&k, n, &q);
            scan.ensure(is_finitary(&fk, n, &q), || format!("q={}: fin of {k:?} is {fk:?}", qname(&q)))?;
        }
    }
    Ok(())
}

pub(super) fn fin_iff(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    for q in cfg.domain_list() {
        for k in all_families(n) {
            let lhs = is_finitary(&k, n, &q);
            let rhs = fin_of(&k, n, &q) == k;
            scan.ensure(lhs == rhs, || format!("q={}: {k:?} finitary={lhs} fixed={rhs}", qname(&q)))?;
        }
    }
    Ok(())
}

pub(super) fn fin_items(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    let ops = build_ops(cfg)?;
    let Some(first) = ops.first() else {
        return Ok(());
    };
    let assessments = cfg.assessment_list();
    for q in cfg.domain_list() {
        for k in families(cfg) {
            let fk = fin_of(&k, n, &q);
            let fail = |item: &str, op: &Op, a: &Assessment| {
                format!(
                    "({item}) q={} {}: K={} fin(K)={}",
                    qname(&q),
                    show_a(op, a),
                    show(op, &k),
                    show(op, &fk)
                )
            };
            let e = Assessment::EMPTY;
            // Items that do not depend on the operator or the assessment.
            if axiom(first, &k, &e, Axiom::K1, &q)? {
                let ok = axiom(first, &fk, &e, Axiom::K1, &FULL)?;
                scan.ensure(ok, || fail("i", first, &e))?;
            }
            let ok = axiom(first, &fk, &e, Axiom::K2, &FULL)?;
            scan.ensure(ok, || fail("ii", first, &e))?;
            if axiom(first, &k, &e, Axiom::K2, &q)? {
                let inside = |f: &Family| f.filter(|s| q.contains(s));
                scan.ensure(inside(&fk) == inside(&k), || fail("iii", first, &e))?;
            }
            for a in &assessments {
                if axiom(first, &k, a, Axiom::K3, &q)? {
                    let ok = axiom(first, &fk, a, Axiom::K3, &FULL)?;
                    scan.ensure(ok, || fail("iv", first, a))?;
                }
                if axiom(first, &k, a, Axiom::K4, &q)? {
                    let ok = axiom(first, &fk, a, Axiom::K4, &FULL)?;
                    scan.ensure(ok, || fail("v", first, a))?;
                }
            }
            for op in &ops {
                let items = [("vi", Strength::One), ("vii", Strength::Two), ("viii", Strength::Finite)];
                for (item, s) in items {
                    if k5(op, &k, s, &q)? {
                        let ok = k5(op, &fk, s, &FULL)?;
                        scan.ensure(ok, || fail(item, op, &e))?;
                    }
                }
                if op.finitary && k5(op, &k, Strength::Finite, &q)? {
                    let ok = k5(op, &fk, Strength::Full, &FULL)?;
                    scan.ensure(ok, || fail("ix", op, &e))?;
                }
            }
        }
    }
    Ok(())
}

pub(super) fn fin_selections(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let n = cfg.size;
    for q in cfg.domain_list() {
        for k in all_families(n) {
            let fk = fin_of(&k, n, &q);
            let kq = k.filter(|s| q.contains(s));
            let inner: Vec<Family> = (1..1u64 << kq.len()).map(|m| selections(&pick(&kq, m))).collect();
            for mask in 1..1u64 << fk.len() {
                let outer = selections(&pick(&fk, mask));
                let ok = inner.iter().any(|sb| sb.is_subfamily(&outer));
                scan.ensure(ok, || {
                    format!("q={}: no subfamily of {kq:?} matches {:?}", qname(&q), pick(&fk, mask))
                })?;
            }
        }
    }
    Ok(())
}

/// For finitary `K` (relative to each domain), the given pairs of notions agree.
fn finitary_k(
    scan: &mut Scan,
    cfg: &InstanceConfig,
    what: &str,
    keep: impl Fn(&Op) -> bool,
    compare: impl Fn(&Op, &Family, &Assessment, &QDomain) -> Result<Vec<bool>>,
) -> Step {
    let n = cfg.size;
    let ops = build_ops(cfg)?;
    let fams = families(cfg);
    for op in with(scan, cfg, &ops, what, keep) {
        for q in cfg.domain_list() {
            for k in fams.iter().filter(|k| is_finitary(k, n, &q)) {
                for a in cfg.assessment_list() {
                    let got = compare(op, k, &a, &q)?;
                    scan.ensure(got.iter().all(|&b| b == got[0]), || {
                        format!(
                            "{} q={} {}: finitary {} gives {got:?}",
                            op.name,
                            qname(&q),
                            show_a(op, &a),
                            show(op, k)
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

pub(super) fn back_and_forth(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    for s in Strength::ALL {
        // Only the unrestricted production axiom needs a finitary operator.
        let needs_finitary = s == Strength::Full;
        finitary_k(scan, cfg, "finitary", |op| op.finitary || !needs_finitary, |op, k, a, q| {
            Ok(vec![coherent(op, k, a, s, &FULL)?, coherent(op, k, a, s, q)?])
        })?;
    }
    Ok(())
}

pub(super) fn cor_fincoh_coh(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    finitary_k(scan, cfg, "finitary", |op| op.finitary, |op, k, a, _| {
        Ok(vec![
            coherent(op, k, a, Strength::Full, &FULL)?,
            coherent(op, k, a, Strength::Finite, &FULL)?,
        ])
    })
}

pub(super) fn cor_fincoh_bincoh(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    finitary_k(scan, cfg, "incremental", |op| op.incremental, |op, k, a, _| {
        Ok(vec![
            coherent(op, k, a, Strength::Finite, &FULL)?,
            coherent(op, k, a, Strength::Two, &FULL)?,
        ])
    })
}

pub(super) fn cor_coh_bincoh(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    finitary_k(
        scan,
        cfg,
        "finitary and incremental",
        |op| op.finitary && op.incremental,
        |op, k, a, _| {
            [Strength::Full, Strength::Finite, Strength::Two]
                .iter()
                .map(|&s| coherent(op, k, a, s, &FULL))
                .collect()
        },
    )
}

/// `K ⊆ Q` is coherent at `strength` in `Q` iff it is representable in `Q`.
fn representation(
    scan: &mut Scan,
    cfg: &InstanceConfig,
    what: &str,
    keep: impl Fn(&Op) -> bool,
    strengths: &[Strength],
    domains: Vec<QDomain>,
) -> Step {
    let n = cfg.size;
    let ops = build_ops(cfg)?;
    let fams = families(cfg);
    for op in with(scan, cfg, &ops, what, keep) {
        for a in cfg.assessment_list() {
            let sdts = enumerate_coherent_sdts(&a, &op.cl)?;
            for q in &domains {
                for k in fams.iter().filter(|k| k.iter().all(|s| q.contains(s))) {
                    let rep = representable(k, &sdts, n, q);
                    for &s in strengths {
                        let coh = coherent(op, k, &a, s, q)?;
                        scan.ensure(coh == rep, || {
                            format!(
                                "{} q={} {}: {} has {}-coherence {coh}, representable {rep}",
                                op.name,
                                qname(q),
                                show_a(op, &a),
                                show(op, k),
                                s.name()
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn theorem2(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    representation(scan, cfg, "unitary", |op| op.unitary, &[Strength::One], vec![FULL])
}

pub(super) fn theorem3(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let qs = cfg.domain_list();
    representation(scan, cfg, "finitary", |op| op.finitary, &[Strength::Finite, Strength::Full], qs)
}

pub(super) fn theorem4(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let qs = cfg.domain_list();
    representation(
        scan,
        cfg,
        "finitary and incremental",
        |op| op.finitary && op.incremental,
        &[Strength::Two],
        qs,
    )
}

pub(super) fn theorem5(scan: &mut Scan, cfg: &InstanceConfig) -> Step {
    let qs = cfg.domain_list();
    representation(scan, cfg, "unitary", |op| op.unitary, &[Strength::One], qs)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over every nonempty subset of the coherent sets of things.
    fn representable_oracle(k: &Family, sdts: &Family, n: usize, q: &QDomain) -> bool {
        (1..1u64 << sdts.len()).any(|m| k_fin_from_ds(&pick(sdts, m), n, q).unwrap() == *k)
    }

    #[test]
    fn representable_matches_brute_force() {
        let cfg = InstanceConfig::new(3);
        for op in build_ops(&cfg).unwrap() {
            let a = Assessment::EMPTY;
            let sdts = enumerate_coherent_sdts(&a, &op.cl).unwrap();
            for q in [QDomain::Full, QDomain::CardBound(2)] {
                for k in all_families(3).filter(|k| k.iter().all(|s| q.contains(s))) {
                    assert_eq!(
                        representable(&k, &sdts, 3, &q),
                        representable_oracle(&k, &sdts, 3, &q),
                        "{} {k:?}",
                        op.name
                    );
                }
            }
        }
    }
}
