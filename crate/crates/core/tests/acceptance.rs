//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use blockweights::defect_tables::{verify_e8_contradiction, verify_f4_isolated, verify_tables};
use blockweights::exactmath::{d_and_e, phi_value, v2, zsigmondy_prime};
use blockweights::isometry::{check_perfect, extend_isometry, standard_partial, PartialMap};
use blockweights::liedata::named_degree;
use blockweights::lzero::{
    compute_lzero, inertial_from_difference, landrock_lookup, match_basis_shape, norm8_summary, BasisShape,
    GenCharLattice,
};
use blockweights::smallgroups::{
    build_pgl2, build_psl2, build_sl2, character_table, local_groups, recognize_2group, sylow2, TwoGroupType,
};
use blockweights::symbols::{defect_type_a, identity_check, scan_bounds, Partition, Symbol};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattices() -> Vec<(usize, GenCharLattice)> {
    local_groups()
        .iter()
        .map(|(e, g)| (*e, compute_lzero(&Arc::new(character_table(g).expect("table")))))
        .collect()
}

fn local_characters() -> Outcome {
    let expected: BTreeMap<usize, Vec<i64>> = BTreeMap::from([
        (1, vec![1; 8]),
        (3, vec![1, 1, 1, 1, 1, 1, 3, 3]),
        (7, vec![1, 1, 1, 1, 1, 1, 1, 7]),
        (21, vec![1, 1, 1, 3, 3, 7, 7, 7]),
    ]);
    let groups = local_groups();
    ensure(groups.len() == 4, || format!("{} local groups", groups.len()))?;
    for (e, g) in &groups {
        let t = character_table(g).map_err(|err| err.to_string())?;
        t.verify()?;
        let mut degrees = t.degrees();
        degrees.sort_unstable();
        ensure(t.num_classes() == 8, || format!("|E|={e}: {} classes", t.num_classes()))?;
        ensure(Some(&degrees) == expected.get(e), || format!("|E|={e}: degrees {degrees:?}"))?;
    }
    Ok("degree multisets {1^8}, {1^6,3^2}, {1^7,7}, {1^3,3^2,7^3}".into())
}

fn lzero_shapes() -> Outcome {
    let mut ranks = Vec::new();
    for (e, l) in lattices() {
        ranks.push(l.rank());
        ensure(l.vanishes_on_regular(), || format!("|E|={e}: basis does not vanish"))?;
        if let Some(shape) = BasisShape::for_inertial_order(e as u32) {
            let w = match_basis_shape(&l, shape).ok_or_else(|| format!("no {shape:?} witness"))?;
            ensure(w.gram == shape.gram(), || format!("{shape:?} gram {:?}", w.gram))?;
            ensure(l.spanned_by(&w.vectors), || format!("{shape:?} witness does not span"))?;
        }
    }
    ensure(ranks == [7, 5, 1, 3], || format!("ranks {ranks:?}"))?;
    Ok("ranks 7/5/1/3, E3/E7/E21 witnesses".into())
}

fn landrock() -> Outcome {
    let expected = [
        (1u32, vec![(8u32, 1u32)], 7u32),
        (3, vec![(8, 3)], 5),
        (7, vec![(5, 4), (8, 7)], 1),
        (21, vec![(7, 4), (8, 5)], 3),
    ];
    for (e, pairs, diff) in expected {
        let case = landrock_lookup(e).map_err(|err| err.to_string())?;
        ensure(case.allowed_pairs == pairs && case.difference == diff, || format!("{case:?}"))?;
        ensure(inertial_from_difference(diff) == Ok(e), || format!("inverse of {diff}"))?;
    }
    ensure(landrock_lookup(5).is_err() && inertial_from_difference(2).is_err(), || "bad input accepted".into())?;
    for (e, l) in lattices() {
        let case = landrock_lookup(e as u32).map_err(|err| err.to_string())?;
        let ell = l.table.regular_classes().len() as u32;
        ensure(l.rank() as u32 == case.difference, || format!("|E|={e}: rank {}", l.rank()))?;
        ensure(case.allowed_pairs.contains(&(8, ell)), || format!("|E|={e}: (8,{ell}) not allowed"))?;
    }
    Ok("tables and inverse agree; rank L0 = k - l for all four".into())
}

fn norm8() -> Outcome {
    let s = norm8_summary(8);
    ensure(s.holds(), || format!("supports {:?}, support-5 {:?}", s.supports, s.support5))?;
    Ok(format!("supports {:?}, support-5 shape {:?}", s.supports, s.support5[0]))
}

// every pair of finite sets of naturals (the empty pair included) with |X|+|Y| ≤ 10, not both containing 0, rank ≤ 8
fn reduced_symbols() -> Vec<Symbol> {
    fn subsets(size: usize, min: u32, budget: u32, acc: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u32)>) {
        if acc.len() == size {
            out.push((acc.clone(), acc.iter().sum()));
            return;
        }
        let mut a = min;
        while a <= budget {
            acc.push(a);
            subsets(size, a + 1, budget - a, acc, out);
            acc.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    for s in 0..=10usize {
        let budget = (8 + (s as i64 - 1).pow(2) / 4) as u32;
        for k in 0..=s {
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            subsets(k, 0, budget, &mut Vec::new(), &mut xs);
            subsets(s - k, 0, budget, &mut Vec::new(), &mut ys);
            for (x, sx) in &xs {
                for (y, sy) in &ys {
                    if sx + sy > budget || (x.first() == Some(&0) && y.first() == Some(&0)) {
                        continue;
                    }
                    out.push(Symbol::new(x.clone(), y.clone()).expect("distinct entries"));
                }
            }
        }
    }
    out
}

fn symbol_identity() -> Outcome {
    let mut symbols = reduced_symbols();
    symbols.sort();
    let library = blockweights::symbols::reduced_symbols(8, 10);
    ensure(library == symbols, || format!("library lists {} symbols, direct search {}", library.len(), symbols.len()))?;
    let (mut zero, mut minus_one) = (0usize, 0usize);
    for s in &symbols {
        let v = identity_check(s).map_err(|e| e.to_string())?;
        let odd = s.kr_difference() % 2 != 0;
        match v {
            0 => ensure(odd || s.x() == s.y(), || format!("{s}: 0 with k-r even, X != Y"))?,
            -1 => ensure(!odd && s.x() != s.y(), || format!("{s}: -1"))?,
            _ => return Err(format!("{s}: value {v}")),
        }
        if v == 0 {
            zero += 1;
        } else {
            minus_one += 1;
        }
        ensure(s.hooks().len() as i64 == s.h_plus(), || format!("{s}: hook count"))?;
        ensure(s.cohooks().len() as i64 == s.h_minus(), || format!("{s}: cohook count"))?;
    }
    Ok(format!("{} reduced symbols ({zero} with value 0, {minus_one} with -1)", symbols.len()))
}

fn classical_bounds() -> Outcome {
    let qs = [3, 5, 7, 9, 11, 13, 17];
    let checks = scan_bounds(8, 8, &qs).map_err(|e| e.to_string())?;
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(format!("{:?}", bad.minimum));
    }
    for q in qs {
        let (d, e) = d_and_e(q).map_err(|e| e.to_string())?;
        let chi = defect_type_a(&Partition::new(vec![2, 1]), q, false).map_err(|e| e.to_string())?;
        ensure(chi == 2 * d as i64, || format!("q={q}: chi^(2,1) defect {chi}"))?;
        for p in [vec![2], vec![1, 1]] {
            let v = defect_type_a(&Partition::new(p.clone()), q, false).map_err(|e| e.to_string())?;
            ensure(v == (d + e) as i64, || format!("q={q}: A1 {p:?} defect {v}"))?;
        }
    }
    let below: Vec<String> = checks
        .iter()
        .filter(|c| !c.threshold_holds)
        .map(|c| format!("{}{}@{}={}", c.minimum.family, c.minimum.rank, c.minimum.q, c.minimum.min_defect))
        .collect();
    Ok(format!(
        "{} (type, rank, q) minima within bounds; below the rank-3 floor: {}",
        checks.len(),
        if below.is_empty() { "none".into() } else { below.join(", ") }
    ))
}

fn named_exceptional() -> Outcome {
    let e6 = named_degree("E6:E6[theta]").map_err(|e| e.to_string())?;
    let e7 = named_degree("E7:(E6[theta],1)").map_err(|e| e.to_string())?;
    let f4 = ["F4:F4[i]", "F4:F4[-i]"].map(|l| named_degree(l).expect("catalog"));
    for q in [3i64, 5, 7, 9] {
        let t = |r: Result<i64, _>| r.map_err(|e: blockweights::exactmath::MathError| e.to_string());
        ensure(t(e6.defect(q))? == 0, || format!("q={q}: E6[theta]"))?;
        let expect = v2(&BigInt::from(q * q - 1)).map_err(|e| e.to_string())? as i64;
        let got = t(e7.defect(q))?;
        ensure(got == expect && got >= 3, || format!("q={q}: E7 defect {got}"))?;
        for c in &f4 {
            let got = t(c.defect(q))?;
            ensure(got == 5, || format!("q={q}: {} defect {got}", c.label))?;
        }
    }
    Ok("E6[theta] 0, (E6[theta],1) v2(q^2-1), F4[+-i] 5 at q in {3,5,7,9}".into())
}

fn e6_tables() -> Outcome {
    let report = verify_tables(None).map_err(|e| e.to_string())?;
    let failures: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
    ensure(failures.is_empty(), || format!("failing: {failures:?}"))?;
    let rows = report.checks.iter().filter(|c| c.id.ends_with(".jordan")).count();
    ensure(rows == 72, || format!("{rows} row evaluations"))?;
    let duality = report.checks.iter().filter(|c| c.id.starts_with("duality.")).count();
    ensure(duality == 18, || format!("{duality} duality checks"))?;
    Ok(format!("{} checks, 36 rows at two q each, mirror maps E6 onto 2E6", report.checks.len()))
}

fn f4_isolated() -> Outcome {
    for q in [3, 5, 7] {
        let (summary, report) = verify_f4_isolated(q).map_err(|e| e.to_string())?;
        ensure(summary.holds(), || format!("q={q}: {:?}", summary.centralizers))?;
        ensure(report.failures().next().is_none(), || format!("q={q}: report failures"))?;
        for (name, set) in &summary.centralizers {
            ensure(!set.may_contain(2) && !set.may_contain(3), || format!("q={q}: {name}"))?;
        }
    }
    Ok("no isolated centralizer reaches defect 2 or 3 at q in {3,5,7}".into())
}

fn e8() -> Outcome {
    let mut primes = Vec::new();
    for q in [3i64, 5] {
        let (s, report) = verify_e8_contradiction(q).map_err(|e| e.to_string())?;
        let failures: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
        ensure(failures.is_empty(), || format!("q={q}: {failures:?}"))?;
        // independent recomputation of the divisibility pattern
        let qb = BigInt::from(q);
        let p = BigInt::from(s.p3);
        let lhs = BigInt::from(2) * phi_value(1, &qb) * phi_value(3, &qb).pow(2);
        let rhs = &qb * phi_value(2, &qb);
        ensure((&lhs % &p).is_zero() && !(&rhs % &p).is_zero(), || format!("q={q}: p3={}", s.p3))?;
        primes.push(s.p3);
    }
    ensure(verify_e8_contradiction(7).is_err(), || "q=7 accepted".into())?;
    Ok(format!("p3 = {primes:?} divides 2F1F3^2 but not qF2"))
}

fn zsigmondy() -> Outcome {
    let mut count = 0;
    for q in [3u64, 5, 7, 9] {
        let qb = BigInt::from(q);
        for n in 3..=20u32 {
            let p = zsigmondy_prime(q, n).map_err(|e| format!("q={q} n={n}: {e}"))?;
            let pb = BigInt::from(p);
            ensure(!(BigInt::from(q).pow(n) - 1u32).is_zero(), || "zero".into())?;
            for d in 1..=60u32 {
                if (phi_value(d, &qb) % &pb).is_zero() {
                    ensure(d % n == 0, || format!("q={q} n={n}: p={p} divides F{d}"))?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} primitive primes, none divides F_d for n not dividing d"))
}

fn sylow() -> Outcome {
    for q in [3u32, 5, 7, 9, 11, 13] {
        let g = build_sl2(q).map_err(|e| e.to_string())?;
        let p = sylow2(&g);
        let ty = recognize_2group(&g, &p);
        ensure(ty == TwoGroupType::GeneralizedQuaternion, || format!("SL2({q}): {ty}"))?;
        let small = q % 8 == 3 || q % 8 == 5;
        ensure((p.len() == 8) == small, || format!("SL2({q}): order {}", p.len()))?;
        let g = build_pgl2(q).map_err(|e| e.to_string())?;
        let p = sylow2(&g);
        let ty = recognize_2group(&g, &p);
        ensure(ty == TwoGroupType::Dihedral && p.len() >= 8, || format!("PGL2({q}): {ty} of order {}", p.len()))?;
    }
    for q in [3u32, 5] {
        let g = build_psl2(q).map_err(|e| e.to_string())?;
        let ty = recognize_2group(&g, &sylow2(&g));
        ensure(ty == TwoGroupType::KleinFour, || format!("PSL2({q}): {ty}"))?;
    }
    Ok("SL2 quaternion, PGL2 dihedral, PSL2(3), PSL2(5) Klein four".into())
}

fn isometry() -> Outcome {
    for (e, l) in lattices().into_iter().filter(|(e, _)| *e > 1) {
        let partial = standard_partial(&l, PartialMap::Identity).ok_or("no partial map")?;
        let (c, report) = extend_isometry(&l, &l, &partial).map_err(|err| format!("|E|={e}: {err}"))?;
        ensure(report.passes(), || format!("|E|={e}: {report:?}"))?;
        let again = check_perfect(&l.table, &l.table, &c);
        ensure(again.integrality_failures.is_empty() && again.separation_failures.is_empty(), || {
            format!("|E|={e}: recheck failed")
        })?;
    }
    Ok("identity extends to a perfect isometry for |E| = 3, 7, 21".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 13] = [
        ("local character counts", local_characters, 10),
        ("L0 ranks and basis shapes", lzero_shapes, 30),
        ("Landrock table and inverse", landrock, 30),
        ("norm-8 support lemma", norm8, 30),
        ("symbol identity", symbol_identity, 60),
        ("classical defect bounds", classical_bounds, 180),
        ("named exceptional defects", named_exceptional, 30),
        ("E6 and 2E6 tables", e6_tables, 30),
        ("F4 isolated centralizers", f4_isolated, 30),
        ("E8 degree contradiction", e8, 30),
        ("Zsigmondy primes", zsigmondy, 30),
        ("Sylow 2-subgroup recognition", sylow, 60),
        ("isometry extension", isometry, 120),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*limit) {
            outcome = Err(format!("took {elapsed:.1?}, limit {limit}s"));
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
