use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use blockweights::defect_tables::{
    audit, e6_table, twisted_e6_table, verify_e8_contradiction, verify_f4_isolated, verify_named_defects,
    verify_tables_with, AuditLine, QCondition,
};
use blockweights::exactmath::{d_and_e, phi_value, zsigmondy_prime};
use blockweights::isometry::{extend_isometry, preserves_gram, standard_partial, PartialMap};
use blockweights::liedata::{f4_defect_claim, DegreeSource, NamedUnipotent};
use blockweights::lzero::{
    compute_lzero, inertial_from_difference, landrock_lookup, match_basis_shape, norm8_summary,
    projective_sums_vanish, BasisShape, GenCharLattice,
};
use blockweights::report::{Check, Report};
use blockweights::smallgroups::{
    build_pgl2, build_psl2, build_sl2, character_table, local_groups, recognize_2group, sylow2, CharacterTable,
    TwoGroupType,
};
use blockweights::symbols::{
    defect_table, defect_type_a, identity_check, reduced_symbols, scan_bounds, ClassicalType, Partition,
};

pub const DEFAULT_QS: [i64; 6] = [3, 5, 7, 9, 11, 13];

fn local_lattices() -> Result<Vec<(usize, Arc<CharacterTable>, GenCharLattice)>> {
    local_groups()
        .par_iter()
        .map(|(e, g)| {
            let t = Arc::new(character_table(g).with_context(|| format!("character table of {}", g.name()))?);
            let l = compute_lzero(&t);
            Ok((*e, t, l))
        })
        .collect()
}

fn expected_degrees(e: usize) -> Vec<i64> {
    match e {
        1 => vec![1; 8],
        3 => vec![1, 1, 1, 1, 1, 1, 3, 3],
        7 => vec![1, 1, 1, 1, 1, 1, 1, 7],
        _ => vec![1, 1, 1, 3, 3, 7, 7, 7],
    }
}

pub fn local(show_tables: bool) -> Result<Report> {
    let mut report = Report::new("local-groups");
    for (e, t, l) in local_lattices()? {
        let id = |s: &str| format!("local.E{e}.{s}");
        let reference = "the local groups (C2)^3:E have 8 irreducible characters";
        report.push(Check::new(id("classes"), reference, t.num_classes() == 8, format!("{} classes", t.num_classes())));
        let verified = t.verify();
        report.push(Check::new(
            id("orthogonality"),
            "row and column orthogonality",
            verified.is_ok(),
            verified.err().unwrap_or_else(|| "exact".into()),
        ));
        let mut degrees = t.degrees();
        degrees.sort_unstable();
        report.push(Check::new(
            id("degrees"),
            reference,
            degrees == expected_degrees(e),
            format!("{degrees:?}"),
        ));
        let diff = landrock_lookup(e as u32)?.difference;
        report.push(Check::new(
            id("lzero-rank"),
            "rank of L0 equals k(B) - l(B)",
            l.rank() as u32 == diff,
            format!("rank {} of {}", l.rank(), l.dim()),
        ));
        if let Some(shape) = BasisShape::for_inertial_order(e as u32) {
            let witness = match_basis_shape(&l, shape);
            let ok = witness.as_ref().is_some_and(|w| w.gram == shape.gram());
            report.push(Check::new(
                id("shape"),
                "L0 basis of the listed shape",
                ok,
                match &witness {
                    Some(w) => format!("{shape:?} via perm {:?} signs {:?}", w.perm, w.signs),
                    None => format!("no {shape:?} witness"),
                },
            ));
            if let (BasisShape::E3, Some(w)) = (shape, &witness) {
                report.push(Check::new(
                    id("projective-sums"),
                    "the sums chi_i + chi_(i+3) + chi_7 + chi_8 are projective",
                    projective_sums_vanish(&l, w),
                    "some labeling realizes the three projective sums",
                ));
            }
        }
        if show_tables {
            report.note(format!("E{e}: {}", t.to_text().replace('\n', " | ")));
        }
    }
    report.note("assumption: E has trivial Schur multiplier, so the local block algebra is the untwisted group algebra of (C2)^3:E");
    Ok(report)
}

pub fn landrock() -> Result<Report> {
    let mut report = Report::new("landrock");
    let reference = "Landrock's (k, l) table for elementary abelian defect 8";
    for e in [1u32, 3, 7, 21] {
        let case = landrock_lookup(e)?;
        let back = inertial_from_difference(case.difference)?;
        report.push(Check::new(
            format!("landrock.E{e}"),
            reference,
            back == e,
            format!("(k,l) in {:?}, k - l of the local block = {}", case.allowed_pairs, case.difference),
        ));
    }
    for (e, t, l) in local_lattices()? {
        let case = landrock_lookup(e as u32)?;
        let ell = t.regular_classes().len() as u32;
        report.push(Check::new(
            format!("landrock.local.E{e}"),
            "the local block realizes its case",
            case.allowed_pairs.contains(&(8, ell)) && l.rank() as u32 == case.difference,
            format!("k = 8, l = {ell}, rank L0 = {}", l.rank()),
        ));
    }
    Ok(report)
}

pub fn norm8(max_support: usize) -> Result<Report> {
    let s = norm8_summary(max_support);
    let mut report = Report::new("norm8");
    report.push(Check::new(
        "norm8.supports",
        "norm-8 vectors of L0 have support 2, 5 or 8",
        s.holds(),
        format!("supports {:?}; support-5 shapes {:?}; {} shapes in all", s.supports, s.support5, s.shapes.len()),
    ));
    Ok(report)
}

pub fn classical(lmax: u32, qs: &[i64]) -> Result<Report> {
    let mut report = Report::new("classical-defects");
    for c in scan_bounds(lmax, lmax, qs)? {
        let m = &c.minimum;
        report.push(Check::new(
            format!("classical.{}{}.q{}", m.family, m.rank, m.q),
            "lower bounds on 2-defects of unipotent characters of classical groups",
            c.holds,
            format!(
                "min {} at {} over {} characters; bound {}",
                m.min_defect,
                m.witness,
                m.characters,
                c.bound.map_or("none".into(), |b| b.to_string())
            ),
        ));
        if !c.threshold_holds {
            report.note(format!(
                "{}{} at q={}: minimum {} lies below the stated floor {} for rank >= 3",
                m.family,
                m.rank,
                m.q,
                m.min_defect,
                c.threshold.unwrap_or_default()
            ));
        }
    }
    for &q in qs {
        let (d, e) = d_and_e(q)?;
        let chi = defect_type_a(&Partition::new(vec![2, 1]), q, false)?;
        report.push(Check::new(
            format!("classical.A2.chi21.q{q}"),
            "chi^(2,1) of A2 has 2-defect 2d",
            chi == 2 * d as i64,
            format!("defect {chi}, d = {d}"),
        ));
        let ones: Vec<i64> = [vec![2], vec![1, 1]]
            .into_iter()
            .map(|p| defect_type_a(&Partition::new(p), q, false))
            .collect::<Result<_, _>>()?;
        report.push(Check::new(
            format!("classical.A1.q{q}"),
            "unipotent characters of A1 have defect d + e",
            ones.iter().all(|&v| v == (d + e) as i64),
            format!("defects {ones:?}, d + e = {}", d + e),
        ));
    }
    Ok(report)
}

/// Per-label scan records as text lines.
pub fn classical_records(lmax: u32, qs: &[i64]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for ty in ClassicalType::ALL {
        for rank in ty.min_rank()..=lmax {
            for &q in qs {
                for r in defect_table(ty, rank, q)? {
                    out.push(format!("{}{} q={} {:<24} defect {:>2}  {}", r.family, r.rank, r.q, r.label, r.defect, r.degree));
                }
            }
        }
    }
    Ok(out)
}

pub fn symbol_identity(rank_max: u32, size_max: usize) -> Result<Report> {
    let mut report = Report::new("symbol-identity");
    let mut by_rank: BTreeMap<i64, (usize, usize, Vec<String>)> = BTreeMap::new();
    for s in reduced_symbols(rank_max, size_max) {
        let entry = by_rank.entry(s.rank()).or_default();
        entry.0 += 1;
        if identity_check(&s).is_err() {
            entry.2.push(format!("identity {s}"));
        }
        if s.hooks().len() as i64 != s.h_plus() || s.cohooks().len() as i64 != s.h_minus() {
            entry.2.push(format!("hook count {s}"));
        } else {
            entry.1 += 1;
        }
    }
    for (rank, (count, _, bad)) in by_rank {
        report.push(Check::new(
            format!("symbols.rank{rank}"),
            "c + h+ + h- - 2 rank is 0 or -1 by parity; hook and cohook counts",
            bad.is_empty(),
            if bad.is_empty() {
                format!("{count} reduced symbols")
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(report)
}

pub fn tables(qs: Option<&[i64]>, catalog: &[NamedUnipotent]) -> Result<Report> {
    if let Some(qs) = qs {
        for &q in qs {
            check_odd(q)?;
        }
    }
    Ok(verify_tables_with(qs, catalog)?)
}

pub fn table_audit() -> Result<Vec<AuditLine>> {
    let rows: Vec<_> = e6_table().into_iter().chain(twisted_e6_table()).collect();
    Ok(audit(&rows)?)
}

pub fn f4(qs: &[i64], catalog: &[NamedUnipotent]) -> Result<Report> {
    let mut report = Report::new("f4");
    let claim = f4_defect_claim();
    let ingested: Vec<_> = catalog
        .iter()
        .filter(|e| e.series == claim.series && e.source == DegreeSource::Ingested)
        .collect();
    if ingested.is_empty() {
        report.note(format!(
            "conditional: the remaining unipotent characters of F4 are taken to have defect at least {}; supply --data to check them",
            claim.others_at_least
        ));
    }
    for &q in qs {
        for entry in &ingested {
            let d = entry.defect(q)?;
            report.push(Check::new(
                format!("f4.q{q}.{}", entry.label),
                "remaining unipotent characters of F4 have large defect",
                d >= 0 && (claim.exact.contains_key(&(d as u32)) || d >= claim.others_at_least as i64),
                format!("degree {}, defect {d}", entry.degree),
            ));
        }
        let (summary, sub) = verify_f4_isolated(q)?;
        report.absorb(sub);
        report.push(Check::new(
            format!("f4.q{q}.isolated"),
            "no isolated centralizer of F4 carries defect 2 or 3",
            summary.holds(),
            format!("{} centralizer types", summary.centralizers.len()),
        ));
    }
    Ok(report)
}

pub fn e8(qs: &[i64]) -> Result<Report> {
    let mut report = Report::new("e8");
    for &q in qs {
        let (_, sub) = verify_e8_contradiction(q)?;
        report.absorb(sub);
    }
    Ok(report)
}

pub fn named(qs: &[i64], catalog: &[NamedUnipotent]) -> Result<Report> {
    Ok(verify_named_defects(qs, catalog)?)
}

pub fn zsigmondy(qs: &[i64], nmax: u32, dmax: u32) -> Result<Report> {
    let mut report = Report::new("zsigmondy");
    for &q in qs {
        check_odd(q)?;
        let qb = BigInt::from(q);
        for n in 3..=nmax {
            let p = zsigmondy_prime(q as u64, n)?;
            let pb = BigInt::from(p);
            let hits: Vec<u32> = (1..=dmax).filter(|&d| (phi_value(d, &qb) % &pb).is_zero()).collect();
            report.push(Check::new(
                format!("zsigmondy.q{q}.n{n}"),
                "a primitive prime of q^n - 1 divides F_d(q) only when n | d",
                hits.iter().all(|d| d % n == 0) && hits.contains(&n),
                format!("p = {p}, divides F_d for d in {hits:?}"),
            ));
        }
    }
    Ok(report)
}

pub fn sylow(qs: &[i64]) -> Result<Report> {
    let mut report = Report::new("sylow");
    let reference = "Sylow 2-subgroups of SL2(q), PGL2(q) and PSL2(q)";
    for &q in qs {
        check_odd(q)?;
        let q32 = u32::try_from(q)?;
        let small = q % 8 == 3 || q % 8 == 5;
        let g = build_sl2(q32)?;
        let p = sylow2(&g);
        let ty = recognize_2group(&g, &p);
        report.push(Check::new(
            format!("sylow.SL2({q})"),
            reference,
            ty == TwoGroupType::GeneralizedQuaternion && (p.len() == 8) == small,
            format!("{ty} of order {}", p.len()),
        ));
        let g = build_pgl2(q32)?;
        let p = sylow2(&g);
        let ty = recognize_2group(&g, &p);
        report.push(Check::new(
            format!("sylow.PGL2({q})"),
            reference,
            ty == TwoGroupType::Dihedral && p.len() >= 8,
            format!("{ty} of order {}", p.len()),
        ));
        let g = build_psl2(q32)?;
        let p = sylow2(&g);
        let ty = recognize_2group(&g, &p);
        let want = if small { TwoGroupType::KleinFour } else { TwoGroupType::Dihedral };
        report.push(Check::new(
            format!("sylow.PSL2({q})"),
            reference,
            ty == want,
            format!("{ty} of order {}", p.len()),
        ));
    }
    Ok(report)
}

pub fn isometry(cases: &[u32], kind: PartialMap) -> Result<Report> {
    let mut report = Report::new("isometry");
    let lattices = local_lattices()?;
    report.note("not checked: that the perfect isometry comes from a p-permutation equivalence");
    for &e in cases {
        let Some((_, _, l)) = lattices.iter().find(|(k, _, _)| *k as u32 == e) else {
            bail!("no local group with |E| = {e}");
        };
        let Some(partial) = standard_partial(l, kind) else {
            bail!("partial map {kind:?} is not defined for |E| = {e}");
        };
        let id = format!("isometry.E{e}.{kind:?}").to_lowercase();
        match extend_isometry(l, l, &partial) {
            Ok((c, perfect)) => {
                let restricts = l.basis_rows().iter().zip(&partial).all(|(b, p)| &c.apply(b) == p);
                report.push(Check::new(
                    id,
                    "a perfect isometry extends the partial isometry on L0",
                    perfect.passes() && restricts && preserves_gram(&l.table, &c),
                    format!("{} ({} class pairs)", c.one_line(), perfect.pairs_checked),
                ));
            }
            Err(err) => report.push(Check::new(id, "a perfect isometry extends the partial isometry on L0", false, err.to_string())),
        }
    }
    Ok(report)
}

pub fn check_odd(q: i64) -> Result<()> {
    if q < 3 || q % 2 == 0 {
        bail!("q must be odd and at least 3, got {q}");
    }
    Ok(())
}

/// Defaults of the `e8` suite: those `q` in the default set with `(q²-1)₊ = 8`.
pub fn e8_defaults() -> Vec<i64> {
    DEFAULT_QS.iter().copied().filter(|&q| QCondition::TwoPartEight.admits(q)).collect()
}
