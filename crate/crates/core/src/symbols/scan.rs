use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partition::{defect_type_a, degree_type_a, partitions, Partition};
use super::symbol::{defect_bcd, degree_bcd, Symbol, SymbolFamily};
use super::SymbolError;
use crate::exactmath::{d_and_e, CycProduct};

/// Which values of `k - r` an enumeration covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefectClass {
    /// `k - r` odd (types B and C).
    Odd,
    /// `k - r ≡ 0 (mod 4)` (type D).
    ZeroMod4,
    /// `k - r ≡ 2 (mod 4)` (type ²D).
    TwoMod4,
    /// `k - r` even (both D classes).
    Even,
}

impl DefectClass {
    fn admits(self, d: u32) -> bool {
        match self {
            DefectClass::Odd => d % 2 == 1,
            DefectClass::ZeroMod4 => d % 4 == 0,
            DefectClass::TwoMod4 => d % 4 == 2,
            DefectClass::Even => d % 2 == 0,
        }
    }

    pub fn of_family(f: SymbolFamily) -> Self {
        match f {
            SymbolFamily::B | SymbolFamily::C => DefectClass::Odd,
            SymbolFamily::D => DefectClass::ZeroMod4,
            SymbolFamily::TwistedD => DefectClass::TwoMod4,
        }
    }
}

/// Ordered pairs of partitions with total size `n`.
fn bipartitions(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for a in 0..=n {
        for alpha in partitions(a) {
            for beta in partitions(n - a) {
                out.push((alpha.clone(), beta));
            }
        }
    }
    out
}

/// Every reduced symbol of the given rank whose defect `|k - r|` lies in
/// `class`, each equivalence class exactly once.
///
/// Symbols of defect `D` and rank `n` correspond to bipartitions of
/// `n - ⌊D²/4⌋`; for `D = 0` the pair is unordered.
pub fn enumerate_symbols(rank: u32, class: DefectClass) -> Vec<Symbol> {
    let mut out = Vec::new();
    let mut d = 0u32;
    while d * d / 4 <= rank {
        if class.admits(d) {
            let m = rank - d * d / 4;
            for (alpha, beta) in bipartitions(m) {
                if d == 0 && alpha > beta {
                    continue;
                }
                let k = alpha.len().max(beta.len() + d as usize);
                let r = k - d as usize;
                let s = Symbol::new(alpha.beta_set(k), beta.beta_set(r)).expect("beta sets are distinct");
                out.push(s.canonical());
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Every reduced symbol (both forms under swap) of rank at most `rank_max`
/// with `k + r ≤ size_max`.
pub fn reduced_symbols(rank_max: u32, size_max: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    for rank in 0..=rank_max {
        for class in [DefectClass::Odd, DefectClass::Even] {
            for s in enumerate_symbols(rank, class) {
                let swapped = s.swap();
                if swapped != s {
                    out.push(swapped);
                }
                out.push(s);
            }
        }
    }
    out.retain(|s| s.k() + s.r() <= size_max);
    out.sort();
    out
}

/// Classical types whose defects are scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalType {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
}

impl ClassicalType {
    pub const ALL: [ClassicalType; 6] = [
        ClassicalType::A,
        ClassicalType::TwistedA,
        ClassicalType::B,
        ClassicalType::C,
        ClassicalType::D,
        ClassicalType::TwistedD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalType::A => "A",
            ClassicalType::TwistedA => "2A",
            ClassicalType::B => "B",
            ClassicalType::C => "C",
            ClassicalType::D => "D",
            ClassicalType::TwistedD => "2D",
        }
    }

    fn symbol_family(self) -> Option<SymbolFamily> {
        match self {
            ClassicalType::B => Some(SymbolFamily::B),
            ClassicalType::C => Some(SymbolFamily::C),
            ClassicalType::D => Some(SymbolFamily::D),
            ClassicalType::TwistedD => Some(SymbolFamily::TwistedD),
            _ => None,
        }
    }

    /// Smallest rank for which the type is scanned.
    pub fn min_rank(self) -> u32 {
        match self {
            ClassicalType::A => 1,
            _ => 2,
        }
    }
}

/// One unipotent character found by a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub family: String,
    pub rank: u32,
    pub q: i64,
    pub label: String,
    pub degree: CycProduct,
    pub defect: i64,
}

/// All unipotent characters of the given type and rank with their degrees
/// and 2-defects at `q`.
pub fn defect_table(ty: ClassicalType, rank: u32, q: i64) -> Result<Vec<ScanRecord>, SymbolError> {
    d_and_e(q)?;
    let record = |label: String, degree: CycProduct, defect: i64| ScanRecord {
        family: ty.name().to_string(),
        rank,
        q,
        label,
        degree,
        defect,
    };
    match ty.symbol_family() {
        None => {
            let twisted = ty == ClassicalType::TwistedA;
            partitions(rank + 1)
                .into_iter()
                .map(|p| {
                    Ok(record(
                        p.to_string(),
                        degree_type_a(&p, twisted)?,
                        defect_type_a(&p, q, twisted)?,
                    ))
                })
                .collect()
        }
        Some(fam) => enumerate_symbols(rank, DefectClass::of_family(fam))
            .into_iter()
            .map(|s| {
                Ok(record(
                    s.to_string(),
                    degree_bcd(&s, fam, rank)?,
                    defect_bcd(&s, fam, rank, q)?,
                ))
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanMinimum {
    pub family: String,
    pub rank: u32,
    pub q: i64,
    pub min_defect: i64,
    pub witness: String,
    pub characters: usize,
}

/// Minimum 2-defect over all unipotent characters, with the first label
/// attaining it.
pub fn min_defect_scan(ty: ClassicalType, rank: u32, q: i64) -> Result<ScanMinimum, SymbolError> {
    let table = defect_table(ty, rank, q)?;
    let best = table
        .iter()
        .min_by_key(|r| r.defect)
        .expect("every rank has unipotent characters");
    Ok(ScanMinimum {
        family: ty.name().to_string(),
        rank,
        q,
        min_defect: best.defect,
        witness: best.label.clone(),
        characters: table.len(),
    })
}

fn is_triangular(n: u32) -> bool {
    (1..=n).map(|k| k * (k + 1) / 2).take_while(|&t| t <= n).any(|t| t == n)
}

/// Lower bound on 2-defects of unipotent characters of the given type and
/// rank at `q`, or `None` when no bound is claimed for that rank.
pub fn claimed_lower_bound(ty: ClassicalType, rank: u32, q: i64) -> Result<Option<i64>, SymbolError> {
    let (d, e) = d_and_e(q)?;
    let (d, e, l) = (d as i64, e as i64, rank as i64);
    Ok(match ty {
        ClassicalType::A | ClassicalType::TwistedA => {
            let (main, other) = if ty == ClassicalType::A { (d, e) } else { (e, d) };
            let mut bound = main * l;
            if !is_triangular(rank + 1) {
                bound += other;
            }
            Some(bound)
        }
        ClassicalType::B | ClassicalType::C if rank >= 2 => Some(2 * l),
        ClassicalType::D | ClassicalType::TwistedD if rank >= 4 => Some(2 * l - 1),
        _ => None,
    })
}

/// Rank-independent floor claimed for type A and ²A from rank 3 on: 5 and 6.
pub fn claimed_threshold(ty: ClassicalType, rank: u32) -> Option<i64> {
    match ty {
        ClassicalType::A if rank >= 3 => Some(5),
        ClassicalType::TwistedA if rank >= 3 => Some(6),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundCheck {
    pub minimum: ScanMinimum,
    pub bound: Option<i64>,
    pub holds: bool,
    pub threshold: Option<i64>,
    pub threshold_holds: bool,
}

/// Scan every `(type, rank, q)` combination in parallel and compare the
/// minima with the claimed bounds. Type A uses ranks up to `a_rank_max`.
pub fn scan_bounds(a_rank_max: u32, rank_max: u32, qs: &[i64]) -> Result<Vec<BoundCheck>, SymbolError> {
    let mut jobs = Vec::new();
    for ty in ClassicalType::ALL {
        let top = match ty {
            ClassicalType::A | ClassicalType::TwistedA => a_rank_max,
            _ => rank_max,
        };
        for rank in ty.min_rank()..=top {
            for &q in qs {
                jobs.push((ty, rank, q));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(ty, rank, q)| {
            let minimum = min_defect_scan(ty, rank, q)?;
            let bound = claimed_lower_bound(ty, rank, q)?;
            let holds = bound.is_none_or(|b| minimum.min_defect >= b);
            let threshold = claimed_threshold(ty, rank);
            let threshold_holds = threshold.is_none_or(|t| minimum.min_defect >= t);
            Ok(BoundCheck {
                minimum,
                bound,
                holds,
                threshold,
                threshold_holds,
            })
        })
        .collect()
}
