//! Orders of finite groups of Lie type and a small catalog of unipotent
//! character degrees, all as cyclotomic products.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{CycProduct, MathError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("unsupported series {family} of rank {rank}")]
    Unsupported { family: String, rank: u32 },
    #[error("cannot parse series name {0:?}")]
    BadSeries(String),
    #[error("unknown unipotent label {0:?}")]
    UnknownLabel(String),
    #[error("label {0:?} is ambiguous; qualify it with a series prefix")]
    AmbiguousLabel(String),
    #[error("catalog record {line}: {reason}")]
    BadRecord { line: usize, reason: String },
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    Triality,
    G2,
    Ree,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
}

impl Family {
    pub fn prefix(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::Triality => "3D",
            Family::G2 => "G",
            Family::Ree => "2G",
            Family::F4 => "F",
            Family::E6 | Family::E7 | Family::E8 => "E",
            Family::TwistedE6 => "2E",
        }
    }

    fn fixed_rank(self) -> Option<u32> {
        match self {
            Family::Triality => Some(4),
            Family::G2 | Family::Ree => Some(2),
            Family::F4 => Some(4),
            Family::E6 | Family::TwistedE6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }

    fn min_rank(self) -> u32 {
        match self {
            Family::A => 1,
            Family::TwistedA => 2,
            Family::B | Family::C | Family::D | Family::TwistedD => 2,
            other => other.fixed_rank().unwrap(),
        }
    }
}

/// A series of finite groups of Lie type, possibly over `q^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieSeries {
    pub family: Family,
    pub rank: u32,
    pub field_power: u32,
}

impl LieSeries {
    pub fn new(family: Family, rank: u32) -> Result<Self, LieError> {
        Self::over(family, rank, 1)
    }

    pub fn over(family: Family, rank: u32, field_power: u32) -> Result<Self, LieError> {
        let ok = match family.fixed_rank() {
            Some(r) => r == rank,
            None => rank >= family.min_rank(),
        };
        if !ok || field_power == 0 {
            return Err(LieError::Unsupported {
                family: family.prefix().to_string(),
                rank,
            });
        }
        Ok(LieSeries {
            family,
            rank,
            field_power,
        })
    }

    /// Shorthand for fixed, known-valid series in tables and tests.
    pub fn of(name: &str) -> Self {
        name.parse().unwrap_or_else(|e| panic!("{e}"))
    }

    /// The twisted partner under `q ↦ -q`, where one exists.
    pub fn mirror(self) -> Option<Self> {
        let family = match self.family {
            Family::A => Family::TwistedA,
            Family::TwistedA => Family::A,
            Family::E6 => Family::TwistedE6,
            Family::TwistedE6 => Family::E6,
            Family::B | Family::C | Family::F4 | Family::G2 | Family::E7 | Family::E8 => self.family,
            Family::Triality => Family::Triality,
            Family::D if self.rank % 2 == 0 => Family::D,
            Family::TwistedD if self.rank % 2 == 0 => Family::TwistedD,
            Family::D => Family::TwistedD,
            Family::TwistedD => Family::D,
            Family::Ree => return None,
        };
        if self.family == Family::A && self.rank < 2 {
            return None;
        }
        Some(LieSeries { family, ..self })
    }
}

impl fmt::Display for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.family {
            Family::Triality => "3D4".to_string(),
            Family::Ree => "2G2".to_string(),
            fam => format!("{}{}", fam.prefix(), self.rank),
        };
        if self.field_power == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}(q^{})", self.field_power)
        }
    }
}

impl FromStr for LieSeries {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::BadSeries(s.to_string());
        let s = s.trim();
        let (body, field_power) = match s.find('(') {
            Some(i) => {
                let inner = s[i..]
                    .strip_prefix("(q^")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                (&s[..i], inner.parse::<u32>().map_err(|_| bad())?)
            }
            None => (s, 1),
        };
        let (family, rank) = match body {
            "3D4" => (Family::Triality, 4),
            "2G2" => (Family::Ree, 2),
            "G2" => (Family::G2, 2),
            "F4" => (Family::F4, 4),
            "E6" => (Family::E6, 6),
            "2E6" => (Family::TwistedE6, 6),
            "E7" => (Family::E7, 7),
            "E8" => (Family::E8, 8),
            _ => {
                let (fam, digits) = if let Some(rest) = body.strip_prefix("2A") {
                    (Family::TwistedA, rest)
                } else if let Some(rest) = body.strip_prefix("2D") {
                    (Family::TwistedD, rest)
                } else if let Some(rest) = body.strip_prefix('A') {
                    (Family::A, rest)
                } else if let Some(rest) = body.strip_prefix('B') {
                    (Family::B, rest)
                } else if let Some(rest) = body.strip_prefix('C') {
                    (Family::C, rest)
                } else if let Some(rest) = body.strip_prefix('D') {
                    (Family::D, rest)
                } else {
                    return Err(bad());
                };
                (fam, digits.parse::<u32>().map_err(|_| bad())?)
            }
        };
        LieSeries::over(family, rank, field_power)
    }
}

/// Fundamental degrees with their twist signs: the order is
/// `q^N ∏ (q^d - ε)` with `N = Σ (d - 1)`.
fn degree_data(family: Family, l: u32) -> Vec<(u32, i32)> {
    let untwisted = |ds: Vec<u32>| ds.into_iter().map(|d| (d, 1)).collect::<Vec<_>>();
    match family {
        Family::A => untwisted((2..=l + 1).collect()),
        Family::TwistedA => (2..=l + 1)
            .map(|d| (d, if d % 2 == 0 { 1 } else { -1 }))
            .collect(),
        Family::B | Family::C => untwisted((1..=l).map(|i| 2 * i).collect()),
        Family::D | Family::TwistedD => {
            let mut v: Vec<(u32, i32)> = (1..l).map(|i| (2 * i, 1)).collect();
            v.push((l, if family == Family::D { 1 } else { -1 }));
            v
        }
        Family::G2 => untwisted(vec![2, 6]),
        Family::F4 => untwisted(vec![2, 6, 8, 12]),
        Family::E6 => untwisted(vec![2, 5, 6, 8, 9, 12]),
        Family::TwistedE6 => vec![(2, 1), (5, -1), (6, 1), (8, 1), (9, -1), (12, 1)],
        Family::E7 => untwisted(vec![2, 6, 8, 10, 12, 14, 18]),
        Family::E8 => untwisted(vec![2, 8, 12, 14, 18, 20, 24, 30]),
        Family::Triality | Family::Ree => unreachable!("handled separately"),
    }
}

/// `|G^F|` as a cyclotomic product.
pub fn group_order(s: LieSeries) -> CycProduct {
    let base = match s.family {
        // q^12 (q^8 + q^4 + 1)(q^6 - 1)(q^2 - 1)
        Family::Triality => {
            let q8q4 = CycProduct::phis(&[(3, 1), (6, 1), (12, 1)]);
            CycProduct::q_pow(12) * q8q4 * CycProduct::q_n_minus_one(6) * CycProduct::q_n_minus_one(2)
        }
        // q^3 (q^3 + 1)(q - 1)
        Family::Ree => CycProduct::q_pow(3) * CycProduct::q_n_plus_one(3) * CycProduct::q_n_minus_one(1),
        fam => {
            let mut acc = CycProduct::one();
            let mut n = 0;
            for (d, eps) in degree_data(fam, s.rank) {
                n += d as i32 - 1;
                acc = acc
                    * if eps == 1 {
                        CycProduct::q_n_minus_one(d)
                    } else {
                        CycProduct::q_n_plus_one(d)
                    };
            }
            CycProduct::q_pow(n) * acc
        }
    };
    base.substitute_power(s.field_power)
}

/// `|G^F|_{r'}`: the order with the power of `q` removed.
pub fn order_rprime(s: LieSeries) -> CycProduct {
    group_order(s).rprime_part()
}

/// The raw product `q^N ∏ (q^d - ε)` evaluated directly, without any
/// cyclotomic factorization. Used to cross-check [`group_order`].
pub fn raw_order_value(s: LieSeries, q: i64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let qj = num_traits::pow(BigInt::from(q), s.field_power as usize);
    let p = |k: u32| num_traits::pow(qj.clone(), k as usize);
    match s.family {
        Family::Triality => p(12) * (p(8) + p(4) + 1) * (p(6) - 1) * (p(2) - 1),
        Family::Ree => p(3) * (p(3) + 1) * (p(1) - 1),
        fam => {
            let mut acc = BigInt::from(1);
            let mut n = 0;
            for (d, eps) in degree_data(fam, s.rank) {
                n += d - 1;
                acc *= p(d) - BigInt::from(eps);
            }
            acc * p(n)
        }
    }
}

/// Where a catalog degree comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSource {
    /// Stated in full among the checked claims.
    Published,
    /// Obtained by inverting the Jordan-decomposition degree formula
    /// against a table row; known only up to the power of `q`.
    BackSolved,
    /// Standard value from unipotent degree tables, not restated among the
    /// checked claims.
    Supplementary,
    /// Loaded from a degree-catalog file.
    Ingested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedUnipotent {
    pub series: LieSeries,
    pub label: String,
    pub degree: CycProduct,
    pub source: DegreeSource,
    /// The degree is only meaningful as an `r'`-part.
    pub rprime_only: bool,
}

impl NamedUnipotent {
    pub fn key(&self) -> String {
        format!("{}:{}", self.series, self.label)
    }

    /// 2-defect at odd `q`: `v₂(|G|_{r'}) - v₂(χ(1)_{r'})`.
    pub fn defect(&self, q: i64) -> Result<i64, MathError> {
        let o = order_rprime(self.series).v2_at(q)?;
        let d = self.degree.rprime_part().v2_at(q)?;
        Ok(o - d)
    }
}

fn entry(
    series: &str,
    label: &str,
    degree: CycProduct,
    source: DegreeSource,
) -> NamedUnipotent {
    NamedUnipotent {
        series: LieSeries::of(series),
        label: label.to_string(),
        degree,
        source,
        rprime_only: source == DegreeSource::BackSolved,
    }
}

/// Alternative spellings accepted by [`named_degree`].
const ALIASES: &[(&str, &str)] = &[
    ("A2:chi^(1,2)", "A2:chi^(2,1)"),
    ("2A2:chi^(1,2)", "2A2:chi^(2,1)"),
];

/// The built-in catalog of named unipotent degrees.
pub fn catalog() -> Vec<NamedUnipotent> {
    use DegreeSource::*;
    let cp = CycProduct::from_parts;
    let e6_theta = cp(1, 3, 7, &[(1, 6), (2, 4), (4, 2), (5, 1), (8, 1)]);
    let e7_pair = cp(1, 3, 7, &[(1, 6), (2, 6), (4, 2), (5, 1), (7, 1), (8, 1), (10, 1), (14, 1)]);
    let f4_i = cp(1, 4, 4, &[(1, 4), (2, 4), (3, 2), (6, 2)]);
    let mut out = vec![
        entry("A2", "chi^(2,1)", cp(1, 1, 1, &[(2, 1)]), Published),
        entry("2A2", "chi^(2,1)", cp(1, 1, 1, &[(1, 1)]), Published),
        entry("E6", "E6[theta]", e6_theta.clone(), Published),
        entry("E6", "E6[theta^2]", e6_theta.clone(), Published),
        entry("2E6", "2E6[theta]", e6_theta.mirror(), Published),
        entry("2E6", "2E6[theta^2]", e6_theta.mirror(), Published),
        entry("F4", "F4[i]", f4_i.clone(), Supplementary),
        entry("F4", "F4[-i]", f4_i, Supplementary),
    ];
    for lab in ["(E6[theta],1)", "(E6[theta^2],1)", "(E6[theta],epsilon)", "(E6[theta^2],epsilon)"] {
        out.push(entry("E7", lab, e7_pair.clone(), Published));
    }
    for (lab, deg) in triality_backsolved() {
        out.push(entry("3D4", lab, deg, BackSolved));
    }
    out
}

/// `r'`-degrees of four unipotent characters of `³D₄(q)`, obtained by
/// dividing a table row's product by `|E₆|_{r'} / (z(s)·|³D₄|_{r'})`.
/// The defect tables module re-derives these from every row that uses them.
pub fn triality_backsolved() -> Vec<(&'static str, CycProduct)> {
    let cp = CycProduct::from_parts;
    vec![
        ("phi_{2,2}", cp(1, 2, 0, &[(2, 2), (12, 1)])),
        ("phi_{2,1}", cp(1, 2, 0, &[(2, 2), (6, 2)])),
        ("3D4[-1]", cp(1, 2, 0, &[(1, 2), (3, 2)])),
        ("3D4[1]", cp(1, 2, 0, &[(1, 2), (12, 1)])),
    ]
}

/// Look up a catalog degree by `series:label`, by bare label when unique,
/// or by a registered alias.
pub fn named_degree(label: &str) -> Result<NamedUnipotent, LieError> {
    lookup_in(&catalog(), label)
}

pub fn lookup_in(entries: &[NamedUnipotent], label: &str) -> Result<NamedUnipotent, LieError> {
    let label = ALIASES
        .iter()
        .find(|(a, _)| *a == label)
        .map(|(_, b)| *b)
        .unwrap_or(label);
    if label.contains(':') && !label.starts_with('(') {
        return entries
            .iter()
            .find(|e| e.key() == label)
            .cloned()
            .ok_or_else(|| LieError::UnknownLabel(label.to_string()));
    }
    let hits: Vec<_> = entries.iter().filter(|e| e.label == label).collect();
    match hits.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(LieError::UnknownLabel(label.to_string())),
        _ => Err(LieError::AmbiguousLabel(label.to_string())),
    }
}

/// Claimed 2-defects of unipotent characters of an exceptional group: exact
/// values with multiplicities, plus a lower bound for everything else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalDefectClaim {
    pub series: LieSeries,
    pub exact: BTreeMap<u32, u32>,
    pub others_at_least: u32,
}

/// Defect claims for `F₄(q)`: two of defect 0, two of defect 5, the rest at
/// least 7.
pub fn f4_defect_claim() -> ExceptionalDefectClaim {
    ExceptionalDefectClaim {
        series: LieSeries::of("F4"),
        exact: BTreeMap::from([(0, 2), (5, 2)]),
        others_at_least: 7,
    }
}

#[derive(Deserialize)]
struct CatalogRecord {
    series: String,
    label: String,
    degree: CycProduct,
}

/// Parse a JSON-lines degree catalog. Each record must carry a degree-like
/// product that divides the group order at `q = 3`.
pub fn load_catalog(text: &str) -> Result<Vec<NamedUnipotent>, LieError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| LieError::BadRecord {
            line: i + 1,
            reason,
        };
        let rec: CatalogRecord = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        let series: LieSeries = rec.series.parse()?;
        rec.degree
            .check_degree_like()
            .map_err(|e| bad(e.to_string()))?;
        let order = group_order(series).eval_integer(3)?;
        let deg = rec.degree.eval_integer(3).map_err(|e| bad(e.to_string()))?;
        if deg <= num_bigint::BigInt::from(0) || (&order % &deg) != num_bigint::BigInt::from(0) {
            return Err(bad(format!("degree {deg} does not divide |{series}(3)| = {order}")));
        }
        out.push(NamedUnipotent {
            series,
            label: rec.label,
            degree: rec.degree,
            source: DegreeSource::Ingested,
            rprime_only: false,
        });
    }
    Ok(out)
}
