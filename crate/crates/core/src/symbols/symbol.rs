use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SymbolError;
use crate::exactmath::CycProduct;
use crate::liedata::{order_rprime, Family, LieSeries};

/// A pair `[X, Y]` of finite sets of nonnegative integers, each stored
/// strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    x: Vec<u32>,
    y: Vec<u32>,
}

fn normalize(mut v: Vec<u32>) -> Result<Vec<u32>, SymbolError> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(SymbolError::RepeatedEntry(v));
    }
    Ok(v)
}

impl Symbol {
    /// Entries may be given in any order but must be distinct within each row.
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self, SymbolError> {
        Ok(Symbol {
            x: normalize(x)?,
            y: normalize(y)?,
        })
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn r(&self) -> usize {
        self.y.len()
    }

    /// `k - r`.
    pub fn kr_difference(&self) -> i64 {
        self.k() as i64 - self.r() as i64
    }

    fn sum(&self) -> i64 {
        self.x.iter().chain(&self.y).map(|&a| a as i64).sum()
    }

    fn common(&self) -> usize {
        self.x.iter().filter(|a| self.y.contains(a)).count()
    }

    /// The shift `Z ↦ {0} ∪ (Z + 1)` applied `t` times to both rows.
    pub fn shift(&self, t: u32) -> Symbol {
        let sh = |z: &[u32]| {
            let mut v: Vec<u32> = z.iter().map(|&a| a + t).collect();
            v.extend((0..t).rev());
            v
        };
        Symbol {
            x: sh(&self.x),
            y: sh(&self.y),
        }
    }

    pub fn swap(&self) -> Symbol {
        Symbol {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    /// Reduced representative: no further unshift is possible, the longer
    /// row comes first, and rows of equal length are ordered so that
    /// `X ≤ Y` lexicographically.
    pub fn canonical(&self) -> Symbol {
        let mut x = self.x.clone();
        let mut y = self.y.clone();
        while x.last() == Some(&0) && y.last() == Some(&0) {
            x.pop();
            y.pop();
            x.iter_mut().for_each(|a| *a -= 1);
            y.iter_mut().for_each(|a| *a -= 1);
        }
        if x.len() < y.len() || (x.len() == y.len() && x > y) {
            std::mem::swap(&mut x, &mut y);
        }
        Symbol { x, y }
    }

    pub fn is_reduced(&self) -> bool {
        *self == self.canonical()
    }

    /// `ΣX + ΣY - ⌊((k+r-1)/2)²⌋`.
    pub fn rank(&self) -> i64 {
        let s = (self.k() + self.r()) as i64;
        // ⌊((s-1)/2)²⌋ = ⌊(s-1)²/4⌋
        self.sum() - ((s - 1) * (s - 1)).div_euclid(4)
    }

    /// `⌊(k+r-1)/2⌋ - |X ∩ Y|` when `X ≠ Y`, and 0 when `X = Y`.
    pub fn c(&self) -> i64 {
        if self.x == self.y {
            return 0;
        }
        let s = (self.k() + self.r()) as i64;
        (s - 1).div_euclid(2) - self.common() as i64
    }

    /// All hooks `z - z'` with `z ∈ Z`, `z' ∉ Z`, `0 ≤ z' < z`, for `Z ∈ {X, Y}`.
    pub fn hooks(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for z in [&self.x, &self.y] {
            for &a in z.iter() {
                out.extend((0..a).filter(|b| !z.contains(b)).map(|b| a - b));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// All cohooks: `z - z'` with `z` in one row and `z'` missing from the other.
    pub fn cohooks(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (z, other) in [(&self.x, &self.y), (&self.y, &self.x)] {
            for &a in z.iter() {
                out.extend((0..a).filter(|b| !other.contains(b)).map(|b| a - b));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Closed form for the number of hooks: `ΣX + ΣY - C(k,2) - C(r,2)`.
    pub fn h_plus(&self) -> i64 {
        let (k, r) = (self.k() as i64, self.r() as i64);
        self.sum() - k * (k - 1) / 2 - r * (r - 1) / 2
    }

    /// Closed form for the number of cohooks: `ΣX + ΣY - kr + |X ∩ Y|`.
    pub fn h_minus(&self) -> i64 {
        self.sum() - (self.k() * self.r()) as i64 + self.common() as i64
    }

    /// `c + h⁺ + h⁻ - 2·rank`, which must be 0 or -1.
    pub fn identity_value(&self) -> i64 {
        self.c() + self.h_plus() + self.h_minus() - 2 * self.rank()
    }
}

/// Checked form of the identity: 0 when `k - r` is odd or `X = Y`, -1 when
/// `k - r` is even and `X ≠ Y`; anything else is an error.
pub fn identity_check(s: &Symbol) -> Result<i64, SymbolError> {
    let v = s.identity_value();
    let expected = if s.kr_difference() % 2 != 0 || s.x == s.y {
        0
    } else {
        -1
    };
    if v == expected {
        Ok(v)
    } else {
        Err(SymbolError::IdentityViolated {
            symbol: s.to_string(),
            value: v,
        })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[{{{}}},{{{}}}]", row(&self.x), row(&self.y))
    }
}

impl FromStr for Symbol {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, SymbolError> {
        let bad = || SymbolError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix("[{")
            .and_then(|t| t.strip_suffix("}]"))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once("},{").ok_or_else(bad)?;
        let row = |t: &str| -> Result<Vec<u32>, SymbolError> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|v| v.trim().parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        Symbol::new(row(a)?, row(b)?)
    }
}

/// Classical types whose unipotent characters are labelled by symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolFamily {
    B,
    C,
    D,
    TwistedD,
}

impl SymbolFamily {
    pub fn series(self, rank: u32) -> Result<LieSeries, SymbolError> {
        let fam = match self {
            SymbolFamily::B => Family::B,
            SymbolFamily::C => Family::C,
            SymbolFamily::D => Family::D,
            SymbolFamily::TwistedD => Family::TwistedD,
        };
        Ok(LieSeries::new(fam, rank)?)
    }

    /// Whether a symbol with this `k - r` labels a character of the family.
    pub fn admits(self, kr_difference: i64) -> bool {
        let d = kr_difference.rem_euclid(4);
        match self {
            SymbolFamily::B | SymbolFamily::C => d % 2 == 1,
            SymbolFamily::D => d == 0,
            SymbolFamily::TwistedD => d == 2,
        }
    }
}

/// `r'`-part of the degree `|G|_{r'} / (2^c ∏_h (q^h-1) ∏_{h'} (q^{h'}+1))`.
pub fn degree_bcd(s: &Symbol, family: SymbolFamily, rank: u32) -> Result<CycProduct, SymbolError> {
    if s.rank() != rank as i64 {
        return Err(SymbolError::RankMismatch {
            symbol: s.to_string(),
            expected: rank,
            actual: s.rank(),
        });
    }
    if !family.admits(s.kr_difference()) {
        return Err(SymbolError::ParityMismatch {
            symbol: s.to_string(),
            family,
        });
    }
    let mut den = CycProduct::scalar_only(1i64 << s.c(), 1);
    for h in s.hooks() {
        den = den * CycProduct::q_n_minus_one(h);
    }
    for h in s.cohooks() {
        den = den * CycProduct::q_n_plus_one(h);
    }
    let deg = order_rprime(family.series(rank)?) / den;
    if deg.phi_exponents().values().any(|&e| e < 0) {
        return Err(SymbolError::NonCancelling(format!("{s}: {deg}")));
    }
    for q in [3, 5] {
        deg.eval_integer(q)?;
    }
    Ok(deg)
}

/// 2-defect `v₂(|G|_{r'}) - v₂(χ(1)_{r'})` of the character labelled by `s`.
pub fn defect_bcd(s: &Symbol, family: SymbolFamily, rank: u32, q: i64) -> Result<i64, SymbolError> {
    let deg = degree_bcd(s, family, rank)?;
    let order = order_rprime(family.series(rank)?);
    Ok(order.v2_at(q)? - deg.v2_at(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(x: &[u32], y: &[u32]) -> Symbol {
        Symbol::new(x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn rank_and_c_examples() {
        let a = sym(&[2], &[]);
        assert_eq!((a.rank(), a.c()), (2, 0));
        let b = sym(&[0, 2], &[1]);
        assert_eq!((b.rank(), b.c()), (2, 1));
        let c = sym(&[1], &[1]);
        assert_eq!((c.rank(), c.c()), (2, 0));
    }

    #[test]
    fn hook_examples() {
        let a = sym(&[2], &[]);
        assert_eq!(a.hooks(), vec![2, 1]);
        assert_eq!(a.cohooks(), vec![2, 1]);
        let b = sym(&[0, 2], &[1]);
        assert_eq!(b.hooks().len(), 2);
        assert_eq!(b.cohooks().len(), 1);
        assert_eq!((b.h_plus(), b.h_minus()), (2, 1));
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity_check(&sym(&[2], &[])).unwrap(), 0);
        assert_eq!(identity_check(&sym(&[1], &[1])).unwrap(), 0);
        assert_eq!(identity_check(&sym(&[0, 2], &[1])).unwrap(), 0);
        assert_eq!(identity_check(&sym(&[2, 0], &[1, 0])).unwrap(), -1);
    }

    #[test]
    fn shift_and_canonical() {
        let s = sym(&[2, 0], &[1]);
        let t = s.shift(3).swap();
        assert_eq!(t.canonical(), s.canonical());
        assert_eq!(t.rank(), s.rank());
        assert!(sym(&[1, 0], &[0]).canonical() == sym(&[0], &[]));
        assert_eq!(sym(&[3], &[1]).canonical(), sym(&[1], &[3]));
    }

    #[test]
    fn display_roundtrip() {
        let s = sym(&[2, 0], &[1]);
        assert_eq!(s.to_string(), "[{2,0},{1}]");
        assert_eq!(s.to_string().parse::<Symbol>().unwrap(), s);
        assert_eq!("[{},{}]".parse::<Symbol>().unwrap(), sym(&[], &[]));
        assert!(Symbol::new(vec![1, 1], vec![]).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(degree_bcd(&sym(&[2], &[]), SymbolFamily::B, 2).unwrap(), CycProduct::one());
        assert!(matches!(
            degree_bcd(&sym(&[1], &[]), SymbolFamily::B, 2),
            Err(SymbolError::RankMismatch { .. })
        ));
        assert!(matches!(
            degree_bcd(&sym(&[1], &[1]), SymbolFamily::B, 2),
            Err(SymbolError::ParityMismatch { .. })
        ));
        // degenerate D2 symbol: one of the two characters of degree q·Φ…
        let d = degree_bcd(&sym(&[1], &[1]), SymbolFamily::D, 2).unwrap();
        assert_eq!(identity_check(&sym(&[1], &[1])).unwrap(), 0);
        assert!(d.is_polynomial());
    }
}
