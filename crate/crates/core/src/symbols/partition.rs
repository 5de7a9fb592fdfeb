use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SymbolError;
use crate::exactmath::CycProduct;

/// A partition, stored with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts and drops zeros, so `(1,2)` and `(2,1,0)` both
    /// become `(2,1)`.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook lengths of the Young diagram, largest first.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// First-column hook lengths `{λ_i + k - i}` padded to `k` entries:
    /// the beta-set used to build symbols.
    pub fn beta_set(&self, k: usize) -> Vec<u32> {
        assert!(k >= self.parts.len());
        (0..k)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + (k - 1 - i) as u32)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, SymbolError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| SymbolError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::new(Vec::new()));
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SymbolError::Parse(s.to_string()))?;
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `r'`-part of the unipotent degree labelled by `p` in type `A_{n-1}`
/// (or `²A_{n-1}` when `twisted`): `∏_{i≤n}(q^i-1) / ∏_h (q^h-1)`,
/// mirrored under `q ↦ -q` in the twisted case.
pub fn degree_type_a(p: &Partition, twisted: bool) -> Result<CycProduct, SymbolError> {
    let mut num = CycProduct::one();
    for i in 1..=p.size() {
        num = num * CycProduct::q_n_minus_one(i);
    }
    let mut den = CycProduct::one();
    for h in p.hooks() {
        den = den * CycProduct::q_n_minus_one(h);
    }
    let deg = &num / &den;
    let deg = if twisted { deg.mirror() } else { deg };
    if !deg.is_polynomial() {
        return Err(SymbolError::NonCancelling(format!("{p}: {deg}")));
    }
    Ok(deg)
}

/// 2-defect of the unipotent character `χ^p`:
/// `v₂(∏_h (q^h-1)) - v₂(q-1)`, or with `(-q)^h - 1` and `q+1` when twisted.
pub fn defect_type_a(p: &Partition, q: i64, twisted: bool) -> Result<i64, SymbolError> {
    let mut hooks = CycProduct::one();
    for h in p.hooks() {
        hooks = hooks * CycProduct::q_n_minus_one(h);
    }
    let base = CycProduct::q_n_minus_one(1);
    let (hooks, base) = if twisted {
        (hooks.mirror(), base.mirror())
    } else {
        (hooks, base)
    };
    Ok(hooks.v2_at(q)? - base.v2_at(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liedata::{order_rprime, LieSeries};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    // oracle: hook length at (i,j) counted cell by cell
    fn hooks_by_cells(part: &Partition) -> Vec<u32> {
        let rows = part.parts();
        let mut out = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..r {
                let arm = (j + 1..r).count() as u32;
                let leg = rows[i + 1..].iter().filter(|&&x| x > j).count() as u32;
                out.push(arm + leg + 1);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn hook_examples() {
        assert_eq!(p(&[2, 1]).hooks(), vec![3, 1, 1]);
        assert_eq!(p(&[3]).hooks(), vec![3, 2, 1]);
        assert_eq!(p(&[1, 1]).hooks(), vec![2, 1]);
        assert_eq!(p(&[2, 2]).hooks(), vec![3, 2, 2, 1]);
        for n in 0..=9 {
            for part in partitions(n) {
                assert_eq!(part.hooks(), hooks_by_cells(&part));
                assert_eq!(part.hooks().len() as u32, n);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn labels_are_canonicalized() {
        assert_eq!("(1,2)".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
        assert!("2,1".parse::<Partition>().is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_type_a(&p(&[2, 1]), false).unwrap().to_string(), "F2");
        assert_eq!(degree_type_a(&p(&[3]), false).unwrap(), CycProduct::one());
        assert_eq!(degree_type_a(&p(&[2, 1]), true).unwrap().to_string(), "F1");
        assert_eq!(
            degree_type_a(&p(&[1, 1, 1]), false).unwrap(),
            degree_type_a(&p(&[3]), false).unwrap()
        );
    }

    #[test]
    fn degree_times_hooks_is_group_order() {
        for n in 2..=9u32 {
            let order = order_rprime(LieSeries::of(&format!("A{}", n - 1)));
            for part in partitions(n) {
                let mut hooks = CycProduct::one();
                for h in part.hooks() {
                    hooks = hooks * CycProduct::q_n_minus_one(h);
                }
                let lhs = degree_type_a(&part, false).unwrap() * hooks;
                assert_eq!(lhs, CycProduct::q_n_minus_one(1) * order.clone(), "{part}");
            }
        }
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect_type_a(&p(&[2, 1]), 3, false).unwrap(), 2);
        assert_eq!(defect_type_a(&p(&[2]), 3, false).unwrap(), 3);
        assert_eq!(defect_type_a(&p(&[2, 2]), 3, false).unwrap(), 7);
    }

    #[test]
    fn defect_matches_order_over_degree() {
        for n in 2..=7u32 {
            for twisted in [false, true] {
                let name = format!("{}A{}", if twisted { "2" } else { "" }, n - 1);
                let Ok(series) = name.parse::<LieSeries>() else { continue };
                let order = order_rprime(series);
                for part in partitions(n) {
                    let deg = degree_type_a(&part, twisted).unwrap();
                    for q in [3i64, 5, 7, 9] {
                        let direct = order.v2_at(q).unwrap() - deg.v2_at(q).unwrap();
                        assert_eq!(defect_type_a(&part, q, twisted).unwrap(), direct);
                    }
                }
            }
        }
    }
}
