//! Signed bijections `ZIrr(G) → ZIrr(H)` extending a given isometry of the
//! `L⁰` lattices, and Broué's perfectness conditions for them.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lzero::GenCharLattice;
use crate::smallgroups::{CharacterTable, CyclotomicInteger};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsometryError {
    #[error("tables have {0} and {1} irreducibles")]
    SizeMismatch(usize, usize),
    #[error("partial map gives {got} images for a basis of rank {rank}")]
    PartialShape { got: usize, rank: usize },
    #[error("partial map does not preserve the Gram matrix")]
    NotIsometric,
    #[error("no extension: {0}")]
    NoExtension(String),
}

/// `χ_i ↦ signs[i]·η_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryCandidate {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
}

impl IsometryCandidate {
    pub fn identity(n: usize) -> Self {
        IsometryCandidate {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Image of a vector in source Irr coordinates.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for (i, &c) in v.iter().enumerate() {
            out[self.perm[i]] += self.signs[i] * c;
        }
        out
    }

    /// One-line notation with signs, 1-based: `[+1 -3 +2]`.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(p, s)| format!("{}{}", if *s > 0 { '+' } else { '-' }, p + 1))
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All signed bijections that restrict to `partial` on `src`'s L⁰ basis,
/// degree-preserving and positive choices first.
pub fn extend_isometry_all(
    src: &GenCharLattice,
    tgt: &GenCharLattice,
    partial: &[Vec<i64>],
) -> Result<Vec<IsometryCandidate>, IsometryError> {
    let n = src.dim();
    if n != tgt.dim() {
        return Err(IsometryError::SizeMismatch(n, tgt.dim()));
    }
    let basis = src.basis_rows();
    if partial.len() != basis.len() || partial.iter().any(|v| v.len() != n) {
        return Err(IsometryError::PartialShape {
            got: partial.len(),
            rank: basis.len(),
        });
    }
    for (a, pa) in basis.iter().zip(partial) {
        for (b, pb) in basis.iter().zip(partial) {
            if dot(a, b) != dot(pa, pb) {
                return Err(IsometryError::NotIsometric);
            }
        }
    }
    if !partial.iter().all(|v| tgt.contains(v)) || !tgt.spanned_by(partial) {
        return Err(IsometryError::NoExtension("partial map is not onto the target L0".into()));
    }
    let src_deg = src.table.degrees();
    let tgt_deg = tgt.table.degrees();
    // allowed (j, δ) per source label: every basis row is carried correctly
    let allowed: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| {
            let mut opts: Vec<(usize, i64)> = (0..n)
                .flat_map(|j| [(j, 1), (j, -1)])
                .filter(|&(j, d)| basis.iter().zip(partial).all(|(b, pb)| pb[j] == d * b[i]))
                .collect();
            opts.sort_by_key(|&(j, d)| (src_deg[i] != tgt_deg[j], j != i, d < 0, j));
            opts
        })
        .collect();
    if let Some(i) = allowed.iter().position(|o| o.is_empty()) {
        return Err(IsometryError::NoExtension(format!("no admissible image for label {}", i + 1)));
    }
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    let mut used = vec![false; n];
    collect(&allowed, &mut perm, &mut signs, &mut used, &mut out);
    // the per-label constraints are sufficient only jointly over supports
    out.retain(|c| basis.iter().zip(partial).all(|(b, pb)| &c.apply(b) == pb));
    if out.is_empty() {
        return Err(IsometryError::NoExtension("labels cannot be matched bijectively".into()));
    }
    Ok(out)
}

fn collect(
    allowed: &[Vec<(usize, i64)>],
    perm: &mut Vec<usize>,
    signs: &mut Vec<i64>,
    used: &mut Vec<bool>,
    out: &mut Vec<IsometryCandidate>,
) {
    let i = perm.len();
    if i == allowed.len() {
        out.push(IsometryCandidate {
            perm: perm.clone(),
            signs: signs.clone(),
        });
        return;
    }
    for &(j, d) in &allowed[i] {
        if used[j] {
            continue;
        }
        used[j] = true;
        perm.push(j);
        signs.push(d);
        collect(allowed, perm, signs, used, out);
        perm.pop();
        signs.pop();
        used[j] = false;
    }
}

/// First extension of `partial` that is a perfect isometry.
pub fn extend_isometry(
    src: &GenCharLattice,
    tgt: &GenCharLattice,
    partial: &[Vec<i64>],
) -> Result<(IsometryCandidate, PerfectReport), IsometryError> {
    let all = extend_isometry_all(src, tgt, partial)?;
    let count = all.len();
    for c in all {
        let report = check_perfect(&src.table, &tgt.table, &c);
        if report.passes() {
            return Ok((c, report));
        }
    }
    Err(IsometryError::NoExtension(format!("none of {count} extensions is perfect")))
}

/// `μ(g, h) = Σ_i δ_i χ_i(g) conj(η_{σ(i)}(h))` over pairs of classes.
#[derive(Clone, Debug)]
pub struct BicharacterTable {
    pub values: Vec<Vec<CyclotomicInteger>>,
}

fn lift_row(row: &[CyclotomicInteger], m: u32) -> Vec<CyclotomicInteger> {
    row.iter().map(|v| v.lift(m)).collect()
}

pub fn bicharacter(src: &CharacterTable, tgt: &CharacterTable, c: &IsometryCandidate) -> BicharacterTable {
    let m = src.conductor.lcm(&tgt.conductor);
    let s: Vec<Vec<CyclotomicInteger>> = src.chars.iter().map(|r| lift_row(r, m)).collect();
    let t: Vec<Vec<CyclotomicInteger>> = tgt.chars.iter().map(|r| lift_row(r, m)).collect();
    let values = (0..src.classes.len())
        .map(|g| {
            (0..tgt.classes.len())
                .map(|h| {
                    let mut acc = CyclotomicInteger::zero(m);
                    for (i, row) in s.iter().enumerate() {
                        let term = &row[g] * &t[c.perm[i]][h].conj();
                        acc = &acc + &(&term * c.signs[i]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    BicharacterTable { values }
}

/// Failing class pairs for each perfectness condition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectReport {
    pub integrality_failures: Vec<(usize, usize)>,
    pub separation_failures: Vec<(usize, usize)>,
    pub pairs_checked: usize,
}

impl PerfectReport {
    pub fn passes(&self) -> bool {
        self.integrality_failures.is_empty() && self.separation_failures.is_empty()
    }
}

pub fn check_perfect(src: &CharacterTable, tgt: &CharacterTable, c: &IsometryCandidate) -> PerfectReport {
    let mu = bicharacter(src, tgt, c);
    let mut report = PerfectReport::default();
    for (g, row) in mu.values.iter().enumerate() {
        for (h, v) in row.iter().enumerate() {
            report.pairs_checked += 1;
            let cg = src.centralizer_order(g) as i64;
            let ch = tgt.centralizer_order(h) as i64;
            if !v.divisible_by(cg) || !v.divisible_by(ch) {
                report.integrality_failures.push((g, h));
            }
            if src.classes[g].regular != tgt.classes[h].regular && !v.is_zero() {
                report.separation_failures.push((g, h));
            }
        }
    }
    report
}

/// The induced map preserves all pairings of irreducibles, computed in the
/// target table.
pub fn preserves_gram(tgt: &CharacterTable, c: &IsometryCandidate) -> bool {
    let n = c.perm.len();
    let images: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            c.apply(&e)
        })
        .collect();
    let funcs: Vec<Vec<CyclotomicInteger>> = images.iter().map(|v| tgt.combination(v)).collect();
    (0..n).all(|i| (0..n).all(|j| tgt.inner_product(&funcs[i], &funcs[j]) == Some(i64::from(i == j))))
}

/// Self-pairing cases: the identity, negation and (for `|E| = 21`) the
/// cyclic rotation of the three norm-4 basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartialMap {
    Identity,
    Negation,
    RotateNorm4,
}

/// Images of the L⁰ basis rows under a standard partial map.
pub fn standard_partial(l: &GenCharLattice, kind: PartialMap) -> Option<Vec<Vec<i64>>> {
    let basis = l.basis_rows();
    match kind {
        PartialMap::Identity => Some(basis),
        PartialMap::Negation => Some(basis.iter().map(|r| r.iter().map(|x| -x).collect()).collect()),
        PartialMap::RotateNorm4 => {
            let w = crate::lzero::match_basis_shape(l, crate::lzero::BasisShape::E21)?;
            // express each basis row in the witness basis, then rotate
            let v = &w.vectors;
            let rotated = [v[1].clone(), v[2].clone(), v[0].clone()];
            basis
                .iter()
                .map(|b| {
                    let coords = solve3(v, b)?;
                    Some((0..b.len()).map(|k| (0..3).map(|t| coords[t] * rotated[t][k]).sum()).collect())
                })
                .collect()
        }
    }
}

// integer coordinates of b in the span of three independent vectors
fn solve3(v: &[Vec<i64>], b: &[i64]) -> Option<[i64; 3]> {
    let span = 3i64;
    for a in -span..=span {
        for c in -span..=span {
            for d in -span..=span {
                if (0..b.len()).all(|k| a * v[0][k] + c * v[1][k] + d * v[2][k] == b[k]) {
                    return Some([a, c, d]);
                }
            }
        }
    }
    None
}
