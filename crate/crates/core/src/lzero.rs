//! Generalized characters vanishing on 2-regular classes, basis shapes of
//! the local lattices, the norm-8 support lemma and the Landrock table.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{hermite_kernel, hnf_basis, IntegerMatrix};
use crate::smallgroups::CharacterTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LzeroError {
    #[error("inertial order {0} is not one of 1, 3, 7, 21")]
    InertialOrder(u32),
    #[error("k - l = {0} does not occur")]
    Difference(u32),
    #[error("vector has {got} coordinates, expected {expected}")]
    Length { got: usize, expected: usize },
}

/// `L⁰(G)` as a sublattice of `Z Irr(G)`.
#[derive(Clone, Debug)]
pub struct GenCharLattice {
    pub table: Arc<CharacterTable>,
    /// HNF rows in Irr coordinates.
    pub basis: IntegerMatrix,
    // one column per (regular class, power-basis coordinate)
    constraints: Vec<Vec<i64>>,
}

/// Kernel of restriction to 2-regular classes.
pub fn compute_lzero(table: &Arc<CharacterTable>) -> GenCharLattice {
    let regular = table.regular_classes();
    let rows: Vec<Vec<i64>> = table
        .chars
        .iter()
        .map(|row| regular.iter().flat_map(|&j| row[j].coeffs().to_vec()).collect())
        .collect();
    let width = rows[0].len();
    let a = IntegerMatrix::from_rows(width, &rows);
    let basis = hermite_kernel(&a);
    GenCharLattice {
        table: table.clone(),
        basis,
        constraints: rows,
    }
}

impl GenCharLattice {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.table.chars.len()
    }

    pub fn basis_rows(&self) -> Vec<Vec<i64>> {
        self.basis.to_i64_rows()
    }

    /// Exact membership: `v` restricts to zero on every 2-regular class.
    pub fn contains(&self, v: &[i64]) -> bool {
        let width = self.constraints[0].len();
        (0..width).all(|c| v.iter().zip(&self.constraints).map(|(x, row)| x * row[c]).sum::<i64>() == 0)
    }

    /// Each basis row, as a class function, vanishes on all 2-regular classes.
    pub fn vanishes_on_regular(&self) -> bool {
        self.basis_rows().iter().all(|row| {
            let f = self.table.combination(row);
            self.table.regular_classes().iter().all(|&j| f[j].is_zero())
        })
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let rows = self.basis_rows();
        rows.iter()
            .map(|a| rows.iter().map(|b| dot(a, b)).collect())
            .collect()
    }

    /// Same lattice as the one spanned by `vectors`.
    pub fn spanned_by(&self, vectors: &[Vec<i64>]) -> bool {
        if vectors.is_empty() {
            return self.rank() == 0;
        }
        hnf_basis(&IntegerMatrix::from_rows(self.dim(), vectors)) == self.basis
    }

    /// All lattice vectors of norm `n ≤ 8`; coordinates then lie in `[-2, 2]`.
    pub fn vectors_of_norm(&self, n: i64) -> Vec<Vec<i64>> {
        assert!(n <= 8);
        let mut out = Vec::new();
        let mut v = vec![0i64; self.dim()];
        fn rec(l: &GenCharLattice, v: &mut Vec<i64>, i: usize, left: i64, out: &mut Vec<Vec<i64>>) {
            if i == v.len() {
                if left == 0 && l.contains(v) {
                    out.push(v.clone());
                }
                return;
            }
            for c in -2i64..=2 {
                if c * c <= left {
                    v[i] = c;
                    rec(l, v, i + 1, left - c * c, out);
                }
            }
            v[i] = 0;
        }
        rec(self, &mut v, 0, n, &mut out);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = self.basis_rows();
        serde_json::json!({
            "group": self.table.group,
            "rank": self.rank(),
            "basis": rows,
            "values": rows.iter().map(|r| {
                self.table.combination(r).iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(1/|G|) Σ_g u(g)·conj(v(g))` for generalized characters in Irr coordinates.
pub fn inner_product(t: &CharacterTable, u: &[i64], v: &[i64]) -> Rational64 {
    let s = t.scaled_inner(&t.combination(u), &t.combination(v));
    let s = s.as_integer().expect("pairing of generalized characters is rational");
    Rational64::new(s, t.order as i64)
}

/// The three basis shapes of the local lattices, named by `|E|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisShape {
    E3,
    E7,
    E21,
}

impl BasisShape {
    /// Template vectors over labels `χ1..χ8` (0-based here).
    pub fn template(self) -> Vec<Vec<i64>> {
        let v = |pairs: &[(usize, i64)]| {
            let mut out = vec![0i64; 8];
            for &(i, c) in pairs {
                out[i - 1] = c;
            }
            out
        };
        match self {
            BasisShape::E3 => vec![
                v(&[(1, 1), (4, -1)]),
                v(&[(2, 1), (5, -1)]),
                v(&[(3, 1), (6, -1)]),
                v(&[(7, 1), (8, -1)]),
                v(&[(1, 1), (2, 1), (3, 1), (7, -1)]),
            ],
            BasisShape::E7 => vec![v(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, -1)])],
            BasisShape::E21 => vec![
                v(&[(6, 1), (4, -1), (5, -1), (1, -1)]),
                v(&[(7, 1), (4, -1), (5, -1), (2, -1)]),
                v(&[(8, 1), (4, -1), (5, -1), (3, -1)]),
            ],
        }
    }

    pub fn for_inertial_order(e: u32) -> Option<Self> {
        match e {
            3 => Some(BasisShape::E3),
            7 => Some(BasisShape::E7),
            21 => Some(BasisShape::E21),
            _ => None,
        }
    }

    pub fn gram(self) -> Vec<Vec<i64>> {
        let t = self.template();
        t.iter().map(|a| t.iter().map(|b| dot(a, b)).collect()).collect()
    }
}

/// A relabeling `χ_i ↦ signs[i]·χ_{perm[i]}` carrying the template into `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeWitness {
    pub shape: BasisShape,
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub vectors: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
}

fn apply_relabel(perm: &[usize], signs: &[i64], t: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; t.len()];
    for (i, &c) in t.iter().enumerate() {
        out[perm[i]] = signs[i] * c;
    }
    out
}

/// Search for a signed relabeling exhibiting `shape` as a basis of `l`.
pub fn match_basis_shape(l: &GenCharLattice, shape: BasisShape) -> Option<ShapeWitness> {
    let template = shape.template();
    if l.dim() != 8 || l.rank() != template.len() {
        return None;
    }
    let norms: BTreeSet<i64> = template.iter().map(|t| dot(t, t)).collect();
    let candidates: Vec<(i64, Vec<Vec<i64>>)> = norms.iter().map(|&n| (n, l.vectors_of_norm(n))).collect();
    let mut perm = vec![usize::MAX; 8];
    let mut signs = vec![0i64; 8];
    let mut found = None;
    search(l, &template, &candidates, 0, &mut perm, &mut signs, &mut found);
    let (perm, signs) = found?;
    let vectors: Vec<Vec<i64>> = template.iter().map(|t| apply_relabel(&perm, &signs, t)).collect();
    let gram = vectors.iter().map(|a| vectors.iter().map(|b| dot(a, b)).collect()).collect();
    Some(ShapeWitness {
        shape,
        perm,
        signs,
        vectors,
        gram,
    })
}

fn search(
    l: &GenCharLattice,
    template: &[Vec<i64>],
    candidates: &[(i64, Vec<Vec<i64>>)],
    k: usize,
    perm: &mut Vec<usize>,
    signs: &mut Vec<i64>,
    found: &mut Option<(Vec<usize>, Vec<i64>)>,
) {
    if found.is_some() {
        return;
    }
    if k == template.len() {
        // complete the bijection on unused labels
        let mut p = perm.clone();
        let mut s = signs.clone();
        let used: BTreeSet<usize> = p.iter().copied().filter(|&x| x != usize::MAX).collect();
        let mut free = (0..8).filter(|x| !used.contains(x));
        for i in 0..8 {
            if p[i] == usize::MAX {
                p[i] = free.next().unwrap();
                s[i] = 1;
            }
        }
        let vectors: Vec<Vec<i64>> = template.iter().map(|t| apply_relabel(&p, &s, t)).collect();
        if l.spanned_by(&vectors) {
            *found = Some((p, s));
        }
        return;
    }
    let t = &template[k];
    let n = dot(t, t);
    let pool = &candidates.iter().find(|(m, _)| *m == n).unwrap().1;
    let support: Vec<usize> = (0..8).filter(|&i| t[i] != 0).collect();
    for w in pool {
        if w.iter().filter(|&&c| c != 0).count() != support.len() {
            continue;
        }
        let (saved_p, saved_s) = (perm.clone(), signs.clone());
        let mut ok = true;
        let mut targets_used: BTreeSet<usize> = perm.iter().copied().filter(|&x| x != usize::MAX).collect();
        // fixed labels must land where they already point
        for &i in &support {
            if perm[i] != usize::MAX {
                if w[perm[i]] != signs[i] * t[i] {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let mut assignments = Vec::new();
            let free_labels: Vec<usize> = support.iter().copied().filter(|&i| perm[i] == usize::MAX).collect();
            let free_targets: Vec<usize> = (0..8)
                .filter(|&j| w[j] != 0 && !support.iter().any(|&i| perm[i] == j))
                .collect();
            if free_labels.len() == free_targets.len() && free_targets.iter().all(|j| !targets_used.contains(j)) {
                assign_all(t, w, &free_labels, &free_targets, &mut vec![false; free_targets.len()], &mut Vec::new(), &mut assignments);
            }
            for a in assignments {
                for (&i, &(j, s)) in free_labels.iter().zip(&a) {
                    perm[i] = j;
                    signs[i] = s;
                    targets_used.insert(j);
                }
                search(l, template, candidates, k + 1, perm, signs, found);
                perm.clone_from(&saved_p);
                signs.clone_from(&saved_s);
                if found.is_some() {
                    return;
                }
            }
        }
        perm.clone_from(&saved_p);
        signs.clone_from(&saved_s);
    }
}

// ways to send each free label i to a distinct free target j with w[j] = ±t[i]
fn assign_all(
    t: &[i64],
    w: &[i64],
    labels: &[usize],
    targets: &[usize],
    used: &mut Vec<bool>,
    cur: &mut Vec<(usize, i64)>,
    out: &mut Vec<Vec<(usize, i64)>>,
) {
    if cur.len() == labels.len() {
        out.push(cur.clone());
        return;
    }
    let i = labels[cur.len()];
    for (slot, &j) in targets.iter().enumerate() {
        if used[slot] || w[j].abs() != t[i].abs() {
            continue;
        }
        used[slot] = true;
        cur.push((j, w[j] / t[i]));
        assign_all(t, w, labels, targets, used, cur, out);
        cur.pop();
        used[slot] = false;
    }
}

/// With the labeling of an E3 witness, the sums `χi + χ(i+3) + χ7 + χ8`
/// (`i = 1, 2, 3`) vanish on 2-singular classes and are orthogonal to `L`.
pub fn projective_sums_vanish(l: &GenCharLattice, w: &ShapeWitness) -> bool {
    if w.shape != BasisShape::E3 {
        return false;
    }
    let singular: Vec<usize> = (0..l.table.classes.len()).filter(|&j| !l.table.classes[j].regular).collect();
    (1..=3).all(|i| {
        let mut v = vec![0i64; 8];
        for label in [i, i + 3, 7, 8] {
            v[w.perm[label - 1]] += 1;
        }
        let f = l.table.combination(&v);
        singular.iter().all(|&j| f[j].is_zero()) && l.basis_rows().iter().all(|b| dot(b, &v) == 0)
    })
}

/// Magnitude shapes (sorted descending) of integer vectors with `Σ c² = 8`
/// and at most `max_support` nonzero entries.
pub fn norm8_supports(max_support: usize) -> Vec<Vec<i64>> {
    fn rec(left: i64, max_part: i64, cur: &mut Vec<i64>, max_len: usize, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for c in (1..=max_part).rev() {
            if c * c <= left {
                cur.push(c);
                rec(left - c * c, c, cur, max_len, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(8, 2, &mut Vec::new(), max_support, &mut out);
    out
}

/// Summary of the norm-8 lemma: support sizes occurring, and the unique
/// support-5 shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Norm8Summary {
    pub shapes: Vec<Vec<i64>>,
    pub supports: BTreeSet<usize>,
    pub support5: Vec<Vec<i64>>,
}

impl Norm8Summary {
    pub fn holds(&self) -> bool {
        self.supports == BTreeSet::from([2, 5, 8]) && self.support5 == vec![vec![2, 1, 1, 1, 1]]
    }
}

pub fn norm8_summary(max_support: usize) -> Norm8Summary {
    let shapes = norm8_supports(max_support);
    let supports = shapes.iter().map(|s| s.len()).collect();
    let support5 = shapes.iter().filter(|s| s.len() == 5).cloned().collect();
    Norm8Summary {
        shapes,
        supports,
        support5,
    }
}

/// Pairs `(k(B), ℓ(B))` allowed for a given inertial quotient order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandrockCase {
    pub inertial_order: u32,
    pub allowed_pairs: Vec<(u32, u32)>,
    pub difference: u32,
}

pub fn landrock_lookup(inertial_order: u32) -> Result<LandrockCase, LzeroError> {
    let (allowed_pairs, difference) = match inertial_order {
        1 => (vec![(8, 1)], 7),
        3 => (vec![(8, 3)], 5),
        7 => (vec![(5, 4), (8, 7)], 1),
        21 => (vec![(7, 4), (8, 5)], 3),
        e => return Err(LzeroError::InertialOrder(e)),
    };
    Ok(LandrockCase {
        inertial_order,
        allowed_pairs,
        difference,
    })
}

pub fn inertial_from_difference(k_minus_l: u32) -> Result<u32, LzeroError> {
    match k_minus_l {
        7 => Ok(1),
        5 => Ok(3),
        1 => Ok(7),
        3 => Ok(21),
        d => Err(LzeroError::Difference(d)),
    }
}

/// Convert an `i64` vector for lattice routines.
pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallgroups::{character_table, local_groups};

    fn lattices() -> Vec<(usize, GenCharLattice)> {
        local_groups()
            .iter()
            .map(|(e, g)| (*e, compute_lzero(&Arc::new(character_table(g).unwrap()))))
            .collect()
    }

    #[test]
    fn ranks_and_shapes() {
        let ls = lattices();
        let ranks: Vec<usize> = ls.iter().map(|(_, l)| l.rank()).collect();
        assert_eq!(ranks, vec![7, 5, 1, 3]);
        for (e, l) in &ls {
            assert!(l.vanishes_on_regular());
            let regular = l.table.regular_classes().len();
            assert_eq!(l.rank(), 8 - regular);
            assert_eq!(l.rank() as u32, landrock_lookup(*e as u32).unwrap().difference);
            if let Some(shape) = BasisShape::for_inertial_order(*e as u32) {
                let w = match_basis_shape(l, shape).expect("shape witness");
                assert_eq!(w.gram, shape.gram());
                assert!(w.vectors.iter().all(|v| l.contains(v)));
                if shape == BasisShape::E3 {
                    assert!(projective_sums_vanish(l, &w));
                }
            }
        }
        // shapes are specific to their groups
        assert!(match_basis_shape(&ls[3].1, BasisShape::E3).is_none());
        assert!(match_basis_shape(&ls[2].1, BasisShape::E21).is_none());
    }

    #[test]
    fn template_grams() {
        let g = BasisShape::E3.gram();
        assert_eq!(g[4], vec![1, 1, 1, -1, 4]);
        assert_eq!(BasisShape::E7.gram(), vec![vec![8]]);
        assert_eq!(BasisShape::E21.gram(), vec![vec![4, 2, 2], vec![2, 4, 2], vec![2, 2, 4]]);
    }

    #[test]
    fn inner_products() {
        let ls = lattices();
        let (_, l7) = &ls[2];
        let v = vec![1, 1, 1, 1, 1, 1, 1, -1];
        assert_eq!(inner_product(&l7.table, &v, &v), Rational64::from_integer(8));
        assert!(l7.contains(&v));
        let e1 = [1, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(inner_product(&l7.table, &e1, &e1), Rational64::from_integer(1));
    }

    // oracle: all signed vectors in [-3,3]^8 of norm 8, by support size
    #[test]
    fn norm8_matches_brute_force() {
        let mut supports = BTreeSet::new();
        let mut five = BTreeSet::new();
        let mut v = [0i64; 8];
        for code in 0..7i64.pow(8) {
            let mut c = code;
            for x in v.iter_mut() {
                *x = c % 7 - 3;
                c /= 7;
            }
            if v.iter().map(|x| x * x).sum::<i64>() == 8 {
                let mut mags: Vec<i64> = v.iter().filter(|&&x| x != 0).map(|x| x.abs()).collect();
                supports.insert(mags.len());
                mags.sort_unstable_by(|a, b| b.cmp(a));
                if mags.len() == 5 {
                    five.insert(mags);
                }
            }
        }
        let s = norm8_summary(8);
        assert_eq!(s.supports, supports);
        assert_eq!(s.support5.into_iter().collect::<BTreeSet<_>>(), five);
        assert!(norm8_summary(8).holds());
        assert!(norm8_supports(4).iter().all(|s| s.len() == 2));
        assert_eq!(norm8_supports(7).len(), 2);
    }

    #[test]
    fn landrock_is_bijective() {
        for e in [1, 3, 7, 21] {
            let case = landrock_lookup(e).unwrap();
            assert!(case.allowed_pairs.iter().all(|(k, l)| k - l == case.difference));
            assert_eq!(inertial_from_difference(case.difference).unwrap(), e);
        }
        assert_eq!(landrock_lookup(21).unwrap().allowed_pairs, vec![(7, 4), (8, 5)]);
        assert!(inertial_from_difference(2).is_err());
        assert!(landrock_lookup(9).is_err());
    }
}
