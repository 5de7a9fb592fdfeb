use std::collections::{BTreeSet, HashSet};

use super::field::SmallField;
use super::group::{FiniteGroup, Perm};
use super::GroupError;

/// An invertible matrix over the field with two elements; row `i` is the
/// bitmask of its nonzero columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    pub dim: u8,
    pub rows: [u8; 8],
}

impl F2Matrix {
    pub fn identity(dim: u8) -> Self {
        let mut rows = [0u8; 8];
        for (i, r) in rows.iter_mut().enumerate().take(dim as usize) {
            *r = 1 << i;
        }
        F2Matrix { dim, rows }
    }

    pub fn from_rows(rows: &[u8]) -> Self {
        let mut m = [0u8; 8];
        m[..rows.len()].copy_from_slice(rows);
        F2Matrix {
            dim: rows.len() as u8,
            rows: m,
        }
    }

    /// Image of a column vector given as a bitmask.
    pub fn apply(&self, v: u8) -> u8 {
        let mut out = 0;
        for i in 0..self.dim {
            if (self.rows[i as usize] & v).count_ones() % 2 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        // column j of the product is self applied to column j of other
        let mut rows = [0u8; 8];
        for j in 0..self.dim {
            let col: u8 = (0..self.dim)
                .filter(|&i| other.rows[i as usize] >> j & 1 == 1)
                .fold(0, |acc, i| acc | 1 << i);
            let img = self.apply(col);
            for (i, r) in rows.iter_mut().enumerate().take(self.dim as usize) {
                if img >> i & 1 == 1 {
                    *r |= 1 << j;
                }
            }
        }
        F2Matrix { dim: self.dim, rows }
    }

    pub fn is_invertible(&self) -> bool {
        let n = 1u16 << self.dim;
        let images: HashSet<u8> = (0..n).map(|v| self.apply(v as u8)).collect();
        images.len() == n as usize
    }

    pub fn order(&self) -> u32 {
        let id = F2Matrix::identity(self.dim);
        let mut cur = *self;
        let mut k = 1;
        while cur != id {
            cur = cur.mul(self);
            k += 1;
        }
        k
    }
}

/// All invertible 3×3 matrices over the field with two elements.
pub fn gl3f2() -> Vec<F2Matrix> {
    let mut out = Vec::new();
    for a in 0..8u8 {
        for b in 0..8u8 {
            for c in 0..8u8 {
                let m = F2Matrix::from_rows(&[a, b, c]);
                if m.is_invertible() {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn matrix_closure(gens: &[F2Matrix], dim: u8) -> BTreeSet<F2Matrix> {
    let mut set = BTreeSet::from([F2Matrix::identity(dim)]);
    let mut frontier = vec![F2Matrix::identity(dim)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.mul(&x);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// A subgroup of `GL₃(2)` given by its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSubgroup {
    pub elements: Vec<F2Matrix>,
}

impl MatrixSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn center_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|a| self.elements.iter().all(|b| a.mul(b) == b.mul(a)))
            .count()
    }
}

/// Conjugacy-class representatives of the odd-order subgroups of `GL₃(2)`,
/// sorted by order. Each representative is the lexicographically smallest
/// member of its class.
pub fn odd_subgroups_gl3f2() -> Vec<MatrixSubgroup> {
    let all = gl3f2();
    let odd: Vec<F2Matrix> = all.iter().copied().filter(|m| m.order() % 2 == 1).collect();
    let mut subgroups: BTreeSet<Vec<F2Matrix>> = BTreeSet::new();
    for (i, a) in odd.iter().enumerate() {
        for b in &odd[i..] {
            let h = matrix_closure(&[*a, *b], 3);
            if h.len() % 2 == 1 {
                subgroups.insert(h.into_iter().collect());
            }
        }
    }
    let inverse = |g: &F2Matrix| -> F2Matrix {
        let id = F2Matrix::identity(3);
        *all.iter().find(|h| h.mul(g) == id).unwrap()
    };
    let mut reps: BTreeSet<Vec<F2Matrix>> = BTreeSet::new();
    for h in &subgroups {
        let canonical = all
            .iter()
            .map(|g| {
                let gi = inverse(g);
                let mut conj: Vec<F2Matrix> = h.iter().map(|x| g.mul(x).mul(&gi)).collect();
                conj.sort();
                conj
            })
            .min()
            .unwrap();
        reps.insert(canonical);
    }
    let mut out: Vec<MatrixSubgroup> = reps
        .into_iter()
        .map(|elements| MatrixSubgroup { elements })
        .collect();
    out.sort_by_key(|s| (s.order(), s.elements.clone()));
    out
}

/// `(F₂)^r ⋊ E` acting affinely on the `2^r` vectors: `(v, e)` is
/// `x ↦ e·x + v`, so `(v,e)(w,f) = (v + e·w, ef)`.
pub fn build_semidirect(rank: u8, e: &[F2Matrix]) -> Result<FiniteGroup, GroupError> {
    if rank == 0 || rank > 8 {
        return Err(GroupError::Unsupported(format!("rank {rank}")));
    }
    let eset: HashSet<F2Matrix> = e.iter().copied().collect();
    if e.iter().any(|m| m.dim != rank || !m.is_invertible()) {
        return Err(GroupError::NotAGroup("matrix of wrong size or singular".into()));
    }
    if !eset.contains(&F2Matrix::identity(rank))
        || e.iter().any(|a| e.iter().any(|b| !eset.contains(&a.mul(b))))
    {
        return Err(GroupError::NotAGroup("E is not closed".into()));
    }
    let n = 1usize << rank;
    let mut gens: Vec<Perm> = (0..rank)
        .map(|i| (0..n).map(|x| (x ^ (1 << i)) as u16).collect())
        .collect();
    for m in e {
        gens.push((0..n).map(|x| m.apply(x as u8) as u16).collect());
    }
    let name = format!("2^{rank}:{}", e.len());
    let g = FiniteGroup::generate(&name, n, &gens)?;
    if g.order() != n * eset.len() {
        return Err(GroupError::NotAGroup(format!("order {} != {}", g.order(), n * eset.len())));
    }
    Ok(g)
}

/// The four groups `(C₂)³ ⋊ E` for `|E| ∈ {1, 3, 7, 21}`.
pub fn local_groups() -> Vec<(usize, FiniteGroup)> {
    odd_subgroups_gl3f2()
        .into_iter()
        .map(|e| {
            let g = build_semidirect(3, &e.elements).expect("odd subgroups are groups");
            (e.order(), g)
        })
        .collect()
}

fn field(q: u32) -> Result<SmallField, GroupError> {
    if q > 13 {
        return Err(GroupError::UnsupportedField(q));
    }
    SmallField::new(q)
}

type Mat2 = [u32; 4];

// generators of SL₂(q): diagonal torus, upper unipotents over an additive
// basis, and the Weyl element
fn sl2_generators(f: &SmallField) -> Vec<Mat2> {
    let z = f.primitive_element();
    let zi = f.inv(z).unwrap();
    let m1 = f.neg(1);
    let mut gens = vec![[z, 0, 0, zi], [0, 1, m1, 0]];
    for b in f.additive_basis() {
        gens.push([1, b, 0, 1]);
    }
    gens
}

fn act_on_vectors(f: &SmallField, m: &Mat2) -> Perm {
    let q = f.order();
    (1..q * q)
        .map(|v| {
            let (x, y) = (v % q, v / q);
            let nx = f.add(f.mul(m[0], x), f.mul(m[1], y));
            let ny = f.add(f.mul(m[2], x), f.mul(m[3], y));
            (nx + q * ny - 1) as u16
        })
        .collect()
}

// points of the projective line: (x:1) is x, (1:0) is q
fn act_on_line(f: &SmallField, m: &Mat2) -> Perm {
    let q = f.order();
    (0..=q)
        .map(|pt| {
            let (x, y) = if pt == q { (1, 0) } else { (pt, 1) };
            let nx = f.add(f.mul(m[0], x), f.mul(m[1], y));
            let ny = f.add(f.mul(m[2], x), f.mul(m[3], y));
            if ny == 0 {
                q as u16
            } else {
                f.mul(nx, f.inv(ny).unwrap()) as u16
            }
        })
        .collect()
}

fn checked(g: FiniteGroup, expected: usize) -> Result<FiniteGroup, GroupError> {
    if g.order() == expected {
        Ok(g)
    } else {
        Err(GroupError::NotAGroup(format!("{} has order {}, expected {expected}", g.name(), g.order())))
    }
}

/// `SL₂(q)` acting on the nonzero vectors of `F_q²`.
pub fn build_sl2(q: u32) -> Result<FiniteGroup, GroupError> {
    let f = field(q)?;
    let gens: Vec<Perm> = sl2_generators(&f).iter().map(|m| act_on_vectors(&f, m)).collect();
    let g = FiniteGroup::generate(&format!("SL2({q})"), (q * q - 1) as usize, &gens)?;
    let q = q as usize;
    checked(g, q * (q * q - 1))
}

/// `GL₂(q)` acting on the nonzero vectors of `F_q²`.
pub fn build_gl2(q: u32) -> Result<FiniteGroup, GroupError> {
    let f = field(q)?;
    let mut mats = sl2_generators(&f);
    mats.push([f.primitive_element(), 0, 0, 1]);
    let gens: Vec<Perm> = mats.iter().map(|m| act_on_vectors(&f, m)).collect();
    let g = FiniteGroup::generate(&format!("GL2({q})"), (q * q - 1) as usize, &gens)?;
    let q = q as usize;
    checked(g, (q * q - 1) * (q * q - q))
}

/// `PGL₂(q)` acting on the projective line.
pub fn build_pgl2(q: u32) -> Result<FiniteGroup, GroupError> {
    let f = field(q)?;
    let mut mats = sl2_generators(&f);
    mats.push([f.primitive_element(), 0, 0, 1]);
    let gens: Vec<Perm> = mats.iter().map(|m| act_on_line(&f, m)).collect();
    let g = FiniteGroup::generate(&format!("PGL2({q})"), (q + 1) as usize, &gens)?;
    let q = q as usize;
    checked(g, q * (q * q - 1))
}

/// `PSL₂(q)` acting on the projective line.
pub fn build_psl2(q: u32) -> Result<FiniteGroup, GroupError> {
    let f = field(q)?;
    let gens: Vec<Perm> = sl2_generators(&f).iter().map(|m| act_on_line(&f, m)).collect();
    let g = FiniteGroup::generate(&format!("PSL2({q})"), (q + 1) as usize, &gens)?;
    let q = q as usize;
    checked(g, q * (q * q - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3f2_has_order_168() {
        let g = gl3f2();
        assert_eq!(g.len(), 168);
        let orders: BTreeSet<u32> = g.iter().map(|m| m.order()).collect();
        assert_eq!(orders, BTreeSet::from([1, 2, 3, 4, 7]));
    }

    #[test]
    fn odd_subgroup_classes() {
        let reps = odd_subgroups_gl3f2();
        let orders: Vec<usize> = reps.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 3, 7, 21]);
        let frobenius = &reps[3];
        assert!(!frobenius.is_abelian());
        assert_eq!(frobenius.center_order(), 1);
    }

    #[test]
    fn semidirect_orders() {
        let groups = local_groups();
        let orders: Vec<(usize, usize)> = groups.iter().map(|(e, g)| (*e, g.order())).collect();
        assert_eq!(orders, vec![(1, 8), (3, 24), (7, 56), (21, 168)]);
        assert!(groups[0].1.is_abelian());
        // with |E| = 3 the group is C₂ × A₄: its center has order 2
        assert_eq!(groups[1].1.center().len(), 2);
        for (_, g) in &groups {
            assert!(g.check_axioms(100));
        }
    }

    #[test]
    fn semidirect_rejects_non_groups() {
        let m = F2Matrix::from_rows(&[0b010, 0b100, 0b001]);
        assert!(build_semidirect(3, &[F2Matrix::identity(3), m]).is_err());
    }

    #[test]
    fn matrix_group_orders() {
        assert_eq!(build_sl2(3).unwrap().order(), 24);
        assert_eq!(build_sl2(9).unwrap().order(), 720);
        assert_eq!(build_pgl2(5).unwrap().order(), 120);
        assert_eq!(build_psl2(5).unwrap().order(), 60);
        assert_eq!(build_gl2(3).unwrap().order(), 48);
        assert_eq!(build_gl2(9).unwrap().order(), 5760);
        assert!(build_sl2(4).is_err());
        assert!(build_sl2(17).is_err());
    }
}
