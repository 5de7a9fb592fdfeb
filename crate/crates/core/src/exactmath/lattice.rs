//! Integer matrices: Hermite and Smith normal forms, integer kernels, and
//! lattice membership.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from rows of machine integers; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_big_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            entries.extend(row);
        }
        IntegerMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    /// Rows converted to `i64`; panics when an entry does not fit.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().expect("entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * &self[(i, j)];
            }
        }
        out
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    // row[dst] -= factor * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] -= v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * factor;
            self.entries[i * self.cols + dst] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.entries[i * self.cols + j];
            self.entries[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self.entries[i * self.cols + j];
            self.entries[i * self.cols + j] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    /// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U`
    /// unimodular, `H` in row echelon form with positive pivots and the
    /// entries above each pivot reduced into `[0, pivot)`.
    pub fn hermite_normal_form(&self) -> (IntegerMatrix, IntegerMatrix) {
        let mut h = self.clone();
        let mut u = IntegerMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            loop {
                // smallest nonzero entry at or below pivot_row
                let best = (pivot_row..self.rows)
                    .filter(|&i| !h[(i, col)].is_zero())
                    .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
                let Some(best) = best else { break };
                h.swap_rows(pivot_row, best);
                u.swap_rows(pivot_row, best);
                let mut done = true;
                for i in pivot_row + 1..self.rows {
                    if h[(i, col)].is_zero() {
                        continue;
                    }
                    let f = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                    h.row_axpy(i, pivot_row, &f);
                    u.row_axpy(i, pivot_row, &f);
                    if !h[(i, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(pivot_row, col)].is_zero() {
                continue;
            }
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            for i in 0..pivot_row {
                let f = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.row_axpy(i, pivot_row, &f);
                u.row_axpy(i, pivot_row, &f);
            }
            pivot_row += 1;
        }
        (h, u)
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.hermite_normal_form();
        (0..h.rows).filter(|&i| !h.is_zero_row(i)).count()
    }

    /// Smith normal form: `(S, U, V)` with `U·A·V = S` diagonal, nonnegative,
    /// and each diagonal entry dividing the next.
    pub fn smith_normal_form(&self) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
        let mut s = self.clone();
        let mut u = IntegerMatrix::identity(self.rows);
        let mut v = IntegerMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // pivot: smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..self.rows {
                let f = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_axpy(i, t, &f);
                u.row_axpy(i, t, &f);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..self.cols {
                let f = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_axpy(j, t, &f);
                v.col_axpy(j, t, &f);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..self.rows)
                .flat_map(|i| (t + 1..self.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&s[(i, j)] % &s[(t, t)]).is_zero());
            if let Some((i, _)) = bad {
                // fold row i into row t and redo this pivot
                let one = -BigInt::one();
                s.row_axpy(t, i, &one);
                u.row_axpy(t, i, &one);
                continue;
            }
            if s[(t, t)].is_negative() {
                s.negate_col(t);
                v.negate_col(t);
            }
            t += 1;
        }
        (s, u, v)
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Basis of the left integer kernel `{x : x·A = 0}`, as HNF-canonical rows.
pub fn hermite_kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let (h, u) = a.hermite_normal_form();
    let kernel_rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row_vec(i))
        .collect();
    let k = IntegerMatrix::from_big_rows(a.rows(), kernel_rows);
    hnf_basis(&k)
}

/// Canonical basis (nonzero HNF rows) of the lattice spanned by the rows.
pub fn hnf_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let (h, _) = m.hermite_normal_form();
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| !h.is_zero_row(i))
        .map(|i| h.row_vec(i))
        .collect();
    IntegerMatrix::from_big_rows(m.cols(), rows)
}

/// Coordinates of `v` in an HNF basis, or `None` when `v` is not in the lattice.
pub fn lattice_coordinates(basis: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.cols(), v.len());
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let pivot = row.iter().position(|x| !x.is_zero())?;
        // entries before the pivot must already be cleared
        if rest[..pivot].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (c, r) = rest[pivot].div_rem(&row[pivot]);
        if !r.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &c * b;
        }
        coords.push(c);
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coords)
    } else {
        None
    }
}

pub fn lattice_contains(basis: &IntegerMatrix, v: &[BigInt]) -> bool {
    lattice_coordinates(basis, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = hermite_kernel(&IntegerMatrix::identity(3));
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn one_column_kernel() {
        let a = IntegerMatrix::from_rows(1, &[vec![1], vec![-1]]);
        let k = hermite_kernel(&a);
        assert_eq!(k.to_i64_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn random_kernels_are_correct() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows: Vec<Vec<i64>> = (0..5)
                .map(|_| (0..3).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let a = IntegerMatrix::from_rows(3, &rows);
            let k = hermite_kernel(&a);
            for i in 0..k.rows() {
                assert!(a.left_apply(k.row(i)).iter().all(Zero::is_zero));
            }
            assert_eq!(k.rank() + a.rank(), a.rows());
            // saturation: kernel basis spans every integral kernel vector it should
            let (h, u) = a.hermite_normal_form();
            assert_eq!(u.mul(&a), h);
            assert!(u.determinant().abs().is_one());
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // x·A = 0 with A = [[2],[4]] has kernel spanned by (2,-1), not (4,-2)
        let a = IntegerMatrix::from_rows(1, &[vec![2], vec![4]]);
        let k = hermite_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(lattice_contains(&k, &big(&[2, -1])));
        assert!(!lattice_contains(&k, &big(&[1, 0])));
    }

    #[test]
    fn determinant_examples() {
        let a = IntegerMatrix::from_rows(3, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(a.determinant(), BigInt::from(6));
        let b = IntegerMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(b.determinant(), BigInt::from(-1));
        let c = IntegerMatrix::from_rows(2, &[vec![2, 4], vec![1, 2]]);
        assert_eq!(c.determinant(), BigInt::zero());
    }

    #[test]
    fn smith_form_divisibility_chain() {
        let a = IntegerMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let (s, u, v) = a.smith_normal_form();
        assert_eq!(u.mul(&a).mul(&v), s);
        let diag: Vec<i64> = (0..3).map(|i| s.to_i64_rows()[i][i]).collect();
        assert_eq!(diag, vec![2, 6, 12]);
        assert!(u.determinant().abs().is_one());
        assert!(v.determinant().abs().is_one());
    }

    #[test]
    fn membership_and_coordinates() {
        let l = hnf_basis(&IntegerMatrix::from_rows(3, &[vec![1, 1, 0], vec![0, 2, 2]]));
        let c = lattice_coordinates(&l, &big(&[2, 4, 2])).unwrap();
        assert_eq!(c.len(), 2);
        assert!(!lattice_contains(&l, &big(&[0, 1, 1])));
    }
}
