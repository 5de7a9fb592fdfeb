use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::cycint::CyclotomicInteger;
use super::group::FiniteGroup;
use super::GroupError;
use crate::exactmath::primes::pow_mod;
use crate::exactmath::is_prime_u64;

/// Largest group accepted by [`character_table`].
pub const MAX_TABLE_ORDER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub representative: u32,
    pub size: usize,
    pub order: u32,
    pub regular: bool,
    /// Index of the class of inverses.
    pub inverse: usize,
}

/// An exact character table over `Z[ζ_e]` with `e` the group exponent.
/// Rows are irreducible characters, columns follow
/// [`FiniteGroup::conjugacy_classes`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group: String,
    pub order: usize,
    pub conductor: u32,
    pub classes: Vec<ClassInfo>,
    pub chars: Vec<Vec<CyclotomicInteger>>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

// reduced row echelon form over F_p; returns the nonzero rows and pivots
fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..cols {
                    rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

// kernel of a square matrix acting on column vectors
fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let (rows, pivots) = rref(a.to_vec(), p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&f| pow_mod(g, n / f, p) != 1)).unwrap()
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > bound`.
pub fn splitting_prime(e: u64, bound: u64) -> u64 {
    let mut p = (bound / e + 1) * e + 1;
    while !is_prime_u64(p) {
        p += e;
    }
    p
}

struct ClassData {
    classes: Vec<ClassInfo>,
    members: Vec<Vec<u32>>,
    class_of: Vec<usize>,
    // power_map[j][l] = class of g_j^l for 0 ≤ l < e
    power_map: Vec<Vec<usize>>,
    exponent: u32,
}

fn class_data(g: &FiniteGroup) -> ClassData {
    let raw = g.conjugacy_classes();
    let mut class_of = vec![0usize; g.order()];
    for (j, c) in raw.iter().enumerate() {
        for &m in &c.members {
            class_of[m as usize] = j;
        }
    }
    let exponent = raw.iter().map(|c| c.order).fold(1, num_integer::lcm);
    let classes: Vec<ClassInfo> = raw
        .iter()
        .map(|c| ClassInfo {
            representative: c.representative,
            size: c.size(),
            order: c.order,
            regular: c.is_regular(),
            inverse: class_of[g.inv(c.representative) as usize],
        })
        .collect();
    let power_map = raw
        .iter()
        .map(|c| {
            let mut x = 0u32;
            (0..exponent)
                .map(|_| {
                    let j = class_of[x as usize];
                    x = g.mul(x, c.representative);
                    j
                })
                .collect()
        })
        .collect();
    ClassData {
        classes,
        members: raw.into_iter().map(|c| c.members).collect(),
        class_of,
        power_map,
        exponent,
    }
}

// T_j[s][r] = #{x ∈ C_j : x⁻¹ z_r ∈ C_s}; the vector ω of a character
// satisfies T_j ω = ω_j ω
fn class_matrices(g: &FiniteGroup, cd: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let k = cd.classes.len();
    let inverses: Vec<u32> = (0..g.order() as u32).map(|x| g.inv(x)).collect();
    (0..k)
        .map(|j| {
            let mut t = vec![vec![0u64; k]; k];
            for (r, c) in cd.classes.iter().enumerate() {
                for &x in &cd.members[j] {
                    let y = g.mul(inverses[x as usize], c.representative);
                    t[cd.class_of[y as usize]][r] += 1;
                }
            }
            t
        })
        .collect()
}

// common eigenvectors of the class matrices over F_p
fn split_eigenspaces(mats: &[Vec<Vec<u64>>], p: u64) -> Option<Vec<Vec<u64>>> {
    let k = mats.len();
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    for t in mats.iter().skip(1) {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let (basis, pivots) = rref(basis, p);
            let d = basis.len();
            // A[i][c] = coordinate i of T·b_c, read off at the pivots
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|s| (0..k).fold(0, |acc, r| (acc + t[s][r] * b[r]) % p))
                        .collect()
                })
                .collect();
            let a: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|c| images[c][pivots[i]]).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                if found == d {
                    break;
                }
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|c| if i == c { (a[i][c] + p - lambda) % p } else { a[i][c] })
                            .collect()
                    })
                    .collect();
                let kernel = nullspace(&shifted, p);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let vectors = kernel
                    .iter()
                    .map(|coords| {
                        (0..k)
                            .map(|r| {
                                coords
                                    .iter()
                                    .zip(&basis)
                                    .fold(0, |acc, (c, b)| (acc + c * b[r]) % p)
                            })
                            .collect()
                    })
                    .collect();
                next.push(vectors);
            }
            if found != d {
                return None;
            }
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if spaces.len() != k {
        return None;
    }
    Some(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn attempt(g: &FiniteGroup, cd: &ClassData, mats: &[Vec<Vec<u64>>], p: u64) -> Option<CharacterTable> {
    let order = g.order() as u64;
    let e = cd.exponent;
    let vectors = split_eigenspaces(mats, p)?;
    let z = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    let inv_e = inv_mod(e as u64 % p, p);
    let mut chars = Vec::new();
    for v in vectors {
        if v[0] == 0 {
            return None;
        }
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let mut s = 0;
        for (j, c) in cd.classes.iter().enumerate() {
            let term = omega[j] * omega[c.inverse] % p * inv_mod(c.size as u64 % p, p) % p;
            s = (s + term) % p;
        }
        if s == 0 {
            return None;
        }
        let deg_sq = order % p * inv_mod(s, p) % p;
        let n = (1..=isqrt(order)).find(|&n| order % n == 0 && n * n % p == deg_sq)?;
        let values: Vec<u64> = cd
            .classes
            .iter()
            .enumerate()
            .map(|(j, c)| omega[j] * n % p * inv_mod(c.size as u64 % p, p) % p)
            .collect();
        let row: Option<Vec<CyclotomicInteger>> = cd
            .power_map
            .iter()
            .map(|powers| {
                let counts: Option<Vec<i64>> = (0..e as u64)
                    .map(|k| {
                        let mut m = 0;
                        for (l, &cls) in powers.iter().enumerate() {
                            let zeta = pow_mod(z, (e as u64 - k * l as u64 % e as u64) % e as u64, p);
                            m = (m + values[cls] * zeta) % p;
                        }
                        let m = m * inv_e % p;
                        (m <= n).then_some(m as i64)
                    })
                    .collect();
                let counts = counts?;
                (counts.iter().sum::<i64>() == n as i64)
                    .then(|| CyclotomicInteger::from_exponent_counts(e, &counts))
            })
            .collect();
        chars.push(row?);
    }
    let mut table = CharacterTable {
        group: g.name().to_string(),
        order: g.order(),
        conductor: e,
        classes: cd.classes.clone(),
        chars,
    };
    table.sort_characters();
    table.verify().ok()?;
    Some(table)
}

/// Character table by the Dixon–Schneider class-matrix method, lifted
/// exactly through eigenvalue multiplicities.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    if g.order() > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(MAX_TABLE_ORDER));
    }
    let cd = class_data(g);
    let mats = class_matrices(g, &cd);
    let bound = 2 * isqrt(g.order() as u64) + 2;
    let mut p = splitting_prime(cd.exponent as u64, bound);
    for _ in 0..8 {
        if let Some(t) = attempt(g, &cd, &mats, p) {
            return Ok(t);
        }
        p = splitting_prime(cd.exponent as u64, p);
    }
    Err(GroupError::LiftFailure(g.name().to_string()))
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.chars
            .iter()
            .map(|row| row[0].as_integer().expect("degrees are integers"))
            .collect()
    }

    pub fn centralizer_order(&self, j: usize) -> usize {
        self.order / self.classes[j].size
    }

    /// Indices of the 2-regular classes.
    pub fn regular_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&j| self.classes[j].regular).collect()
    }

    /// `|G|·⟨a, b⟩` as an element of `Z[ζ_e]`.
    pub fn scaled_inner(&self, a: &[CyclotomicInteger], b: &[CyclotomicInteger]) -> CyclotomicInteger {
        let mut s = CyclotomicInteger::zero(self.conductor);
        for (j, c) in self.classes.iter().enumerate() {
            s = &s + &(&(&a[j] * &b[j].conj()) * c.size as i64);
        }
        s
    }

    /// `⟨a, b⟩` when it is a rational integer.
    pub fn inner_product(&self, a: &[CyclotomicInteger], b: &[CyclotomicInteger]) -> Option<i64> {
        let s = self.scaled_inner(a, b).as_integer()?;
        (s % self.order as i64 == 0).then(|| s / self.order as i64)
    }

    /// Class function `Σ c_i χ_i`.
    pub fn combination(&self, coeffs: &[i64]) -> Vec<CyclotomicInteger> {
        (0..self.classes.len())
            .map(|j| {
                coeffs
                    .iter()
                    .zip(&self.chars)
                    .fold(CyclotomicInteger::zero(self.conductor), |acc, (&c, row)| {
                        &acc + &(&row[j] * c)
                    })
            })
            .collect()
    }

    /// Row and column orthogonality, degree sum and integrality of degrees.
    pub fn verify(&self) -> Result<(), String> {
        let k = self.classes.len();
        if self.chars.len() != k {
            return Err(format!("{} characters for {k} classes", self.chars.len()));
        }
        for (i, a) in self.chars.iter().enumerate() {
            match a[0].as_integer() {
                Some(d) if d > 0 && self.order as i64 % d == 0 => {}
                _ => return Err(format!("bad degree {}", a[0])),
            }
            for (j, b) in self.chars.iter().enumerate() {
                if self.inner_product(a, b) != Some(i64::from(i == j)) {
                    return Err(format!("rows {i},{j} not orthonormal"));
                }
            }
        }
        for x in 0..k {
            for y in 0..k {
                let mut s = CyclotomicInteger::zero(self.conductor);
                for row in &self.chars {
                    s = &s + &(&row[x] * &row[y].conj());
                }
                let expected = if x == y { self.centralizer_order(x) as i64 } else { 0 };
                if s.as_integer() != Some(expected) {
                    return Err(format!("columns {x},{y} not orthogonal"));
                }
            }
        }
        let sum: i64 = self.degrees().iter().map(|d| d * d).sum();
        if sum != self.order as i64 {
            return Err(format!("sum of squared degrees {sum} != {}", self.order));
        }
        Ok(())
    }

    // degree, trivial character first, then values
    fn sort_characters(&mut self) {
        let trivial = |row: &Vec<CyclotomicInteger>| row.iter().all(|v| v.as_integer() == Some(1));
        self.chars.sort_by(|a, b| {
            let key = |r: &Vec<CyclotomicInteger>| (r[0].as_integer(), !trivial(r));
            key(a).cmp(&key(b)).then_with(|| {
                let ca: Vec<&[i64]> = a.iter().map(|v| v.coeffs()).collect();
                let cb: Vec<&[i64]> = b.iter().map(|v| v.coeffs()).collect();
                cb.cmp(&ca)
            })
        });
    }

    /// Structured export `{classes:[{order,size,regular}], chars:[[coeffs]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group,
            "order": self.order,
            "conductor": self.conductor,
            "classes": self.classes.iter().map(|c| serde_json::json!({
                "order": c.order, "size": c.size, "regular": c.regular,
            })).collect::<Vec<_>>(),
            "chars": self.chars.iter().map(|row| {
                row.iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    /// Aligned text, one row per character.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.classes.iter().map(|c| format!("{}{}", c.order, if c.regular { "" } else { "*" })));
        cells.push(header);
        let mut sizes = vec!["|C|".to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        cells.push(sizes);
        for (i, row) in self.chars.iter().enumerate() {
            let mut r = vec![format!("X{}", i + 1)];
            r.extend(row.iter().map(|v| v.to_string()));
            cells.push(r);
        }
        let width = (0..=self.classes.len())
            .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect::<Vec<_>>();
        let mut out = format!("{} (order {})\n", self.group, self.order);
        for r in &cells {
            let line: Vec<String> = r.iter().zip(&width).map(|(s, w)| format!("{s:>w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}
