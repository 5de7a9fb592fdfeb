use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactmath::cyclotomic_poly;

// row k holds x^k mod Φ_n for 0 ≤ k < n
fn power_table(n: u32) -> Arc<Vec<Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Vec<i64>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    if deg == 0 {
        cur = vec![];
    }
    for _ in 0..n {
        rows.push(cur.clone());
        if deg == 0 {
            continue;
        }
        // multiply by x and reduce with the monic Φ_n
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        next[1..deg].copy_from_slice(&cur[..deg - 1]);
        for (i, c) in next.iter_mut().enumerate() {
            *c -= top * phi[i];
        }
        cur = next;
    }
    let t = Arc::new(rows);
    cache.lock().unwrap().insert(n, t.clone());
    t
}

/// An element of `Z[ζ_n]`, stored by its coordinates in the power basis
/// `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicInteger {
    conductor: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(conductor: u32) -> Self {
        let deg = cyclotomic_poly(conductor).len() - 1;
        CyclotomicInteger {
            conductor,
            coeffs: vec![0; deg],
        }
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = v;
        z
    }

    /// `ζ_n^k`.
    pub fn root_power(conductor: u32, k: i64) -> Self {
        let k = k.rem_euclid(conductor as i64) as usize;
        CyclotomicInteger {
            conductor,
            coeffs: power_table(conductor)[k].clone(),
        }
    }

    /// `Σ m_k ζ^k`.
    pub fn from_exponent_counts(conductor: u32, counts: &[i64]) -> Self {
        let table = power_table(conductor);
        let mut z = Self::zero(conductor);
        for (k, &m) in counts.iter().enumerate() {
            if m != 0 {
                for (c, t) in z.coeffs.iter_mut().zip(&table[k % conductor as usize]) {
                    *c += m * t;
                }
            }
        }
        z
    }

    pub fn from_coeffs(conductor: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), cyclotomic_poly(conductor).len() - 1);
        CyclotomicInteger { conductor, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational value, if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Image under `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        assert_eq!(k.rem_euclid(n).gcd(&n), 1, "k must be a unit mod n");
        let mut counts = vec![0i64; n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[(i as i64 * k).rem_euclid(n) as usize] += c;
        }
        Self::from_exponent_counts(self.conductor, &counts)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Trace down to `Q`.
    pub fn trace(&self) -> i64 {
        let n = self.conductor as i64;
        let mut sum = Self::zero(self.conductor);
        for k in (1..=n).filter(|k| k.gcd(&n) == 1) {
            sum = &sum + &self.galois(k);
        }
        sum.as_integer().expect("trace is rational")
    }

    /// Every coefficient divisible by `d`.
    pub fn divisible_by(&self, d: i64) -> bool {
        self.coeffs.iter().all(|c| c % d == 0)
    }

    pub fn div_exact(&self, d: i64) -> Option<Self> {
        self.divisible_by(d).then(|| CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        })
    }

    /// Re-express in a larger conductor `m` with `n | m`.
    pub fn lift(&self, m: u32) -> Self {
        assert_eq!(m % self.conductor, 0);
        let step = (m / self.conductor) as usize;
        let mut counts = vec![0i64; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[i * step] += c;
        }
        Self::from_exponent_counts(m, &counts)
    }

    /// Value at `ζ = exp(2πi/n)`, for display and sanity checks only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, o: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(self.conductor, o.conductor);
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, o: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-o)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, o: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(self.conductor, o.conductor);
        let table = power_table(self.conductor);
        let n = self.conductor as usize;
        let mut out = CyclotomicInteger::zero(self.conductor);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for (c, t) in out.coeffs.iter_mut().zip(&table[(i + j) % n]) {
                    *c += a * b * t;
                }
            }
        }
        out
    }
}

impl Mul<i64> for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, k: i64) -> CyclotomicInteger {
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (_, 1) => format!("z{}^{k}", self.conductor),
                (_, m) => format!("{m}*z{}^{k}", self.conductor),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        for n in [1u32, 2, 3, 4, 6, 7, 8, 12, 21] {
            let z = CyclotomicInteger::root_power(n, 1);
            let mut p = CyclotomicInteger::from_int(n, 1);
            for _ in 0..n {
                p = &p * &z;
            }
            assert_eq!(p.as_integer(), Some(1), "n={n}");
            // sum of all n-th roots is zero for n > 1
            let s = CyclotomicInteger::from_exponent_counts(n, &vec![1; n as usize]);
            assert_eq!(s.as_integer(), Some(if n == 1 { 1 } else { 0 }));
        }
    }

    #[test]
    fn conjugation_and_trace() {
        let z = CyclotomicInteger::root_power(7, 1);
        let zz = &z * &z.conj();
        assert_eq!(zz.as_integer(), Some(1));
        assert_eq!(z.trace(), -1);
        // z + z^2 + z^4 has norm 2 and conjugate z^3 + z^5 + z^6
        let a = CyclotomicInteger::from_exponent_counts(7, &[0, 1, 1, 0, 1, 0, 0]);
        let b = &a * &a.conj();
        assert_eq!(b.as_integer(), Some(2));
        assert_eq!((&a + &a.conj()).as_integer(), Some(-1));
    }

    #[test]
    fn lift_is_a_ring_map() {
        let a = CyclotomicInteger::from_exponent_counts(3, &[1, 2, 0]);
        let b = CyclotomicInteger::root_power(3, 2);
        assert_eq!((&a * &b).lift(21), &a.lift(21) * &b.lift(21));
        assert_eq!(CyclotomicInteger::root_power(3, 1).lift(21), CyclotomicInteger::root_power(21, 7));
    }
}
