//! Formal products `scalar · q^a · ∏ Φ_d^{e_d}`.
//!
//! Orders of finite groups of Lie type and their unipotent character degrees
//! are all of this shape. The product is kept symbolic and evaluated on demand.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{divisors, phi_value};
use super::valuation::{v2, v2_phi};
use super::MathError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycProduct {
    scalar: BigRational,
    q_power: i32,
    phis: BTreeMap<u32, i32>,
}

impl CycProduct {
    pub fn new(scalar: BigRational, q_power: i32, phis: BTreeMap<u32, i32>) -> Self {
        let mut p = CycProduct { scalar, q_power, phis };
        p.normalize();
        p
    }

    /// Product with integer scalar and the given `(d, e_d)` exponents.
    pub fn from_parts(num: i64, den: i64, q_power: i32, phis: &[(u32, i32)]) -> Self {
        let mut map = BTreeMap::new();
        for &(d, e) in phis {
            assert!(d > 0, "cyclotomic index must be positive");
            *map.entry(d).or_insert(0) += e;
        }
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            q_power,
            map,
        )
    }

    /// Shorthand for a pure Φ-product with scalar 1 and no power of q.
    pub fn phis(phis: &[(u32, i32)]) -> Self {
        Self::from_parts(1, 1, 0, phis)
    }

    pub fn one() -> Self {
        Self::from_parts(1, 1, 0, &[])
    }

    pub fn scalar_only(num: i64, den: i64) -> Self {
        Self::from_parts(num, den, 0, &[])
    }

    pub fn q_pow(a: i32) -> Self {
        Self::from_parts(1, 1, a, &[])
    }

    /// `q^n - 1` as a Φ-product.
    pub fn q_n_minus_one(n: u32) -> Self {
        let mut map = BTreeMap::new();
        for d in divisors(n) {
            map.insert(d, 1);
        }
        Self::new(BigRational::one(), 0, map)
    }

    /// `q^n + 1` as a Φ-product: the Φ_d with `d | 2n`, `d ∤ n`.
    pub fn q_n_plus_one(n: u32) -> Self {
        let mut map = BTreeMap::new();
        for d in divisors(2 * n) {
            if n % d != 0 {
                map.insert(d, 1);
            }
        }
        Self::new(BigRational::one(), 0, map)
    }

    fn normalize(&mut self) {
        self.phis.retain(|_, e| *e != 0);
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn q_power(&self) -> i32 {
        self.q_power
    }

    pub fn phi_exponents(&self) -> &BTreeMap<u32, i32> {
        &self.phis
    }

    pub fn exponent(&self, d: u32) -> i32 {
        self.phis.get(&d).copied().unwrap_or(0)
    }

    /// Drop the power of `q` (the `r'`-part when `q` is a power of `r`).
    pub fn rprime_part(&self) -> Self {
        CycProduct {
            q_power: 0,
            ..self.clone()
        }
    }

    pub fn with_scalar(&self, scalar: BigRational) -> Self {
        CycProduct {
            scalar,
            ..self.clone()
        }
    }

    /// Φ-part with scalar 1 and no power of `q`.
    pub fn phi_part(&self) -> Self {
        Self::new(BigRational::one(), 0, self.phis.clone())
    }

    /// All exponents nonnegative, nonnegative q-power, positive scalar.
    pub fn is_polynomial(&self) -> bool {
        self.q_power >= 0 && self.phis.values().all(|&e| e >= 0) && self.scalar.is_positive()
    }

    /// Checks the invariants of something flagged as an order or degree.
    pub fn check_degree_like(&self) -> Result<(), MathError> {
        if self.is_polynomial() {
            Ok(())
        } else {
            Err(MathError::NotDegreeLike(self.to_string()))
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        let scalar = if k >= 0 {
            num_traits::pow(self.scalar.clone(), k as usize)
        } else {
            num_traits::pow(self.scalar.recip(), (-k) as usize)
        };
        let phis = self.phis.iter().map(|(&d, &e)| (d, e * k)).collect();
        Self::new(scalar, self.q_power * k, phis)
    }

    pub fn recip(&self) -> Self {
        self.pow(-1)
    }

    /// Exact value at an integer `q ≥ 2`.
    pub fn eval(&self, q: &BigInt) -> Result<BigRational, MathError> {
        if q < &BigInt::from(2) {
            return Err(MathError::QTooSmall(q.to_string()));
        }
        let mut num = self.scalar.numer().clone();
        let mut den = self.scalar.denom().clone();
        let qp = num_traits::pow(q.clone(), self.q_power.unsigned_abs() as usize);
        if self.q_power >= 0 {
            num *= qp;
        } else {
            den *= qp;
        }
        for (&d, &e) in &self.phis {
            let v = num_traits::pow(phi_value(d, q), e.unsigned_abs() as usize);
            if e > 0 {
                num *= v;
            } else {
                den *= v;
            }
        }
        Ok(BigRational::new(num, den))
    }

    pub fn eval_i64(&self, q: i64) -> Result<BigRational, MathError> {
        self.eval(&BigInt::from(q))
    }

    /// Evaluation that must be a rational integer.
    pub fn eval_integer(&self, q: i64) -> Result<BigInt, MathError> {
        let v = self.eval_i64(q)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(MathError::NonIntegral {
                product: self.to_string(),
                q,
                value: v.to_string(),
            })
        }
    }

    /// 2-adic valuation of the value at odd `q ≥ 3`, computed exponent-wise
    /// without evaluating the product.
    pub fn v2_at(&self, q: i64) -> Result<i64, MathError> {
        let mut total: i64 = 0;
        for (&d, &e) in &self.phis {
            total += e as i64 * v2_phi(d, q)? as i64;
        }
        if self.scalar.is_zero() {
            return Err(MathError::ZeroValuation);
        }
        total += v2(self.scalar.numer())? as i64;
        total -= v2(self.scalar.denom())? as i64;
        Ok(total)
    }

    /// The substitution `q ↦ -q`, up to sign.
    ///
    /// `Φ_1(-q) = -Φ_2(q)`, `Φ_2(-q) = -Φ_1(q)`, and for `d > 2`
    /// `Φ_d(-q) = Φ_{d'}(q)` with `d' = 2d` (d odd), `d/2` (d ≡ 2 mod 4),
    /// `d` (4 | d).
    pub fn mirror(&self) -> Self {
        let phis = self
            .phis
            .iter()
            .map(|(&d, &e)| (mirror_index(d), e))
            .collect();
        Self::new(self.scalar.clone(), self.q_power, phis)
    }

    /// The substitution `q ↦ q^j`.
    ///
    /// `Φ_d(x^j) = ∏ Φ_m(x)` over `m | dj` with `m / gcd(m, j) = d`.
    pub fn substitute_power(&self, j: u32) -> Self {
        assert!(j >= 1);
        let mut map = BTreeMap::new();
        for (&d, &e) in &self.phis {
            for m in divisors(d * j) {
                if m / m.gcd(&j) == d {
                    *map.entry(m).or_insert(0) += e;
                }
            }
        }
        Self::new(self.scalar.clone(), self.q_power * j as i32, map)
    }

    /// Whether `other / self` has only nonnegative Φ- and q-exponents.
    pub fn divides(&self, other: &CycProduct) -> bool {
        let quotient = other / self;
        quotient.q_power >= 0 && quotient.phis.values().all(|&e| e >= 0)
    }

    /// Compact text form, e.g. `1/3 * q^7 * F1^6 F2^4 F4^2 F5 F8`.
    pub fn to_compact(&self) -> String {
        self.to_string()
    }
}

/// Index map for `q ↦ -q`.
pub fn mirror_index(d: u32) -> u32 {
    match d {
        1 => 2,
        2 => 1,
        d if d % 2 == 1 => 2 * d,
        d if d % 4 == 2 => d / 2,
        d => d,
    }
}

impl Mul for &CycProduct {
    type Output = CycProduct;
    fn mul(self, rhs: &CycProduct) -> CycProduct {
        let mut phis = self.phis.clone();
        for (&d, &e) in &rhs.phis {
            *phis.entry(d).or_insert(0) += e;
        }
        CycProduct::new(&self.scalar * &rhs.scalar, self.q_power + rhs.q_power, phis)
    }
}

impl Mul for CycProduct {
    type Output = CycProduct;
    fn mul(self, rhs: CycProduct) -> CycProduct {
        &self * &rhs
    }
}

impl Div for &CycProduct {
    type Output = CycProduct;
    fn div(self, rhs: &CycProduct) -> CycProduct {
        self * &rhs.recip()
    }
}

impl Div for CycProduct {
    type Output = CycProduct;
    fn div(self, rhs: CycProduct) -> CycProduct {
        &self / &rhs
    }
}

impl fmt::Display for CycProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups = Vec::new();
        if !self.scalar.is_one() || (self.q_power == 0 && self.phis.is_empty()) {
            groups.push(self.scalar.to_string());
        }
        match self.q_power {
            0 => {}
            1 => groups.push("q".to_string()),
            a => groups.push(format!("q^{a}")),
        }
        if !self.phis.is_empty() {
            let phis: Vec<String> = self
                .phis
                .iter()
                .map(|(&d, &e)| {
                    if e == 1 {
                        format!("F{d}")
                    } else {
                        format!("F{d}^{e}")
                    }
                })
                .collect();
            groups.push(phis.join(" "));
        }
        write!(f, "{}", groups.join(" * "))
    }
}

impl FromStr for CycProduct {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MathError::Parse(s.to_string());
        let mut scalar = BigRational::one();
        let mut q_power = 0i32;
        let mut phis: BTreeMap<u32, i32> = BTreeMap::new();
        for group in s.split('*') {
            for token in group.split_whitespace() {
                if let Some(rest) = token.strip_prefix('F') {
                    let (d, e) = match rest.split_once('^') {
                        Some((d, e)) => (d, e.parse::<i32>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    let d: u32 = d.parse().map_err(|_| bad())?;
                    if d == 0 {
                        return Err(bad());
                    }
                    *phis.entry(d).or_insert(0) += e;
                } else if let Some(rest) = token.strip_prefix('q') {
                    q_power += match rest.strip_prefix('^') {
                        Some(e) => e.parse::<i32>().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                } else {
                    let value = match token.split_once('/') {
                        Some((n, d)) => {
                            let n: BigInt = n.parse().map_err(|_| bad())?;
                            let d: BigInt = d.parse().map_err(|_| bad())?;
                            if d.is_zero() {
                                return Err(bad());
                            }
                            BigRational::new(n, d)
                        }
                        None => BigRational::from_integer(token.parse().map_err(|_| bad())?),
                    };
                    scalar *= value;
                }
            }
        }
        Ok(CycProduct::new(scalar, q_power, phis))
    }
}

#[derive(Serialize, Deserialize)]
struct CycProductRepr {
    scalar: [i64; 2],
    qpow: i32,
    phis: BTreeMap<u32, i32>,
}

impl Serialize for CycProduct {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let num = self.scalar.numer().to_i64();
        let den = self.scalar.denom().to_i64();
        match (num, den) {
            (Some(num), Some(den)) => CycProductRepr {
                scalar: [num, den],
                qpow: self.q_power,
                phis: self.phis.clone(),
            }
            .serialize(serializer),
            _ => Err(serde::ser::Error::custom("scalar exceeds 64-bit range")),
        }
    }
}

impl<'de> Deserialize<'de> for CycProduct {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CycProductRepr::deserialize(deserializer)?;
        if repr.scalar[1] == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        if repr.phis.contains_key(&0) {
            return Err(serde::de::Error::custom("cyclotomic index 0"));
        }
        Ok(CycProduct::new(
            BigRational::new(BigInt::from(repr.scalar[0]), BigInt::from(repr.scalar[1])),
            repr.qpow,
            repr.phis,
        ))
    }
}
