//! Cyclotomic polynomials over the integers.
//!
//! Polynomials are dense coefficient vectors, lowest degree first.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Möbius function.
pub fn mobius(mut n: u32) -> i32 {
    assert!(n > 0);
    let mut result = 1;
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

// multiply in place by (x^d - 1)
fn mul_xd_minus_one(poly: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; poly.len() + d];
    for (i, &c) in poly.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

// exact division by (x^d - 1); panics on a nonzero remainder
fn div_xd_minus_one(poly: &[i64], d: usize) -> Vec<i64> {
    assert!(poly.len() > d, "dividend degree too small");
    let qlen = poly.len() - d;
    let mut rem = poly.to_vec();
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + d];
        quot[i] = c;
        rem[i + d] -= c;
        rem[i] += c;
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact division by x^d - 1");
    quot
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial as a coefficient vector (constant term first).
///
/// Built from `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`, multiplying all positive
/// factors before dividing out the negative ones so every step stays exact.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let divs = divisors(n);
    let mut poly = vec![1i64];
    for &d in &divs {
        if mobius(n / d) == 1 {
            poly = mul_xd_minus_one(&poly, d as usize);
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            poly = div_xd_minus_one(&poly, d as usize);
        }
    }
    let poly = Arc::new(poly);
    cache().lock().unwrap().insert(n, poly.clone());
    poly
}

/// Evaluate an integer polynomial at an arbitrary-precision point (Horner).
pub fn eval_poly(coeffs: &[i64], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x + BigInt::from(c);
    }
    acc
}

/// `Φ_n(q)` evaluated exactly.
pub fn phi_value(n: u32, q: &BigInt) -> BigInt {
    eval_poly(&cyclotomic_poly(n), q)
}

/// Multiply two dense integer polynomials.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Pretty-print a polynomial in `x`, highest degree first.
pub fn format_poly(coeffs: &[i64]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let body = match (deg, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "x".to_string(),
            (1, m) => format!("{m}x"),
            (d, 1) => format!("x^{d}"),
            (d, m) => format!("{m}x^{d}"),
        };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" ")
    }
}

/// `q^n - 1` as an exact integer.
pub fn q_pow_minus_one(q: &BigInt, n: u32) -> BigInt {
    num_traits::pow(q.clone(), n as usize) - BigInt::one()
}
