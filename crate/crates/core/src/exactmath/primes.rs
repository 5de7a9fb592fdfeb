//! Trial division, deterministic Miller–Rabin below 2^64, and Zsigmondy primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclotomic::phi_value;
use super::MathError;

/// Trial division bound used when factoring.
pub const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for all `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factors found by trial division up to `limit`, with the unfactored cofactor.
pub fn trial_factor(n: &BigInt, limit: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = if n < &BigInt::zero() { -n.clone() } else { n.clone() };
    let mut found = Vec::new();
    if rest.is_zero() {
        return (found, rest);
    }
    let mut p = 2u64;
    while p <= limit {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut k = 0u32;
        loop {
            let (quot, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = quot;
            k += 1;
        }
        if k > 0 {
            found.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // a cofactor below p^2 is prime
    if rest > BigInt::one() {
        if let Some(r) = rest.to_u64() {
            if r <= limit.saturating_mul(limit) && (r as u128) < (p as u128) * (p as u128) {
                found.push((r, 1));
                rest = BigInt::one();
            }
        }
    }
    (found, rest)
}

/// Multiplicative order of `q` modulo the prime `p` (requires `p ∤ q`).
pub fn multiplicative_order(q: u64, p: u64) -> u64 {
    let q = q % p;
    assert!(q != 0, "q divisible by p");
    let n = p - 1;
    let (factors, _) = trial_factor(&BigInt::from(n), TRIAL_LIMIT);
    let mut order = n;
    for (f, _) in factors {
        while order % f == 0 && pow_mod(q, order / f, p) == 1 {
            order /= f;
        }
    }
    order
}

/// Smallest primitive prime divisor of `q^n - 1`.
///
/// Every primitive prime divisor divides `Φ_n(q)`, so only the factors of
/// `Φ_n(q)` are examined; a prime factor `p` qualifies when `q` has order
/// exactly `n` modulo `p`.
pub fn zsigmondy_prime(q: u64, n: u32) -> Result<u64, MathError> {
    if q < 3 || q % 2 == 0 || n <= 2 {
        return Err(MathError::ZsigmondyDomain { q, n });
    }
    let value = phi_value(n, &BigInt::from(q));
    let (factors, cofactor) = trial_factor(&value, TRIAL_LIMIT);
    for (p, _) in factors {
        if q % p != 0 && multiplicative_order(q, p) == n as u64 {
            return Ok(p);
        }
    }
    if cofactor > BigInt::one() {
        match cofactor.to_u64() {
            Some(c) if is_prime_u64(c) => {
                if multiplicative_order(q, c) == n as u64 {
                    return Ok(c);
                }
            }
            _ => return Err(MathError::FactorizationOutOfRange(cofactor.to_string())),
        }
    }
    Err(MathError::NoPrimitivePrime { q, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn miller_rabin_matches_naive() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), naive_is_prime(n), "n={n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn trial_factor_recombines() {
        let n = BigInt::from(728u32);
        let (f, rest) = trial_factor(&n, TRIAL_LIMIT);
        assert_eq!(f, vec![(2, 3), (7, 1), (13, 1)]);
        assert_eq!(rest, BigInt::one());
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(3, 7), 6);
        assert_eq!(multiplicative_order(3, 13), 3);
        assert_eq!(multiplicative_order(5, 31), 3);
    }

    // oracle: factor q^n - 1 directly and test every prime against all m < n
    fn zsigmondy_oracle(q: u64, n: u32) -> u64 {
        let value = BigInt::from(q).pow(n) - 1;
        let (factors, rest) = trial_factor(&value, TRIAL_LIMIT);
        assert_eq!(rest, BigInt::one());
        factors
            .into_iter()
            .map(|(p, _)| p)
            .find(|&p| (1..n).all(|m| (BigInt::from(q).pow(m) - 1) % p != BigInt::zero()))
            .unwrap()
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_prime(3, 6).unwrap(), 7);
        assert_eq!(zsigmondy_prime(3, 5).unwrap(), 11);
        assert_eq!(zsigmondy_prime(5, 3).unwrap(), 31);
        assert_eq!(zsigmondy_prime(3, 3).unwrap(), 13);
        for q in [3u64, 5, 7, 9] {
            for n in 3..=12u32 {
                assert_eq!(zsigmondy_prime(q, n).unwrap(), zsigmondy_oracle(q, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn zsigmondy_domain() {
        assert!(zsigmondy_prime(4, 5).is_err());
        assert!(zsigmondy_prime(3, 2).is_err());
    }
}
