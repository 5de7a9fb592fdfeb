use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::MathError;

/// Splitting of a nonzero integer `m = m₊ · m₋` into its 2-part and odd part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoAdicParts {
    pub two_part: BigInt,
    pub odd_part: BigInt,
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(n: &BigInt) -> Result<u64, MathError> {
    if n.is_zero() {
        return Err(MathError::ZeroValuation);
    }
    Ok(n.trailing_zeros().expect("nonzero"))
}

/// 2-adic valuation of a nonzero machine integer.
pub fn v2_i64(n: i64) -> Result<u64, MathError> {
    if n == 0 {
        return Err(MathError::ZeroValuation);
    }
    Ok(n.trailing_zeros() as u64)
}

/// `|n| = two_part · odd_part` with `two_part` a power of two.
pub fn two_odd_parts(n: &BigInt) -> Result<TwoAdicParts, MathError> {
    let k = v2(n)?;
    let abs = n.abs();
    let odd_part = &abs >> k;
    Ok(TwoAdicParts {
        two_part: BigInt::from(1u8) << k,
        odd_part,
    })
}

/// The exponents `d` and `e` with `(q-1)₊ = 2^d` and `(q+1)₊ = 2^e`.
pub fn d_and_e(q: i64) -> Result<(u64, u64), MathError> {
    if q < 3 || q % 2 == 0 {
        return Err(MathError::EvenOrSmallQ(q));
    }
    Ok((v2_i64(q - 1)?, v2_i64(q + 1)?))
}

/// `v₂(Φ_d(q))` for odd `q`, from the closed form: only 2-power indices are even.
pub fn v2_phi(d: u32, q: i64) -> Result<u64, MathError> {
    if q < 3 || q % 2 == 0 {
        return Err(MathError::EvenOrSmallQ(q));
    }
    Ok(match d {
        1 => v2_i64(q - 1)?,
        2 => v2_i64(q + 1)?,
        d if d.is_power_of_two() => 1,
        _ => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_valuations() {
        assert_eq!(v2(&BigInt::from(8)).unwrap(), 3);
        assert_eq!(v2(&BigInt::from(48)).unwrap(), 4);
        assert_eq!(v2(&BigInt::from(-12)).unwrap(), 2);
        assert_eq!(v2(&BigInt::from(3 * 3 - 1)).unwrap(), 3);
        assert!(v2(&BigInt::from(0)).is_err());
    }

    #[test]
    fn parts_multiply_back() {
        for n in [1i64, 2, 6, 48, 1000, 729, -40] {
            let p = two_odd_parts(&BigInt::from(n)).unwrap();
            assert_eq!(&p.two_part * &p.odd_part, BigInt::from(n.abs()));
            assert_eq!(p.two_part.magnitude().count_ones(), 1);
            assert!(p.odd_part.bit(0));
        }
    }

    #[test]
    fn closed_form_phi_valuations() {
        use crate::exactmath::cyclotomic::phi_value;
        for q in [3i64, 5, 7, 9, 11, 13, 15, 17, 31] {
            for d in 1..=64u32 {
                let direct = v2(&phi_value(d, &BigInt::from(q))).unwrap();
                assert_eq!(v2_phi(d, q).unwrap(), direct, "d={d} q={q}");
            }
        }
        assert_eq!(v2_phi(4, 5).unwrap(), 1); // Φ₄(5) = 26
    }

    #[test]
    fn d_e_examples() {
        assert_eq!(d_and_e(3).unwrap(), (1, 2));
        assert_eq!(d_and_e(5).unwrap(), (2, 1));
        assert_eq!(d_and_e(17).unwrap(), (4, 1));
        assert!(d_and_e(4).is_err());
    }
}
