//! The degree comparison that rules out a five-character block in E₈(q)
//! with centralizer of type E₆ × A₂.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{QCondition, TableError};
use crate::exactmath::{phi_value, zsigmondy_prime, CycProduct};
use crate::liedata::{self, order_rprime, LieSeries};
use crate::report::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E8Summary {
    pub q: i64,
    pub p3: u64,
    pub p6: u64,
    /// `χ_j(1)` for the four height-zero candidates.
    pub chi_j: CycProduct,
    pub chi_1_stated: CycProduct,
    pub chi_1_recomputed: CycProduct,
}

fn divides(p: u64, n: &BigInt) -> bool {
    (n % BigInt::from(p)).is_zero()
}

// a = q·Φ_a(q) against b = 2·Φ_b(q)·Φ_c(q)^k with a prime p | Φ_c(q)
fn separation(q: i64, p: u64, a_idx: u32, b_idx: u32, c_idx: u32, k: u32) -> (bool, String) {
    let qb = BigInt::from(q);
    let a = &qb * phi_value(a_idx, &qb);
    let b = BigInt::from(2) * phi_value(b_idx, &qb) * phi_value(c_idx, &qb).pow(k);
    let ok = !divides(p, &a) && divides(p, &b) && a != b && a != -&b;
    let detail = format!(
        "q*F{a_idx} = {a}, 2*F{b_idx}*F{c_idx}^{k} = {b}; p = {p} divides the second ({}) but not the first ({})",
        divides(p, &b),
        !divides(p, &a)
    );
    (ok, detail)
}

pub fn verify_e8_contradiction(q: i64) -> Result<(E8Summary, Report), TableError> {
    if q < 3 || q % 2 == 0 {
        return Err(TableError::BadQ(q));
    }
    if !QCondition::TwoPartEight.admits(q) {
        return Err(TableError::Condition {
            row: "E8 degree comparison".into(),
            q,
            condition: QCondition::TwoPartEight,
        });
    }
    let catalog = liedata::catalog();
    let cp = CycProduct::from_parts;
    let e8 = order_rprime(LieSeries::of("E8"));
    let e6 = order_rprime(LieSeries::of("E6"));
    let a2 = order_rprime(LieSeries::of("A2"));
    let common = &e8 / &(&e6 * &CycProduct::scalar_only(3, 1));
    let torus = CycProduct::phis(&[(1, 1), (2, 1)]);

    let chi_j = &common * &cp(1, 1, 7, &[(1, 5), (2, 3), (4, 2), (5, 1), (8, 1)]);
    let chi_1_stated = &common * &cp(1, 1, 8, &[(1, 4), (2, 4), (3, -2), (4, 2), (5, 1), (8, 1)]);

    let mut report = Report::new("e8");
    let reference = "E8 with centralizer E6 x A2: degree comparison";
    // four characters, two for each of E6[θ] and E6[θ²], with |G:C|_{r'}·λ(1)
    let index = &e8 / &(&e6 * &torus);
    let mut all_equal = true;
    for label in ["E6:E6[theta]", "E6:E6[theta^2]"] {
        let lambda = liedata::lookup_in(&catalog, label)?.degree;
        all_equal &= &index * &lambda == chi_j;
    }
    report.push(Check::new(
        format!("e8.q{q}.candidates"),
        reference,
        all_equal,
        format!("four height-zero candidates share degree {chi_j}"),
    ));
    let defect_j = e8.v2_at(q)? - chi_j.v2_at(q)?;
    report.push(Check::new(
        format!("e8.q{q}.height-zero"),
        reference,
        defect_j == 3,
        format!("2-defect of the candidates = {defect_j}"),
    ));

    // χ_1 from E6[θ] ⊗ χ^(2,1) of A2, with the centre factor 3 cancelling a_χ
    let e6_theta = liedata::lookup_in(&catalog, "E6:E6[theta]")?.degree;
    let a2_chi = liedata::lookup_in(&catalog, "A2:chi^(2,1)")?.degree;
    let chi_1_recomputed = &(&(&e8 / &e6) * &(&e6_theta * &a2_chi)) / &a2;
    let ratio = &chi_1_stated / &chi_1_recomputed;
    let only_phi3 = ratio == CycProduct::phis(&[(3, ratio.exponent(3))]);
    report.push(Check::new(
        format!("e8.q{q}.chi1"),
        reference,
        only_phi3,
        format!("stated chi_1 = {chi_1_stated}; recomputed {chi_1_recomputed}; ratio {ratio}"),
    ));
    if ratio != CycProduct::one() {
        // exponents of Φ₃ after removing the common factor K
        let rel = |c: &CycProduct| -(c / &common).exponent(3);
        report.note(format!(
            "stated chi_1 is K times a product with F3^{} in the denominator; the degree formula gives F3^{}",
            rel(&chi_1_stated),
            rel(&chi_1_recomputed)
        ));
    }

    let p3 = zsigmondy_prime(q as u64, 3)?;
    let p6 = zsigmondy_prime(q as u64, 6)?;
    for k in [1, 2] {
        let (ok, detail) = separation(q, p3, 2, 1, 3, k);
        report.push(Check::new(format!("e8.q{q}.p3.k{k}"), reference, ok, detail));
        let (ok, detail) = separation(q, p6, 1, 2, 6, k);
        report.push(Check::new(format!("e8.q{q}.p6.k{k}"), "mirror case 2E6 x 2A2", ok, detail));
    }
    Ok((
        E8Summary {
            q,
            p3,
            p6,
            chi_j,
            chi_1_stated,
            chi_1_recomputed,
        },
        report,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_and_q5() {
        for q in [3, 5] {
            let (s, report) = verify_e8_contradiction(q).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{failures:#?}");
            assert_eq!(s.p3, if q == 3 { 13 } else { 31 });
        }
        // 13 | 2·2·169 and 13 ∤ 3·4
        let (ok, _) = separation(3, 13, 2, 1, 3, 2);
        assert!(ok);
    }

    #[test]
    fn precondition() {
        assert!(matches!(verify_e8_contradiction(7), Err(TableError::Condition { .. })));
        assert!(matches!(verify_e8_contradiction(9), Err(TableError::Condition { .. })));
        assert!(verify_e8_contradiction(2).is_err());
    }
}
