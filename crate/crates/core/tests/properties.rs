use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use blockweights::exactmath::{
    divisors, hermite_kernel, phi_value, two_odd_parts, v2, zsigmondy_prime, CycProduct, IntegerMatrix,
};
use blockweights::liedata::{order_rprime, Family, LieSeries};
use blockweights::smallgroups::{character_table, FiniteGroup, Perm};
use blockweights::symbols::{defect_type_a, degree_bcd, degree_type_a, Partition, Symbol, SymbolFamily};

fn odd_q() -> impl Strategy<Value = i64> {
    (1i64..30).prop_map(|k| 2 * k + 1)
}

fn exponents() -> impl Strategy<Value = Vec<(u32, i32)>> {
    proptest::collection::vec((1u32..=24, -3i32..=4), 0..6)
}

fn sorted_hooks(s: &Symbol) -> (Vec<u32>, Vec<u32>) {
    let (mut h, mut c) = (s.hooks(), s.cohooks());
    h.sort_unstable();
    c.sort_unstable();
    (h, c)
}

fn subset(mask: u16) -> Vec<u32> {
    (0..10).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #[test]
    fn cycprod_eval_and_valuation(num in 1i64..50, den in 1i64..50, a in 0i32..6, phis in exponents(), q in odd_q()) {
        let p = CycProduct::from_parts(num, den, a, &phis);
        let qb = BigInt::from(q);
        let mut expect = BigRational::new(BigInt::from(num), BigInt::from(den)) * BigRational::from_integer(qb.pow(a as u32));
        for &(d, e) in &phis {
            let v = BigRational::from_integer(phi_value(d, &qb));
            for _ in 0..e.abs() {
                expect = if e > 0 { expect * &v } else { expect / &v };
            }
        }
        prop_assert_eq!(p.eval_i64(q).unwrap(), expect.clone());
        let val = v2(expect.numer()).unwrap() as i64 - v2(expect.denom()).unwrap() as i64;
        prop_assert_eq!(p.v2_at(q).unwrap(), val);
    }

    #[test]
    fn cycprod_mul_div_roundtrip(a in exponents(), b in exponents()) {
        let x = CycProduct::from_parts(3, 2, 1, &a);
        let y = CycProduct::from_parts(5, 1, 2, &b);
        prop_assert_eq!(&(&x * &y) / &y, x.clone());
        prop_assert!((&x / &x).phi_exponents().is_empty());
    }

    #[test]
    fn phi_product_is_q_pow_minus_one(n in 1u32..=40, q in 2i64..60) {
        let qb = BigInt::from(q);
        let prod: BigInt = divisors(n).into_iter().map(|d| phi_value(d, &qb)).product();
        prop_assert_eq!(prod, qb.pow(n) - 1u32);
    }

    #[test]
    fn two_odd_split(m in 1i64..1_000_000_000) {
        let parts = two_odd_parts(&BigInt::from(m)).unwrap();
        prop_assert_eq!(&parts.two_part * &parts.odd_part, BigInt::from(m));
        let below: BigInt = &parts.two_part - 1u32;
        prop_assert!((&parts.two_part & below).is_zero());
        let rem: BigInt = &parts.odd_part % 2u32;
        prop_assert!(!rem.is_zero());
    }

    #[test]
    fn zsigmondy_divisibility(k in 1u64..8, n in 3u32..=24) {
        let q = 2 * k + 1;
        let qb = BigInt::from(q);
        if let Ok(p) = zsigmondy_prime(q, n) {
            let pb = BigInt::from(p);
            let full: BigInt = qb.pow(n) - 1u32;
            prop_assert!((full % &pb).is_zero());
            for d in 1..=60u32 {
                if (phi_value(d, &qb) % &pb).is_zero() {
                    prop_assert_eq!(d % n, 0, "p={} d={}", p, d);
                }
            }
            for m in 1..n {
                let lower: BigInt = qb.pow(m) - 1u32;
                prop_assert!(!(lower % &pb).is_zero());
            }
        }
    }

    #[test]
    fn hnf_is_unimodular(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..6)) {
        let a = IntegerMatrix::from_rows(4, &rows);
        let (h, u) = a.hermite_normal_form();
        prop_assert_eq!(u.mul(&a), h);
        prop_assert!(u.determinant().abs().is_one());
    }

    #[test]
    fn kernel_annihilates(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..7)) {
        let a = IntegerMatrix::from_rows(3, &rows);
        let k = hermite_kernel(&a);
        let product = k.mul(&a);
        for i in 0..k.rows() {
            prop_assert!(product.is_zero_row(i));
        }
        prop_assert_eq!(k.rows() + a.rank(), a.rows());
    }

    #[test]
    fn symbol_invariants_under_shift_and_swap(xm in 0u16..1024, ym in 0u16..1024, t in 1u32..4) {
        let s = Symbol::new(subset(xm), subset(ym)).unwrap();
        for other in [s.shift(t), s.swap(), s.shift(t).swap()] {
            prop_assert_eq!(other.rank(), s.rank());
            prop_assert_eq!(other.c(), s.c());
            prop_assert_eq!(other.h_plus(), s.h_plus());
            prop_assert_eq!(other.h_minus(), s.h_minus());
            prop_assert_eq!(sorted_hooks(&other), sorted_hooks(&s));
            prop_assert_eq!(other.canonical(), s.canonical());
        }
        prop_assert_eq!(s.hooks().len() as i64, s.h_plus());
        prop_assert_eq!(s.cohooks().len() as i64, s.h_minus());
        let rank = s.rank();
        if s.kr_difference() % 2 != 0 && (2..=8).contains(&rank) {
            let deg = degree_bcd(&s, SymbolFamily::B, rank as u32).unwrap();
            prop_assert_eq!(degree_bcd(&s.shift(t), SymbolFamily::B, rank as u32).unwrap(), deg.clone());
            prop_assert_eq!(degree_bcd(&s.swap(), SymbolFamily::C, rank as u32).unwrap(), deg);
        }
    }

    #[test]
    fn conjugate_partitions_agree(parts in proptest::collection::vec(1u32..5, 1..5), q in odd_q()) {
        let p = Partition::new(parts);
        let c = p.conjugate();
        let (mut hp, mut hc) = (p.hooks(), c.hooks());
        hp.sort_unstable();
        hc.sort_unstable();
        prop_assert_eq!(hp.len() as u32, p.size());
        prop_assert_eq!(&hp, &hc);
        for twisted in [false, true] {
            prop_assert_eq!(degree_type_a(&p, twisted).unwrap(), degree_type_a(&c, twisted).unwrap());
            prop_assert_eq!(defect_type_a(&p, q, twisted).unwrap(), defect_type_a(&c, q, twisted).unwrap());
        }
        if p.size() >= 2 {
            let hooks = hp.iter().fold(CycProduct::one(), |acc, &h| acc * CycProduct::q_n_minus_one(h));
            let series = LieSeries::new(Family::A, p.size() - 1).unwrap();
            prop_assert_eq!(
                degree_type_a(&p, false).unwrap() * hooks,
                CycProduct::q_n_minus_one(1) * order_rprime(series)
            );
        }
    }
}

fn perm_on(n: u16) -> impl Strategy<Value = Vec<u16>> {
    Just((0..n).collect::<Vec<u16>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn character_tables_are_orthogonal(a in perm_on(6), b in perm_on(6)) {
        let gens: Vec<Perm> = vec![Arc::from(a), Arc::from(b)];
        let g = FiniteGroup::generate("random", 6, &gens).unwrap();
        let t = character_table(&g).unwrap();
        prop_assert_eq!(t.verify(), Ok(()));
        prop_assert_eq!(t.chars.len(), t.num_classes());
        let degrees = t.degrees();
        prop_assert!(degrees.iter().all(|&d| d > 0));
        prop_assert_eq!(degrees.iter().map(|d| d * d).sum::<i64>(), g.order() as i64);
        let sizes: usize = t.classes.iter().map(|c| c.size).sum();
        prop_assert_eq!(sizes, g.order());
    }
}

#[test]
fn table_rows_divide_group_order() {
    use blockweights::defect_tables::data::{e6_table, twisted_e6_table};
    for row in e6_table().into_iter().chain(twisted_e6_table()) {
        let order = order_rprime(row.table.series());
        assert!(row.claimed_product().divides(&order), "{}", row.id());
        assert!(row.claimed_defect <= 3, "{}", row.id());
    }
}
