//! Transcriptions of the two small-defect tables. Products are `r'`-parts
//! written as `F<d>^<e>` factors; where a printed entry has a slip in an odd
//! cyclotomic factor the corrected entry sits beside it.

use super::{DefectRow, QCondition, TableKind};
use crate::exactmath::CycProduct;
use crate::liedata::LieSeries;

type RawRow = (
    &'static str,         // row id
    Option<&'static str>, // Δ_s
    Option<&'static str>, // C°(s)'
    &'static str,         // z(s)
    Option<&'static str>, // unipotent label of C°(s)'
    &'static str,         // printed a·χ(1)_{r'}
    Option<&'static str>, // corrected product
    u32,                  // d(χ)
    QCondition,
);

use QCondition::{Any, OneMod4, ThreeMod4, TwoPartEight};

const E6_ROWS: &[RawRow] = &[
    ("i", None, None, "F1^2 F3^2", None, "F1^4 F2^4 F3 F4^2 F5 F6^2 F8 F9 F12", None, 2, ThreeMod4),
    ("ii", None, None, "F1^2 F5", None, "F1^4 F2^4 F3^3 F4^2 F6^2 F8 F9 F12", None, 2, ThreeMod4),
    ("iii", None, None, "F1 F2 F3^2", None, "F1^5 F2^3 F3 F4^2 F5 F6^2 F8 F9 F12", None, 3, TwoPartEight),
    ("iv", None, None, "F1 F2 F5", None, "F1^5 F2^3 F3^3 F4^2 F6^2 F8 F9 F12", None, 3, TwoPartEight),
    ("v", None, None, "F1 F2 F3 F6", None, "F1^5 F2^3 F3^2 F4^2 F5 F6 F8 F9 F12", None, 3, TwoPartEight),
    ("vi", None, None, "F3^3", None, "F1^6 F2^4 F4^2 F5 F6^2 F8 F9 F12", None, 0, Any),
    ("vii", None, None, "F2^2 F3 F6", None, "F1^6 F2^2 F3^2 F4^2 F5 F6 F8 F9 F12", None, 2, OneMod4),
    ("viii", None, None, "F3 F12", None, "F1^6 F2^4 F3^2 F4^2 F5 F6^2 F8 F9", None, 0, Any),
    ("ix", None, None, "F9", None, "F1^6 F2^4 F3^3 F4^2 F5 F6^2 F8 F12", None, 0, Any),
    ("x", None, None, "F3 F6^2", None, "F1^6 F2^4 F3^2 F4^2 F5 F8 F9 F12", None, 0, Any),
    ("xi", Some("A2"), Some("A2"), "F3^2", Some("chi^(2,1)"), "F1^4 F2^4 F4^2 F5 F6^2 F8 F9 F12", None, 2, ThreeMod4),
    (
        "xii", Some("A2"), Some("2A2"), "F3 F6", Some("chi^(2,1)"),
        "F1^6 F2^2 F3 F4^2 F5 F8 F9 F12", Some("F1^6 F2^2 F3^2 F4^2 F5 F8 F9 F12"), 2, OneMod4,
    ),
    ("xiii", Some("D4"), Some("3D4"), "F3", Some("phi_{2,2}"), "1/2 F1^4 F2^4 F4^2 F5 F8 F9 F12", None, 3, ThreeMod4),
    ("xiv", Some("D4"), Some("3D4"), "F3", Some("phi_{2,1}"), "1/2 F1^4 F2^4 F4^2 F5 F6^2 F8 F9", None, 3, ThreeMod4),
    ("xv", Some("D4"), Some("3D4"), "F3", Some("3D4[-1]"), "1/2 F1^6 F2^2 F3^2 F4^2 F5 F8 F9", None, 3, OneMod4),
    ("xvi", Some("D4"), Some("3D4"), "F3", Some("3D4[1]"), "1/2 F1^6 F2^2 F4^2 F5 F8 F9 F12", None, 3, OneMod4),
    (
        "xvii", Some("3A2"), Some("A2(q^3)"), "1", Some("chi^(2,1)"),
        "F1^4 F2^4 F3 F4^2 F5 F8 F12", Some("F1^4 F2^4 F3 F4^2 F5 F6^2 F8 F12"), 2, ThreeMod4,
    ),
    ("xviii", Some("E6"), Some("E6"), "1", Some("E6[theta]"), "1/3 F1^6 F2^4 F4^2 F5 F8", None, 0, Any),
];

const TWISTED_E6_ROWS: &[RawRow] = &[
    ("i", None, None, "F2^2 F6^2", None, "F2^4 F1^4 F6 F4^2 F10 F3^2 F8 F18 F12", None, 2, OneMod4),
    ("ii", None, None, "F2^2 F10", None, "F2^4 F1^4 F6^3 F4^2 F3^2 F8 F18 F12", None, 2, OneMod4),
    (
        "iii", None, None, "F2 F1 F6^2", None,
        "F2^5 F1^3 F6 F4^2 F10 F3^2 F8 F9 F12", Some("F2^5 F1^3 F6 F4^2 F10 F3^2 F8 F18 F12"), 3, TwoPartEight,
    ),
    ("iv", None, None, "F2 F1 F10", None, "F2^5 F1^3 F6^3 F4^2 F3^2 F8 F18 F12", None, 3, TwoPartEight),
    ("v", None, None, "F2 F1 F6 F3", None, "F2^5 F1^3 F6^2 F4^2 F10 F3 F8 F18 F12", None, 3, TwoPartEight),
    (
        "vi", None, None, "F6^3", None,
        "F2^6 F1^4 F4^2 F10 F9^2 F8 F18 F12", Some("F2^6 F1^4 F4^2 F10 F3^2 F8 F18 F12"), 0, Any,
    ),
    ("vii", None, None, "F1^2 F6 F3", None, "F2^6 F1^2 F6^2 F4^2 F10 F3 F8 F18 F12", None, 2, ThreeMod4),
    ("viii", None, None, "F6 F12", None, "F2^6 F1^4 F6^2 F4^2 F10 F3^2 F8 F18", None, 0, Any),
    ("ix", None, None, "F18", None, "F2^6 F1^4 F6^3 F4^2 F10 F3^2 F8 F12", None, 0, Any),
    ("x", None, None, "F6 F3^2", None, "F2^6 F1^4 F6^2 F4^2 F10 F8 F18 F12", None, 0, Any),
    ("xi", Some("A2"), Some("2A2"), "F6^2", Some("chi^(2,1)"), "F2^4 F1^4 F4^2 F10 F3^2 F8 F18 F12", None, 2, OneMod4),
    (
        "xii", Some("A2"), Some("A2"), "F6 F3", Some("chi^(2,1)"),
        "F2^6 F1^2 F6 F4^2 F10 F8 F18 F12", Some("F2^6 F1^2 F6^2 F4^2 F10 F8 F18 F12"), 2, ThreeMod4,
    ),
    ("xiii", Some("D4"), Some("3D4"), "F6", Some("3D4[1]"), "1/2 F2^4 F1^4 F4^2 F10 F8 F18 F12", None, 3, OneMod4),
    ("xiv", Some("D4"), Some("3D4"), "F6", Some("3D4[-1]"), "1/2 F2^4 F1^4 F4^2 F10 F3^2 F8 F18", None, 3, OneMod4),
    ("xv", Some("D4"), Some("3D4"), "F6", Some("phi_{2,1}"), "1/2 F2^6 F1^2 F6^2 F4^2 F10 F8 F18", None, 3, ThreeMod4),
    ("xvi", Some("D4"), Some("3D4"), "F6", Some("phi_{2,2}"), "1/2 F2^6 F1^2 F4^2 F10 F8 F18 F12", None, 3, ThreeMod4),
    (
        "xvii", Some("3A2"), Some("2A2(q^3)"), "1", Some("chi^(2,1)"),
        "F2^4 F1^4 F6 F4^2 F10 F8 F12", Some("F2^4 F1^4 F6 F4^2 F10 F3^2 F8 F12"), 2, OneMod4,
    ),
    ("xviii", Some("E6"), Some("2E6"), "1", Some("2E6[theta]"), "1/3 F2^6 F1^4 F4^2 F10 F8", None, 0, Any),
];

fn product(s: &str) -> CycProduct {
    s.parse().unwrap_or_else(|e| panic!("bad table entry {s}: {e}"))
}

fn build(table: TableKind, raw: &[RawRow]) -> Vec<DefectRow> {
    raw.iter()
        .map(|&(id, delta, cprime, z, label, printed, corrected, defect, condition)| DefectRow {
            table,
            row_id: id.to_string(),
            delta_s: delta.map(str::to_string),
            c_prime: cprime.map(LieSeries::of),
            z_s: product(z),
            lambda_label: label.map(str::to_string),
            printed_product: product(printed),
            corrected_product: corrected.map(product),
            claimed_defect: defect,
            q_condition: condition,
        })
        .collect()
}

/// The `E₆(q)` table.
pub fn e6_table() -> Vec<DefectRow> {
    build(TableKind::E6, E6_ROWS)
}

/// The `²E₆(q)` table, transcribed independently of the `E₆(q)` one.
pub fn twisted_e6_table() -> Vec<DefectRow> {
    build(TableKind::TwistedE6, TWISTED_E6_ROWS)
}
