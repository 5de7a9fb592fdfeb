//! Combined 2-defects of unipotent characters of the isolated centralizers
//! in type F₄.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::TableError;
use crate::liedata::{self, f4_defect_claim};
use crate::report::{Check, Report};
use crate::symbols::{defect_table, ClassicalType};

/// A set of possible defects: finitely many exact values, plus possibly
/// every value from some bound on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectSet {
    pub values: BTreeSet<i64>,
    pub at_least: Option<i64>,
}

impl DefectSet {
    pub fn exact(values: impl IntoIterator<Item = i64>) -> Self {
        DefectSet {
            values: values.into_iter().collect(),
            at_least: None,
        }
    }

    pub fn min(&self) -> Option<i64> {
        let v = self.values.iter().next().copied();
        match (v, self.at_least) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Possible values of `x + y` with `x ∈ self`, `y ∈ other`.
    pub fn sum(&self, other: &DefectSet) -> DefectSet {
        let values = self
            .values
            .iter()
            .flat_map(|a| other.values.iter().map(move |b| a + b))
            .collect();
        let tails = [
            self.at_least.zip(other.min()).map(|(a, b)| a + b),
            other.at_least.zip(self.min()).map(|(a, b)| a + b),
        ];
        DefectSet {
            values,
            at_least: tails.into_iter().flatten().min(),
        }
    }

    /// Whether `v` may occur.
    pub fn may_contain(&self, v: i64) -> bool {
        self.values.contains(&v) || self.at_least.is_some_and(|t| v >= t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    Classical(ClassicalType, u32),
    F4,
}

impl Component {
    pub fn name(self) -> String {
        match self {
            Component::Classical(ty, l) => format!("{}{l}", ty.name()),
            Component::F4 => "F4".into(),
        }
    }

    pub fn defects(self, q: i64) -> Result<DefectSet, TableError> {
        match self {
            Component::Classical(ty, l) => {
                let table = defect_table(ty, l, q)?;
                Ok(DefectSet::exact(table.iter().map(|r| r.defect)))
            }
            Component::F4 => {
                let claim = f4_defect_claim();
                Ok(DefectSet {
                    values: claim.exact.keys().map(|&d| d as i64).collect(),
                    at_least: Some(claim.others_at_least as i64),
                })
            }
        }
    }
}

/// The isolated centralizer types of F₄ in odd characteristic.
pub fn isolated_centralizers() -> Vec<(&'static str, Vec<Component>)> {
    use ClassicalType::*;
    use Component::Classical as Cl;
    vec![
        ("F4", vec![Component::F4]),
        ("B4", vec![Cl(B, 4)]),
        ("C3xA1", vec![Cl(C, 3), Cl(A, 1)]),
        ("A3xA1", vec![Cl(A, 3), Cl(A, 1)]),
        ("2A3xA1", vec![Cl(TwistedA, 3), Cl(A, 1)]),
        ("A2xA2", vec![Cl(A, 2), Cl(A, 2)]),
        ("2A2x2A2", vec![Cl(TwistedA, 2), Cl(TwistedA, 2)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F4Summary {
    pub q: i64,
    pub centralizers: Vec<(String, DefectSet)>,
}

impl F4Summary {
    pub fn holds(&self) -> bool {
        self.centralizers
            .iter()
            .all(|(_, s)| !s.may_contain(2) && !s.may_contain(3))
    }
}

pub fn verify_f4_isolated(q: i64) -> Result<(F4Summary, Report), TableError> {
    if q < 3 || q % 2 == 0 {
        return Err(TableError::BadQ(q));
    }
    let mut report = Report::new("f4");
    let mut centralizers = Vec::new();
    for (name, comps) in isolated_centralizers() {
        let mut total = DefectSet::exact([0]);
        let mut parts = Vec::new();
        for c in comps {
            let s = c.defects(q)?;
            parts.push(format!("{}>={}", c.name(), s.min().unwrap_or(0)));
            total = total.sum(&s);
        }
        let ok = !total.may_contain(2) && !total.may_contain(3);
        report.push(Check::new(
            format!("f4.q{q}.{name}"),
            "isolated centralizers in F4 carry no character of 2-defect 2 or 3",
            ok,
            format!("{} -> min {}", parts.join(" + "), total.min().unwrap_or(0)),
        ));
        centralizers.push((name.to_string(), total));
    }
    let catalog = liedata::catalog();
    for label in ["F4:F4[i]", "F4:F4[-i]"] {
        let entry = liedata::lookup_in(&catalog, label)?;
        let d = entry.defect(q)?;
        report.push(Check::new(
            format!("f4.q{q}.{}", entry.label),
            "F4[i] and F4[-i] have 2-defect 5",
            d == 5,
            format!("defect {d}"),
        ));
    }
    report.note("F4[i], F4[-i] degrees come from standard unipotent degree tables, not from the checked claims");
    Ok((F4Summary { q, centralizers }, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_set_sums() {
        let a = DefectSet::exact([1, 4]);
        let b = DefectSet {
            values: BTreeSet::from([0, 5]),
            at_least: Some(7),
        };
        let s = a.sum(&b);
        assert_eq!(s.values, BTreeSet::from([1, 4, 6, 9]));
        assert_eq!(s.at_least, Some(8));
        assert!(s.may_contain(100));
        assert!(!s.may_contain(7));
        assert_eq!(s.min(), Some(1));
    }

    #[test]
    fn isolated_check() {
        for q in [3, 5, 7] {
            let (summary, report) = verify_f4_isolated(q).unwrap();
            assert!(summary.holds(), "q={q}");
            assert!(report.passed());
        }
        let (s, _) = verify_f4_isolated(3).unwrap();
        let get = |n: &str| s.centralizers.iter().find(|(m, _)| m == n).unwrap().1.clone();
        assert!(get("B4").min().unwrap() >= 8);
        assert!(get("A2xA2").min().unwrap() >= 4);
        assert_eq!(get("F4").values, BTreeSet::from([0, 5]));
        assert!(verify_f4_isolated(4).is_err());
    }
}
