use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoGroupType {
    Cyclic,
    KleinFour,
    ElemAbelian8,
    Dihedral,
    GeneralizedQuaternion,
    Semidihedral,
    Other,
}

impl fmt::Display for TwoGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TwoGroupType::Cyclic => "cyclic",
            TwoGroupType::KleinFour => "klein_four",
            TwoGroupType::ElemAbelian8 => "elem_abelian_8",
            TwoGroupType::Dihedral => "dihedral",
            TwoGroupType::GeneralizedQuaternion => "generalized_quaternion",
            TwoGroupType::Semidihedral => "semidihedral",
            TwoGroupType::Other => "other",
        };
        f.write_str(s)
    }
}

fn closure(g: &FiniteGroup, gens: &[u32]) -> Vec<u32> {
    let mut set: HashSet<u32> = HashSet::from([0]);
    let mut list = vec![0u32];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(s, x);
            if set.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// A Sylow 2-subgroup, as sorted element indices.
///
/// Grows a 2-subgroup `P` by elements `g ∉ P` that normalize `P` with
/// `g² ∈ P`; a 2-subgroup that is not Sylow always admits such `g` in its
/// normalizer.
pub fn sylow2(g: &FiniteGroup) -> Vec<u32> {
    let target = 1usize << g.order().trailing_zeros();
    let mut gens: Vec<u32> = Vec::new();
    let mut p = vec![0u32];
    while p.len() < target {
        let members: HashSet<u32> = p.iter().copied().collect();
        let next = (0..g.order() as u32).find(|&x| {
            !members.contains(&x)
                && members.contains(&g.mul(x, x))
                && gens.iter().all(|&s| members.contains(&g.conj(x, s)))
        });
        let x = next.expect("a proper 2-subgroup has a larger normalizing 2-element");
        gens.push(x);
        p = closure(g, &gens);
    }
    p
}

/// Isomorphism type of a 2-group given by its elements.
pub fn recognize_2group(g: &FiniteGroup, elems: &[u32]) -> TwoGroupType {
    let n = elems.len() as u32;
    assert!(n.is_power_of_two(), "not a 2-group");
    let orders: Vec<u32> = elems.iter().map(|&x| g.element_order(x)).collect();
    let max = orders.iter().copied().max().unwrap_or(1);
    let involutions = orders.iter().filter(|&&o| o == 2).count() as u32;
    if max == n {
        return TwoGroupType::Cyclic;
    }
    if n == 4 {
        return TwoGroupType::KleinFour;
    }
    if n == 8 && involutions == 7 {
        return TwoGroupType::ElemAbelian8;
    }
    if max != n / 2 {
        return TwoGroupType::Other;
    }
    // a cyclic subgroup of index 2, and y outside it
    let x = elems[orders.iter().position(|&o| o == max).unwrap()];
    let cyclic: HashSet<u32> = (0..max).map(|k| g.pow(x, k)).collect();
    let inverse = g.inv(x);
    let sd = g.pow(x, n / 4 - 1);
    let acts = |target: u32| elems.iter().any(|&y| !cyclic.contains(&y) && g.conj(y, x) == target);
    if acts(inverse) {
        if involutions == n / 2 + 1 {
            return TwoGroupType::Dihedral;
        }
        if involutions == 1 {
            return TwoGroupType::GeneralizedQuaternion;
        }
    }
    if n >= 16 && acts(sd) && involutions == n / 4 + 1 {
        return TwoGroupType::Semidihedral;
    }
    TwoGroupType::Other
}

#[cfg(test)]
mod tests {
    use super::super::build::{build_gl2, build_pgl2, build_psl2, build_sl2, local_groups};
    use super::*;

    fn sylow_type(g: &FiniteGroup) -> (TwoGroupType, usize) {
        let p = sylow2(g);
        (recognize_2group(g, &p), p.len())
    }

    #[test]
    fn sl2_sylow_is_quaternion() {
        for q in [3u32, 5, 7, 9, 11, 13] {
            let g = build_sl2(q).unwrap();
            let (t, n) = sylow_type(&g);
            assert_eq!(t, TwoGroupType::GeneralizedQuaternion, "q={q}");
            assert_eq!(n == 8, q % 8 == 3 || q % 8 == 5, "q={q}");
        }
        assert_eq!(sylow_type(&build_sl2(7).unwrap()).1, 16);
    }

    #[test]
    fn projective_sylows() {
        assert_eq!(sylow_type(&build_pgl2(5).unwrap()), (TwoGroupType::Dihedral, 8));
        assert_eq!(sylow_type(&build_psl2(3).unwrap()), (TwoGroupType::KleinFour, 4));
        assert_eq!(sylow_type(&build_psl2(5).unwrap()), (TwoGroupType::KleinFour, 4));
        assert_eq!(sylow_type(&build_psl2(7).unwrap()), (TwoGroupType::Dihedral, 8));
        // GL₂(3) has semidihedral Sylow 2-subgroups of order 16
        assert_eq!(sylow_type(&build_gl2(3).unwrap()), (TwoGroupType::Semidihedral, 16));
    }

    #[test]
    fn local_sylow_is_elementary() {
        for (_, g) in local_groups() {
            assert_eq!(sylow_type(&g), (TwoGroupType::ElemAbelian8, 8));
        }
    }
}
