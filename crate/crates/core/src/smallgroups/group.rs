use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::GroupError;

pub type Perm = Arc<[u16]>;

/// Largest group the enumerating algorithms accept.
pub const MAX_ORDER: usize = 100_000;

/// A permutation group with its elements listed explicitly; element 0 is the
/// identity. Products compose right to left: `(a·b)(x) = a(b(x))`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    generators: Vec<u32>,
}

pub fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn invert(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out.into()
}

impl FiniteGroup {
    /// Close the given permutations under composition.
    pub fn generate(name: &str, degree: usize, gens: &[Perm]) -> Result<Self, GroupError> {
        for g in gens {
            if g.len() != degree {
                return Err(GroupError::BadGenerator(format!("length {} on {degree} points", g.len())));
            }
            let mut seen = vec![false; degree];
            for &x in g.iter() {
                if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(GroupError::BadGenerator("not a permutation".into()));
                }
            }
        }
        let id: Perm = (0..degree as u16).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(g, &elements[i]);
                if !index.contains_key(&p) {
                    if elements.len() >= MAX_ORDER {
                        return Err(GroupError::TooLarge(MAX_ORDER));
                    }
                    index.insert(p.clone(), elements.len() as u32);
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            degree,
            elements,
            index,
            generators,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn perm(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &[u16]) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = compose(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&p]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.index[&invert(&self.elements[a as usize])]
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let p = &self.elements[a as usize];
        let mut cur = p.clone();
        let mut n = 1;
        while self.index[&cur] != 0 {
            cur = compose(p, &cur);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u32 {
        (0..self.order() as u32)
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, a: u32, k: u32) -> u32 {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(a, acc);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Center, as element indices.
    pub fn center(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&x| self.generators.iter().all(|&g| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    /// Subgroup generated by some elements, as a group in its own right.
    pub fn subgroup(&self, name: &str, elems: &[u32]) -> Result<FiniteGroup, GroupError> {
        let gens: Vec<Perm> = elems.iter().map(|&e| self.elements[e as usize].clone()).collect();
        FiniteGroup::generate(name, self.degree, &gens)
    }

    /// Sampled associativity and inverse checks.
    pub fn check_axioms(&self, samples: usize) -> bool {
        let n = self.order() as u32;
        let mut state = 0x9e37_79b9u32;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 17;
            state ^= state << 5;
            state % n
        };
        (0..samples).all(|_| {
            let (a, b, c) = (next(), next(), next());
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) && self.mul(a, self.inv(a)) == 0
        })
    }

    /// Conjugacy classes: the identity class first, then by element order,
    /// class size and smallest member.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let gen_inv: Vec<u32> = self.generators.iter().map(|&g| self.inv(g)).collect();
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            class_of[start] = id;
            let mut members = vec![start as u32];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for (&g, &gi) in self.generators.iter().zip(&gen_inv) {
                    let y = self.mul(self.mul(g, x), gi) as usize;
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y as u32);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|members| {
                let rep = members[0];
                ConjugacyClass {
                    representative: rep,
                    order: self.element_order(rep),
                    members,
                }
            })
            .collect();
        classes.sort_by_key(|c| (c.representative != 0, c.order, c.members.len(), c.representative));
        classes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: u32,
    pub order: u32,
    pub members: Vec<u32>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// 2-regular means odd element order.
    pub fn is_regular(&self) -> bool {
        self.order % 2 == 1
    }
}
