use super::GroupError;

/// A finite field of odd order `p` or `p²`, with explicit tables.
/// Elements are `0..q`; in `GF(p²) = GF(p)[t]/(t² - n)` the element
/// `a + b·t` is stored as `a + p·b`.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: u32,
    p: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl SmallField {
    /// Supports odd primes and squares of odd primes up to 13².
    pub fn new(q: u32) -> Result<Self, GroupError> {
        let (p, ext) = if q % 2 == 1 && is_prime(q) {
            (q, false)
        } else {
            match (3..=13).find(|&p| is_prime(p) && p * p == q) {
                Some(p) => (p, true),
                None => return Err(GroupError::UnsupportedField(q)),
            }
        };
        let qq = q as usize;
        let mut add = vec![0u16; qq * qq];
        let mut mul = vec![0u16; qq * qq];
        // smallest quadratic non-residue mod p
        let n = (2..p).find(|&n| (1..p).all(|x| x * x % p != n)).unwrap_or(0);
        for x in 0..q {
            for y in 0..q {
                let (s, m) = if ext {
                    let (a, b, c, d) = (x % p, x / p, y % p, y / p);
                    let s = (a + c) % p + p * ((b + d) % p);
                    let re = (a * c + n * b * d) % p;
                    let im = (a * d + b * c) % p;
                    (s, re + p * im)
                } else {
                    ((x + y) % p, x * y % p)
                };
                add[(x * q + y) as usize] = s as u16;
                mul[(x * q + y) as usize] = m as u16;
            }
        }
        Ok(SmallField { q, p, add, mul })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.q + y) as usize] as u32
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.q + y) as usize] as u32
    }

    pub fn neg(&self, x: u32) -> u32 {
        (0..self.q).find(|&y| self.add(x, y) == 0).unwrap()
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        (1..self.q).find(|&y| self.mul(x, y) == 1)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (2..self.q)
            .find(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    k += 1;
                }
                k == self.q - 1
            })
            .unwrap_or(1)
    }

    /// An additive basis over the prime field.
    pub fn additive_basis(&self) -> Vec<u32> {
        if self.q == self.p {
            vec![1]
        } else {
            vec![1, self.p]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [3u32, 5, 7, 9, 11, 13, 25] {
            let f = SmallField::new(q).unwrap();
            for x in 0..q {
                if x != 0 {
                    let y = f.inv(x).expect("nonzero elements are invertible");
                    assert_eq!(f.mul(x, y), 1);
                }
                for y in 0..q {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    for z in [1, q - 1] {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
        assert!(SmallField::new(8).is_err());
        assert!(SmallField::new(15).is_err());
    }
}
