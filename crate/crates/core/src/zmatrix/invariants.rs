use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::int::{gcd, to_u64, Int};
use super::matrix::IntMatrix;
use super::snf::elementary_divisors;

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    torsion: Vec<Int>,
    free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { torsion: Vec::new(), free_rank: rank }
    }

    /// Canonical form of `Z^free_rank + sum Z/o_i` for arbitrary orders;
    /// orders 0 count as free factors.
    pub fn from_orders(orders: impl IntoIterator<Item = Int>, free_rank: usize) -> Self {
        let mut free_rank = free_rank;
        let mut d: Vec<Int> = Vec::new();
        for o in orders {
            let o = if o < Int::ZERO { -o } else { o };
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                d.push(o);
            }
        }
        for a in 0..d.len() {
            for b in a + 1..d.len() {
                if !(&d[b] % &d[a]).is_zero() {
                    let g = gcd(&d[a], &d[b]);
                    let l = &d[a] / &g * &d[b];
                    d[a] = g;
                    d[b] = l;
                }
            }
        }
        d.retain(|x| !x.is_one());
        AbelianInvariants { torsion: d, free_rank }
    }

    pub fn from_u64(orders: &[u64], free_rank: usize) -> Self {
        Self::from_orders(orders.iter().map(|&o| Int::from(o)), free_rank)
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Torsion coefficients as machine integers.
    ///
    /// # Panics
    /// If a coefficient exceeds `u64`.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| to_u64(d).expect("torsion coefficient fits u64")).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().fold(Int::ONE, |acc, d| acc * d)
    }

    /// Largest torsion coefficient, or 1.
    pub fn exponent(&self) -> Int {
        self.torsion.last().cloned().unwrap_or(Int::ONE)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if k == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{k}") });
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match to_u64(d) {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("torsion", &torsion)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.end()
    }
}

/// Invariants of `Z^k / im(relations)`.
pub fn quotient_invariants(k: usize, relations: IntMatrix) -> AbelianInvariants {
    assert_eq!(relations.rows(), k, "relation vectors must live in Z^k");
    let divisors = elementary_divisors(relations);
    let rank = divisors.len();
    AbelianInvariants::from_orders(divisors, k - rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_orders() {
        let a = AbelianInvariants::from_u64(&[6, 4], 0);
        assert_eq!(a.torsion_u64(), vec![2, 12]);
        assert_eq!(a.to_string(), "Z/2 + Z/12");
        let b = AbelianInvariants::from_u64(&[2, 8, 8, 2, 1], 1);
        assert_eq!(b.torsion_u64(), vec![2, 2, 8, 8]);
        assert_eq!(b.to_string(), "Z + (Z/2)^2 + (Z/8)^2");
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"torsion":[2,2,8,8],"free_rank":1}"#);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_invariants(3, IntMatrix::zeros(3, 0)), AbelianInvariants::free(3));
        let q = quotient_invariants(1, IntMatrix::from_dense(&[vec![2]]));
        assert_eq!(q.torsion_u64(), vec![2]);
        let q = quotient_invariants(2, IntMatrix::from_dense(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(q.torsion_u64(), vec![2, 4]);
    }
}
