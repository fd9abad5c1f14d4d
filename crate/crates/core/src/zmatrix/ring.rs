//! The two coefficient rings of the elimination engine: `Z` and `Z/m`.

use std::fmt::Debug;

use super::int::{abs_saturating, gcd_u64, inv_mod, xgcd, xgcd_i128, Int};

/// A principal ideal ring with enough structure for Smith elimination.
pub(crate) trait Ring: Sync + Send {
    type E: Clone + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_unit(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Pivot size; smaller is better and units weigh 1.
    fn weight(&self, a: &Self::E) -> u64;
    /// Some `q` with `q * p = a`.
    fn div_exact(&self, a: &Self::E, p: &Self::E) -> Option<Self::E>;
    /// `(g, s, t, u, v)` with `s a + t b = g`, `u a + v b = 0`, `s v - t u = 1`.
    fn gcdex(&self, a: &Self::E, b: &Self::E) -> [Self::E; 5];
    /// `(c, c a, c^{-1})` for a unit `c` making `c a` canonical.
    fn normalize(&self, a: &Self::E) -> [Self::E; 3];
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Zz;

impl Ring for Zz {
    type E = Int;

    fn zero(&self) -> Int {
        Int::ZERO
    }
    fn one(&self) -> Int {
        Int::ONE
    }
    fn is_zero(&self, a: &Int) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &Int) -> bool {
        a.is_one() || *a == Int::NEG_ONE
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a + b
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a * b
    }
    fn neg(&self, a: &Int) -> Int {
        -a
    }
    fn weight(&self, a: &Int) -> u64 {
        abs_saturating(a)
    }
    fn div_exact(&self, a: &Int, p: &Int) -> Option<Int> {
        if p.is_zero() {
            return a.is_zero().then_some(Int::ZERO);
        }
        if self.is_unit(p) {
            return Some(a * p);
        }
        (a % p).is_zero().then(|| a / p)
    }
    fn gcdex(&self, a: &Int, b: &Int) -> [Int; 5] {
        if b.is_zero() {
            return [a.clone(), Int::ONE, Int::ZERO, Int::ZERO, Int::ONE];
        }
        if a.is_zero() {
            return [b.clone(), Int::ZERO, Int::ONE, Int::NEG_ONE, Int::ZERO];
        }
        let (g, s, t) = xgcd(a, b);
        let u = -(b / &g);
        let v = a / &g;
        [g, s, t, u, v]
    }
    fn normalize(&self, a: &Int) -> [Int; 3] {
        if *a < Int::ZERO {
            [Int::NEG_ONE, -a, Int::NEG_ONE]
        } else {
            [Int::ONE, a.clone(), Int::ONE]
        }
    }
}

/// `Z/m` with `2 <= m < 2^32`, elements reduced into `0..m`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Zmod {
    pub m: u64,
}

impl Zmod {
    pub fn new(m: u64) -> Self {
        assert!((2..1 << 32).contains(&m), "modulus {m} out of range");
        Zmod { m }
    }

    #[inline]
    fn lift(&self, x: i128) -> u64 {
        x.rem_euclid(self.m as i128) as u64
    }
}

impl Ring for Zmod {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        gcd_u64(*a, self.m) == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.m
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    fn weight(&self, a: &u64) -> u64 {
        if *a == 0 {
            u64::MAX
        } else {
            gcd_u64(*a, self.m)
        }
    }
    fn div_exact(&self, a: &u64, p: &u64) -> Option<u64> {
        let g = gcd_u64(*p, self.m);
        if !a.is_multiple_of(g) {
            return None;
        }
        let m1 = self.m / g;
        if m1 == 1 {
            return Some(0);
        }
        let inv = inv_mod((p / g) % m1, m1).expect("cofactor is a unit");
        Some((a / g) % m1 * inv % m1)
    }
    fn gcdex(&self, a: &u64, b: &u64) -> [u64; 5] {
        if *b == 0 {
            return [*a, 1, 0, 0, 1];
        }
        if *a == 0 {
            return [*b, 0, 1, self.m - 1, 0];
        }
        let (g, s, t) = xgcd_i128(*a as i128, *b as i128);
        let u = -((*b as i128) / g);
        let v = (*a as i128) / g;
        [self.lift(g), self.lift(s), self.lift(t), self.lift(u), self.lift(v)]
    }
    fn normalize(&self, a: &u64) -> [u64; 3] {
        if *a == 0 {
            return [1, 0, 1];
        }
        let g = gcd_u64(*a, self.m);
        let m1 = self.m / g;
        let c0 = if m1 == 1 { 0 } else { inv_mod((a / g) % m1, m1).expect("unit") };
        let mut c = c0;
        while gcd_u64(c, self.m) != 1 {
            c += m1;
        }
        let c = c % self.m;
        [c, g, inv_mod(c, self.m).expect("unit")]
    }
}
