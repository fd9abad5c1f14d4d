//! Submodules of `(Z/m)^n`: Howell forms, nullspaces and quotients.

use super::engine::{eliminate, Transforms};
use super::int::{rem_u64, to_u64, xgcd_i128, Int};
use super::invariants::AbelianInvariants;
use super::matrix::IntMatrix;
use super::ring::{Ring, Zmod};
use super::snf::smith_normal_form_with;
use crate::error::{Error, Result};

fn check_modulus(m: u64) -> Result<()> {
    if !(2..1 << 32).contains(&m) {
        return Err(Error::InvalidArgument(format!("modulus {m} must lie in 2..2^32")));
    }
    Ok(())
}

/// `r -= q * p` from column `from` on.
fn sub_mul(r: &mut [u64], q: u64, p: &[u64], from: usize, m: u64) {
    if q == 0 {
        return;
    }
    for (x, y) in r[from..].iter_mut().zip(&p[from..]) {
        if *y != 0 {
            *x = (*x + m - q * y % m) % m;
        }
    }
}

fn scale(r: &mut [u64], c: u64, m: u64) {
    for x in r.iter_mut() {
        *x = *x * c % m;
    }
}

fn lead(r: &[u64], from: usize) -> Option<usize> {
    r[from..].iter().position(|&x| x != 0).map(|i| i + from)
}

/// A submodule of `(Z/m)^n` in Howell form.
///
/// Rows are ordered by pivot column; each pivot entry is a proper divisor
/// of `m`; entries above a pivot `d` lie in `0..d`; and `(m/d)` times a
/// row lies in the span of the rows below it. The form is unique, and
/// greedy reduction decides membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSpan {
    m: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
}

struct Howell {
    m: u64,
    n: usize,
    piv: Vec<Option<Vec<u64>>>,
}

impl Howell {
    fn new(n: usize, m: u64) -> Self {
        Howell { m, n, piv: vec![None; n] }
    }

    fn normalized(&self, mut r: Vec<u64>, c: usize) -> Vec<u64> {
        let [u, _, _] = Zmod::new(self.m).normalize(&r[c]);
        scale(&mut r, u, self.m);
        r
    }

    fn saturation(&self, r: &[u64], c: usize) -> Option<Vec<u64>> {
        let k = self.m / r[c];
        let s: Vec<u64> = r.iter().map(|x| x * k % self.m).collect();
        lead(&s, c).map(|_| s)
    }

    fn insert(&mut self, v: Vec<u64>) {
        let m = self.m;
        let mut work = vec![v];
        while let Some(mut r) = work.pop() {
            let mut from = 0;
            while let Some(c) = lead(&r, from) {
                from = c;
                match self.piv[c].take() {
                    None => {
                        let p = self.normalized(r, c);
                        if let Some(s) = self.saturation(&p, c) {
                            work.push(s);
                        }
                        self.piv[c] = Some(p);
                        break;
                    }
                    Some(p) => {
                        let (a, b) = (p[c], r[c]);
                        if b % a == 0 {
                            sub_mul(&mut r, b / a, &p, c, m);
                            self.piv[c] = Some(p);
                        } else {
                            let (g, s, t) = xgcd_i128(a as i128, b as i128);
                            let (s, t) = (s.rem_euclid(m as i128) as u64, t.rem_euclid(m as i128) as u64);
                            let (bg, ag) = ((b as i128 / g) as u64 % m, (a as i128 / g) as u64 % m);
                            let np: Vec<u64> = p.iter().zip(&r).map(|(x, y)| (s * x % m + t * y % m) % m).collect();
                            let nr: Vec<u64> =
                                p.iter().zip(&r).map(|(x, y)| (bg * x % m + m - ag * y % m) % m).collect();
                            let np = self.normalized(np, c);
                            if let Some(sat) = self.saturation(&np, c) {
                                work.push(sat);
                            }
                            self.piv[c] = Some(np);
                            r = nr;
                        }
                    }
                }
            }
        }
    }

    fn finish(self) -> ModSpan {
        let (m, n) = (self.m, self.n);
        let mut rows: Vec<(usize, Vec<u64>)> =
            self.piv.into_iter().enumerate().filter_map(|(c, p)| p.map(|p| (c, p))).collect();
        for k in 0..rows.len() {
            let (c, pivot_row) = {
                let (c, r) = &rows[k];
                (*c, r.clone())
            };
            let d = pivot_row[c];
            for (_, above) in rows[..k].iter_mut() {
                let q = above[c] / d;
                sub_mul(above, q, &pivot_row, c, m);
            }
        }
        ModSpan { m, n, rows: rows.into_iter().map(|e| e.1).collect() }
    }
}

impl ModSpan {
    /// Span of `rows`; entries are reduced modulo `m`.
    pub fn from_rows(rows: impl IntoIterator<Item = Vec<u64>>, n: usize, m: u64) -> Result<Self> {
        check_modulus(m)?;
        let mut h = Howell::new(n, m);
        for mut r in rows {
            if r.len() != n {
                return Err(Error::InvalidArgument(format!("row of length {} in a space of width {n}", r.len())));
            }
            for x in r.iter_mut() {
                *x %= m;
            }
            h.insert(r);
        }
        Ok(h.finish())
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Greedy reduction; the result is zero exactly for members.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.m;
        let mut r: Vec<u64> = v.iter().map(|x| x % m).collect();
        for p in &self.rows {
            let c = lead(p, 0).expect("nonzero Howell row");
            let q = r[c] / p[c];
            sub_mul(&mut r, q, p, c, m);
        }
        r
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.n && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Number of elements.
    pub fn order(&self) -> Int {
        self.rows
            .iter()
            .map(|p| Int::from(self.m / p[lead(p, 0).expect("nonzero row")]))
            .fold(Int::ONE, |a, b| a * b)
    }
}

/// `{x : a x = 0 (mod m)}` in Howell form.
pub fn nullspace_mod_m(a: &IntMatrix, m: u64) -> Result<ModSpan> {
    check_modulus(m)?;
    let ring = Zmod::new(m);
    let cols: Vec<Vec<(u32, u64)>> = a
        .columns()
        .iter()
        .map(|col| col.iter().map(|(r, x)| (*r, rem_u64(x, m))).filter(|e| e.1 != 0).collect())
        .collect();
    let e = eliminate(&ring, a.rows(), cols, Transforms { v: true, ..Transforms::NONE });
    let v = e.v.expect("requested V");
    let n = a.cols();
    let dense = |line: &[(u32, u64)], k: u64| {
        let mut d = vec![0u64; n];
        for (i, x) in line {
            d[*i as usize] = x * k % m;
        }
        d
    };
    let mut gens = Vec::new();
    for (p, &c) in e.col_order.iter().enumerate() {
        match e.divisors.get(p) {
            Some(&1) => {}
            Some(&d) => gens.push(dense(&v[c], m / d)),
            None => gens.push(dense(&v[c], 1)),
        }
    }
    ModSpan::from_rows(gens, n, m)
}

/// The quotient `space / subspace` of two submodules of `(Z/m)^n`.
#[derive(Clone, Debug)]
pub struct ModQuotient {
    m: u64,
    n: usize,
    k: usize,
    augmented: ModSpan,
    u: IntMatrix,
    positions: Vec<usize>,
    orders: Vec<u64>,
    generators: Vec<Vec<u64>>,
    invariants: AbelianInvariants,
}

impl ModQuotient {
    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    /// Orders of the cyclic factors, matching [`ModQuotient::generators`].
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Representatives in `space` of the standard generators of the quotient.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Coordinates of the class of `v`, the `i`-th taken modulo `orders()[i]`.
    pub fn project(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.n {
            return Err(Error::InvalidArgument(format!("vector of length {} in width {}", v.len(), self.n)));
        }
        let mut aug = v.to_vec();
        aug.resize(self.n + self.k, 0);
        let r = self.augmented.reduce(&aug);
        if r[..self.n].iter().any(|&x| x != 0) {
            return Err(Error::NotInModule);
        }
        let x: Vec<Int> = r[self.n..].iter().map(|&t| Int::from((self.m - t) % self.m)).collect();
        let ux = self.u.mul_vec(&x);
        Ok(self
            .positions
            .iter()
            .zip(&self.orders)
            .map(|(&p, &d)| rem_u64(&ux[p], d))
            .collect())
    }

    /// `sum coords[i] * generators[i]` modulo `m`.
    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (c, g) in coords.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(g) {
                *o = (*o + c % self.m * x) % self.m;
            }
        }
        out
    }
}

/// `space / subspace` over `Z/m`, both given by generating rows of width `n`.
pub fn module_quotient_mod_m(space: &[Vec<u64>], subspace: &[Vec<u64>], n: usize, m: u64) -> Result<ModQuotient> {
    let hs = ModSpan::from_rows(space.iter().cloned(), n, m)?;
    let sub = ModSpan::from_rows(subspace.iter().cloned(), n, m)?;
    if !sub.rows().iter().all(|t| hs.contains(t)) {
        return Err(Error::NotSubmodule);
    }
    let k = hs.len();
    let mut aug_rows = Vec::with_capacity(k + sub.len());
    for (j, s) in hs.rows().iter().enumerate() {
        let mut r = s.clone();
        r.resize(n + k, 0);
        r[n + j] = 1;
        aug_rows.push(r);
    }
    for t in sub.rows() {
        let mut r = t.clone();
        r.resize(n + k, 0);
        aug_rows.push(r);
    }
    let augmented = ModSpan::from_rows(aug_rows, n + k, m)?;
    let mut columns: Vec<Vec<(u32, Int)>> = Vec::new();
    for r in augmented.rows() {
        if lead(r, 0).expect("nonzero") >= n {
            columns.push(r[n..].iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &x)| (i as u32, Int::from(x))).collect());
        }
    }
    for i in 0..k {
        columns.push(vec![(i as u32, Int::from(m))]);
    }
    let rel = IntMatrix::from_columns(k, columns);
    let sf = smith_normal_form_with(&rel, Transforms { u: true, u_inv: true, ..Transforms::NONE });
    let u = sf.u.expect("requested U");
    let u_inv = sf.u_inv.expect("requested U^{-1}");
    let mut positions = Vec::new();
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for (p, d) in sf.divisors.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        positions.push(p);
        orders.push(to_u64(d).expect("divisor of m"));
        let mut g = vec![0u64; n];
        for (j, c) in u_inv.column(p) {
            let c = rem_u64(c, m);
            for (o, x) in g.iter_mut().zip(&hs.rows()[*j as usize]) {
                *o = (*o + c * x) % m;
            }
        }
        generators.push(g);
    }
    let invariants = AbelianInvariants::from_u64(&orders, 0);
    Ok(ModQuotient { m, n, k, augmented, u, positions, orders, generators, invariants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nullspace_examples() {
        let z = nullspace_mod_m(&IntMatrix::zeros(2, 3), 5).unwrap();
        assert_eq!(z.rows(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let z = nullspace_mod_m(&IntMatrix::from_dense(&[vec![2]]), 4).unwrap();
        assert_eq!(z.rows(), &[vec![2]]);
        assert!(nullspace_mod_m(&IntMatrix::zeros(1, 1), 1).is_err());
    }

    #[test]
    fn howell_is_canonical() {
        let a = ModSpan::from_rows([vec![2, 3], vec![4, 0]], 2, 6).unwrap();
        let b = ModSpan::from_rows([vec![4, 0], vec![2, 3], vec![0, 3]], 2, 6).unwrap();
        assert_eq!(a, b);
        // (2,3) generates; 3*(2,3) = (0,3) must appear as its own row.
        assert_eq!(a.rows(), &[vec![2, 0], vec![0, 3]]);
        assert_eq!(a.order(), Int::from(6));
    }

    #[test]
    fn quotient_examples() {
        let q = module_quotient_mod_m(&[vec![1]], &[vec![2]], 1, 4).unwrap();
        assert_eq!(q.invariants().torsion_u64(), vec![2]);
        assert_eq!(q.project(&[3]).unwrap(), vec![1]);
        assert_eq!(q.project(&[2]).unwrap(), vec![0]);
        let q = module_quotient_mod_m(&[vec![1, 2]], &[vec![3, 0]], 2, 4);
        assert!(matches!(q, Err(Error::NotSubmodule)));
        let q = module_quotient_mod_m(&[vec![1, 0], vec![0, 1]], &[vec![1, 0], vec![0, 1]], 2, 6).unwrap();
        assert!(q.invariants().is_trivial());
        let q = module_quotient_mod_m(&[vec![2, 0]], &[vec![2, 0]], 2, 4).unwrap();
        assert!(matches!(q.project(&[1, 0]), Err(Error::NotInModule)));
    }

    fn mat_mod(a: &IntMatrix, x: &[u64], m: u64) -> Vec<u64> {
        let xi: Vec<Int> = x.iter().map(|&v| Int::from(v)).collect();
        a.mul_vec(&xi).iter().map(|v| rem_u64(v, m)).collect()
    }

    proptest! {
        #[test]
        fn nullspace_annihilated(m in 2u64..13, seed in prop::collection::vec(-5i64..6, 40)) {
            let dense: Vec<Vec<i64>> = (0..5).map(|r| seed[r * 8..r * 8 + 8].to_vec()).collect();
            let a = IntMatrix::from_dense(&dense);
            let z = nullspace_mod_m(&a, m).unwrap();
            for r in z.rows() {
                prop_assert!(mat_mod(&a, r, m).iter().all(|&x| x == 0));
            }
            // canonical: rebuilding from its own rows is a fixed point
            prop_assert_eq!(ModSpan::from_rows(z.rows().iter().cloned(), 8, m).unwrap(), z);
        }

        #[test]
        fn nullspace_is_complete_small(m in 2u64..7, seed in prop::collection::vec(0u64..7, 6)) {
            let dense: Vec<Vec<i64>> = (0..2).map(|r| seed[r * 3..r * 3 + 3].iter().map(|&x| x as i64).collect()).collect();
            let a = IntMatrix::from_dense(&dense);
            let z = nullspace_mod_m(&a, m).unwrap();
            let mut count = 0u64;
            for x0 in 0..m { for x1 in 0..m { for x2 in 0..m {
                let x = [x0, x1, x2];
                let inside = mat_mod(&a, &x, m).iter().all(|&v| v == 0);
                prop_assert_eq!(inside, z.contains(&x));
                count += inside as u64;
            }}}
            prop_assert_eq!(Int::from(count), z.order());
        }
    }
}
