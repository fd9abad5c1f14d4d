//! Dijkgraaf-Witten weights and torus partition functions.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::bar::{signed_permutations, BarBasis};
use crate::budget::Config;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::tuples::orbit_representatives;

use super::cochain::CochainVector;

/// `sum_sigma sgn(sigma) omega(t_sigma) mod m`, without checking commutation.
pub(crate) fn alternating_exponent(order: usize, omega: &CochainVector, t: &[ElemId], perms: &[(Vec<usize>, i64)]) -> u64 {
    let m = omega.modulus();
    let basis = BarBasis::unbounded(order, t.len());
    let values = omega.values();
    let mut buf = vec![0; t.len()];
    let mut acc = 0u64;
    for (p, s) in perms {
        for (slot, &i) in buf.iter_mut().zip(p) {
            *slot = t[i];
        }
        if let Some(idx) = basis.index(&buf) {
            let x = values[idx];
            acc = if *s > 0 { (acc + x) % m } else { (acc + m - x) % m };
        }
    }
    acc
}

fn check_tuple(g: &FiniteGroup, omega: &CochainVector, t: &[ElemId]) -> Result<()> {
    if t.len() != omega.degree() {
        return Err(Error::InvalidArgument(format!("{}-tuple for a {}-cochain", t.len(), omega.degree())));
    }
    if let Some(&x) = t.iter().find(|&&x| x >= g.order()) {
        return Err(Error::InvalidArgument(format!("element {x} outside a group of order {}", g.order())));
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if !g.commutes(t[i], t[j]) {
                return Err(Error::NonCommutingTuple);
            }
        }
    }
    Ok(())
}

/// Exponent `k` of the DW phase `exp(2 pi i k / m)` of a commuting tuple.
pub fn dw_weight(g: &FiniteGroup, omega: &CochainVector, t: &[ElemId]) -> Result<u64> {
    check_tuple(g, omega, t)?;
    Ok(alternating_exponent(g.order(), omega, t, &signed_permutations(t.len())))
}

/// Exact weight at each phase exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseHistogram {
    modulus: u64,
    counts: BTreeMap<u64, Ratio<i64>>,
}

impl PhaseHistogram {
    pub fn new(modulus: u64) -> Self {
        PhaseHistogram { modulus, counts: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Nonzero weights keyed by exponent.
    pub fn counts(&self) -> &BTreeMap<u64, Ratio<i64>> {
        &self.counts
    }

    pub fn add(&mut self, exponent: u64, weight: Ratio<i64>) {
        let zero = Ratio::from_integer(0);
        let e = self.counts.entry(exponent % self.modulus).or_insert(zero);
        *e += weight;
        if *e == zero {
            self.counts.remove(&(exponent % self.modulus));
        }
    }

    pub fn merge(&mut self, other: &PhaseHistogram) {
        assert_eq!(self.modulus, other.modulus);
        for (&k, &w) in &other.counts {
            self.add(k, w);
        }
    }

    pub fn total(&self) -> Ratio<i64> {
        self.counts.values().fold(Ratio::from_integer(0), |a, b| a + b)
    }

    /// `sum_k counts(k) exp(2 pi i k / m)`.
    pub fn value(&self) -> Complex64 {
        self.counts
            .iter()
            .map(|(&k, w)| phase(k, self.modulus) * (*w.numer() as f64 / *w.denom() as f64))
            .sum()
    }

    /// The exact value when every phase is real (all exponents are 0 or m/2).
    pub fn exact_real(&self) -> Option<Ratio<i64>> {
        let mut acc = Ratio::from_integer(0);
        for (&k, w) in &self.counts {
            if k == 0 {
                acc += w;
            } else if 2 * k == self.modulus {
                acc -= w;
            } else {
                return None;
            }
        }
        Some(acc)
    }
}

/// `exp(2 pi i k / m)`, exact at quarter turns so real answers stay real.
pub fn phase(k: u64, m: u64) -> Complex64 {
    let k = k % m;
    if (4 * k).is_multiple_of(m) {
        return match 4 * k / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * k as f64 / m as f64)
}

/// A torus partition function: exact histogram plus its complex value.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub histogram: PhaseHistogram,
    pub value: Complex64,
}

struct HistogramJson<'a>(&'a PhaseHistogram);

impl Serialize for HistogramJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.counts.len()))?;
        for (k, w) in &self.0.counts {
            map.serialize_entry(&k.to_string(), &w.to_string())?;
        }
        map.end()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("modulus", &self.histogram.modulus)?;
        map.serialize_entry("histogram", &HistogramJson(&self.histogram))?;
        map.serialize_entry("value", &[self.value.re, self.value.im])?;
        map.end()
    }
}

/// `Z(T^n) = sum over orbits of W(rep) / |C_G(rep)|`.
pub fn dw_partition(g: &FiniteGroup, n: usize, omega: &CochainVector, cfg: &Config) -> Result<Partition> {
    if omega.degree() != n {
        return Err(Error::InvalidArgument(format!("{}-cochain on T^{n}", omega.degree())));
    }
    let reps = orbit_representatives(g, n, &cfg.budgets, cfg.exec)?;
    let perms = signed_permutations(n);
    let parts = cfg.exec.map_slice(&reps, |o| {
        (alternating_exponent(g.order(), omega, &o.rep, &perms), Ratio::new(1, o.stabilizer_order as i64))
    });
    let mut histogram = PhaseHistogram::new(omega.modulus());
    for (k, w) in parts {
        histogram.add(k, w);
    }
    let value = histogram.value();
    Ok(Partition { histogram, value })
}

/// `sum over orbits of W(rep) * amplitude / |C_G(rep)|`, with `sectors`
/// keyed by orbit index in [`orbit_representatives`] order.
pub fn orbifold_partition(
    g: &FiniteGroup,
    n: usize,
    omega: &CochainVector,
    sectors: &BTreeMap<usize, Complex64>,
    cfg: &Config,
) -> Result<Complex64> {
    if omega.degree() != n {
        return Err(Error::InvalidArgument(format!("{}-cochain on T^{n}", omega.degree())));
    }
    let reps = orbit_representatives(g, n, &cfg.budgets, cfg.exec)?;
    let perms = signed_permutations(n);
    let mut z = Complex64::new(0.0, 0.0);
    for (i, o) in reps.iter().enumerate() {
        let amp = sectors.get(&i).ok_or(Error::MissingSector(i))?;
        let k = alternating_exponent(g.order(), omega, &o.rep, &perms);
        z += phase(k, omega.modulus()) * amp / o.stabilizer_order as f64;
    }
    Ok(z)
}

/// Elements `g` with `omega(g, h) = omega(h, g)` for every `h` commuting with `g`.
pub fn omega_regular_elements(g: &FiniteGroup, omega: &CochainVector) -> Result<Vec<ElemId>> {
    if omega.degree() != 2 {
        return Err(Error::InvalidArgument(format!("regularity needs a 2-cochain, got degree {}", omega.degree())));
    }
    let n = g.order();
    Ok((0..n)
        .filter(|&x| (0..n).all(|y| !g.commutes(x, y) || omega.eval(n, &[x, y]) == omega.eval(n, &[y, x])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budgets;
    use crate::group::group_from_spec;
    use crate::torsion::{br_n_mod_m, cohomology_mod_m};

    fn grp(s: &str) -> FiniteGroup {
        group_from_spec(s, &Budgets::default()).unwrap()
    }

    #[test]
    fn weights() {
        let g = grp("C2xC2");
        let zero = CochainVector::zero(&g, 2, 2);
        assert_eq!(dw_weight(&g, &zero, &[1, 2]).unwrap(), 0);
        let mut v = vec![0; 9];
        v[BarBasis::unbounded(4, 2).index(&[1, 2]).unwrap()] = 1;
        let w = CochainVector::from_values(&g, 2, 2, v).unwrap();
        assert_eq!(dw_weight(&g, &w, &[1, 2]).unwrap(), 1);
        assert_eq!(dw_weight(&g, &w, &[2, 1]).unwrap(), 1);
        assert_eq!(dw_weight(&g, &w, &[1, 1]).unwrap(), 0);
        let s3 = grp("S3");
        let z = CochainVector::zero(&s3, 2, 3);
        let bad = (1..6).flat_map(|a| (1..6).map(move |b| (a, b))).find(|&(a, b)| !s3.commutes(a, b)).unwrap();
        assert!(matches!(dw_weight(&s3, &z, &[bad.0, bad.1]), Err(Error::NonCommutingTuple)));
    }

    #[test]
    fn untwisted_partitions() {
        let cfg = Config::default();
        for (s, n, expect) in [("C2xC2", 2, 4), ("C3", 3, 9), ("C2", 1, 1)] {
            let g = grp(s);
            let p = dw_partition(&g, n, &CochainVector::zero(&g, n, 2), &cfg).unwrap();
            assert_eq!(p.histogram.exact_real(), Some(Ratio::from_integer(expect)));
        }
        let s3 = grp("S3");
        let p = dw_partition(&s3, 2, &CochainVector::zero(&s3, 2, 2), &cfg).unwrap();
        assert_eq!(p.histogram.total(), Ratio::from_integer(3));
    }

    #[test]
    fn klein_twisted() {
        let cfg = Config::default();
        let g = grp("C2xC2");
        let h = cohomology_mod_m(&g, 2, 2, &cfg).unwrap();
        let br = br_n_mod_m(&g, 2, 2, &cfg).unwrap();
        let mut seen = vec![];
        for c in h.enumerate(64).unwrap() {
            let w = h.class(&c);
            let z = dw_partition(&g, 2, &w, &cfg).unwrap().histogram.exact_real().unwrap();
            let regular = omega_regular_elements(&g, &w).unwrap().len() == 4;
            let in_br = br.project(&w).is_ok();
            assert_eq!(regular, in_br);
            assert_eq!(z, Ratio::from_integer(if in_br { 4 } else { 1 }));
            seen.push(in_br);
        }
        assert_eq!(seen.iter().filter(|&&b| b).count(), 4);
    }

    #[test]
    fn orbifold_sectors() {
        let cfg = Config::default();
        let g = grp("S3");
        let h = cohomology_mod_m(&g, 3, 6, &cfg).unwrap();
        let w = h.class(&[1]);
        let orbits = orbit_representatives(&g, 3, &cfg.budgets, cfg.exec).unwrap();
        let ones: BTreeMap<usize, Complex64> = (0..orbits.len()).map(|i| (i, Complex64::new(1.0, 0.0))).collect();
        let z = orbifold_partition(&g, 3, &w, &ones, &cfg).unwrap();
        assert!((z - dw_partition(&g, 3, &w, &cfg).unwrap().value).norm() < 1e-9);
        let twos: BTreeMap<usize, Complex64> = ones.iter().map(|(&k, v)| (k, v * 2.0)).collect();
        assert!((orbifold_partition(&g, 3, &w, &twos, &cfg).unwrap() - z * 2.0).norm() < 1e-9);
        let mut missing = ones.clone();
        missing.remove(&3);
        assert!(matches!(orbifold_partition(&g, 3, &w, &missing, &cfg), Err(Error::MissingSector(3))));
    }

    #[test]
    fn json_shape() {
        let mut h = PhaseHistogram::new(4);
        h.add(0, Ratio::new(3, 4));
        h.add(2, Ratio::new(1, 2));
        let p = Partition { value: h.value(), histogram: h };
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["modulus"], 4);
        assert_eq!(v["histogram"]["0"], "3/4");
        assert_eq!(v["histogram"]["2"], "1/2");
        assert!((v["value"][0].as_f64().unwrap() - 0.25).abs() < 1e-12);
    }
}
