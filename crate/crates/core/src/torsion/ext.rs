//! Universal-coefficient bookkeeping between `H^n(G, Z/m)` and `H_n(G, Z)`.

use std::collections::BTreeMap;

use crate::bar::homology;
use crate::budget::Config;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::zmatrix::{gcd, to_u64, AbelianInvariants, Int};

/// Largest elementary divisor of `H_n(G)`, or 1 when it is trivial.
pub fn homology_exponent(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<u64> {
    let h = homology(g, n, cfg)?;
    to_u64(&h.exponent()).ok_or_else(|| Error::InvalidArgument(format!("exponent of {h} exceeds u64")))
}

/// `Ext^1(hprev, Z/m)`: each `Z/d` contributes `Z/gcd(d, m)`.
pub fn ext_invariants(hprev: &AbelianInvariants, m: u64) -> AbelianInvariants {
    let m = Int::from(m);
    AbelianInvariants::from_orders(hprev.torsion().iter().map(|d| gcd(d, &m)), 0)
}

/// Prime-power decomposition: `p -> exponents` of the `p`-primary parts.
fn primary_parts(a: &AbelianInvariants) -> Result<BTreeMap<u64, Vec<u32>>> {
    let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for d in a.torsion() {
        let mut d = to_u64(d).ok_or_else(|| Error::InvalidArgument(format!("torsion coefficient {d} exceeds u64")))?;
        let mut p = 2;
        while p * p <= d {
            let mut e = 0;
            while d % p == 0 {
                d /= p;
                e += 1;
            }
            if e > 0 {
                out.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if d > 1 {
            out.entry(d).or_default().push(1);
        }
    }
    Ok(out)
}

/// Number of factors whose order is divisible by `p^j`, for `j = 1..`.
fn divisible_counts(exps: &[u32]) -> Vec<i64> {
    let top = exps.iter().copied().max().unwrap_or(0);
    (1..=top).map(|j| exps.iter().filter(|&&e| e >= j).count() as i64).collect()
}

/// Removes the direct summand `ext` from `total`.
pub fn subtract_ext(total: &AbelianInvariants, ext: &AbelianInvariants) -> Result<AbelianInvariants> {
    let fail = || Error::NotASummand(ext.to_string(), total.to_string());
    let free_rank = total.free_rank().checked_sub(ext.free_rank()).ok_or_else(fail)?;
    let t = primary_parts(total)?;
    let e = primary_parts(ext)?;
    if e.keys().any(|p| !t.contains_key(p)) {
        return Err(fail());
    }
    let mut orders = Vec::new();
    for (p, texps) in &t {
        let mut left = divisible_counts(texps);
        let right = e.get(p).map(|x| divisible_counts(x)).unwrap_or_default();
        if right.len() > left.len() {
            return Err(fail());
        }
        for (l, r) in left.iter_mut().zip(&right) {
            *l -= r;
        }
        if left.iter().any(|&c| c < 0) || left.windows(2).any(|w| w[1] > w[0]) {
            return Err(fail());
        }
        left.push(0);
        for j in 0..left.len() - 1 {
            let exact = left[j] - left[j + 1];
            let q = Int::from(*p).pow(j + 1);
            orders.extend(std::iter::repeat_n(q, exact as usize));
        }
    }
    Ok(AbelianInvariants::from_orders(orders, free_rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;
    use crate::Budgets;

    fn inv(t: &[u64]) -> AbelianInvariants {
        AbelianInvariants::from_u64(t, 0)
    }

    #[test]
    fn ext_examples() {
        assert!(ext_invariants(&AbelianInvariants::trivial(), 5).is_trivial());
        assert_eq!(ext_invariants(&inv(&[6, 4]), 12), inv(&[4, 6]));
        assert_eq!(ext_invariants(&inv(&[6]), 4), inv(&[2]));
        assert_eq!(ext_invariants(&AbelianInvariants::from_u64(&[3], 2), 6), inv(&[3]));
    }

    #[test]
    fn subtraction() {
        let t = inv(&[2, 8, 8, 2]);
        assert!(subtract_ext(&t, &t).unwrap().is_trivial());
        assert_eq!(subtract_ext(&t, &inv(&[2])).unwrap(), inv(&[2, 8, 8]));
        assert_eq!(subtract_ext(&inv(&[6, 4]), &inv(&[3])).unwrap(), inv(&[2, 4]));
        assert!(matches!(subtract_ext(&inv(&[4]), &inv(&[2])), Err(Error::NotASummand(..))));
        assert!(subtract_ext(&inv(&[2]), &inv(&[3])).is_err());
        assert!(subtract_ext(&inv(&[2]), &inv(&[4])).is_err());
        assert_eq!(subtract_ext(&AbelianInvariants::from_u64(&[2], 2), &AbelianInvariants::free(1)).unwrap(), AbelianInvariants::from_u64(&[2], 1));
    }

    #[test]
    fn exponents() {
        let cfg = Config::default();
        let b = Budgets::default();
        assert_eq!(homology_exponent(&group_from_spec("S3", &b).unwrap(), 2, &cfg).unwrap(), 1);
        assert_eq!(homology_exponent(&group_from_spec("C2^3", &b).unwrap(), 3, &cfg).unwrap(), 2);
        assert_eq!(homology_exponent(&group_from_spec("S3", &b).unwrap(), 3, &cfg).unwrap(), 6);
    }
}
