//! `H^n(G, Z/m)` and its untwisted subgroup `Br^n(G, Z/m)`.

use crate::bar::{boundary_matrix, signed_permutations};
use crate::budget::Config;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::tuples::orbit_representatives;
use crate::zmatrix::{kernel_basis, module_quotient_mod_m, nullspace_mod_m, rem_u64, AbelianInvariants, Int, IntMatrix, ModQuotient};

use super::cochain::CochainVector;
use super::dw::alternating_exponent;

/// A subgroup of `H^n(G, Z/m)` with cocycle representatives of its generators.
#[derive(Clone, Debug)]
pub struct CohomologyClassSet {
    modulus: u64,
    degree: usize,
    order: usize,
    basis: Vec<CochainVector>,
    invariants: AbelianInvariants,
    orders: Vec<u64>,
    cocycles: ModQuotient,
    /// For a proper subgroup: its position inside the class coordinates of `cocycles`.
    sub: Option<ModQuotient>,
}

impl CohomologyClassSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cocycle representatives, one per cyclic factor.
    pub fn basis(&self) -> &[CochainVector] {
        &self.basis
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    /// Orders of the generators in [`CohomologyClassSet::basis`].
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of classes, saturating at `u128::MAX`.
    pub fn class_count(&self) -> u128 {
        self.orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128)).unwrap_or(u128::MAX)
    }

    /// Coordinates of the class of a cocycle.
    ///
    /// `NotInModule` if `omega` is not a cocycle, or for a subgroup, if its
    /// class lies outside it.
    pub fn project(&self, omega: &CochainVector) -> Result<Vec<u64>> {
        if omega.degree() != self.degree || omega.modulus() != self.modulus {
            return Err(Error::InvalidArgument(format!(
                "cochain of degree {} mod {} against classes of degree {} mod {}",
                omega.degree(),
                omega.modulus(),
                self.degree,
                self.modulus
            )));
        }
        let c = self.cocycles.project(omega.values())?;
        match &self.sub {
            Some(sub) => sub.project(&c),
            None => Ok(c),
        }
    }

    /// `sum coords[i] * basis[i]`.
    pub fn class(&self, coords: &[u64]) -> CochainVector {
        let mut acc = CochainVector::from_values_unchecked(self.degree, self.modulus, vec![0; self.cochain_len()]);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(*c));
        }
        acc
    }

    fn cochain_len(&self) -> usize {
        (self.order - 1).pow(self.degree as u32)
    }

    /// Every coordinate vector, in mixed-radix order; `BudgetExceeded` above `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<Vec<u64>>> {
        let total = self.class_count();
        if total > cap {
            return Err(Error::BudgetExceeded { what: "cohomology classes", needed: total, cap });
        }
        let mut out = vec![vec![]];
        for &o in &self.orders {
            out = out.into_iter().flat_map(|p| (0..o).map(move |x| [p.as_slice(), &[x]].concat())).collect();
        }
        Ok(out)
    }
}

fn check_args(n: usize, m: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!("modulus {m} must be at least 2")));
    }
    Ok(())
}

fn dense_mod(line: &[(u32, Int)], width: usize, m: u64) -> Vec<u64> {
    let mut v = vec![0u64; width];
    for (i, x) in line {
        v[*i as usize] = rem_u64(x, m);
    }
    v
}

/// `H^n(G, Z/m) = Z^n / B^n` computed from the bar complex.
pub fn cohomology_mod_m(g: &FiniteGroup, n: usize, m: u64, cfg: &Config) -> Result<CohomologyClassSet> {
    check_args(n, m)?;
    let d_n = boundary_matrix(g, n, cfg)?;
    let d_next = boundary_matrix(g, n + 1, cfg)?;
    let width = d_n.cols();
    let cocycles = nullspace_mod_m(&d_next.transpose(), m)?;
    let coboundaries: Vec<Vec<u64>> = d_n
        .row_lists()
        .iter()
        .map(|r| dense_mod(r, width, m))
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let q = module_quotient_mod_m(cocycles.rows(), &coboundaries, width, m)?;
    let basis = q
        .generators()
        .iter()
        .map(|v| CochainVector::from_values_unchecked(n, m, v.clone()))
        .collect();
    Ok(CohomologyClassSet {
        modulus: m,
        degree: n,
        order: g.order(),
        basis,
        invariants: q.invariants().clone(),
        orders: q.orders().to_vec(),
        cocycles: q,
        sub: None,
    })
}

/// Columns: classes; rows: orbit representatives; entries: DW exponents.
fn weight_matrix(g: &FiniteGroup, h: &CohomologyClassSet, cfg: &Config) -> Result<IntMatrix> {
    let n = h.degree();
    let reps = orbit_representatives(g, n, &cfg.budgets, cfg.exec)?;
    let perms = signed_permutations(n);
    let cols = cfg.exec.map_slice(h.basis(), |w| {
        reps.iter()
            .enumerate()
            .map(|(r, o)| (r as u32, alternating_exponent(g.order(), w, &o.rep, &perms)))
            .filter(|e| e.1 != 0)
            .map(|(r, x)| (r, Int::from(x)))
            .collect()
    });
    Ok(IntMatrix::from_columns(reps.len(), cols))
}

/// Class coordinates killing every integral `n`-cycle: the Ext part.
fn ext_part(g: &FiniteGroup, h: &CohomologyClassSet, cfg: &Config) -> Result<Vec<Vec<u64>>> {
    let m = h.modulus();
    let d_n = boundary_matrix(g, h.degree(), cfg)?;
    let cycles = kernel_basis(&d_n);
    let cols: Vec<Vec<(u32, Int)>> = cfg.exec.map_slice(h.basis(), |w| {
        cycles
            .iter()
            .enumerate()
            .map(|(r, z)| {
                let s = z.iter().zip(w.values()).fold(0u64, |acc, (c, x)| (acc + rem_u64(c, m) * x) % m);
                (r as u32, s)
            })
            .filter(|e| e.1 != 0)
            .map(|(r, x)| (r, Int::from(x)))
            .collect()
    });
    Ok(nullspace_mod_m(&IntMatrix::from_columns(cycles.len(), cols), m)?.rows().to_vec())
}

/// `Br^n(G, Z/m)`: classes whose alternating sums vanish on every
/// commuting `n`-tuple, solved as a linear system in class coordinates.
///
/// Also checks that every class vanishing on all integral cycles is
/// untwisted, failing with `VerificationMismatch` otherwise.
pub fn br_n_mod_m(g: &FiniteGroup, n: usize, m: u64, cfg: &Config) -> Result<CohomologyClassSet> {
    let h = cohomology_mod_m(g, n, m, cfg)?;
    let k = h.basis().len();
    if k == 0 {
        return Ok(h);
    }
    let a = weight_matrix(g, &h, cfg)?;
    let untwisted = nullspace_mod_m(&a, m)?;
    for e in ext_part(g, &h, cfg)? {
        if !untwisted.contains(&e) {
            return Err(Error::VerificationMismatch(format!("Ext-part class {e:?} has a nontrivial DW weight")));
        }
    }
    let relations: Vec<Vec<u64>> = h
        .orders()
        .iter()
        .enumerate()
        .map(|(i, &o)| {
            let mut v = vec![0; k];
            v[i] = o % m;
            v
        })
        .collect();
    let sub = module_quotient_mod_m(untwisted.rows(), &relations, k, m)?;
    let basis = sub.generators().iter().map(|c| h.class(c)).collect();
    Ok(CohomologyClassSet {
        basis,
        invariants: sub.invariants().clone(),
        orders: sub.orders().to_vec(),
        sub: Some(sub),
        ..h
    })
}
