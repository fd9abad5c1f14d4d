//! The normalized bar complex and the homology groups built on it.
//!
//! Degree `n` has basis `[g_1|...|g_n]` over nonidentity elements, indexed
//! in base `|G|-1` with `g_1` most significant, so basis order is the
//! lexicographic order of tuples.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::budget::{Budgets, Config};
use crate::error::{Error, Result};
use crate::group::{maximal_abelian_subgroups, ElemId, FiniteGroup};
use crate::tuples::{all_commuting_tuples, orbit_representatives};
use crate::zmatrix::{elementary_divisors, kernel_basis, quotient_invariants, AbelianInvariants, Int, IntMatrix, KernelMap};

/// Which commuting tuples feed the alternating-sum generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Z0nMode {
    /// One tuple per conjugation orbit.
    #[default]
    Orbits,
    /// Every commuting tuple.
    AllTuples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarBasis {
    order: usize,
    degree: usize,
    size: usize,
}

impl BarBasis {
    pub fn new(g: &FiniteGroup, degree: usize, budgets: &Budgets) -> Result<Self> {
        let cells = ((g.order() - 1) as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        if cells > budgets.bar_cells {
            return Err(Error::SizeBudgetExceeded { degree, cells, budget: budgets.bar_cells });
        }
        Ok(BarBasis { order: g.order(), degree, size: cells as usize })
    }

    /// Basis for a cochain that already exists, so no budget applies.
    pub(crate) fn unbounded(order: usize, degree: usize) -> Self {
        BarBasis { order, degree, size: (order - 1).pow(degree as u32) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Basis index of a tuple, or `None` if it contains the identity.
    #[inline]
    pub fn index(&self, t: &[ElemId]) -> Option<usize> {
        debug_assert_eq!(t.len(), self.degree);
        let base = self.order - 1;
        let mut idx = 0;
        for &x in t {
            if x == 0 {
                return None;
            }
            idx = idx * base + (x - 1);
        }
        Some(idx)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<ElemId> {
        let base = self.order - 1;
        let mut t = vec![0; self.degree];
        for slot in t.iter_mut().rev() {
            *slot = idx % base + 1;
            idx /= base;
        }
        t
    }
}

/// A chain in degree `degree`, as sorted `(basis index, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub degree: usize,
    pub terms: Vec<(u32, Int)>,
}

impl ChainVector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub(crate) type Timings = BTreeMap<String, f64>;

/// Rank `k` and sparse generators of a sublattice of `Z^k`.
pub type Lattice = (usize, Vec<Vec<(u32, Int)>>);

fn timed<T>(timings: &mut Timings, label: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    *timings.entry(label.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
    Ok(out)
}

/// `D_n : C_n -> C_{n-1}` as a `(|G|-1)^{n-1} x (|G|-1)^n` matrix.
pub fn boundary_matrix(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("boundary in degree 0".into()));
    }
    let src = BarBasis::new(g, n, &cfg.budgets)?;
    let dst = BarBasis::new(g, n - 1, &cfg.budgets)?;
    let columns = cfg.exec.map_range(src.size(), |c| {
        let t = src.tuple(c);
        let mut col: Vec<(u32, i64)> = Vec::with_capacity(n + 1);
        let mut face = Vec::with_capacity(n - 1);
        face.extend_from_slice(&t[1..]);
        if let Some(i) = dst.index(&face) {
            col.push((i as u32, 1));
        }
        for i in 0..n - 1 {
            face.clear();
            face.extend_from_slice(&t[..i]);
            face.push(g.mul(t[i], t[i + 1]));
            face.extend_from_slice(&t[i + 2..]);
            if let Some(r) = dst.index(&face) {
                col.push((r as u32, if i % 2 == 0 { -1 } else { 1 }));
            }
        }
        if let Some(i) = dst.index(&t[..n - 1]) {
            col.push((i as u32, if n.is_multiple_of(2) { 1 } else { -1 }));
        }
        col.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, Int)> = Vec::with_capacity(col.len());
        for (r, v) in col {
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += Int::from(v),
                _ => merged.push((r, Int::from(v))),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        merged
    });
    Ok(IntMatrix::from_columns(dst.size(), columns))
}

/// Permutations of `0..n` with their signs.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), sign));
            return;
        }
        // Choosing the j-th unused element moves it past j smaller unused ones.
        let mut rank = 0;
        for x in 0..n {
            if used[x] {
                continue;
            }
            used[x] = true;
            prefix.push(x);
            rec(prefix, used, if rank % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            used[x] = false;
            rank += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], 1, &mut out);
    out
}

/// `sum_sigma sgn(sigma) [g_sigma(1)|...|g_sigma(n)]` with identity terms dropped.
pub fn alternating_sum(basis: &BarBasis, t: &[ElemId], perms: &[(Vec<usize>, i64)]) -> ChainVector {
    let mut acc: Vec<(u32, i64)> = Vec::with_capacity(perms.len());
    let mut buf = vec![0; t.len()];
    for (p, s) in perms {
        for (slot, &i) in buf.iter_mut().zip(p) {
            *slot = t[i];
        }
        if let Some(idx) = basis.index(&buf) {
            acc.push((idx as u32, *s));
        }
    }
    acc.sort_unstable_by_key(|e| e.0);
    let mut terms: Vec<(u32, Int)> = Vec::new();
    let mut i = 0;
    while i < acc.len() {
        let r = acc[i].0;
        let mut v = 0;
        while i < acc.len() && acc[i].0 == r {
            v += acc[i].1;
            i += 1;
        }
        if v != 0 {
            terms.push((r, Int::from(v)));
        }
    }
    ChainVector { degree: t.len(), terms }
}

/// Generators of `Z_{0n}`: alternating sums over commuting tuples, one per
/// orbit representative (or per tuple under [`Z0nMode::AllTuples`]).
pub fn z0n_generators(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<Vec<ChainVector>> {
    let basis = BarBasis::new(g, n, &cfg.budgets)?;
    let tuples: Vec<Vec<ElemId>> = match cfg.z0n {
        Z0nMode::Orbits => orbit_representatives(g, n, &cfg.budgets, cfg.exec)?.into_iter().map(|o| o.rep).collect(),
        Z0nMode::AllTuples => all_commuting_tuples(g, n, &cfg.budgets, cfg.exec)?,
    };
    let perms = signed_permutations(n);
    Ok(cfg.exec.map_slice(&tuples, |t| alternating_sum(&basis, t, &perms)))
}

/// Which subgroup of cycles is divided out besides the boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quotient {
    /// `H_n = Z_n / B_n`.
    Homology,
    /// `H_{0n} = Z_n / (Z_{0n} + B_n)`.
    H0n,
    /// `Sha_n`: also divide by images of cycles of maximal abelian subgroups.
    Sha,
}

impl Quotient {
    pub fn name(self) -> &'static str {
        match self {
            Quotient::Homology => "homology",
            Quotient::H0n => "h0n",
            Quotient::Sha => "sha",
        }
    }
}

/// Extra cycles for `q`, as sparse chains in `C_n`.
fn extra_cycles(g: &FiniteGroup, n: usize, cfg: &Config, q: Quotient, timings: &mut Timings) -> Result<Vec<Vec<(u32, Int)>>> {
    match q {
        Quotient::Homology => Ok(vec![]),
        Quotient::H0n => timed(timings, "z0n", || Ok(z0n_generators(g, n, cfg)?.into_iter().map(|z| z.terms).collect())),
        Quotient::Sha => timed(timings, "abelian", || abelian_cycles(g, n, cfg)),
    }
}

/// The quotient as `Z^k / L`: `k` and generators of `L` in kernel coordinates.
pub fn relation_lattice(g: &FiniteGroup, n: usize, cfg: &Config, q: Quotient) -> Result<Lattice> {
    relations_timed(g, n, cfg, q, &mut Timings::new())
}

fn relations_timed(
    g: &FiniteGroup,
    n: usize,
    cfg: &Config,
    q: Quotient,
    timings: &mut Timings,
) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let d_n = timed(timings, "boundary", || boundary_matrix(g, n, cfg))?;
    let d_next = timed(timings, "boundary", || boundary_matrix(g, n + 1, cfg))?;
    let map = timed(timings, "kernel", || Ok(KernelMap::new(&d_n)))?;
    drop(d_n);
    let mut rels = timed(timings, "coordinates", || Ok(map.coords_matrix(d_next.columns(), cfg.exec)?.into_columns()))?;
    drop(d_next);
    let extra = extra_cycles(g, n, cfg, q, timings)?;
    rels.extend(timed(timings, "coordinates", || Ok(map.coords_matrix(&extra, cfg.exec)?.into_columns()))?);
    Ok((map.dim(), rels))
}

/// Invariants of `q` with per-stage timings in milliseconds.
pub fn invariants_timed(g: &FiniteGroup, n: usize, cfg: &Config, q: Quotient) -> Result<(AbelianInvariants, Timings)> {
    let mut timings = Timings::new();
    if n == 0 && q == Quotient::Homology {
        return Ok((AbelianInvariants::free(1), timings));
    }
    let (k, rels) = relations_timed(g, n, cfg, q, &mut timings)?;
    let inv = timed(&mut timings, "smith", || Ok(quotient_invariants(k, IntMatrix::from_columns(k, rels))))?;
    Ok((inv, timings))
}

/// `H_n(G, Z) = Z_n / B_n`; `H_0 = Z`.
pub fn homology(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<AbelianInvariants> {
    invariants_timed(g, n, cfg, Quotient::Homology).map(|r| r.0)
}

/// `H_{0n}(G, Z) = Z_n / (Z_{0n} + B_n)`, for `n >= 1`.
pub fn h0n(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<AbelianInvariants> {
    invariants_timed(g, n, cfg, Quotient::H0n).map(|r| r.0)
}

/// `Sha_n(G)`: `H_n` modulo the images of `H_n(B)` over maximal abelian `B`.
pub fn sha_n(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<AbelianInvariants> {
    invariants_timed(g, n, cfg, Quotient::Sha).map(|r| r.0)
}

/// Cycles of every maximal abelian subgroup, pushed into the bar complex of `G`.
fn abelian_cycles(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<Vec<Vec<(u32, Int)>>> {
    let basis = BarBasis::new(g, n, &cfg.budgets)?;
    let mut out = Vec::new();
    for sub in maximal_abelian_subgroups(g) {
        let (b, emb) = sub.to_group(&cfg.budgets);
        if b.order() == 1 {
            continue;
        }
        let local = BarBasis::new(&b, n, &cfg.budgets)?;
        let d = boundary_matrix(&b, n, cfg)?;
        for z in kernel_basis(&d) {
            let mut terms: Vec<(u32, Int)> = z
                .into_iter()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .map(|(i, x)| {
                    let t: Vec<ElemId> = local.tuple(i).into_iter().map(|y| emb[y]).collect();
                    (basis.index(&t).expect("nonidentity stays nonidentity") as u32, x)
                })
                .collect();
            terms.sort_by_key(|e| e.0);
            out.push(terms);
        }
    }
    Ok(out)
}

/// Independent route: since `Z_n` is saturated in `C_n`, the torsion of
/// `Z_n / L` equals that of `C_n / L` for any `L` inside `Z_n`. Needs no
/// kernel coordinates.
pub fn saturated_invariants(g: &FiniteGroup, n: usize, cfg: &Config, q: Quotient) -> Result<AbelianInvariants> {
    if n == 0 {
        return Ok(AbelianInvariants::free(1));
    }
    let d_n = boundary_matrix(g, n, cfg)?;
    let mut lattice = boundary_matrix(g, n + 1, cfg)?;
    for col in extra_cycles(g, n, cfg, q, &mut Timings::new())? {
        lattice.push_column(col);
    }
    let cells = d_n.cols();
    let cycle_rank = cells - elementary_divisors(d_n).len();
    let divisors = elementary_divisors(lattice);
    let rank = divisors.len();
    Ok(AbelianInvariants::from_orders(divisors, cycle_rank - rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;
    use crate::zmatrix::int;

    fn grp(s: &str) -> FiniteGroup {
        group_from_spec(s, &Budgets::default()).unwrap()
    }

    #[test]
    fn basis_round_trip() {
        let g = grp("S3");
        let b = BarBasis::new(&g, 3, &Budgets::default()).unwrap();
        assert_eq!(b.size(), 125);
        for i in 0..b.size() {
            assert_eq!(b.index(&b.tuple(i)), Some(i));
        }
        assert_eq!(b.index(&[1, 0, 2]), None);
    }

    #[test]
    fn small_boundaries() {
        let cfg = Config::default();
        let c2 = grp("C2");
        let d1 = boundary_matrix(&c2, 1, &cfg).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (1, 1));
        assert!(d1.is_zero());
        let d2 = boundary_matrix(&c2, 2, &cfg).unwrap();
        assert_eq!(d2.column(0), &[(0, int(2))]);
        let tight = Config { budgets: Budgets { bar_cells: 10, ..Budgets::default() }, ..Config::default() };
        assert!(matches!(boundary_matrix(&grp("S3"), 2, &tight), Err(Error::SizeBudgetExceeded { .. })));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let cfg = Config::default();
        for (s, top) in [("S3", 4), ("C4", 4), ("Q8", 3), ("C2xC2", 4)] {
            let g = grp(s);
            for n in 1..top {
                let a = boundary_matrix(&g, n, &cfg).unwrap();
                let b = boundary_matrix(&g, n + 1, &cfg).unwrap();
                assert!(a.mul(&b).is_zero(), "{s} n={n}");
            }
        }
    }

    #[test]
    fn sign_table() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|e| e.1).sum::<i64>(), 0);
        assert_eq!(p[0], (vec![0, 1, 2], 1));
        assert_eq!(p[1], (vec![0, 2, 1], -1));
        assert_eq!(p[5], (vec![2, 1, 0], -1));
    }

    #[test]
    fn z0n_examples() {
        let cfg = Config::default();
        let c2 = grp("C2");
        let gens = z0n_generators(&c2, 2, &cfg).unwrap();
        assert!(gens.iter().all(ChainVector::is_zero));
        let v = grp("C2xC2");
        let basis = BarBasis::new(&v, 2, &cfg.budgets).unwrap();
        let z = alternating_sum(&basis, &[1, 2], &signed_permutations(2));
        let a = basis.index(&[1, 2]).unwrap() as u32;
        let b = basis.index(&[2, 1]).unwrap() as u32;
        assert_eq!(z.terms, vec![(a, int(1)), (b, int(-1))]);
        for s in ["S3", "Q8", "D8"] {
            let g = grp(s);
            for n in 2..4 {
                let d = boundary_matrix(&g, n, &cfg).unwrap();
                for z in z0n_generators(&g, n, &cfg).unwrap() {
                    assert!(d.mul_sparse(&z.terms).is_empty());
                }
            }
        }
    }

    #[test]
    fn small_homology() {
        let cfg = Config::default();
        assert_eq!(homology(&grp("C2"), 1, &cfg).unwrap().torsion_u64(), vec![2]);
        assert_eq!(homology(&grp("C2"), 0, &cfg).unwrap(), AbelianInvariants::free(1));
        assert_eq!(homology(&grp("S3"), 1, &cfg).unwrap().torsion_u64(), vec![2]);
        assert!(homology(&grp("S3"), 2, &cfg).unwrap().is_trivial());
        assert_eq!(homology(&grp("C2xC2"), 2, &cfg).unwrap().torsion_u64(), vec![2]);
        assert!(h0n(&grp("C2xC2"), 2, &cfg).unwrap().is_trivial());
        assert_eq!(homology(&grp("Q8"), 3, &cfg).unwrap().torsion_u64(), vec![8]);
        assert!(matches!(h0n(&grp("C2"), 0, &cfg), Err(Error::InvalidArgument(_))));
        assert!(homology(&grp("C1"), 2, &cfg).unwrap().is_trivial());
    }

    #[test]
    fn saturated_route_agrees() {
        let cfg = Config::default();
        for s in ["S3", "C6", "Q8", "C2xC2", "D8"] {
            let g = grp(s);
            for n in 1..4 {
                assert_eq!(homology(&g, n, &cfg).unwrap(), saturated_invariants(&g, n, &cfg, Quotient::Homology).unwrap(), "{s} {n}");
                assert_eq!(h0n(&g, n, &cfg).unwrap(), saturated_invariants(&g, n, &cfg, Quotient::H0n).unwrap(), "{s} {n}");
                assert_eq!(sha_n(&g, n, &cfg).unwrap(), saturated_invariants(&g, n, &cfg, Quotient::Sha).unwrap(), "{s} {n}");
            }
        }
    }

    #[test]
    fn sha_of_abelian_is_trivial() {
        let cfg = Config::default();
        assert!(sha_n(&grp("C2xC2"), 2, &cfg).unwrap().is_trivial());
        assert!(sha_n(&grp("C4"), 3, &cfg).unwrap().is_trivial());
        let s3 = sha_n(&grp("S3"), 3, &cfg).unwrap();
        assert!((Int::from(6) % s3.torsion_order()).is_zero());
    }
}
