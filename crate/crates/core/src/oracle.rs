//! Brute-force cross-checks that share no code with the elimination engine.
//!
//! Each routine is slow and only meant for small inputs: naive tuple and
//! orbit enumeration, determinantal divisors, coset enumeration on a
//! Hermite basis, abelianization, and full-sum DW partition functions.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::Ratio;

use crate::bar::{invariants_timed, relation_lattice, saturated_invariants, signed_permutations, Quotient, Z0nMode};
use crate::budget::Config;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::torsion::{CochainVector, PhaseHistogram};
use crate::zmatrix::{gcd, AbelianInvariants, Int};

fn for_each_tuple(order: usize, n: usize, mut f: impl FnMut(&[ElemId])) {
    let mut t = vec![0; n];
    loop {
        f(&t);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < order {
                break;
            }
            t[i] = 0;
        }
    }
}

fn pairwise_commuting(g: &FiniteGroup, t: &[ElemId]) -> bool {
    (0..t.len()).all(|i| (i + 1..t.len()).all(|j| g.mul(t[i], t[j]) == g.mul(t[j], t[i])))
}

/// Every commuting `n`-tuple, by scanning all of `G^n`.
pub fn commuting_tuples(g: &FiniteGroup, n: usize) -> Vec<Vec<ElemId>> {
    let mut out = Vec::new();
    for_each_tuple(g.order(), n, |t| {
        if pairwise_commuting(g, t) {
            out.push(t.to_vec());
        }
    });
    out
}

/// Conjugation orbits of commuting tuples as sorted member lists.
pub fn tuple_orbits(g: &FiniteGroup, n: usize) -> Vec<Vec<Vec<ElemId>>> {
    let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
    let mut orbits = Vec::new();
    for t in commuting_tuples(g, n) {
        if seen.contains(&t) {
            continue;
        }
        let mut orbit: Vec<Vec<ElemId>> = (0..g.order())
            .map(|k| {
                let ki = g.inv(k);
                t.iter().map(|&x| g.mul(g.mul(k, x), ki)).collect()
            })
            .collect();
        orbit.sort();
        orbit.dedup();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits
}

fn det(m: &[Vec<Int>]) -> Int {
    match m.len() {
        0 => Int::ONE,
        1 => m[0][0].clone(),
        k => {
            let mut acc = Int::ZERO;
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Int>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|e| e.0 != j).map(|e| e.1.clone()).collect()).collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Nonzero invariant factors `d_k = D_k / D_{k-1}`, where `D_k` is the gcd
/// of all `k x k` minors. Exponential; for matrices up to about 6 x 6.
pub fn minor_gcd_divisors(a: &[Vec<i64>]) -> Vec<Int> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Int::ONE;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = Int::ZERO;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<Int>> = rs.iter().map(|&r| cs.iter().map(|&c| Int::from(a[r][c])).collect()).collect();
                g = gcd(&g, &det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Invariants of a finite abelian group from how many elements each
/// prime power kills: `|{x : p^j x = 0}| = p^(sum_i min(e_i, j))`.
fn invariants_from_kill_counts(order: u64, killed: impl Fn(u64) -> u64) -> AbelianInvariants {
    let mut primes = Vec::new();
    let mut n = order;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    let mut orders = Vec::new();
    for p in primes {
        let mut prev_log = 0u32;
        let mut counts = Vec::new();
        let mut q = p;
        loop {
            let c = killed(q);
            let log = c.ilog(p);
            if log == prev_log {
                break;
            }
            counts.push(log - prev_log);
            prev_log = log;
            q *= p;
        }
        // counts[j] = #{i : e_i > j}
        counts.push(0);
        for j in 0..counts.len() - 1 {
            for _ in 0..counts[j] - counts[j + 1] {
                orders.push(Int::from(p.pow(j as u32 + 1)));
            }
        }
    }
    AbelianInvariants::from_orders(orders, 0)
}

/// `G / [G, G]`, from cosets of the commutator subgroup.
pub fn abelianization(g: &FiniteGroup) -> AbelianInvariants {
    let n = g.order();
    let comms: Vec<ElemId> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))).collect();
    let derived = g.generate(&comms);
    let in_derived: HashSet<ElemId> = derived.iter().copied().collect();
    let index = (n / derived.len()) as u64;
    let power = |x: ElemId, e: u64| (0..e).fold(0, |acc, _| g.mul(acc, x));
    invariants_from_kill_counts(index, |q| {
        (0..n).filter(|&x| in_derived.contains(&power(x, q))).count() as u64 / derived.len() as u64
    })
}

/// The lattice `L + d Z^k` in `Z^k`, in upper triangular Hermite form:
/// row `i` has pivot `i` with a positive diagonal dividing `d`. When
/// `d Z^k` already lies in `L`, as `|G|` times the cycles does for group
/// homology in positive degree, this is `L` itself. All arithmetic is done
/// on machine integers modulo `d`.
#[derive(Clone, Debug)]
pub struct HermiteLattice {
    d: i64,
    rows: Vec<Vec<(usize, i64)>>,
}

type Sparse = Vec<(usize, i64)>;

/// `a * x + b * y mod d` on sorted sparse vectors.
fn combine(a: i64, x: &Sparse, b: i64, y: &Sparse, d: i64) -> Sparse {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) if p.0 == q.0 => {
                i += 1;
                j += 1;
                (p.0, a * p.1 + b * q.1)
            }
            (Some(p), q) if q.is_none_or(|q| p.0 < q.0) => {
                i += 1;
                (p.0, a * p.1)
            }
            (_, Some(q)) => {
                j += 1;
                (q.0, b * q.1)
            }
            _ => unreachable!(),
        };
        let v = v.rem_euclid(d);
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1, s0, s1, t0, t1) = (r1, r0 - q * r1, s1, s0 - q * s1, t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl HermiteLattice {
    /// # Panics
    /// If `d` is not in `1..=2^31`.
    pub fn with_multiple(k: usize, generators: &[Vec<(u32, Int)>], d: &Int) -> Self {
        let d = i64::try_from(d).ok().filter(|&d| (1..=1 << 31).contains(&d)).expect("multiple fits 31 bits");
        let mut rows: Vec<Sparse> = (0..k).map(|i| vec![(i, d)]).collect();
        let dd = Int::from(d);
        for gen in generators {
            let mut v: Sparse = gen
                .iter()
                .map(|(i, x)| (*i as usize, i64::try_from(&(x % &dd)).unwrap().rem_euclid(d)))
                .filter(|e| e.1 != 0)
                .collect();
            while let Some(&(i, b)) = v.first() {
                let p = &mut rows[i];
                let a = p[0].1;
                if b % a == 0 {
                    v = combine(1, &v, -(b / a), p, d);
                } else {
                    let (g, s, t) = ext_gcd(a, b);
                    let mut new_p = combine(s.rem_euclid(d), p, t.rem_euclid(d), &v, d);
                    // The pivot itself is g, which divides d; keep it unreduced.
                    new_p.retain(|e| e.0 != i);
                    new_p.insert(0, (i, g));
                    v = combine(a / g, &v, (-(b / g)).rem_euclid(d), p, d);
                    *p = new_p;
                }
            }
        }
        HermiteLattice { d, rows }
    }

    fn diag(&self, i: usize) -> i64 {
        self.rows[i][0].1
    }

    /// `|Z^k / L|`.
    pub fn index(&self) -> Int {
        (0..self.rows.len()).fold(Int::ONE, |acc, i| acc * Int::from(self.diag(i)))
    }

    /// Invariants of `Z^k / L` by enumerating cosets, or `None` above `cap`.
    pub fn quotient_by_cosets(&self, cap: u64) -> Option<AbelianInvariants> {
        let idx = self.index();
        if idx > Int::from(cap) {
            return None;
        }
        let order = u64::try_from(&idx).ok()?;
        let k = self.rows.len();
        let d = self.d;
        // Coordinates with a unit pivot are eliminated; the rest present the quotient.
        let s: Vec<usize> = (0..k).filter(|&i| self.diag(i) != 1).collect();
        let pos: HashMap<usize, usize> = s.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut h = vec![vec![0i64; s.len()]; s.len()];
        for (a, &i) in s.iter().enumerate() {
            let mut work = vec![0i64; k];
            for &(c, x) in &self.rows[i] {
                work[c] = x;
            }
            for j in i + 1..k {
                let x = work[j];
                if x == 0 {
                    continue;
                }
                if let Some(&b) = pos.get(&j) {
                    h[a][b] = x;
                } else {
                    for &(c, y) in &self.rows[j] {
                        work[c] = (work[c] - x * y).rem_euclid(d);
                    }
                }
            }
            h[a][a] = self.diag(i);
        }
        let diag: Vec<i64> = (0..s.len()).map(|i| h[i][i]).collect();
        let reduce = |mut x: Vec<i64>| {
            for i in 0..x.len() {
                let q = x[i].div_euclid(diag[i]);
                if q != 0 {
                    for j in i..x.len() {
                        x[j] -= q * h[i][j];
                    }
                }
            }
            x
        };
        let mut cosets = vec![vec![]];
        for &m in &diag {
            cosets = cosets.into_iter().flat_map(|p: Vec<i64>| (0..m).map(move |x| [p.as_slice(), &[x]].concat())).collect();
        }
        Some(invariants_from_kill_counts(order, |q| {
            cosets.iter().filter(|x| reduce(x.iter().map(|v| v * q as i64).collect()).iter().all(|&v| v == 0)).count() as u64
        }))
    }
}

/// `(1/|G|) sum over all of X_n(G)` of the DW phase, term by term.
pub fn dw_partition_full_sum(g: &FiniteGroup, n: usize, omega: &CochainVector) -> Result<PhaseHistogram> {
    if omega.degree() != n {
        return Err(Error::InvalidArgument("degree mismatch".into()));
    }
    let m = omega.modulus();
    let perms = signed_permutations(n);
    let mut bins: BTreeMap<u64, i64> = BTreeMap::new();
    for t in commuting_tuples(g, n) {
        let mut k = 0i64;
        for (p, s) in &perms {
            let tp: Vec<ElemId> = p.iter().map(|&i| t[i]).collect();
            k += s * omega.eval(g.order(), &tp) as i64;
        }
        *bins.entry(k.rem_euclid(m as i64) as u64).or_default() += 1;
    }
    let mut h = PhaseHistogram::new(m);
    for (k, c) in bins {
        h.add(k, Ratio::new(c, g.order() as i64));
    }
    Ok(h)
}

/// Every element of the span of `gens` in `(Z/m)^n`, by closure.
pub fn span_mod_m(gens: &[Vec<u64>], m: u64) -> HashSet<Vec<u64>> {
    let n = gens.first().map_or(0, Vec::len);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([vec![0; n]]);
    let mut frontier = vec![vec![0; n]];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// Class counts per orbit size, for comparing orbit decompositions.
pub fn orbit_size_profile(orbits: &[Vec<Vec<ElemId>>]) -> HashMap<usize, usize> {
    let mut out = HashMap::new();
    for o in orbits {
        *out.entry(o.len()).or_default() += 1;
    }
    out
}

/// Largest quotient that [`verify_invariants`] enumerates coset by coset.
pub const COSET_CAP: u64 = 1000;

/// Largest cycle-space dimension for the Hermite route; fill-in makes it
/// roughly quadratic in this.
pub const HERMITE_DIM_CAP: usize = 4000;

/// Recomputes `q` by routes independent of the kernel-coordinate pipeline
/// and fails with `VerificationMismatch` on any disagreement: full-tuple
/// generators, the saturated Smith route, the abelianization for `H_1`,
/// and coset enumeration on a Hermite basis when the quotient has at most
/// [`COSET_CAP`] elements and the cycle space at most [`HERMITE_DIM_CAP`]
/// dimensions. Returns the routes that ran.
pub fn verify_invariants(
    g: &FiniteGroup,
    n: usize,
    cfg: &Config,
    q: Quotient,
    claimed: &AbelianInvariants,
) -> Result<Vec<&'static str>> {
    let check = |route: &str, got: &AbelianInvariants| {
        if got == claimed {
            Ok(())
        } else {
            Err(Error::VerificationMismatch(format!("{} in degree {n}: {route} gives {got}, expected {claimed}", q.name())))
        }
    };
    let mut routes = Vec::new();
    if q == Quotient::H0n {
        let all = Config { z0n: Z0nMode::AllTuples, ..cfg.clone() };
        check("all-tuple generators", &invariants_timed(g, n, &all, q)?.0)?;
        routes.push("all-tuple generators");
    }
    check("saturated route", &saturated_invariants(g, n, cfg, q)?)?;
    routes.push("saturated route");
    if n == 1 && q == Quotient::Homology {
        check("abelianization", &abelianization(g))?;
        routes.push("abelianization");
    }
    if n >= 1 && claimed.free_rank() == 0 && claimed.torsion_order() <= Int::from(COSET_CAP) {
        let (k, rels) = relation_lattice(g, n, cfg, q)?;
        if k <= HERMITE_DIM_CAP {
            let l = HermiteLattice::with_multiple(k, &rels, &Int::from(g.order()));
            match l.quotient_by_cosets(COSET_CAP) {
                Some(inv) => check("coset enumeration", &inv)?,
                None => {
                    return Err(Error::VerificationMismatch(format!(
                        "{}: Hermite index {} exceeds the claimed order",
                        q.name(),
                        l.index()
                    )))
                }
            }
            routes.push("coset enumeration");
        }
    }
    Ok(routes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budgets;
    use crate::group::group_from_spec;

    fn grp(s: &str) -> FiniteGroup {
        group_from_spec(s, &Budgets::default()).unwrap()
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(commuting_tuples(&grp("S3"), 2).len(), 18);
        assert_eq!(tuple_orbits(&grp("S3"), 2).len(), 8);
        assert_eq!(commuting_tuples(&grp("C3"), 3).len(), 27);
    }

    #[test]
    fn minors() {
        assert_eq!(minor_gcd_divisors(&[vec![2, 4], vec![6, 8]]), vec![Int::from(2), Int::from(4)]);
        assert_eq!(minor_gcd_divisors(&[vec![0, 0], vec![0, 0]]), Vec::<Int>::new());
        assert_eq!(minor_gcd_divisors(&[vec![1, 2, 3], vec![2, 4, 6]]), vec![Int::ONE]);
    }

    #[test]
    fn abelianizations() {
        assert_eq!(abelianization(&grp("S3")).torsion_u64(), vec![2]);
        assert_eq!(abelianization(&grp("C2xC4")).torsion_u64(), vec![2, 4]);
        assert_eq!(abelianization(&grp("Q8")).torsion_u64(), vec![2, 2]);
        assert!(abelianization(&grp("A5")).is_trivial());
    }

    #[test]
    fn cosets() {
        let gens = vec![vec![(0, Int::from(4)), (1, Int::from(6))], vec![(0, Int::from(6)), (1, Int::from(4))]];
        let l = HermiteLattice::with_multiple(2, &gens, &Int::from(40));
        assert_eq!(l.index(), Int::from(20));
        assert_eq!(l.quotient_by_cosets(1000).unwrap().torsion_u64(), vec![2, 10]);
        assert!(l.quotient_by_cosets(10).is_none());
        let m = HermiteLattice::with_multiple(2, &gens[..1], &Int::from(3));
        assert_eq!(m.quotient_by_cosets(1000).unwrap().torsion_u64(), vec![3]);
        let cyclic = HermiteLattice::with_multiple(1, &[vec![(0, Int::from(-4))], vec![(0, Int::from(6))]], &Int::from(12));
        assert_eq!(cyclic.quotient_by_cosets(100).unwrap().torsion_u64(), vec![2]);
        let skew = vec![vec![(0, Int::from(1)), (1, Int::from(1)), (2, Int::from(2))], vec![(1, Int::from(2))], vec![(2, Int::from(4))]];
        assert_eq!(HermiteLattice::with_multiple(3, &skew, &Int::from(8)).quotient_by_cosets(100).unwrap().torsion_u64(), vec![2, 4]);
        // 2 e1 = -e2 glues the factors into one cyclic group.
        let glued = vec![vec![(0, Int::from(1)), (1, Int::from(1))], vec![(1, Int::from(2)), (2, Int::from(1))], vec![(2, Int::from(4))]];
        assert_eq!(HermiteLattice::with_multiple(3, &glued, &Int::from(8)).quotient_by_cosets(100).unwrap().torsion_u64(), vec![8]);
    }

    #[test]
    fn verification_routes() {
        let cfg = Config::default();
        for s in ["S3", "C2xC2", "Q8", "C6"] {
            let g = grp(s);
            for n in 1..4 {
                for q in [Quotient::Homology, Quotient::H0n, Quotient::Sha] {
                    let claimed = invariants_timed(&g, n, &cfg, q).unwrap().0;
                    verify_invariants(&g, n, &cfg, q, &claimed).unwrap();
                }
            }
        }
        let g = grp("S3");
        let wrong = AbelianInvariants::from_u64(&[3], 0);
        assert!(matches!(verify_invariants(&g, 3, &cfg, Quotient::Homology, &wrong), Err(Error::VerificationMismatch(_))));
    }

    #[test]
    fn spans() {
        assert_eq!(span_mod_m(&[vec![2, 3]], 6).len(), 6);
        assert_eq!(span_mod_m(&[vec![2, 0], vec![0, 3]], 6).len(), 6);
    }
}
