//! Commuting tuples and their orbits under simultaneous conjugation.
//!
//! A tuple `(g_1, ..., g_n)` is the lexicographic minimum of its orbit iff
//! each `g_i` is the smallest element of its conjugacy class in
//! `H_{i-1} = C_G(g_1, ..., g_{i-1})`; the stabilizer is then `H_n`. The
//! search below walks exactly these canonical tuples, so every orbit is
//! produced once and needs no deduplication.

use std::collections::HashMap;

use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ElemId, FiniteGroup};
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TupleOrbit {
    pub rep: Vec<ElemId>,
    pub stabilizer_order: usize,
    pub orbit_size: usize,
}

fn centralizer_in(g: &FiniteGroup, h: &[ElemId], x: ElemId) -> Vec<ElemId> {
    h.iter().copied().filter(|&k| g.commutes(k, x)).collect()
}

/// Minimal representatives of the `H`-conjugacy classes inside `H`, with
/// class sizes; `h` must be sorted.
fn class_reps_in(g: &FiniteGroup, h: &[ElemId]) -> Vec<(ElemId, usize)> {
    let mut seen = vec![false; h.len()];
    let mut out = Vec::new();
    for (pos, &x) in h.iter().enumerate() {
        if seen[pos] {
            continue;
        }
        let mut size = 0;
        for &k in h {
            let y = g.conj(k, x);
            let p = h.binary_search(&y).expect("subgroup closed under conjugation");
            if !seen[p] {
                seen[p] = true;
                size += 1;
            }
        }
        out.push((x, size));
    }
    out
}

fn bitset(n: usize, members: &[ElemId]) -> Vec<u64> {
    let mut bits = vec![0u64; n.div_ceil(64)];
    for &x in members {
        bits[x / 64] |= 1 << (x % 64);
    }
    bits
}

struct Counter<'g> {
    g: &'g FiniteGroup,
    memo: HashMap<(usize, Vec<u64>), u128>,
    cap: u128,
}

impl Counter<'_> {
    fn count(&mut self, k: usize, h: &[ElemId]) -> Result<u128> {
        if k == 0 {
            return Ok(1);
        }
        if k == 1 {
            return Ok(h.len() as u128);
        }
        let key = (k, bitset(self.g.order(), h));
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.memo.len() as u128 >= self.cap {
            return Err(Error::BudgetExceeded { what: "tuple-count states", needed: self.memo.len() as u128 + 1, cap: self.cap });
        }
        let mut total: u128 = 0;
        for (x, size) in class_reps_in(self.g, h) {
            let c = centralizer_in(self.g, h, x);
            let sub = self.count(k - 1, &c)?;
            total = sub
                .checked_mul(size as u128)
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::BudgetExceeded { what: "tuple count", needed: u128::MAX, cap: u128::MAX })?;
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

/// `|X_n(G)|`, the number of pairwise commuting `n`-tuples.
pub fn commuting_tuple_count(g: &FiniteGroup, n: usize, budgets: &Budgets) -> Result<u128> {
    let all: Vec<ElemId> = (0..g.order()).collect();
    Counter { g, memo: HashMap::new(), cap: budgets.count_cap }.count(n, &all)
}

/// Number of conjugation orbits on `X_n(G)`, which by Burnside is
/// `|X_{n+1}(G)| / |G|`.
pub fn orbit_count(g: &FiniteGroup, n: usize, budgets: &Budgets) -> Result<u128> {
    Ok(commuting_tuple_count(g, n + 1, budgets)? / g.order() as u128)
}

fn walk(g: &FiniteGroup, n: usize, prefix: &mut Vec<ElemId>, h: &[ElemId], out: &mut Vec<TupleOrbit>) {
    if prefix.len() == n {
        out.push(TupleOrbit {
            rep: prefix.clone(),
            stabilizer_order: h.len(),
            orbit_size: g.order() / h.len(),
        });
        return;
    }
    for (x, _) in class_reps_in(g, h) {
        let c = centralizer_in(g, h, x);
        prefix.push(x);
        walk(g, n, prefix, &c, out);
        prefix.pop();
    }
}

/// One [`TupleOrbit`] per conjugation orbit of commuting `n`-tuples, sorted
/// by representative.
pub fn orbit_representatives(g: &FiniteGroup, n: usize, budgets: &Budgets, exec: Exec) -> Result<Vec<TupleOrbit>> {
    if n == 0 {
        return Ok(vec![TupleOrbit { rep: Vec::new(), stabilizer_order: g.order(), orbit_size: 1 }]);
    }
    let projected = orbit_count(g, n, budgets)?;
    if projected > budgets.orbit_cap {
        return Err(Error::BudgetExceeded { what: "tuple orbits", needed: projected, cap: budgets.orbit_cap });
    }
    let all: Vec<ElemId> = (0..g.order()).collect();
    let classes = conjugacy_classes(g);
    let mut out: Vec<TupleOrbit> = exec
        .map_slice(&classes, |&(x, _)| {
            let c = centralizer_in(g, &all, x);
            let mut local = Vec::new();
            walk(g, n, &mut vec![x], &c, &mut local);
            local
        })
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    debug_assert_eq!(out.len() as u128, projected);
    Ok(out)
}

fn walk_all(g: &FiniteGroup, n: usize, prefix: &mut Vec<ElemId>, h: &[ElemId], out: &mut Vec<Vec<ElemId>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for &x in h {
        let c = centralizer_in(g, h, x);
        prefix.push(x);
        walk_all(g, n, prefix, &c, out);
        prefix.pop();
    }
}

/// Every commuting `n`-tuple, in lexicographic order.
pub fn all_commuting_tuples(g: &FiniteGroup, n: usize, budgets: &Budgets, exec: Exec) -> Result<Vec<Vec<ElemId>>> {
    let total = commuting_tuple_count(g, n, budgets)?;
    if total > budgets.orbit_cap {
        return Err(Error::BudgetExceeded { what: "commuting tuples", needed: total, cap: budgets.orbit_cap });
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let all: Vec<ElemId> = (0..g.order()).collect();
    Ok(exec
        .map_range(g.order(), |x| {
            let c = centralizer_in(g, &all, x);
            let mut local = Vec::new();
            walk_all(g, n, &mut vec![x], &c, &mut local);
            local
        })
        .into_iter()
        .flatten()
        .collect())
}

/// Lexicographic minimum of the conjugation orbit of `t`.
pub fn canonical_form(g: &FiniteGroup, t: &[ElemId]) -> Vec<ElemId> {
    (0..g.order())
        .map(|k| t.iter().map(|&x| g.conj(k, x)).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Position of the orbit of `t` in a sorted orbit list.
pub fn orbit_index(g: &FiniteGroup, orbits: &[TupleOrbit], t: &[ElemId]) -> Option<usize> {
    let c = canonical_form(g, t);
    orbits.binary_search_by(|o| o.rep.cmp(&c)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;

    fn grp(s: &str) -> FiniteGroup {
        group_from_spec(s, &Budgets::default()).unwrap()
    }

    #[test]
    fn counts() {
        let b = Budgets::default();
        assert_eq!(commuting_tuple_count(&grp("S3"), 2, &b).unwrap(), 18);
        assert_eq!(commuting_tuple_count(&grp("C6"), 3, &b).unwrap(), 216);
        assert_eq!(commuting_tuple_count(&grp("S4"), 1, &b).unwrap(), 24);
        // |X_2| = |G| * (number of classes)
        assert_eq!(commuting_tuple_count(&grp("Q8"), 2, &b).unwrap(), 40);
        let tight = Budgets { count_cap: 1, ..b };
        assert!(matches!(commuting_tuple_count(&grp("S4"), 3, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn orbit_examples() {
        let b = Budgets::default();
        let s3 = grp("S3");
        let orbits = orbit_representatives(&s3, 2, &b, Exec::Sequential).unwrap();
        assert_eq!(orbits.iter().map(|o| o.orbit_size).sum::<usize>(), 18);
        assert_eq!(orbits.len(), 8);
        let classes = orbit_representatives(&s3, 1, &b, Exec::Sequential).unwrap();
        assert_eq!(classes.len(), 3);
        let c4 = grp("C4");
        let o = orbit_representatives(&c4, 2, &b, Exec::Sequential).unwrap();
        assert_eq!(o.len(), 16);
        assert!(o.iter().all(|t| t.stabilizer_order == 4));
        let tight = Budgets { orbit_cap: 3, ..b };
        assert!(matches!(
            orbit_representatives(&s3, 2, &tight, Exec::Sequential),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn reps_are_canonical_and_parallel_agrees() {
        let b = Budgets::default();
        for s in ["S4", "D8", "Q8", "A4"] {
            let g = grp(s);
            let seq = orbit_representatives(&g, 3, &b, Exec::Sequential).unwrap();
            let par = orbit_representatives(&g, 3, &b, Exec::Parallel).unwrap();
            assert_eq!(seq, par);
            for o in &seq {
                assert_eq!(canonical_form(&g, &o.rep), o.rep);
                assert_eq!(o.orbit_size * o.stabilizer_order, g.order());
            }
        }
    }
}
