//! Concrete finite groups.
//!
//! A [`FiniteGroup`] is built from permutation generators by breadth-first
//! closure, so the element numbering is a deterministic function of the
//! generator list: id 0 is the identity, and the remaining ids follow BFS
//! order with generators tried in the order given. Groups up to
//! [`Budgets::table_cap`] elements carry a full multiplication table;
//! larger ones multiply permutations and look the result up.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};

pub type ElemId = usize;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    degree: usize,
    /// `order * degree` point images, 0-based.
    perms: Vec<u32>,
    table: Option<Vec<u32>>,
    index: Option<HashMap<Vec<u32>, u32>>,
    inv: Vec<u32>,
    generators: Vec<ElemId>,
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&p| a[p as usize]).collect()
}

fn check_permutation(images: &[u32], degree: usize) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "expected {degree} images, got {}",
            images.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &p in images {
        let p = p as usize;
        if p >= degree || seen[p] {
            return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
        }
        seen[p] = true;
    }
    Ok(())
}

impl FiniteGroup {
    /// Closure of 0-based permutation generators acting on `0..degree`.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<u32>],
        budgets: &Budgets,
    ) -> Result<Self> {
        let degree = degree.max(1);
        for g in generators {
            check_permutation(g, degree)?;
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut perms: Vec<u32> = identity.clone();
        index.insert(identity, 0);
        let mut next = 0usize;
        while next < index.len() {
            let x = perms[next * degree..(next + 1) * degree].to_vec();
            for s in generators {
                let y = compose(&x, s);
                if !index.contains_key(&y) {
                    if index.len() >= budgets.order_cap {
                        return Err(Error::OrderCapExceeded { cap: budgets.order_cap });
                    }
                    index.insert(y.clone(), index.len() as u32);
                    perms.extend_from_slice(&y);
                }
            }
            next += 1;
        }
        // Relabel by lexicographic order of point images. The labelling then
        // depends only on the permutation group, not on the generating set,
        // and the identity stays at 0.
        let order = index.len();
        let mut ids: Vec<usize> = (0..order).collect();
        ids.sort_unstable_by(|&a, &b| perms[a * degree..(a + 1) * degree].cmp(&perms[b * degree..(b + 1) * degree]));
        let mut sorted = Vec::with_capacity(perms.len());
        for (new, &old) in ids.iter().enumerate() {
            let p = &perms[old * degree..(old + 1) * degree];
            index.insert(p.to_vec(), new as u32);
            sorted.extend_from_slice(p);
        }
        let gen_ids = generators.iter().map(|g| index[g] as usize).collect();
        Ok(Self::assemble(name.into(), degree, sorted, index, gen_ids, budgets))
    }

    fn assemble(
        name: String,
        degree: usize,
        perms: Vec<u32>,
        index: HashMap<Vec<u32>, u32>,
        generators: Vec<ElemId>,
        budgets: &Budgets,
    ) -> Self {
        let order = perms.len() / degree;
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let p = &perms[x * degree..(x + 1) * degree];
            let mut q = vec![0u32; degree];
            for (i, &pi) in p.iter().enumerate() {
                q[pi as usize] = i as u32;
            }
            *slot = index[&q];
        }
        let mut group = FiniteGroup {
            name,
            order,
            degree,
            perms,
            table: None,
            index: Some(index),
            inv,
            generators,
        };
        if order <= budgets.table_cap {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = group.mul_by_lookup(a, b) as u32;
                }
            }
            group.table = Some(table);
            group.index = None;
        }
        group
    }

    fn mul_by_lookup(&self, a: ElemId, b: ElemId) -> ElemId {
        let prod = compose(self.perm(a), self.perm(b));
        self.index.as_ref().expect("permutation index")[&prod] as ElemId
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Point images of element `x` (0-based).
    pub fn perm(&self, x: ElemId) -> &[u32] {
        &self.perms[x * self.degree..(x + 1) * self.degree]
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.table {
            Some(t) => t[a * self.order + b] as ElemId,
            None => self.mul_by_lookup(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a] as ElemId
    }

    /// `k x k^{-1}`
    #[inline]
    pub fn conj(&self, k: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(k, x), self.inv(k))
    }

    #[inline]
    pub fn commutes(&self, a: ElemId, b: ElemId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn element_order(&self, x: ElemId) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Multiplication table in row-major order, computed on demand for
    /// groups above the table cap.
    pub fn table_entries(&self) -> Vec<u32> {
        match &self.table {
            Some(t) => t.clone(),
            None => {
                let n = self.order;
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        t.push(self.mul(a, b) as u32);
                    }
                }
                t
            }
        }
    }

    fn check_ids(&self, ids: &[ElemId]) -> Result<()> {
        if let Some(&bad) = ids.iter().find(|&&x| x >= self.order) {
            return Err(Error::InvalidArgument(format!(
                "element id {bad} out of range for group of order {}",
                self.order
            )));
        }
        Ok(())
    }

    /// Smallest subgroup containing `ids`.
    pub fn generate(&self, ids: &[ElemId]) -> Vec<ElemId> {
        let mut member = vec![false; self.order];
        let mut list = vec![0];
        member[0] = true;
        let mut next = 0;
        while next < list.len() {
            let x = list[next];
            for &s in ids {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            next += 1;
        }
        list.sort_unstable();
        list
    }

    /// Conjugacy class of every element, as an index into
    /// [`conjugacy_classes`] order.
    pub fn class_map(&self) -> Vec<usize> {
        let mut class = vec![usize::MAX; self.order];
        let mut count = 0;
        for x in 0..self.order {
            if class[x] != usize::MAX {
                continue;
            }
            for k in 0..self.order {
                class[self.conj(k, x)] = count;
            }
            count += 1;
        }
        class
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// A subgroup, stored as the sorted ids of its members.
#[derive(Clone, Debug)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    members: Vec<ElemId>,
}

impl<'g> Subgroup<'g> {
    /// `members` must be closed under multiplication; it is sorted here.
    pub fn new(parent: &'g FiniteGroup, mut members: Vec<ElemId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { parent, members }
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        let m = &self.members;
        m.iter()
            .enumerate()
            .all(|(i, &a)| m[i + 1..].iter().all(|&b| self.parent.commutes(a, b)))
    }

    /// The subgroup as a group in its own right, together with the
    /// embedding `local id -> parent id`. Local ids follow the parent's
    /// order, so the identity stays at 0.
    pub fn to_group(&self, budgets: &Budgets) -> (FiniteGroup, Vec<ElemId>) {
        let g = self.parent;
        let degree = g.degree;
        let mut perms = Vec::with_capacity(self.members.len() * degree);
        let mut index = HashMap::new();
        for (i, &x) in self.members.iter().enumerate() {
            perms.extend_from_slice(g.perm(x));
            index.insert(g.perm(x).to_vec(), i as u32);
        }
        let gens: Vec<ElemId> = (1..self.members.len()).collect();
        let mut gens = gens;
        // Any generating set works; keep it small for the abelian checks.
        let mut span = vec![0usize];
        gens.retain(|&local| {
            let x = self.members[local];
            if span.contains(&x) {
                false
            } else {
                let mut with: Vec<ElemId> = Vec::new();
                with.extend(span.iter().copied().filter(|&s| s != 0));
                with.push(x);
                span = g.generate(&with);
                true
            }
        });
        let name = format!("subgroup of {} (order {})", g.name, self.members.len());
        let sub = FiniteGroup::assemble(name, degree, perms, index, gens, budgets);
        (sub, self.members.clone())
    }
}

/// `{ k : k x = x k for all x in ids }`
pub fn centralizer<'g>(g: &'g FiniteGroup, ids: &[ElemId]) -> Result<Subgroup<'g>> {
    if ids.is_empty() {
        return Err(Error::InvalidArgument("centralizer of an empty list".into()));
    }
    g.check_ids(ids)?;
    let members = (0..g.order())
        .filter(|&k| ids.iter().all(|&x| g.commutes(k, x)))
        .collect();
    Ok(Subgroup::new(g, members))
}

/// Class representatives (minimal id in each class) with class sizes,
/// ordered by representative.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<(ElemId, usize)> {
    let class = g.class_map();
    let mut out: Vec<(ElemId, usize)> = Vec::new();
    for (x, &c) in class.iter().enumerate() {
        if c == out.len() {
            out.push((x, 0));
        }
        out[c].1 += 1;
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

/// All maximal abelian subgroups, largest first.
///
/// Seeds every cyclic subgroup and grows it inside its centralizer until it
/// is self-centralizing; an abelian subgroup `A` is maximal exactly when
/// `C_G(A) = A`.
pub fn maximal_abelian_subgroups(g: &FiniteGroup) -> Vec<Subgroup<'_>> {
    if g.is_abelian() {
        return vec![Subgroup::new(g, (0..g.order()).collect())];
    }
    let n = g.order();
    let mut visited: HashSet<Vec<u64>> = HashSet::new();
    let mut found: BTreeSet<Vec<ElemId>> = BTreeSet::new();
    let mut stack: Vec<(Vec<ElemId>, Vec<ElemId>)> = Vec::new();
    for x in 1..n {
        let members = g.generate(&[x]);
        if visited.insert(bitset(n, &members)) {
            stack.push((vec![x], members));
        }
    }
    while let Some((gens, members)) = stack.pop() {
        let cent: Vec<ElemId> = (0..n)
            .filter(|&k| gens.iter().all(|&x| g.commutes(k, x)))
            .collect();
        if cent.len() == members.len() {
            found.insert(members);
            continue;
        }
        for &y in &cent {
            if members.binary_search(&y).is_ok() {
                continue;
            }
            let mut more = gens.clone();
            more.push(y);
            let grown = g.generate(&more);
            if visited.insert(bitset(n, &grown)) {
                stack.push((more, grown));
            }
        }
    }
    let mut out: Vec<Vec<ElemId>> = found.into_iter().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out.into_iter().map(|m| Subgroup::new(g, m)).collect()
}

/// `a x b` with elements ordered as pairs: id `(i, j)` is `i * |b| + j`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, budgets: &Budgets) -> Result<FiniteGroup> {
    let order = a
        .order()
        .checked_mul(b.order())
        .filter(|&o| o <= budgets.order_cap)
        .ok_or(Error::OrderCapExceeded { cap: budgets.order_cap })?;
    let degree = a.degree + b.degree;
    let shift = a.degree as u32;
    let mut perms = Vec::with_capacity(order * degree);
    let mut index = HashMap::with_capacity(order);
    for i in 0..a.order() {
        for j in 0..b.order() {
            let mut p: Vec<u32> = a.perm(i).to_vec();
            p.extend(b.perm(j).iter().map(|&x| x + shift));
            index.insert(p.clone(), (i * b.order() + j) as u32);
            perms.extend(p);
        }
    }
    let mut gens: Vec<ElemId> = a.generators.iter().map(|&x| x * b.order()).collect();
    gens.extend(b.generators.iter().copied());
    let name = format!("{}x{}", a.name, b.name);
    Ok(FiniteGroup::assemble(name, degree, perms, index, gens, budgets))
}

/// Textual or JSON description of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given (even) order.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Dicyclic group of the given order; `Q8` is the quaternion group.
    Quaternion(usize),
    Product(Vec<GroupSpec>),
    /// 1-based one-line images.
    Perm { degree: usize, generators: Vec<Vec<usize>> },
}

#[derive(Deserialize)]
struct PermJson {
    kind: String,
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let raw: PermJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            if raw.kind != "perm" {
                return Err(Error::UnknownFamily(raw.kind));
            }
            return Ok(GroupSpec::Perm { degree: raw.degree, generators: raw.generators });
        }
        let mut factors = Vec::new();
        for part in s.split(['x', '×']) {
            let part = part.trim();
            let (base, power) = match part.split_once('^') {
                Some((b, p)) => {
                    let p: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?;
                    (b.trim(), p)
                }
                None => (part, 1),
            };
            let factor = parse_family(base)?;
            if power == 0 {
                return Err(Error::Parse(format!("zero exponent in `{part}`")));
            }
            factors.extend(std::iter::repeat_n(factor, power));
        }
        match factors.len() {
            0 => Err(Error::Parse("empty group spec".into())),
            1 => Ok(factors.pop().expect("one factor")),
            _ => Ok(GroupSpec::Product(factors)),
        }
    }
}

fn parse_family(s: &str) -> Result<GroupSpec> {
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(|| Error::Parse("empty factor".into()))?;
    let k: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::UnknownFamily(s.to_string()))?;
    if k == 0 {
        return Err(Error::UnknownFamily(s.to_string()));
    }
    match letter {
        'C' => Ok(GroupSpec::Cyclic(k)),
        'D' if k.is_multiple_of(2) => Ok(GroupSpec::Dihedral(k)),
        'D' => Err(Error::UnknownFamily(format!("{s}: dihedral groups are named by their even order"))),
        'S' => Ok(GroupSpec::Symmetric(k)),
        'A' => Ok(GroupSpec::Alternating(k)),
        'Q' if k >= 8 && k.is_multiple_of(4) => Ok(GroupSpec::Quaternion(k)),
        'Q' => Err(Error::UnknownFamily(format!("{s}: dicyclic order must be a multiple of 4, at least 8"))),
        _ => Err(Error::UnknownFamily(s.to_string())),
    }
}

fn cycle(degree: usize, points: &[usize]) -> Vec<u32> {
    let mut p: Vec<u32> = (0..degree as u32).collect();
    for w in 0..points.len() {
        p[points[w]] = points[(w + 1) % points.len()] as u32;
    }
    p
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Quaternion(n) => write!(f, "Q{n}"),
            GroupSpec::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            GroupSpec::Perm { degree, .. } => write!(f, "perm{degree}"),
        }
    }
}

impl GroupSpec {
    pub fn build(&self, budgets: &Budgets) -> Result<FiniteGroup> {
        let name = self.to_string();
        match *self {
            GroupSpec::Cyclic(n) => {
                let gens = if n > 1 { vec![cycle(n, &(0..n).collect::<Vec<_>>())] } else { vec![] };
                FiniteGroup::from_permutations(name, n, &gens, budgets)
            }
            GroupSpec::Dihedral(k) => {
                let m = k / 2;
                let gens = match m {
                    1 => vec![vec![1, 0]],
                    2 => vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
                    _ => vec![
                        cycle(m, &(0..m).collect::<Vec<_>>()),
                        (0..m).map(|i| ((m - i) % m) as u32).collect(),
                    ],
                };
                FiniteGroup::from_permutations(name, m.max(2) + if m == 2 { 2 } else { 0 }, &gens, budgets)
            }
            GroupSpec::Symmetric(n) => {
                let gens = match n {
                    1 => vec![],
                    2 => vec![cycle(2, &[0, 1])],
                    _ => vec![cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())],
                };
                FiniteGroup::from_permutations(name, n, &gens, budgets)
            }
            GroupSpec::Alternating(n) => {
                let gens: Vec<Vec<u32>> = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
                FiniteGroup::from_permutations(name, n, &gens, budgets)
            }
            GroupSpec::Quaternion(order) => {
                let gens = dicyclic_regular(order);
                FiniteGroup::from_permutations(name, order, &gens, budgets)
            }
            GroupSpec::Product(ref factors) => {
                let mut acc = factors[0].build(budgets)?;
                for f in &factors[1..] {
                    acc = direct_product(&acc, &f.build(budgets)?, budgets)?;
                }
                Ok(acc)
            }
            GroupSpec::Perm { degree, ref generators } => {
                let mut gens = Vec::with_capacity(generators.len());
                for g in generators {
                    if g.iter().any(|&p| p == 0 || p > degree) {
                        return Err(Error::InvalidPermutation(format!("{g:?} has images outside 1..={degree}")));
                    }
                    gens.push(g.iter().map(|&p| (p - 1) as u32).collect::<Vec<u32>>());
                }
                FiniteGroup::from_permutations(name, degree, &gens, budgets)
            }
        }
    }
}

/// Left-regular permutations of the generators `a`, `x` of the dicyclic
/// group `<a, x | a^{2k}, x^2 = a^k, x a x^{-1} = a^{-1}>` of order `4k`.
fn dicyclic_regular(order: usize) -> Vec<Vec<u32>> {
    let k = order / 4;
    let two_k = 2 * k;
    // element a^i x^j  <->  i + 2k j
    let mul = |e: usize, f: usize| -> usize {
        let (i, j) = (e % two_k, e / two_k);
        let (p, q) = (f % two_k, f / two_k);
        if j == 0 {
            (i + p) % two_k + two_k * q
        } else {
            let r = (i + two_k - p) % two_k;
            if q == 0 {
                r + two_k
            } else {
                (r + k) % two_k
            }
        }
    };
    let left = |g: usize| -> Vec<u32> { (0..order).map(|h| mul(g, h) as u32).collect() };
    vec![left(1), left(two_k)]
}

/// Parses and builds in one step.
pub fn group_from_spec(spec: &str, budgets: &Budgets) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build(budgets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> FiniteGroup {
        group_from_spec(s, &Budgets::default()).unwrap()
    }

    fn check_axioms(g: &FiniteGroup) {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(g.inv(a), a), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        assert_eq!(g.generate(g.generators()).len(), n);
    }

    #[test]
    fn family_orders() {
        for (s, n) in [
            ("C1", 1), ("C6", 6), ("D4", 4), ("D6", 6), ("D8", 8), ("D2", 2), ("S1", 1), ("S3", 6),
            ("S4", 24), ("A4", 12), ("A5", 60), ("Q8", 8), ("Q12", 12), ("Q16", 16), ("C2^3", 8),
            ("C2xC2xC2", 8), ("S3xC2", 12),
        ] {
            assert_eq!(grp(s).order(), n, "{s}");
        }
    }

    #[test]
    fn axioms_hold_for_small_groups() {
        for s in ["C6", "D8", "D10", "S4", "A4", "Q8", "Q12", "Q16", "S3xC2", "C2xC2xC2", "D4"] {
            check_axioms(&grp(s));
        }
    }

    #[test]
    fn abelian_flags() {
        assert!(grp("C6").is_abelian());
        assert!(grp("C2xC2xC2").is_abelian());
        assert!(grp("D4").is_abelian());
        assert!(!grp("S3").is_abelian());
        assert!(!grp("Q8").is_abelian());
        assert!(!grp("S3xC2").is_abelian());
    }

    #[test]
    fn quaternion_has_single_involution() {
        let g = grp("Q8");
        let involutions = (1..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        let g = grp("Q16");
        assert_eq!((1..16).filter(|&x| g.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn perm_spec_matches_named_s3() {
        let json = r#"{"kind":"perm","degree":3,"generators":[[2,1,3],[2,3,1]]}"#;
        let a = grp(json);
        let b = grp("S3");
        assert_eq!(a.order(), 6);
        assert_eq!(a.table_entries(), b.table_entries());
    }

    #[test]
    fn spec_errors() {
        let b = Budgets::default();
        assert!(matches!(group_from_spec("F7", &b), Err(Error::UnknownFamily(_))));
        assert!(matches!(group_from_spec("D7", &b), Err(Error::UnknownFamily(_))));
        assert!(matches!(group_from_spec("S8", &b), Err(Error::OrderCapExceeded { .. })));
        let bad = r#"{"kind":"perm","degree":3,"generators":[[1,1,3]]}"#;
        assert!(matches!(group_from_spec(bad, &b), Err(Error::InvalidPermutation(_))));
        let small = Budgets { order_cap: 10, ..Budgets::default() };
        assert!(matches!(group_from_spec("C4xC4", &small), Err(Error::OrderCapExceeded { .. })));
    }

    #[test]
    fn large_group_without_table() {
        let g = grp("S7");
        assert_eq!(g.order(), 5040);
        assert!(!g.has_table());
        let x = g.generators()[1];
        assert_eq!(g.element_order(x), 7);
        assert_eq!(conjugacy_classes(&g).len(), 15);
    }

    #[test]
    fn centralizers() {
        let s3 = grp("S3");
        assert_eq!(centralizer(&s3, &[0]).unwrap().order(), 6);
        let t = s3.generators()[0];
        assert_eq!(centralizer(&s3, &[t]).unwrap().order(), 2);
        let c6 = grp("C6");
        for x in 0..6 {
            assert_eq!(centralizer(&c6, &[x]).unwrap().order(), 6);
        }
        assert!(centralizer(&s3, &[]).is_err());
        assert!(centralizer(&s3, &[6]).is_err());
    }

    #[test]
    fn class_equation() {
        for (s, sizes) in [
            ("C4", vec![1, 1, 1, 1]),
            ("S3", vec![1, 2, 3]),
            ("Q8", vec![1, 1, 2, 2, 2]),
        ] {
            let mut got: Vec<usize> = conjugacy_classes(&grp(s)).iter().map(|c| c.1).collect();
            got.sort_unstable();
            assert_eq!(got, sizes, "{s}");
        }
        for s in ["S4", "A5", "D12", "Q16"] {
            let g = grp(s);
            let classes = conjugacy_classes(&g);
            assert_eq!(classes.iter().map(|c| c.1).sum::<usize>(), g.order());
            for (rep, size) in classes {
                let c = centralizer(&g, &[rep]).unwrap().order();
                assert_eq!(c * size, g.order());
            }
        }
    }

    #[test]
    fn maximal_abelian_examples() {
        let s3 = grp("S3");
        let orders: Vec<usize> = maximal_abelian_subgroups(&s3).iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![3, 2, 2, 2]);
        let q8 = grp("Q8");
        let subs = maximal_abelian_subgroups(&q8);
        assert_eq!(subs.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![4, 4, 4]);
        for s in &subs {
            assert!(s.members().iter().any(|&x| q8.element_order(x) == 4));
        }
        let c6 = grp("C6");
        assert_eq!(maximal_abelian_subgroups(&c6)[0].order(), 6);
    }

    #[test]
    fn maximal_abelian_cover_every_element_pair() {
        for s in ["S4", "D8", "Q16", "A4", "S3xC2"] {
            let g = grp(s);
            let subs = maximal_abelian_subgroups(&g);
            for s in &subs {
                assert!(s.is_abelian());
            }
            for i in 0..subs.len() {
                for j in 0..subs.len() {
                    if i != j {
                        assert!(!subs[i].members().iter().all(|&x| subs[j].contains(x)));
                    }
                }
            }
            for a in 0..g.order() {
                for b in 0..g.order() {
                    if g.commutes(a, b) {
                        assert!(subs.iter().any(|s| s.contains(a) && s.contains(b)), "{s}: {a},{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_with_trivial_group_keeps_table() {
        let b = Budgets::default();
        let g = grp("S3");
        let t = grp("C1");
        let p = direct_product(&g, &t, &b).unwrap();
        assert_eq!(p.table_entries(), g.table_entries());
    }

    #[test]
    fn subgroup_as_group() {
        let g = grp("S4");
        let c = centralizer(&g, &[g.generators()[1]]).unwrap();
        let (h, emb) = c.to_group(&Budgets::default());
        assert_eq!(h.order(), 4);
        assert!(h.is_abelian());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(emb[h.mul(a, b)], g.mul(emb[a], emb[b]));
            }
        }
    }

    #[test]
    fn labelling_ignores_generating_set() {
        let b = Budgets::default();
        let a = FiniteGroup::from_permutations("a", 3, &[vec![1, 0, 2], vec![1, 2, 0]], &b).unwrap();
        let c = FiniteGroup::from_permutations("c", 3, &[vec![0, 2, 1], vec![2, 0, 1], vec![1, 0, 2]], &b).unwrap();
        assert_eq!(a.table_entries(), c.table_entries());
        assert_eq!(a.table_entries(), grp("S3").table_entries());
    }
}
