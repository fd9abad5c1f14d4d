#![allow(dead_code)]

use untwist::group::group_from_spec;
use untwist::{Budgets, FiniteGroup};

pub fn grp(spec: &str) -> FiniteGroup {
    group_from_spec(spec, &Budgets::default()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// One representative of every isomorphism class of order at most 12.
pub const ORDER_AT_MOST_12: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2^3", "D8", "Q8", "C9", "C3xC3", "C10",
    "D10", "C11", "C12", "C2xC6", "A4", "D12", "Q12",
];

/// Built-in family members and their pairwise products, up to `max_order`.
pub fn family_groups(max_order: usize) -> Vec<(String, usize)> {
    let mut base: Vec<(String, usize)> = Vec::new();
    for n in 2..=max_order {
        base.push((format!("C{n}"), n));
    }
    for k in (6..=max_order).step_by(2) {
        base.push((format!("D{k}"), k));
    }
    for k in (8..=max_order).step_by(4) {
        base.push((format!("Q{k}"), k));
    }
    for (p, top) in [(2usize, 5u32), (3, 3), (5, 2)] {
        for e in 2..=top {
            if p.pow(e) <= max_order {
                base.push((format!("C{p}^{e}"), p.pow(e)));
            }
        }
    }
    for (s, o) in [("S3", 6), ("A4", 12), ("S4", 24)] {
        if o <= max_order {
            base.push((s.to_string(), o));
        }
    }
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            let o = base[i].1 * base[j].1;
            if o <= max_order {
                out.push((format!("{}x{}", base[i].0, base[j].0), o));
            }
        }
    }
    out
}
