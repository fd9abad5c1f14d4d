//! Sparse Smith elimination over a principal ideal ring.
//!
//! Columns are stored sorted by row. Unit pivots are taken first, shortest
//! column first and sparsest row within it; when no unit is left the
//! smallest entry by [`Ring::weight`] is used and 2x2 gcd transforms clear
//! its row and column. Transforms are accumulated only when requested.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::ring::Ring;

pub(crate) type Line<E> = Vec<(u32, E)>;

fn combine<R: Ring>(ring: &R, x: &R::E, a: &Line<R::E>, y: &R::E, b: &Line<R::E>) -> Line<R::E> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    let x_zero = ring.is_zero(x);
    let y_zero = ring.is_zero(y);
    loop {
        let next = match (a.get(i), b.get(j)) {
            (None, None) => break,
            (Some(p), Some(q)) if p.0 == q.0 => {
                i += 1;
                j += 1;
                (p.0, ring.add(&ring.mul(x, &p.1), &ring.mul(y, &q.1)))
            }
            (Some(p), q) if q.is_none_or(|q| p.0 < q.0) => {
                i += 1;
                if x_zero {
                    continue;
                }
                (p.0, ring.mul(x, &p.1))
            }
            (_, Some(q)) => {
                j += 1;
                if y_zero {
                    continue;
                }
                (q.0, ring.mul(y, &q.1))
            }
            _ => unreachable!(),
        };
        if !ring.is_zero(&next.1) {
            out.push(next);
        }
    }
    out
}

/// `a + c * b`
fn axpy<R: Ring>(ring: &R, a: &Line<R::E>, c: &R::E, b: &Line<R::E>) -> Line<R::E> {
    combine(ring, &ring.one(), a, c, b)
}

/// A family of sparse vectors (rows or columns of a transform).
pub(crate) struct Lines<E> {
    pub lines: Vec<Line<E>>,
}

impl<E: Clone> Lines<E> {
    fn identity<R: Ring<E = E>>(ring: &R, n: usize) -> Self {
        Lines { lines: (0..n).map(|i| vec![(i as u32, ring.one())]).collect() }
    }

    /// `line[dst] += c * line[src]`
    fn axpy<R: Ring<E = E>>(&mut self, ring: &R, dst: usize, c: &E, src: usize) {
        let new = axpy(ring, &self.lines[dst], c, &self.lines[src]);
        self.lines[dst] = new;
    }

    /// `(a, b) <- (x a + y b, z a + w b)`
    fn combine2<R: Ring<E = E>>(&mut self, ring: &R, a: usize, b: usize, [x, y, z, w]: [&E; 4]) {
        let na = combine(ring, x, &self.lines[a], y, &self.lines[b]);
        let nb = combine(ring, z, &self.lines[a], w, &self.lines[b]);
        self.lines[a] = na;
        self.lines[b] = nb;
    }

    fn scale<R: Ring<E = E>>(&mut self, ring: &R, a: usize, c: &E) {
        for e in &mut self.lines[a] {
            e.1 = ring.mul(c, &e.1);
        }
        self.lines[a].retain(|e| !ring.is_zero(&e.1));
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Transforms {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Transforms = Transforms { u: true, u_inv: true, v: true, v_inv: true };
}

/// Outcome of an elimination: with `P`, `Q` the permutations given by
/// `row_order` and `col_order`, `(P U) A (V Q) = diag(pivots)`.
///
/// Transform lines are indexed by the original row/column of `A`:
/// `u[r]` is a row of `U`, `u_inv[r]` a column of `U^{-1}`, `v[c]` a column
/// of `V` and `v_inv[c]` a row of `V^{-1}`.
pub(crate) struct Elimination<E> {
    pub divisors: Vec<E>,
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
    pub u: Option<Vec<Line<E>>>,
    pub u_inv: Option<Vec<Line<E>>>,
    pub v: Option<Vec<Line<E>>>,
    pub v_inv: Option<Vec<Line<E>>>,
}

struct Engine<'r, R: Ring> {
    ring: &'r R,
    nrows: usize,
    ncols: usize,
    cols: Vec<Line<R::E>>,
    row_cols: Vec<Vec<u32>>,
    row_nnz: Vec<u32>,
    row_done: Vec<bool>,
    col_done: Vec<bool>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
    u: Option<Lines<R::E>>,
    u_inv: Option<Lines<R::E>>,
    v: Option<Lines<R::E>>,
    v_inv: Option<Lines<R::E>>,
    pivots: Vec<(usize, usize)>,
}

impl<'r, R: Ring> Engine<'r, R> {
    fn new(ring: &'r R, nrows: usize, cols: Vec<Line<R::E>>, t: Transforms) -> Self {
        let ncols = cols.len();
        let mut row_cols = vec![Vec::new(); nrows];
        let mut row_nnz = vec![0u32; nrows];
        let mut heap = BinaryHeap::with_capacity(ncols);
        for (c, col) in cols.iter().enumerate() {
            for (r, _) in col {
                row_cols[*r as usize].push(c as u32);
                row_nnz[*r as usize] += 1;
            }
            heap.push(Reverse((col.len() as u32, c as u32)));
        }
        let lines = |on: bool, n: usize| on.then(|| Lines::identity(ring, n));
        Engine {
            ring,
            nrows,
            ncols,
            cols,
            row_cols,
            row_nnz,
            row_done: vec![false; nrows],
            col_done: vec![false; ncols],
            heap,
            u: lines(t.u, nrows),
            u_inv: lines(t.u_inv, nrows),
            v: lines(t.v, ncols),
            v_inv: lines(t.v_inv, ncols),
            pivots: Vec::new(),
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&R::E> {
        let col = &self.cols[c];
        col.binary_search_by_key(&(r as u32), |e| e.0).ok().map(|i| &col[i].1)
    }

    fn set_column(&mut self, c: usize, new: Line<R::E>) {
        let old = std::mem::take(&mut self.cols[c]);
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < new.len() {
            let ro = old.get(i).map_or(u32::MAX, |e| e.0);
            let rn = new.get(j).map_or(u32::MAX, |e| e.0);
            if ro == rn {
                i += 1;
                j += 1;
            } else if ro < rn {
                self.row_nnz[ro as usize] -= 1;
                i += 1;
            } else {
                self.row_nnz[rn as usize] += 1;
                self.row_cols[rn as usize].push(c as u32);
                j += 1;
            }
        }
        self.heap.push(Reverse((new.len() as u32, c as u32)));
        self.cols[c] = new;
    }

    /// Active columns holding a nonzero in row `r`, ascending.
    fn row_support(&mut self, r: usize) -> Vec<u32> {
        let mut cand = std::mem::take(&mut self.row_cols[r]);
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&c| !self.col_done[c as usize] && self.entry(r, c as usize).is_some());
        self.row_cols[r] = cand.clone();
        cand
    }

    /// `col k += c * col j`
    fn col_axpy(&mut self, k: usize, c: &R::E, j: usize) {
        let ring = self.ring;
        let new = axpy(ring, &self.cols[k], c, &self.cols[j]);
        self.set_column(k, new);
        if let Some(v) = &mut self.v {
            v.axpy(ring, k, c, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.axpy(ring, j, &ring.neg(c), k);
        }
    }

    /// `(col j, col k) <- (s j + t k, u j + v k)`
    fn col_2x2(&mut self, j: usize, k: usize, [s, t, u, v]: [&R::E; 4]) {
        let ring = self.ring;
        let nj = combine(ring, s, &self.cols[j], t, &self.cols[k]);
        let nk = combine(ring, u, &self.cols[j], v, &self.cols[k]);
        self.set_column(j, nj);
        self.set_column(k, nk);
        if let Some(vv) = &mut self.v {
            vv.combine2(ring, j, k, [s, t, u, v]);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.combine2(ring, j, k, [v, &ring.neg(u), &ring.neg(t), s]);
        }
    }

    /// `(row i, row l) <- (s i + t l, u i + v l)`
    fn row_2x2(&mut self, i: usize, l: usize, [s, t, u, v]: [&R::E; 4]) {
        let ring = self.ring;
        let mut touched = self.row_support(i);
        touched.extend(self.row_support(l));
        touched.sort_unstable();
        touched.dedup();
        for c in touched {
            let c = c as usize;
            let a = self.entry(i, c).cloned().unwrap_or_else(|| ring.zero());
            let b = self.entry(l, c).cloned().unwrap_or_else(|| ring.zero());
            let na = ring.add(&ring.mul(s, &a), &ring.mul(t, &b));
            let nb = ring.add(&ring.mul(u, &a), &ring.mul(v, &b));
            let mut col: Line<R::E> = self.cols[c]
                .iter()
                .filter(|e| e.0 as usize != i && e.0 as usize != l)
                .cloned()
                .collect();
            for (r, x) in [(i, na), (l, nb)] {
                if !ring.is_zero(&x) {
                    col.push((r as u32, x));
                }
            }
            col.sort_by_key(|e| e.0);
            self.set_column(c, col);
        }
        if let Some(uu) = &mut self.u {
            uu.combine2(ring, i, l, [s, t, u, v]);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.combine2(ring, i, l, [v, &ring.neg(u), &ring.neg(t), s]);
        }
    }

    fn eliminate(&mut self, i: usize, j: usize) {
        let ring = self.ring;
        loop {
            for k in self.row_support(i) {
                let k = k as usize;
                if k == j {
                    continue;
                }
                let Some(a) = self.entry(i, k).cloned() else { continue };
                let p = self.entry(i, j).cloned().expect("pivot present");
                match ring.div_exact(&a, &p) {
                    Some(q) => self.col_axpy(k, &ring.neg(&q), j),
                    None => {
                        let [_, s, t, u, v] = ring.gcdex(&p, &a);
                        self.col_2x2(j, k, [&s, &t, &u, &v]);
                    }
                }
            }
            // Row i now holds only the pivot.
            let p = self.entry(i, j).cloned().expect("pivot present");
            let others: Line<R::E> = self.cols[j].iter().filter(|e| e.0 as usize != i).cloned().collect();
            let mut cleared: Vec<(usize, R::E)> = Vec::new();
            let mut blocked = None;
            for (l, b) in others {
                match ring.div_exact(&b, &p) {
                    Some(q) => cleared.push((l as usize, q)),
                    None => {
                        blocked = Some((l as usize, b));
                        break;
                    }
                }
            }
            if !cleared.is_empty() {
                let drop: Vec<usize> = cleared.iter().map(|e| e.0).collect();
                let col: Line<R::E> = self.cols[j]
                    .iter()
                    .filter(|e| !drop.contains(&(e.0 as usize)))
                    .cloned()
                    .collect();
                self.set_column(j, col);
                for (l, q) in &cleared {
                    let c = ring.neg(q);
                    if let Some(uu) = &mut self.u {
                        uu.axpy(ring, *l, &c, i);
                    }
                    if let Some(ui) = &mut self.u_inv {
                        ui.axpy(ring, i, q, *l);
                    }
                }
            }
            match blocked {
                None => break,
                Some((l, b)) => {
                    let [_, s, t, u, v] = ring.gcdex(&p, &b);
                    self.row_2x2(i, l, [&s, &t, &u, &v]);
                }
            }
        }
        self.row_done[i] = true;
        self.col_done[j] = true;
        self.row_cols[i] = Vec::new();
        self.pivots.push((i, j));
    }

    fn unit_pivot(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((len, c))) = self.heap.pop() {
            let c = c as usize;
            if self.col_done[c] || len == 0 || self.cols[c].len() != len as usize {
                continue;
            }
            let best = self.cols[c]
                .iter()
                .filter(|e| self.ring.is_unit(&e.1))
                .min_by_key(|e| self.row_nnz[e.0 as usize]);
            if let Some(e) = best {
                return Some((e.0 as usize, c));
            }
        }
        None
    }

    fn smallest_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<((u64, usize), usize, usize)> = None;
        for (c, col) in self.cols.iter().enumerate() {
            if self.col_done[c] {
                continue;
            }
            for (r, x) in col {
                let key = (self.ring.weight(x), col.len() * self.row_nnz[*r as usize] as usize);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, *r as usize, c));
                }
            }
        }
        best.map(|b| (b.1, b.2))
    }

    fn run(mut self) -> Elimination<R::E> {
        loop {
            if let Some((i, j)) = self.unit_pivot() {
                self.eliminate(i, j);
                continue;
            }
            match self.smallest_pivot() {
                Some((i, j)) => self.eliminate(i, j),
                None => break,
            }
        }
        self.finish()
    }

    fn scale_col(&mut self, j: usize, c: &R::E, c_inv: &R::E) {
        let ring = self.ring;
        if let Some(v) = &mut self.v {
            v.scale(ring, j, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.scale(ring, j, c_inv);
        }
    }

    fn finish(mut self) -> Elimination<R::E> {
        let ring = self.ring;
        let pivots = std::mem::take(&mut self.pivots);
        let mut entries: Vec<(usize, usize, R::E)> = Vec::with_capacity(pivots.len());
        for (i, j) in pivots {
            let p = self.entry(i, j).cloned().expect("pivot present");
            let [c, n, c_inv] = ring.normalize(&p);
            self.scale_col(j, &c, &c_inv);
            entries.push((i, j, n));
        }
        let (mut chain, rest): (Vec<_>, Vec<_>) = entries.into_iter().partition(|e| ring.is_unit(&e.2));
        let start = chain.len();
        chain.extend(rest);
        for a in start..chain.len() {
            for b in a + 1..chain.len() {
                if ring.div_exact(&chain[b].2, &chain[a].2).is_some() {
                    continue;
                }
                let (r1, c1, x) = chain[a].clone();
                let (r2, c2, y) = chain[b].clone();
                let [g, s, t, u, v] = ring.gcdex(&x, &y);
                let tu = ring.mul(&t, &u);
                let sv = ring.mul(&s, &v);
                if let Some(uu) = &mut self.u {
                    uu.combine2(ring, r1, r2, [&s, &t, &u, &v]);
                }
                if let Some(ui) = &mut self.u_inv {
                    ui.combine2(ring, r1, r2, [&v, &ring.neg(&u), &ring.neg(&t), &s]);
                }
                let one = ring.one();
                if let Some(vv) = &mut self.v {
                    vv.combine2(ring, c1, c2, [&one, &one, &tu, &sv]);
                }
                if let Some(vi) = &mut self.v_inv {
                    vi.combine2(ring, c1, c2, [&sv, &ring.neg(&tu), &ring.neg(&one), &one]);
                }
                let lcm = ring.mul(&v, &y);
                for (slot, val, col) in [(a, g, c1), (b, lcm, c2)] {
                    let [c, n, c_inv] = ring.normalize(&val);
                    self.scale_col(col, &c, &c_inv);
                    chain[slot].2 = n;
                }
            }
        }
        chain.retain(|e| !ring.is_zero(&e.2));
        let mut row_used = vec![false; self.nrows];
        let mut col_used = vec![false; self.ncols];
        let mut row_order = Vec::with_capacity(self.nrows);
        let mut col_order = Vec::with_capacity(self.ncols);
        for (i, j, _) in &chain {
            row_used[*i] = true;
            col_used[*j] = true;
            row_order.push(*i);
            col_order.push(*j);
        }
        row_order.extend((0..self.nrows).filter(|&r| !row_used[r]));
        col_order.extend((0..self.ncols).filter(|&c| !col_used[c]));
        Elimination {
            divisors: chain.into_iter().map(|e| e.2).collect(),
            row_order,
            col_order,
            u: self.u.map(|l| l.lines),
            u_inv: self.u_inv.map(|l| l.lines),
            v: self.v.map(|l| l.lines),
            v_inv: self.v_inv.map(|l| l.lines),
        }
    }
}

/// Smith elimination of the `nrows x cols.len()` matrix given by columns.
pub(crate) fn eliminate<R: Ring>(ring: &R, nrows: usize, cols: Vec<Line<R::E>>, t: Transforms) -> Elimination<R::E> {
    Engine::new(ring, nrows, cols, t).run()
}
