use std::fmt::Write as _;

use super::int::Int;
use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns, rows sorted within a column.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, Int)>>,
}

/// Sorts by row, merges duplicates and drops zeros.
pub(crate) fn canonical_column(mut col: Vec<(u32, Int)>) -> Vec<(u32, Int)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, Int)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i as u32, Int::ONE)]).collect();
        IntMatrix { rows: n, cols: n, data }
    }

    /// Columns given as `(row, value)` lists in any order; duplicates add up.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, Int)>>) -> Self {
        let data: Vec<_> = columns.into_iter().map(canonical_column).collect();
        debug_assert!(data.iter().flatten().all(|e| (e.0 as usize) < rows));
        IntMatrix { rows, cols: data.len(), data }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|c| {
                (0..nrows)
                    .filter(|&r| rows[r][c] != 0)
                    .map(|r| (r as u32, Int::from(rows[r][c])))
                    .collect()
            })
            .collect();
        IntMatrix { rows: nrows, cols: ncols, data: columns }
    }

    pub(crate) fn from_lines_as_rows(rows: usize, cols: usize, lines: Vec<Vec<(u32, Int)>>) -> Self {
        let mut columns: Vec<Vec<(u32, Int)>> = vec![Vec::new(); cols];
        for (r, line) in lines.into_iter().enumerate() {
            for (c, v) in line {
                columns[c as usize].push((r as u32, v));
            }
        }
        IntMatrix { rows, cols, data: columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(u32, Int)] {
        &self.data[c]
    }

    pub fn columns(&self) -> &[Vec<(u32, Int)>] {
        &self.data
    }

    pub fn into_columns(self) -> Vec<Vec<(u32, Int)>> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        let col = &self.data[c];
        match col.binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(i) => col[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn push_column(&mut self, col: Vec<(u32, Int)>) {
        self.data.push(canonical_column(col));
        self.cols += 1;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out: Vec<Vec<(u32, Int)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                out[*r as usize].push((c as u32, v.clone()));
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data: out }
    }

    /// Rows as sparse lists, columns sorted.
    pub fn row_lists(&self) -> Vec<Vec<(u32, Int)>> {
        self.transpose().data
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other.data.iter().map(|col| self.mul_sparse(col)).collect();
        IntMatrix { rows: self.rows, cols: other.cols, data: columns }
    }

    /// `self * x` for a sparse column `x`.
    pub fn mul_sparse(&self, x: &[(u32, Int)]) -> Vec<(u32, Int)> {
        let mut acc = Vec::new();
        for (k, xv) in x {
            for (r, v) in &self.data[*k as usize] {
                acc.push((*r, v * xv));
            }
        }
        canonical_column(acc)
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![Int::ZERO; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r as usize] += v * &x[c];
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                out[*r as usize][c] = v.clone();
            }
        }
        out
    }

    /// Columns `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Text dump: `rows cols nnz` then one `r c v` triple per line.
    pub fn to_dump(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                let _ = writeln!(s, "{r} {c} {v}");
            }
        }
        s
    }

    pub fn from_dump(text: &str) -> Result<IntMatrix> {
        let bad = |what: &str| Error::Parse(format!("matrix dump: {what}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("header")))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = header[..] else {
            return Err(bad("header needs three fields"));
        };
        let mut columns: Vec<Vec<(u32, Int)>> = vec![Vec::new(); cols];
        let mut seen = 0;
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = f[..] else {
                return Err(bad("triple expected"));
            };
            let r: usize = r.parse().map_err(|_| bad("row"))?;
            let c: usize = c.parse().map_err(|_| bad("column"))?;
            let v: Int = v.parse().map_err(|_| bad("value"))?;
            if r >= rows || c >= cols {
                return Err(bad("index out of range"));
            }
            columns[c].push((r as u32, v));
            seen += 1;
        }
        if seen != nnz {
            return Err(bad("entry count does not match header"));
        }
        Ok(IntMatrix::from_columns(rows, columns))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trip() {
        let a = IntMatrix::from_dense(&[vec![2, 0, -3], vec![0, 0, 7]]);
        let text = a.to_dump();
        assert!(text.starts_with("2 3 3\n"));
        assert_eq!(IntMatrix::from_dump(&text).unwrap(), a);
        assert!(IntMatrix::from_dump("2 2 1\n0 5 1\n").is_err());
    }

    #[test]
    fn products_and_transpose() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_dense(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().get(0, 1), Int::from(3));
        assert_eq!(a.mul_vec(&[Int::ONE, Int::NEG_ONE]), vec![Int::from(-1), Int::from(-1)]);
    }

    #[test]
    fn duplicate_entries_merge() {
        let m = IntMatrix::from_columns(2, vec![vec![(1, Int::ONE), (1, Int::ONE), (0, Int::ZERO)]]);
        assert_eq!(m.column(0), &[(1, Int::from(2))]);
    }
}
