use super::engine::{eliminate, Transforms};
use super::int::Int;
use super::matrix::{canonical_column, IntMatrix};
use super::ring::Zz;
use super::snf::{smith_normal_form_with, SmithForm};
use crate::error::{Error, Result};
use crate::par::Exec;

/// A Z-basis of `ker(a)`: the last `cols - rank` columns of `V`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<Int>> {
    let sf = smith_normal_form_with(a, Transforms { v: true, ..Transforms::NONE });
    let v = sf.v.expect("requested V");
    (sf.rank..a.cols())
        .map(|c| {
            let mut dense = vec![Int::ZERO; a.cols()];
            for (r, x) in v.column(c) {
                dense[*r as usize] = x.clone();
            }
            dense
        })
        .collect()
}

/// Tail of `V^{-1} z` for `z` in the kernel of the matrix behind `sf`.
pub fn kernel_coordinates(z: &[Int], sf: &SmithForm) -> Result<Vec<Int>> {
    let v_inv = sf
        .v_inv
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("Smith form lacks V^{-1}".into()))?;
    if z.len() != sf.cols {
        return Err(Error::InvalidArgument(format!("vector of length {} for {} columns", z.len(), sf.cols)));
    }
    let y = v_inv.mul_vec(z);
    if y[..sf.rank].iter().any(|x| !x.is_zero()) {
        return Err(Error::NotInKernel);
    }
    Ok(y[sf.rank..].to_vec())
}

/// Bulk kernel coordinates for one matrix.
///
/// Stores the tail rows of `V^{-1}` transposed, so that the coordinates of
/// a sparse vector cost one lookup per nonzero.
pub struct KernelMap {
    a: IntMatrix,
    dim: usize,
    by_source: Vec<Vec<(u32, Int)>>,
}

impl KernelMap {
    pub fn new(a: &IntMatrix) -> Self {
        let e = eliminate(&Zz, a.rows(), a.columns().to_vec(), Transforms { v_inv: true, ..Transforms::NONE });
        let rank = e.divisors.len();
        let mut lines = e.v_inv.expect("requested V^{-1}");
        let mut by_source: Vec<Vec<(u32, Int)>> = vec![Vec::new(); a.cols()];
        for (t, &c) in e.col_order[rank..].iter().enumerate() {
            for (src, x) in std::mem::take(&mut lines[c]) {
                by_source[src as usize].push((t as u32, x));
            }
        }
        KernelMap { a: a.clone(), dim: a.cols() - rank, by_source }
    }

    /// Rank of the kernel.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// Sparse coordinates of a sparse kernel vector.
    pub fn coords(&self, z: &[(u32, Int)]) -> Result<Vec<(u32, Int)>> {
        if !self.a.mul_sparse(z).is_empty() {
            return Err(Error::NotInKernel);
        }
        let mut acc = Vec::new();
        for (c, x) in z {
            for (t, y) in &self.by_source[*c as usize] {
                acc.push((*t, x * y));
            }
        }
        Ok(canonical_column(acc))
    }

    /// Coordinates of many vectors as the columns of a `dim x n` matrix.
    pub fn coords_matrix(&self, vectors: &[Vec<(u32, Int)>], exec: Exec) -> Result<IntMatrix> {
        let cols: Vec<Vec<(u32, Int)>> = exec.map_slice(vectors, |z| self.coords(z)).into_iter().collect::<Result<_>>()?;
        Ok(IntMatrix::from_columns(self.dim, cols))
    }
}
