//! Cochains with values in `Z/m`.

use crate::bar::{boundary_matrix, BarBasis};
use crate::budget::Config;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::zmatrix::{rem_u64, Int, IntMatrix};

/// An `n`-cochain `G^n -> Z/m`, dense over the nonidentity tuples.
/// Its value on any tuple containing the identity is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CochainVector {
    degree: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl CochainVector {
    pub fn zero(g: &FiniteGroup, degree: usize, modulus: u64) -> Self {
        let size = BarBasis::unbounded(g.order(), degree).size();
        CochainVector { degree, modulus, values: vec![0; size] }
    }

    /// Values are reduced mod `modulus`; the length must match the basis.
    pub fn from_values(g: &FiniteGroup, degree: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} must be at least 2")));
        }
        let size = BarBasis::unbounded(g.order(), degree).size();
        if values.len() != size {
            return Err(Error::InvalidArgument(format!(
                "{}-cochain needs {size} values, got {}",
                degree,
                values.len()
            )));
        }
        Ok(CochainVector { degree, modulus, values: values.into_iter().map(|x| x % modulus).collect() })
    }

    pub(crate) fn from_values_unchecked(degree: usize, modulus: u64, values: Vec<u64>) -> Self {
        CochainVector { degree, modulus, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    /// `omega(t)` for an arbitrary tuple of element ids.
    pub fn eval(&self, order: usize, t: &[ElemId]) -> u64 {
        BarBasis::unbounded(order, self.degree).index(t).map_or(0, |i| self.values[i])
    }

    fn check_compatible(&self, other: &CochainVector) {
        assert_eq!((self.degree, self.modulus, self.values.len()), (other.degree, other.modulus, other.values.len()));
    }

    pub fn add(&self, other: &CochainVector) -> CochainVector {
        self.check_compatible(other);
        let m = self.modulus;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % m).collect();
        CochainVector { values, ..*self }
    }

    pub fn scale(&self, c: u64) -> CochainVector {
        let m = self.modulus;
        let c = c % m;
        CochainVector { values: self.values.iter().map(|x| x * c % m).collect(), ..*self }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

/// `sum_r col[r] * x[r] mod m` for one sparse column.
fn pair(col: &[(u32, Int)], x: &[u64], m: u64) -> u64 {
    col.iter().fold(0u64, |acc, (r, c)| (acc + rem_u64(c, m) * x[*r as usize]) % m)
}

/// `omega -> omega . D`, the cochain `t -> omega(D t)`.
pub(crate) fn pull_back(d: &IntMatrix, omega: &[u64], m: u64) -> Vec<u64> {
    d.columns().iter().map(|col| pair(col, omega, m)).collect()
}

/// `delta alpha` for an `(n-1)`-cochain `alpha`.
pub fn coboundary(g: &FiniteGroup, alpha: &CochainVector, cfg: &Config) -> Result<CochainVector> {
    let d = boundary_matrix(g, alpha.degree + 1, cfg)?;
    let values = pull_back(&d, &alpha.values, alpha.modulus);
    Ok(CochainVector { degree: alpha.degree + 1, modulus: alpha.modulus, values })
}

/// Whether `delta omega = 0`.
pub fn is_cocycle(g: &FiniteGroup, omega: &CochainVector, cfg: &Config) -> Result<bool> {
    let d = boundary_matrix(g, omega.degree + 1, cfg)?;
    Ok(d.columns().iter().all(|col| pair(col, &omega.values, omega.modulus) == 0))
}
