use super::engine::{eliminate, Elimination, Line, Transforms};
use super::int::Int;
use super::matrix::IntMatrix;
use super::ring::Zz;

/// `U A V = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}`, `d_i >= 1`.
///
/// Only the transforms requested through [`Transforms`] are present.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub divisors: Vec<Int>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl SmithForm {
    /// The diagonal matrix `S`.
    pub fn diagonal(&self) -> IntMatrix {
        let columns = (0..self.cols)
            .map(|c| match self.divisors.get(c) {
                Some(d) => vec![(c as u32, d.clone())],
                None => Vec::new(),
            })
            .collect();
        IntMatrix::from_columns(self.rows, columns)
    }

    /// Divisors larger than one.
    pub fn nontrivial_divisors(&self) -> Vec<Int> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn permuted(order: &[usize], mut lines: Vec<Line<Int>>) -> Vec<Line<Int>> {
    order.iter().map(|&k| std::mem::take(&mut lines[k])).collect()
}

pub(crate) fn smith_from_elimination(rows: usize, cols: usize, e: Elimination<Int>) -> SmithForm {
    let Elimination { divisors, row_order, col_order, u, u_inv, v, v_inv } = e;
    SmithForm {
        rows,
        cols,
        rank: divisors.len(),
        divisors,
        u: u.map(|l| IntMatrix::from_lines_as_rows(rows, rows, permuted(&row_order, l))),
        u_inv: u_inv.map(|l| IntMatrix::from_columns(rows, permuted(&row_order, l))),
        v: v.map(|l| IntMatrix::from_columns(cols, permuted(&col_order, l))),
        v_inv: v_inv.map(|l| IntMatrix::from_lines_as_rows(cols, cols, permuted(&col_order, l))),
    }
}

/// Smith normal form with all four transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    smith_normal_form_with(a, Transforms::ALL)
}

pub fn smith_normal_form_with(a: &IntMatrix, t: Transforms) -> SmithForm {
    let e = eliminate(&Zz, a.rows(), a.columns().to_vec(), t);
    smith_from_elimination(a.rows(), a.cols(), e)
}

/// Elementary divisors only; consumes the matrix to avoid a copy.
pub fn elementary_divisors(a: IntMatrix) -> Vec<Int> {
    let rows = a.rows();
    eliminate(&Zz, rows, a.into_columns(), Transforms::NONE).divisors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmatrix::int::int;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let sf = smith_normal_form(a);
        let (u, v) = (sf.u.as_ref().unwrap(), sf.v.as_ref().unwrap());
        assert_eq!(u.mul(a).mul(v), sf.diagonal());
        assert_eq!(u.mul(sf.u_inv.as_ref().unwrap()), IntMatrix::identity(a.rows()));
        assert_eq!(v.mul(sf.v_inv.as_ref().unwrap()), IntMatrix::identity(a.cols()));
        for w in sf.divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(sf.divisors.iter().all(|d| *d >= Int::ONE));
        sf
    }

    #[test]
    fn small_examples() {
        let sf = check(&IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(sf.divisors, vec![int(2), int(4)]);
        let sf = check(&IntMatrix::zeros(3, 2));
        assert_eq!(sf.rank, 0);
        let sf = check(&IntMatrix::identity(4));
        assert_eq!(sf.divisors, vec![Int::ONE; 4]);
        let sf = check(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(sf.divisors, vec![int(1), int(6)]);
        let sf = check(&IntMatrix::from_dense(&[vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]]));
        assert_eq!(sf.divisors, vec![int(1), int(30), int(30)]);
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = Int::from(1u64 << 62) * Int::from(1u64 << 62);
        let a = IntMatrix::from_columns(
            2,
            vec![vec![(0, big.clone()), (1, int(3))], vec![(0, int(7)), (1, big.clone() + Int::ONE)]],
        );
        check(&a);
    }

    proptest! {
        #[test]
        fn transforms_multiply_back(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(-6i64..7, 49)) {
            let dense: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| {
                let x = seed[r * 7 + c];
                if x.abs() > 3 { 0 } else { x }
            }).collect()).collect();
            check(&IntMatrix::from_dense(&dense));
        }
    }

    #[test]
    fn sparse_500_multiplies_back() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 500;
        let columns = (0..n)
            .map(|_| {
                (0..3)
                    .map(|_| (rng.gen_range(0..n) as u32, int(rng.gen_range(-2i64..=2))))
                    .collect()
            })
            .collect();
        let a = IntMatrix::from_columns(n, columns);
        check(&a);
    }
}
