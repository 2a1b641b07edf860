//! Exact linear algebra: rank, null spaces and block assembly.
//!
//! Everything here works over any [`Field`]. Over the rationals the rank goes
//! through fraction-free elimination; kernels use Gauss-Jordan reduction.

mod field;
mod matrix;

use std::collections::BTreeMap;

pub use field::{bareiss_rank, ExactField, Field, PrimeField, Rationals};
pub use matrix::{mul, neg, sub, Matrix};

use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub reduced: Matrix<E>,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan reduction to reduced row echelon form.
pub fn echelon<F: Field>(field: &F, mut m: Matrix<F::Elem>) -> Echelon<F::Elem> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        for x in m.row_mut(r).iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..rows {
            if i == r || field.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for (x, p) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: m, pivots }
}

/// Small integer matrices, mostly for fixtures and tests.
pub fn int_matrix<F: Field>(field: &F, rows: &[&[i64]]) -> Matrix<F::Elem> {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(
        cols,
        rows.iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect(),
    )
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    if m.is_empty() {
        return 0;
    }
    field.rank(m)
}

/// Columns form a basis of the right null space of `m`.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let cols = m.cols();
    let Echelon { reduced, pivots } = echelon(field, m.clone());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(field, cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, field.one());
        for (r, &p) in pivots.iter().enumerate() {
            basis.set(p, k, field.neg(reduced.get(r, f)));
        }
    }
    basis
}

/// A full-row-rank `q` with `q * m = 0` and `rows(q) = rows(m) - rank(m)`.
pub fn cokernel_projection<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    kernel_basis(field, &m.transpose()).transpose()
}

/// Solves `a * x = b`, or `None` when inconsistent. Picks the solution with
/// free variables set to zero.
pub fn solve<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows(), b.rows());
    let (n, k) = (a.cols(), b.cols());
    let mut aug = Matrix::zeros(field, a.rows(), n + k);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        for j in 0..k {
            aug.set(i, n + j, b.get(i, j).clone());
        }
    }
    let Echelon { reduced, pivots } = echelon(field, aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(field, n, k);
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(p, j, reduced.get(r, n + j).clone());
        }
    }
    Some(x)
}

pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if a.rows() != a.cols() || rank(field, a) != a.rows() {
        return None;
    }
    solve(field, a, &Matrix::identity(field, a.rows()))
}

/// Row and column block sizes of a block matrix. Sizes may be zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockLayout {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
}

impl BlockLayout {
    pub fn new(row_sizes: Vec<usize>, col_sizes: Vec<usize>) -> Self {
        BlockLayout {
            row_sizes,
            col_sizes,
        }
    }

    fn offsets(sizes: &[usize]) -> Vec<usize> {
        let mut acc = 0;
        sizes
            .iter()
            .map(|s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    pub fn total_rows(&self) -> usize {
        self.row_sizes.iter().sum()
    }

    pub fn total_cols(&self) -> usize {
        self.col_sizes.iter().sum()
    }
}

/// Flattens a block matrix. Missing blocks are zero; blocks in a zero-size
/// row or column vanish.
pub fn block_assemble<F: Field>(
    field: &F,
    layout: &BlockLayout,
    blocks: &BTreeMap<(usize, usize), Matrix<F::Elem>>,
) -> Result<Matrix<F::Elem>> {
    let row_off = BlockLayout::offsets(&layout.row_sizes);
    let col_off = BlockLayout::offsets(&layout.col_sizes);
    let mut out = Matrix::zeros(field, layout.total_rows(), layout.total_cols());
    for (&(bi, bj), block) in blocks {
        let (Some(&h), Some(&w)) = (layout.row_sizes.get(bi), layout.col_sizes.get(bj)) else {
            return Err(Error::ShapeMismatch(format!(
                "block ({bi},{bj}) lies outside a {}x{} layout",
                layout.row_sizes.len(),
                layout.col_sizes.len()
            )));
        };
        if block.shape() != (h, w) {
            return Err(Error::ShapeMismatch(format!(
                "block ({bi},{bj}) is {}x{}, layout cell is {h}x{w}",
                block.rows(),
                block.cols()
            )));
        }
        for r in 0..h {
            for c in 0..w {
                out.set(row_off[bi] + r, col_off[bj] + c, block.get(r, c).clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(
            cols,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| Rationals.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        let f = Rationals;
        assert_eq!(rank(&f, &Matrix::identity(&f, 3)), 3);
        assert_eq!(rank(&f, &Matrix::zeros(&f, 5, 0)), 0);
        assert_eq!(rank(&f, &Matrix::zeros(&f, 0, 4)), 0);
        // determinant 1 - theta with theta = 2
        assert_eq!(rank(&f, &q(vec![vec![1, 1], vec![2, 1]])), 2);
        assert_eq!(rank(&f, &q(vec![vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let f = Rationals;
        let m = Matrix::from_rows(
            2,
            vec![
                vec![f.parse("1/2").unwrap(), f.parse("1/3").unwrap()],
                vec![f.parse("3").unwrap(), f.parse("2").unwrap()],
            ],
        );
        assert_eq!(rank(&f, &m), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = Rationals;
        let k = kernel_basis(&f, &Matrix::zeros(&f, 2, 2));
        assert_eq!(k, Matrix::identity(&f, 2));
        assert_eq!(kernel_basis(&f, &Matrix::identity(&f, 3)).cols(), 0);
        let k = kernel_basis(&f, &q(vec![vec![1, 1]]));
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(f.add(k.get(0, 0), k.get(1, 0)), f.zero());
        assert!(!f.is_zero(k.get(0, 0)));
    }

    #[test]
    fn cokernel_examples() {
        let f = Rationals;
        assert_eq!(
            cokernel_projection(&f, &Matrix::zeros(&f, 3, 2)),
            Matrix::identity(&f, 3)
        );
        assert_eq!(cokernel_projection(&f, &Matrix::identity(&f, 2)).rows(), 0);
        let c = cokernel_projection(&f, &q(vec![vec![1], vec![1]]));
        assert_eq!(c.shape(), (1, 2));
        assert_eq!(f.add(c.get(0, 0), c.get(0, 1)), f.zero());
        assert!(!f.is_zero(c.get(0, 0)));
    }

    #[test]
    fn block_assembly() {
        let f = Rationals;
        let a = q(vec![vec![1, 2], vec![3, 4]]);
        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), a.clone());
        let out = block_assemble(&f, &BlockLayout::new(vec![2], vec![2]), &blocks).unwrap();
        assert_eq!(out, a);

        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), q(vec![vec![5]]));
        blocks.insert((1, 0), q(vec![vec![7]]));
        let out = block_assemble(&f, &BlockLayout::new(vec![1, 1], vec![1]), &blocks).unwrap();
        assert_eq!(out, q(vec![vec![5], vec![7]]));

        // a zero-width column block disappears
        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), a.clone());
        blocks.insert((0, 1), Matrix::zeros(&f, 2, 0));
        let out = block_assemble(&f, &BlockLayout::new(vec![2], vec![2, 0]), &blocks).unwrap();
        assert_eq!(out, a);
        assert_eq!(rank(&f, &out), rank(&f, &a));

        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), q(vec![vec![1]]));
        assert!(matches!(
            block_assemble(&f, &BlockLayout::new(vec![2], vec![2]), &blocks),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn solve_and_inverse() {
        let f = Rationals;
        let a = q(vec![vec![2, 1], vec![1, 1]]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &inv), Matrix::identity(&f, 2));
        assert!(inverse(&f, &q(vec![vec![1, 1], vec![1, 1]])).is_none());
        assert!(solve(&f, &q(vec![vec![1], vec![1]]), &q(vec![vec![1], vec![2]])).is_none());
    }

    #[test]
    fn prime_field_rank() {
        let f = PrimeField::new(2).unwrap();
        let m = Matrix::from_rows(2, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(rank(&f, &m), 1);
        let m = Matrix::from_rows(2, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(rank(&f, &m), 2);
    }
}
