use interval_rank::linalg::{
    bareiss_rank, block_assemble, cokernel_projection, echelon, int_matrix, inverse, kernel_basis,
    mul, rank, solve, BlockLayout,
};
use interval_rank::{Field, Matrix, PrimeField, Rationals};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0usize..=6, 0usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn build<F: Field>(f: &F, rows: &[Vec<i64>]) -> Matrix<F::Elem> {
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(
        cols,
        rows.iter()
            .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
            .collect(),
    )
}

fn laws<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<(), TestCaseError> {
    let r = rank(f, a);
    prop_assert_eq!(r, rank(f, &a.transpose()));
    prop_assert_eq!(r, echelon(f, a.clone()).pivots.len());

    let k = kernel_basis(f, a);
    prop_assert_eq!(k.cols(), a.cols() - r);
    prop_assert_eq!(rank(f, &k), k.cols());
    if a.rows() > 0 && k.cols() > 0 {
        prop_assert!(mul(f, a, &k).is_zero_in(f));
    }

    let q = cokernel_projection(f, a);
    prop_assert_eq!(q.rows(), a.rows() - r);
    prop_assert_eq!(rank(f, &q), q.rows());
    if q.rows() > 0 && a.cols() > 0 {
        prop_assert!(mul(f, &q, a).is_zero_in(f));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_kernel_cokernel_over_q(rows in small_matrix()) {
        laws(&Rationals, &build(&Rationals, &rows))?;
    }

    #[test]
    fn rank_kernel_cokernel_over_f7(rows in small_matrix()) {
        let f = PrimeField::new(7).unwrap();
        laws(&f, &build(&f, &rows))?;
    }

    #[test]
    fn bareiss_agrees_with_gauss_jordan(rows in small_matrix()) {
        let a = build(&Rationals, &rows);
        prop_assert_eq!(bareiss_rank(&a), echelon(&Rationals, a.clone()).pivots.len());
    }

    // Minors of a 6x6 matrix with entries in [-5, 5] are below 2^31 - 1, so
    // the rank cannot drop modulo that prime.
    #[test]
    fn rank_over_q_equals_rank_mod_large_prime(rows in small_matrix()) {
        let f = PrimeField::new(2_147_483_647).unwrap();
        prop_assert_eq!(rank(&Rationals, &build(&Rationals, &rows)), rank(&f, &build(&f, &rows)));
    }

    #[test]
    fn solve_reproduces_right_hand_side(rows in small_matrix(), x in prop::collection::vec(-3i64..=3, 6)) {
        let a = build(&Rationals, &rows);
        let xs: Vec<Vec<i64>> = x[..a.cols()].iter().map(|&v| vec![v]).collect();
        let xm = build(&Rationals, &xs);
        let b = if a.cols() == 0 { Matrix::zeros(&Rationals, a.rows(), 1) } else { mul(&Rationals, &a, &xm) };
        let sol = solve(&Rationals, &a, &b).expect("consistent by construction");
        if a.cols() > 0 {
            prop_assert_eq!(mul(&Rationals, &a, &sol), b);
        }
    }
}

#[test]
fn inverse_of_unimodular_matrix() {
    let f = Rationals;
    let a = int_matrix(&f, &[&[2, 1], &[1, 1]]);
    let inv = inverse(&f, &a).unwrap();
    assert_eq!(inv, int_matrix(&f, &[&[1, -1], &[-1, 2]]));
    assert!(inverse(&f, &int_matrix(&f, &[&[1, 2], &[2, 4]])).is_none());
}

#[test]
fn rank_drops_modulo_a_dividing_prime() {
    let rows = [vec![2, 0], vec![0, 3]];
    assert_eq!(rank(&Rationals, &build(&Rationals, &rows)), 2);
    assert_eq!(
        rank(
            &PrimeField::new(2).unwrap(),
            &build(&PrimeField::new(2).unwrap(), &rows)
        ),
        1
    );
}

#[test]
fn block_assembly_places_blocks_and_zero_fills() {
    let f = Rationals;
    let layout = BlockLayout::new(vec![1, 0, 2], vec![2, 1]);
    let mut blocks = BTreeMap::new();
    blocks.insert((0, 0), int_matrix(&f, &[&[1, 2]]));
    blocks.insert((2, 1), int_matrix(&f, &[&[3], &[4]]));
    let m = block_assemble(&f, &layout, &blocks).unwrap();
    assert_eq!(m, int_matrix(&f, &[&[1, 2, 0], &[0, 0, 3], &[0, 0, 4]]));

    blocks.insert((0, 1), int_matrix(&f, &[&[1, 1]]));
    assert!(block_assemble(&f, &layout, &blocks).is_err());
}
