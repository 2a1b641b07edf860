//! Worked example modules, usable over any field.
//!
//! Names accepted by [`by_name`]: `p1[:θ]`, `p2[:θ]`, `p3[:θ]`, `d4-m1`,
//! `d4-m2`, `d4-center`, `m-lambda[:λ]`, `tau-m`. Parameters default to 2.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{int_matrix, Field, Matrix};
use crate::module::PersistenceModule;
use crate::poset::Poset;

pub const NAMES: &[&str] = &[
    "p1",
    "p2",
    "p3",
    "d4-m1",
    "d4-m2",
    "d4-center",
    "m-lambda",
    "tau-m",
];

fn poset(elements: &[&str], arrows: &[(&str, &str)]) -> Arc<Poset> {
    Arc::new(Poset::from_relations(elements, arrows).expect("fixture posets are acyclic"))
}

fn scalar<F: Field>(f: &F, v: i64) -> Matrix<F::Elem> {
    int_matrix(f, &[&[v]])
}

/// Four elements, sources 1 and 4, sinks 2 and 3; every map is 1 except
/// `4 → 2`, which is θ. For θ ≠ 1 it is indecomposable of dimension 1.
pub fn p1<F: Field>(f: F, theta: i64) -> Result<PersistenceModule<F>> {
    let p = poset(
        &["1", "2", "3", "4"],
        &[("1", "2"), ("4", "2"), ("4", "3"), ("1", "3")],
    );
    let maps = vec![
        ("1", "2", scalar(&f, 1)),
        ("4", "2", scalar(&f, theta)),
        ("4", "3", scalar(&f, 1)),
        ("1", "3", scalar(&f, 1)),
    ];
    let dims: Vec<(&str, usize)> = ["1", "2", "3", "4"].iter().map(|&l| (l, 1)).collect();
    PersistenceModule::from_labeled(p, f, &dims, maps)
}

/// The cube with vanishing bottom and top.
pub fn p2<F: Field>(f: F, theta: i64) -> Result<PersistenceModule<F>> {
    let labels = ["1", "2", "3", "4", "5", "6", "7", "8"];
    let p = poset(
        &labels,
        &[
            ("1", "2"),
            ("5", "6"),
            ("1", "5"),
            ("2", "6"),
            ("1", "3"),
            ("5", "7"),
            ("6", "8"),
            ("2", "4"),
            ("3", "7"),
            ("7", "8"),
            ("3", "4"),
            ("4", "8"),
        ],
    );
    let dims: Vec<(&str, usize)> = labels[1..7].iter().map(|&l| (l, 1)).collect();
    let maps = vec![
        ("5", "6", scalar(&f, 1)),
        ("2", "6", scalar(&f, theta)),
        ("5", "7", scalar(&f, 1)),
        ("2", "4", scalar(&f, 1)),
        ("3", "7", scalar(&f, 1)),
        ("3", "4", scalar(&f, 1)),
    ];
    PersistenceModule::from_labeled(p, f, &dims, maps)
}

/// Nine elements fanning out of 5, which carries the zero space.
pub fn p3<F: Field>(f: F, theta: i64) -> Result<PersistenceModule<F>> {
    let labels = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];
    let p = poset(
        &labels,
        &[
            ("5", "2"),
            ("5", "4"),
            ("5", "8"),
            ("5", "6"),
            ("2", "1"),
            ("4", "1"),
            ("8", "7"),
            ("4", "7"),
            ("2", "3"),
            ("6", "3"),
            ("8", "9"),
            ("6", "9"),
        ],
    );
    let dims: Vec<(&str, usize)> = labels
        .iter()
        .filter(|&&l| l != "5")
        .map(|&l| (l, 1))
        .collect();
    let maps = vec![
        ("2", "1", scalar(&f, 1)),
        ("4", "1", scalar(&f, 1)),
        ("8", "7", scalar(&f, 1)),
        ("4", "7", scalar(&f, 1)),
        ("2", "3", scalar(&f, 1)),
        ("6", "3", scalar(&f, 1)),
        ("8", "9", scalar(&f, theta)),
        ("6", "9", scalar(&f, 1)),
    ];
    PersistenceModule::from_labeled(p, f, &dims, maps)
}

fn d4_in() -> Arc<Poset> {
    poset(&["1", "2", "3", "4"], &[("1", "2"), ("4", "2"), ("2", "3")])
}

const D4_IN_DIMS: &[(&str, usize)] = &[("1", 1), ("2", 2), ("3", 1), ("4", 1)];

/// `1 → 2 ← 4`, `2 → 3` with `k²` at 2; both incoming maps hit the same line.
pub fn d4_m1<F: Field>(f: F) -> Result<PersistenceModule<F>> {
    let maps = vec![
        ("1", "2", int_matrix(&f, &[&[1], &[1]])),
        ("4", "2", int_matrix(&f, &[&[1], &[1]])),
        ("2", "3", int_matrix(&f, &[&[1, 0]])),
    ];
    PersistenceModule::from_labeled(d4_in(), f, D4_IN_DIMS, maps)
}

/// Same poset and dimensions as [`d4_m1`], incoming maps in general position.
pub fn d4_m2<F: Field>(f: F) -> Result<PersistenceModule<F>> {
    let maps = vec![
        ("4", "2", int_matrix(&f, &[&[1], &[0]])),
        ("1", "2", int_matrix(&f, &[&[0], &[1]])),
        ("2", "3", int_matrix(&f, &[&[1, 1]])),
    ];
    PersistenceModule::from_labeled(d4_in(), f, D4_IN_DIMS, maps)
}

/// `2` below `1`, `3`, `4`, with `k³` at the centre.
pub fn d4_center<F: Field>(f: F) -> Result<PersistenceModule<F>> {
    let p = poset(&["1", "2", "3", "4"], &[("2", "1"), ("2", "3"), ("2", "4")]);
    let maps = vec![
        ("2", "4", int_matrix(&f, &[&[1, 0, 0]])),
        ("2", "1", int_matrix(&f, &[&[1, 0, 0]])),
        ("2", "3", int_matrix(&f, &[&[1, 0, 0], &[0, 1, 1]])),
    ];
    PersistenceModule::from_labeled(p, f, &[("1", 1), ("2", 3), ("3", 2), ("4", 1)], maps)
}

fn g52() -> Arc<Poset> {
    Arc::new(Poset::grid(&[5, 2]).expect("valid sizes"))
}

/// The one-parameter family `M_λ` on the 5x2 grid. Its top row has
/// dimensions 1,2,2,1,0 and its bottom row 0,1,2,2,1.
pub fn m_lambda<F: Field>(f: F, lambda: i64) -> Result<PersistenceModule<F>> {
    let id2 = Matrix::identity(&f, 2);
    let maps = vec![
        ("(1,2)", "(2,2)", int_matrix(&f, &[&[1], &[0]])),
        ("(2,2)", "(3,2)", id2.clone()),
        ("(3,2)", "(4,2)", int_matrix(&f, &[&[lambda, -1]])),
        ("(2,1)", "(2,2)", int_matrix(&f, &[&[0], &[1]])),
        ("(2,1)", "(3,1)", int_matrix(&f, &[&[0], &[1]])),
        ("(3,1)", "(3,2)", id2.clone()),
        ("(3,1)", "(4,1)", id2),
        ("(4,1)", "(4,2)", int_matrix(&f, &[&[lambda, -1]])),
        ("(4,1)", "(5,1)", int_matrix(&f, &[&[1, -1]])),
    ];
    let dims = [
        ("(1,2)", 1),
        ("(2,2)", 2),
        ("(3,2)", 2),
        ("(4,2)", 1),
        ("(5,2)", 0),
        ("(1,1)", 0),
        ("(2,1)", 1),
        ("(3,1)", 2),
        ("(4,1)", 2),
        ("(5,1)", 1),
    ];
    PersistenceModule::from_labeled(g52(), f, &dims, maps)
}

/// A module on the 5x2 grid whose structure map from `(1,1)` to `(5,2)`
/// vanishes although both ends are one-dimensional.
pub fn tau_m<F: Field>(f: F) -> Result<PersistenceModule<F>> {
    let id3 = Matrix::identity(&f, 3);
    let maps = vec![
        ("(1,1)", "(2,1)", int_matrix(&f, &[&[0], &[1]])),
        (
            "(2,1)",
            "(3,1)",
            int_matrix(&f, &[&[1, 0], &[0, 1], &[0, -1]]),
        ),
        ("(3,1)", "(4,1)", id3.clone()),
        ("(4,1)", "(5,1)", int_matrix(&f, &[&[1, 0, 0], &[0, 0, 1]])),
        (
            "(1,2)",
            "(2,2)",
            int_matrix(&f, &[&[1, 1], &[-1, 0], &[0, -1]]),
        ),
        ("(2,2)", "(3,2)", id3.clone()),
        ("(3,2)", "(4,2)", int_matrix(&f, &[&[1, 0, 0], &[0, 1, 0]])),
        ("(4,2)", "(5,2)", int_matrix(&f, &[&[1, 0]])),
        ("(1,1)", "(1,2)", int_matrix(&f, &[&[-1], &[1]])),
        (
            "(2,1)",
            "(2,2)",
            int_matrix(&f, &[&[1, 0], &[0, 1], &[0, -1]]),
        ),
        ("(3,1)", "(3,2)", id3),
        ("(4,1)", "(4,2)", int_matrix(&f, &[&[1, 0, 0], &[0, 1, 0]])),
        ("(5,1)", "(5,2)", int_matrix(&f, &[&[1, 0]])),
    ];
    let dims = [
        ("(1,1)", 1),
        ("(2,1)", 2),
        ("(3,1)", 3),
        ("(4,1)", 3),
        ("(5,1)", 2),
        ("(1,2)", 2),
        ("(2,2)", 3),
        ("(3,2)", 3),
        ("(4,2)", 2),
        ("(5,2)", 1),
    ];
    PersistenceModule::from_labeled(g52(), f, &dims, maps)
}

/// Looks up a fixture by `name` or `name:param`.
pub fn by_name<F: Field>(spec: &str, f: F) -> Result<PersistenceModule<F>> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => {
            let v = p
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Input(format!("fixture parameter `{p}` is not an integer")))?;
            (n.trim(), Some(v))
        }
        None => (spec.trim(), None),
    };
    let t = param.unwrap_or(2);
    let no_param = |m: Result<PersistenceModule<F>>| match param {
        Some(_) => Err(Error::Input(format!("fixture `{name}` takes no parameter"))),
        None => m,
    };
    match name {
        "p1" => p1(f, t),
        "p2" => p2(f, t),
        "p3" => p3(f, t),
        "m-lambda" => m_lambda(f, t),
        "d4-m1" => no_param(d4_m1(f)),
        "d4-m2" => no_param(d4_m2(f)),
        "d4-center" => no_param(d4_center(f)),
        "tau-m" => no_param(tau_m(f)),
        other => Err(Error::Input(format!(
            "unknown fixture `{other}` (known: {})",
            NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn all_fixtures_build() {
        for name in NAMES {
            by_name(name, Rationals).unwrap();
            by_name(name, PrimeField::new(5).unwrap()).unwrap();
        }
        assert!(by_name("p1:3", Rationals).is_ok());
        assert!(by_name("tau-m:1", Rationals).is_err());
        assert!(by_name("nope", Rationals).is_err());
    }

    #[test]
    fn tau_m_corner_map_vanishes() {
        let m = tau_m(Rationals).unwrap();
        let p = m.poset();
        let s = m
            .structure_map(p.index_of("(1,1)").unwrap(), p.index_of("(5,2)").unwrap())
            .unwrap();
        assert_eq!(s.shape(), (1, 1));
        assert!(s.is_zero_in(&Rationals));
    }

    #[test]
    fn m_lambda_dimensions() {
        let m = m_lambda(Rationals, 2).unwrap();
        let p = m.poset();
        let row = |y: usize| -> Vec<usize> {
            (1..=5)
                .map(|x| m.dim(p.grid_element(&[x, y]).unwrap()))
                .collect()
        };
        assert_eq!(row(2), vec![1, 2, 2, 1, 0]);
        assert_eq!(row(1), vec![0, 1, 2, 2, 1]);
    }
}
