//! Möbius inversion on the interval lattice and the resulting signed
//! interval multiplicities.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::compression::CompressionSystem;
use crate::error::{Error, Result};
use crate::invariants::invariant_table;
use crate::lattice::IntervalLattice;
use crate::linalg::Field;
use crate::module::PersistenceModule;

pub const DEFAULT_MAX_COVERS: usize = 20;

/// `μ(I, J) = Σ (-1)^{|S|}` over subsets `S ⊆ Cov(I)` with `⋁S = J`,
/// where the empty join is `I` itself.
pub fn mobius_value(lattice: &IntervalLattice, i: usize, j: usize) -> Result<i64> {
    if !lattice.contains(i, j) {
        let p = lattice.poset();
        return Err(Error::NotContained(
            lattice.interval(i).display(p),
            lattice.interval(j).display(p),
        ));
    }
    Ok(mobius_row(lattice, i, DEFAULT_MAX_COVERS)?
        .get(&j)
        .copied()
        .unwrap_or(0))
}

/// All nonzero `μ(I, ·)`, by walking the subsets of `Cov(I)`.
pub fn mobius_row(
    lattice: &IntervalLattice,
    i: usize,
    max_covers: usize,
) -> Result<BTreeMap<usize, i64>> {
    let covers = lattice.covers(i);
    if covers.len() > max_covers {
        return Err(Error::SubsetBudgetExceeded {
            interval: lattice.interval(i).display(lattice.poset()),
            covers: covers.len(),
            cap: max_covers,
        });
    }
    let mut row = BTreeMap::new();
    // depth-first over subsets, carrying the running join
    let mut stack = vec![(0usize, i, 1i64)];
    while let Some((next, join, sign)) = stack.pop() {
        *row.entry(join).or_insert(0) += sign;
        for (k, &c) in covers.iter().enumerate().skip(next) {
            let grown = if join == i {
                c
            } else {
                lattice.join(&[join, c])?
            };
            stack.push((k + 1, grown, -sign));
        }
    }
    row.retain(|_, v| *v != 0);
    Ok(row)
}

fn as_i64<T: ToPrimitive>(v: T) -> i64 {
    v.to_i64().expect("multiplicities fit in i64")
}

/// `δ(I) = c(I) - Σ_{J ⊋ I} δ(J)`, from the top of the lattice down.
pub fn signed_multiplicity<T: Copy + ToPrimitive>(
    table: &[T],
    lattice: &IntervalLattice,
) -> Vec<i64> {
    let mut delta = vec![0i64; lattice.len()];
    for i in (0..lattice.len()).rev() {
        let above: i64 = lattice.strict_supersets(i).ones().map(|j| delta[j]).sum();
        delta[i] = as_i64(table[i]) - above;
    }
    delta
}

/// `δ(I) = Σ_{S ⊆ Cov(I)} (-1)^{|S|} c(⋁S)`, capped at `max_covers` covers.
pub fn signed_multiplicity_subset_formula<T: Copy + ToPrimitive>(
    table: &[T],
    lattice: &IntervalLattice,
    max_covers: usize,
) -> Result<Vec<i64>> {
    (0..lattice.len())
        .map(|i| {
            Ok(mobius_row(lattice, i, max_covers)?
                .into_iter()
                .map(|(j, mu)| mu * as_i64(table[j]))
                .sum())
        })
        .collect()
}

/// `c(I) = Σ_{J ⊇ I} δ(J)`.
pub fn zeta_transform(delta: &[i64], lattice: &IntervalLattice) -> Vec<i64> {
    (0..lattice.len())
        .map(|i| {
            delta[i]
                + lattice
                    .strict_supersets(i)
                    .ones()
                    .map(|j| delta[j])
                    .sum::<i64>()
        })
        .collect()
}

/// A signed barcode: two multisets of intervals, by lattice index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Replacement {
    pub system: String,
    pub delta: Vec<i64>,
    pub positive: Vec<(usize, u64)>,
    pub negative: Vec<(usize, u64)>,
}

impl Replacement {
    pub fn from_delta(system: impl Into<String>, delta: Vec<i64>) -> Self {
        let positive = delta
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (i, d as u64))
            .collect();
        let negative = delta
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < 0)
            .map(|(i, &d)| (i, d.unsigned_abs()))
            .collect();
        Replacement {
            system: system.into(),
            delta,
            positive,
            negative,
        }
    }

    fn multiplicities(part: &[(usize, u64)], len: usize) -> Vec<usize> {
        let mut m = vec![0; len];
        for &(i, k) in part {
            m[i] = k as usize;
        }
        m
    }

    /// The two interval-decomposable modules `(R₊, R₋)`.
    pub fn modules<F: Field>(
        &self,
        lattice: &IntervalLattice,
        field: F,
    ) -> (PersistenceModule<F>, PersistenceModule<F>) {
        let pos = Self::multiplicities(&self.positive, lattice.len());
        let neg = Self::multiplicities(&self.negative, lattice.len());
        (
            PersistenceModule::from_multiplicities(lattice, field.clone(), &pos),
            PersistenceModule::from_multiplicities(lattice, field, &neg),
        )
    }
}

pub fn interval_replacement<F: Field>(
    m: &PersistenceModule<F>,
    system: &CompressionSystem,
    lattice: &IntervalLattice,
) -> Result<Replacement> {
    let table = invariant_table(m, system, lattice)?;
    let delta = signed_multiplicity(&table, lattice);
    Ok(Replacement::from_delta(system.name(), delta))
}

/// Invariants of a signed barcode, read off without building modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementInvariants {
    /// Multiplicity at each interval.
    pub table: Vec<i64>,
    pub dims: Vec<i64>,
    /// Rank at each segment `[x, y]`.
    pub segment_ranks: BTreeMap<(usize, usize), i64>,
}

pub fn replacement_invariants(r: &Replacement, lattice: &IntervalLattice) -> ReplacementInvariants {
    let n = lattice.poset().len();
    let mut dims = vec![0i64; n];
    for (j, &d) in r.delta.iter().enumerate() {
        if d != 0 {
            for &x in lattice.interval(j).members() {
                dims[x] += d;
            }
        }
    }
    let table = zeta_transform(&r.delta, lattice);
    let segment_ranks = lattice
        .segments()
        .map(|(i, x, y)| ((x, y), table[i]))
        .collect();
    ReplacementInvariants {
        table,
        dims,
        segment_ranks,
    }
}
