//! Compression multiplicities by explicit rank formulas, and the
//! limit-to-colimit generalized rank used to cross-check them.
//!
//! For a compressed poset `Q = I^ξ` with sources `a_1..a_n` and sinks
//! `b_1..b_m` the multiplicity is
//!
//! ```text
//! rank [ M̃  0 ] - rank M̃ - rank M̂
//!      [ β  M̂ ]
//! ```
//!
//! where `M̃` has a block row for every minimal upper bound `c` of a source
//! pair, `M̂` a block column for every maximal lower bound `d` of a sink pair,
//! and `β` carries `M_{b_1,a_1}` for one comparable pair `a_1 ≤ b_1`. When
//! `n = 1` or `m = 1` the corresponding matrix is empty.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::compression::{compress, CompressionDatum, CompressionSystem};
use crate::error::{Error, Result};
use crate::lattice::{Interval, IntervalLattice};
use crate::linalg::{
    block_assemble, cokernel_projection, kernel_basis, mul, rank, BlockLayout, Field, Matrix,
};
use crate::module::PersistenceModule;
use crate::poset::Poset;

type Pair = (usize, usize);

/// Minimal upper bounds of source pairs and maximal lower bounds of sink
/// pairs, as `((lo, hi), witness)` in lexicographic order. Indices are
/// elements of the compressed poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalJoins {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub sc1: Vec<(Pair, usize)>,
    pub sk1: Vec<(Pair, usize)>,
}

pub fn extremal_joins(q: &Poset) -> ExtremalJoins {
    let full = q.full_set();
    let sources = q.minimal(&full);
    let sinks = q.maximal(&full);
    let mut sc1 = Vec::new();
    for (i, &a) in sources.iter().enumerate() {
        for &a2 in &sources[i + 1..] {
            let mut common = q.up_set(a).clone();
            common.intersect_with(q.up_set(a2));
            for c in q.minimal(&common) {
                sc1.push(((a, a2), c));
            }
        }
    }
    let mut sk1 = Vec::new();
    for (i, &b) in sinks.iter().enumerate() {
        for &b2 in &sinks[i + 1..] {
            let mut common = q.down_set(b).clone();
            common.intersect_with(q.down_set(b2));
            for d in q.maximal(&common) {
                sk1.push(((b, b2), d));
            }
        }
    }
    ExtremalJoins {
        sources,
        sinks,
        sc1,
        sk1,
    }
}

/// Drops rows of `M̃` (columns of `M̂`) that are combinations of others.
///
/// A side is pruned only when every pair has exactly one witness. Row
/// `{i,k}` goes when some `a_j ≤ a_i ∨ a_k` and rows `{i,j}`, `{j,k}` are
/// still present; then it equals a combination of those two rows. Dually for
/// sinks. The multiplicity is unchanged.
pub fn redundancy_prune(q: &Poset, joins: &ExtremalJoins) -> ExtremalJoins {
    ExtremalJoins {
        sources: joins.sources.clone(),
        sinks: joins.sinks.clone(),
        sc1: prune_side(&joins.sources, &joins.sc1, |j, w| q.leq(j, w)),
        sk1: prune_side(&joins.sinks, &joins.sk1, |j, w| q.leq(w, j)),
    }
}

fn prune_side(
    extremes: &[usize],
    entries: &[(Pair, usize)],
    below_witness: impl Fn(usize, usize) -> bool,
) -> Vec<(Pair, usize)> {
    let n = extremes.len();
    if entries.len() != n * n.saturating_sub(1) / 2 {
        return entries.to_vec();
    }
    let witness: BTreeMap<Pair, usize> = entries.iter().copied().collect();
    if witness.len() != entries.len() {
        return entries.to_vec();
    }
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut present: BTreeSet<Pair> = witness.keys().copied().collect();
    loop {
        let removable = present.iter().rev().copied().find(|&(i, k)| {
            extremes.iter().any(|&j| {
                j != i
                    && j != k
                    && below_witness(j, witness[&(i, k)])
                    && present.contains(&key(i, j))
                    && present.contains(&key(j, k))
            })
        });
        match removable {
            Some(p) => {
                present.remove(&p);
            }
            None => break,
        }
    }
    entries
        .iter()
        .filter(|(p, _)| present.contains(p))
        .copied()
        .collect()
}

/// The pieces of the rank formula. `full` is the 2x2 block matrix.
#[derive(Clone, Debug)]
pub struct MultiplicityMatrices<E> {
    pub mtilde: Matrix<E>,
    pub mhat: Matrix<E>,
    pub beta: Matrix<E>,
    pub full: Matrix<E>,
}

impl<E: Clone> MultiplicityMatrices<E> {
    pub fn multiplicity<F: Field<Elem = E>>(&self, field: &F) -> usize {
        let total = rank(field, &self.full);
        let sub = rank(field, &self.mtilde) + rank(field, &self.mhat);
        total
            .checked_sub(sub)
            .expect("rank of the block matrix dominates its diagonal")
    }
}

/// The lexicographically least comparable (source, sink) pair of `q`.
pub fn default_pairing(q: &Poset, joins: &ExtremalJoins) -> Result<Pair> {
    joins
        .sources
        .iter()
        .flat_map(|&a| joins.sinks.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| q.leq(a, b))
        .ok_or(Error::NoComparablePair)
}

pub fn multiplicity_matrices<F: Field>(
    m: &PersistenceModule<F>,
    datum: &CompressionDatum,
    joins: &ExtremalJoins,
    pairing: Pair,
) -> Result<MultiplicityMatrices<F::Elem>> {
    let q = datum.compressed();
    let xi = |u: usize| datum.map.apply(u);
    let (a1, b1) = pairing;
    if !(q.leq(a1, b1) && joins.sources.contains(&a1) && joins.sinks.contains(&b1)) {
        return Err(Error::NoComparablePair);
    }
    let field = m.field();
    let dim = |u: usize| m.dim(xi(u));
    let s = |lo: usize, hi: usize| m.structure_map(xi(lo), xi(hi)).cloned();
    let neg = |x: Matrix<F::Elem>| crate::linalg::neg(field, &x);

    let (nsc1, nsc) = (joins.sc1.len(), joins.sources.len());
    let mut row_sizes: Vec<usize> = joins.sc1.iter().map(|&(_, c)| dim(c)).collect();
    row_sizes.extend(joins.sinks.iter().map(|&b| dim(b)));
    let mut col_sizes: Vec<usize> = joins.sources.iter().map(|&a| dim(a)).collect();
    col_sizes.extend(joins.sk1.iter().map(|&(_, d)| dim(d)));
    let src_pos = |a: usize| {
        joins
            .sources
            .iter()
            .position(|&x| x == a)
            .expect("a source")
    };
    let snk_pos = |b: usize| joins.sinks.iter().position(|&x| x == b).expect("a sink");

    let mut blocks = BTreeMap::new();
    for (r, &((lo, hi), c)) in joins.sc1.iter().enumerate() {
        blocks.insert((r, src_pos(lo)), s(lo, c)?);
        blocks.insert((r, src_pos(hi)), neg(s(hi, c)?));
    }
    blocks.insert((nsc1 + snk_pos(b1), src_pos(a1)), s(a1, b1)?);
    for (k, &((lo, hi), d)) in joins.sk1.iter().enumerate() {
        blocks.insert((nsc1 + snk_pos(lo), nsc + k), s(d, lo)?);
        blocks.insert((nsc1 + snk_pos(hi), nsc + k), neg(s(d, hi)?));
    }
    let layout = BlockLayout::new(row_sizes, col_sizes);
    let full = block_assemble(field, &layout, &blocks)?;

    let top: usize = layout.row_sizes[..nsc1].iter().sum();
    let left: usize = layout.col_sizes[..nsc].iter().sum();
    let range = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
    let (rows, cols) = (full.rows(), full.cols());
    Ok(MultiplicityMatrices {
        mtilde: full
            .select_rows(&range(0, top))
            .select_cols(&range(0, left)),
        mhat: full
            .select_rows(&range(top, rows))
            .select_cols(&range(left, cols)),
        beta: full
            .select_rows(&range(top, rows))
            .select_cols(&range(0, left)),
        full,
    })
}

/// Knobs for [`datum_multiplicity`]; the defaults give the plain formula.
#[derive(Clone, Copy, Debug, Default)]
pub struct FormulaOptions {
    pub prune: bool,
    pub pairing: Option<Pair>,
}

pub fn datum_multiplicity<F: Field>(
    m: &PersistenceModule<F>,
    datum: &CompressionDatum,
    opts: FormulaOptions,
) -> Result<usize> {
    let q = datum.compressed();
    let mut joins = extremal_joins(q);
    if joins.sources.len() == 1 && joins.sinks.len() == 1 {
        let (a, b) = (
            datum.map.apply(joins.sources[0]),
            datum.map.apply(joins.sinks[0]),
        );
        return Ok(rank(m.field(), m.structure_map(a, b)?));
    }
    if opts.prune {
        joins = redundancy_prune(q, &joins);
    }
    let pairing = match opts.pairing {
        Some(p) => p,
        None => default_pairing(q, &joins)?,
    };
    Ok(multiplicity_matrices(m, datum, &joins, pairing)?.multiplicity(m.field()))
}

/// `mult^ξ_I(M)` for interval index `interval`.
pub fn compression_multiplicity<F: Field>(
    m: &PersistenceModule<F>,
    system: &CompressionSystem,
    lattice: &IntervalLattice,
    interval: usize,
) -> Result<usize> {
    check_poset(m, lattice)?;
    let datum = compress(system, lattice, interval)?;
    datum_multiplicity(m, &datum, FormulaOptions::default())
}

fn check_poset<F: Field>(m: &PersistenceModule<F>, lattice: &IntervalLattice) -> Result<()> {
    if **m.poset() != **lattice.poset() {
        return Err(Error::PosetMismatch);
    }
    Ok(())
}

/// Multiplicities at every interval, in lattice order. Runs on the current
/// rayon pool.
pub fn invariant_table<F: Field>(
    m: &PersistenceModule<F>,
    system: &CompressionSystem,
    lattice: &IntervalLattice,
) -> Result<Vec<usize>> {
    invariant_table_with(m, system, lattice, FormulaOptions::default())
}

pub fn invariant_table_with<F: Field>(
    m: &PersistenceModule<F>,
    system: &CompressionSystem,
    lattice: &IntervalLattice,
    opts: FormulaOptions,
) -> Result<Vec<usize>> {
    check_poset(m, lattice)?;
    (0..lattice.len())
        .into_par_iter()
        .map(|i| {
            let datum = compress(system, lattice, i)?;
            datum_multiplicity(m, &datum, opts)
        })
        .collect()
}

/// The 2D-grid formula with consecutive joins and meets only.
pub fn reduced_grid_multiplicity<F: Field>(
    m: &PersistenceModule<F>,
    lattice: &IntervalLattice,
    interval: usize,
) -> Result<usize> {
    check_poset(m, lattice)?;
    let p = lattice.poset();
    if p.grid_sizes().map(<[usize]>::len) != Some(2) {
        return Err(Error::NotAGrid);
    }
    let field = m.field();
    let iv = lattice.interval(interval);
    let coords = |x: usize| p.grid_coords(x).expect("grid element").to_vec();
    let mut a = iv.sources().to_vec();
    let mut b = iv.sinks().to_vec();
    a.sort_by_key(|&x| coords(x));
    b.sort_by_key(|&x| coords(x));
    let point = |u: usize, v: usize, pick: fn(usize, usize) -> usize| {
        let c: Vec<usize> = coords(u)
            .iter()
            .zip(coords(v))
            .map(|(&s, t)| pick(s, t))
            .collect();
        p.grid_element(&c).expect("grid point")
    };
    let joins: Vec<usize> = a
        .windows(2)
        .map(|w| point(w[0], w[1], usize::max))
        .collect();
    let meets: Vec<usize> = b
        .windows(2)
        .map(|w| point(w[0], w[1], usize::min))
        .collect();
    let n = a.len();

    let mut row_sizes: Vec<usize> = joins.iter().map(|&j| m.dim(j)).collect();
    row_sizes.extend(b.iter().map(|&x| m.dim(x)));
    let mut col_sizes: Vec<usize> = a.iter().map(|&x| m.dim(x)).collect();
    col_sizes.extend(meets.iter().map(|&x| m.dim(x)));
    let mut blocks = BTreeMap::new();
    for (i, &j) in joins.iter().enumerate() {
        blocks.insert((i, i), m.structure_map(a[i], j)?.clone());
        blocks.insert(
            (i, i + 1),
            crate::linalg::neg(field, m.structure_map(a[i + 1], j)?),
        );
    }
    blocks.insert((n - 1, 0), m.structure_map(a[0], b[0])?.clone());
    for (j, &d) in meets.iter().enumerate() {
        blocks.insert((n - 1 + j, n + j), m.structure_map(d, b[j])?.clone());
        blocks.insert(
            (n - 1 + j + 1, n + j),
            crate::linalg::neg(field, m.structure_map(d, b[j + 1])?),
        );
    }
    let layout = BlockLayout::new(row_sizes, col_sizes);
    let full = block_assemble(field, &layout, &blocks)?;
    let top: usize = layout.row_sizes[..n - 1].iter().sum();
    let left: usize = layout.col_sizes[..n].iter().sum();
    let range = |s: usize, e: usize| (s..e).collect::<Vec<_>>();
    let mtilde = full
        .select_rows(&range(0, top))
        .select_cols(&range(0, left));
    let mhat = full
        .select_rows(&range(top, full.rows()))
        .select_cols(&range(left, full.cols()));
    Ok(rank(field, &full) - rank(field, &mtilde) - rank(field, &mhat))
}

/// Rank of the canonical map `lim M|_I → colim M|_I`, read at the
/// canonical-least element of `I`.
pub fn generalized_rank<F: Field>(m: &PersistenceModule<F>, interval: &Interval) -> usize {
    generalized_rank_at(m, interval, interval.members()[0]).expect("basepoint lies in the interval")
}

/// As [`generalized_rank`] with an explicit basepoint `x0 ∈ I`.
pub fn generalized_rank_at<F: Field>(
    m: &PersistenceModule<F>,
    interval: &Interval,
    x0: usize,
) -> Result<usize> {
    let p = m.poset();
    if !interval.contains(x0) {
        return Err(Error::NotContained(
            p.label(x0).to_string(),
            interval.display(p),
        ));
    }
    let field = m.field();
    let members = interval.members();
    let pos = |x: usize| members.iter().position(|&y| y == x).expect("member");
    let sizes: Vec<usize> = members.iter().map(|&x| m.dim(x)).collect();
    let arrows: Vec<(usize, usize)> = p
        .hasse_arrows()
        .iter()
        .copied()
        .filter(|&(x, y)| interval.contains(x) && interval.contains(y))
        .collect();

    // limit: families (v_x) with M_{y,x} v_x = v_y along every arrow
    let mut blocks = BTreeMap::new();
    for (k, &(x, y)) in arrows.iter().enumerate() {
        blocks.insert((k, pos(x)), m.structure_map(x, y)?.clone());
        blocks.insert(
            (k, pos(y)),
            crate::linalg::neg(field, &Matrix::identity(field, m.dim(y))),
        );
    }
    let layout = BlockLayout::new(
        arrows.iter().map(|&(_, y)| m.dim(y)).collect(),
        sizes.clone(),
    );
    let lim = kernel_basis(field, &block_assemble(field, &layout, &blocks)?);

    // colimit: the sum modulo u - M_{y,x} u for u in M(x)
    let mut blocks = BTreeMap::new();
    for (k, &(x, y)) in arrows.iter().enumerate() {
        blocks.insert(
            (pos(x), k),
            crate::linalg::neg(field, &Matrix::identity(field, m.dim(x))),
        );
        blocks.insert((pos(y), k), m.structure_map(x, y)?.clone());
    }
    let layout = BlockLayout::new(
        sizes.clone(),
        arrows.iter().map(|&(x, _)| m.dim(x)).collect(),
    );
    let coker = cokernel_projection(field, &block_assemble(field, &layout, &blocks)?);

    let offset: usize = sizes[..pos(x0)].iter().sum();
    let block: Vec<usize> = (offset..offset + m.dim(x0)).collect();
    let theta = mul(field, &coker.select_cols(&block), &lim.select_rows(&block));
    Ok(rank(field, &theta))
}
