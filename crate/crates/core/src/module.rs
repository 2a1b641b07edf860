//! Persistence modules: a vector space per element and a matrix per Hasse
//! arrow, with every composite structure map cached at construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{Interval, IntervalLattice};
use crate::linalg::{echelon, inverse, mul, Field, Matrix};
use crate::poset::Poset;

/// An order-preserving map between posets.
#[derive(Clone, Debug, PartialEq)]
pub struct PosetMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    map: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "vertex map has {} entries for a poset of {} elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Input(format!(
                "vertex map sends to index {bad} outside the target"
            )));
        }
        for x in 0..source.len() {
            for y in source.up_set(x).ones() {
                if !target.leq(map[x], map[y]) {
                    return Err(Error::NotOrderPreserving(
                        source.label(x).to_string(),
                        source.label(y).to_string(),
                    ));
                }
            }
        }
        Ok(PosetMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(poset: Arc<Poset>) -> Self {
        let map = (0..poset.len()).collect();
        PosetMap {
            source: poset.clone(),
            target: poset,
            map,
        }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PosetMap) -> Result<PosetMap> {
        if *self.target != *next.source {
            return Err(Error::PosetMismatch);
        }
        Ok(PosetMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct PersistenceModule<F: Field> {
    poset: Arc<Poset>,
    field: F,
    dims: Vec<usize>,
    arrows: BTreeMap<(usize, usize), Matrix<F::Elem>>,
    // dense n x n table, filled for comparable pairs x <= y at [x * n + y]
    maps: Vec<Option<Matrix<F::Elem>>>,
}

impl<F: Field> PartialEq for PersistenceModule<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.poset == *other.poset
            && self.field == other.field
            && self.dims == other.dims
            && self.arrows == other.arrows
    }
}

impl<F: Field> PersistenceModule<F> {
    /// Validates shapes and path independence for every comparable pair.
    ///
    /// Arrows between zero-dimensional spaces may be omitted. Keys that are
    /// not Hasse arrows are rejected.
    pub fn build(
        poset: Arc<Poset>,
        field: F,
        dims: Vec<usize>,
        mut arrows: BTreeMap<(usize, usize), Matrix<F::Elem>>,
    ) -> Result<Self> {
        let n = poset.len();
        if dims.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions given for {n} elements",
                dims.len()
            )));
        }
        for &(x, y) in arrows.keys() {
            if x >= n || y >= n {
                return Err(Error::Input(format!("arrow ({x},{y}) is out of range")));
            }
            if !poset.is_hasse(x, y) {
                return Err(Error::NotHasseArrow(
                    poset.label(x).to_string(),
                    poset.label(y).to_string(),
                ));
            }
        }
        for &(x, y) in poset.hasse_arrows() {
            let m = match arrows.get(&(x, y)) {
                Some(m) => m,
                None if dims[x] == 0 || dims[y] == 0 => {
                    arrows.insert((x, y), Matrix::zeros(&field, dims[y], dims[x]));
                    continue;
                }
                None => {
                    return Err(Error::MissingMap(
                        poset.label(x).to_string(),
                        poset.label(y).to_string(),
                    ))
                }
            };
            if m.shape() != (dims[y], dims[x]) {
                return Err(Error::ShapeMismatch(format!(
                    "map {} -> {} is {}x{}, expected {}x{}",
                    poset.label(x),
                    poset.label(y),
                    m.rows(),
                    m.cols(),
                    dims[y],
                    dims[x]
                )));
            }
        }

        let mut maps: Vec<Option<Matrix<F::Elem>>> = vec![None; n * n];
        let mut via: Vec<usize> = vec![usize::MAX; n * n];
        for &y in poset.topological_order() {
            maps[y * n + y] = Some(Matrix::identity(&field, dims[y]));
            for x in poset.down_set(y).ones().filter(|&x| x != y) {
                for &p in poset.predecessors(y) {
                    if !poset.leq(x, p) {
                        continue;
                    }
                    let lower = maps[x * n + p]
                        .as_ref()
                        .expect("filled in topological order");
                    let cand = mul(&field, &arrows[&(p, y)], lower);
                    match &maps[x * n + y] {
                        None => {
                            maps[x * n + y] = Some(cand);
                            via[x * n + y] = p;
                        }
                        Some(existing) if *existing != cand => {
                            let path = |last: usize| {
                                let mut path = trace(&via, n, x, last);
                                path.push(y);
                                path.iter().map(|&v| poset.label(v).to_string()).collect()
                            };
                            return Err(Error::CommutativityViolation {
                                x: poset.label(x).to_string(),
                                y: poset.label(y).to_string(),
                                path_a: path(via[x * n + y]),
                                path_b: path(p),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }

        Ok(PersistenceModule {
            poset,
            field,
            dims,
            arrows,
            maps,
        })
    }

    /// Builds from labels. Elements not listed in `dims` get dimension 0.
    pub fn from_labeled(
        poset: Arc<Poset>,
        field: F,
        dims: &[(&str, usize)],
        maps: Vec<(&str, &str, Matrix<F::Elem>)>,
    ) -> Result<Self> {
        let mut d = vec![0; poset.len()];
        for &(l, v) in dims {
            d[poset.index_of(l)?] = v;
        }
        let mut arrows = BTreeMap::new();
        for (a, b, m) in maps {
            arrows.insert((poset.index_of(a)?, poset.index_of(b)?), m);
        }
        Self::build(poset, field, d, arrows)
    }

    pub fn zero(poset: Arc<Poset>, field: F) -> Self {
        let dims = vec![0; poset.len()];
        Self::build(poset, field, dims, BTreeMap::new()).expect("zero module is valid")
    }

    /// `V_I`: the field on `I` with identity maps, zero elsewhere.
    pub fn interval_module(poset: Arc<Poset>, interval: &Interval, field: F) -> Self {
        let dims: Vec<usize> = (0..poset.len())
            .map(|x| usize::from(interval.contains(x)))
            .collect();
        let arrows = poset
            .hasse_arrows()
            .iter()
            .filter(|(x, y)| interval.contains(*x) && interval.contains(*y))
            .map(|&(x, y)| ((x, y), Matrix::identity(&field, 1)))
            .collect();
        Self::build(poset, field, dims, arrows).expect("interval modules commute")
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dimension_vector(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrow_maps(&self) -> &BTreeMap<(usize, usize), Matrix<F::Elem>> {
        &self.arrows
    }

    /// `M_{y,x}` for `x <= y`.
    pub fn structure_map(&self, x: usize, y: usize) -> Result<&Matrix<F::Elem>> {
        let n = self.poset.len();
        self.maps[x * n + y].as_ref().ok_or_else(|| {
            Error::NotComparable(
                self.poset.label(x).to_string(),
                self.poset.label(y).to_string(),
            )
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if *self.poset != *other.poset {
            return Err(Error::PosetMismatch);
        }
        let f = &self.field;
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mut arrows = BTreeMap::new();
        for &(x, y) in self.poset.hasse_arrows() {
            let (a, b) = (&self.arrows[&(x, y)], &other.arrows[&(x, y)]);
            let mut m = Matrix::zeros(f, dims[y], dims[x]);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    m.set(r, c, a.get(r, c).clone());
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
                }
            }
            arrows.insert((x, y), m);
        }
        Self::build(self.poset.clone(), f.clone(), dims, arrows)
    }

    /// Pullback along `f`: `(M ∘ f)(z) = M(f(z))`.
    pub fn restrict_along(&self, f: &PosetMap) -> Result<Self> {
        if **f.target() != *self.poset {
            return Err(Error::PosetMismatch);
        }
        let src = f.source().clone();
        let dims = (0..src.len()).map(|z| self.dims[f.apply(z)]).collect();
        let mut arrows = BTreeMap::new();
        for &(z, w) in src.hasse_arrows() {
            arrows.insert((z, w), self.structure_map(f.apply(z), f.apply(w))?.clone());
        }
        Self::build(src, self.field.clone(), dims, arrows)
    }

    /// Vertexwise change of basis: `M'_{y,x} = g_y M_{y,x} g_x^{-1}`.
    pub fn base_change(&self, g: &[Matrix<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        let mut inv = Vec::with_capacity(g.len());
        for (x, gx) in g.iter().enumerate() {
            if gx.shape() != (self.dims[x], self.dims[x]) {
                return Err(Error::ShapeMismatch(format!(
                    "base change at {} is {}x{}",
                    self.poset.label(x),
                    gx.rows(),
                    gx.cols()
                )));
            }
            inv.push(inverse(f, gx).ok_or_else(|| {
                Error::Input(format!(
                    "base change at {} is singular",
                    self.poset.label(x)
                ))
            })?);
        }
        let arrows = self
            .arrows
            .iter()
            .map(|(&(x, y), m)| ((x, y), mul(f, &mul(f, &g[y], m), &inv[x])))
            .collect();
        Self::build(self.poset.clone(), f.clone(), self.dims.clone(), arrows)
    }

    /// Conjugates by random invertible matrices at every element.
    pub fn random_base_change<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let g: Vec<_> = self
            .dims
            .iter()
            .map(|&d| random_invertible(&self.field, d, rng))
            .collect();
        self.base_change(&g)
            .expect("random matrices are invertible")
    }

    /// `⊕ V_J^{m_J}` for the multiplicity vector `mult` indexed by lattice.
    pub fn from_multiplicities(lattice: &IntervalLattice, field: F, mult: &[usize]) -> Self {
        let poset = lattice.poset().clone();
        let mut acc = Self::zero(poset.clone(), field.clone());
        for (j, &m) in mult.iter().enumerate() {
            let v = Self::interval_module(poset.clone(), lattice.interval(j), field.clone());
            for _ in 0..m {
                acc = acc.direct_sum(&v).expect("same poset and field");
            }
        }
        acc
    }

    /// A random interval-decomposable module with at most `max_summands`
    /// distinct summands of multiplicity at most `max_mult`, and the chosen
    /// multiplicities. With `base_change` the result is conjugated so that
    /// its matrices no longer show the decomposition.
    pub fn random_interval_decomposable<R: Rng + ?Sized>(
        lattice: &IntervalLattice,
        field: F,
        max_summands: usize,
        max_mult: usize,
        base_change: bool,
        rng: &mut R,
    ) -> (Self, Vec<usize>) {
        let mut mult = vec![0; lattice.len()];
        let k = rng.gen_range(0..=max_summands.min(lattice.len()));
        let picks: Vec<usize> = (0..lattice.len()).collect();
        for &j in picks.choose_multiple(rng, k) {
            mult[j] = rng.gen_range(1..=max_mult.max(1));
        }
        let m = Self::from_multiplicities(lattice, field, &mult);
        let m = if base_change {
            m.random_base_change(rng)
        } else {
            m
        };
        (m, mult)
    }

    /// A random module with every dimension at most `max_dim`.
    ///
    /// It is the image of a random morphism from a sum of two to four
    /// projectives to a sum of two to four injectives, generated mostly at
    /// minimal and maximal elements. Such images are often not interval
    /// decomposable.
    pub fn random<R: Rng + ?Sized>(
        poset: Arc<Poset>,
        field: F,
        max_dim: usize,
        rng: &mut R,
    ) -> Self {
        let n = poset.len();
        let full = poset.full_set();
        let (lows, highs) = (poset.minimal(&full), poset.maximal(&full));
        // generators on extremal elements make crowns, and with them
        // non-interval summands, likely
        let pick = |rng: &mut R, extremes: &[usize]| {
            if extremes.len() > 1 && rng.gen_bool(0.7) {
                extremes[rng.gen_range(0..extremes.len())]
            } else {
                rng.gen_range(0..n)
            }
        };
        loop {
            let gens: Vec<usize> = (0..rng.gen_range(2..=4))
                .map(|_| pick(rng, &lows))
                .collect();
            let cogens: Vec<usize> = (0..rng.gen_range(2..=4))
                .map(|_| pick(rng, &highs))
                .collect();
            let coeff: Vec<Vec<F::Elem>> = cogens
                .iter()
                .map(|&y| {
                    gens.iter()
                        .map(|&x| {
                            if poset.leq(x, y) {
                                field.random(rng)
                            } else {
                                field.zero()
                            }
                        })
                        .collect()
                })
                .collect();

            let mut cols = Vec::with_capacity(n);
            let mut reduced = Vec::with_capacity(n);
            let mut dims = Vec::with_capacity(n);
            for z in 0..n {
                let c: Vec<usize> = (0..gens.len()).filter(|&i| poset.leq(gens[i], z)).collect();
                let r: Vec<usize> = (0..cogens.len())
                    .filter(|&j| poset.leq(z, cogens[j]))
                    .collect();
                let f_z = Matrix::from_rows(
                    c.len(),
                    r.iter()
                        .map(|&j| c.iter().map(|&i| coeff[j][i].clone()).collect())
                        .collect(),
                );
                let e = echelon(&field, f_z);
                dims.push(e.pivots.len());
                cols.push(c);
                reduced.push(e);
            }
            if dims.iter().any(|&d| d > max_dim) {
                continue;
            }
            // basis of M(z): images of the pivot generators of f_z
            let mut arrows = BTreeMap::new();
            for &(z, w) in poset.hasse_arrows() {
                let mut m = Matrix::zeros(&field, dims[w], dims[z]);
                for (k, &pc) in reduced[z].pivots.iter().enumerate() {
                    let g = cols[z][pc];
                    let pos = cols[w]
                        .iter()
                        .position(|&h| h == g)
                        .expect("generator persists");
                    for r in 0..dims[w] {
                        m.set(r, k, reduced[w].reduced.get(r, pos).clone());
                    }
                }
                arrows.insert((z, w), m);
            }
            return Self::build(poset, field, dims, arrows).expect("images of morphisms commute");
        }
    }
}

fn trace(via: &[usize], n: usize, x: usize, y: usize) -> Vec<usize> {
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        cur = via[x * n + cur];
        path.push(cur);
    }
    path.reverse();
    path
}

pub fn random_invertible<F: Field, R: Rng + ?Sized>(
    field: &F,
    d: usize,
    rng: &mut R,
) -> Matrix<F::Elem> {
    loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| field.random(rng)).collect())
            .collect();
        let m = Matrix::from_rows(d, rows);
        if crate::linalg::rank(field, &m) == d {
            return m;
        }
    }
}
