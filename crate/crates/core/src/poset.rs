//! Finite posets stored as dense up/down bitsets.
//!
//! Elements are referred to by their index in the canonical order, which is
//! the order the labels were supplied in. Subsets are [`FixedBitSet`]s over
//! those indices.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    hasse: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    topo: Vec<usize>,
    grid: Option<Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid {
    sizes: Vec<usize>,
    coords: Vec<Vec<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds the poset generated by `relations` (pairs `a <= b`).
    pub fn from_relations<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
        };
        let pairs = relations
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_index_relations(labels, index, &pairs, None)
    }

    fn from_index_relations(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
        grid: Option<Grid>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall closure, one bitset union per comparable pair
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::Cycle(labels[x].clone(), labels[y].clone()));
                }
            }
        }

        let mut hasse = Vec::new();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[x].intersection(&down[y]).count() == 2 {
                    hasse.push((x, y));
                    succ[x].push(y);
                    pred[y].push(x);
                }
            }
        }

        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&x| (down[x].count_ones(..), x));

        Ok(Poset {
            labels,
            index,
            up,
            down,
            hasse,
            succ,
            pred,
            topo,
            grid,
        })
    }

    /// The product order on `[s1] x ... x [sd]`, labelled `(i,j,...)` from 1.
    pub fn grid(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&s| s < 1) {
            return Err(Error::InvalidSize(sizes.to_vec()));
        }
        let mut coords: Vec<Vec<usize>> = vec![vec![]];
        for &s in sizes {
            coords = coords
                .into_iter()
                .flat_map(|c| {
                    (1..=s).map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        let labels: Vec<String> = coords.iter().map(|c| coord_label(c)).collect();
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut pairs = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            for axis in 0..sizes.len() {
                if c[axis] < sizes[axis] {
                    let mut d = c.clone();
                    d[axis] += 1;
                    pairs.push((i, index[&coord_label(&d)]));
                }
            }
        }
        let grid = Grid {
            sizes: sizes.to_vec(),
            coords,
        };
        Self::from_index_relations(labels, index, &pairs, Some(grid))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label.trim())
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : x <= y}`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn hasse_arrows(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn is_hasse(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(&y)
    }

    pub fn successors(&self, x: usize) -> &[usize] {
        &self.succ[x]
    }

    pub fn predecessors(&self, x: usize) -> &[usize] {
        &self.pred[x]
    }

    /// A linear extension: `x < y` implies `x` comes first.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, members: &[usize]) -> FixedBitSet {
        let mut s = self.empty_set();
        for &m in members {
            s.insert(m);
        }
        s
    }

    pub fn set_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<FixedBitSet> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.set_of(&idx))
    }

    /// `conv(X) = up(X) ∩ down(X)`, the union of all segments between members.
    pub fn convex_hull(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        if set.is_clear() {
            return Err(Error::EmptyInput);
        }
        let mut ups = self.empty_set();
        let mut downs = self.empty_set();
        for x in set.ones() {
            ups.union_with(&self.up[x]);
            downs.union_with(&self.down[x]);
        }
        ups.intersect_with(&downs);
        Ok(ups)
    }

    pub fn is_convex(&self, set: &FixedBitSet) -> bool {
        match self.convex_hull(set) {
            Ok(h) => h == *set,
            Err(_) => true,
        }
    }

    /// Connectivity of the comparability graph restricted to `set`.
    pub fn is_connected(&self, set: &FixedBitSet) -> bool {
        let Some(start) = set.ones().next() else {
            return false;
        };
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let mut nbrs = self.up[x].clone();
            nbrs.union_with(&self.down[x]);
            nbrs.intersect_with(set);
            nbrs.difference_with(&seen);
            for y in nbrs.ones() {
                seen.insert(y);
                queue.push_back(y);
            }
        }
        seen == *set
    }

    /// Nonempty, connected and convex.
    pub fn is_interval(&self, set: &FixedBitSet) -> bool {
        !set.is_clear() && self.is_convex(set) && self.is_connected(set)
    }

    /// Minimal elements of `set`, in canonical order.
    pub fn minimal(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&x| self.down[x].intersection(set).count() == 1)
            .collect()
    }

    /// Maximal elements of `set`, in canonical order.
    pub fn maximal(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&x| self.up[x].intersection(set).count() == 1)
            .collect()
    }

    /// The induced subposet on `set`, with labels kept. Returns the member
    /// list so that local index `i` corresponds to ambient `members[i]`.
    pub fn full_subposet(&self, set: &FixedBitSet) -> (Poset, Vec<usize>) {
        let members: Vec<usize> = set.ones().collect();
        let local: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let labels: Vec<String> = members.iter().map(|&m| self.labels[m].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut pairs = Vec::new();
        for &x in &members {
            for y in self.up[x].intersection(set) {
                if y != x {
                    pairs.push((local[&x], local[&y]));
                }
            }
        }
        let sub = Self::from_index_relations(labels, index, &pairs, None)
            .expect("a subposet of a poset is a poset");
        (sub, members)
    }

    pub fn grid_sizes(&self) -> Option<&[usize]> {
        self.grid.as_ref().map(|g| g.sizes.as_slice())
    }

    pub fn grid_coords(&self, x: usize) -> Option<&[usize]> {
        self.grid.as_ref().map(|g| g.coords[x].as_slice())
    }

    pub fn grid_element(&self, coords: &[usize]) -> Option<usize> {
        self.grid.as_ref()?;
        self.index.get(&coord_label(coords)).copied()
    }

    pub fn format_set(&self, set: &FixedBitSet) -> String {
        let names: Vec<&str> = set.ones().map(|x| self.label(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub fn coord_label(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}
