//! Intervals of a finite poset and the lattice they form under inclusion.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const DEFAULT_MAX_INTERVALS: usize = 1_000_000;

/// A connected convex subset, stored with its sources and sinks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    members: Vec<usize>,
    set: FixedBitSet,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

impl Interval {
    /// Checks that `set` is an interval of `poset`.
    pub fn new(poset: &Poset, set: FixedBitSet) -> Result<Self> {
        if !poset.is_interval(&set) {
            return Err(Error::NotAnInterval(poset.format_set(&set)));
        }
        Ok(Self::new_unchecked(poset, set))
    }

    fn new_unchecked(poset: &Poset, set: FixedBitSet) -> Self {
        Interval {
            members: set.ones().collect(),
            sources: poset.minimal(&set),
            sinks: poset.maximal(&set),
            set,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.set.is_subset(&other.set)
    }

    /// A segment `[x, y]` has exactly one source and one sink.
    pub fn is_segment(&self) -> bool {
        self.sources.len() == 1 && self.sinks.len() == 1
    }

    pub fn labels<'a>(&self, poset: &'a Poset) -> Vec<&'a str> {
        self.members.iter().map(|&x| poset.label(x)).collect()
    }

    pub fn display(&self, poset: &Poset) -> String {
        poset.format_set(&self.set)
    }
}

/// All intervals in canonical order (cardinality, then member list), with
/// the strict-containment relation and the cover lists.
#[derive(Clone, Debug)]
pub struct IntervalLattice {
    poset: Arc<Poset>,
    intervals: Vec<Interval>,
    index: HashMap<FixedBitSet, usize>,
    supersets: Vec<FixedBitSet>,
    covers: Vec<Vec<usize>>,
}

impl IntervalLattice {
    /// Enumerates every interval by breadth-first hull steps from singletons.
    /// `cap` bounds the number of intervals (default one million).
    pub fn enumerate(poset: Arc<Poset>, cap: Option<usize>) -> Result<Self> {
        let cap = cap.unwrap_or(DEFAULT_MAX_INTERVALS);
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut queue = VecDeque::new();
        for x in 0..poset.len() {
            let s = poset.set_of(&[x]);
            seen.insert(s.clone());
            queue.push_back(s);
        }
        if seen.len() > cap {
            return Err(Error::BudgetExceeded { cap });
        }
        while let Some(set) = queue.pop_front() {
            let mut frontier = poset.empty_set();
            for x in set.ones() {
                for &y in poset.successors(x).iter().chain(poset.predecessors(x)) {
                    frontier.insert(y);
                }
            }
            frontier.difference_with(&set);
            for y in frontier.ones() {
                let mut grown = set.clone();
                grown.insert(y);
                let hull = poset.convex_hull(&grown)?;
                if !seen.contains(&hull) && poset.is_interval(&hull) {
                    seen.insert(hull.clone());
                    if seen.len() > cap {
                        return Err(Error::BudgetExceeded { cap });
                    }
                    queue.push_back(hull);
                }
            }
        }

        let mut intervals: Vec<Interval> = seen
            .into_iter()
            .map(|s| Interval::new_unchecked(&poset, s))
            .collect();
        intervals.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        Ok(Self::from_sorted(poset, intervals))
    }

    fn from_sorted(poset: Arc<Poset>, intervals: Vec<Interval>) -> Self {
        let n = intervals.len();
        let index = intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| (iv.set.clone(), i))
            .collect();

        let mut containing = vec![FixedBitSet::with_capacity(n); poset.len()];
        for (i, iv) in intervals.iter().enumerate() {
            for &x in &iv.members {
                containing[x].insert(i);
            }
        }
        let supersets: Vec<FixedBitSet> = intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| {
                let mut s = containing[iv.members[0]].clone();
                for &x in &iv.members[1..] {
                    s.intersect_with(&containing[x]);
                }
                s.set(i, false);
                s
            })
            .collect();

        // canonical order lists subsets first, so a scan in index order meets
        // each minimal superset before anything above it
        let covers = supersets
            .iter()
            .map(|sup| {
                let mut dominated = FixedBitSet::with_capacity(n);
                let mut cov = Vec::new();
                for j in sup.ones() {
                    if !dominated.contains(j) {
                        cov.push(j);
                        dominated.union_with(&supersets[j]);
                    }
                }
                cov
            })
            .collect();

        IntervalLattice {
            poset,
            intervals,
            index,
            supersets,
            covers,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    pub fn index_of(&self, set: &FixedBitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Looks up an interval by member labels.
    pub fn find<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let set = self.poset.set_of_labels(labels)?;
        self.index_of(&set)
            .ok_or_else(|| Error::NotAnInterval(self.poset.format_set(&set)))
    }

    /// Strict supersets of interval `i`, as a bitset over interval indices.
    pub fn strict_supersets(&self, i: usize) -> &FixedBitSet {
        &self.supersets[i]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i == j || self.supersets[i].contains(j)
    }

    /// Minimal intervals strictly containing interval `i`.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// `conv(∪ S)`. Fails with `NotConnected` when the hull falls apart,
    /// which cannot happen when the parts share an element. The empty join
    /// is not defined here; callers treat it.
    pub fn join(&self, parts: &[usize]) -> Result<usize> {
        let mut union = self.poset.empty_set();
        for &p in parts {
            union.union_with(&self.intervals[p].set);
        }
        let hull = self.poset.convex_hull(&union)?;
        self.index_of(&hull).ok_or(Error::NotConnected)
    }

    /// Interval indices that are segments, with their endpoints.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.intervals
            .iter()
            .enumerate()
            .filter(|(_, iv)| iv.is_segment())
            .map(|(i, iv)| (i, iv.sources[0], iv.sinks[0]))
    }
}
