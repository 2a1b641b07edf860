//! Compression systems: for each interval `I` a connected poset `I^ξ` and an
//! order-preserving map `ξ_I : I^ξ → P` landing in `I`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::IntervalLattice;
use crate::module::PosetMap;
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemKind {
    Tot,
    Ss,
    Zz,
    Custom,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Tot => "tot",
            SystemKind::Ss => "ss",
            SystemKind::Zz => "zz",
            SystemKind::Custom => "custom",
        })
    }
}

/// Explicit data for some intervals; every other interval falls back to tot.
#[derive(Clone, Debug)]
pub struct CustomSystem {
    name: String,
    entries: HashMap<FixedBitSet, PosetMap>,
}

impl CustomSystem {
    /// Each entry is an ambient member set and a map from its compressed poset
    /// into the ambient poset. Maps are checked for order preservation here;
    /// the axioms themselves are reported by [`validate_system`].
    pub fn new(
        name: impl Into<String>,
        ambient: Arc<Poset>,
        entries: Vec<(FixedBitSet, Arc<Poset>, Vec<usize>)>,
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for (set, q, v) in entries {
            map.insert(set, PosetMap::new(q, ambient.clone(), v)?);
        }
        Ok(CustomSystem {
            name: name.into(),
            entries: map,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum CompressionSystem {
    Tot,
    Ss,
    Zz,
    Custom(Arc<CustomSystem>),
}

impl CompressionSystem {
    /// Parses a built-in name. Custom systems are loaded by [`crate::io`].
    pub fn builtin(name: &str) -> Result<Self> {
        match name.trim() {
            "tot" => Ok(CompressionSystem::Tot),
            "ss" => Ok(CompressionSystem::Ss),
            "zz" => Ok(CompressionSystem::Zz),
            other => Err(Error::Input(format!(
                "unknown compression system `{other}` (expected tot, ss, zz or custom:<file>)"
            ))),
        }
    }

    pub fn kind(&self) -> SystemKind {
        match self {
            CompressionSystem::Tot => SystemKind::Tot,
            CompressionSystem::Ss => SystemKind::Ss,
            CompressionSystem::Zz => SystemKind::Zz,
            CompressionSystem::Custom(_) => SystemKind::Custom,
        }
    }

    pub fn name(&self) -> String {
        match self {
            CompressionSystem::Custom(c) => format!("custom:{}", c.name),
            other => other.kind().to_string(),
        }
    }
}

/// `ξ_I : I^ξ → P` for one interval.
#[derive(Clone, Debug)]
pub struct CompressionDatum {
    pub interval: usize,
    pub map: PosetMap,
}

impl CompressionDatum {
    pub fn compressed(&self) -> &Arc<Poset> {
        self.map.source()
    }

    pub fn sources(&self) -> Vec<usize> {
        let q = self.compressed();
        q.minimal(&q.full_set())
    }

    pub fn sinks(&self) -> Vec<usize> {
        let q = self.compressed();
        q.maximal(&q.full_set())
    }
}

fn inclusion(lattice: &IntervalLattice, interval: usize, set: &FixedBitSet) -> CompressionDatum {
    let ambient = lattice.poset();
    let (sub, members) = ambient.full_subposet(set);
    let map =
        PosetMap::new(Arc::new(sub), ambient.clone(), members).expect("inclusions preserve order");
    CompressionDatum { interval, map }
}

pub fn compress(
    system: &CompressionSystem,
    lattice: &IntervalLattice,
    interval: usize,
) -> Result<CompressionDatum> {
    let iv = lattice.interval(interval);
    match system {
        CompressionSystem::Tot => Ok(inclusion(lattice, interval, iv.set())),
        CompressionSystem::Ss => {
            let mut set = lattice.poset().set_of(iv.sources());
            for &b in iv.sinks() {
                set.insert(b);
            }
            Ok(inclusion(lattice, interval, &set))
        }
        CompressionSystem::Zz => zigzag(lattice, interval),
        CompressionSystem::Custom(c) => Ok(match c.entries.get(iv.set()) {
            Some(map) => CompressionDatum {
                interval,
                map: map.clone(),
            },
            None => inclusion(lattice, interval, iv.set()),
        }),
    }
}

/// The zigzag `a1 ≤ a1∨a2 ≥ a2 ≤ ... an`, `b1 ≥ b1∧b2 ≤ b2 ≥ ... bm`, glued by
/// `a1 ≤ b1`, with sources and sinks sorted by first coordinate. Join and meet
/// points are coordinatewise max and min.
fn zigzag(lattice: &IntervalLattice, interval: usize) -> Result<CompressionDatum> {
    let p = lattice.poset();
    if p.grid_sizes().map(<[usize]>::len) != Some(2) {
        return Err(Error::NotAGrid);
    }
    let iv = lattice.interval(interval);
    let coords = |x: usize| p.grid_coords(x).expect("grid element").to_vec();
    let mut sources = iv.sources().to_vec();
    let mut sinks = iv.sinks().to_vec();
    sources.sort_by_key(|&x| coords(x));
    sinks.sort_by_key(|&x| coords(x));

    let combine = |a: usize, b: usize, pick: fn(usize, usize) -> usize| {
        let (ca, cb) = (coords(a), coords(b));
        let c: Vec<usize> = ca.iter().zip(&cb).map(|(&u, &v)| pick(u, v)).collect();
        p.grid_element(&c)
            .expect("grid is closed under max and min")
    };

    let mut labels = Vec::new();
    let mut image = Vec::new();
    let mut relations = Vec::new();
    for (i, &a) in sources.iter().enumerate() {
        labels.push(format!("a{}", i + 1));
        image.push(a);
        if i + 1 < sources.len() {
            let j = format!("a{}v{}", i + 1, i + 2);
            relations.push((format!("a{}", i + 1), j.clone()));
            relations.push((format!("a{}", i + 2), j.clone()));
            labels.push(j);
            image.push(combine(a, sources[i + 1], usize::max));
        }
    }
    for (i, &b) in sinks.iter().enumerate() {
        labels.push(format!("b{}", i + 1));
        image.push(b);
        if i + 1 < sinks.len() {
            let m = format!("b{}^{}", i + 1, i + 2);
            relations.push((m.clone(), format!("b{}", i + 1)));
            relations.push((m.clone(), format!("b{}", i + 2)));
            labels.push(m);
            image.push(combine(b, sinks[i + 1], usize::min));
        }
    }
    relations.push(("a1".to_string(), "b1".to_string()));
    let q = Poset::from_relations(&labels, &relations)?;
    let map = PosetMap::new(Arc::new(q), p.clone(), image)?;
    Ok(CompressionDatum { interval, map })
}

/// Axiom check for one interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCheck {
    pub interval: usize,
    /// The image lies in `I`.
    pub inside: bool,
    /// The image contains every source and sink of `I`.
    pub covers_extrema: bool,
    pub connected: bool,
}

impl IntervalCheck {
    pub fn passed(&self) -> bool {
        self.inside && self.covers_extrema && self.connected
    }
}

#[derive(Clone, Debug)]
pub struct SystemReport {
    pub system: String,
    pub checks: Vec<IntervalCheck>,
    /// Segments `[x, y]` with no `x' ≤ y'` in `I^ξ` over `(x, y)`.
    pub rank_failures: Vec<usize>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IntervalCheck::passed)
    }

    pub fn is_rank_system(&self) -> bool {
        self.rank_failures.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &IntervalCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn validate_system(
    system: &CompressionSystem,
    lattice: &IntervalLattice,
) -> Result<SystemReport> {
    let mut checks = Vec::with_capacity(lattice.len());
    let mut rank_failures = Vec::new();
    for (i, iv) in lattice.intervals().iter().enumerate() {
        let datum = compress(system, lattice, i)?;
        let q = datum.compressed();
        let image: Vec<usize> = datum.map.vertex_map().to_vec();
        let inside = image.iter().all(|&x| iv.contains(x));
        let covers_extrema = iv
            .sources()
            .iter()
            .chain(iv.sinks())
            .all(|x| image.contains(x));
        checks.push(IntervalCheck {
            interval: i,
            inside,
            covers_extrema,
            connected: q.is_connected(&q.full_set()),
        });
        if iv.is_segment() {
            let (x, y) = (iv.sources()[0], iv.sinks()[0]);
            let hit =
                (0..q.len()).any(|u| image[u] == x && q.up_set(u).ones().any(|v| image[v] == y));
            if !hit {
                rank_failures.push(i);
            }
        }
    }
    Ok(SystemReport {
        system: system.name(),
        checks,
        rank_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(p: Poset) -> IntervalLattice {
        IntervalLattice::enumerate(Arc::new(p), None).unwrap()
    }

    #[test]
    fn ss_on_p1_full_is_everything() {
        let l = lattice(
            Poset::from_relations(
                &["1", "2", "3", "4"],
                &[("1", "2"), ("1", "3"), ("4", "2"), ("4", "3")],
            )
            .unwrap(),
        );
        let full = l.len() - 1;
        let d = compress(&CompressionSystem::Ss, &l, full).unwrap();
        assert_eq!(d.compressed().len(), 4);
        assert_eq!(d.compressed().hasse_arrows().len(), 4);
    }

    #[test]
    fn zigzag_two_sources_one_sink() {
        let l = lattice(Poset::grid(&[2, 2]).unwrap());
        let i = l.find(&["(1,2)", "(2,1)", "(2,2)"]).unwrap();
        let d = compress(&CompressionSystem::Zz, &l, i).unwrap();
        let q = d.compressed();
        assert_eq!(q.labels(), &["a1", "a1v2", "a2", "b1"]);
        let idx = |s: &str| q.index_of(s).unwrap();
        assert!(q.leq(idx("a1"), idx("a1v2")));
        assert!(q.leq(idx("a2"), idx("a1v2")));
        assert!(q.leq(idx("a1"), idx("b1")));
        assert_eq!(q.hasse_arrows().len(), 3);
        let p = l.poset();
        assert_eq!(d.map.apply(idx("a1v2")), p.index_of("(2,2)").unwrap());
        assert_eq!(d.map.apply(idx("a1")), p.index_of("(1,2)").unwrap());
    }

    #[test]
    fn zigzag_singleton_is_a_two_chain() {
        let l = lattice(Poset::grid(&[2, 2]).unwrap());
        let d = compress(&CompressionSystem::Zz, &l, 0).unwrap();
        assert_eq!(d.compressed().len(), 2);
        assert_eq!(d.sources().len(), 1);
        assert_eq!(d.sinks().len(), 1);
    }

    #[test]
    fn zigzag_needs_a_2d_grid() {
        let l = lattice(Poset::grid(&[3]).unwrap());
        assert!(matches!(
            compress(&CompressionSystem::Zz, &l, 0),
            Err(Error::NotAGrid)
        ));
    }

    #[test]
    fn builtin_systems_satisfy_axioms() {
        let l = lattice(Poset::grid(&[3, 2]).unwrap());
        for s in [
            CompressionSystem::Tot,
            CompressionSystem::Ss,
            CompressionSystem::Zz,
        ] {
            let r = validate_system(&s, &l).unwrap();
            assert!(r.passed(), "{}", s.name());
            assert!(r.is_rank_system(), "{}", s.name());
        }
    }

    #[test]
    fn missing_sink_is_flagged() {
        let l = lattice(Poset::grid(&[3]).unwrap());
        let p = l.poset().clone();
        let full = l.len() - 1;
        let q = Arc::new(Poset::grid(&[1]).unwrap());
        let custom = CustomSystem::new(
            "bad",
            p.clone(),
            vec![(l.interval(full).set().clone(), q, vec![0])],
        )
        .unwrap();
        let r = validate_system(&CompressionSystem::Custom(Arc::new(custom)), &l).unwrap();
        assert!(!r.passed());
        let bad: Vec<usize> = r.failures().map(|c| c.interval).collect();
        assert_eq!(bad, vec![full]);
        assert!(!r.is_rank_system());
    }
}
