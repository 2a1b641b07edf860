#![allow(dead_code)]

use std::sync::Arc;

use interval_rank::{Field, IntervalLattice, PersistenceModule, Poset};
use rand::Rng;

/// A random poset on `1..=max_n` elements, each pair `i < j` related with
/// probability `p` before closure.
pub fn random_poset<R: Rng>(rng: &mut R, max_n: usize, p: f64) -> Arc<Poset> {
    let n = rng.gen_range(1..=max_n);
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                rels.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Arc::new(Poset::from_relations(&labels, &rels).unwrap())
}

/// A random layered poset: elements sit on two or three levels and only
/// adjacent levels are related. These have many cycles in their Hasse
/// diagrams, which random orders rarely do.
pub fn random_layered_poset<R: Rng>(rng: &mut R, min_n: usize, max_n: usize, p: f64) -> Arc<Poset> {
    let n = rng.gen_range(min_n.max(2)..=max_n.max(2));
    let levels = rng.gen_range(2..=3usize.min(n));
    let level: Vec<usize> = (0..n)
        .map(|i| {
            if i < levels {
                i
            } else {
                rng.gen_range(0..levels)
            }
        })
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if level[j] == level[i] + 1 && rng.gen_bool(p) {
                rels.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Arc::new(Poset::from_relations(&labels, &rels).unwrap())
}

pub struct Sample<F: Field> {
    pub lattice: IntervalLattice,
    pub module: PersistenceModule<F>,
}

/// Layered posets half the time, otherwise random orders or small grids,
/// all with at most `max_n` elements.
pub fn corpus_poset<R: Rng>(rng: &mut R, max_n: usize) -> Arc<Poset> {
    let grids: Vec<[usize; 2]> = [[2, 2], [3, 2], [2, 3]]
        .into_iter()
        .filter(|g| g[0] * g[1] <= max_n)
        .collect();
    match rng.gen_range(0..4) {
        0 => random_poset(rng, max_n, 0.4),
        1 | 2 => random_layered_poset(rng, max_n.min(5), max_n, 0.7),
        _ if !grids.is_empty() => {
            Arc::new(Poset::grid(&grids[rng.gen_range(0..grids.len())]).unwrap())
        }
        _ => random_poset(rng, max_n, 0.4),
    }
}

pub fn random_sample<F: Field, R: Rng>(
    rng: &mut R,
    field: F,
    max_n: usize,
    max_dim: usize,
) -> Sample<F> {
    let poset = corpus_poset(rng, max_n);
    let lattice = IntervalLattice::enumerate(poset.clone(), None).unwrap();
    let module = PersistenceModule::random(poset, field, max_dim, rng);
    Sample { lattice, module }
}

pub fn grid_sample<F: Field, R: Rng>(
    rng: &mut R,
    field: F,
    sizes: &[usize],
    max_dim: usize,
) -> Sample<F> {
    let poset = Arc::new(Poset::grid(sizes).unwrap());
    let lattice = IntervalLattice::enumerate(poset.clone(), None).unwrap();
    let module = PersistenceModule::random(poset, field, max_dim, rng);
    Sample { lattice, module }
}

/// Intervals by brute force: every nonempty subset that is convex and
/// connected in the comparability graph, as sorted member lists.
pub fn brute_force_intervals(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let inside = |x: usize| mask >> x & 1 == 1;
        let convex = members.iter().all(|&a| {
            members
                .iter()
                .all(|&c| (0..n).all(|b| !(p.leq(a, b) && p.leq(b, c)) || inside(b)))
        });
        if !convex {
            continue;
        }
        let mut seen = vec![members[0]];
        let mut k = 0;
        while k < seen.len() {
            let x = seen[k];
            for &y in &members {
                if !seen.contains(&y) && p.comparable(x, y) {
                    seen.push(y);
                }
            }
            k += 1;
        }
        if seen.len() == members.len() {
            out.push(members);
        }
    }
    out
}
