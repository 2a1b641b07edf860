//! Compares the total multiplicity with the limit-to-colimit rank on random
//! modules over random posets.
//!
//!     cargo run --release --example oracle_check -- [count]

use std::sync::Arc;

use interval_rank::{
    generalized_rank, invariant_table, CompressionSystem, IntervalLattice, PersistenceModule,
    Poset, PrimeField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poset(rng: &mut ChaCha8Rng) -> interval_rank::Result<Poset> {
    let n = rng.gen_range(3..=7);
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.45) {
                rels.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_relations(&labels, &rels)
}

fn main() -> interval_rank::Result<()> {
    let count: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let field = PrimeField::new(11)?;
    let (mut intervals, mut mismatches) = (0, 0);
    for _ in 0..count {
        let p = Arc::new(random_poset(&mut rng)?);
        let lattice = IntervalLattice::enumerate(p.clone(), None)?;
        let m = PersistenceModule::random(p, field, 3, &mut rng);
        let tot = invariant_table(&m, &CompressionSystem::Tot, &lattice)?;
        for (i, iv) in lattice.intervals().iter().enumerate() {
            intervals += 1;
            if generalized_rank(&m, iv) != tot[i] {
                mismatches += 1;
                println!("mismatch at {}", iv.display(m.poset()));
            }
        }
    }
    println!("{count} modules, {intervals} intervals, {mismatches} mismatches");
    Ok(())
}
