//! The zigzag compression on a 2D grid: the compressed poset of one interval,
//! and a check that it gives the same table as the total compression.
//!
//!     cargo run --example zigzag_grid

use std::sync::Arc;

use interval_rank::{
    compress, invariant_table, CompressionSystem, IntervalLattice, PersistenceModule, Poset,
    Rationals,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> interval_rank::Result<()> {
    let grid = Arc::new(Poset::grid(&[4, 3])?);
    let lattice = IntervalLattice::enumerate(grid.clone(), None)?;
    println!(
        "G(4,3): {} elements, {} intervals",
        grid.len(),
        lattice.len()
    );

    let staircase = lattice.find(&[
        "(1,2)", "(1,3)", "(2,1)", "(2,2)", "(3,1)", "(3,2)", "(4,1)",
    ])?;
    let datum = compress(&CompressionSystem::Zz, &lattice, staircase)?;
    let q = datum.compressed();
    println!("zigzag of {}:", lattice.interval(staircase).display(&grid));
    for u in 0..q.len() {
        println!("  {:<6} -> {}", q.label(u), grid.label(datum.map.apply(u)));
    }
    for &(u, v) in q.hasse_arrows() {
        println!("  {} <= {}", q.label(u), q.label(v));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = PersistenceModule::random(grid, Rationals, 3, &mut rng);
    let tot = invariant_table(&m, &CompressionSystem::Tot, &lattice)?;
    let zz = invariant_table(&m, &CompressionSystem::Zz, &lattice)?;
    let diff = tot.iter().zip(&zz).filter(|(a, b)| a != b).count();
    println!(
        "random module {:?}: tot and zz differ on {diff} intervals",
        m.dimension_vector()
    );
    Ok(())
}
