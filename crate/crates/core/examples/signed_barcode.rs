//! The signed barcode of a random module, checked against the module.
//!
//!     cargo run --example signed_barcode -- [seed]

use std::sync::Arc;

use interval_rank::linalg::rank;
use interval_rank::{
    interval_replacement, invariant_table, replacement_invariants, CompressionSystem,
    IntervalLattice, PersistenceModule, Poset, PrimeField,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> interval_rank::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // a crown with a tail: two sources below two sinks below a top
    let poset = Poset::from_relations(
        &["a", "b", "c", "d", "e"],
        &[
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "e"),
            ("d", "e"),
        ],
    )?;
    let field = PrimeField::new(7)?;
    let m = PersistenceModule::random(Arc::new(poset), field, 3, &mut rng);
    let lattice = IntervalLattice::enumerate(m.poset().clone(), None)?;
    println!(
        "dimension vector {:?}, {} intervals",
        m.dimension_vector(),
        lattice.len()
    );

    let system = CompressionSystem::Tot;
    let r = interval_replacement(&m, &system, &lattice)?;
    for (sign, part) in [("+", &r.positive), ("-", &r.negative)] {
        for &(i, k) in part.iter() {
            println!("  {sign} {k} x {}", lattice.interval(i).display(m.poset()));
        }
    }

    let inv = replacement_invariants(&r, &lattice);
    let table = invariant_table(&m, &system, &lattice)?;
    let same_table = inv.table.iter().zip(&table).all(|(&a, &b)| a == b as i64);
    let same_dims = inv
        .dims
        .iter()
        .zip(m.dimension_vector())
        .all(|(&a, &b)| a == b as i64);
    let mut same_ranks = true;
    for (&(x, y), &v) in &inv.segment_ranks {
        same_ranks &= v == rank(m.field(), m.structure_map(x, y)?) as i64;
    }
    println!("table preserved: {same_table}, dimensions: {same_dims}, segment ranks: {same_ranks}");
    Ok(())
}
