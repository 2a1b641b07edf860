//! Two non-isomorphic modules on the 5x2 grid with identical interval rank
//! invariants under both tot and ss.
//!
//!     cargo run --example incompleteness -- 2 3

use interval_rank::{
    fixtures, invariant_table, CompressionSystem, Field, IntervalLattice, Rationals,
};

fn main() -> interval_rank::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (lambda, mu) = match args[..] {
        [l, m, ..] => (l, m),
        _ => (2, 3),
    };
    let a = fixtures::m_lambda(Rationals, lambda)?;
    let b = fixtures::m_lambda(Rationals, mu)?;
    let lattice = IntervalLattice::enumerate(a.poset().clone(), None)?;
    println!("G(5,2) has {} intervals", lattice.len());
    for system in [
        CompressionSystem::Tot,
        CompressionSystem::Ss,
        CompressionSystem::Zz,
    ] {
        let ta = invariant_table(&a, &system, &lattice)?;
        let tb = invariant_table(&b, &system, &lattice)?;
        let diff = ta.iter().zip(&tb).filter(|(x, y)| x != y).count();
        println!(
            "{:>3}: lambda={lambda} vs mu={mu}: {diff} differing intervals",
            system.name()
        );
    }

    let tau = fixtures::tau_m(Rationals)?;
    let p = tau.poset();
    let (x, y) = (p.index_of("(1,1)")?, p.index_of("(5,2)")?);
    let map = tau.structure_map(x, y)?;
    let entries: Vec<String> = map.entries().iter().map(|e| Rationals.format(e)).collect();
    println!("tau M: map (1,1) -> (5,2) = {entries:?} although both ends are k");
    Ok(())
}
