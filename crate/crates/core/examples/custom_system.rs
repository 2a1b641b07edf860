//! A hand-written compression system: it keeps only the sources and sinks
//! of the big interval of the crown, then a broken variant that misses a
//! sink and fails validation.
//!
//!     cargo run --example custom_system

use std::sync::Arc;

use interval_rank::compression::CustomSystem;
use interval_rank::{
    fixtures, invariant_table, validate_system, CompressionSystem, IntervalLattice, Poset,
    Rationals,
};

fn main() -> interval_rank::Result<()> {
    let m = fixtures::p1(Rationals, 2)?;
    let p = m.poset().clone();
    let lattice = IntervalLattice::enumerate(p.clone(), None)?;
    let whole = p.full_set();

    let crown = Poset::from_relations(
        &["s1", "s4", "t2", "t3"],
        &[("s1", "t2"), ("s1", "t3"), ("s4", "t2"), ("s4", "t3")],
    )?;
    let to = |labels: &[&str]| {
        labels
            .iter()
            .map(|l| p.index_of(l))
            .collect::<interval_rank::Result<Vec<_>>>()
    };
    let good = CustomSystem::new(
        "crown",
        p.clone(),
        vec![(whole.clone(), Arc::new(crown), to(&["1", "4", "2", "3"])?)],
    )?;
    let good = CompressionSystem::Custom(Arc::new(good));
    let report = validate_system(&good, &lattice)?;
    println!(
        "{}: axioms hold: {}, rank system: {}",
        good.name(),
        report.passed(),
        report.is_rank_system()
    );
    let table = invariant_table(&m, &good, &lattice)?;
    println!(
        "  multiplicity of the whole poset: {}",
        table[lattice.len() - 1]
    );

    let path = Poset::from_relations(&["s1", "t2"], &[("s1", "t2")])?;
    let bad = CustomSystem::new(
        "path",
        p.clone(),
        vec![(whole, Arc::new(path), to(&["1", "2"])?)],
    )?;
    let bad = CompressionSystem::Custom(Arc::new(bad));
    let report = validate_system(&bad, &lattice)?;
    for check in report.failures() {
        println!(
            "{}: {} fails (inside {}, covers sources and sinks {}, connected {})",
            bad.name(),
            lattice.interval(check.interval).display(&p),
            check.inside,
            check.covers_extrema,
            check.connected
        );
    }
    Ok(())
}
