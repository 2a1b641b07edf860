//! Rank over the whole poset for the two D4 examples, over Q and over F_2.
//!
//!     cargo run --example dynkin_d4

use interval_rank::{
    compression_multiplicity, fixtures, CompressionSystem, Field, IntervalLattice,
    PersistenceModule, PrimeField, Rationals,
};

fn full_rank<F: Field>(m: &PersistenceModule<F>) -> interval_rank::Result<usize> {
    let lattice = IntervalLattice::enumerate(m.poset().clone(), None)?;
    let full = lattice.find(m.poset().labels())?;
    compression_multiplicity(m, &CompressionSystem::Tot, &lattice, full)
}

fn report<F: Field>(f: F) -> interval_rank::Result<()> {
    let name = match f.descriptor() {
        interval_rank::ExactField::Rational => "Q".to_string(),
        interval_rank::ExactField::Prime(p) => format!("F_{p}"),
    };
    let m1 = fixtures::d4_m1(f.clone())?;
    let m2 = fixtures::d4_m2(f.clone())?;
    let centre = fixtures::d4_center(f)?;
    println!("over {name}:");
    println!(
        "  M1 (incoming lines agree)   dims {:?} rank {}",
        m1.dimension_vector(),
        full_rank(&m1)?
    );
    println!(
        "  M2 (general position)       dims {:?} rank {}",
        m2.dimension_vector(),
        full_rank(&m2)?
    );
    println!(
        "  k^3 at the centre           dims {:?} rank {}",
        centre.dimension_vector(),
        full_rank(&centre)?
    );
    Ok(())
}

fn main() -> interval_rank::Result<()> {
    report(Rationals)?;
    report(PrimeField::new(2)?)
}
