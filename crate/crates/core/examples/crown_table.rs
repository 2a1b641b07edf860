//! The four-element module `M(θ)`: its total multiplicities, signed
//! multiplicities and interval replacement for two values of θ.
//!
//!     cargo run --example crown_table

use interval_rank::{
    fixtures, interval_replacement, invariant_table, CompressionSystem, IntervalLattice, Rationals,
};

fn main() -> interval_rank::Result<()> {
    for theta in [2, 3] {
        let m = fixtures::p1(Rationals, theta)?;
        let lattice = IntervalLattice::enumerate(m.poset().clone(), None)?;
        let table = invariant_table(&m, &CompressionSystem::Tot, &lattice)?;
        let r = interval_replacement(&m, &CompressionSystem::Tot, &lattice)?;

        println!("theta = {theta}");
        println!("  {:<12} {:>4} {:>6}", "interval", "rank", "delta");
        // largest intervals first, as usually tabulated
        for i in (0..lattice.len()).rev() {
            let iv = lattice.interval(i).display(m.poset());
            println!("  {iv:<12} {:>4} {:>6}", table[i], r.delta[i]);
        }
        let show = |part: &[(usize, u64)]| {
            part.iter()
                .map(|&(i, k)| format!("{}^{k}", lattice.interval(i).display(m.poset())))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        println!("  R+ = {}", show(&r.positive));
        println!("  R- = {}\n", show(&r.negative));
    }
    Ok(())
}
