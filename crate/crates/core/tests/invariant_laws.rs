mod common;

use interval_rank::linalg::rank;
use interval_rank::{
    interval_replacement, invariant_table, replacement_invariants, signed_multiplicity,
    signed_multiplicity_subset_formula, zeta_transform, CompressionSystem, IntervalLattice,
    PersistenceModule, PrimeField, Rationals,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 32,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn systems_for(l: &IntervalLattice) -> Vec<CompressionSystem> {
    let mut s = vec![CompressionSystem::Tot, CompressionSystem::Ss];
    if l.poset().grid_sizes().is_some_and(|g| g.len() == 2) {
        s.push(CompressionSystem::Zz);
    }
    s
}

fn sample(seed: u64) -> (ChaCha8Rng, common::Sample<PrimeField>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = PrimeField::new(3).unwrap();
    let s = if rng.gen_bool(0.3) {
        common::grid_sample(&mut rng, f, &[3, 2], 3)
    } else {
        common::random_sample(&mut rng, f, 7, 3)
    };
    (rng, s)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn additive_over_direct_sums(seed in any::<u64>()) {
        let (mut rng, s) = sample(seed);
        let other = PersistenceModule::random(s.module.poset().clone(), *s.module.field(), 2, &mut rng);
        let sum = s.module.direct_sum(&other).unwrap();
        for system in systems_for(&s.lattice) {
            let a = invariant_table(&s.module, &system, &s.lattice).unwrap();
            let b = invariant_table(&other, &system, &s.lattice).unwrap();
            let ab = invariant_table(&sum, &system, &s.lattice).unwrap();
            let added: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(ab, added);
        }
    }

    #[test]
    fn segments_give_ranks(seed in any::<u64>()) {
        let (_, s) = sample(seed);
        for system in systems_for(&s.lattice) {
            let t = invariant_table(&s.module, &system, &s.lattice).unwrap();
            for (i, x, y) in s.lattice.segments() {
                prop_assert_eq!(t[i], rank(s.module.field(), s.module.structure_map(x, y).unwrap()));
            }
        }
    }

    #[test]
    fn tot_is_monotone_and_a_floor(seed in any::<u64>()) {
        let (_, s) = sample(seed);
        let tot = invariant_table(&s.module, &CompressionSystem::Tot, &s.lattice).unwrap();
        for i in 0..tot.len() {
            for &j in s.lattice.covers(i) {
                prop_assert!(tot[i] >= tot[j]);
            }
        }
        for system in systems_for(&s.lattice) {
            let t = invariant_table(&s.module, &system, &s.lattice).unwrap();
            prop_assert!(t.iter().zip(&tot).all(|(x, y)| x >= y));
        }
    }

    #[test]
    fn replacement_reproduces_table_and_dimensions(seed in any::<u64>()) {
        let (_, s) = sample(seed);
        for system in systems_for(&s.lattice) {
            let r = interval_replacement(&s.module, &system, &s.lattice).unwrap();
            let inv = replacement_invariants(&r, &s.lattice);
            let t = invariant_table(&s.module, &system, &s.lattice).unwrap();
            prop_assert!(inv.table.iter().zip(&t).all(|(&a, &b)| a == b as i64));
            prop_assert!(inv.dims.iter().zip(s.module.dimension_vector()).all(|(&a, &b)| a == b as i64));
        }
    }

    #[test]
    fn interval_decomposables_are_recovered(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::corpus_poset(&mut rng, 6);
        let l = IntervalLattice::enumerate(p, None).unwrap();
        let (m, mult) = PersistenceModule::random_interval_decomposable(&l, Rationals, 3, 2, true, &mut rng);
        for system in systems_for(&l) {
            let delta = signed_multiplicity(&invariant_table(&m, &system, &l).unwrap(), &l);
            prop_assert!(delta.iter().zip(&mult).all(|(&d, &k)| d == k as i64));
        }
    }

    #[test]
    fn mobius_inversion_round_trips(seed in any::<u64>(), values in prop::collection::vec(-4i64..=4, 128)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = IntervalLattice::enumerate(common::corpus_poset(&mut rng, 7), None).unwrap();
        let table: Vec<i64> = (0..l.len()).map(|i| values[i % values.len()]).collect();
        let delta = signed_multiplicity(&table, &l);
        prop_assert_eq!(&zeta_transform(&delta, &l), &table);
        prop_assert_eq!(signed_multiplicity_subset_formula(&table, &l, 20).unwrap(), delta);
    }
}

#[test]
fn interval_modules_are_indicators() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let p = common::corpus_poset(&mut rng, 6);
        let l = IntervalLattice::enumerate(p.clone(), None).unwrap();
        for (j, iv) in l.intervals().iter().enumerate() {
            let v = PersistenceModule::interval_module(p.clone(), iv, Rationals);
            for system in systems_for(&l) {
                let t = invariant_table(&v, &system, &l).unwrap();
                for (i, &c) in t.iter().enumerate() {
                    assert_eq!(c, usize::from(l.contains(i, j)), "{} in {}", i, j);
                }
            }
        }
    }
}

#[test]
fn fields_agree_on_integer_fixtures_when_the_prime_is_large() {
    let big = PrimeField::new(1_000_003).unwrap();
    for name in [
        "p1:2",
        "p2:2",
        "p3:2",
        "d4-m1",
        "d4-m2",
        "d4-center",
        "m-lambda:2",
        "tau-m",
    ] {
        let q = interval_rank::fixtures::by_name(name, Rationals).unwrap();
        let p = interval_rank::fixtures::by_name(name, big).unwrap();
        let l = IntervalLattice::enumerate(q.poset().clone(), None).unwrap();
        assert_eq!(
            invariant_table(&q, &CompressionSystem::Tot, &l).unwrap(),
            invariant_table(&p, &CompressionSystem::Tot, &l).unwrap(),
            "{name}"
        );
    }
}
