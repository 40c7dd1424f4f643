//! Cross-module properties checked against the dense and exhaustive oracles.

use std::collections::BTreeSet;

use f2q::apply::{map_hamiltonian, vacuum_pair_predicate, weight_report};
use f2q::baselines::{balanced_ternary_tree, balanced_ternary_tree_leaf_order, bravyi_kitaev, jordan_wigner};
use f2q::fermion::{parse_fermionic, MajoranaHamiltonian};
use f2q::hatt::{self, HattBuilder, Options, Traversal, Variant};
use f2q::mapping::Mapping;
use f2q::verify::{self, AlgebraCheck};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_mappings(h: &MajoranaHamiltonian) -> Vec<Mapping> {
    let n = h.n_modes();
    vec![
        jordan_wigner(n).unwrap(),
        bravyi_kitaev(n).unwrap(),
        balanced_ternary_tree(n).unwrap(),
        balanced_ternary_tree_leaf_order(n).unwrap(),
        hatt::build_unopt(h).unwrap(),
        hatt::build(h).unwrap(),
    ]
}

#[test]
fn unpaired_leaves_are_the_frontier_z_descendants() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=10 {
        let h = verify::random_hermitian_majorana(n, 3 * n, &mut rng);
        for traversal in [Traversal::Maps, Traversal::Explicit] {
            let mut b = HattBuilder::new(&h, Options { variant: Variant::Paired(traversal), threads: 1 }).unwrap();
            loop {
                let unpaired: BTreeSet<usize> = b.unpaired_leaves().into_iter().collect();
                let descs: BTreeSet<usize> = b.frontier().iter().map(|&o| b.tree().desc_z(o)).collect();
                assert_eq!(unpaired, descs, "N={n} step {}", b.step_index());
                if b.is_done() {
                    break;
                }
                b.step().unwrap();
            }
        }
    }
}

#[test]
fn pair_predicate_matches_dense_vacuum_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 1..=5 {
        for _ in 0..10 {
            let h = verify::random_hermitian_majorana(n, 2 * n, &mut rng);
            for m in all_mappings(&h) {
                assert_eq!(vacuum_pair_predicate(&m), verify::check_vacuum(&m).unwrap(), "{} N={n}", m.method());
                assert!(verify::check_majorana_algebra(&m, AlgebraCheck::Matrix).unwrap());
            }
        }
    }
}

#[test]
fn unpaired_construction_can_break_the_vacuum() {
    // the exhaustive scan ignores pairing, so some inputs lose the vacuum
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let broken = (0..200).any(|k| {
        let h = verify::random_hermitian_majorana(2 + k % 3, 6, &mut rng);
        !verify::check_vacuum(&hatt::build_unopt(&h).unwrap()).unwrap()
    });
    assert!(broken);
}

#[test]
fn mapped_hamiltonians_stay_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in 1..=8 {
        let h = verify::random_hermitian_majorana(n, 4 * n, &mut rng);
        for m in all_mappings(&h) {
            assert!(map_hamiltonian(&h, &m).unwrap().is_hermitian(1e-9));
        }
    }
}

#[test]
fn greedy_against_exhaustive_optimum() {
    let i = Complex64::new(0.0, 1.0);
    let toy = MajoranaHamiltonian::from_products(3, [(i, vec![0, 5]), (i * 2.0, vec![1, 3])]).unwrap();
    let (_, best) = verify::brute_force_best_tree(&toy, false).unwrap();
    assert!(best <= 3);
    let three_mode = parse_fermionic("modes 3\n(1,0) : 0^ 0\n(2,0) : 1^ 2^ 1 2\n").unwrap().to_majorana();
    let (_, best_vacuum) = verify::brute_force_best_tree(&three_mode, true).unwrap();
    let greedy = weight_report(&map_hamiltonian(&three_mode, &hatt::build(&three_mode).unwrap()).unwrap()).total_pauli_weight;
    assert!(best_vacuum <= greedy);
    let one = MajoranaHamiltonian::from_products(1, [(i, vec![0, 1])]).unwrap();
    assert_eq!(verify::brute_force_best_tree(&one, true).unwrap().1, 1);
}

#[test]
fn thread_count_does_not_change_the_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in [3, 7, 12] {
        let h = verify::random_hermitian_majorana(n, 5 * n, &mut rng);
        for variant in [Variant::Unopt, Variant::Paired(Traversal::Maps)] {
            let serial = hatt::build_with(&h, Options { variant, threads: 1 }).unwrap();
            let parallel = hatt::build_with(&h, Options { variant, threads: 4 }).unwrap();
            assert_eq!(serial.0.tree(), parallel.0.tree());
            assert_eq!(serial.1, parallel.1);
        }
    }
}

#[test]
fn mapping_round_trips_through_json() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let h = verify::random_hermitian_majorana(6, 20, &mut rng);
    for m in all_mappings(&h) {
        let back = Mapping::from_json(&m.to_json()).unwrap();
        assert_eq!(back.strings(), m.strings());
        assert_eq!(back.method(), m.method());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn term_order_is_irrelevant(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = verify::random_hermitian_majorana(n, 3 * n, &mut rng);
        let mut products: Vec<(Complex64, Vec<usize>)> = h.terms().iter().map(|t| (t.coefficient, t.indices.clone())).collect();
        products.reverse();
        let reversed = MajoranaHamiltonian::from_products(n, products).unwrap();
        prop_assert_eq!(&reversed, &h);
        for m in all_mappings(&h) {
            let a = weight_report(&map_hamiltonian(&h, &m).unwrap());
            let b = weight_report(&map_hamiltonian(&reversed, &m).unwrap());
            prop_assert_eq!(a, b);
        }
        let (a, b) = (hatt::build(&h).unwrap(), hatt::build(&reversed).unwrap());
        prop_assert_eq!(a.strings(), b.strings());
    }

    #[test]
    fn adaptive_mappings_are_valid(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = verify::random_hermitian_majorana(n, 4 * n, &mut rng);
        let m = hatt::build(&h).unwrap();
        prop_assert!(verify::check_majorana_algebra(&m, AlgebraCheck::Symplectic).unwrap());
        prop_assert!(vacuum_pair_predicate(&m));
        let unopt = hatt::build_unopt(&h).unwrap();
        prop_assert!(verify::check_majorana_algebra(&unopt, AlgebraCheck::Symplectic).unwrap());
    }
}
