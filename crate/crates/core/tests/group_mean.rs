mod common;

use common::*;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use vortex_core::freegroup::{
    vortex_group, word_add, word_neg, word_zero, FiniteGroupTable, GeneratorBasis, GroupWord,
};
use vortex_core::mean::{
    check_indicator_basis, check_invariance, is_amenable_witness, uniform_mean, Arithmetic,
    BoundedFunction, Mean,
};
use vortex_core::{build_vortex, PlanarVortex};

fn brute_force_group_axioms(g: &FiniteGroupTable) -> bool {
    let m = g.order();
    let e = g.identity();
    let assoc = (0..m)
        .all(|a| (0..m).all(|b| (0..m).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))));
    let ident = (0..m).all(|a| g.mul(e, a) == a && g.mul(a, e) == a);
    let inv = (0..m).all(|a| g.mul(a, g.inverse(a)) == e && g.mul(g.inverse(a), a) == e);
    assoc && ident && inv
}

fn permutation_group(n: usize) -> FiniteGroupTable {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !vortex_core::conjugacy::next_permutation(&mut p) {
            break;
        }
    }
    let index = |q: &Vec<usize>| perms.iter().position(|r| r == q).unwrap();
    let rows = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index(&(0..n).map(|i| a[b[i]]).collect()))
                .collect()
        })
        .collect();
    FiniteGroupTable::new(rows).unwrap()
}

/// Order predicted by counting token cycles: one cyclic factor per cycle that homes a generator.
fn predicted_order(v: &PlanarVortex, generators: &[u32]) -> usize {
    let homes: BTreeSet<usize> = generators
        .iter()
        .map(|&id| v.cycles().iter().position(|c| c.contains(id)).unwrap())
        .collect();
    homes.iter().map(|&c| v.cycles()[c].len()).product()
}

fn random_basis(rng: &mut impl Rng, v: &PlanarVortex, k: usize) -> Vec<u32> {
    let mut ids: Vec<u32> = v.vertices().iter().map(|x| x.id).collect();
    rand::seq::SliceRandom::shuffle(ids.as_mut_slice(), rng);
    ids.truncate(k);
    ids
}

fn word_strategy(len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-1000i64..1000, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_form_an_abelian_group(a in word_strategy(4), b in word_strategy(4), c in word_strategy(4)) {
        let (wa, wb, wc) = (GroupWord::new(a.clone()), GroupWord::new(b.clone()), GroupWord::new(c));
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(word_add(&wa, &wb).unwrap().coeffs().to_vec(), sum);
        prop_assert_eq!(word_add(&wa, &wb).unwrap(), word_add(&wb, &wa).unwrap());
        prop_assert_eq!(
            word_add(&word_add(&wa, &wb).unwrap(), &wc).unwrap(),
            word_add(&wa, &word_add(&wb, &wc).unwrap()).unwrap()
        );
        prop_assert_eq!(word_add(&wa, &word_zero(4)).unwrap(), wa.clone());
        prop_assert!(word_add(&wa, &word_neg(&wa)).unwrap().is_zero());
    }

    #[test]
    fn vortex_groups_are_groups_of_predicted_order(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_vortex(&mut rng, 2, (3, 6));
        let gens = random_basis(&mut rng, &v, k);
        let g = vortex_group(&v, &GeneratorBasis::new(gens.clone()).unwrap()).unwrap();
        prop_assert_eq!(g.order(), predicted_order(&v, &gens));
        prop_assert!(brute_force_group_axioms(g.table()));
        prop_assert!(g.table().is_abelian());
        prop_assert_eq!(g.element_positions(0), g.evaluate(&word_zero(k)).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), a in word_strategy(3), b in word_strategy(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_vortex(&mut rng, 3, (3, 5));
        let gens = random_basis(&mut rng, &v, 3);
        let g = vortex_group(&v, &GeneratorBasis::new(gens).unwrap()).unwrap();
        let (wa, wb) = (GroupWord::new(a), GroupWord::new(b));
        let ea = g.element_of(&wa).unwrap();
        let eb = g.element_of(&wb).unwrap();
        let eab = g.element_of(&word_add(&wa, &wb).unwrap()).unwrap();
        prop_assert_eq!(eab, g.table().mul(ea, eb));
        prop_assert_eq!(g.element_of(&word_neg(&wa)).unwrap(), g.table().inverse(ea));
        prop_assert_eq!(g.element_positions(ea), g.evaluate(&wa).unwrap());
        prop_assert_eq!(g.element_of(g.word_of(ea)).unwrap(), ea);
    }

    #[test]
    fn uniform_mean_is_average_and_bounded(values in proptest::collection::vec(-1_000_000i64..1_000_000, 6)) {
        let g = FiniteGroupTable::cyclic(6).unwrap();
        let theta = BoundedFunction::from_integers(&values);
        let mu = uniform_mean(&g, &theta).unwrap();
        let naive = values.iter().map(|&x| x as f64).sum::<f64>() / 6.0;
        prop_assert!((mu.to_f64().unwrap() - naive).abs() <= 1e-12 * naive.abs().max(1.0));
        prop_assert!(theta.glb().unwrap() <= &mu && &mu <= theta.lub().unwrap());
        let float = check_invariance(&g, &theta, &Mean::Uniform, Arithmetic::Float).unwrap();
        prop_assert!(float.passed());
    }

    #[test]
    fn uniform_mean_is_invariant_on_s3(values in proptest::collection::vec(-500i64..500, 6)) {
        let g = permutation_group(3);
        prop_assert!(!g.is_abelian());
        let theta = BoundedFunction::from_integers(&values);
        let report = check_invariance(&g, &theta, &Mean::Uniform, Arithmetic::Exact).unwrap();
        prop_assert!(report.passed());
    }
}

#[test]
fn figure_a_group_has_order_one_hundred() {
    let v = build_vortex(&fig1a()).unwrap();
    let g = vortex_group(&v, &GeneratorBasis::new(vec![0, 10]).unwrap()).unwrap();
    assert_eq!(g.order(), 100);
    assert!(brute_force_group_axioms(g.table()));
    let report = is_amenable_witness(g.table(), &[], 7).unwrap();
    assert!(report.amenable);
}

#[test]
fn figure_b_group_matches_product() {
    let v = build_vortex(&fig1b()).unwrap();
    let g = vortex_group(&v, &GeneratorBasis::new(vec![0, 10]).unwrap()).unwrap();
    assert_eq!(g.order(), predicted_order(&v, &[0, 10]));
}

#[test]
fn same_cycle_generators_share_a_token() {
    let v = build_vortex(&fig1a()).unwrap();
    let g = vortex_group(&v, &GeneratorBasis::new(vec![0, 3]).unwrap()).unwrap();
    assert_eq!(g.order(), 10);
    assert_eq!(g.token_cycles().len(), 1);
}

#[test]
fn cayley_text_round_trips() {
    let g = FiniteGroupTable::cyclic(4)
        .unwrap()
        .direct_product(&FiniteGroupTable::cyclic(3).unwrap())
        .unwrap();
    let back = FiniteGroupTable::from_cayley_text(&g.to_cayley_text()).unwrap();
    assert_eq!(back.rows(), g.rows());
}

#[test]
fn non_associative_table_rejected() {
    let rows = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
    assert!(FiniteGroupTable::new(rows).is_err());
}

#[test]
fn skewed_weights_are_not_invariant() {
    let g = permutation_group(3);
    let weights = (1..=6)
        .map(|k| BigRational::from_integer(k.into()))
        .collect();
    let mean = Mean::weighted(weights).unwrap();
    assert!(!check_indicator_basis(&g, &mean).unwrap().passed());
    assert!(check_indicator_basis(&g, &Mean::Uniform).unwrap().passed());
}

#[test]
fn float_and_exact_agree_on_fractions() {
    let g = FiniteGroupTable::cyclic(5).unwrap();
    let theta = BoundedFunction::from_f64(&[0.1, 0.2, 0.3, -0.7, 1e-3]).unwrap();
    let exact = check_invariance(&g, &theta, &Mean::Uniform, Arithmetic::Exact).unwrap();
    let float = check_invariance(&g, &theta, &Mean::Uniform, Arithmetic::Float).unwrap();
    assert!(exact.passed() && float.passed());
}
