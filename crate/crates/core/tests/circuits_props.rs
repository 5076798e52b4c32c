mod common;

use num_rational::BigRational;
use opennet::circuits::{
    blackbox, compose_relations, direct_sum, frobenius_relations, resistor_relation, LinearRelation, Resistance,
};
use opennet::cospan::{hcompose, identity_cell, tensor_cells};
use opennet::FinSet;
use proptest::prelude::*;
use rand::Rng;

fn random_relation(rng: &mut rand::rngs::StdRng, m: usize, n: usize) -> LinearRelation {
    let k = rng.gen_range(0..=m + n);
    let vectors = (0..k)
        .map(|_| (0..m + n).map(|_| BigRational::from_integer(rng.gen_range(-2..=2).into())).collect())
        .collect();
    LinearRelation::from_span(m, n, vectors).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn blackbox_ignores_relabelling(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::sizes(&mut rng, 2, 2);
        let c = common::circuit(&mut rng, s[0], s[1], 5);
        let t = common::relabelling(&mut rng, &c);
        prop_assert_eq!(blackbox(&c), blackbox(t.tgt()));
    }

    #[test]
    fn blackbox_turns_tensor_into_direct_sum(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::sizes(&mut rng, 4, 2);
        let c = common::circuit(&mut rng, s[0], s[1], 4);
        let d = common::circuit(&mut rng, s[2], s[3], 4);
        prop_assert_eq!(blackbox(&tensor_cells(&c, &d)), direct_sum(&blackbox(&c), &blackbox(&d)));
    }

    #[test]
    fn relation_composition_is_associative(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::sizes(&mut rng, 4, 3);
        let (r, q, p) = (
            random_relation(&mut rng, s[0], s[1]),
            random_relation(&mut rng, s[1], s[2]),
            random_relation(&mut rng, s[2], s[3]),
        );
        let lhs = compose_relations(&compose_relations(&r, &q).unwrap(), &p).unwrap();
        let rhs = compose_relations(&r, &compose_relations(&q, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(compose_relations(&LinearRelation::identity(s[0]), &r).unwrap(), r.clone());
        prop_assert_eq!(r.transpose().transpose(), r);
    }

    #[test]
    fn constraints_cut_out_the_relation(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = random_relation(&mut rng, 2, 2);
        let again = LinearRelation::from_constraints(2, 2, r.constraints()).unwrap();
        prop_assert_eq!(&again, &r);
        prop_assert_eq!(r.dim() + r.constraints().len(), 4);
    }

    #[test]
    fn series_and_parallel_closed_forms(p in 1..50i64, q in 1..20i64, s in 1..50i64, t in 1..20i64) {
        let r1 = BigRational::new(p.into(), q.into());
        let r2 = BigRational::new(s.into(), t.into());
        let ohm = |r: BigRational| Resistance::new(r).unwrap();
        let series = compose_relations(&resistor_relation(&ohm(r1.clone())), &resistor_relation(&ohm(r2.clone()))).unwrap();
        prop_assert_eq!(series, resistor_relation(&ohm(&r1 + &r2)));
        let g = opennet::circuits::CircuitGraph::labelled(2, vec![(0, 1, ohm(r1.clone())), (0, 1, ohm(r2.clone()))]).unwrap();
        let f = |t: Vec<usize>| opennet::FinFunction::new(2, t).unwrap();
        let par = opennet::cospan::StructuredCospan::from_maps(g, &f(vec![0]), &f(vec![1])).unwrap();
        prop_assert_eq!(blackbox(&par), resistor_relation(&ohm(&r1 * &r2 / (&r1 + &r2))));
    }
}

#[test]
fn gluing_through_identity_keeps_the_behaviour() {
    let mut rng = common::rng(3);
    let c = common::circuit(&mut rng, 2, 1, 4);
    let glued = hcompose(&c, &identity_cell(FinSet::new(1))).unwrap();
    assert_eq!(blackbox(&glued), blackbox(&c));
}

#[test]
fn frobenius_relations_are_special_commutative() {
    let f = frobenius_relations();
    let id = LinearRelation::identity(2);
    let swap = LinearRelation::identity(4).reindex(4, 4, &[0, 1, 2, 3, 6, 7, 4, 5]).unwrap();
    assert_eq!(compose_relations(&swap, &f.mult).unwrap(), f.mult);
    let assoc_l = compose_relations(&direct_sum(&f.mult, &id), &f.mult).unwrap();
    let assoc_r = compose_relations(&direct_sum(&id, &f.mult), &f.mult).unwrap();
    assert_eq!(assoc_l, assoc_r);
    assert_eq!(compose_relations(&f.comult, &direct_sum(&f.counit, &id)).unwrap(), id);
    assert_eq!(compose_relations(&f.comult, &f.mult).unwrap(), id);
}

#[test]
fn circuit_with_a_dangling_node() {
    // A resistor to an isolated internal node carries no current.
    let g = opennet::circuits::CircuitGraph::labelled(3, vec![(0, 1, Resistance::from_integer(4).unwrap()), (1, 2, Resistance::from_integer(1).unwrap())]).unwrap();
    let f = |t: Vec<usize>| opennet::FinFunction::new(3, t).unwrap();
    let c = opennet::cospan::StructuredCospan::from_maps(g, &f(vec![0]), &f(vec![1])).unwrap();
    assert_eq!(blackbox(&c), resistor_relation(&Resistance::from_integer(4).unwrap()));
}
