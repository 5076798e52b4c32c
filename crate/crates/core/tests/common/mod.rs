#![allow(dead_code)]

use num_rational::BigRational;
use opennet::circuits::{Circuit, CircuitGraph, Resistance};
use opennet::cospan::{StructuredCospan, TwoMorphism};
use opennet::dynamics::OpenDynamics;
use opennet::instances::{
    Edge, Graph, GraphInstance, Incidence, Label, Net, NetInstance, NetMorphism, PetriInstance, PetriNet, Rate,
};
use opennet::{FinFunction, FinSet};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_function(rng: &mut StdRng, dom: usize, cod: usize) -> FinFunction {
    FinFunction::new(cod, (0..dom).map(|_| rng.gen_range(0..cod)).collect()).unwrap()
}

pub fn random_permutation(rng: &mut StdRng, n: usize) -> FinFunction {
    let mut table: Vec<usize> = (0..n).collect();
    table.shuffle(rng);
    FinFunction::new(n, table).unwrap()
}

/// At least one node whenever a foot is nonempty.
fn apex_size(rng: &mut StdRng, a: usize, b: usize, max: usize) -> usize {
    let least = usize::from(a + b > 0);
    rng.gen_range(least..=max.max(least))
}

pub fn random_graph(rng: &mut StdRng, nodes: usize, max_edges: usize) -> Graph {
    let count = if nodes == 0 { 0 } else { rng.gen_range(0..=max_edges) };
    let edges: Vec<(usize, usize)> = (0..count)
        .map(|_| (rng.gen_range(0..nodes), rng.gen_range(0..nodes)))
        .collect();
    Graph::from_edges(nodes, &edges).unwrap()
}

pub fn random_petri(rng: &mut StdRng, places: usize, max_transitions: usize) -> PetriNet {
    let count = rng.gen_range(0..=max_transitions);
    let side = |rng: &mut StdRng| -> Vec<(usize, usize)> {
        if places == 0 {
            return vec![];
        }
        (0..rng.gen_range(0..=2))
            .map(|_| (rng.gen_range(0..places), rng.gen_range(1..=2)))
            .collect()
    };
    let transitions = (0..count).map(|_| (side(rng), side(rng))).collect();
    PetriNet::petri(places, transitions).unwrap()
}

pub fn open<I: Incidence, L: Label>(
    rng: &mut StdRng,
    a: usize,
    b: usize,
    apex: Net<I, L>,
) -> StructuredCospan<NetInstance<I, L>> {
    let n = apex.nodes().size;
    let (i, o) = (random_function(rng, a, n), random_function(rng, b, n));
    StructuredCospan::from_maps(apex, &i, &o).unwrap()
}

pub fn graph_cospan(rng: &mut StdRng, a: usize, b: usize, max_nodes: usize) -> StructuredCospan<GraphInstance> {
    let n = apex_size(rng, a, b, max_nodes);
    let apex = random_graph(rng, n, 4);
    open(rng, a, b, apex)
}

pub fn petri_cospan(rng: &mut StdRng, a: usize, b: usize, max_places: usize) -> StructuredCospan<PetriInstance> {
    let n = apex_size(rng, a, b, max_places);
    let apex = random_petri(rng, n, 3);
    open(rng, a, b, apex)
}

pub fn random_rational(rng: &mut StdRng) -> BigRational {
    BigRational::new(rng.gen_range(1..=9i64).into(), rng.gen_range(1..=5i64).into())
}

pub fn rated_cospan(rng: &mut StdRng, a: usize, b: usize, max_places: usize) -> OpenDynamics {
    let n = apex_size(rng, a, b, max_places);
    let p = random_petri(rng, n, 3);
    let rates = (0..p.transitions().size).map(|_| Rate::new(random_rational(rng)).unwrap()).collect();
    open(rng, a, b, p.with_rates(rates).unwrap())
}

pub fn circuit(rng: &mut StdRng, a: usize, b: usize, max_nodes: usize) -> Circuit {
    let n = apex_size(rng, a, b, max_nodes);
    let count = if n == 0 { 0 } else { rng.gen_range(0..=6) };
    let edges = (0..count)
        .map(|_| {
            (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                Resistance::new(random_rational(rng)).unwrap(),
            )
        })
        .collect();
    open(rng, a, b, CircuitGraph::labelled(n, edges).unwrap())
}

/// A random apex isomorphism out of `c`, as a globular 2-morphism.
pub fn relabelling<I: Incidence, L: Label>(
    rng: &mut StdRng,
    c: &StructuredCospan<NetInstance<I, L>>,
) -> TwoMorphism<NetInstance<I, L>> {
    let net = c.apex();
    let nodes = random_permutation(rng, net.nodes().size);
    let edges = random_permutation(rng, net.edges().len());
    let mut moved: Vec<Option<Edge<I, L>>> = vec![None; net.edges().len()];
    for (i, e) in net.edges().iter().enumerate() {
        moved[edges.apply(i)] = Some(Edge {
            incidence: e.incidence.pushforward(&nodes),
            label: e.label.clone(),
        });
    }
    let cod = Net::new(net.nodes(), moved.into_iter().map(Option::unwrap).collect()).unwrap();
    let iso = NetMorphism::new(net.clone(), cod, edges, nodes).unwrap();
    TwoMorphism::globular(c.clone(), c.transport(&iso).unwrap(), iso).unwrap()
}

pub fn sizes(rng: &mut StdRng, k: usize, max: usize) -> Vec<usize> {
    (0..k).map(|_| rng.gen_range(0..=max)).collect()
}

pub fn set(n: usize) -> FinSet {
    FinSet::new(n)
}
