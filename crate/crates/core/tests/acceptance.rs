//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use opennet::circuits::{blackbox, compose_relations, resistor_relation, Resistance};
use opennet::cospan::{
    associator, braiding, companion, conjoint, decat_compose, decat_tensor, hcompose, hcompose2, identity_cell,
    interchange, iso_class, left_unitor, right_unitor, tensor2, tensor_associator, tensor_cells, unit_cell,
    vcompose, vcompose_all, CospanIsoClass, StructuredCospan, TwoMorphism,
};
use opennet::dynamics::{conservation_laws, glued_field, pair_with, symbolic_field, vector_field, Concentration};
use opennet::finset::{self, FinFunction, FinSet};
use opennet::functor::{composition_comparison, petri_to_cmc, PetriToCmc};
use opennet::hypergraph::check_frobenius;
use opennet::instances::{
    CmcInstance, FinSetInstance, GraphInstance, Incidence, Instance, LGraphInstance, Label, NetInstance,
    PetriInstance, PetriRatesInstance,
};
use opennet::io;
use opennet::rational::{from_i64, ratio};
use rand::rngs::StdRng;
use rand::Rng;

const WATER: &str = include_str!("../../../networks/water.json");
const DISSOCIATION: &str = include_str!("../../../networks/dissociation.json");
const WATER_RATES: &str = include_str!("../../../networks/water_rates.json");
const SQUARE_E5: &str = include_str!("../../../networks/square_e5.json");
const SQUARE_E6: &str = include_str!("../../../networks/square_e6.json");
const SQUARE_RETARGETED: &str = include_str!("../../../networks/square_e6_retargeted.json");

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome {
        ok: true,
        detail: detail.into(),
    })
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn all_functions(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    if dom == 0 {
        return vec![vec![]];
    }
    if cod == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let total = cod.pow(dom as u32);
    for mut code in 0..total {
        let mut f = Vec::with_capacity(dom);
        for _ in 0..dom {
            f.push(code % cod);
            code /= cod;
        }
        out.push(f);
    }
    out
}

fn after(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

/// 1. Exactly one mediator to every commuting cocone, found by brute force.
fn pushout_universal_property() -> Result<Outcome, String> {
    let mut spans = 0;
    let mut cocones = 0;
    for c in 0..=3 {
        for a in 0..=3 {
            for b in 0..=3 {
                for f in all_functions(c, a) {
                    for g in all_functions(c, b) {
                        spans += 1;
                        let ff = FinFunction::new(a, f.clone()).unwrap();
                        let gg = FinFunction::new(b, g.clone()).unwrap();
                        let po = finset::pushout(&ff, &gg).map_err(|e| e.to_string())?;
                        let (left, right) = (po.left.table().to_vec(), po.right.table().to_vec());
                        check(after(&left, &f) == after(&right, &g), || format!("square fails for {f:?} {g:?}"))?;
                        for d in 0..=3 {
                            let mediators = all_functions(po.apex.size, d);
                            for u in all_functions(a, d) {
                                for v in all_functions(b, d) {
                                    if after(&u, &f) != after(&v, &g) {
                                        continue;
                                    }
                                    cocones += 1;
                                    let hits: Vec<&Vec<usize>> = mediators
                                        .iter()
                                        .filter(|m| after(m, &left) == u && after(m, &right) == v)
                                        .collect();
                                    check(hits.len() == 1, || {
                                        format!("{} mediators for {f:?},{g:?} -> {u:?},{v:?}", hits.len())
                                    })?;
                                    let chosen = po
                                        .mediator(&FinFunction::new(d, u.clone()).unwrap(), &FinFunction::new(d, v).unwrap())
                                        .map_err(|e| e.to_string())?;
                                    check(chosen.table() == hits[0].as_slice(), || "wrong mediator".into())?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    pass(format!("{spans} spans, {cocones} cocones"))
}

struct Coherence {
    cells: usize,
}

impl Coherence {
    fn run<I: Incidence, L: Label>(
        &mut self,
        rng: &mut StdRng,
        make: &dyn Fn(&mut StdRng, usize, usize) -> StructuredCospan<NetInstance<I, L>>,
    ) -> Result<(), String> {
        let e = |r: opennet::Result<TwoMorphism<NetInstance<I, L>>>| r.map_err(|e| e.to_string());
        let s = common::sizes(rng, 5, 2);
        let c1 = make(rng, s[0], s[1]);
        let c2 = make(rng, s[1], s[2]);
        let c3 = make(rng, s[2], s[3]);
        let c4 = make(rng, s[3], s[4]);
        self.cells += 4;
        let h = |x: &StructuredCospan<_>, y: &StructuredCospan<_>| hcompose(x, y).map_err(|e| e.to_string());
        let id = |c: &StructuredCospan<NetInstance<I, L>>| TwoMorphism::identity(c);

        let (c12, c23, c34) = (h(&c1, &c2)?, h(&c2, &c3)?, h(&c3, &c4)?);
        let lhs = e(vcompose(&e(associator(&c12, &c3, &c4))?, &e(associator(&c1, &c2, &c34))?))?;
        let rhs = e(vcompose_all(&[
            &e(hcompose2(&e(associator(&c1, &c2, &c3))?, &id(&c4)))?,
            &e(associator(&c1, &c23, &c4))?,
            &e(hcompose2(&id(&c1), &e(associator(&c2, &c3, &c4))?))?,
        ]))?;
        check(lhs == rhs, || "pentagon".into())?;

        let u = identity_cell(c1.foot_out());
        let lhs = e(vcompose(&e(associator(&c1, &u, &c2))?, &e(hcompose2(&id(&c1), &e(left_unitor(&c2))?))?))?;
        let rhs = e(hcompose2(&e(right_unitor(&c1))?, &id(&c2)))?;
        check(lhs == rhs, || "triangle".into())?;

        let (m, n, p) = (make(rng, s[0], s[1]), make(rng, s[2], s[3]), make(rng, s[4], s[0]));
        self.cells += 3;
        let np = tensor_cells(&n, &p);
        let lhs = e(vcompose_all(&[
            &e(tensor_associator(&m, &n, &p))?,
            &e(braiding(&m, &np))?,
            &e(tensor_associator(&n, &p, &m))?,
        ]))?;
        let rhs = e(vcompose_all(&[
            &e(tensor2(&e(braiding(&m, &n))?, &id(&p)))?,
            &e(tensor_associator(&n, &m, &p))?,
            &e(tensor2(&id(&n), &e(braiding(&m, &p))?))?,
        ]))?;
        check(lhs == rhs, || "first hexagon".into())?;

        let mn = tensor_cells(&m, &n);
        let inv = |t: TwoMorphism<NetInstance<I, L>>| t.inverse().map_err(|e| e.to_string());
        let lhs = e(vcompose_all(&[
            &inv(e(tensor_associator(&m, &n, &p))?)?,
            &e(braiding(&mn, &p))?,
            &inv(e(tensor_associator(&p, &m, &n))?)?,
        ]))?;
        let rhs = e(vcompose_all(&[
            &e(tensor2(&id(&m), &e(braiding(&n, &p))?))?,
            &inv(e(tensor_associator(&m, &p, &n))?)?,
            &e(tensor2(&e(braiding(&m, &p))?, &id(&n)))?,
        ]))?;
        check(lhs == rhs, || "second hexagon".into())?;

        // Interchange of vertical and horizontal composition, and naturality
        // of the comparison between tensoring and gluing.
        let t1 = common::relabelling(rng, &c1);
        let t2 = common::relabelling(rng, t1.tgt());
        let r1 = common::relabelling(rng, &c2);
        let r2 = common::relabelling(rng, r1.tgt());
        let lhs = e(hcompose2(&e(vcompose(&t1, &t2))?, &e(vcompose(&r1, &r2))?))?;
        let rhs = e(vcompose(&e(hcompose2(&t1, &r1))?, &e(hcompose2(&t2, &r2))?))?;
        check(lhs == rhs, || "interchange law".into())?;

        let (d1, d2) = (make(rng, s[3], s[4]), make(rng, s[4], s[2]));
        self.cells += 2;
        let q1 = common::relabelling(rng, &d1);
        let q2 = common::relabelling(rng, &d2);
        let chi = e(interchange(&c1, &d1, &c2, &d2))?;
        let chi_after = e(interchange(t1.tgt(), q1.tgt(), r1.tgt(), q2.tgt()))?;
        let lhs = e(vcompose(&e(hcompose2(&e(tensor2(&t1, &q1))?, &e(tensor2(&r1, &q2))?))?, &chi_after))?;
        let rhs = e(vcompose(&chi, &e(tensor2(&e(hcompose2(&t1, &r1))?, &e(hcompose2(&q1, &q2))?))?))?;
        check(lhs == rhs, || "naturality of the interchanger".into())?;
        check(chi.inverse().is_ok(), || "interchanger not invertible".into())?;
        Ok(())
    }
}

/// 2. Coherence equations as exact equalities of 2-morphisms.
fn coherence_suite() -> Result<Outcome, String> {
    let mut rng = common::rng(2);
    let mut suite = Coherence { cells: 0 };
    for _ in 0..40 {
        suite.run(&mut rng, &|r, a, b| common::graph_cospan(r, a, b, 4))?;
        suite.run(&mut rng, &|r, a, b| common::petri_cospan(r, a, b, 4))?;
    }
    pass(format!("{} random cospans", suite.cells))
}

/// 3. The nine Frobenius laws up to isomorphism.
fn hypergraph_laws() -> Result<Outcome, String> {
    let mut checked = 0;
    for n in 1..=3 {
        let reports = [
            check_frobenius::<GraphInstance>(FinSet::new(n)),
            check_frobenius::<PetriInstance>(FinSet::new(n)),
        ];
        for r in reports {
            let r = r.map_err(|e| e.to_string())?;
            check(r.laws.len() == 9 && r.all_hold(), || r.to_string())?;
            checked += 9;
        }
    }
    pass(format!("{checked} law instances"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    all_functions(n, n)
        .into_iter()
        .filter(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == n
        })
        .collect()
}

fn companion_equations<X: Instance>() -> Result<usize, String> {
    let e = |r: opennet::Result<TwoMorphism<X>>| r.map_err(|e| e.to_string());
    let mut count = 0;
    for n in 0..=4 {
        for p in permutations(n) {
            let f = FinFunction::new(n, p).unwrap();
            let c = companion::<X>(&f).map_err(|e| e.to_string())?;
            check(e(vcompose(&c.beta, &c.alpha))? == TwoMorphism::unit_of(&f), || "companion, first".into())?;
            let lhs = e(vcompose(&e(hcompose2(&c.beta, &c.alpha))?, &e(right_unitor(&c.cell))?))?;
            check(lhs == e(left_unitor(&c.cell))?, || "companion, second".into())?;
            let j = conjoint::<X>(&f).map_err(|e| e.to_string())?;
            check(e(vcompose(&j.beta, &j.alpha))? == TwoMorphism::unit_of(&f), || "conjoint, first".into())?;
            let lhs = e(vcompose(&e(hcompose2(&j.alpha, &j.beta))?, &e(left_unitor(&j.cell))?))?;
            check(lhs == e(right_unitor(&j.cell))?, || "conjoint, second".into())?;
            count += 1;
        }
    }
    Ok(count)
}

/// 4. Companion and conjoint equations for every permutation of size at most 4.
fn companions() -> Result<Outcome, String> {
    let per = companion_equations::<FinSetInstance>()?;
    companion_equations::<GraphInstance>()?;
    companion_equations::<LGraphInstance<String>>()?;
    companion_equations::<PetriInstance>()?;
    companion_equations::<PetriRatesInstance>()?;
    companion_equations::<CmcInstance>()?;
    pass(format!("{per} permutations in each of 6 instances"))
}

fn petri(doc: &str) -> StructuredCospan<PetriInstance> {
    io::petri(&io::parse(doc).unwrap()).unwrap()
}

/// 5. Gluing and tensoring the water and dissociation nets.
fn chemistry_example() -> Result<Outcome, String> {
    let (w, d) = (petri(WATER), petri(DISSOCIATION));
    check((w.foot_in().size, w.foot_out().size) == (3, 1), || "water feet".into())?;
    check((d.foot_in().size, d.foot_out().size) == (1, 3), || "dissociation feet".into())?;
    let c = hcompose(&w, &d).map_err(|e| e.to_string())?;
    let (places, transitions) = (c.apex().places().size, c.apex().transitions().size);
    check((places, transitions) == (5, 2), || format!("composite has {places} places, {transitions} transitions"))?;
    let t = tensor_cells(&w, &d);
    let feet = (t.foot_in().size, t.foot_out().size);
    check(feet == (4, 4), || format!("tensor feet {feet:?}"))?;
    pass("5 places, 2 transitions; tensor feet 4 and 4")
}

/// 6. Renaming an edge does not change the class; retargeting a leg does.
fn graph_example() -> Result<Outcome, String> {
    let g = |text: &str| match io::parse(text).unwrap().network {
        io::OpenNetwork::Graph(c) => c,
        _ => unreachable!(),
    };
    let (a, b, r) = (g(SQUARE_E5), g(SQUARE_E6), g(SQUARE_RETARGETED));
    check(a != b, || "the two presentations should differ".into())?;
    check(iso_class(&a) == iso_class(&b), || "renamed graphs not identified".into())?;
    check(iso_class(&a) != iso_class(&r), || "retargeted leg identified".into())?;
    check(iso_class(&b) != iso_class(&r), || "retargeted leg identified".into())?;
    pass("renaming identified, retargeting distinguished")
}

/// 7. Black-boxing preserves composition, with series and parallel laws.
fn blackbox_functoriality() -> Result<Outcome, String> {
    let mut rng = common::rng(7);
    let mut circuits = 0;
    for _ in 0..60 {
        let s = common::sizes(&mut rng, 3, 2);
        let c1 = common::circuit(&mut rng, s[0], s[1], 6);
        let c2 = common::circuit(&mut rng, s[1], s[2], 6);
        circuits += 2;
        let glued = blackbox(&hcompose(&c1, &c2).map_err(|e| e.to_string())?);
        let composed = compose_relations(&blackbox(&c1), &blackbox(&c2)).map_err(|e| e.to_string())?;
        check(glued == composed, || format!("functoriality fails on\n{c1:?}\n{c2:?}"))?;
    }
    for _ in 0..20 {
        let (r1, r2) = (common::random_rational(&mut rng), common::random_rational(&mut rng));
        let edge = |r: &num_rational::BigRational| {
            let g = opennet::circuits::CircuitGraph::labelled(2, vec![(0, 1, Resistance::new(r.clone()).unwrap())]).unwrap();
            StructuredCospan::from_maps(g, &FinFunction::new(2, vec![0]).unwrap(), &FinFunction::new(2, vec![1]).unwrap())
                .unwrap()
        };
        let series = blackbox(&hcompose(&edge(&r1), &edge(&r2)).unwrap());
        check(series == resistor_relation(&Resistance::new(&r1 + &r2).unwrap()), || "series".into())?;
        let both = opennet::circuits::CircuitGraph::labelled(
            2,
            vec![(0, 1, Resistance::new(r1.clone()).unwrap()), (0, 1, Resistance::new(r2.clone()).unwrap())],
        )
        .unwrap();
        let par = StructuredCospan::from_maps(both, &FinFunction::new(2, vec![0]).unwrap(), &FinFunction::new(2, vec![1]).unwrap())
            .unwrap();
        let expected = Resistance::new(&r1 * &r2 / (&r1 + &r2)).unwrap();
        check(blackbox(&par) == resistor_relation(&expected), || "parallel".into())?;
        circuits += 3;
    }
    pass(format!("{circuits} random circuits"))
}

/// 8. The comparison cell of the Petri-to-CMC functor is invertible.
fn petri_to_cmc_compositionality() -> Result<Outcome, String> {
    let mut rng = common::rng(8);
    for _ in 0..60 {
        let s = common::sizes(&mut rng, 3, 3);
        let c1 = common::petri_cospan(&mut rng, s[0], s[1], 4);
        let c2 = common::petri_cospan(&mut rng, s[1], s[2], 4);
        let cmp = composition_comparison(&PetriToCmc, &c1, &c2).map_err(|e| e.to_string())?;
        check(cmp.is_globular() && cmp.inverse().is_ok(), || "comparison not invertible".into())?;
    }
    let composite = hcompose(&petri(WATER), &petri(DISSOCIATION)).unwrap();
    let pres = petri_to_cmc(composite.apex());
    let gens: Vec<(Vec<usize>, Vec<usize>)> = pres
        .morphism_generators()
        .iter()
        .map(|g| (g.source.counts().to_vec(), g.target.counts().to_vec()))
        .collect();
    let expected = vec![(vec![2, 1, 0, 0, 0], vec![0, 0, 1, 0, 0]), (vec![0, 0, 2, 0, 0], vec![0, 0, 0, 1, 1])];
    check(gens == expected, || format!("generators {gens:?}"))?;
    pass("60 random composites; 2 generators on the chemistry composite")
}

/// 9. Vector fields glue along pushouts; atom counts are conserved.
fn dynamics_compositionality() -> Result<Outcome, String> {
    let mut rng = common::rng(9);
    for _ in 0..60 {
        let s = common::sizes(&mut rng, 3, 2);
        let d1 = common::rated_cospan(&mut rng, s[0], s[1], 4);
        let d2 = common::rated_cospan(&mut rng, s[1], s[2], 4);
        let places = hcompose(&d1, &d2).map_err(|e| e.to_string())?.apex().places().size;
        let x = Concentration::new((0..places).map(|_| ratio(rng.gen_range(0..6), rng.gen_range(1..4))).collect())
            .unwrap();
        let g = glued_field(&d1, &d2, &x).map_err(|e| e.to_string())?;
        check(g.direct == g.from_parts, || "composite field differs from glued parts".into())?;
        let p = d1.apex();
        let field = symbolic_field(p);
        for c in conservation_laws(p) {
            check(pair_with(&c, &field).is_zero(), || "conservation law not annihilating".into())?;
        }
    }
    let water = io::rated_petri(&io::parse(WATER_RATES).unwrap()).unwrap();
    let x = Concentration::new(vec![from_i64(1), from_i64(1), from_i64(0)]).unwrap();
    let v = vector_field(water.apex(), &x).unwrap();
    check(v == vec![from_i64(-2), from_i64(-1), from_i64(1)], || format!("water field {v:?}"))?;
    let field = symbolic_field(water.apex());
    let laws = conservation_laws(water.apex());
    check(laws.len() == 2 && laws.iter().all(|c| pair_with(c, &field).is_zero()), || "water invariants".into())?;
    pass("60 random compositions; water field (-2, -1, 1)")
}

/// 10. Iso classes form a strict symmetric monoidal category.
fn decategorification() -> Result<Outcome, String> {
    type K = CospanIsoClass<GraphInstance>;
    let mut rng = common::rng(10);
    let e = |r: opennet::Result<K>| r.map_err(|e| e.to_string());
    let mut triples = 0;
    for _ in 0..210 {
        let s = common::sizes(&mut rng, 4, 2);
        let k = |rng: &mut StdRng, a: usize, b: usize| iso_class(&common::graph_cospan(rng, a, b, 3));
        let (k1, k2, k3) = (k(&mut rng, s[0], s[1]), k(&mut rng, s[1], s[2]), k(&mut rng, s[2], s[3]));
        triples += 1;
        let lhs = e(decat_compose(&e(decat_compose(&k1, &k2))?, &k3))?;
        let rhs = e(decat_compose(&k1, &e(decat_compose(&k2, &k3))?))?;
        check(lhs == rhs, || "composition not associative".into())?;
        let (ua, ub) = (K::identity(FinSet::new(s[0])), K::identity(FinSet::new(s[1])));
        check(e(decat_compose(&ua, &k1))? == k1 && e(decat_compose(&k1, &ub))? == k1, || "units".into())?;

        let lhs = decat_tensor(&decat_tensor(&k1, &k2), &k3);
        let rhs = decat_tensor(&k1, &decat_tensor(&k2, &k3));
        check(lhs == rhs, || "tensor not associative".into())?;
        let unit = iso_class(&unit_cell::<GraphInstance>());
        check(decat_tensor(&unit, &k1) == k1 && decat_tensor(&k1, &unit) == k1, || "tensor unit".into())?;

        let braid = |a: usize, b: usize| -> Result<K, String> {
            let swap = FinSetInstance::swap(&FinSet::new(a), &FinSet::new(b));
            Ok(iso_class(&companion::<GraphInstance>(&swap).map_err(|e| e.to_string())?.cell))
        };
        let (a, b, c, d) = (s[0], s[1], s[1], s[2]);
        let natural_l = e(decat_compose(&braid(a, c)?, &decat_tensor(&k2, &k1)))?;
        let natural_r = e(decat_compose(&decat_tensor(&k1, &k2), &braid(b, d)?))?;
        check(natural_l == natural_r, || "braiding not natural".into())?;
        let twice = e(decat_compose(&braid(a, c)?, &braid(c, a)?))?;
        check(twice == K::identity(FinSet::new(a + c)), || "braiding not symmetric".into())?;

        let k4 = k(&mut rng, s[3], s[0]);
        let lhs = decat_tensor(&e(decat_compose(&k1, &k2))?, &e(decat_compose(&k3, &k4))?);
        let rhs = e(decat_compose(&decat_tensor(&k1, &k3), &decat_tensor(&k2, &k4)))?;
        check(lhs == rhs, || "tensor not functorial".into())?;
    }
    pass(format!("{triples} random triples"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Result<Outcome, String>, Duration);
    let criteria: [Criterion; 10] = [
        ("pushout universal property", pushout_universal_property, Duration::from_secs(10)),
        ("coherence suite", coherence_suite, Duration::from_secs(30)),
        ("hypergraph laws", hypergraph_laws, Duration::from_secs(30)),
        ("companion equations", companions, Duration::from_secs(60)),
        ("chemistry worked example", chemistry_example, Duration::from_secs(5)),
        ("graph worked example", graph_example, Duration::from_secs(5)),
        ("black-box functoriality", blackbox_functoriality, Duration::from_secs(60)),
        ("petri to cmc compositionality", petri_to_cmc_compositionality, Duration::from_secs(60)),
        ("dynamics compositionality", dynamics_compositionality, Duration::from_secs(60)),
        ("decategorification", decategorification, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (i, (name, run, bound)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|detail| Outcome { ok: false, detail });
        let elapsed = start.elapsed();
        let in_time = elapsed <= *bound;
        let ok = outcome.ok && in_time;
        if !ok {
            failures += 1;
        }
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), bound.as_secs());
        let note = if in_time { outcome.detail } else { format!("{} (too slow)", outcome.detail) };
        println!(
            "{} {:>2}. {name}: {note} [{timing}]",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
