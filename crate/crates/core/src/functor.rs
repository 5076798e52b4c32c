//! Maps of structured cospans induced by a square `(F0, F1, α)`, and the
//! Petri-net to free commutative monoidal category instance of it.

use std::collections::{HashMap, VecDeque};
use std::marker::PhantomData;

use crate::cospan::{hcompose_with, identity_cell, StructuredCospan, TwoMorphism};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};
use crate::instances::{CmcInstance, CmcPresentation, Instance, Multiset, PetriInstance, PetriNet, PresentationMap};

/// A functor `F0` between base categories of finite sets, a
/// pushout-preserving functor `F1: X -> X'`, and components
/// `α_a: L'(F0 a) -> F1(L a)` of a natural isomorphism.
pub trait Square {
    type Source: Instance;
    type Target: Instance;

    fn base_object(&self, a: FinSet) -> FinSet;
    fn base_map(&self, f: &FinFunction) -> FinFunction;
    fn object(&self, x: &<Self::Source as Instance>::Object) -> <Self::Target as Instance>::Object;
    fn morphism(&self, m: &<Self::Source as Instance>::Morphism) -> <Self::Target as Instance>::Morphism;
    fn alpha(&self, a: FinSet) -> <Self::Target as Instance>::Morphism;
}

/// `F1(i) α_a` and `F1(o) α_b` on the legs.
pub fn map_cospan<S: Square>(sq: &S, c: &StructuredCospan<S::Source>) -> Result<StructuredCospan<S::Target>> {
    let leg = |l: &<S::Source as Instance>::Morphism, foot: FinSet| {
        S::Target::compose(&sq.morphism(l), &sq.alpha(foot))
    };
    StructuredCospan::new(
        sq.base_object(c.foot_in()),
        sq.base_object(c.foot_out()),
        leg(c.leg_in(), c.foot_in())?,
        leg(c.leg_out(), c.foot_out())?,
    )
}

pub fn map_two_morphism<S: Square>(sq: &S, t: &TwoMorphism<S::Source>) -> Result<TwoMorphism<S::Target>> {
    TwoMorphism::new(
        map_cospan(sq, t.src())?,
        map_cospan(sq, t.tgt())?,
        sq.base_map(t.alpha()),
        sq.base_map(t.beta()),
        sq.morphism(t.apex_map()),
    )
}

/// `F(c1) ⊙ F(c2) ⇒ F(c1 ⊙ c2)`, the mediator into the image of the pushout.
pub fn composition_comparison<S: Square>(
    sq: &S,
    c1: &StructuredCospan<S::Source>,
    c2: &StructuredCospan<S::Source>,
) -> Result<TwoMorphism<S::Target>> {
    let (composite, po) = hcompose_with(c1, c2)?;
    let (src, image_po) = hcompose_with(&map_cospan(sq, c1)?, &map_cospan(sq, c2)?)?;
    let apex_map = S::Target::mediate(&image_po, &sq.morphism(&po.left), &sq.morphism(&po.right))?;
    TwoMorphism::globular(src, map_cospan(sq, &composite)?, apex_map)
}

/// `U'_{F0 a} ⇒ F(U_a)`, with apex map `α_a`.
pub fn unit_comparison<S: Square>(sq: &S, a: FinSet) -> Result<TwoMorphism<S::Target>> {
    TwoMorphism::globular(
        identity_cell(sq.base_object(a)),
        map_cospan(sq, &identity_cell(a))?,
        sq.alpha(a),
    )
}

/// `F0 = F1 = 1`, `α = 1`.
pub struct IdentitySquare<X>(PhantomData<fn() -> X>);

impl<X> Default for IdentitySquare<X> {
    fn default() -> Self {
        IdentitySquare(PhantomData)
    }
}

impl<X: Instance> Square for IdentitySquare<X> {
    type Source = X;
    type Target = X;

    fn base_object(&self, a: FinSet) -> FinSet {
        a
    }
    fn base_map(&self, f: &FinFunction) -> FinFunction {
        f.clone()
    }
    fn object(&self, x: &X::Object) -> X::Object {
        x.clone()
    }
    fn morphism(&self, m: &X::Morphism) -> X::Morphism {
        m.clone()
    }
    fn alpha(&self, a: FinSet) -> X::Morphism {
        X::identity(&X::free(a))
    }
}

/// The presentation with places as object generators and one morphism
/// generator `τ: s(τ) -> t(τ)` per transition.
pub fn petri_to_cmc(p: &PetriNet) -> CmcPresentation {
    CmcPresentation::from_net(p)
}

/// `Petri -> CMC` over the identity on finite sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct PetriToCmc;

impl Square for PetriToCmc {
    type Source = PetriInstance;
    type Target = CmcInstance;

    fn base_object(&self, a: FinSet) -> FinSet {
        a
    }
    fn base_map(&self, f: &FinFunction) -> FinFunction {
        f.clone()
    }
    fn object(&self, x: &PetriNet) -> CmcPresentation {
        petri_to_cmc(x)
    }
    fn morphism(&self, m: &crate::instances::PetriMorphism) -> PresentationMap {
        PresentationMap::new(
            petri_to_cmc(m.dom()),
            petri_to_cmc(m.cod()),
            m.node_map().clone(),
            m.edge_map().clone(),
        )
        .expect("net morphisms respect boundaries")
    }
    fn alpha(&self, a: FinSet) -> PresentationMap {
        let image = self.object(&PetriInstance::free(a));
        CmcInstance::transpose(&FinFunction::identity(a), &image).expect("F(L a) has generators a")
    }
}

/// Morphism terms of a free commutative monoidal category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CmcTerm {
    Generator(usize),
    Identity(Multiset),
    Tensor(Box<CmcTerm>, Box<CmcTerm>),
    /// First the left term, then the right one.
    Compose(Box<CmcTerm>, Box<CmcTerm>),
}

impl CmcTerm {
    pub fn tensor(a: CmcTerm, b: CmcTerm) -> Self {
        CmcTerm::Tensor(Box::new(a), Box::new(b))
    }

    pub fn then(self, next: CmcTerm) -> Self {
        CmcTerm::Compose(Box::new(self), Box::new(next))
    }
}

/// `(source, target)` of a term, computed structurally.
pub fn term_boundary(t: &CmcTerm, pres: &CmcPresentation) -> Result<(Multiset, Multiset)> {
    match t {
        CmcTerm::Generator(g) => {
            let gen = pres
                .morphism_generators()
                .get(*g)
                .ok_or_else(|| Error::InvalidObject(format!("no morphism generator {g}")))?;
            Ok((gen.source.clone(), gen.target.clone()))
        }
        CmcTerm::Identity(m) => {
            if m.base() != pres.object_generators() {
                return Err(Error::InvalidObject("identity on a multiset over other generators".into()));
            }
            Ok((m.clone(), m.clone()))
        }
        CmcTerm::Tensor(a, b) => {
            let (sa, ta) = term_boundary(a, pres)?;
            let (sb, tb) = term_boundary(b, pres)?;
            Ok((sa.add(&sb)?, ta.add(&tb)?))
        }
        CmcTerm::Compose(a, b) => {
            let (sa, ta) = term_boundary(a, pres)?;
            let (sb, tb) = term_boundary(b, pres)?;
            if ta != sb {
                return Err(Error::IllTypedCompose(format!("target {ta} does not match source {sb}")));
            }
            Ok((sa, tb))
        }
    }
}

/// Fires transition `t` at `marking`, if it is enabled.
pub fn fire(p: &PetriNet, marking: &Multiset, t: usize) -> Option<Multiset> {
    marking.checked_sub(p.source(t))?.add(p.target(t)).ok()
}

/// Replays a firing sequence.
pub fn replay(p: &PetriNet, from: &Multiset, firings: &[usize]) -> Option<Multiset> {
    firings.iter().try_fold(from.clone(), |m, &t| fire(p, &m, t))
}

/// A shortest firing sequence from `from` to `to` of length at most
/// `max_steps`, found by breadth-first search over markings.
pub fn reachable(p: &PetriNet, from: &Multiset, to: &Multiset, max_steps: usize) -> Option<Vec<usize>> {
    if from.base() != p.places() || to.base() != p.places() {
        return None;
    }
    let mut parent: HashMap<Multiset, Option<(Multiset, usize)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([(from.clone(), 0)]);
    while let Some((m, depth)) = queue.pop_front() {
        if &m == to {
            let mut seq = Vec::new();
            let mut cur = m;
            while let Some(Some((prev, t))) = parent.get(&cur) {
                seq.push(*t);
                cur = prev.clone();
            }
            seq.reverse();
            return Some(seq);
        }
        if depth == max_steps {
            continue;
        }
        for t in 0..p.transitions().size {
            if let Some(next) = fire(p, &m, t) {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((m.clone(), t)));
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    None
}

/// The process term `from -> ...` of a firing sequence: each step fires one
/// generator alongside the identity on the untouched tokens.
pub fn firing_term(p: &PetriNet, from: &Multiset, firings: &[usize]) -> Option<CmcTerm> {
    let mut term = CmcTerm::Identity(from.clone());
    let mut marking = from.clone();
    for &t in firings {
        let rest = marking.checked_sub(p.source(t))?;
        marking = rest.add(p.target(t)).ok()?;
        term = term.then(CmcTerm::tensor(CmcTerm::Generator(t), CmcTerm::Identity(rest)));
    }
    Some(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospan::hcompose;

    const H: usize = 0;
    const O: usize = 1;
    const H2O: usize = 2;

    fn ff(cod: usize, map: &[usize]) -> FinFunction {
        FinFunction::new(cod, map.to_vec()).unwrap()
    }

    fn water() -> StructuredCospan<PetriInstance> {
        let net = PetriNet::petri(3, vec![(vec![(H, 2), (O, 1)], vec![(H2O, 1)])]).unwrap();
        StructuredCospan::from_maps(net, &ff(3, &[H, O, O]), &ff(3, &[H2O])).unwrap()
    }

    fn dissociation() -> StructuredCospan<PetriInstance> {
        let net = PetriNet::petri(3, vec![(vec![(0, 2)], vec![(1, 1), (2, 1)])]).unwrap();
        StructuredCospan::from_maps(net, &ff(3, &[0]), &ff(3, &[1, 1, 2])).unwrap()
    }

    fn ms(base: usize, pairs: &[(usize, usize)]) -> Multiset {
        Multiset::from_pairs(base, pairs).unwrap()
    }

    #[test]
    fn identity_square_changes_nothing() {
        let sq = IdentitySquare::<PetriInstance>::default();
        let c = water();
        assert_eq!(map_cospan(&sq, &c).unwrap(), c);
        let cmp = composition_comparison(&sq, &water(), &dissociation()).unwrap();
        assert_eq!(cmp, TwoMorphism::identity(cmp.src()));
    }

    #[test]
    fn water_becomes_a_presentation() {
        let c = map_cospan(&PetriToCmc, &water()).unwrap();
        assert_eq!(c.apex().object_generators().size, 3);
        assert_eq!(c.apex().morphism_generators().len(), 1);
        assert_eq!(c.apex().generator(0).source.counts(), &[2, 1, 0]);
        assert_eq!(c.apex().generator(0).target.counts(), &[0, 0, 1]);
        assert_eq!((c.foot_in().size, c.foot_out().size), (3, 1));
    }

    #[test]
    fn composite_comparison_is_an_isomorphism() {
        let cmp = composition_comparison(&PetriToCmc, &water(), &dissociation()).unwrap();
        assert!(cmp.inverse().is_ok());
        assert_eq!(cmp.src().apex().object_generators().size, 5);
        assert_eq!(cmp.src().apex().morphism_generators().len(), 2);
        let direct = petri_to_cmc(hcompose(&water(), &dissociation()).unwrap().apex());
        assert!(CmcInstance::find_isomorphism(cmp.src().apex(), &direct, &[]).is_some());
    }

    #[test]
    fn unit_comparison_uses_alpha() {
        let u = unit_comparison(&PetriToCmc, FinSet::new(2)).unwrap();
        assert!(u.inverse().is_ok());
        assert_eq!(u.apex_map().object_map(), &FinFunction::identity(2));
        assert_eq!(petri_to_cmc(&PetriInstance::free(FinSet::new(2))), CmcPresentation::discrete(2));
    }

    #[test]
    fn two_morphisms_are_mapped() {
        let t = TwoMorphism::identity(&water());
        let m = map_two_morphism(&PetriToCmc, &t).unwrap();
        assert_eq!(m, TwoMorphism::identity(&map_cospan(&PetriToCmc, &water()).unwrap()));
    }

    #[test]
    fn boundaries_of_terms() {
        let pres = petri_to_cmc(water().apex());
        let alpha = CmcTerm::Generator(0);
        assert_eq!(term_boundary(&alpha, &pres).unwrap(), (ms(3, &[(H, 2), (O, 1)]), ms(3, &[(H2O, 1)])));
        let with_h = CmcTerm::tensor(alpha.clone(), CmcTerm::Identity(ms(3, &[(H, 1)])));
        assert_eq!(
            term_boundary(&with_h, &pres).unwrap(),
            (ms(3, &[(H, 3), (O, 1)]), ms(3, &[(H, 1), (H2O, 1)]))
        );
        // Two α in parallel, then the identity on 2H2O.
        let twice = CmcTerm::tensor(alpha.clone(), alpha.clone()).then(CmcTerm::Identity(ms(3, &[(H2O, 2)])));
        assert_eq!(term_boundary(&twice, &pres).unwrap(), (ms(3, &[(H, 4), (O, 2)]), ms(3, &[(H2O, 2)])));
        let bad = alpha.clone().then(alpha);
        assert_eq!(term_boundary(&bad, &pres).unwrap_err().name(), "ill-typed-compose");
    }

    #[test]
    fn reachability_in_the_composite() {
        let net = hcompose(&water(), &dissociation()).unwrap().apex().clone();
        // Places: H, O, H2O, OH-, H3O+.
        let start = ms(5, &[(0, 4), (1, 2)]);
        let goal = ms(5, &[(3, 1), (4, 1)]);
        let seq = reachable(&net, &start, &goal, 3).unwrap();
        assert_eq!(seq, vec![0, 0, 1]);
        assert_eq!(replay(&net, &start, &seq).unwrap(), goal);
        assert!(reachable(&net, &start, &goal, 2).is_none());
        let term = firing_term(&net, &start, &seq).unwrap();
        assert_eq!(term_boundary(&term, &petri_to_cmc(&net)).unwrap(), (start.clone(), goal));
        assert_eq!(reachable(&net, &start, &start, 0), Some(vec![]));
        let water = water().apex().clone();
        assert!(reachable(&water, &ms(3, &[(H, 1)]), &ms(3, &[(H2O, 1)]), 10).is_none());
    }
}
