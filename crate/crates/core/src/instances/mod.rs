//! Finitely cocomplete categories `X` equipped with a colimit-preserving
//! functor `L: FinSet -> X`.
//!
//! [`Instance`] is the contract consumed by [`crate::cospan`]: chosen
//! initial object, binary coproducts and pushouts with their mediating maps,
//! the free functor `L` and its right adjoint on objects, plus the
//! isomorphism search used to compare cospans up to isomorphism.

use std::fmt::Debug;

use crate::error::Result;
use crate::finset::{self, FinFunction, FinSet};

mod cmc;
mod graph;
mod net;
mod petri;

pub use cmc::{CmcInstance, CmcPresentation, MorphismGenerator, PresentationMap};
pub use graph::{Endpoints, Graph, GraphInstance, GraphMorphism, LGraph, LGraphInstance, LGraphMorphism};
pub use net::{Edge, Incidence, Label, Net, NetInstance, NetMorphism};
pub use petri::{
    Arcs, Multiset, PetriInstance, PetriMorphism, PetriNet, PetriRatesInstance, PetriWithRates,
    Rate, RatesMorphism,
};

pub trait Instance: 'static {
    type Object: Clone + PartialEq + Debug;
    type Morphism: Clone + PartialEq + Debug;

    fn dom(m: &Self::Morphism) -> &Self::Object;
    fn cod(m: &Self::Morphism) -> &Self::Object;
    fn identity(x: &Self::Object) -> Self::Morphism;
    /// `g ∘ f`.
    fn compose(g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn initial() -> Self::Object;
    fn from_initial(x: &Self::Object) -> Self::Morphism;
    fn coproduct(x: &Self::Object, y: &Self::Object) -> Coproduct<Self>;
    fn copair(f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;
    fn pushout(f: &Self::Morphism, g: &Self::Morphism) -> Result<Pushout<Self>>;
    fn mediate(
        po: &Pushout<Self>,
        via_left: &Self::Morphism,
        via_right: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    /// `L` on objects.
    fn free(a: FinSet) -> Self::Object;
    /// `L` on morphisms.
    fn free_map(f: &FinFunction) -> Self::Morphism;
    /// The right adjoint on objects: nodes, places, or the set itself.
    fn underlying(x: &Self::Object) -> FinSet;
    fn underlying_map(m: &Self::Morphism) -> FinFunction;
    /// The morphism `L(a) -> x` whose underlying function is `f: a -> U(x)`.
    fn transpose(f: &FinFunction, x: &Self::Object) -> Result<Self::Morphism>;

    fn inverse(m: &Self::Morphism) -> Option<Self::Morphism>;

    /// An isomorphism `x -> y` whose underlying map sends `p` to `q` for
    /// every pinned pair `(p, q)`, if one exists.
    fn find_isomorphism(
        x: &Self::Object,
        y: &Self::Object,
        pins: &[(usize, usize)],
    ) -> Option<Self::Morphism>;

    /// A deterministic renumbering isomorphism out of `x`. Underlying
    /// elements reachable from `seeds` come first, in breadth-first order.
    fn canonical_renumbering(x: &Self::Object, seeds: &[usize]) -> Self::Morphism;

    /// `f + g`, induced by the chosen coproducts.
    fn coproduct_map(f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        let target = Self::coproduct(Self::cod(f), Self::cod(g));
        let left = Self::compose(&target.left, f)?;
        let right = Self::compose(&target.right, g)?;
        Self::copair(&left, &right)
    }

    /// The block swap `x + y -> y + x`.
    fn swap(x: &Self::Object, y: &Self::Object) -> Self::Morphism {
        let yx = Self::coproduct(y, x);
        Self::copair(&yx.right, &yx.left).expect("injections share a codomain")
    }
}

/// A chosen coproduct `sum` with injections `left: x -> sum`, `right: y -> sum`.
pub struct Coproduct<X: Instance + ?Sized> {
    pub sum: X::Object,
    pub left: X::Morphism,
    pub right: X::Morphism,
}

/// A chosen pushout of the span `b <-span_left- a -span_right-> c`, with
/// legs `left: b -> apex` and `right: c -> apex`.
pub struct Pushout<X: Instance + ?Sized> {
    pub span_left: X::Morphism,
    pub span_right: X::Morphism,
    pub apex: X::Object,
    pub left: X::Morphism,
    pub right: X::Morphism,
}

impl<X: Instance + ?Sized> Clone for Coproduct<X> {
    fn clone(&self) -> Self {
        Coproduct {
            sum: self.sum.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<X: Instance + ?Sized> Debug for Coproduct<X> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Coproduct")
            .field("sum", &self.sum)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl<X: Instance + ?Sized> Clone for Pushout<X> {
    fn clone(&self) -> Self {
        Pushout {
            span_left: self.span_left.clone(),
            span_right: self.span_right.clone(),
            apex: self.apex.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<X: Instance + ?Sized> Debug for Pushout<X> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pushout")
            .field("apex", &self.apex)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// `FinSet` over itself with `L` the identity: plain cospans of finite sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FinSetInstance;

impl Instance for FinSetInstance {
    type Object = FinSet;
    type Morphism = FinFunction;

    fn dom(m: &FinFunction) -> &FinSet {
        m.dom_ref()
    }
    fn cod(m: &FinFunction) -> &FinSet {
        m.cod_ref()
    }
    fn identity(x: &FinSet) -> FinFunction {
        FinFunction::identity(*x)
    }
    fn compose(g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
        finset::compose(g, f)
    }
    fn initial() -> FinSet {
        FinSet::EMPTY
    }
    fn from_initial(x: &FinSet) -> FinFunction {
        FinFunction::initial(*x)
    }
    fn coproduct(x: &FinSet, y: &FinSet) -> Coproduct<Self> {
        let c = finset::coproduct(*x, *y);
        Coproduct {
            sum: c.sum,
            left: c.left,
            right: c.right,
        }
    }
    fn copair(f: &FinFunction, g: &FinFunction) -> Result<FinFunction> {
        finset::copair(f, g)
    }
    fn pushout(f: &FinFunction, g: &FinFunction) -> Result<Pushout<Self>> {
        let po = finset::pushout(f, g)?;
        Ok(Pushout {
            span_left: f.clone(),
            span_right: g.clone(),
            apex: po.apex,
            left: po.left,
            right: po.right,
        })
    }
    fn mediate(po: &Pushout<Self>, via_left: &FinFunction, via_right: &FinFunction) -> Result<FinFunction> {
        finset::Pushout {
            apex: po.apex,
            left: po.left.clone(),
            right: po.right.clone(),
            merges: 0,
        }
        .mediator(via_left, via_right)
    }
    fn free(a: FinSet) -> FinSet {
        a
    }
    fn free_map(f: &FinFunction) -> FinFunction {
        f.clone()
    }
    fn underlying(x: &FinSet) -> FinSet {
        *x
    }
    fn underlying_map(m: &FinFunction) -> FinFunction {
        m.clone()
    }
    fn transpose(f: &FinFunction, x: &FinSet) -> Result<FinFunction> {
        if f.cod() != *x {
            return Err(crate::error::Error::MismatchedBoundary(format!("{f} does not land in {x}")));
        }
        Ok(f.clone())
    }
    fn inverse(m: &FinFunction) -> Option<FinFunction> {
        m.inverse()
    }
    fn find_isomorphism(x: &FinSet, y: &FinSet, pins: &[(usize, usize)]) -> Option<FinFunction> {
        if x != y {
            return None;
        }
        let mut map = vec![usize::MAX; x.size];
        let mut used = vec![false; y.size];
        for &(p, q) in pins {
            if map[p] == usize::MAX {
                if used[q] {
                    return None;
                }
                map[p] = q;
                used[q] = true;
            } else if map[p] != q {
                return None;
            }
        }
        let mut free = (0..y.size).filter(|&q| !used[q]);
        for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = free.next()?;
        }
        FinFunction::new(*y, map).ok()
    }
    fn canonical_renumbering(x: &FinSet, seeds: &[usize]) -> FinFunction {
        let mut new_index = vec![usize::MAX; x.size];
        let mut next = 0;
        for &s in seeds.iter().chain(&(0..x.size).collect::<Vec<_>>()) {
            if new_index[s] == usize::MAX {
                new_index[s] = next;
                next += 1;
            }
        }
        FinFunction::new(*x, new_index).expect("renumbering is a permutation")
    }
}
