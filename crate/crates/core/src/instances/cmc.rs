//! Presentations of free commutative monoidal categories.
//!
//! A presentation has object generators `S` (objects are `N[S]`) and
//! morphism generators `g: s(g) -> t(g)` between multisets. Maps of
//! presentations send generators to generators and respect boundaries.
//! Colimits are those of the underlying Petri-net shape data, so the
//! instance is computed by converting to and from [`PetriNet`].

use super::net::{Edge, NetMorphism};
use super::petri::{Arcs, Multiset, PetriInstance, PetriMorphism, PetriNet};
use super::{Coproduct, Instance, Pushout};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismGenerator {
    pub source: Multiset,
    pub target: Multiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CmcPresentation {
    object_generators: FinSet,
    morphism_generators: Vec<MorphismGenerator>,
}

impl CmcPresentation {
    pub fn new(object_generators: impl Into<FinSet>, morphism_generators: Vec<MorphismGenerator>) -> Result<Self> {
        let object_generators = object_generators.into();
        for (i, g) in morphism_generators.iter().enumerate() {
            if g.source.base() != object_generators || g.target.base() != object_generators {
                return Err(Error::InvalidObject(format!(
                    "morphism generator {i} has a boundary outside the object generators"
                )));
            }
        }
        Ok(CmcPresentation {
            object_generators,
            morphism_generators,
        })
    }

    /// `L'(a)`: generators `a` and no morphism generators.
    pub fn discrete(a: impl Into<FinSet>) -> Self {
        CmcPresentation {
            object_generators: a.into(),
            morphism_generators: Vec::new(),
        }
    }

    pub fn object_generators(&self) -> FinSet {
        self.object_generators
    }

    pub fn morphism_generators(&self) -> &[MorphismGenerator] {
        &self.morphism_generators
    }

    pub fn generator(&self, g: usize) -> &MorphismGenerator {
        &self.morphism_generators[g]
    }

    pub(crate) fn to_net(&self) -> PetriNet {
        PetriNet::new(
            self.object_generators,
            self.morphism_generators
                .iter()
                .map(|g| Edge {
                    incidence: Arcs {
                        input: g.source.clone(),
                        output: g.target.clone(),
                    },
                    label: (),
                })
                .collect(),
        )
        .expect("presentation boundaries lie over the generators")
    }

    pub(crate) fn from_net(net: &PetriNet) -> Self {
        CmcPresentation {
            object_generators: net.nodes(),
            morphism_generators: net
                .edges()
                .iter()
                .map(|e| MorphismGenerator {
                    source: e.incidence.input.clone(),
                    target: e.incidence.output.clone(),
                })
                .collect(),
        }
    }
}

/// A map of presentations: object generators to object generators and
/// morphism generators to morphism generators, commuting with boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentationMap {
    dom: CmcPresentation,
    cod: CmcPresentation,
    objects: FinFunction,
    generators: FinFunction,
}

impl PresentationMap {
    pub fn new(
        dom: CmcPresentation,
        cod: CmcPresentation,
        objects: FinFunction,
        generators: FinFunction,
    ) -> Result<Self> {
        NetMorphism::new(dom.to_net(), cod.to_net(), generators.clone(), objects.clone())?;
        Ok(PresentationMap {
            dom,
            cod,
            objects,
            generators,
        })
    }

    pub fn dom(&self) -> &CmcPresentation {
        &self.dom
    }

    pub fn cod(&self) -> &CmcPresentation {
        &self.cod
    }

    pub fn object_map(&self) -> &FinFunction {
        &self.objects
    }

    pub fn generator_map(&self) -> &FinFunction {
        &self.generators
    }

    fn to_net(&self) -> PetriMorphism {
        NetMorphism::new_unchecked(
            self.dom.to_net(),
            self.cod.to_net(),
            self.generators.clone(),
            self.objects.clone(),
        )
    }

    fn from_net(m: &PetriMorphism) -> Self {
        PresentationMap {
            dom: CmcPresentation::from_net(m.dom()),
            cod: CmcPresentation::from_net(m.cod()),
            objects: m.node_map().clone(),
            generators: m.edge_map().clone(),
        }
    }
}

/// Presentations and their maps, with `L'` the discrete presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CmcInstance;

fn from_pushout(po: Pushout<PetriInstance>) -> Pushout<CmcInstance> {
    Pushout {
        span_left: PresentationMap::from_net(&po.span_left),
        span_right: PresentationMap::from_net(&po.span_right),
        apex: CmcPresentation::from_net(&po.apex),
        left: PresentationMap::from_net(&po.left),
        right: PresentationMap::from_net(&po.right),
    }
}

impl Instance for CmcInstance {
    type Object = CmcPresentation;
    type Morphism = PresentationMap;

    fn dom(m: &PresentationMap) -> &CmcPresentation {
        &m.dom
    }

    fn cod(m: &PresentationMap) -> &CmcPresentation {
        &m.cod
    }

    fn identity(x: &CmcPresentation) -> PresentationMap {
        PresentationMap {
            dom: x.clone(),
            cod: x.clone(),
            objects: FinFunction::identity(x.object_generators),
            generators: FinFunction::identity(x.morphism_generators.len()),
        }
    }

    fn compose(g: &PresentationMap, f: &PresentationMap) -> Result<PresentationMap> {
        Ok(PresentationMap::from_net(&PetriInstance::compose(&g.to_net(), &f.to_net())?))
    }

    fn initial() -> CmcPresentation {
        CmcPresentation::discrete(0)
    }

    fn from_initial(x: &CmcPresentation) -> PresentationMap {
        PresentationMap::from_net(&PetriInstance::from_initial(&x.to_net()))
    }

    fn coproduct(x: &CmcPresentation, y: &CmcPresentation) -> Coproduct<Self> {
        let c = PetriInstance::coproduct(&x.to_net(), &y.to_net());
        Coproduct {
            sum: CmcPresentation::from_net(&c.sum),
            left: PresentationMap::from_net(&c.left),
            right: PresentationMap::from_net(&c.right),
        }
    }

    fn copair(f: &PresentationMap, g: &PresentationMap) -> Result<PresentationMap> {
        Ok(PresentationMap::from_net(&PetriInstance::copair(&f.to_net(), &g.to_net())?))
    }

    fn pushout(f: &PresentationMap, g: &PresentationMap) -> Result<Pushout<Self>> {
        Ok(from_pushout(PetriInstance::pushout(&f.to_net(), &g.to_net())?))
    }

    fn mediate(po: &Pushout<Self>, via_left: &PresentationMap, via_right: &PresentationMap) -> Result<PresentationMap> {
        let net_po = Pushout::<PetriInstance> {
            span_left: po.span_left.to_net(),
            span_right: po.span_right.to_net(),
            apex: po.apex.to_net(),
            left: po.left.to_net(),
            right: po.right.to_net(),
        };
        Ok(PresentationMap::from_net(&PetriInstance::mediate(
            &net_po,
            &via_left.to_net(),
            &via_right.to_net(),
        )?))
    }

    fn free(a: FinSet) -> CmcPresentation {
        CmcPresentation::discrete(a)
    }

    fn free_map(f: &FinFunction) -> PresentationMap {
        PresentationMap::from_net(&PetriInstance::free_map(f))
    }

    fn underlying(x: &CmcPresentation) -> FinSet {
        x.object_generators
    }

    fn underlying_map(m: &PresentationMap) -> FinFunction {
        m.objects.clone()
    }

    fn transpose(f: &FinFunction, x: &CmcPresentation) -> Result<PresentationMap> {
        Ok(PresentationMap::from_net(&PetriInstance::transpose(f, &x.to_net())?))
    }

    fn inverse(m: &PresentationMap) -> Option<PresentationMap> {
        PetriInstance::inverse(&m.to_net()).map(|i| PresentationMap::from_net(&i))
    }

    fn find_isomorphism(x: &CmcPresentation, y: &CmcPresentation, pins: &[(usize, usize)]) -> Option<PresentationMap> {
        PetriInstance::find_isomorphism(&x.to_net(), &y.to_net(), pins).map(|i| PresentationMap::from_net(&i))
    }

    fn canonical_renumbering(x: &CmcPresentation, seeds: &[usize]) -> PresentationMap {
        PresentationMap::from_net(&PetriInstance::canonical_renumbering(&x.to_net(), seeds))
    }
}
