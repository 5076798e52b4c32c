//! Petri nets `s, t: T -> N[S]`, optionally with positive rates on transitions.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;

use super::net::{Edge, Incidence, Label, Net, NetInstance, NetMorphism};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};

/// A finite multiset over `0..base`, stored as dense counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset {
    base: FinSet,
    counts: Vec<usize>,
}

impl Multiset {
    pub fn new(base: impl Into<FinSet>, counts: Vec<usize>) -> Result<Self> {
        let base = base.into();
        if counts.len() != base.size {
            return Err(Error::InvalidObject(format!(
                "multiset over {} has {} counts",
                base.size,
                counts.len()
            )));
        }
        Ok(Multiset { base, counts })
    }

    pub fn zero(base: impl Into<FinSet>) -> Self {
        let base = base.into();
        Multiset {
            base,
            counts: vec![0; base.size],
        }
    }

    /// From `(element, count)` pairs; repeated elements accumulate.
    pub fn from_pairs(base: impl Into<FinSet>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Multiset::zero(base);
        for &(i, k) in pairs {
            if i >= m.base.size {
                return Err(Error::InvalidObject(format!(
                    "element {i} outside 0..{}",
                    m.base.size
                )));
            }
            m.counts[i] += k;
        }
        Ok(m)
    }

    pub fn base(&self) -> FinSet {
        self.base
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts[i]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Elements with nonzero count, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c))
    }

    pub fn add(&self, other: &Multiset) -> Result<Multiset> {
        self.same_base(other)?;
        Ok(Multiset {
            base: self.base,
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
        })
    }

    /// `self - other`, if `other <= self` pointwise.
    pub fn checked_sub(&self, other: &Multiset) -> Option<Multiset> {
        if self.base != other.base {
            return None;
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Multiset { base: self.base, counts })
    }

    pub fn le(&self, other: &Multiset) -> bool {
        self.base == other.base && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// `N[g]`: counts summed over the fibers of `g`.
    pub fn pushforward(&self, g: &FinFunction) -> Result<Multiset> {
        if g.dom() != self.base {
            return Err(Error::MismatchedBoundary(format!(
                "multiset over {} pushed along a map from {}",
                self.base,
                g.dom()
            )));
        }
        let mut counts = vec![0; g.cod().size];
        for (i, &c) in self.counts.iter().enumerate() {
            counts[g.apply(i)] += c;
        }
        Ok(Multiset { base: g.cod(), counts })
    }

    /// Block sum over `base + other.base`.
    pub fn concat(&self, other: &Multiset) -> Multiset {
        let mut counts = self.counts.clone();
        counts.extend_from_slice(&other.counts);
        Multiset {
            base: FinSet::new(counts.len()),
            counts,
        }
    }

    pub(crate) fn relabel_into(&self, nodes: usize, f: &dyn Fn(usize) -> usize) -> Multiset {
        let mut counts = vec![0; nodes];
        for (i, c) in self.support() {
            counts[f(i)] += c;
        }
        Multiset {
            base: FinSet::new(nodes),
            counts,
        }
    }

    fn same_base(&self, other: &Multiset) -> Result<()> {
        if self.base != other.base {
            return Err(Error::MismatchedBoundary(format!(
                "multisets over {} and {}",
                self.base, other.base
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Multiset {
    /// `2·0 + 1·2`, or `0` for the empty multiset.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Input and output multisets of a transition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arcs {
    pub input: Multiset,
    pub output: Multiset,
}

impl Incidence for Arcs {
    fn fits(&self, nodes: usize) -> bool {
        self.input.base.size == nodes && self.output.base.size == nodes
    }

    fn relabel(&self, nodes: usize, f: &dyn Fn(usize) -> usize) -> Self {
        Arcs {
            input: self.input.relabel_into(nodes, f),
            output: self.output.relabel_into(nodes, f),
        }
    }

    fn attachments(&self) -> Vec<(usize, u8, usize)> {
        self.input
            .support()
            .map(|(i, c)| (i, 0, c))
            .chain(self.output.support().map(|(i, c)| (i, 1, c)))
            .collect()
    }
}

/// A positive exact rate constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rate(BigRational);

impl Rate {
    pub fn new(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonpositiveRate(r.to_string()));
        }
        Ok(Rate(r))
    }

    pub fn one() -> Self {
        Rate(BigRational::from_integer(1.into()))
    }

    pub fn from_integer(n: i64) -> Result<Self> {
        Rate::new(BigRational::from_integer(n.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl FromStr for Rate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = crate::rational::parse(s)
            .ok_or_else(|| Error::NonpositiveRate(format!("{s:?} is not a rational")))?;
        Rate::new(r)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Label for Rate {
    fn conflict(a: &Self, b: &Self) -> Error {
        Error::RateConflict(format!("{a} vs {b}"))
    }
}

pub type PetriNet = Net<Arcs, ()>;
pub type PetriMorphism = NetMorphism<Arcs, ()>;
pub type PetriInstance = NetInstance<Arcs, ()>;

pub type PetriWithRates = Net<Arcs, Rate>;
pub type RatesMorphism = NetMorphism<Arcs, Rate>;
pub type PetriRatesInstance = NetInstance<Arcs, Rate>;

/// A transition written sparsely as `(place, count)` lists.
pub type SparseTransition = (Vec<(usize, usize)>, Vec<(usize, usize)>);

impl<L: Label> Net<Arcs, L> {
    pub fn places(&self) -> FinSet {
        self.nodes()
    }

    pub fn transitions(&self) -> FinSet {
        self.edge_set()
    }

    pub fn source(&self, t: usize) -> &Multiset {
        &self.edge(t).incidence.input
    }

    pub fn target(&self, t: usize) -> &Multiset {
        &self.edge(t).incidence.output
    }

    pub fn from_sparse(places: impl Into<FinSet>, transitions: Vec<(SparseTransition, L)>) -> Result<Self> {
        let places = places.into();
        let edges = transitions
            .into_iter()
            .map(|((input, output), label)| {
                Ok(Edge {
                    incidence: Arcs {
                        input: Multiset::from_pairs(places, &input)?,
                        output: Multiset::from_pairs(places, &output)?,
                    },
                    label,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Net::new(places, edges)
    }

    /// The net morphism given by its transition and place functions.
    pub fn petri_map(
        dom: &Self,
        cod: &Self,
        transitions: Vec<usize>,
        places: Vec<usize>,
    ) -> Result<NetMorphism<Arcs, L>> {
        NetMorphism::new(
            dom.clone(),
            cod.clone(),
            FinFunction::new(cod.edge_set(), transitions)?,
            FinFunction::new(cod.nodes(), places)?,
        )
    }
}

impl PetriNet {
    pub fn petri(places: impl Into<FinSet>, transitions: Vec<SparseTransition>) -> Result<Self> {
        Net::from_sparse(places, transitions.into_iter().map(|t| (t, ())).collect())
    }

    pub fn with_rates(&self, rates: Vec<Rate>) -> Result<PetriWithRates> {
        if rates.len() != self.edges().len() {
            return Err(Error::InvalidObject(format!(
                "{} rates for {} transitions",
                rates.len(),
                self.edges().len()
            )));
        }
        let edges = self
            .edges()
            .iter()
            .zip(rates)
            .map(|(e, r)| Edge {
                incidence: e.incidence.clone(),
                label: r,
            })
            .collect();
        Net::new(self.nodes(), edges)
    }
}

impl PetriWithRates {
    pub fn rates(&self) -> Vec<Rate> {
        self.labels().cloned().collect()
    }

    pub fn forget_rates(&self) -> PetriNet {
        self.map_labels(|_| ())
    }
}
