//! Skeletal finite sets and the functions between them.
//!
//! A [`FinSet`] of size `n` has the elements `0..n`. Because every set is
//! canonical, the colimits computed here are literal functions: the chosen
//! coproduct of `a` and `b` puts `b` after `a`, and the chosen pushout
//! numbers its classes by their least member.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinSet {
    pub size: usize,
}

impl FinSet {
    pub const EMPTY: FinSet = FinSet { size: 0 };

    pub fn new(size: usize) -> Self {
        FinSet { size }
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size
    }
}

impl From<usize> for FinSet {
    fn from(size: usize) -> Self {
        FinSet { size }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size)
    }
}

/// A total function `dom -> cod`, stored as its table of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

impl FinFunction {
    pub fn new(cod: impl Into<FinSet>, map: Vec<usize>) -> Result<Self> {
        let cod = cod.into();
        if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= cod.size) {
            return Err(Error::InvalidMorphism(format!(
                "entry {i} maps to {v}, outside codomain of size {}",
                cod.size
            )));
        }
        Ok(FinFunction {
            dom: FinSet::new(map.len()),
            cod,
            map,
        })
    }

    pub fn identity(a: impl Into<FinSet>) -> Self {
        let a = a.into();
        FinFunction {
            dom: a,
            cod: a,
            map: a.elements().collect(),
        }
    }

    /// The unique map out of the initial object.
    pub fn initial(cod: impl Into<FinSet>) -> Self {
        FinFunction {
            dom: FinSet::EMPTY,
            cod: cod.into(),
            map: Vec::new(),
        }
    }

    /// The unique map into the one-element set (or into anything, from empty).
    pub fn constant(dom: impl Into<FinSet>, cod: impl Into<FinSet>, value: usize) -> Result<Self> {
        FinFunction::new(cod, vec![value; dom.into().size])
    }

    /// The fold map `a + a -> a`.
    pub fn fold(a: impl Into<FinSet>) -> Self {
        let id = FinFunction::identity(a);
        copair(&id, &id).expect("identity maps share a codomain")
    }

    /// The block swap `a + b -> b + a`.
    pub fn swap(a: impl Into<FinSet>, b: impl Into<FinSet>) -> Self {
        let (a, b) = (a.into(), b.into());
        let ba = coproduct(b, a);
        copair(&ba.right, &ba.left).expect("injections share a codomain")
    }

    pub fn dom(&self) -> FinSet {
        self.dom
    }

    pub fn cod(&self) -> FinSet {
        self.cod
    }

    pub(crate) fn dom_ref(&self) -> &FinSet {
        &self.dom
    }

    pub(crate) fn cod_ref(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self` followed by `g`, i.e. `g ∘ self`.
    pub fn then(&self, g: &FinFunction) -> Result<FinFunction> {
        compose(g, self)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.dom.size];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Some(FinFunction {
            dom: self.cod,
            cod: self.dom,
            map: inv,
        })
    }

    /// Elements of the domain sent to `v`.
    pub fn fiber(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(move |(_, &w)| w == v)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} -> {}", self.map, self.dom, self.cod)
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
    if f.cod != g.dom {
        return Err(Error::MismatchedBoundary(format!(
            "cannot compose {} after {}: codomain {} differs from domain {}",
            g, f, f.cod, g.dom
        )));
    }
    Ok(FinFunction {
        dom: f.dom,
        cod: g.cod,
        map: f.map.iter().map(|&i| g.map[i]).collect(),
    })
}

/// The chosen coproduct with its two injections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub sum: FinSet,
    pub left: FinFunction,
    pub right: FinFunction,
}

pub fn coproduct(a: impl Into<FinSet>, b: impl Into<FinSet>) -> Coproduct {
    let (a, b) = (a.into(), b.into());
    let sum = FinSet::new(a.size + b.size);
    Coproduct {
        sum,
        left: FinFunction {
            dom: a,
            cod: sum,
            map: a.elements().collect(),
        },
        right: FinFunction {
            dom: b,
            cod: sum,
            map: b.elements().map(|i| i + a.size).collect(),
        },
    }
}

/// The mediating map `a + b -> c` out of the chosen coproduct.
pub fn copair(f: &FinFunction, g: &FinFunction) -> Result<FinFunction> {
    if f.cod != g.cod {
        return Err(Error::MismatchedBoundary(format!(
            "copair needs a common codomain, got {} and {}",
            f.cod, g.cod
        )));
    }
    let mut map = f.map.clone();
    map.extend_from_slice(&g.map);
    Ok(FinFunction {
        dom: FinSet::new(map.len()),
        cod: f.cod,
        map,
    })
}

/// `f + g : a + b -> c + d`.
pub fn tensor(f: &FinFunction, g: &FinFunction) -> FinFunction {
    let offset = f.cod.size;
    let mut map = f.map.clone();
    map.extend(g.map.iter().map(|&v| v + offset));
    FinFunction {
        dom: FinSet::new(f.dom.size + g.dom.size),
        cod: FinSet::new(f.cod.size + g.cod.size),
        map,
    }
}

/// Union-find over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    merges: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            merges: 0,
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Returns `true` if two distinct classes were merged.
    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let (mut ri, mut rj) = (self.find(i), self.find(j));
        if ri == rj {
            return false;
        }
        if self.size[ri] < self.size[rj] {
            std::mem::swap(&mut ri, &mut rj);
        }
        self.parent[rj] = ri;
        self.size[ri] += self.size[rj];
        self.merges += 1;
        true
    }

    pub fn merges(&self) -> usize {
        self.merges
    }

    /// Class index of every element, classes numbered by ascending least member.
    pub fn quotient(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut class_of_root = vec![usize::MAX; n];
        let mut classes = 0;
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let r = self.find(i);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes;
                classes += 1;
            }
            labels.push(class_of_root[r]);
        }
        (classes, labels)
    }
}

/// The chosen pushout of a span `b <-f- a -g-> c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub apex: FinSet,
    pub left: FinFunction,
    pub right: FinFunction,
    /// Number of successful unions performed while gluing.
    pub merges: usize,
}

pub fn pushout(f: &FinFunction, g: &FinFunction) -> Result<Pushout> {
    if f.dom != g.dom {
        return Err(Error::MismatchedBoundary(format!(
            "pushout needs a span with common domain, got {} and {}",
            f.dom, g.dom
        )));
    }
    let (b, c) = (f.cod.size, g.cod.size);
    let mut sets = DisjointSets::new(b + c);
    for x in f.dom.elements() {
        sets.union(f.map[x], b + g.map[x]);
    }
    let (classes, labels) = sets.quotient();
    let apex = FinSet::new(classes);
    Ok(Pushout {
        apex,
        left: FinFunction {
            dom: f.cod,
            cod: apex,
            map: labels[..b].to_vec(),
        },
        right: FinFunction {
            dom: g.cod,
            cod: apex,
            map: labels[b..].to_vec(),
        },
        merges: sets.merges(),
    })
}

impl Pushout {
    /// The unique `u` with `u ∘ left = via_left` and `u ∘ right = via_right`.
    pub fn mediator(&self, via_left: &FinFunction, via_right: &FinFunction) -> Result<FinFunction> {
        if via_left.dom != self.left.dom || via_right.dom != self.right.dom {
            return Err(Error::MismatchedBoundary(
                "cocone maps must start at the pushout's feet".into(),
            ));
        }
        if via_left.cod != via_right.cod {
            return Err(Error::MismatchedBoundary(format!(
                "cocone maps land in different sets {} and {}",
                via_left.cod, via_right.cod
            )));
        }
        mediate_quotient(
            self.apex,
            [(&self.left, via_left), (&self.right, via_right)],
        )
    }
}

/// Solve `u ∘ leg = target` for every pair, where the legs are jointly surjective.
pub(crate) fn mediate_quotient<'a>(
    apex: FinSet,
    pairs: impl IntoIterator<Item = (&'a FinFunction, &'a FinFunction)>,
) -> Result<FinFunction> {
    let mut cod = None;
    let mut u: Vec<Option<usize>> = vec![None; apex.size];
    for (leg, target) in pairs {
        cod = Some(target.cod);
        for (i, &k) in leg.map.iter().enumerate() {
            let v = target.map[i];
            match u[k] {
                None => u[k] = Some(v),
                Some(w) if w == v => {}
                Some(w) => {
                    return Err(Error::NonCommutingCocone(format!(
                        "class {k} would be sent to both {w} and {v}"
                    )))
                }
            }
        }
    }
    let cod = cod.unwrap_or(FinSet::EMPTY);
    let map = u
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| Error::InvalidMorphism(format!("class {k} is not hit by any leg")))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunction::new(cod, map)
}
