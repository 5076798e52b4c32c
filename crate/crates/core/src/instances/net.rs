//! Generic "nodes plus labelled edges" structures.
//!
//! Graphs, labelled graphs, and Petri nets (with or without rates) all
//! consist of a node set together with a list of edges, where each edge
//! carries some incidence data over the nodes and a label. Morphisms are a
//! pair of functions (edges, nodes) transporting incidence and preserving
//! labels. Colimits in all these categories are computed pointwise, so one
//! implementation of [`Instance`] serves all of them.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Debug;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use super::{Coproduct, Instance, Pushout};
use crate::error::{Error, Result};
use crate::finset::{self, mediate_quotient, FinFunction, FinSet};

/// How an edge attaches to the nodes.
pub trait Incidence: Clone + Eq + Ord + Hash + Debug + 'static {
    /// Every referenced node is below `nodes`.
    fn fits(&self, nodes: usize) -> bool;

    /// Transport along a node map into a set of size `nodes`. `f` is only
    /// called on nodes the edge touches.
    fn relabel(&self, nodes: usize, f: &dyn Fn(usize) -> usize) -> Self;

    /// `(node, role, multiplicity)` for every attachment.
    fn attachments(&self) -> Vec<(usize, u8, usize)>;

    fn pushforward(&self, nodes: &FinFunction) -> Self {
        self.relabel(nodes.cod().size, &|v| nodes.apply(v))
    }
}

/// Edge labels. Merging two edges with different labels is a conflict.
pub trait Label: Clone + Eq + Ord + Hash + Debug + 'static {
    fn conflict(a: &Self, b: &Self) -> Error {
        Error::LabelConflict(format!("{a:?} vs {b:?}"))
    }
}

impl Label for () {}
impl Label for String {}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge<I, Lab> {
    pub incidence: I,
    pub label: Lab,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Net<I, Lab> {
    nodes: FinSet,
    edges: Vec<Edge<I, Lab>>,
}

impl<I: Incidence, Lab: Label> Net<I, Lab> {
    pub fn new(nodes: impl Into<FinSet>, edges: Vec<Edge<I, Lab>>) -> Result<Self> {
        let nodes = nodes.into();
        if let Some(i) = edges.iter().position(|e| !e.incidence.fits(nodes.size)) {
            return Err(Error::InvalidObject(format!(
                "edge {i} refers to a node outside 0..{}",
                nodes.size
            )));
        }
        Ok(Net { nodes, edges })
    }

    /// `L(a)`: the nodes `a` and no edges.
    pub fn discrete(nodes: impl Into<FinSet>) -> Self {
        Net {
            nodes: nodes.into(),
            edges: Vec::new(),
        }
    }

    pub fn nodes(&self) -> FinSet {
        self.nodes
    }

    pub fn edge_set(&self) -> FinSet {
        FinSet::new(self.edges.len())
    }

    pub fn edges(&self) -> &[Edge<I, Lab>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge<I, Lab> {
        &self.edges[e]
    }

    pub fn labels(&self) -> impl Iterator<Item = &Lab> {
        self.edges.iter().map(|e| &e.label)
    }

    /// Replace every label using `f`, keeping incidence.
    pub fn map_labels<L2: Label>(&self, f: impl Fn(&Lab) -> L2) -> Net<I, L2> {
        Net {
            nodes: self.nodes,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    incidence: e.incidence.clone(),
                    label: f(&e.label),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetMorphism<I, Lab> {
    dom: Net<I, Lab>,
    cod: Net<I, Lab>,
    edges: FinFunction,
    nodes: FinFunction,
}

impl<I: Incidence, Lab: Label> NetMorphism<I, Lab> {
    /// Checks that both functions have the right shape, that incidence is
    /// transported, and that labels are preserved.
    pub fn new(
        dom: Net<I, Lab>,
        cod: Net<I, Lab>,
        edges: FinFunction,
        nodes: FinFunction,
    ) -> Result<Self> {
        let m = NetMorphism::new_unchecked(dom, cod, edges, nodes);
        m.validate()?;
        Ok(m)
    }

    /// Builds the morphism without checking that the squares commute.
    /// Colimit operations on such morphisms report conflicts instead of
    /// assuming well-formedness.
    pub fn new_unchecked(
        dom: Net<I, Lab>,
        cod: Net<I, Lab>,
        edges: FinFunction,
        nodes: FinFunction,
    ) -> Self {
        NetMorphism {
            dom,
            cod,
            edges,
            nodes,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.dom() != self.dom.nodes || self.nodes.cod() != self.cod.nodes {
            return Err(Error::InvalidMorphism(format!(
                "node map {} does not run {} -> {}",
                self.nodes, self.dom.nodes, self.cod.nodes
            )));
        }
        if self.edges.dom() != self.dom.edge_set() || self.edges.cod() != self.cod.edge_set() {
            return Err(Error::InvalidMorphism(format!(
                "edge map {} does not run {} -> {}",
                self.edges,
                self.dom.edges.len(),
                self.cod.edges.len()
            )));
        }
        for (e, edge) in self.dom.edges.iter().enumerate() {
            let image = &self.cod.edges[self.edges.apply(e)];
            if image.incidence != edge.incidence.pushforward(&self.nodes) {
                return Err(Error::InvalidMorphism(format!(
                    "edge {e} is not sent to an edge with the transported incidence"
                )));
            }
            if image.label != edge.label {
                return Err(Error::InvalidMorphism(format!(
                    "edge {e} labelled {:?} is sent to an edge labelled {:?}",
                    edge.label, image.label
                )));
            }
        }
        Ok(())
    }

    pub fn dom(&self) -> &Net<I, Lab> {
        &self.dom
    }

    pub fn cod(&self) -> &Net<I, Lab> {
        &self.cod
    }

    pub fn edge_map(&self) -> &FinFunction {
        &self.edges
    }

    pub fn node_map(&self) -> &FinFunction {
        &self.nodes
    }
}

/// The category of `Net<I, Lab>` with `L` sending a set to the discrete net.
pub struct NetInstance<I, Lab>(PhantomData<fn() -> (I, Lab)>);

impl<I, Lab> NetInstance<I, Lab> {
    fn shifted(edges: &[Edge<I, Lab>], nodes: usize, offset: usize) -> Vec<Edge<I, Lab>>
    where
        I: Incidence,
        Lab: Label,
    {
        edges
            .iter()
            .map(|e| Edge {
                incidence: e.incidence.relabel(nodes, &|v| v + offset),
                label: e.label.clone(),
            })
            .collect()
    }
}

impl<I: Incidence, Lab: Label> Instance for NetInstance<I, Lab> {
    type Object = Net<I, Lab>;
    type Morphism = NetMorphism<I, Lab>;

    fn dom(m: &Self::Morphism) -> &Self::Object {
        &m.dom
    }

    fn cod(m: &Self::Morphism) -> &Self::Object {
        &m.cod
    }

    fn identity(x: &Self::Object) -> Self::Morphism {
        NetMorphism {
            dom: x.clone(),
            cod: x.clone(),
            edges: FinFunction::identity(x.edge_set()),
            nodes: FinFunction::identity(x.nodes),
        }
    }

    fn compose(g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism> {
        if f.cod != g.dom {
            return Err(Error::MismatchedBoundary(
                "codomain of the first morphism differs from the domain of the second".into(),
            ));
        }
        Ok(NetMorphism {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            edges: finset::compose(&g.edges, &f.edges)?,
            nodes: finset::compose(&g.nodes, &f.nodes)?,
        })
    }

    fn initial() -> Self::Object {
        Net::discrete(0)
    }

    fn from_initial(x: &Self::Object) -> Self::Morphism {
        NetMorphism {
            dom: Self::initial(),
            cod: x.clone(),
            edges: FinFunction::initial(x.edge_set()),
            nodes: FinFunction::initial(x.nodes),
        }
    }

    fn coproduct(x: &Self::Object, y: &Self::Object) -> Coproduct<Self> {
        let nodes = x.nodes.size + y.nodes.size;
        let mut edges = Self::shifted(&x.edges, nodes, 0);
        edges.extend(Self::shifted(&y.edges, nodes, x.nodes.size));
        let sum = Net {
            nodes: FinSet::new(nodes),
            edges,
        };
        let on_nodes = finset::coproduct(x.nodes, y.nodes);
        let on_edges = finset::coproduct(x.edge_set(), y.edge_set());
        Coproduct {
            left: NetMorphism {
                dom: x.clone(),
                cod: sum.clone(),
                edges: on_edges.left,
                nodes: on_nodes.left,
            },
            right: NetMorphism {
                dom: y.clone(),
                cod: sum.clone(),
                edges: on_edges.right,
                nodes: on_nodes.right,
            },
            sum,
        }
    }

    fn copair(f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        if f.cod != g.cod {
            return Err(Error::MismatchedBoundary(
                "copair needs morphisms with a common codomain".into(),
            ));
        }
        let sum = Self::coproduct(&f.dom, &g.dom).sum;
        NetMorphism::new(
            sum,
            f.cod.clone(),
            finset::copair(&f.edges, &g.edges)?,
            finset::copair(&f.nodes, &g.nodes)?,
        )
    }

    fn pushout(f: &Self::Morphism, g: &Self::Morphism) -> Result<Pushout<Self>> {
        if f.dom != g.dom {
            return Err(Error::MismatchedBoundary(
                "pushout needs a span with a common domain".into(),
            ));
        }
        let (b, c) = (&f.cod, &g.cod);
        let on_nodes = finset::pushout(&f.nodes, &g.nodes)?;
        let on_edges = finset::pushout(&f.edges, &g.edges)?;
        let mut apex_edges: Vec<Option<Edge<I, Lab>>> = vec![None; on_edges.apex.size];
        let sides = [
            (b, &on_edges.left, &on_nodes.left),
            (c, &on_edges.right, &on_nodes.right),
        ];
        for (side, edge_leg, node_leg) in sides {
            for (e, edge) in side.edges.iter().enumerate() {
                let candidate = Edge {
                    incidence: edge.incidence.pushforward(node_leg),
                    label: edge.label.clone(),
                };
                let slot = &mut apex_edges[edge_leg.apply(e)];
                match slot {
                    None => *slot = Some(candidate),
                    Some(existing) => {
                        if existing.incidence != candidate.incidence {
                            return Err(Error::InvalidMorphism(
                                "glued edges have different incidence; span legs are not morphisms".into(),
                            ));
                        }
                        if existing.label != candidate.label {
                            return Err(Lab::conflict(&existing.label, &candidate.label));
                        }
                    }
                }
            }
        }
        let apex = Net {
            nodes: on_nodes.apex,
            edges: apex_edges
                .into_iter()
                .map(|e| e.expect("pushout legs are jointly surjective"))
                .collect(),
        };
        Ok(Pushout {
            span_left: f.clone(),
            span_right: g.clone(),
            left: NetMorphism {
                dom: b.clone(),
                cod: apex.clone(),
                edges: on_edges.left,
                nodes: on_nodes.left,
            },
            right: NetMorphism {
                dom: c.clone(),
                cod: apex.clone(),
                edges: on_edges.right,
                nodes: on_nodes.right,
            },
            apex,
        })
    }

    fn mediate(
        po: &Pushout<Self>,
        via_left: &Self::Morphism,
        via_right: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        if via_left.dom != po.left.dom || via_right.dom != po.right.dom {
            return Err(Error::MismatchedBoundary(
                "cocone maps must start at the pushout's feet".into(),
            ));
        }
        if via_left.cod != via_right.cod {
            return Err(Error::MismatchedBoundary(
                "cocone maps land in different objects".into(),
            ));
        }
        let nodes = mediate_quotient(
            po.apex.nodes,
            [
                (&po.left.nodes, &via_left.nodes),
                (&po.right.nodes, &via_right.nodes),
            ],
        )?;
        let edges = mediate_quotient(
            po.apex.edge_set(),
            [
                (&po.left.edges, &via_left.edges),
                (&po.right.edges, &via_right.edges),
            ],
        )?;
        NetMorphism::new(po.apex.clone(), via_left.cod.clone(), edges, nodes)
    }

    fn free(a: FinSet) -> Self::Object {
        Net::discrete(a)
    }

    fn free_map(f: &FinFunction) -> Self::Morphism {
        NetMorphism {
            dom: Net::discrete(f.dom()),
            cod: Net::discrete(f.cod()),
            edges: FinFunction::initial(0),
            nodes: f.clone(),
        }
    }

    fn underlying(x: &Self::Object) -> FinSet {
        x.nodes
    }

    fn underlying_map(m: &Self::Morphism) -> FinFunction {
        m.nodes.clone()
    }

    fn transpose(f: &FinFunction, x: &Self::Object) -> Result<Self::Morphism> {
        NetMorphism::new(Net::discrete(f.dom()), x.clone(), FinFunction::initial(x.edge_set()), f.clone())
    }

    fn inverse(m: &Self::Morphism) -> Option<Self::Morphism> {
        NetMorphism::new(
            m.cod.clone(),
            m.dom.clone(),
            m.edges.inverse()?,
            m.nodes.inverse()?,
        )
        .ok()
    }

    fn find_isomorphism(
        x: &Self::Object,
        y: &Self::Object,
        pins: &[(usize, usize)],
    ) -> Option<Self::Morphism> {
        IsoSearch::new(x, y)?.run(pins)
    }

    fn canonical_renumbering(x: &Self::Object, seeds: &[usize]) -> Self::Morphism {
        let n = x.nodes.size;
        let mut node_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, edge) in x.edges.iter().enumerate() {
            for (v, _, _) in edge.incidence.attachments() {
                node_edges[v].push(e);
            }
        }
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        let mut visit = |v: usize, new_index: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            if new_index[v] == usize::MAX {
                new_index[v] = next;
                next += 1;
                queue.push_back(v);
            }
        };
        for &s in seeds {
            visit(s, &mut new_index, &mut queue);
        }
        for start in 0..=n {
            while let Some(v) = queue.pop_front() {
                for &e in &node_edges[v] {
                    for (w, _, _) in x.edges[e].incidence.attachments() {
                        visit(w, &mut new_index, &mut queue);
                    }
                }
            }
            if start < n {
                visit(start, &mut new_index, &mut queue);
            }
        }
        let nodes = FinFunction::new(x.nodes, new_index).expect("renumbering is a permutation");
        let moved: Vec<Edge<I, Lab>> = x
            .edges
            .iter()
            .map(|e| Edge {
                incidence: e.incidence.pushforward(&nodes),
                label: e.label.clone(),
            })
            .collect();
        let mut order: Vec<usize> = (0..moved.len()).collect();
        order.sort_by(|&a, &b| moved[a].cmp(&moved[b]).then(a.cmp(&b)));
        let mut edge_index = vec![0; moved.len()];
        for (new, &old) in order.iter().enumerate() {
            edge_index[old] = new;
        }
        let cod = Net {
            nodes: x.nodes,
            edges: order.iter().map(|&old| moved[old].clone()).collect(),
        };
        NetMorphism::new(
            x.clone(),
            cod,
            FinFunction::new(x.edge_set(), edge_index).expect("edge order is a permutation"),
            nodes,
        )
        .expect("renumbering is a morphism")
    }
}

fn label_hash<Lab: Hash>(l: &Lab) -> u64 {
    let mut h = DefaultHasher::new();
    l.hash(&mut h);
    h.finish()
}

/// Per-node invariant: sorted `(role, multiplicity, label hash)` triples.
fn node_signatures<I: Incidence, Lab: Label>(x: &Net<I, Lab>) -> Vec<Vec<(u8, usize, u64)>> {
    let mut sig = vec![Vec::new(); x.nodes.size];
    for edge in &x.edges {
        let lh = label_hash(&edge.label);
        for (v, role, mult) in edge.incidence.attachments() {
            sig[v].push((role, mult, lh));
        }
    }
    for s in &mut sig {
        s.sort_unstable();
    }
    sig
}

/// Backtracking search for a node bijection, extended to edges afterwards.
///
/// Candidates are pruned by node signature; after each assignment the edges
/// that just became fully assigned on both sides must match as multisets.
struct IsoSearch<'a, I, Lab> {
    x: &'a Net<I, Lab>,
    y: &'a Net<I, Lab>,
    sig_x: Vec<Vec<(u8, usize, u64)>>,
    sig_y: Vec<Vec<(u8, usize, u64)>>,
    edges_at_x: Vec<Vec<usize>>,
    edges_at_y: Vec<Vec<usize>>,
    touched_x: Vec<Vec<usize>>,
    touched_y: Vec<Vec<usize>>,
    phi: Vec<usize>,
    used: Vec<bool>,
}

fn incidence_lists<I: Incidence, Lab>(x: &Net<I, Lab>) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut at = vec![Vec::new(); x.nodes.size];
    let mut touched = Vec::with_capacity(x.edges.len());
    for (e, edge) in x.edges.iter().enumerate() {
        let mut vs: Vec<usize> = edge.incidence.attachments().into_iter().map(|a| a.0).collect();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            at[v].push(e);
        }
        touched.push(vs);
    }
    (at, touched)
}

impl<'a, I: Incidence, Lab: Label> IsoSearch<'a, I, Lab> {
    fn new(x: &'a Net<I, Lab>, y: &'a Net<I, Lab>) -> Option<Self> {
        if x.nodes != y.nodes || x.edges.len() != y.edges.len() {
            return None;
        }
        let sig_x = node_signatures(x);
        let sig_y = node_signatures(y);
        let mut sx = sig_x.clone();
        let mut sy = sig_y.clone();
        sx.sort();
        sy.sort();
        if sx != sy {
            return None;
        }
        let (edges_at_x, touched_x) = incidence_lists(x);
        let (edges_at_y, touched_y) = incidence_lists(y);
        // Edges touching no node never get checked during the search.
        let floating = |net: &Net<I, Lab>, touched: &[Vec<usize>]| {
            let mut v: Vec<&Edge<I, Lab>> = net
                .edges
                .iter()
                .zip(touched)
                .filter(|(_, t)| t.is_empty())
                .map(|(e, _)| e)
                .collect();
            v.sort();
            v.into_iter().cloned().collect::<Vec<_>>()
        };
        if floating(x, &touched_x) != floating(y, &touched_y) {
            return None;
        }
        let n = x.nodes.size;
        Some(IsoSearch {
            x,
            y,
            sig_x,
            sig_y,
            edges_at_x,
            edges_at_y,
            touched_x,
            touched_y,
            phi: vec![usize::MAX; n],
            used: vec![false; n],
        })
    }

    fn run(mut self, pins: &[(usize, usize)]) -> Option<NetMorphism<I, Lab>> {
        let n = self.x.nodes.size;
        let mut forced: Vec<Option<usize>> = vec![None; n];
        let mut order = Vec::with_capacity(n);
        for &(p, q) in pins {
            if p >= n || q >= n {
                return None;
            }
            match forced[p] {
                None => {
                    forced[p] = Some(q);
                    order.push(p);
                }
                Some(q0) if q0 == q => {}
                Some(_) => return None,
            }
        }
        let mut targets: Vec<usize> = forced.iter().flatten().copied().collect();
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        // Remaining nodes in breadth-first order from the pinned ones.
        let mut seen = vec![false; n];
        for &v in &order {
            seen[v] = true;
        }
        let mut head = 0;
        for start in 0..=n {
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &e in &self.edges_at_x[v] {
                    for &w in &self.touched_x[e] {
                        if !seen[w] {
                            seen[w] = true;
                            order.push(w);
                        }
                    }
                }
            }
            if start < n && !seen[start] {
                seen[start] = true;
                order.push(start);
            }
        }
        if !self.extend(&order, &forced, 0) {
            return None;
        }
        self.finish()
    }

    fn extend(&mut self, order: &[usize], forced: &[Option<usize>], depth: usize) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        let candidates: Vec<usize> = match forced[v] {
            Some(q) => vec![q],
            None => (0..self.y.nodes.size).filter(|&q| !self.used[q]).collect(),
        };
        for w in candidates {
            if self.used[w] || self.sig_x[v] != self.sig_y[w] {
                continue;
            }
            self.phi[v] = w;
            self.used[w] = true;
            if self.completed_edges_match(v, w) && self.extend(order, forced, depth + 1) {
                return true;
            }
            self.phi[v] = usize::MAX;
            self.used[w] = false;
        }
        false
    }

    fn completed_edges_match(&self, v: usize, w: usize) -> bool {
        let n = self.y.nodes.size;
        let phi = &self.phi;
        let mut from_x: Vec<Edge<I, Lab>> = self.edges_at_x[v]
            .iter()
            .filter(|&&e| self.touched_x[e].iter().all(|&u| phi[u] != usize::MAX))
            .map(|&e| {
                let edge = &self.x.edges[e];
                Edge {
                    incidence: edge.incidence.relabel(n, &|u| phi[u]),
                    label: edge.label.clone(),
                }
            })
            .collect();
        let mut from_y: Vec<Edge<I, Lab>> = self.edges_at_y[w]
            .iter()
            .filter(|&&e| self.touched_y[e].iter().all(|&u| self.used[u]))
            .map(|&e| self.y.edges[e].clone())
            .collect();
        if from_x.len() != from_y.len() {
            return false;
        }
        from_x.sort();
        from_y.sort();
        from_x == from_y
    }

    fn finish(self) -> Option<NetMorphism<I, Lab>> {
        let nodes = FinFunction::new(self.y.nodes, self.phi).ok()?;
        let mut pool: BTreeMap<&Edge<I, Lab>, VecDeque<usize>> = BTreeMap::new();
        for (e, edge) in self.y.edges.iter().enumerate() {
            pool.entry(edge).or_default().push_back(e);
        }
        let mut edge_map = Vec::with_capacity(self.x.edges.len());
        for edge in &self.x.edges {
            let image = Edge {
                incidence: edge.incidence.pushforward(&nodes),
                label: edge.label.clone(),
            };
            let target = pool.get_mut(&image)?.pop_front()?;
            edge_map.push(target);
        }
        let edges = FinFunction::new(self.y.edge_set(), edge_map).ok()?;
        NetMorphism::new(self.x.clone(), self.y.clone(), edges, nodes).ok()
    }
}
