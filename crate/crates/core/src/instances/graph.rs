//! Directed multigraphs `s, t: E -> N`, optionally with edge labels.

use super::net::{Edge, Incidence, Label, Net, NetInstance, NetMorphism};
use crate::error::Result;
use crate::finset::{FinFunction, FinSet};

/// Source and target node of a graph edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoints {
    pub src: usize,
    pub tgt: usize,
}

impl Incidence for Endpoints {
    fn fits(&self, nodes: usize) -> bool {
        self.src < nodes && self.tgt < nodes
    }

    fn relabel(&self, _nodes: usize, f: &dyn Fn(usize) -> usize) -> Self {
        Endpoints {
            src: f(self.src),
            tgt: f(self.tgt),
        }
    }

    fn attachments(&self) -> Vec<(usize, u8, usize)> {
        vec![(self.src, 0, 1), (self.tgt, 1, 1)]
    }
}

pub type LGraph<L> = Net<Endpoints, L>;
pub type LGraphMorphism<L> = NetMorphism<Endpoints, L>;
pub type LGraphInstance<L> = NetInstance<Endpoints, L>;

pub type Graph = LGraph<()>;
pub type GraphMorphism = LGraphMorphism<()>;
pub type GraphInstance = LGraphInstance<()>;

impl<L: Label> Net<Endpoints, L> {
    pub fn labelled(nodes: impl Into<FinSet>, edges: Vec<(usize, usize, L)>) -> Result<Self> {
        Net::new(
            nodes,
            edges
                .into_iter()
                .map(|(src, tgt, label)| Edge {
                    incidence: Endpoints { src, tgt },
                    label,
                })
                .collect(),
        )
    }

    pub fn src(&self) -> FinFunction {
        FinFunction::new(self.nodes(), self.edges().iter().map(|e| e.incidence.src).collect())
            .expect("edges fit the node set")
    }

    pub fn tgt(&self) -> FinFunction {
        FinFunction::new(self.nodes(), self.edges().iter().map(|e| e.incidence.tgt).collect())
            .expect("edges fit the node set")
    }
}

impl Graph {
    pub fn from_edges(nodes: impl Into<FinSet>, edges: &[(usize, usize)]) -> Result<Self> {
        Net::labelled(nodes, edges.iter().map(|&(s, t)| (s, t, ())).collect())
    }
}

impl<L: Label> NetMorphism<Endpoints, L> {
    /// A graph morphism from its edge and node functions.
    pub fn graph_map(
        dom: &LGraph<L>,
        cod: &LGraph<L>,
        edges: Vec<usize>,
        nodes: Vec<usize>,
    ) -> Result<Self> {
        NetMorphism::new(
            dom.clone(),
            cod.clone(),
            FinFunction::new(cod.edge_set(), edges)?,
            FinFunction::new(cod.nodes(), nodes)?,
        )
    }
}
