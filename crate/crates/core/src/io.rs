//! The JSON document format for open networks, its canonical printer, and
//! DOT export.
//!
//! A document looks like
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "instance": "petri",
//!   "foot_in": 3,
//!   "foot_out": 1,
//!   "apex": {
//!     "places": ["H", "O", "H2O"],
//!     "transitions": [{"name": "α", "in": {"H": 2, "O": 1}, "out": {"H2O": 1}}]
//!   },
//!   "leg_in": [0, 1, 1],
//!   "leg_out": [2]
//! }
//! ```
//!
//! Names are optional and never affect the mathematics. When places are
//! unnamed, `"places"` is a count and arc keys are decimal indices.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use crate::circuits::{Circuit, Resistance};
use crate::cospan::{hcompose_with, identity_cell, tensor_cells, StructuredCospan};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};
use crate::instances::{
    Arcs, Edge, Endpoints, GraphInstance, Incidence, Instance, LGraphInstance, Label, Multiset, Net, NetInstance,
    PetriInstance, PetriRatesInstance, Rate,
};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq)]
pub enum OpenNetwork {
    Graph(StructuredCospan<GraphInstance>),
    LGraph(StructuredCospan<LGraphInstance<String>>),
    Petri(StructuredCospan<PetriInstance>),
    PetriRates(StructuredCospan<PetriRatesInstance>),
}

impl OpenNetwork {
    pub fn tag(&self) -> &'static str {
        match self {
            OpenNetwork::Graph(_) => "graph",
            OpenNetwork::LGraph(_) => "lgraph",
            OpenNetwork::Petri(_) => "petri",
            OpenNetwork::PetriRates(_) => "petri_rates",
        }
    }

    pub fn feet(&self) -> (FinSet, FinSet) {
        match self {
            OpenNetwork::Graph(c) => (c.foot_in(), c.foot_out()),
            OpenNetwork::LGraph(c) => (c.foot_in(), c.foot_out()),
            OpenNetwork::Petri(c) => (c.foot_in(), c.foot_out()),
            OpenNetwork::PetriRates(c) => (c.foot_in(), c.foot_out()),
        }
    }

    /// `(nodes or places, edges or transitions)`.
    pub fn apex_size(&self) -> (usize, usize) {
        match self {
            OpenNetwork::Graph(c) => (c.apex().nodes().size, c.apex().edges().len()),
            OpenNetwork::LGraph(c) => (c.apex().nodes().size, c.apex().edges().len()),
            OpenNetwork::Petri(c) => (c.apex().nodes().size, c.apex().edges().len()),
            OpenNetwork::PetriRates(c) => (c.apex().nodes().size, c.apex().edges().len()),
        }
    }
}

/// Human-readable names for apex nodes and edges, each all-or-nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub nodes: Option<Vec<String>>,
    pub edges: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetworkDocument {
    pub network: OpenNetwork,
    pub names: Names,
}

impl NetworkDocument {
    pub fn unnamed(network: OpenNetwork) -> Self {
        NetworkDocument {
            network,
            names: Names::default(),
        }
    }

    /// The index of a node given by name or decimal index.
    pub fn node_index(&self, key: &str) -> Option<usize> {
        resolve_key(key, self.names.nodes.as_deref(), self.network.apex_size().0)
    }
}

fn resolve_key(key: &str, names: Option<&[String]>, size: usize) -> Option<usize> {
    match names {
        Some(names) => names.iter().position(|n| n == key),
        None => key.parse().ok().filter(|&i| i < size),
    }
}

// ---- reading ----

struct At<'a> {
    value: &'a Value,
    path: String,
}

fn violation(path: &str, message: impl Into<String>) -> Error {
    Error::SchemaViolation {
        path: path.to_string(),
        message: message.into(),
    }
}

fn out_of_range(path: &str, message: impl Into<String>) -> Error {
    Error::IndexOutOfRange {
        path: path.to_string(),
        message: message.into(),
    }
}

impl<'a> At<'a> {
    fn root(value: &'a Value) -> Self {
        At {
            value,
            path: "$".into(),
        }
    }

    fn object(&self, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
        let map = self
            .value
            .as_object()
            .ok_or_else(|| violation(&self.path, "expected an object"))?;
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(violation(&format!("{}.{k}", self.path), "unknown field"));
        }
        Ok(map)
    }

    fn field(&self, key: &str) -> Result<At<'a>> {
        self.opt_field(key)?
            .ok_or_else(|| violation(&format!("{}.{key}", self.path), "missing field"))
    }

    fn opt_field(&self, key: &str) -> Result<Option<At<'a>>> {
        let map = self
            .value
            .as_object()
            .ok_or_else(|| violation(&self.path, "expected an object"))?;
        Ok(map.get(key).map(|value| At {
            value,
            path: format!("{}.{key}", self.path),
        }))
    }

    fn natural(&self) -> Result<usize> {
        self.value
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| violation(&self.path, "expected a nonnegative integer"))
    }

    fn string(&self) -> Result<&'a str> {
        self.value
            .as_str()
            .ok_or_else(|| violation(&self.path, "expected a string"))
    }

    fn items(&self) -> Result<Vec<At<'a>>> {
        let array = self
            .value
            .as_array()
            .ok_or_else(|| violation(&self.path, "expected an array"))?;
        Ok(array
            .iter()
            .enumerate()
            .map(|(i, value)| At {
                value,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    fn index_below(&self, size: usize, what: &str) -> Result<usize> {
        let i = self.natural()?;
        if i >= size {
            return Err(out_of_range(&self.path, format!("{what} {i} is not below {size}")));
        }
        Ok(i)
    }

    /// A count, or a list of unique names whose length is the count.
    fn sized(&self) -> Result<(usize, Option<Vec<String>>)> {
        if self.value.is_array() {
            let names = self.names()?;
            Ok((names.len(), Some(names)))
        } else {
            Ok((self.natural()?, None))
        }
    }

    fn names(&self) -> Result<Vec<String>> {
        let mut seen = HashSet::new();
        let mut names = Vec::new();
        for item in self.items()? {
            let name = item.string()?.to_string();
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateName { path: item.path, name });
            }
            names.push(name);
        }
        Ok(names)
    }
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<NetworkDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<NetworkDocument> {
    let root = At::root(value);
    root.object(&["format_version", "instance", "foot_in", "foot_out", "apex", "leg_in", "leg_out"])?;
    if let Some(v) = root.opt_field("format_version")? {
        if v.string()? != FORMAT_VERSION {
            return Err(violation(&v.path, format!("unsupported format version, expected {FORMAT_VERSION:?}")));
        }
    }
    let tag = root.field("instance")?;
    let foot_in = root.field("foot_in")?.natural()?;
    let foot_out = root.field("foot_out")?.natural()?;
    let apex = root.field("apex")?;
    let (network, names) = match tag.string()? {
        "graph" => {
            let (net, names) = read_graph(&apex, false)?;
            let net = net.map_labels(|_| ());
            let (leg_in, leg_out) = read_legs(&root, foot_in, foot_out, net.nodes().size)?;
            (OpenNetwork::Graph(cospan(net, &leg_in, &leg_out)?), names)
        }
        "lgraph" => {
            let (net, names) = read_graph(&apex, true)?;
            let (leg_in, leg_out) = read_legs(&root, foot_in, foot_out, net.nodes().size)?;
            (OpenNetwork::LGraph(cospan(net, &leg_in, &leg_out)?), names)
        }
        "petri" => {
            let (places, arcs, names) = read_petri(&apex, false)?;
            let net = petri_net(places, arcs, |_| ())?;
            let (leg_in, leg_out) = read_legs(&root, foot_in, foot_out, net.nodes().size)?;
            (OpenNetwork::Petri(cospan(net, &leg_in, &leg_out)?), names)
        }
        "petri_rates" => {
            let (places, arcs, names) = read_petri(&apex, true)?;
            let net = petri_net(places, arcs, |r| r.expect("rates are required"))?;
            let (leg_in, leg_out) = read_legs(&root, foot_in, foot_out, net.nodes().size)?;
            (OpenNetwork::PetriRates(cospan(net, &leg_in, &leg_out)?), names)
        }
        other => {
            return Err(violation(
                &tag.path,
                format!("unknown instance {other:?}, expected graph, lgraph, petri or petri_rates"),
            ))
        }
    };
    Ok(NetworkDocument { network, names })
}

fn cospan<I: Incidence, L: Label>(
    net: Net<I, L>,
    leg_in: &FinFunction,
    leg_out: &FinFunction,
) -> Result<StructuredCospan<NetInstance<I, L>>> {
    StructuredCospan::from_maps(net, leg_in, leg_out)
}

fn read_legs(root: &At, foot_in: usize, foot_out: usize, nodes: usize) -> Result<(FinFunction, FinFunction)> {
    let leg = |key: &str, size: usize| -> Result<FinFunction> {
        let at = root.field(key)?;
        let items = at.items()?;
        if items.len() != size {
            return Err(violation(&at.path, format!("expected {size} entries, found {}", items.len())));
        }
        let table = items
            .iter()
            .map(|i| i.index_below(nodes, "node"))
            .collect::<Result<Vec<_>>>()?;
        FinFunction::new(nodes, table)
    };
    Ok((leg("leg_in", foot_in)?, leg("leg_out", foot_out)?))
}

fn read_graph(apex: &At, labelled: bool) -> Result<(Net<Endpoints, String>, Names)> {
    let fields: &[&str] = if labelled {
        &["nodes", "edges", "edge_names", "labels"]
    } else {
        &["nodes", "edges", "edge_names"]
    };
    apex.object(fields)?;
    let (nodes, node_names) = apex.field("nodes")?.sized()?;
    let edge_items = apex.field("edges")?.items()?;
    let mut endpoints = Vec::new();
    for e in &edge_items {
        let pair = e.items()?;
        if pair.len() != 2 {
            return Err(violation(&e.path, "an edge is a [source, target] pair"));
        }
        endpoints.push((pair[0].index_below(nodes, "node")?, pair[1].index_below(nodes, "node")?));
    }
    let labels = if labelled {
        let at = apex.field("labels")?;
        let items = at.items()?;
        if items.len() != endpoints.len() {
            return Err(violation(&at.path, format!("expected {} labels", endpoints.len())));
        }
        items.iter().map(|l| l.string().map(str::to_string)).collect::<Result<Vec<_>>>()?
    } else {
        vec![String::new(); endpoints.len()]
    };
    let edge_names = match apex.opt_field("edge_names")? {
        Some(at) => {
            let names = at.names()?;
            if names.len() != endpoints.len() {
                return Err(violation(&at.path, format!("expected {} names", endpoints.len())));
            }
            (!names.is_empty()).then_some(names)
        }
        None => None,
    };
    let net = Net::labelled(
        nodes,
        endpoints.into_iter().zip(labels).map(|((s, t), l)| (s, t, l)).collect(),
    )?;
    Ok((
        net,
        Names {
            nodes: node_names,
            edges: edge_names,
        },
    ))
}

type RatedArcs = Vec<(Arcs, Option<Rate>)>;

fn petri_net<L: Label>(places: usize, arcs: RatedArcs, label: impl Fn(Option<Rate>) -> L) -> Result<Net<Arcs, L>> {
    let edges = arcs
        .into_iter()
        .map(|(incidence, r)| Edge {
            incidence,
            label: label(r),
        })
        .collect();
    Net::new(places, edges)
}

fn read_petri(apex: &At, rated: bool) -> Result<(usize, RatedArcs, Names)> {
    apex.object(&["places", "transitions"])?;
    let (places, place_names) = apex.field("places")?.sized()?;
    let fields: &[&str] = if rated {
        &["name", "in", "out", "rate"]
    } else {
        &["name", "in", "out"]
    };
    let mut edges = Vec::new();
    let mut names: Vec<Option<(String, String)>> = Vec::new();
    for t in apex.field("transitions")?.items()? {
        t.object(fields)?;
        let arcs = |key: &str| -> Result<Multiset> {
            let at = t.field(key)?;
            let map = at.object_entries()?;
            let mut counts = vec![0; places];
            for (k, v) in map {
                let p = resolve_key(&k, place_names.as_deref(), places)
                    .ok_or_else(|| out_of_range(&v.path, format!("no place {k:?}")))?;
                counts[p] += v.natural()?;
            }
            Multiset::new(places, counts)
        };
        let rate = if rated {
            let at = t.field("rate")?;
            let text = match at.value {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(violation(&at.path, "a rate is a rational written as a string or number")),
            };
            let value = crate::rational::parse(&text)
                .ok_or_else(|| violation(&at.path, format!("{text:?} is not a rational")))?;
            Some(Rate::new(value)?)
        } else {
            None
        };
        names.push(match t.opt_field("name")? {
            Some(n) => Some((n.string()?.to_string(), n.path.clone())),
            None => None,
        });
        let incidence = Arcs {
            input: arcs("in")?,
            output: arcs("out")?,
        };
        edges.push((incidence, rate));
    }
    let edge_names = if names.iter().all(Option::is_none) {
        None
    } else {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, n) in names.into_iter().enumerate() {
            let (name, path) = n.ok_or_else(|| {
                violation(&format!("{}.transitions[{i}]", apex.path), "either every transition is named or none")
            })?;
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateName { path, name });
            }
            out.push(name);
        }
        Some(out)
    };
    Ok((
        places,
        edges,
        Names {
            nodes: place_names,
            edges: edge_names,
        },
    ))
}

impl At<'_> {
    fn object_entries(&self) -> Result<Vec<(String, At<'_>)>> {
        let map = self
            .value
            .as_object()
            .ok_or_else(|| violation(&self.path, "expected an object of counts"))?;
        Ok(map
            .iter()
            .map(|(k, value)| {
                (
                    k.clone(),
                    At {
                        value,
                        path: format!("{}.{k}", self.path),
                    },
                )
            })
            .collect())
    }
}

pub fn finset_from_json(text: &str) -> Result<FinSet> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let at = At::root(&value);
    at.object(&["size"])?;
    Ok(FinSet::new(at.field("size")?.natural()?))
}

pub fn finfunction_from_json(text: &str) -> Result<FinFunction> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let at = At::root(&value);
    at.object(&["dom", "cod", "map"])?;
    let dom = at.field("dom")?.natural()?;
    let cod = at.field("cod")?.natural()?;
    let map = at.field("map")?;
    let items = map.items()?;
    if items.len() != dom {
        return Err(violation(&map.path, format!("expected {dom} entries, found {}", items.len())));
    }
    let table = items.iter().map(|i| i.index_below(cod, "element")).collect::<Result<Vec<_>>>()?;
    FinFunction::new(cod, table)
}

pub fn finset_to_json(a: FinSet) -> String {
    format!("{{\"size\": {}}}", a.size)
}

pub fn finfunction_to_json(f: &FinFunction) -> String {
    render(&serde_json::json!({"dom": f.dom().size, "cod": f.cod().size, "map": f.table()}))
}

// ---- writing ----

pub fn to_value(doc: &NetworkDocument) -> Value {
    let (foot_in, foot_out) = doc.network.feet();
    let (apex, leg_in, leg_out) = match &doc.network {
        OpenNetwork::Graph(c) => (graph_value(c.apex(), &doc.names, None), c.in_map(), c.out_map()),
        OpenNetwork::LGraph(c) => {
            let labels: Vec<String> = c.apex().labels().cloned().collect();
            (graph_value(c.apex(), &doc.names, Some(labels)), c.in_map(), c.out_map())
        }
        OpenNetwork::Petri(c) => (petri_value(c.apex(), &doc.names, |_| None), c.in_map(), c.out_map()),
        OpenNetwork::PetriRates(c) => (
            petri_value(c.apex(), &doc.names, |r: &Rate| Some(r.to_string())),
            c.in_map(),
            c.out_map(),
        ),
    };
    let mut map = Map::new();
    map.insert("format_version".into(), FORMAT_VERSION.into());
    map.insert("instance".into(), doc.network.tag().into());
    map.insert("foot_in".into(), foot_in.size.into());
    map.insert("foot_out".into(), foot_out.size.into());
    map.insert("apex".into(), apex);
    map.insert("leg_in".into(), leg_in.table().into());
    map.insert("leg_out".into(), leg_out.table().into());
    Value::Object(map)
}

fn sized_value(size: usize, names: &Option<Vec<String>>) -> Value {
    match names {
        Some(n) => n.clone().into(),
        None => size.into(),
    }
}

fn graph_value<L: Label>(net: &Net<Endpoints, L>, names: &Names, labels: Option<Vec<String>>) -> Value {
    let mut map = Map::new();
    map.insert("nodes".into(), sized_value(net.nodes().size, &names.nodes));
    let edges: Vec<Value> = net
        .edges()
        .iter()
        .map(|e| vec![e.incidence.src, e.incidence.tgt].into())
        .collect();
    map.insert("edges".into(), edges.into());
    if let Some(n) = names.edges.as_ref().filter(|n| !n.is_empty()) {
        map.insert("edge_names".into(), n.clone().into());
    }
    if let Some(l) = labels {
        map.insert("labels".into(), l.into());
    }
    Value::Object(map)
}

fn petri_value<L: Label>(net: &Net<Arcs, L>, names: &Names, rate: impl Fn(&L) -> Option<String>) -> Value {
    let key = |p: usize| match &names.nodes {
        Some(n) => n[p].clone(),
        None => p.to_string(),
    };
    let arcs = |m: &Multiset| -> Value {
        let mut map = Map::new();
        for (p, k) in m.support() {
            map.insert(key(p), k.into());
        }
        Value::Object(map)
    };
    let transitions: Vec<Value> = net
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut t = Map::new();
            if let Some(n) = &names.edges {
                t.insert("name".into(), n[i].clone().into());
            }
            t.insert("in".into(), arcs(&e.incidence.input));
            t.insert("out".into(), arcs(&e.incidence.output));
            if let Some(r) = rate(&e.label) {
                t.insert("rate".into(), r.into());
            }
            Value::Object(t)
        })
        .collect();
    let mut map = Map::new();
    map.insert("places".into(), sized_value(net.nodes().size, &names.nodes));
    map.insert("transitions".into(), transitions.into());
    Value::Object(map)
}

/// The canonical text of a document; `parse(print(d)) == d`.
pub fn print(doc: &NetworkDocument) -> String {
    let mut out = render(&to_value(doc));
    out.push('\n');
    out
}

/// Pretty-prints with small arrays and flat objects kept on one line.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn is_scalar(value: &Value) -> bool {
    !value.is_array() && !value.is_object()
}

fn is_shallow(value: &Value) -> bool {
    match value {
        Value::Array(a) => a.iter().all(is_scalar),
        Value::Object(m) => m.values().all(is_scalar),
        _ => true,
    }
}

fn is_flat(value: &Value) -> bool {
    match value {
        Value::Array(a) => a.iter().all(|v| !v.is_object() && is_shallow(v)),
        Value::Object(m) => m.values().all(is_shallow),
        _ => true,
    }
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    if is_flat(value) {
        render_inline(value, out);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match value {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad);
                render_into(v, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", "  ".repeat(indent));
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                render_into(v, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", "  ".repeat(indent));
        }
        _ => unreachable!("scalars are flat"),
    }
}

fn render_inline(value: &Value, out: &mut String) {
    match value {
        Value::Array(items) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_inline(v, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                render_inline(v, out);
            }
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

// ---- operations on documents ----

/// Names of the nodes of a colimit, taken from the first preimage that has
/// one and made unique by appending primes.
fn merge_names(size: usize, sources: &[(&FinFunction, Option<&Vec<String>>)]) -> Option<Vec<String>> {
    if size == 0 || sources.iter().all(|(_, n)| n.is_none()) {
        return None;
    }
    let mut chosen: Vec<Option<String>> = vec![None; size];
    for (map, names) in sources {
        for (i, &k) in map.table().iter().enumerate() {
            if chosen[k].is_none() {
                chosen[k] = names.map(|n| n[i].clone());
            }
        }
    }
    let mut used = HashSet::new();
    Some(
        chosen
            .into_iter()
            .enumerate()
            .map(|(k, name)| {
                let mut name = name.unwrap_or_else(|| k.to_string());
                while !used.insert(name.clone()) {
                    name.push('\'');
                }
                name
            })
            .collect(),
    )
}

fn glue_names<I: Incidence, L: Label>(
    size: (usize, usize),
    left: &crate::instances::NetMorphism<I, L>,
    right: &crate::instances::NetMorphism<I, L>,
    a: &Names,
    b: &Names,
) -> Names {
    Names {
        nodes: merge_names(size.0, &[(left.node_map(), a.nodes.as_ref()), (right.node_map(), b.nodes.as_ref())]),
        edges: merge_names(size.1, &[(left.edge_map(), a.edges.as_ref()), (right.edge_map(), b.edges.as_ref())]),
    }
}

type Cell<I, L> = StructuredCospan<NetInstance<I, L>>;

fn compose_cells<I: Incidence, L: Label>(c1: &Cell<I, L>, a: &Names, c2: &Cell<I, L>, b: &Names) -> Result<(Cell<I, L>, Names)> {
    let (c, po) = hcompose_with(c1, c2)?;
    let size = (c.apex().nodes().size, c.apex().edges().len());
    let names = glue_names(size, &po.left, &po.right, a, b);
    Ok((c, names))
}

fn tensor_named<I: Incidence, L: Label>(c1: &Cell<I, L>, a: &Names, c2: &Cell<I, L>, b: &Names) -> (Cell<I, L>, Names) {
    let c = tensor_cells(c1, c2);
    let sum = NetInstance::<I, L>::coproduct(c1.apex(), c2.apex());
    let size = (c.apex().nodes().size, c.apex().edges().len());
    let names = glue_names(size, &sum.left, &sum.right, a, b);
    (c, names)
}

fn canonical_cell<I: Incidence, L: Label>(c: &Cell<I, L>, names: &Names) -> (Cell<I, L>, Names) {
    let seeds: Vec<usize> = c.in_map().table().iter().chain(c.out_map().table()).copied().collect();
    let iso = NetInstance::<I, L>::canonical_renumbering(c.apex(), &seeds);
    let permute = |map: &FinFunction, names: &Option<Vec<String>>| {
        names.as_ref().map(|n| {
            let mut out = vec![String::new(); n.len()];
            for (i, name) in n.iter().enumerate() {
                out[map.apply(i)] = name.clone();
            }
            out
        })
    };
    let renamed = Names {
        nodes: permute(iso.node_map(), &names.nodes),
        edges: permute(iso.edge_map(), &names.edges),
    };
    (c.transport(&iso).expect("renumbering starts at the apex"), renamed)
}

fn mismatch(a: &OpenNetwork, b: &OpenNetwork) -> Error {
    Error::InstanceMismatch(format!("{} against {}", a.tag(), b.tag()))
}

macro_rules! dispatch_pair {
    ($a:expr, $b:expr, |$x:ident, $y:ident, $wrap:ident| $body:expr) => {
        match (&$a.network, &$b.network) {
            (OpenNetwork::Graph($x), OpenNetwork::Graph($y)) => {
                let $wrap = OpenNetwork::Graph;
                $body
            }
            (OpenNetwork::LGraph($x), OpenNetwork::LGraph($y)) => {
                let $wrap = OpenNetwork::LGraph;
                $body
            }
            (OpenNetwork::Petri($x), OpenNetwork::Petri($y)) => {
                let $wrap = OpenNetwork::Petri;
                $body
            }
            (OpenNetwork::PetriRates($x), OpenNetwork::PetriRates($y)) => {
                let $wrap = OpenNetwork::PetriRates;
                $body
            }
            (x, y) => Err(mismatch(x, y)),
        }
    };
}

/// First `a`, then `b`, glued along the shared foot.
pub fn compose(a: &NetworkDocument, b: &NetworkDocument) -> Result<NetworkDocument> {
    dispatch_pair!(a, b, |x, y, wrap| {
        let (c, names) = compose_cells(x, &a.names, y, &b.names)?;
        Ok(NetworkDocument {
            network: wrap(c),
            names,
        })
    })
}

pub fn tensor(a: &NetworkDocument, b: &NetworkDocument) -> Result<NetworkDocument> {
    dispatch_pair!(a, b, |x, y, wrap| {
        let (c, names) = tensor_named(x, &a.names, y, &b.names);
        Ok(NetworkDocument {
            network: wrap(c),
            names,
        })
    })
}

/// The iso-class representative, names carried along.
pub fn canonicalize(doc: &NetworkDocument) -> NetworkDocument {
    let (network, names) = match &doc.network {
        OpenNetwork::Graph(c) => {
            let (c, n) = canonical_cell(c, &doc.names);
            (OpenNetwork::Graph(c), n)
        }
        OpenNetwork::LGraph(c) => {
            let (c, n) = canonical_cell(c, &doc.names);
            (OpenNetwork::LGraph(c), n)
        }
        OpenNetwork::Petri(c) => {
            let (c, n) = canonical_cell(c, &doc.names);
            (OpenNetwork::Petri(c), n)
        }
        OpenNetwork::PetriRates(c) => {
            let (c, n) = canonical_cell(c, &doc.names);
            (OpenNetwork::PetriRates(c), n)
        }
    };
    NetworkDocument { network, names }
}

/// The identity cell on `n` in the given instance.
pub fn identity_document(tag: &str, n: usize) -> Result<NetworkDocument> {
    let a = FinSet::new(n);
    let network = match tag {
        "graph" => OpenNetwork::Graph(identity_cell(a)),
        "lgraph" => OpenNetwork::LGraph(identity_cell(a)),
        "petri" => OpenNetwork::Petri(identity_cell(a)),
        "petri_rates" => OpenNetwork::PetriRates(identity_cell(a)),
        other => return Err(violation("instance", format!("unknown instance {other:?}"))),
    };
    Ok(NetworkDocument::unnamed(network))
}

/// A leg-preserving apex isomorphism as `(node map, edge map)`.
pub fn find_iso(a: &NetworkDocument, b: &NetworkDocument) -> Result<Option<(FinFunction, FinFunction)>> {
    fn maps<I: Incidence, L: Label>(m: Option<crate::instances::NetMorphism<I, L>>) -> Option<(FinFunction, FinFunction)> {
        m.map(|m| (m.node_map().clone(), m.edge_map().clone()))
    }
    dispatch_pair!(a, b, |x, y, _wrap| Ok(maps(crate::cospan::find_cospan_iso(x, y))))
}

// ---- views for the semantics ----

/// A labelled-graph document read as a resistor circuit.
pub fn circuit(doc: &NetworkDocument) -> Result<Circuit> {
    let OpenNetwork::LGraph(c) = &doc.network else {
        return Err(Error::InstanceMismatch(format!("a circuit is an lgraph, not {}", doc.network.tag())));
    };
    let mut resistances = Vec::new();
    for (i, label) in c.apex().labels().enumerate() {
        let r = crate::rational::parse(label)
            .ok_or_else(|| violation(&format!("$.apex.labels[{i}]"), format!("{label:?} is not a rational")))?;
        resistances.push(Resistance::new(r)?);
    }
    let edges = c
        .apex()
        .edges()
        .iter()
        .zip(resistances)
        .map(|(e, r)| Edge {
            incidence: e.incidence.clone(),
            label: r,
        })
        .collect();
    StructuredCospan::from_maps(Net::new(c.apex().nodes(), edges)?, &c.in_map(), &c.out_map())
}

/// The underlying open Petri net, dropping rates if present.
pub fn petri(doc: &NetworkDocument) -> Result<StructuredCospan<PetriInstance>> {
    match &doc.network {
        OpenNetwork::Petri(c) => Ok(c.clone()),
        OpenNetwork::PetriRates(c) => StructuredCospan::from_maps(c.apex().forget_rates(), &c.in_map(), &c.out_map()),
        other => Err(Error::InstanceMismatch(format!("expected a Petri net, found {}", other.tag()))),
    }
}

pub fn rated_petri(doc: &NetworkDocument) -> Result<StructuredCospan<PetriRatesInstance>> {
    match &doc.network {
        OpenNetwork::PetriRates(c) => Ok(c.clone()),
        other => Err(Error::InstanceMismatch(format!("expected petri_rates, found {}", other.tag()))),
    }
}

// ---- assignments on places ----

/// Parses `"H:1,O:1/2"` into one rational per node; missing nodes are zero.
pub fn parse_assignment(text: &str, doc: &NetworkDocument) -> Result<Vec<BigRational>> {
    let size = doc.network.apex_size().0;
    let mut values = vec![BigRational::zero(); size];
    let mut seen = BTreeMap::new();
    for entry in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (key, value) = entry
            .rsplit_once(':')
            .ok_or_else(|| violation("assignment", format!("{entry:?} is not of the form name:value")))?;
        let key = key.trim();
        let i = doc
            .node_index(key)
            .ok_or_else(|| out_of_range("assignment", format!("no place {key:?}")))?;
        if seen.insert(i, ()).is_some() {
            return Err(Error::DuplicateName {
                path: "assignment".into(),
                name: key.into(),
            });
        }
        let v = crate::rational::parse(value.trim())
            .ok_or_else(|| violation("assignment", format!("{value:?} is not a rational")))?;
        if v.is_negative() {
            return Err(violation("assignment", format!("{key} is negative")));
        }
        values[i] = v;
    }
    Ok(values)
}

/// Like [`parse_assignment`], requiring whole numbers.
pub fn parse_marking(text: &str, doc: &NetworkDocument) -> Result<Multiset> {
    let values = parse_assignment(text, doc)?;
    let counts = values
        .iter()
        .map(|v| {
            if !v.is_integer() {
                return Err(violation("marking", format!("{v} is not a whole number of tokens")));
            }
            usize::try_from(v.to_integer()).map_err(|_| violation("marking", format!("{v} is too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    Multiset::new(values.len(), counts)
}

// ---- DOT ----

fn quote(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

/// Deterministic DOT text: feet as dashed clusters with arrows into the
/// apex, places as circles, transitions as squares.
pub fn export_dot(doc: &NetworkDocument) -> String {
    let mut out = String::from("digraph open_network {\n  rankdir=LR;\n");
    let (foot_in, foot_out) = doc.network.feet();
    let (nodes, _) = doc.network.apex_size();
    let node_name = |i: usize| match &doc.names.nodes {
        Some(n) => n[i].clone(),
        None => i.to_string(),
    };
    let edge_name = |i: usize| match &doc.names.edges {
        Some(n) => n[i].clone(),
        None => i.to_string(),
    };
    for (id, label, size) in [("in", "input", foot_in.size), ("out", "output", foot_out.size)] {
        let _ = writeln!(out, "  subgraph cluster_{id} {{\n    label={};\n    style=dashed;", quote(label));
        for i in 0..size {
            let _ = writeln!(out, "    {id}{i} [shape=point, xlabel={}];", quote(&i.to_string()));
        }
        out.push_str("  }\n");
    }
    for i in 0..nodes {
        let _ = writeln!(out, "  n{i} [shape=circle, label={}];", quote(&node_name(i)));
    }
    let (leg_in, leg_out) = match &doc.network {
        OpenNetwork::Graph(c) => {
            graph_dot(&mut out, c.apex(), |_| None);
            (c.in_map(), c.out_map())
        }
        OpenNetwork::LGraph(c) => {
            graph_dot(&mut out, c.apex(), |l: &String| Some(l.clone()));
            (c.in_map(), c.out_map())
        }
        OpenNetwork::Petri(c) => {
            petri_dot(&mut out, c.apex(), &edge_name, |_| None);
            (c.in_map(), c.out_map())
        }
        OpenNetwork::PetriRates(c) => {
            petri_dot(&mut out, c.apex(), &edge_name, |r: &Rate| Some(r.to_string()));
            (c.in_map(), c.out_map())
        }
    };
    for (id, leg) in [("in", leg_in), ("out", leg_out)] {
        for (i, &n) in leg.table().iter().enumerate() {
            let _ = writeln!(out, "  {id}{i} -> n{n} [style=dashed, arrowhead=vee];");
        }
    }
    out.push_str("}\n");
    out
}

fn graph_dot<L: Label>(out: &mut String, net: &Net<Endpoints, L>, label: impl Fn(&L) -> Option<String>) {
    for e in net.edges() {
        let attrs = label(&e.label).map(|l| format!(" [label={}]", quote(&l))).unwrap_or_default();
        let _ = writeln!(out, "  n{} -> n{}{attrs};", e.incidence.src, e.incidence.tgt);
    }
}

fn petri_dot<L: Label>(
    out: &mut String,
    net: &Net<Arcs, L>,
    name: &dyn Fn(usize) -> String,
    rate: impl Fn(&L) -> Option<String>,
) {
    for (t, e) in net.edges().iter().enumerate() {
        let text = match rate(&e.label) {
            Some(r) => format!("{}\\n{r}", name(t)),
            None => name(t),
        };
        let _ = writeln!(out, "  t{t} [shape=square, label={}];", quote(&text).replace("\\\\n", "\\n"));
    }
    for (t, e) in net.edges().iter().enumerate() {
        for (p, k) in e.incidence.input.support() {
            for _ in 0..k {
                let _ = writeln!(out, "  n{p} -> t{t};");
            }
        }
        for (p, k) in e.incidence.output.support() {
            for _ in 0..k {
                let _ = writeln!(out, "  t{t} -> n{p};");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const WATER: &str = r#"{
  "format_version": "1",
  "instance": "petri",
  "foot_in": 3,
  "foot_out": 1,
  "apex": {
    "places": ["H", "O", "H2O"],
    "transitions": [
      {"name": "α", "in": {"H": 2, "O": 1}, "out": {"H2O": 1}}
    ]
  },
  "leg_in": [0, 1, 1],
  "leg_out": [2]
}
"#;

    const DISSOCIATION: &str = r#"{
  "instance": "petri",
  "foot_in": 1,
  "foot_out": 3,
  "apex": {
    "places": ["H2O", "OH-", "H3O+"],
    "transitions": [{"name": "β", "in": {"H2O": 2}, "out": {"OH-": 1, "H3O+": 1}}]
  },
  "leg_in": [0],
  "leg_out": [1, 1, 2]
}"#;

    #[test]
    fn water_parses() {
        let d = parse(WATER).unwrap();
        assert_eq!(d.network.apex_size(), (3, 1));
        assert_eq!(d.names.nodes.as_deref().unwrap(), ["H", "O", "H2O"]);
        let OpenNetwork::Petri(c) = &d.network else { panic!("petri expected") };
        assert_eq!(c.apex().source(0).counts(), &[2, 1, 0]);
        assert_eq!(print(&d), WATER);
        assert_eq!(parse(&print(&d)).unwrap(), d);
    }

    #[test]
    fn diagnostics_name_the_path() {
        let err = |text: &str| parse(text).unwrap_err();
        assert_eq!(err("{").name(), "malformed-json");
        assert_eq!(err(r#"{"size": -1}"#).name(), "schema-violation");
        assert_eq!(finset_from_json(r#"{"size": -1}"#).unwrap_err().name(), "schema-violation");
        let bad_leg = WATER.replace("\"leg_out\": [2]", "\"leg_out\": [7]");
        let e = err(&bad_leg);
        assert_eq!(e.name(), "index-out-of-range");
        assert!(e.to_string().contains("$.leg_out[0]"), "{e}");
        let dup = WATER.replace("\"O\", \"H2O\"", "\"O\", \"O\"");
        assert_eq!(err(&dup).name(), "duplicate-name");
        let unknown = WATER.replace("\"H2O\": 1}", "\"OH\": 1}");
        assert_eq!(err(&unknown).name(), "index-out-of-range");
        let count = WATER.replace("\"H\": 2", "\"H\": -2");
        let e = err(&count);
        assert_eq!(e.name(), "schema-violation");
        assert!(e.to_string().contains("$.apex.transitions[0].in.H"), "{e}");
        let short = WATER.replace("[0, 1, 1]", "[0, 1]");
        assert_eq!(err(&short).name(), "schema-violation");
        let version = WATER.replace("\"1\"", "\"2\"");
        assert_eq!(err(&version).name(), "schema-violation");
    }

    #[test]
    fn rates_are_checked() {
        let rated = WATER
            .replace("\"petri\"", "\"petri_rates\"")
            .replace("\"out\": {\"H2O\": 1}", "\"out\": {\"H2O\": 1}, \"rate\": \"3/2\"");
        let d = parse(&rated).unwrap();
        assert_eq!(print(&d), rated);
        assert_eq!(parse(&rated.replace("3/2", "0")).unwrap_err().name(), "nonpositive-rate");
        assert_eq!(parse(&WATER.replace("\"petri\"", "\"petri_rates\"")).unwrap_err().name(), "schema-violation");
    }

    #[test]
    fn composite_has_five_places() {
        let c = compose(&parse(WATER).unwrap(), &parse(DISSOCIATION).unwrap()).unwrap();
        assert_eq!(c.network.apex_size(), (5, 2));
        assert_eq!(c.names.nodes.as_deref().unwrap(), ["H", "O", "H2O", "OH-", "H3O+"]);
        assert_eq!(c.names.edges.as_deref().unwrap(), ["α", "β"]);
        let t = tensor(&parse(WATER).unwrap(), &parse(DISSOCIATION).unwrap()).unwrap();
        assert_eq!(t.network.feet(), (FinSet::new(4), FinSet::new(4)));
        assert_eq!(t.names.nodes.as_deref().unwrap(), ["H", "O", "H2O", "H2O'", "OH-", "H3O+"]);
        let bad = compose(&parse(WATER).unwrap(), &parse(WATER).unwrap()).unwrap_err();
        assert_eq!(bad.name(), "mismatched-boundary");
    }

    #[test]
    fn cross_instance_inputs_are_rejected() {
        let g = identity_document("graph", 1).unwrap();
        let p = identity_document("petri", 1).unwrap();
        assert_eq!(compose(&g, &p).unwrap_err().name(), "instance-mismatch");
    }

    #[test]
    fn unnamed_petri_uses_indices() {
        let text = r#"{"instance": "petri", "foot_in": 1, "foot_out": 1,
            "apex": {"places": 2, "transitions": [{"in": {"0": 1}, "out": {"1": 2}}]},
            "leg_in": [0], "leg_out": [1]}"#;
        let d = parse(text).unwrap();
        let printed = print(&d);
        assert!(printed.contains("\"places\": 2"));
        assert!(printed.contains("{\"in\": {\"0\": 1}, \"out\": {\"1\": 2}}"));
        assert_eq!(parse(&printed).unwrap(), d);
    }

    #[test]
    fn canonical_form_moves_names_along() {
        let text = r#"{"instance": "graph", "foot_in": 1, "foot_out": 1,
            "apex": {"nodes": ["c", "b", "a"], "edges": [[2, 1], [1, 0]], "edge_names": ["x", "y"]},
            "leg_in": [2], "leg_out": [0]}"#;
        let d = parse(text).unwrap();
        let k = canonicalize(&d);
        assert_eq!(k.names.nodes.as_deref().unwrap(), ["a", "c", "b"]);
        let OpenNetwork::Graph(c) = &k.network else { panic!("graph expected") };
        assert_eq!(c.in_map().table(), &[0]);
        assert_eq!(find_iso(&d, &k).unwrap().map(|(n, _)| n.table().to_vec()), Some(vec![1, 2, 0]));
        assert_eq!(canonicalize(&k), k);
    }

    #[test]
    fn finset_and_function_json() {
        assert_eq!(finset_from_json(&finset_to_json(FinSet::new(4))).unwrap(), FinSet::new(4));
        let f = FinFunction::new(3, vec![2, 0]).unwrap();
        assert_eq!(finfunction_from_json(&finfunction_to_json(&f)).unwrap(), f);
        assert_eq!(
            finfunction_from_json(r#"{"dom": 1, "cod": 2, "map": [2]}"#).unwrap_err().name(),
            "index-out-of-range"
        );
    }

    #[test]
    fn assignments_resolve_names() {
        let d = parse(WATER).unwrap();
        let x = parse_assignment("H:1, O:1/2", &d).unwrap();
        assert_eq!(x, vec![crate::rational::from_i64(1), crate::rational::ratio(1, 2), BigRational::zero()]);
        assert_eq!(parse_assignment("N:1", &d).unwrap_err().name(), "index-out-of-range");
        assert_eq!(parse_marking("H:1/2", &d).unwrap_err().name(), "schema-violation");
        assert_eq!(parse_marking("H:4,O:2", &d).unwrap().counts(), &[4, 2, 0]);
    }

    #[test]
    fn circuit_labels_become_resistances() {
        let text = r#"{"instance": "lgraph", "foot_in": 1, "foot_out": 1,
            "apex": {"nodes": 2, "edges": [[0, 1]], "labels": ["3/2"]}, "leg_in": [0], "leg_out": [1]}"#;
        let c = circuit(&parse(text).unwrap()).unwrap();
        assert_eq!(c.apex().edges()[0].label, "3/2".parse().unwrap());
        let zero = text.replace("3/2", "0");
        assert_eq!(circuit(&parse(&zero).unwrap()).unwrap_err().name(), "nonpositive-resistance");
        assert_eq!(circuit(&parse(WATER).unwrap()).unwrap_err().name(), "instance-mismatch");
        assert_eq!(rated_petri(&parse(WATER).unwrap()).unwrap_err().name(), "instance-mismatch");
        assert_eq!(petri(&parse(WATER).unwrap()).unwrap().apex().places().size, 3);
    }

    #[test]
    fn dot_for_identity_and_water() {
        let id = export_dot(&identity_document("graph", 2).unwrap());
        assert_eq!(id.matches("subgraph cluster_").count(), 2);
        assert_eq!(id.matches("shape=circle").count(), 2);
        assert!(!id.lines().any(|l| l.contains("-> n") && !l.contains("dashed")));
        let water = export_dot(&parse(WATER).unwrap());
        assert_eq!(water.matches("shape=circle").count(), 3);
        assert_eq!(water.matches("shape=square").count(), 1);
        assert_eq!(water.matches("    in").count(), 3);
        assert_eq!(water.matches("-> t0;").count(), 3);
        assert_eq!(export_dot(&parse(&print(&parse(WATER).unwrap())).unwrap()), water);
    }
}
