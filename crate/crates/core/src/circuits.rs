//! Resistor circuits as open graphs labelled by resistances, and their
//! black-box behaviour as linear relations over the rationals.
//!
//! Each terminal carries a potential and a current, so a boundary with `k`
//! terminals contributes `2k` coordinates ordered `(φ, I)` per terminal.
//! Input currents flow into the circuit, output currents flow out of it.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cospan::StructuredCospan;
use crate::error::{Error, Result};
use crate::instances::{LGraph, LGraphInstance, Label};
use crate::matrix::{dot, in_row_space, nullspace, rref, Row, Q};

/// A positive resistance in ohms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Resistance(BigRational);

impl Resistance {
    pub fn new(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonpositiveResistance(r.to_string()));
        }
        Ok(Resistance(r))
    }

    pub fn from_integer(n: i64) -> Result<Self> {
        Resistance::new(BigRational::from_integer(n.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl FromStr for Resistance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = crate::rational::parse(s)
            .ok_or_else(|| Error::NonpositiveResistance(format!("{s:?} is not a rational")))?;
        Resistance::new(r)
    }
}

impl fmt::Display for Resistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Label for Resistance {}

pub type CircuitGraph = LGraph<Resistance>;
pub type CircuitInstance = LGraphInstance<Resistance>;
pub type Circuit = StructuredCospan<CircuitInstance>;

/// A subspace of `Q^dim_in ⊕ Q^dim_out`, stored as its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    dim_in: usize,
    dim_out: usize,
    basis: Vec<Row>,
}

impl LinearRelation {
    /// The span of `vectors`.
    pub fn from_span(dim_in: usize, dim_out: usize, vectors: Vec<Row>) -> Result<Self> {
        let n = dim_in + dim_out;
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::InvalidObject(format!(
                "vector of length {} in a relation on {n} coordinates",
                v.len()
            )));
        }
        Ok(LinearRelation {
            dim_in,
            dim_out,
            basis: rref(vectors, n).0,
        })
    }

    /// The common solutions of `row · v = 0`.
    pub fn from_constraints(dim_in: usize, dim_out: usize, rows: Vec<Row>) -> Result<Self> {
        let n = dim_in + dim_out;
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidObject(format!(
                "constraint of length {} on {n} coordinates",
                r.len()
            )));
        }
        Ok(LinearRelation {
            dim_in,
            dim_out,
            basis: nullspace(rows, n),
        })
    }

    pub fn identity(k: usize) -> Self {
        let basis = (0..k)
            .map(|i| {
                let mut v = vec![Q::zero(); 2 * k];
                v[i] = Q::one();
                v[k + i] = Q::one();
                v
            })
            .collect();
        LinearRelation {
            dim_in: k,
            dim_out: k,
            basis,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rows whose common kernel is the relation.
    pub fn constraints(&self) -> Vec<Row> {
        nullspace(self.basis.clone(), self.dim_in + self.dim_out)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if v.len() != self.dim_in + self.dim_out {
            return false;
        }
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect();
        in_row_space(&self.basis, &pivots, v)
    }

    /// The same subspace read from outputs to inputs.
    pub fn transpose(&self) -> Self {
        let (m, n) = (self.dim_in, self.dim_out);
        let swapped = self
            .basis
            .iter()
            .map(|v| v[m..].iter().chain(&v[..m]).cloned().collect())
            .collect();
        LinearRelation::from_span(n, m, swapped).expect("lengths are preserved")
    }

    /// Reorders coordinates: coordinate `i` of the result is `perm[i]` of `self`.
    pub fn reindex(&self, dim_in: usize, dim_out: usize, perm: &[usize]) -> Result<Self> {
        let vectors = self.basis.iter().map(|v| perm.iter().map(|&j| v[j].clone()).collect()).collect();
        LinearRelation::from_span(dim_in, dim_out, vectors)
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relation {} -> {}, dimension {}", self.dim_in, self.dim_out, self.dim())?;
        for row in &self.basis {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let (a, b) = cells.split_at(self.dim_in);
            writeln!(f, "[{} | {}]", a.join(" "), b.join(" "))?;
        }
        Ok(())
    }
}

/// `{(φ₁, I₁, φ₂, I₂) : I₁ = I₂, φ₂ − φ₁ = R I₁}`.
pub fn resistor_relation(r: &Resistance) -> LinearRelation {
    let one = Q::one;
    let zero = Q::zero;
    LinearRelation::from_span(
        2,
        2,
        vec![vec![one(), zero(), one(), zero()], vec![zero(), one(), r.value().clone(), one()]],
    )
    .expect("four coordinates")
}

/// `{(v, u) : ∃w. (v, w) ∈ r1, (w, u) ∈ r2}` by eliminating `w` from the
/// stacked constraints.
pub fn compose_relations(r1: &LinearRelation, r2: &LinearRelation) -> Result<LinearRelation> {
    if r1.dim_out != r2.dim_in {
        return Err(Error::MismatchedBoundary(format!(
            "relation into {} composed with relation out of {}",
            r1.dim_out, r2.dim_in
        )));
    }
    let (m, k, n) = (r1.dim_in, r1.dim_out, r2.dim_out);
    // Columns: w first, then v, then u.
    let mut rows = Vec::new();
    for c in r1.constraints() {
        let mut row = c[m..].to_vec();
        row.extend_from_slice(&c[..m]);
        row.extend((0..n).map(|_| Q::zero()));
        rows.push(row);
    }
    for c in r2.constraints() {
        let mut row = c[..k].to_vec();
        row.extend((0..m).map(|_| Q::zero()));
        row.extend_from_slice(&c[k..]);
        rows.push(row);
    }
    let outer = project_out(rows, k, m + n);
    LinearRelation::from_constraints(m, n, outer)
}

/// Eliminates the first `hidden` columns, keeping the constraints on the rest.
fn project_out(rows: Vec<Row>, hidden: usize, visible: usize) -> Vec<Row> {
    rref(rows, hidden + visible)
        .0
        .into_iter()
        .filter(|r| r[..hidden].iter().all(Zero::is_zero))
        .map(|r| r[hidden..].to_vec())
        .collect()
}

/// `r1 ⊕ r2: m1 + m2 -> n1 + n2`, coordinates `(v1, v2, u1, u2)`.
pub fn direct_sum(r1: &LinearRelation, r2: &LinearRelation) -> LinearRelation {
    let (m1, n1, m2, n2) = (r1.dim_in, r1.dim_out, r2.dim_in, r2.dim_out);
    let zeros = |k: usize| (0..k).map(|_| Q::zero()).collect::<Vec<_>>();
    let mut vectors = Vec::new();
    for v in &r1.basis {
        let mut row = v[..m1].to_vec();
        row.extend(zeros(m2));
        row.extend_from_slice(&v[m1..]);
        row.extend(zeros(n2));
        vectors.push(row);
    }
    for v in &r2.basis {
        let mut row = zeros(m1);
        row.extend_from_slice(&v[..m2]);
        row.extend(zeros(n1));
        row.extend_from_slice(&v[m2..]);
        vectors.push(row);
    }
    LinearRelation::from_span(m1 + m2, n1 + n2, vectors).expect("block lengths add up")
}

/// Multiplication, unit, comultiplication and counit on one terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusRelations {
    pub mult: LinearRelation,
    pub unit: LinearRelation,
    pub comult: LinearRelation,
    pub counit: LinearRelation,
}

/// Potentials agree and currents add.
pub fn frobenius_relations() -> FrobeniusRelations {
    let q = |x: i64| Q::from_integer(x.into());
    // (φ1, I1, φ2, I2, φ3, I3)
    let mult = LinearRelation::from_constraints(
        4,
        2,
        vec![
            vec![q(1), q(0), q(-1), q(0), q(0), q(0)],
            vec![q(1), q(0), q(0), q(0), q(-1), q(0)],
            vec![q(0), q(1), q(0), q(1), q(0), q(-1)],
        ],
    )
    .expect("six coordinates");
    let unit = LinearRelation::from_constraints(0, 2, vec![vec![q(0), q(1)]]).expect("two coordinates");
    FrobeniusRelations {
        comult: mult.transpose(),
        counit: unit.transpose(),
        mult,
        unit,
    }
}

/// The relation a circuit imposes between its boundary potentials and
/// currents, after eliminating every node potential and edge current.
pub fn blackbox(c: &Circuit) -> LinearRelation {
    let graph = c.apex();
    let (inputs, outputs) = (c.in_map(), c.out_map());
    let (nx, ny) = (inputs.dom().size, outputs.dom().size);
    let (nodes, edges) = (graph.nodes().size, graph.edges().len());
    // Columns: node potentials, edge currents, then the boundary.
    let hidden = nodes + edges;
    let boundary = 2 * (nx + ny);
    let width = hidden + boundary;
    let phi = |n: usize| n;
    let current = |e: usize| nodes + e;
    let terminal = |t: usize| hidden + 2 * t;
    let blank = || vec![Q::zero(); width];
    let mut rows = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        let mut row = blank();
        row[phi(edge.incidence.tgt)] += Q::one();
        row[phi(edge.incidence.src)] -= Q::one();
        row[current(e)] -= edge.label.value();
        rows.push(row);
    }
    let mut balance: Vec<Row> = (0..nodes).map(|_| blank()).collect();
    for (e, edge) in graph.edges().iter().enumerate() {
        balance[edge.incidence.tgt][current(e)] += Q::one();
        balance[edge.incidence.src][current(e)] -= Q::one();
    }
    for x in 0..nx {
        balance[inputs.apply(x)][terminal(x) + 1] += Q::one();
    }
    for y in 0..ny {
        balance[outputs.apply(y)][terminal(nx + y) + 1] -= Q::one();
    }
    rows.extend(balance);
    for (t, node) in inputs.table().iter().chain(outputs.table()).enumerate() {
        let mut row = blank();
        row[terminal(t)] += Q::one();
        row[phi(*node)] -= Q::one();
        rows.push(row);
    }
    let outer = project_out(rows, hidden, boundary);
    LinearRelation::from_constraints(2 * nx, 2 * ny, outer).expect("boundary width")
}

/// Whether every basis vector satisfies every constraint row.
pub fn satisfies(r: &LinearRelation, constraints: &[Row]) -> bool {
    r.basis().iter().all(|v| constraints.iter().all(|c| dot(c, v).is_zero()))
}
