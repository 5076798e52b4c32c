//! Mass-action dynamics of open Petri nets with rates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cospan::{hcompose, hcompose_with, StructuredCospan};
use crate::error::{Error, Result};
use crate::finset::FinFunction;
use crate::instances::{PetriRatesInstance, PetriWithRates};
use crate::matrix::{nullspace, Row, Q};

pub type OpenDynamics = StructuredCospan<PetriRatesInstance>;

/// Nonnegative rational concentrations, one per place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concentration(Vec<Q>);

impl Concentration {
    pub fn new(values: Vec<Q>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidObject(format!("concentration {v} at place {i} is negative")));
        }
        Ok(Concentration(values))
    }

    pub fn zero(places: usize) -> Self {
        Concentration(vec![Q::zero(); places])
    }

    pub fn values(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x ∘ f`, the concentrations seen through a map into the places.
    pub fn pullback(&self, f: &FinFunction) -> Concentration {
        Concentration(f.table().iter().map(|&s| self.0[s].clone()).collect())
    }
}

impl fmt::Display for Concentration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.0)
    }
}

fn write_vector(f: &mut fmt::Formatter<'_>, v: &[Q]) -> fmt::Result {
    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
    write!(f, "({})", cells.join(", "))
}

fn check_length(p: &PetriWithRates, x: &Concentration) -> Result<()> {
    if x.len() != p.places().size {
        return Err(Error::InvalidObject(format!(
            "{} concentrations for {} places",
            x.len(),
            p.places().size
        )));
    }
    Ok(())
}

/// The rate at which each transition fires: `r(τ) Π x_s^{s(τ)_s}`.
pub fn firing_rates(p: &PetriWithRates, x: &Concentration) -> Result<Vec<Q>> {
    check_length(p, x)?;
    Ok(p.edges()
        .iter()
        .map(|e| {
            e.incidence
                .input
                .support()
                .fold(e.label.value().clone(), |acc, (s, k)| acc * num_traits::pow(x.0[s].clone(), k))
        })
        .collect())
}

/// `v_s(x) = Σ_τ r(τ) (t(τ)_s − s(τ)_s) Π x^{s(τ)}`.
pub fn vector_field(p: &PetriWithRates, x: &Concentration) -> Result<Vec<Q>> {
    let flux = firing_rates(p, x)?;
    let mut v = vec![Q::zero(); p.places().size];
    for (t, f) in flux.iter().enumerate() {
        for (s, net) in stoichiometry_column(p, t).into_iter().enumerate() {
            if net != 0 {
                v[s] += f * Q::from_integer(net.into());
            }
        }
    }
    Ok(v)
}

fn stoichiometry_column(p: &PetriWithRates, t: usize) -> Vec<i64> {
    let (src, tgt) = (p.source(t).counts(), p.target(t).counts());
    src.iter().zip(tgt).map(|(&a, &b)| b as i64 - a as i64).collect()
}

/// The places-by-transitions matrix with entries `t(τ)_s − s(τ)_s`.
pub fn stoichiometry(p: &PetriWithRates) -> Vec<Vec<i64>> {
    let columns: Vec<Vec<i64>> = (0..p.transitions().size).map(|t| stoichiometry_column(p, t)).collect();
    (0..p.places().size).map(|s| columns.iter().map(|c| c[s]).collect()).collect()
}

/// A basis of the linear functionals `c` with `cᵀ(t(τ) − s(τ)) = 0` for all `τ`.
pub fn conservation_laws(p: &PetriWithRates) -> Vec<Row> {
    let rows = (0..p.transitions().size)
        .map(|t| stoichiometry_column(p, t).into_iter().map(|k| Q::from_integer(k.into())).collect())
        .collect();
    nullspace(rows, p.places().size)
}

/// A polynomial in the place concentrations, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Vec<usize>, Q>,
}

impl Polynomial {
    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exponents: Vec<usize>, coefficient: Q) {
        let entry = self.terms.entry(exponents.clone()).or_insert_with(Q::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        let mut out = Polynomial::default();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), a.clone());
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (m, a)| {
            let monomial = m
                .iter()
                .zip(x)
                .fold(Q::one(), |p, (&k, xi)| p * num_traits::pow(xi.clone(), k));
            acc + a * monomial
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, a)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(s, &k)| if k == 1 { format!("x{s}") } else { format!("x{s}^{k}") })
                    .collect();
                if vars.is_empty() {
                    a.to_string()
                } else {
                    format!("{a}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The vector field as one polynomial per place.
pub fn symbolic_field(p: &PetriWithRates) -> Vec<Polynomial> {
    let mut field = vec![Polynomial::default(); p.places().size];
    for (t, e) in p.edges().iter().enumerate() {
        let exponents = e.incidence.input.counts().to_vec();
        for (s, net) in stoichiometry_column(p, t).into_iter().enumerate() {
            if net != 0 {
                field[s].add_term(exponents.clone(), e.label.value() * Q::from_integer(net.into()));
            }
        }
    }
    field
}

/// `⟨c, v⟩` as a polynomial.
pub fn pair_with(c: &[Q], field: &[Polynomial]) -> Polynomial {
    c.iter()
        .zip(field)
        .fold(Polynomial::default(), |acc, (ci, v)| acc.add(&v.scale(ci)))
}

pub fn is_steady(p: &PetriWithRates, x: &Concentration) -> Result<bool> {
    Ok(vector_field(p, x)?.iter().all(Zero::is_zero))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerStep {
    pub state: Concentration,
    /// Whether some coordinate went negative and was set to zero.
    pub clamped: bool,
}

/// `x + h v(x)`, clamped at zero.
pub fn euler_step(p: &PetriWithRates, x: &Concentration, h: &Q) -> Result<EulerStep> {
    if !h.is_positive() {
        return Err(Error::InvalidObject(format!("step size {h} is not positive")));
    }
    let v = vector_field(p, x)?;
    let mut clamped = false;
    let state = x
        .0
        .iter()
        .zip(&v)
        .map(|(xi, vi)| {
            let next = xi + h * vi;
            if next.is_negative() {
                clamped = true;
                Q::zero()
            } else {
                next
            }
        })
        .collect();
    Ok(EulerStep {
        state: Concentration(state),
        clamped,
    })
}

/// `steps` Euler steps, reporting whether any of them clamped.
pub fn euler(p: &PetriWithRates, x: &Concentration, h: &Q, steps: usize) -> Result<EulerStep> {
    let mut current = EulerStep {
        state: x.clone(),
        clamped: false,
    };
    for _ in 0..steps {
        let next = euler_step(p, &current.state, h)?;
        current = EulerStep {
            state: next.state,
            clamped: current.clamped || next.clamped,
        };
    }
    Ok(current)
}

pub fn compose_dynamics(d1: &OpenDynamics, d2: &OpenDynamics) -> Result<OpenDynamics> {
    hcompose(d1, d2)
}

/// Sums `v` over the fibres of `f`.
pub fn pushforward(f: &FinFunction, v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); f.cod().size];
    for (i, &j) in f.table().iter().enumerate() {
        out[j] += &v[i];
    }
    out
}

/// The composite field at `x` assembled from the parts: each part is
/// evaluated on `x` pulled back along its pushout leg and pushed forward.
pub struct GluedField {
    pub composite: OpenDynamics,
    pub direct: Vec<Q>,
    pub from_parts: Vec<Q>,
}

pub fn glued_field(d1: &OpenDynamics, d2: &OpenDynamics, x: &Concentration) -> Result<GluedField> {
    let (composite, po) = hcompose_with(d1, d2)?;
    let direct = vector_field(composite.apex(), x)?;
    let (p1, p2) = (po.left.node_map(), po.right.node_map());
    let v1 = vector_field(d1.apex(), &x.pullback(p1))?;
    let v2 = vector_field(d2.apex(), &x.pullback(p2))?;
    let from_parts = pushforward(p1, &v1)
        .into_iter()
        .zip(pushforward(p2, &v2))
        .map(|(a, b)| a + b)
        .collect();
    Ok(GluedField {
        composite,
        direct,
        from_parts,
    })
}

/// Prints a field vector as `(a, b, ...)`.
pub fn format_vector(v: &[Q]) -> String {
    struct V<'a>(&'a [Q]);
    impl fmt::Display for V<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_vector(f, self.0)
        }
    }
    V(v).to_string()
}
