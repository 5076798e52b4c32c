//! Special commutative Frobenius monoids on every object, built from the
//! fold map `∇: a + a -> a` and `!: 0 -> a`, and a checker for their laws.

use std::fmt;

use crate::cospan::{companion, find_cospan_iso, hcompose, identity_cell, tensor_cells, StructuredCospan};
use crate::error::Result;
use crate::finset::{FinFunction, FinSet};
use crate::instances::{FinSetInstance, Instance};

pub struct FrobeniusKit<X: Instance> {
    pub object: FinSet,
    /// `L(a + a) -L(∇)-> L(a) <-1- L(a)`.
    pub mult: StructuredCospan<X>,
    /// `L(0) -L(!)-> L(a) <-1- L(a)`.
    pub unit: StructuredCospan<X>,
    pub comult: StructuredCospan<X>,
    pub counit: StructuredCospan<X>,
}

/// The structured cospan `L(a) -> L(s) <- L(b)` of a plain cospan of sets.
pub fn from_plain<X: Instance>(c: &StructuredCospan<FinSetInstance>) -> StructuredCospan<X> {
    StructuredCospan::new(c.foot_in(), c.foot_out(), X::free_map(c.leg_in()), X::free_map(c.leg_out()))
        .expect("free images of a cospan form a cospan")
}

pub fn frobenius_generators<X: Instance>(a: FinSet) -> FrobeniusKit<X> {
    let plain = |leg_in: FinFunction| {
        StructuredCospan::<FinSetInstance>::new(leg_in.dom(), a, leg_in, FinFunction::identity(a))
            .expect("legs land in a")
    };
    let mult = from_plain::<X>(&plain(FinFunction::fold(a)));
    let unit = from_plain::<X>(&plain(FinFunction::initial(a)));
    FrobeniusKit {
        object: a,
        comult: mult.mirror(),
        counit: unit.mirror(),
        mult,
        unit,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: &'static str,
    pub holds: bool,
    /// Underlying apex bijections witnessing each equation of the law.
    pub witnesses: Vec<FinFunction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub object: FinSet,
    pub laws: Vec<LawCheck>,
}

impl FrobeniusReport {
    pub fn all_hold(&self) -> bool {
        self.laws.iter().all(|l| l.holds)
    }
}

impl fmt::Display for FrobeniusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "object of size {}", self.object.size)?;
        for law in &self.laws {
            write!(f, "{:<15} {}", law.law, if law.holds { "holds" } else { "FAILS" })?;
            for w in &law.witnesses {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn law<X: Instance>(
    name: &'static str,
    equations: Vec<(StructuredCospan<X>, StructuredCospan<X>)>,
) -> LawCheck {
    let mut witnesses = Vec::new();
    let mut holds = true;
    for (lhs, rhs) in &equations {
        match find_cospan_iso(lhs, rhs) {
            Some(iso) => witnesses.push(X::underlying_map(&iso)),
            None => holds = false,
        }
    }
    LawCheck { law: name, holds, witnesses }
}

/// Checks the nine laws of a special commutative Frobenius monoid on `a`,
/// each up to isomorphism of cospans.
pub fn check_frobenius<X: Instance>(a: FinSet) -> Result<FrobeniusReport> {
    let k = frobenius_generators::<X>(a);
    let id = identity_cell::<X>(a);
    let t = |x: &StructuredCospan<X>, y: &StructuredCospan<X>| tensor_cells(x, y);
    let swap = companion::<X>(&FinSetInstance::swap(&a, &a))?.cell;
    let (mu, eta, delta, eps) = (&k.mult, &k.unit, &k.comult, &k.counit);
    let laws = vec![
        law("associativity", vec![(hcompose(&t(mu, &id), mu)?, hcompose(&t(&id, mu), mu)?)]),
        law("left-unit", vec![(hcompose(&t(eta, &id), mu)?, id.clone())]),
        law("right-unit", vec![(hcompose(&t(&id, eta), mu)?, id.clone())]),
        law("coassociativity", vec![(hcompose(delta, &t(delta, &id))?, hcompose(delta, &t(&id, delta))?)]),
        law("left-counit", vec![(hcompose(delta, &t(eps, &id))?, id.clone())]),
        law("right-counit", vec![(hcompose(delta, &t(&id, eps))?, id.clone())]),
        law("commutativity", vec![(hcompose(&swap, mu)?, mu.clone())]),
        law(
            "frobenius",
            vec![
                (hcompose(&t(delta, &id), &t(&id, mu))?, hcompose(mu, delta)?),
                (hcompose(&t(&id, delta), &t(mu, &id))?, hcompose(mu, delta)?),
            ],
        ),
        law("special", vec![(hcompose(delta, mu)?, id)]),
    ];
    Ok(FrobeniusReport { object: a, laws })
}
