//! Isomorphism classes of structured cospans.

use std::fmt;

use super::{hcompose, identity_cell, tensor_cells, StructuredCospan};
use crate::error::Result;
use crate::instances::Instance;

/// An apex isomorphism `c.apex -> d.apex` commuting with both legs, if any.
pub fn find_cospan_iso<X: Instance>(c: &StructuredCospan<X>, d: &StructuredCospan<X>) -> Option<X::Morphism> {
    if c.foot_in() != d.foot_in() || c.foot_out() != d.foot_out() {
        return None;
    }
    let pins: Vec<(usize, usize)> = c
        .in_map()
        .table()
        .iter()
        .zip(d.in_map().table())
        .chain(c.out_map().table().iter().zip(d.out_map().table()))
        .map(|(&p, &q)| (p, q))
        .collect();
    let iso = X::find_isomorphism(c.apex(), d.apex(), &pins)?;
    let commutes = |leg: &X::Morphism, target: &X::Morphism| X::compose(&iso, leg).ok().as_ref() == Some(target);
    (commutes(c.leg_in(), d.leg_in()) && commutes(c.leg_out(), d.leg_out())).then_some(iso)
}

/// A cospan up to leg-preserving apex isomorphism.
///
/// The stored representative has its apex renumbered breadth-first from the
/// legs. Equality runs the constrained isomorphism search.
pub struct CospanIsoClass<X: Instance> {
    representative: StructuredCospan<X>,
}

impl<X: Instance> CospanIsoClass<X> {
    pub fn representative(&self) -> &StructuredCospan<X> {
        &self.representative
    }

    pub fn identity(a: crate::finset::FinSet) -> Self {
        iso_class(&identity_cell(a))
    }
}

impl<X: Instance> Clone for CospanIsoClass<X> {
    fn clone(&self) -> Self {
        CospanIsoClass {
            representative: self.representative.clone(),
        }
    }
}

impl<X: Instance> PartialEq for CospanIsoClass<X> {
    fn eq(&self, other: &Self) -> bool {
        self.representative == other.representative
            || find_cospan_iso(&self.representative, &other.representative).is_some()
    }
}

impl<X: Instance> fmt::Debug for CospanIsoClass<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("CospanIsoClass").field(&self.representative).finish()
    }
}

pub fn iso_class<X: Instance>(c: &StructuredCospan<X>) -> CospanIsoClass<X> {
    let seeds: Vec<usize> = c.in_map().table().iter().chain(c.out_map().table()).copied().collect();
    let renumber = X::canonical_renumbering(c.apex(), &seeds);
    CospanIsoClass {
        representative: c.transport(&renumber).expect("renumbering starts at the apex"),
    }
}

pub fn decat_compose<X: Instance>(k1: &CospanIsoClass<X>, k2: &CospanIsoClass<X>) -> Result<CospanIsoClass<X>> {
    Ok(iso_class(&hcompose(&k1.representative, &k2.representative)?))
}

pub fn decat_tensor<X: Instance>(k1: &CospanIsoClass<X>, k2: &CospanIsoClass<X>) -> CospanIsoClass<X> {
    iso_class(&tensor_cells(&k1.representative, &k2.representative))
}
