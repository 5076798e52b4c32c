//! Companions and conjoints of vertical isomorphisms.

use super::{identity_cell, StructuredCospan, TwoMorphism};
use crate::error::{Error, Result};
use crate::finset::FinFunction;
use crate::instances::Instance;

/// A horizontal cell attached to a vertical map `f: a -> b`, with its two
/// squares. For a companion `cell: a -|-> b`, `alpha: cell ⇒ U_b` has
/// verticals `(f, 1)` and `beta: U_a ⇒ cell` has verticals `(1, f)`. For a
/// conjoint `cell: b -|-> a` the roles of the verticals are mirrored:
/// `alpha: cell ⇒ U_b` has verticals `(1, f)` and `beta: U_a ⇒ cell` has
/// verticals `(f, 1)`.
pub struct Companion<X: Instance> {
    pub cell: StructuredCospan<X>,
    pub alpha: TwoMorphism<X>,
    pub beta: TwoMorphism<X>,
}

impl<X: Instance> std::fmt::Debug for Companion<X> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Companion")
            .field("cell", &self.cell)
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .finish()
    }
}

fn require_invertible(f: &FinFunction) -> Result<()> {
    if !f.is_bijection() {
        return Err(Error::NotInvertible(format!("{f} is not a bijection")));
    }
    Ok(())
}

/// `f̂ = L(a) -L(f)-> L(b) <-1- L(b)`.
pub fn companion<X: Instance>(f: &FinFunction) -> Result<Companion<X>> {
    require_invertible(f)?;
    let (a, b) = (f.dom(), f.cod());
    let lf = X::free_map(f);
    let lb = X::free(b);
    let cell = StructuredCospan::new(a, b, lf.clone(), X::identity(&lb))?;
    let alpha = TwoMorphism::new(
        cell.clone(),
        identity_cell(b),
        f.clone(),
        FinFunction::identity(b),
        X::identity(&lb),
    )?;
    let beta = TwoMorphism::new(identity_cell(a), cell.clone(), FinFunction::identity(a), f.clone(), lf)?;
    Ok(Companion { cell, alpha, beta })
}

/// `f̌ = L(b) -1-> L(b) <-L(f)- L(a)`.
pub fn conjoint<X: Instance>(f: &FinFunction) -> Result<Companion<X>> {
    require_invertible(f)?;
    let (a, b) = (f.dom(), f.cod());
    let lf = X::free_map(f);
    let lb = X::free(b);
    let cell = StructuredCospan::new(b, a, X::identity(&lb), lf.clone())?;
    let alpha = TwoMorphism::new(
        cell.clone(),
        identity_cell(b),
        FinFunction::identity(b),
        f.clone(),
        X::identity(&lb),
    )?;
    let beta = TwoMorphism::new(identity_cell(a), cell.clone(), f.clone(), FinFunction::identity(a), lf)?;
    Ok(Companion { cell, alpha, beta })
}
