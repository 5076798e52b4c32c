//! The double category of structured cospans `L(a) -> x <- L(b)` over an
//! [`Instance`].
//!
//! Horizontal composition is by chosen pushout, tensor by chosen coproduct.
//! Every structural cell (associator, unitors, braiding, interchange) is
//! computed from mediating maps, so the coherence laws can be checked as
//! literal equalities of [`TwoMorphism`]s.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{self, FinFunction, FinSet};
use crate::instances::{Instance, Pushout};

mod coherence;
mod companion;
mod iso;

pub use coherence::{
    associator, braiding, box_tensor, interchange, left_unitor, right_unitor, tensor_associator,
    tensor_left_unitor, tensor_right_unitor,
};
pub use companion::{companion, conjoint, Companion};
pub use iso::{decat_compose, decat_tensor, find_cospan_iso, iso_class, CospanIsoClass};

/// A horizontal 1-cell `a -|-> b`: legs `L(a) -> apex <- L(b)`.
pub struct StructuredCospan<X: Instance> {
    foot_in: FinSet,
    foot_out: FinSet,
    apex: X::Object,
    leg_in: X::Morphism,
    leg_out: X::Morphism,
}

impl<X: Instance> Clone for StructuredCospan<X> {
    fn clone(&self) -> Self {
        StructuredCospan {
            foot_in: self.foot_in,
            foot_out: self.foot_out,
            apex: self.apex.clone(),
            leg_in: self.leg_in.clone(),
            leg_out: self.leg_out.clone(),
        }
    }
}

impl<X: Instance> PartialEq for StructuredCospan<X> {
    fn eq(&self, other: &Self) -> bool {
        self.foot_in == other.foot_in
            && self.foot_out == other.foot_out
            && self.apex == other.apex
            && self.leg_in == other.leg_in
            && self.leg_out == other.leg_out
    }
}

impl<X: Instance> fmt::Debug for StructuredCospan<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructuredCospan")
            .field("foot_in", &self.foot_in)
            .field("foot_out", &self.foot_out)
            .field("apex", &self.apex)
            .field("leg_in", &X::underlying_map(&self.leg_in))
            .field("leg_out", &X::underlying_map(&self.leg_out))
            .finish()
    }
}

impl<X: Instance> StructuredCospan<X> {
    pub fn new(foot_in: FinSet, foot_out: FinSet, leg_in: X::Morphism, leg_out: X::Morphism) -> Result<Self> {
        if *X::dom(&leg_in) != X::free(foot_in) || *X::dom(&leg_out) != X::free(foot_out) {
            return Err(Error::MismatchedBoundary("legs must start at the free objects on the feet".into()));
        }
        if X::cod(&leg_in) != X::cod(&leg_out) {
            return Err(Error::MismatchedBoundary("legs land in different apexes".into()));
        }
        Ok(StructuredCospan {
            foot_in,
            foot_out,
            apex: X::cod(&leg_in).clone(),
            leg_in,
            leg_out,
        })
    }

    /// The cospan whose legs have underlying functions `leg_in` and `leg_out`.
    pub fn from_maps(apex: X::Object, leg_in: &FinFunction, leg_out: &FinFunction) -> Result<Self> {
        StructuredCospan::new(
            leg_in.dom(),
            leg_out.dom(),
            X::transpose(leg_in, &apex)?,
            X::transpose(leg_out, &apex)?,
        )
    }

    pub fn foot_in(&self) -> FinSet {
        self.foot_in
    }

    pub fn foot_out(&self) -> FinSet {
        self.foot_out
    }

    pub fn apex(&self) -> &X::Object {
        &self.apex
    }

    pub fn leg_in(&self) -> &X::Morphism {
        &self.leg_in
    }

    pub fn leg_out(&self) -> &X::Morphism {
        &self.leg_out
    }

    pub fn in_map(&self) -> FinFunction {
        X::underlying_map(&self.leg_in)
    }

    pub fn out_map(&self) -> FinFunction {
        X::underlying_map(&self.leg_out)
    }

    /// Transport along an apex isomorphism `iso: apex -> y`.
    pub fn transport(&self, iso: &X::Morphism) -> Result<Self> {
        StructuredCospan::new(
            self.foot_in,
            self.foot_out,
            X::compose(iso, &self.leg_in)?,
            X::compose(iso, &self.leg_out)?,
        )
    }

    /// The same apex with the roles of the feet exchanged.
    pub fn mirror(&self) -> Self {
        StructuredCospan {
            foot_in: self.foot_out,
            foot_out: self.foot_in,
            apex: self.apex.clone(),
            leg_in: self.leg_out.clone(),
            leg_out: self.leg_in.clone(),
        }
    }
}

/// `U_a`: `L(a) -1-> L(a) <-1- L(a)`.
pub fn identity_cell<X: Instance>(a: FinSet) -> StructuredCospan<X> {
    let la = X::free(a);
    let id = X::identity(&la);
    StructuredCospan {
        foot_in: a,
        foot_out: a,
        apex: la,
        leg_in: id.clone(),
        leg_out: id,
    }
}

/// `c1 ⊙ c2`, together with the pushout used to build its apex.
pub fn hcompose_with<X: Instance>(
    c1: &StructuredCospan<X>,
    c2: &StructuredCospan<X>,
) -> Result<(StructuredCospan<X>, Pushout<X>)> {
    if c1.foot_out != c2.foot_in {
        return Err(Error::MismatchedBoundary(format!(
            "output foot of size {} meets input foot of size {}",
            c1.foot_out, c2.foot_in
        )));
    }
    let po = X::pushout(&c1.leg_out, &c2.leg_in)?;
    let cell = StructuredCospan {
        foot_in: c1.foot_in,
        foot_out: c2.foot_out,
        apex: po.apex.clone(),
        leg_in: X::compose(&po.left, &c1.leg_in)?,
        leg_out: X::compose(&po.right, &c2.leg_out)?,
    };
    Ok((cell, po))
}

/// Horizontal composite: first `c1`, then `c2`.
pub fn hcompose<X: Instance>(c1: &StructuredCospan<X>, c2: &StructuredCospan<X>) -> Result<StructuredCospan<X>> {
    hcompose_with(c1, c2).map(|(c, _)| c)
}

/// `L(a) + L(a') -> L(a + a')`, the canonical comparison, and its inverse.
fn free_sum_comparison<X: Instance>(a: FinSet, b: FinSet) -> (X::Morphism, X::Morphism) {
    let inj = finset::coproduct(a, b);
    let forward = X::copair(&X::free_map(&inj.left), &X::free_map(&inj.right))
        .expect("free images of the injections share a codomain");
    let backward = X::inverse(&forward).expect("L preserves coproducts");
    (forward, backward)
}

/// The tensor `c1 ⊗ c2`: feet and apex are chosen coproducts.
pub fn tensor_cells<X: Instance>(c1: &StructuredCospan<X>, c2: &StructuredCospan<X>) -> StructuredCospan<X> {
    let leg = |l1: &X::Morphism, l2: &X::Morphism, a: FinSet, b: FinSet| {
        let (_, back) = free_sum_comparison::<X>(a, b);
        let sum = X::coproduct_map(l1, l2).expect("coproduct of legs");
        X::compose(&sum, &back).expect("comparison lands in the sum of free objects")
    };
    let leg_in = leg(&c1.leg_in, &c2.leg_in, c1.foot_in, c2.foot_in);
    let leg_out = leg(&c1.leg_out, &c2.leg_out, c1.foot_out, c2.foot_out);
    StructuredCospan {
        foot_in: finset::coproduct(c1.foot_in, c2.foot_in).sum,
        foot_out: finset::coproduct(c1.foot_out, c2.foot_out).sum,
        apex: X::cod(&leg_in).clone(),
        leg_in,
        leg_out,
    }
}

/// The monoidal unit `U_0`.
pub fn unit_cell<X: Instance>() -> StructuredCospan<X> {
    identity_cell(FinSet::EMPTY)
}

/// A square `src ⇒ tgt` with vertical maps `alpha` (input feet), `beta`
/// (output feet) and `apex_map` between apexes.
pub struct TwoMorphism<X: Instance> {
    src: StructuredCospan<X>,
    tgt: StructuredCospan<X>,
    alpha: FinFunction,
    beta: FinFunction,
    apex_map: X::Morphism,
}

impl<X: Instance> Clone for TwoMorphism<X> {
    fn clone(&self) -> Self {
        TwoMorphism {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            apex_map: self.apex_map.clone(),
        }
    }
}

impl<X: Instance> PartialEq for TwoMorphism<X> {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.alpha == other.alpha
            && self.beta == other.beta
            && self.apex_map == other.apex_map
    }
}

impl<X: Instance> fmt::Debug for TwoMorphism<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoMorphism")
            .field("src", &self.src)
            .field("tgt", &self.tgt)
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .field("apex_map", &self.apex_map)
            .finish()
    }
}

impl<X: Instance> TwoMorphism<X> {
    /// Checks shapes and both squares `f∘i = i'∘L(α)`, `f∘o = o'∘L(β)`.
    pub fn new(
        src: StructuredCospan<X>,
        tgt: StructuredCospan<X>,
        alpha: FinFunction,
        beta: FinFunction,
        apex_map: X::Morphism,
    ) -> Result<Self> {
        let t = TwoMorphism {
            src,
            tgt,
            alpha,
            beta,
            apex_map,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.dom() != self.src.foot_in
            || self.alpha.cod() != self.tgt.foot_in
            || self.beta.dom() != self.src.foot_out
            || self.beta.cod() != self.tgt.foot_out
        {
            return Err(Error::MismatchedBoundary("vertical maps do not run between the feet".into()));
        }
        if *X::dom(&self.apex_map) != self.src.apex || *X::cod(&self.apex_map) != self.tgt.apex {
            return Err(Error::MismatchedBoundary("apex map does not run between the apexes".into()));
        }
        let square = |leg: &X::Morphism, leg2: &X::Morphism, v: &FinFunction| -> Result<bool> {
            Ok(X::compose(&self.apex_map, leg)? == X::compose(leg2, &X::free_map(v))?)
        };
        if !square(&self.src.leg_in, &self.tgt.leg_in, &self.alpha)? {
            return Err(Error::InvalidMorphism("input square does not commute".into()));
        }
        if !square(&self.src.leg_out, &self.tgt.leg_out, &self.beta)? {
            return Err(Error::InvalidMorphism("output square does not commute".into()));
        }
        Ok(())
    }

    /// The identity square on a cell.
    pub fn identity(c: &StructuredCospan<X>) -> Self {
        TwoMorphism {
            src: c.clone(),
            tgt: c.clone(),
            alpha: FinFunction::identity(c.foot_in),
            beta: FinFunction::identity(c.foot_out),
            apex_map: X::identity(&c.apex),
        }
    }

    /// `U_f: U_a ⇒ U_b` for a vertical map `f: a -> b`.
    pub fn unit_of(f: &FinFunction) -> Self {
        TwoMorphism {
            src: identity_cell(f.dom()),
            tgt: identity_cell(f.cod()),
            alpha: f.clone(),
            beta: f.clone(),
            apex_map: X::free_map(f),
        }
    }

    /// A globular cell `src ⇒ tgt` with identity feet maps.
    pub fn globular(src: StructuredCospan<X>, tgt: StructuredCospan<X>, apex_map: X::Morphism) -> Result<Self> {
        let (a, b) = (src.foot_in, src.foot_out);
        TwoMorphism::new(src, tgt, FinFunction::identity(a), FinFunction::identity(b), apex_map)
    }

    pub fn src(&self) -> &StructuredCospan<X> {
        &self.src
    }

    pub fn tgt(&self) -> &StructuredCospan<X> {
        &self.tgt
    }

    pub fn alpha(&self) -> &FinFunction {
        &self.alpha
    }

    pub fn beta(&self) -> &FinFunction {
        &self.beta
    }

    pub fn apex_map(&self) -> &X::Morphism {
        &self.apex_map
    }

    pub fn is_globular(&self) -> bool {
        self.alpha == FinFunction::identity(self.src.foot_in) && self.beta == FinFunction::identity(self.src.foot_out)
    }

    /// The inverse square, when all three components are invertible.
    pub fn inverse(&self) -> Result<Self> {
        let not_inv = || Error::NotInvertible("2-morphism has a non-invertible component".into());
        TwoMorphism::new(
            self.tgt.clone(),
            self.src.clone(),
            self.alpha.inverse().ok_or_else(not_inv)?,
            self.beta.inverse().ok_or_else(not_inv)?,
            X::inverse(&self.apex_map).ok_or_else(not_inv)?,
        )
    }
}

/// Vertical composite: first `t1`, then `t2`.
pub fn vcompose<X: Instance>(t1: &TwoMorphism<X>, t2: &TwoMorphism<X>) -> Result<TwoMorphism<X>> {
    if t1.tgt != t2.src {
        return Err(Error::MismatchedBoundary("target cell of the first square is not the source of the second".into()));
    }
    Ok(TwoMorphism {
        src: t1.src.clone(),
        tgt: t2.tgt.clone(),
        alpha: finset::compose(&t2.alpha, &t1.alpha)?,
        beta: finset::compose(&t2.beta, &t1.beta)?,
        apex_map: X::compose(&t2.apex_map, &t1.apex_map)?,
    })
}

/// Vertical composite of a nonempty stack, top to bottom.
pub fn vcompose_all<X: Instance>(stack: &[&TwoMorphism<X>]) -> Result<TwoMorphism<X>> {
    let (first, rest) = stack
        .split_first()
        .ok_or_else(|| Error::MismatchedBoundary("empty stack of 2-morphisms".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, t| vcompose(&acc, t))
}

/// Horizontal composite `t1 ⊙ t2`; the apex map is the pushout mediator.
pub fn hcompose2<X: Instance>(t1: &TwoMorphism<X>, t2: &TwoMorphism<X>) -> Result<TwoMorphism<X>> {
    if t1.beta != t2.alpha {
        return Err(Error::MismatchedBoundary("shared vertical maps of adjacent squares differ".into()));
    }
    let (src, po) = hcompose_with(&t1.src, &t2.src)?;
    let (tgt, po_tgt) = hcompose_with(&t1.tgt, &t2.tgt)?;
    let via_left = X::compose(&po_tgt.left, &t1.apex_map)?;
    let via_right = X::compose(&po_tgt.right, &t2.apex_map)?;
    let apex_map = X::mediate(&po, &via_left, &via_right)?;
    TwoMorphism::new(src, tgt, t1.alpha.clone(), t2.beta.clone(), apex_map)
}

/// `t1 ⊗ t2`: blockwise on feet and apexes.
pub fn tensor2<X: Instance>(t1: &TwoMorphism<X>, t2: &TwoMorphism<X>) -> Result<TwoMorphism<X>> {
    TwoMorphism::new(
        tensor_cells(&t1.src, &t2.src),
        tensor_cells(&t1.tgt, &t2.tgt),
        finset::tensor(&t1.alpha, &t2.alpha),
        finset::tensor(&t1.beta, &t2.beta),
        X::coproduct_map(&t1.apex_map, &t2.apex_map)?,
    )
}
