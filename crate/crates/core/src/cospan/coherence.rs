//! Structural 2-morphisms, each computed from universal properties.

use super::{hcompose_with, identity_cell, tensor_cells, unit_cell, StructuredCospan, TwoMorphism};
use crate::error::Result;
use crate::finset::FinSet;
use crate::instances::{FinSetInstance, Instance};

/// `(c1 ⊙ c2) ⊙ c3 ⇒ c1 ⊙ (c2 ⊙ c3)`.
pub fn associator<X: Instance>(
    c1: &StructuredCospan<X>,
    c2: &StructuredCospan<X>,
    c3: &StructuredCospan<X>,
) -> Result<TwoMorphism<X>> {
    let (c12, p12) = hcompose_with(c1, c2)?;
    let (left, p_left) = hcompose_with(&c12, c3)?;
    let (c23, p23) = hcompose_with(c2, c3)?;
    let (right, p_right) = hcompose_with(c1, &c23)?;
    // Apex of c1 ⊙ c2 into the right tower, then the full mediator.
    let x_to = p_right.left.clone();
    let y_to = X::compose(&p_right.right, &p23.left)?;
    let z_to = X::compose(&p_right.right, &p23.right)?;
    let xy_to = X::mediate(&p12, &x_to, &y_to)?;
    let apex_map = X::mediate(&p_left, &xy_to, &z_to)?;
    TwoMorphism::globular(left, right, apex_map)
}

/// `λ_c: U_a ⊙ c ⇒ c`.
pub fn left_unitor<X: Instance>(c: &StructuredCospan<X>) -> Result<TwoMorphism<X>> {
    let (src, po) = hcompose_with(&identity_cell(c.foot_in()), c)?;
    let apex_map = X::mediate(&po, c.leg_in(), &X::identity(c.apex()))?;
    TwoMorphism::globular(src, c.clone(), apex_map)
}

/// `ρ_c: c ⊙ U_b ⇒ c`.
pub fn right_unitor<X: Instance>(c: &StructuredCospan<X>) -> Result<TwoMorphism<X>> {
    let (src, po) = hcompose_with(c, &identity_cell(c.foot_out()))?;
    let apex_map = X::mediate(&po, &X::identity(c.apex()), c.leg_out())?;
    TwoMorphism::globular(src, c.clone(), apex_map)
}

/// `(x + y) + z -> x + (y + z)` from the chosen coproducts.
pub(crate) fn sum_associator<X: Instance>(x: &X::Object, y: &X::Object, z: &X::Object) -> X::Morphism {
    let yz = X::coproduct(y, z);
    let x_yz = X::coproduct(x, &yz.sum);
    let y_to = X::compose(&x_yz.right, &yz.left).expect("injections compose");
    let z_to = X::compose(&x_yz.right, &yz.right).expect("injections compose");
    let xy_to = X::copair(&x_yz.left, &y_to).expect("common codomain");
    X::copair(&xy_to, &z_to).expect("common codomain")
}

/// `0 + x -> x` and `x + 0 -> x`.
pub(crate) fn sum_unitors<X: Instance>(x: &X::Object) -> (X::Morphism, X::Morphism) {
    let id = X::identity(x);
    let bang = X::from_initial(x);
    (
        X::copair(&bang, &id).expect("common codomain"),
        X::copair(&id, &bang).expect("common codomain"),
    )
}

/// `c1 ⊗ c2 ⇒ c2 ⊗ c1`: block swaps on feet and apex.
pub fn braiding<X: Instance>(c1: &StructuredCospan<X>, c2: &StructuredCospan<X>) -> Result<TwoMorphism<X>> {
    TwoMorphism::new(
        tensor_cells(c1, c2),
        tensor_cells(c2, c1),
        FinSetInstance::swap(&c1.foot_in(), &c2.foot_in()),
        FinSetInstance::swap(&c1.foot_out(), &c2.foot_out()),
        X::swap(c1.apex(), c2.apex()),
    )
}

/// `(c1 ⊗ c2) ⊗ c3 ⇒ c1 ⊗ (c2 ⊗ c3)`.
pub fn tensor_associator<X: Instance>(
    c1: &StructuredCospan<X>,
    c2: &StructuredCospan<X>,
    c3: &StructuredCospan<X>,
) -> Result<TwoMorphism<X>> {
    let foot = |a: FinSet, b: FinSet, c: FinSet| sum_associator::<FinSetInstance>(&a, &b, &c);
    TwoMorphism::new(
        tensor_cells(&tensor_cells(c1, c2), c3),
        tensor_cells(c1, &tensor_cells(c2, c3)),
        foot(c1.foot_in(), c2.foot_in(), c3.foot_in()),
        foot(c1.foot_out(), c2.foot_out(), c3.foot_out()),
        sum_associator::<X>(c1.apex(), c2.apex(), c3.apex()),
    )
}

/// `U_0 ⊗ c ⇒ c`.
pub fn tensor_left_unitor<X: Instance>(c: &StructuredCospan<X>) -> Result<TwoMorphism<X>> {
    TwoMorphism::new(
        tensor_cells(&unit_cell(), c),
        c.clone(),
        sum_unitors::<FinSetInstance>(&c.foot_in()).0,
        sum_unitors::<FinSetInstance>(&c.foot_out()).0,
        sum_unitors::<X>(c.apex()).0,
    )
}

/// `c ⊗ U_0 ⇒ c`.
pub fn tensor_right_unitor<X: Instance>(c: &StructuredCospan<X>) -> Result<TwoMorphism<X>> {
    TwoMorphism::new(
        tensor_cells(c, &unit_cell()),
        c.clone(),
        sum_unitors::<FinSetInstance>(&c.foot_in()).1,
        sum_unitors::<FinSetInstance>(&c.foot_out()).1,
        sum_unitors::<X>(c.apex()).1,
    )
}

/// `χ: (c1 ⊗ c2) ⊙ (c3 ⊗ c4) ⇒ (c1 ⊙ c3) ⊗ (c2 ⊙ c4)`.
pub fn interchange<X: Instance>(
    c1: &StructuredCospan<X>,
    c2: &StructuredCospan<X>,
    c3: &StructuredCospan<X>,
    c4: &StructuredCospan<X>,
) -> Result<TwoMorphism<X>> {
    let (src, po) = hcompose_with(&tensor_cells(c1, c2), &tensor_cells(c3, c4))?;
    let (c13, p13) = hcompose_with(c1, c3)?;
    let (c24, p24) = hcompose_with(c2, c4)?;
    let via_left = X::coproduct_map(&p13.left, &p24.left)?;
    let via_right = X::coproduct_map(&p13.right, &p24.right)?;
    let apex_map = X::mediate(&po, &via_left, &via_right)?;
    TwoMorphism::globular(src, tensor_cells(&c13, &c24), apex_map)
}

/// `U_a ⊗ U_b ⇒ U_{a+b}`, the unit part of the interchange.
pub fn box_tensor<X: Instance>(a: FinSet, b: FinSet) -> Result<TwoMorphism<X>> {
    let src = tensor_cells(&identity_cell::<X>(a), &identity_cell::<X>(b));
    let tgt = identity_cell::<X>(FinSet::new(a.size + b.size));
    let apex_map = X::inverse(src.leg_in()).expect("the input leg is the comparison iso");
    TwoMorphism::globular(src, tgt, apex_map)
}
