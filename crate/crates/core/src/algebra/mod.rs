//! The algebra `A` generated by `a` in which every product containing two
//! copies of `a^2` is zero, and its quotients by non-factor tails.
//!
//! Basis: `a` and `a^2 u(L_a, R_a)` for binary words `u`. Products of two
//! elements of degree at least 2 vanish, so `A` is metabelian.

mod basis;
mod context;
mod element;
mod monomial;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use basis::BasisWord;
pub use context::{AlgebraContext, ContextKind};
pub use element::Element;
pub use monomial::{comb_normal_form, Comb, Monomial, MultilinearPoly, Tree};

/// Product of two basis words in `ctx`; `None` when it vanishes.
pub fn mul_basis(ctx: &AlgebraContext, x: &BasisWord, y: &BasisWord) -> Result<Option<BasisWord>> {
    ctx.check_degree(x, y, x.degree() + y.degree())?;
    match x.free_product(y) {
        Some(b) if ctx.admits_basis(&b)? => Ok(Some(b)),
        _ => Ok(None),
    }
}

pub fn mul(ctx: &AlgebraContext, x: &Element, y: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            if let Some(b) = mul_basis(ctx, bx, by)? {
                out.add_term(b, cx * cy);
            }
        }
    }
    Ok(out)
}

/// Evaluates a tree with possibly repeated leaves.
pub fn evaluate_tree<'a, F>(ctx: &AlgebraContext, t: &Tree, subst: &F) -> Result<Element>
where
    F: Fn(usize) -> Option<&'a Element>,
{
    match t {
        Tree::Leaf(v) => subst(*v)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no value for x{v}"))),
        Tree::Node(l, r) => {
            let left = evaluate_tree(ctx, l, subst)?;
            if left.is_zero() {
                // still validate the right subtree's substitution
                evaluate_tree(ctx, r, subst)?;
                return Ok(left);
            }
            let right = evaluate_tree(ctx, r, subst)?;
            mul(ctx, &left, &right)
        }
    }
}

pub fn evaluate(
    ctx: &AlgebraContext,
    m: &Monomial,
    subst: &BTreeMap<usize, Element>,
) -> Result<Element> {
    evaluate_tree(ctx, m.tree(), &|v| subst.get(&v))
}

/// Evaluates with every variable sent to a basis word; `subst[v - 1]` is
/// the value of `x_v`.
pub fn evaluate_basis(
    ctx: &AlgebraContext,
    t: &Tree,
    subst: &[BasisWord],
) -> Result<Option<BasisWord>> {
    match t {
        Tree::Leaf(v) => subst
            .get(v.wrapping_sub(1))
            .cloned()
            .map(Some)
            .ok_or_else(|| Error::InvalidArgument(format!("no value for x{v}"))),
        Tree::Node(l, r) => {
            let (Some(left), Some(right)) = (
                evaluate_basis(ctx, l, subst)?,
                evaluate_basis(ctx, r, subst)?,
            ) else {
                return Ok(None);
            };
            mul_basis(ctx, &left, &right)
        }
    }
}

pub fn evaluate_poly(
    ctx: &AlgebraContext,
    p: &MultilinearPoly,
    subst: &BTreeMap<usize, Element>,
) -> Result<Element> {
    let mut out = Element::zero();
    for (m, c) in p.terms() {
        out = out.add(&evaluate(ctx, m, subst)?.scale(c));
    }
    Ok(out)
}
