use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraContext, BasisWord};
use crate::error::Result;

/// A finite rational combination of basis words, kept reduced: no zero
/// coefficients and, once built through a context, no basis words that
/// the context kills.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisWord, BigRational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn gen() -> Self {
        Element::monomial(BasisWord::Gen)
    }

    /// The class of `b` in `ctx`: zero if `b` lies in the ideal.
    pub fn basis(ctx: &AlgebraContext, b: BasisWord) -> Result<Self> {
        Ok(if ctx.admits_basis(&b)? {
            Element::monomial(b)
        } else {
            Element::zero()
        })
    }

    fn monomial(b: BasisWord) -> Self {
        Element {
            terms: BTreeMap::from([(b, BigRational::one())]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &BasisWord) -> BigRational {
        self.terms.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coeff * b` without consulting a context.
    pub fn add_term(&mut self, b: BasisWord, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Element {
        if factor.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c * factor))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Degree of a homogeneous nonzero element.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(BasisWord::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigRational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
