use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::FiniteWord;

/// Basis element of `A`: the generator `a`, or `a^2 u(L_a, R_a)`.
///
/// Tail words record operators in application order: letter `0` is `L_a`
/// (`b -> a b`) and `1` is `R_a` (`b -> b a`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisWord {
    Gen,
    Tail(FiniteWord),
}

impl BasisWord {
    pub fn square() -> Self {
        BasisWord::Tail(FiniteWord::empty())
    }

    pub fn degree(&self) -> usize {
        match self {
            BasisWord::Gen => 1,
            BasisWord::Tail(u) => u.len() + 2,
        }
    }

    pub fn tail(&self) -> Option<&FiniteWord> {
        match self {
            BasisWord::Gen => None,
            BasisWord::Tail(u) => Some(u),
        }
    }

    /// Product in `A` before any quotient: `a a = a^2`, `a (a^2 u) = a^2 u0`,
    /// `(a^2 u) a = a^2 u1`, and the product of two tails vanishes.
    pub fn free_product(&self, rhs: &BasisWord) -> Option<BasisWord> {
        match (self, rhs) {
            (BasisWord::Gen, BasisWord::Gen) => Some(BasisWord::square()),
            (BasisWord::Gen, BasisWord::Tail(u)) => Some(BasisWord::Tail(u.append(0))),
            (BasisWord::Tail(u), BasisWord::Gen) => Some(BasisWord::Tail(u.append(1))),
            (BasisWord::Tail(_), BasisWord::Tail(_)) => None,
        }
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisWord::Gen => f.write_str("a"),
            BasisWord::Tail(u) => write!(f, "a2:{u}"),
        }
    }
}

impl FromStr for BasisWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "a" {
            Ok(BasisWord::Gen)
        } else if let Some(bits) = s.strip_prefix("a2:") {
            Ok(BasisWord::Tail(bits.parse()?))
        } else {
            Err(Error::InvalidWord(format!("{s:?} is not a basis word")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let t: BasisWord = "a2:01".parse().unwrap();
        assert_eq!(t.to_string(), "a2:01");
        assert_eq!(t.degree(), 4);
        assert_eq!(BasisWord::square().to_string(), "a2:");
        assert_eq!("a".parse::<BasisWord>().unwrap(), BasisWord::Gen);
        assert!("b".parse::<BasisWord>().is_err());
    }

    #[test]
    fn free_products() {
        let a = BasisWord::Gen;
        let sq = BasisWord::square();
        assert_eq!(a.free_product(&a), Some(sq.clone()));
        assert_eq!(a.free_product(&sq).unwrap().to_string(), "a2:0");
        assert_eq!(sq.free_product(&a).unwrap().to_string(), "a2:1");
        assert_eq!(sq.free_product(&sq), None);
    }
}
