//! Nonassociative monomials as planar binary trees.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::words::FiniteWord;

/// A planar binary tree whose leaves carry variable indices.
///
/// Leaves may repeat; [`Monomial`] is the multilinear subtype.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(var: usize) -> Tree {
        Tree::Leaf(var)
    }

    pub fn node(left: Tree, right: Tree) -> Tree {
        Tree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Replaces the `k`-th leaf (left-to-right) label by `labels[k]`.
    pub fn relabel(&self, labels: &[usize]) -> Tree {
        fn go(t: &Tree, labels: &[usize], next: &mut usize) -> Tree {
            match t {
                Tree::Leaf(_) => {
                    let v = labels[*next];
                    *next += 1;
                    Tree::Leaf(v)
                }
                Tree::Node(l, r) => {
                    let l = go(l, labels, next);
                    Tree::node(l, go(r, labels, next))
                }
            }
        }
        go(self, labels, &mut 0)
    }

    /// All planar binary trees with `n` leaves labeled `1..=n` left to right.
    /// There are Catalan(`n - 1`) of them.
    pub fn shapes(n: usize) -> Vec<Tree> {
        fn build(lo: usize, hi: usize) -> Vec<Tree> {
            if hi - lo == 1 {
                return vec![Tree::Leaf(lo)];
            }
            let mut out = Vec::new();
            for split in lo + 1..hi {
                let lefts = build(lo, split);
                let rights = build(split, hi);
                for (l, r) in lefts.iter().cartesian_product(rights.iter()) {
                    out.push(Tree::node(l.clone(), r.clone()));
                }
            }
            out
        }
        if n == 0 {
            return Vec::new();
        }
        build(1, n + 1)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(v) => write!(f, "x{v}"),
            Tree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// Parses `x3`, `(x1 x2)`, `((x1 x2) x3)`; whitespace between factors is optional.
impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        fn skip(bytes: &[u8], pos: &mut usize) {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        }
        fn term(bytes: &[u8], pos: &mut usize, err: &dyn Fn(usize, &str) -> Error) -> Result<Tree> {
            skip(bytes, pos);
            match bytes.get(*pos) {
                Some(b'x') => {
                    *pos += 1;
                    let start = *pos;
                    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                        *pos += 1;
                    }
                    let digits = std::str::from_utf8(&bytes[start..*pos]).unwrap();
                    digits
                        .parse()
                        .map(Tree::Leaf)
                        .map_err(|_| err(start, "expected a variable index"))
                }
                Some(b'(') => {
                    *pos += 1;
                    let l = term(bytes, pos, err)?;
                    let r = term(bytes, pos, err)?;
                    skip(bytes, pos);
                    if bytes.get(*pos) != Some(&b')') {
                        return Err(err(*pos, "expected ')'"));
                    }
                    *pos += 1;
                    Ok(Tree::node(l, r))
                }
                _ => Err(err(*pos, "expected 'x' or '('")),
            }
        }
        let t = term(bytes, &mut pos, &err)?;
        skip(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "unexpected trailing input"));
        }
        Ok(t)
    }
}

/// A multilinear monomial: a tree whose leaves are `1..=n`, each exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Tree);

impl Monomial {
    pub fn new(tree: Tree) -> Result<Self> {
        let mut leaves = tree.leaves();
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &v)| v != i + 1) {
            return Err(Error::InvalidArgument(format!(
                "{tree} is not multilinear in x1..x{}",
                leaves.len()
            )));
        }
        Ok(Monomial(tree))
    }

    pub fn tree(&self) -> &Tree {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.leaf_count()
    }

    /// Every multilinear monomial of degree `n`: each shape under each
    /// permutation of the variables.
    pub fn all(n: usize) -> impl Iterator<Item = Monomial> {
        let shapes = Tree::shapes(n);
        shapes.into_iter().flat_map(move |shape| {
            (1..=n)
                .permutations(n)
                .map(move |perm| Monomial(shape.relabel(&perm)))
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Monomial::new(s.parse()?)
    }
}

/// Comb decomposition of a monomial: a two-leaf base followed by single
/// variables multiplied on from the left (`0`) or the right (`1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comb {
    pub base: (usize, usize),
    /// Bottom-up: the first entry multiplies the base.
    pub spine: Vec<(u8, usize)>,
}

impl Comb {
    pub fn spine_word(&self) -> FiniteWord {
        FiniteWord::from_letters_unchecked(self.spine.iter().map(|&(side, _)| side).collect())
    }
}

/// The comb shape of `t`, or `None` when some node multiplies two products
/// (or `t` is a single leaf).
pub fn comb_normal_form(t: &Tree) -> Option<Comb> {
    let mut spine = Vec::new();
    let mut node = t;
    loop {
        let Tree::Node(l, r) = node else {
            return None;
        };
        match (l.as_ref(), r.as_ref()) {
            (Tree::Leaf(u), Tree::Leaf(v)) => {
                spine.reverse();
                return Some(Comb {
                    base: (*u, *v),
                    spine,
                });
            }
            (Tree::Leaf(x), inner) => {
                spine.push((0, *x));
                node = inner;
            }
            (inner, Tree::Leaf(x)) => {
                spine.push((1, *x));
                node = inner;
            }
            _ => return None,
        }
    }
}

/// A rational combination of multilinear monomials of a fixed arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultilinearPoly {
    pub fn new(arity: usize) -> Self {
        MultilinearPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, coeff: BigRational, m: Monomial) -> Result<()> {
        if m.arity() != self.arity {
            return Err(Error::InvalidArgument(format!(
                "{m} has arity {}, polynomial has arity {}",
                m.arity(),
                self.arity
            )));
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += coeff;
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn shape_counts_are_catalan() {
        for n in 1..=7 {
            assert_eq!(Tree::shapes(n).len(), catalan(n - 1), "n = {n}");
        }
        assert_eq!(Monomial::all(3).count(), 12);
        assert_eq!(Monomial::all(4).count(), 5 * 24);
    }

    #[test]
    fn parse_and_display() {
        let t: Tree = "((x1 x2) x3)".parse().unwrap();
        assert_eq!(t.to_string(), "((x1 x2) x3)");
        assert_eq!("((x1x2)x3)".parse::<Tree>().unwrap(), t);
        assert!("(x1 x1)".parse::<Monomial>().is_err());
        assert!("(x1 x3)".parse::<Monomial>().is_err());
        assert!("(x1 x2".parse::<Tree>().is_err());
    }

    #[test]
    fn combs() {
        let c = comb_normal_form(&"((x1 x2) x3)".parse().unwrap()).unwrap();
        assert_eq!(c.base, (1, 2));
        assert_eq!(c.spine, vec![(1, 3)]);

        assert_eq!(
            comb_normal_form(&"((x1 x2) (x3 x4))".parse().unwrap()),
            None
        );

        let c = comb_normal_form(&"(x3 (x1 x2))".parse().unwrap()).unwrap();
        assert_eq!(c.base, (1, 2));
        assert_eq!(c.spine, vec![(0, 3)]);

        let c = comb_normal_form(&"(x4 ((x2 x1) x3))".parse().unwrap()).unwrap();
        assert_eq!(c.base, (2, 1));
        assert_eq!(c.spine, vec![(1, 3), (0, 4)]);
        assert_eq!(c.spine_word().to_string(), "10");

        assert_eq!(comb_normal_form(&Tree::leaf(1)), None);
    }

    #[test]
    fn poly_terms_cancel() {
        let m: Monomial = "(x1 x2)".parse().unwrap();
        let mut p = MultilinearPoly::new(2);
        p.add_term(BigRational::from_integer(1.into()), m.clone())
            .unwrap();
        p.add_term(BigRational::from_integer((-1).into()), m)
            .unwrap();
        assert!(p.is_zero());
        assert!(p
            .add_term(BigRational::from_integer(1.into()), "x1".parse().unwrap())
            .is_err());
    }
}
