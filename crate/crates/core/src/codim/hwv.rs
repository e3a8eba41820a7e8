//! Highest weight vectors for the shapes `(n)` and `(n-1, 1)` on one comb
//! shape, and the multiplicities they witness.
//!
//! For a spine word `s` of length `n - 2` (letter `0`: multiply on the
//! left, `1`: on the right):
//!
//! * `f`  — base `(x1 x1)`, every spine slot `x1` (shape `(n)`);
//! * `g0` — `(x1 x2 - x2 x1)` followed by the spine in `x1`;
//! * `gi` — base `(x1 x1)` with spine slot `i` holding `x2`, minus the same
//!   comb with `x1` and `x2` swapped between the base-left slot and slot `i`.
//!
//! `x1` occurs `n - 1` times, so whether such a polynomial is an identity is
//! decided by the probes `x1 = a` with `x2` in `{a, a^2 v}`, and `x2 = a`
//! with a single occurrence of `x1` replaced by `a^2 v` (summed over
//! occurrences). Terms with two tails vanish, and longer `v` add nothing
//! for the same reason as in the codimension reduction.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{rank_parallel, SparseRow};
use crate::algebra::{evaluate_tree, AlgebraContext, BasisWord, Element, Tree};
use crate::error::{Error, Result};
use crate::words::FiniteWord;

/// Default longest `v` in the probes `a^2 v`.
pub const DEFAULT_PROBE_LEN: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HwvKind {
    Row,
    G0,
    G(usize),
}

/// One evaluation of a highest weight vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub label: String,
    pub value: String,
    #[serde(skip)]
    pub element: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HwvReport {
    pub kind: HwvKind,
    pub n: usize,
    pub spine: String,
    pub probes: Vec<Probe>,
    pub is_identity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub m_row: usize,
    pub m_hook: usize,
}

fn comb(base: (usize, usize), spine: &FiniteWord, labels: &[usize]) -> Tree {
    let mut t = Tree::node(Tree::leaf(base.0), Tree::leaf(base.1));
    for (&side, &label) in spine.letters().iter().zip(labels) {
        t = if side == 0 {
            Tree::node(Tree::leaf(label), t)
        } else {
            Tree::node(t, Tree::leaf(label))
        };
    }
    t
}

/// Signed comb terms of the requested vector.
fn terms(kind: HwvKind, spine: &FiniteWord) -> Vec<(i64, Tree)> {
    let k = spine.len();
    let ones = vec![1; k];
    match kind {
        HwvKind::Row => vec![(1, comb((1, 1), spine, &ones))],
        HwvKind::G0 => vec![
            (1, comb((1, 2), spine, &ones)),
            (-1, comb((2, 1), spine, &ones)),
        ],
        HwvKind::G(i) => {
            let mut with_x2 = ones.clone();
            with_x2[i - 1] = 2;
            vec![
                (1, comb((1, 1), spine, &with_x2)),
                (-1, comb((2, 1), spine, &ones)),
            ]
        }
    }
}

fn check_shape(n: usize, spine: &FiniteWord) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "highest weight vectors need n >= 2".into(),
        ));
    }
    if spine.len() != n - 2 {
        return Err(Error::InvalidArgument(format!(
            "spine {spine} has length {}, expected {}",
            spine.len(),
            n - 2
        )));
    }
    Ok(())
}

fn probe_words(ctx: &AlgebraContext, n: usize, probe_len: usize) -> Result<Vec<FiniteWord>> {
    // the value has degree n + 1 + |v|
    let longest = probe_len.min(ctx.max_degree().saturating_sub(n + 1));
    let mut out = Vec::new();
    for len in 0..=longest {
        out.extend(ctx.admitted_words(len)?);
    }
    Ok(out)
}

fn scalar(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Value of a signed tree sum with `x1 = a` and `x2 = value_x2`.
fn eval_plain(ctx: &AlgebraContext, terms: &[(i64, Tree)], x2: &Element) -> Result<Element> {
    let gen = Element::gen();
    let mut out = Element::zero();
    for (c, t) in terms {
        let v = evaluate_tree(ctx, t, &|var| match var {
            1 => Some(&gen),
            2 => Some(x2),
            _ => None,
        })?;
        out = out.add(&v.scale(&scalar(*c)));
    }
    Ok(out)
}

/// Linear part in `x1 = a + t a^2 v`, with `x2 = a`.
fn eval_linearized(ctx: &AlgebraContext, terms: &[(i64, Tree)], tail: &Element) -> Result<Element> {
    let gen = Element::gen();
    let mut out = Element::zero();
    for (c, t) in terms {
        let labels = t.leaves();
        let positional = t.relabel(&(0..labels.len()).collect::<Vec<_>>());
        for (slot, &var) in labels.iter().enumerate() {
            if var != 1 {
                continue;
            }
            let v = evaluate_tree(ctx, &positional, &|pos| {
                Some(if pos == slot { tail } else { &gen })
            })?;
            out = out.add(&v.scale(&scalar(*c)));
        }
    }
    Ok(out)
}

fn probes(
    ctx: &AlgebraContext,
    kind: HwvKind,
    n: usize,
    spine: &FiniteWord,
    probe_len: usize,
) -> Result<Vec<Probe>> {
    let terms = terms(kind, spine);
    let mut out = Vec::new();
    let mut push = |label: String, element: Element| {
        out.push(Probe {
            label,
            value: element.to_string(),
            element,
        })
    };
    push(
        "x1=a, x2=a".into(),
        eval_plain(ctx, &terms, &Element::gen())?,
    );
    for v in probe_words(ctx, n, probe_len)? {
        let tail = Element::basis(ctx, BasisWord::Tail(v.clone()))?;
        push(format!("x1=a, x2=a2:{v}"), eval_plain(ctx, &terms, &tail)?);
        push(
            format!("x1=a+t*a2:{v} (linear in t), x2=a"),
            eval_linearized(ctx, &terms, &tail)?,
        );
    }
    Ok(out)
}

/// Builds `g0` (`index = 0`) or `g_index` on the comb shape `spine` and
/// evaluates it on the probe set, with `v` up to `probe_len`.
pub fn hwv_check(
    ctx: &AlgebraContext,
    n: usize,
    spine: &FiniteWord,
    index: usize,
    probe_len: usize,
) -> Result<HwvReport> {
    check_shape(n, spine)?;
    if index > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "spine slot {index} out of range 0..={}",
            n - 2
        )));
    }
    let kind = if index == 0 {
        HwvKind::G0
    } else {
        HwvKind::G(index)
    };
    report(ctx, kind, n, spine, probe_len)
}

fn report(
    ctx: &AlgebraContext,
    kind: HwvKind,
    n: usize,
    spine: &FiniteWord,
    probe_len: usize,
) -> Result<HwvReport> {
    let probes = probes(ctx, kind, n, spine, probe_len)?;
    let is_identity = probes.iter().all(|p| p.element.is_zero());
    Ok(HwvReport {
        kind,
        n,
        spine: spine.to_string(),
        probes,
        is_identity,
    })
}

/// Rank of the span of highest weight vectors modulo the identities of
/// `ctx`, from their probe values.
fn probe_rank(reports: &[HwvReport]) -> usize {
    let keys: BTreeSet<(usize, &BasisWord)> = reports
        .iter()
        .flat_map(|r| {
            r.probes
                .iter()
                .enumerate()
                .flat_map(|(i, p)| p.element.terms().map(move |(b, _)| (i, b)))
        })
        .collect();
    let index: BTreeMap<_, _> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let rows = reports
        .iter()
        .map(|r| {
            SparseRow::from_rationals(r.probes.iter().enumerate().flat_map(|(i, p)| {
                let index = &index;
                p.element
                    .terms()
                    .map(move |(b, c)| (index[&(i, b)], c.clone()))
            }))
        })
        .collect();
    rank_parallel(rows, 1)
}

/// `m_(n)` and `m_(n-1,1)` restricted to the comb shape `spine`.
///
/// For `n = 2` the hook is `(1, 1)` and only `g0` exists.
pub fn multiplicity_report(
    ctx: &AlgebraContext,
    n: usize,
    spine: &FiniteWord,
) -> Result<Multiplicity> {
    check_shape(n, spine)?;
    let row = report(ctx, HwvKind::Row, n, spine, DEFAULT_PROBE_LEN)?;
    let mut hooks = vec![report(ctx, HwvKind::G0, n, spine, DEFAULT_PROBE_LEN)?];
    if n >= 3 {
        hooks.push(report(ctx, HwvKind::G(1), n, spine, DEFAULT_PROBE_LEN)?);
    }
    Ok(Multiplicity {
        m_row: probe_rank(&[row]),
        m_hook: probe_rank(&hooks),
    })
}

impl HwvReport {
    /// Probe values as a vector, for comparing two reports.
    pub fn values(&self) -> Vec<&Element> {
        self.probes.iter().map(|p| &p.element).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free() -> AlgebraContext {
        AlgebraContext::free(32).unwrap()
    }

    fn w(s: &str) -> FiniteWord {
        s.parse().unwrap()
    }

    fn tail(ctx: &AlgebraContext, bits: &str) -> Element {
        Element::basis(ctx, BasisWord::Tail(w(bits))).unwrap()
    }

    #[test]
    fn g0_on_square() {
        let ctx = free();
        let spine = w("01");
        let r = hwv_check(&ctx, 4, &spine, 0, 0).unwrap();
        let probe = r.probes.iter().find(|p| p.label == "x1=a, x2=a2:").unwrap();
        let expected = tail(&ctx, "001").sub(&tail(&ctx, "101"));
        assert_eq!(probe.element, expected);
        assert!(!r.is_identity);
    }

    #[test]
    fn gi_agree_for_all_slots() {
        let ctx = free();
        for spine in FiniteWord::all_of_length(3) {
            let g1 = hwv_check(&ctx, 5, &spine, 1, 2).unwrap();
            for i in 2..=3 {
                let gi = hwv_check(&ctx, 5, &spine, i, 2).unwrap();
                assert_eq!(gi.values(), g1.values(), "spine {spine}, slot {i}");
            }
        }
    }

    #[test]
    fn free_multiplicities() {
        let ctx = free();
        for spine in FiniteWord::all_of_length(2) {
            assert_eq!(
                multiplicity_report(&ctx, 4, &spine).unwrap(),
                Multiplicity {
                    m_row: 1,
                    m_hook: 2
                }
            );
        }
        assert_eq!(
            multiplicity_report(&ctx, 2, &FiniteWord::empty()).unwrap(),
            Multiplicity {
                m_row: 1,
                m_hook: 1
            }
        );
    }

    #[test]
    fn dead_shape_in_constant_word() {
        let ctx = AlgebraContext::quotient("periodic:0".parse().unwrap(), 32).unwrap();
        assert_eq!(
            multiplicity_report(&ctx, 5, &w("010")).unwrap(),
            Multiplicity {
                m_row: 0,
                m_hook: 0
            }
        );
        assert!(hwv_check(&ctx, 5, &w("010"), 0, 2).unwrap().is_identity);
    }

    #[test]
    fn shape_validation() {
        let ctx = free();
        assert!(hwv_check(&ctx, 4, &w("0"), 0, 2).is_err());
        assert!(hwv_check(&ctx, 4, &w("00"), 3, 2).is_err());
        assert!(multiplicity_report(&ctx, 1, &FiniteWord::empty()).is_err());
    }
}
