//! Unreduced codimension: every monomial against every substitution with at
//! most one tail. Used to validate the reduced matrix in [`super`].

use std::collections::{BTreeMap, BTreeSet};

use super::{rank_parallel, CodimResult, ComputeOptions, SparseRow};
use crate::algebra::{evaluate_basis, AlgebraContext, BasisWord, Monomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_tail: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_n: 6,
            max_tail: 3,
        }
    }
}

pub fn brute_force_codimension(
    ctx: &AlgebraContext,
    n: usize,
    tail_bound: usize,
) -> Result<CodimResult> {
    brute_force_codimension_with(
        ctx,
        n,
        tail_bound,
        OracleLimits::default(),
        ComputeOptions::default(),
    )
}

/// Substitutions: all variables to `a`, or one variable to an admitted
/// `a^2 t` with `|t| <= tail_bound` and the rest to `a`.
fn substitutions(ctx: &AlgebraContext, n: usize, tail_bound: usize) -> Result<Vec<Vec<BasisWord>>> {
    let mut tails = Vec::new();
    for len in 0..=tail_bound {
        tails.extend(ctx.admitted_words(len)?.into_iter().map(BasisWord::Tail));
    }
    let mut out = vec![vec![BasisWord::Gen; n]];
    for position in 0..n {
        for t in &tails {
            let mut s = vec![BasisWord::Gen; n];
            s[position] = t.clone();
            out.push(s);
        }
    }
    Ok(out)
}

type RowPattern = Vec<(usize, BasisWord)>;

fn evaluate_rows(
    ctx: &AlgebraContext,
    monomials: &[Monomial],
    subst: &[Vec<BasisWord>],
) -> Result<BTreeSet<RowPattern>> {
    let mut rows = BTreeSet::new();
    for m in monomials {
        let mut row = Vec::new();
        for (i, s) in subst.iter().enumerate() {
            if let Some(b) = evaluate_basis(ctx, m.tree(), s)? {
                row.push((i, b));
            }
        }
        if !row.is_empty() {
            rows.insert(row);
        }
    }
    Ok(rows)
}

pub fn brute_force_codimension_with(
    ctx: &AlgebraContext,
    n: usize,
    tail_bound: usize,
    limits: OracleLimits,
    opts: ComputeOptions,
) -> Result<CodimResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if n > limits.max_n || tail_bound > limits.max_tail {
        return Err(Error::OracleTooLarge(format!(
            "n = {n}, tail bound = {tail_bound} exceeds the limits n <= {}, tail <= {}",
            limits.max_n, limits.max_tail
        )));
    }
    let subst = substitutions(ctx, n, tail_bound)?;
    let monomials: Vec<Monomial> = Monomial::all(n).collect();
    let threads = opts.threads.max(1);
    let chunk = monomials.len().div_ceil(threads).max(1);

    // identical rows are dropped before elimination; the rank is unaffected
    let parts: Vec<Result<BTreeSet<RowPattern>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = monomials
            .chunks(chunk)
            .map(|part| {
                let subst = &subst;
                scope.spawn(move || evaluate_rows(ctx, part, subst))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .collect()
    });
    let mut rows = BTreeSet::new();
    for p in parts {
        rows.extend(p?);
    }

    let columns: BTreeMap<&(usize, BasisWord), usize> = rows
        .iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, key)| (key, i))
        .collect();
    let sparse: Vec<SparseRow> = rows
        .iter()
        .map(|r| SparseRow::indicator(r.iter().map(|key| columns[key])))
        .collect();
    let columns_used = columns.len();

    Ok(CodimResult {
        n,
        c_n: rank_parallel(sparse, threads),
        rows_used: monomials.len(),
        columns_used,
        contexts: vec![ctx.clone()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codim::codimension;

    #[test]
    fn free_degree_two_and_three() {
        let free = AlgebraContext::free(16).unwrap();
        assert_eq!(brute_force_codimension(&free, 2, 0).unwrap().c_n, 2);
        let r3 = brute_force_codimension(&free, 3, 0).unwrap();
        assert_eq!(r3.c_n, 10);
        assert_eq!(r3.rows_used, 12);
        assert_eq!(brute_force_codimension(&free, 3, 3).unwrap().c_n, 10);
    }

    #[test]
    fn agrees_with_reduced_matrix_on_period_two() {
        let ctx = AlgebraContext::quotient("periodic:01".parse().unwrap(), 16).unwrap();
        assert_eq!(
            brute_force_codimension(&ctx, 4, 0).unwrap().c_n,
            codimension(&ctx, 4).unwrap().c_n
        );
    }

    #[test]
    fn size_guard() {
        let free = AlgebraContext::free(32).unwrap();
        assert!(matches!(
            brute_force_codimension(&free, 7, 0),
            Err(Error::OracleTooLarge(_))
        ));
        assert!(matches!(
            brute_force_codimension(&free, 3, 4),
            Err(Error::OracleTooLarge(_))
        ));
        let wide = OracleLimits {
            max_n: 7,
            max_tail: 4,
        };
        assert!(brute_force_codimension_with(&free, 3, 4, wide, ComputeOptions::default()).is_ok());
    }

    #[test]
    fn degree_cap_propagates() {
        let tight = AlgebraContext::free(4).unwrap();
        assert!(matches!(
            brute_force_codimension(&tight, 3, 1),
            Err(Error::DegreeOverflow { .. })
        ));
    }
}
