//! Codimension sequences of `A` and its quotients.
//!
//! `c_n` is the rank of the matrix whose rows are multilinear monomials of
//! degree `n` and whose columns record their values under substitutions of
//! basis elements. Most of that matrix is redundant:
//!
//! * a monomial with a node multiplying two products is an identity (the
//!   product of two elements of degree at least 2 vanishes), so only combs
//!   survive;
//! * a substitution sending two variables to tails is zero, and so is one
//!   sending a spine variable to a tail;
//! * sending a base variable to `a^2 v` yields `a^2 v b s`, which survives
//!   only if `b s` survives, so `v = empty` already detects every relation.
//!
//! A comb with spine word `s` and base `(x_u, x_v)` therefore contributes
//! the row with ones at `(all a, a^2 s)`, `(x_u -> a^2, a^2 1s)` and
//! `(x_v -> a^2, a^2 0s)`, each present only when the word is admitted.
//! The order of the spine variables never matters. [`oracle`] checks this
//! reduction against the unreduced matrix.

mod echelon;
pub mod hwv;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::AlgebraContext;
use crate::error::{Error, Result};
use crate::words::FiniteWord;

pub use echelon::{intersect, rank_parallel, Echelon, SparseRow};
pub use hwv::{hwv_check, multiplicity_report, HwvKind, HwvReport, Multiplicity};
pub use oracle::{brute_force_codimension, brute_force_codimension_with, OracleLimits};

/// Which variables receive `a^2`: none, or exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubstitutionPattern {
    AllGen,
    OneTail { position: usize },
}

/// Row key of the reduced matrix: the spine word and the ordered base pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowKey {
    pub spine: FiniteWord,
    pub base: (usize, usize),
}

/// Column key: context index, substitution, and the output tail word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnKey {
    pub context: usize,
    pub pattern: SubstitutionPattern,
    pub word: FiniteWord,
}

#[derive(Debug, Clone, Copy)]
pub struct ComputeOptions {
    pub threads: usize,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { threads: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimResult {
    pub n: usize,
    pub c_n: usize,
    pub rows_used: usize,
    pub columns_used: usize,
    pub contexts: Vec<AlgebraContext>,
}

#[derive(Serialize)]
struct CodimResultJson {
    n: usize,
    c_n: usize,
    rows: usize,
    cols: usize,
    contexts: Vec<String>,
}

impl Serialize for CodimResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodimResultJson {
            n: self.n,
            c_n: self.c_n,
            rows: self.rows_used,
            cols: self.columns_used,
            contexts: self.contexts.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

/// Number of multilinear monomials of degree `n`: Catalan(`n-1`) * `n!`.
pub fn multilinear_dimension(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let catalan = (0..n as u128 - 1).fold(1u128, |c, k| c * 2 * (2 * k + 1) / (k + 2));
    (1..=n as u128).fold(catalan, |acc, k| acc * k)
}

/// Per-context admitted words of lengths `n-2` and `n-1`, with column offsets.
struct ContextColumns {
    offset: usize,
    spines: HashMap<FiniteWord, usize>,
    extensions: HashMap<FiniteWord, usize>,
}

/// Streams the rows of the reduced evaluation matrix.
struct ReducedRows {
    n: usize,
    contexts: Vec<ContextColumns>,
    spines: Vec<FiniteWord>,
    columns: usize,
}

impl ReducedRows {
    fn new(ctxs: &[AlgebraContext], n: usize) -> Result<Self> {
        debug_assert!(n >= 2);
        let mut contexts = Vec::with_capacity(ctxs.len());
        let mut union = BTreeSet::new();
        let mut offset = 0;
        for ctx in ctxs {
            let spine_words = ctx.admitted_words(n - 2)?;
            let ext_words = ctx.admitted_words(n - 1)?;
            union.extend(spine_words.iter().cloned());
            let spines: HashMap<_, _> = spine_words
                .into_iter()
                .enumerate()
                .map(|(i, w)| (w, i))
                .collect();
            let extensions: HashMap<_, _> = ext_words
                .into_iter()
                .enumerate()
                .map(|(i, w)| (w, i))
                .collect();
            let width = spines.len() + n * extensions.len();
            contexts.push(ContextColumns {
                offset,
                spines,
                extensions,
            });
            offset += width;
        }
        Ok(ReducedRows {
            n,
            contexts,
            spines: union.into_iter().collect(),
            columns: offset,
        })
    }

    fn column_keys(&self) -> Vec<ColumnKey> {
        let mut keys = Vec::with_capacity(self.columns);
        for (context, c) in self.contexts.iter().enumerate() {
            let mut spines: Vec<_> = c.spines.iter().collect();
            spines.sort_by_key(|(_, &i)| i);
            keys.extend(spines.into_iter().map(|(w, _)| ColumnKey {
                context,
                pattern: SubstitutionPattern::AllGen,
                word: w.clone(),
            }));
            let mut exts: Vec<_> = c.extensions.iter().collect();
            exts.sort_by_key(|(_, &i)| i);
            for position in 1..=self.n {
                keys.extend(exts.iter().map(|(w, _)| ColumnKey {
                    context,
                    pattern: SubstitutionPattern::OneTail { position },
                    word: (*w).clone(),
                }));
            }
        }
        keys
    }

    fn row_count(&self) -> usize {
        self.spines.len() * self.n * (self.n - 1)
    }

    fn column(
        &self,
        c: &ContextColumns,
        pattern: SubstitutionPattern,
        word: &FiniteWord,
    ) -> Option<usize> {
        match pattern {
            SubstitutionPattern::AllGen => c.spines.get(word).map(|i| c.offset + i),
            SubstitutionPattern::OneTail { position } => c
                .extensions
                .get(word)
                .map(|i| c.offset + c.spines.len() + (position - 1) * c.extensions.len() + i),
        }
    }

    fn row(&self, key: &RowKey) -> SparseRow {
        let (u, v) = key.base;
        let left = key.spine.prepend(1);
        let right = key.spine.prepend(0);
        let mut cols = Vec::with_capacity(3 * self.contexts.len());
        for c in &self.contexts {
            cols.extend(self.column(c, SubstitutionPattern::AllGen, &key.spine));
            cols.extend(self.column(c, SubstitutionPattern::OneTail { position: u }, &left));
            cols.extend(self.column(c, SubstitutionPattern::OneTail { position: v }, &right));
        }
        SparseRow::indicator(cols)
    }

    fn keys_for<'a>(&'a self, spines: &'a [FiniteWord]) -> impl Iterator<Item = RowKey> + 'a {
        let n = self.n;
        spines.iter().flat_map(move |s| {
            (1..=n).flat_map(move |u| {
                (1..=n).filter(move |&v| v != u).map(move |v| RowKey {
                    spine: s.clone(),
                    base: (u, v),
                })
            })
        })
    }

    /// Column space of context `c` restricted to the rows of spine `s`, as
    /// vectors indexed by the position of the row key within the block.
    fn block_columns(&self, c: &ContextColumns, s: &FiniteWord) -> Vec<SparseRow> {
        let lo = c.offset;
        let hi = c.offset + c.spines.len() + self.n * c.extensions.len();
        let mut columns: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let spine = [s.clone()];
        for (r, key) in self.keys_for(&spine).enumerate() {
            for (col, _) in self.row(&key).entries() {
                if (lo..hi).contains(col) {
                    columns.entry(*col).or_default().push(r);
                }
            }
        }
        columns.into_values().map(SparseRow::indicator).collect()
    }

    fn block_intersection_dim(&self, s: &FiniteWord) -> usize {
        let block = self.n * (self.n - 1);
        let mut spaces = self.contexts.iter().map(|c| self.block_columns(c, s));
        let first = spaces.next().expect("at least one context");
        let acc = spaces.fold(first, |acc, next| echelon::intersect(&acc, &next, block));
        let mut e = Echelon::new();
        for v in acc {
            e.insert(v);
        }
        e.rank()
    }

    /// Rank, with spines split across workers.
    fn rank(&self, threads: usize) -> usize {
        let threads = threads.max(1).min(self.spines.len().max(1));
        let chunk = self.spines.len().div_ceil(threads).max(1);
        let partials: Vec<Echelon> = std::thread::scope(|scope| {
            let handles: Vec<_> = self
                .spines
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        let mut e = Echelon::new();
                        for key in self.keys_for(part) {
                            e.insert(self.row(&key));
                        }
                        e
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("codimension worker panicked"))
                .collect()
        });
        let mut acc = Echelon::new();
        for p in partials {
            acc.merge(p);
        }
        acc.rank()
    }
}

/// The reduced evaluation matrix, materialized.
#[derive(Debug, Clone)]
pub struct EvaluationMatrix {
    pub rows: Vec<(RowKey, SparseRow)>,
    pub columns: Vec<ColumnKey>,
}

impl EvaluationMatrix {
    pub fn build(ctxs: &[AlgebraContext], n: usize) -> Result<Self> {
        check_inputs(ctxs, n)?;
        if n < 2 {
            return Err(Error::InvalidArgument(
                "the reduced matrix starts at degree 2".into(),
            ));
        }
        let rr = ReducedRows::new(ctxs, n)?;
        let rows = rr.keys_for(&rr.spines).map(|k| {
            let r = rr.row(&k);
            (k, r)
        });
        Ok(EvaluationMatrix {
            rows: rows.collect(),
            columns: rr.column_keys(),
        })
    }

    pub fn rank(&self) -> usize {
        rank_parallel(self.rows.iter().map(|(_, r)| r.clone()).collect(), 1)
    }
}

fn check_inputs(ctxs: &[AlgebraContext], n: usize) -> Result<()> {
    if ctxs.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one context is required".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    // substituting a^2 for one variable produces degree n + 1
    for ctx in ctxs {
        ctx.check_degree(&format_args!("degree-{n} monomial"), &"a2:", n + 1)?;
    }
    Ok(())
}

pub fn codimension(ctx: &AlgebraContext, n: usize) -> Result<CodimResult> {
    codimension_with(ctx, n, ComputeOptions::default())
}

pub fn codimension_with(
    ctx: &AlgebraContext,
    n: usize,
    opts: ComputeOptions,
) -> Result<CodimResult> {
    codimension_join_with(std::slice::from_ref(ctx), n, opts)
}

fn degree_one(ctxs: &[AlgebraContext]) -> CodimResult {
    // x1 -> a is never zero
    CodimResult {
        n: 1,
        c_n: 1,
        rows_used: 1,
        columns_used: 1,
        contexts: ctxs.to_vec(),
    }
}

/// `c_n` of the variety generated by the direct sum of the algebras. Its
/// identities are the common identities, so this is the rank of the
/// per-context matrices placed side by side.
pub fn codimension_join(ctxs: &[AlgebraContext], n: usize) -> Result<CodimResult> {
    codimension_join_with(ctxs, n, ComputeOptions::default())
}

pub fn codimension_join_with(
    ctxs: &[AlgebraContext],
    n: usize,
    opts: ComputeOptions,
) -> Result<CodimResult> {
    check_inputs(ctxs, n)?;
    if n == 1 {
        return Ok(degree_one(ctxs));
    }
    let rr = ReducedRows::new(ctxs, n)?;
    Ok(CodimResult {
        n,
        c_n: rr.rank(opts.threads),
        rows_used: rr.row_count(),
        columns_used: rr.columns,
        contexts: ctxs.to_vec(),
    })
}

/// `c_n` of the intersection of the varieties generated by each algebra.
///
/// The intersection satisfies every identity of every member, so the
/// multilinear identities form the sum of the per-context kernels, and
/// `c_n` is the dimension of the intersection of the column spaces. Each
/// matrix is block diagonal by spine word, so the intersection is taken
/// block by block; a spine rejected by any context contributes nothing.
pub fn codimension_intersection(ctxs: &[AlgebraContext], n: usize) -> Result<CodimResult> {
    codimension_intersection_with(ctxs, n, ComputeOptions::default())
}

pub fn codimension_intersection_with(
    ctxs: &[AlgebraContext],
    n: usize,
    opts: ComputeOptions,
) -> Result<CodimResult> {
    check_inputs(ctxs, n)?;
    if n == 1 {
        return Ok(degree_one(ctxs));
    }
    let rr = ReducedRows::new(ctxs, n)?;
    let common: Vec<FiniteWord> = rr
        .spines
        .iter()
        .filter(|s| rr.contexts.iter().all(|c| c.spines.contains_key(*s)))
        .cloned()
        .collect();
    let threads = opts.threads.max(1).min(common.len().max(1));
    let chunk = common.len().div_ceil(threads).max(1);
    let c_n = std::thread::scope(|scope| {
        let handles: Vec<_> = common
            .chunks(chunk)
            .map(|part| {
                let rr = &rr;
                scope.spawn(move || {
                    part.iter()
                        .map(|s| rr.block_intersection_dim(s))
                        .sum::<usize>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("intersection worker panicked"))
            .sum()
    });
    Ok(CodimResult {
        n,
        c_n,
        rows_used: common.len() * n * (n - 1),
        columns_used: rr.columns,
        contexts: ctxs.to_vec(),
    })
}

/// `c_1, ..., c_{n_max}` for the intersection of the varieties of `ctxs`
/// (a single context gives its own sequence).
pub fn codim_table(
    ctxs: &[AlgebraContext],
    n_max: usize,
    opts: ComputeOptions,
) -> Result<Vec<CodimResult>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    (1..=n_max)
        .map(|n| match ctxs {
            [ctx] => codimension_with(ctx, n, opts),
            _ => codimension_intersection_with(ctxs, n, opts),
        })
        .collect()
}

/// `n,c_n` lines under a header.
pub fn render_csv(results: &[CodimResult]) -> String {
    let mut out = String::from("n,c_n\n");
    for r in results {
        writeln!(out, "{},{}", r.n, r.c_n).unwrap();
    }
    out
}
