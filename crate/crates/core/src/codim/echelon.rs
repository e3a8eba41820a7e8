//! Exact rank by fraction-free elimination over the integers.
//!
//! Rows are ingested one at a time into an echelon basis keyed by leading
//! column, so the matrix is never materialized. Every stored row is
//! primitive (content 1, positive leading entry).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse integer row: strictly increasing columns, no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseRow(Vec<(usize, BigInt)>);

impl SparseRow {
    /// Builds a row from arbitrary `(column, value)` pairs, summing duplicates.
    pub fn new(entries: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut map: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in entries {
            *map.entry(c).or_insert_with(BigInt::zero) += v;
        }
        SparseRow(map.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// A 0/1 row with ones at `cols`.
    pub fn indicator(cols: impl IntoIterator<Item = usize>) -> Self {
        SparseRow::new(cols.into_iter().map(|c| (c, BigInt::one())))
    }

    /// Scales rational entries to integers; the row span is unchanged.
    pub fn from_rationals(entries: impl IntoIterator<Item = (usize, BigRational)>) -> Self {
        let entries: Vec<_> = entries.into_iter().collect();
        let lcm = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        SparseRow::new(
            entries
                .into_iter()
                .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.0
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    fn lead(&self) -> Option<&(usize, BigInt)> {
        self.0.first()
    }

    fn make_primitive(&mut self) {
        let Some((_, first)) = self.0.first() else {
            return;
        };
        let mut content = first.abs();
        for (_, v) in &self.0[1..] {
            if content.is_one() {
                break;
            }
            content = content.gcd(v);
        }
        let flip = first.is_negative();
        if content.is_one() && !flip {
            return;
        }
        for (_, v) in &mut self.0 {
            *v = &*v / &content;
            if flip {
                *v = -&*v;
            }
        }
    }

    /// `pivot_lead * self - self_lead * pivot`, which clears the shared
    /// leading column.
    fn eliminate(&self, pivot: &SparseRow) -> SparseRow {
        let a = &pivot.0[0].1;
        let b = &self.0[0].1;
        let mut out = Vec::with_capacity(self.0.len() + pivot.0.len());
        let (mut i, mut j) = (1, 1);
        while i < self.0.len() || j < pivot.0.len() {
            let ci = self.0.get(i).map(|e| e.0);
            let cj = pivot.0.get(j).map(|e| e.0);
            let (col, val) = match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = a * &self.0[i].1 - b * &pivot.0[j].1;
                    i += 1;
                    j += 1;
                    (x, v)
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    (x, a * &self.0[i - 1].1)
                }
                (Some(x), None) => {
                    i += 1;
                    (x, a * &self.0[i - 1].1)
                }
                (_, Some(y)) => {
                    j += 1;
                    (y, -(b * &pivot.0[j - 1].1))
                }
                (None, None) => unreachable!(),
            };
            if !val.is_zero() {
                out.push((col, val));
            }
        }
        let mut row = SparseRow(out);
        row.make_primitive();
        row
    }
}

/// An echelon basis of the rows seen so far.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.make_primitive();
        loop {
            let Some((lead, _)) = row.lead() else {
                return false;
            };
            match self.pivots.get(lead) {
                Some(pivot) => row = row.eliminate(pivot),
                None => {
                    self.pivots.insert(*lead, row);
                    return true;
                }
            }
        }
    }

    /// Absorbs another basis. The resulting rank is that of the union of
    /// both row sets, whatever the merge order.
    pub fn merge(&mut self, other: Echelon) {
        for (_, row) in other.pivots {
            self.insert(row);
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }
}

/// A basis of `span(u) ∩ span(w)` inside a space of dimension `dim`
/// (Zassenhaus): echelonize `[u | u]` and `[w | 0]`; the rows whose left
/// half vanished carry the intersection in their right half.
pub fn intersect(u: &[SparseRow], w: &[SparseRow], dim: usize) -> Vec<SparseRow> {
    let mut e = Echelon::new();
    for r in u {
        let doubled =
            r.0.iter()
                .cloned()
                .chain(r.0.iter().map(|(c, v)| (c + dim, v.clone())));
        e.insert(SparseRow(doubled.collect()));
    }
    for r in w {
        e.insert(r.clone());
    }
    e.pivots
        .range(dim..)
        .map(|(_, r)| SparseRow(r.0.iter().map(|(c, v)| (c - dim, v.clone())).collect()))
        .collect()
}

/// Rank of a row set, split across `threads` workers whose partial bases
/// are merged in chunk order.
pub fn rank_parallel(rows: Vec<SparseRow>, threads: usize) -> usize {
    let threads = threads.max(1);
    if threads == 1 || rows.len() < 2 * threads {
        let mut e = Echelon::new();
        for r in rows {
            e.insert(r);
        }
        return e.rank();
    }
    let chunk = rows.len().div_ceil(threads);
    let mut chunks: Vec<Vec<SparseRow>> = Vec::with_capacity(threads);
    let mut it = rows.into_iter();
    loop {
        let part: Vec<_> = it.by_ref().take(chunk).collect();
        if part.is_empty() {
            break;
        }
        chunks.push(part);
    }
    let partials: Vec<Echelon> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|part| {
                scope.spawn(move || {
                    let mut e = Echelon::new();
                    for r in part {
                        e.insert(r);
                    }
                    e
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("rank worker panicked"))
            .collect()
    });
    let mut acc = Echelon::new();
    for p in partials {
        acc.merge(p);
    }
    acc.rank()
}
