//! Periodic and Sturmian binary words.
//!
//! Infinite words are described by a [`WordSpec`]: either an explicit
//! repeating pattern or a lower mechanical word
//! `w_i = floor(alpha*(i+1) + rho) - floor(alpha*i + rho)`.
//! "Subword" always means a contiguous factor.

mod alpha;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use alpha::{Alpha, Surd};
pub use syntax::parse_spec;

/// Upper bound on the prefix length scanned while collecting the factors of
/// an aperiodic word.
pub const STURMIAN_SCAN_LIMIT: usize = 1 << 24;

/// A finite word over `{0, 1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWord(Vec<u8>);

impl FiniteWord {
    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&l| l > 1) {
            return Err(Error::InvalidWord(format!("letter {bad} is not 0 or 1")));
        }
        Ok(FiniteWord(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| l <= 1));
        FiniteWord(letters)
    }

    /// All `2^n` words of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = FiniteWord> {
        assert!(n < 64, "refusing to enumerate 2^{n} words");
        (0u64..1 << n).map(move |bits| {
            FiniteWord((0..n).map(|j| ((bits >> (n - 1 - j)) & 1) as u8).collect())
        })
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> usize {
        self.0.iter().filter(|&&l| l == 1).count()
    }

    pub fn slope(&self) -> Result<Ratio<i64>> {
        if self.is_empty() {
            return Err(Error::UndefinedSlope);
        }
        Ok(Ratio::new(self.height() as i64, self.len() as i64))
    }

    /// `letter · self`
    pub fn prepend(&self, letter: u8) -> FiniteWord {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        FiniteWord::from_letters_unchecked(v)
    }

    /// `self · letter`
    pub fn append(&self, letter: u8) -> FiniteWord {
        let mut v = self.0.clone();
        v.push(letter);
        FiniteWord::from_letters_unchecked(v)
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FiniteWord(v)
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord(self.0[..n].to_vec())
    }

    pub fn contains_letter(&self, letter: u8) -> bool {
        self.0.contains(&letter)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            f.write_str(if l == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidWord(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(FiniteWord)
    }
}

/// Description of an infinite binary word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordSpec {
    ExplicitPeriodic(FiniteWord),
    Mechanical { alpha: Alpha, rho: Ratio<i64> },
}

impl WordSpec {
    pub fn periodic(pattern: FiniteWord) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::InvalidWord(
                "periodic pattern must be nonempty".into(),
            ));
        }
        Ok(WordSpec::ExplicitPeriodic(pattern))
    }

    pub fn mechanical(alpha: Alpha, rho: Ratio<i64>) -> Result<Self> {
        if !alpha.in_open_unit_interval() {
            return Err(Error::InvalidAlpha(format!(
                "mechanical slope {alpha} must lie strictly between 0 and 1"
            )));
        }
        if rho.is_negative() || rho >= Ratio::one() {
            return Err(Error::InvalidAlpha(format!(
                "intercept {rho} must lie in [0, 1)"
            )));
        }
        Ok(WordSpec::Mechanical { alpha, rho })
    }

    /// Mechanical word with intercept zero.
    pub fn mechanical_zero(alpha: Alpha) -> Result<Self> {
        Self::mechanical(alpha, Ratio::zero())
    }

    pub fn is_sturmian(&self) -> bool {
        matches!(self, WordSpec::Mechanical { alpha, .. } if alpha.is_irrational())
    }

    /// The repeating block, for every spec that is periodic.
    ///
    /// A mechanical word of rational slope `p/q` repeats with period `q`.
    pub fn periodic_pattern(&self) -> Option<FiniteWord> {
        match self {
            WordSpec::ExplicitPeriodic(p) => Some(p.clone()),
            WordSpec::Mechanical { alpha, rho } => {
                let period = *alpha.as_rational()?.denom() as usize;
                Some(mechanical_prefix(alpha, *rho, period))
            }
        }
    }

    fn letters(&self) -> Box<dyn Iterator<Item = u8> + '_> {
        match self {
            WordSpec::ExplicitPeriodic(p) => Box::new(p.letters().iter().copied().cycle()),
            WordSpec::Mechanical { alpha, rho } => Box::new(MechanicalLetters::new(*alpha, *rho)),
        }
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::ExplicitPeriodic(p) => write!(f, "periodic:{p}"),
            WordSpec::Mechanical { alpha, rho } => {
                write!(f, "mech:{alpha}")?;
                if !rho.is_zero() {
                    write!(f, ",rho={}/{}", rho.numer(), rho.denom())?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

struct MechanicalLetters {
    alpha: Alpha,
    rho: Ratio<i64>,
    index: i128,
    previous_floor: i128,
}

impl MechanicalLetters {
    fn new(alpha: Alpha, rho: Ratio<i64>) -> Self {
        MechanicalLetters {
            alpha,
            rho,
            index: 0,
            previous_floor: alpha.floor_affine(0, rho),
        }
    }
}

impl Iterator for MechanicalLetters {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        self.index += 1;
        let next = self.alpha.floor_affine(self.index, self.rho);
        let letter = (next - self.previous_floor) as u8;
        self.previous_floor = next;
        Some(letter)
    }
}

fn mechanical_prefix(alpha: &Alpha, rho: Ratio<i64>, n: usize) -> FiniteWord {
    FiniteWord::from_letters_unchecked(MechanicalLetters::new(*alpha, rho).take(n).collect())
}

/// The distinct factors of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    n: usize,
    members: BTreeSet<FiniteWord>,
}

impl FactorSet {
    pub fn length(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, word: &FiniteWord) -> bool {
        self.members.contains(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = &FiniteWord> {
        self.members.iter()
    }

    pub fn is_disjoint(&self, other: &FactorSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn into_members(self) -> BTreeSet<FiniteWord> {
        self.members
    }
}

pub fn prefix(spec: &WordSpec, n: usize) -> FiniteWord {
    FiniteWord::from_letters_unchecked(spec.letters().take(n).collect())
}

pub fn factors(spec: &WordSpec, n: usize) -> Result<FactorSet> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "factor length must be at least 1".into(),
        ));
    }
    let members = match spec.periodic_pattern() {
        Some(pattern) => cyclic_factors(&pattern, n),
        None => sturmian_factors(spec, n)?,
    };
    Ok(FactorSet { n, members })
}

/// Every window of the bi-infinite repetition of `pattern`; this is the
/// factor set of the one-sided word too, since each window starts within
/// the first period.
fn cyclic_factors(pattern: &FiniteWord, n: usize) -> BTreeSet<FiniteWord> {
    let t = pattern.len();
    let p = pattern.letters();
    (0..t)
        .map(|start| {
            FiniteWord::from_letters_unchecked((0..n).map(|j| p[(start + j) % t]).collect())
        })
        .collect()
}

/// Scans prefixes until `n + 1` distinct windows have been seen.
fn sturmian_factors(spec: &WordSpec, n: usize) -> Result<BTreeSet<FiniteWord>> {
    let expected = n + 1;
    let mut seen = BTreeSet::new();
    let mut window: Vec<u8> = Vec::with_capacity(2 * n);
    let mut scanned = 0;
    for letter in spec.letters() {
        scanned += 1;
        window.push(letter);
        if window.len() > n {
            window.remove(0);
        }
        if window.len() == n {
            seen.insert(FiniteWord::from_letters_unchecked(window.clone()));
            if seen.len() == expected {
                return Ok(seen);
            }
        }
        if scanned >= STURMIAN_SCAN_LIMIT {
            break;
        }
    }
    Err(Error::FactorScanExhausted {
        n,
        scanned,
        found: seen.len(),
        expected,
    })
}

pub fn complexity(spec: &WordSpec, n: usize) -> Result<usize> {
    Ok(factors(spec, n)?.len())
}

pub fn height(x: &FiniteWord) -> usize {
    x.height()
}

pub fn slope_finite(x: &FiniteWord) -> Result<Ratio<i64>> {
    x.slope()
}

/// The limit of prefix slopes: `h(pattern)/|pattern|` for patterns, `alpha`
/// for mechanical words.
pub fn slope_limit(spec: &WordSpec) -> Alpha {
    match spec {
        WordSpec::ExplicitPeriodic(p) => Alpha::rational(p.height() as i64, p.len() as i64)
            .expect("pattern slope lies in [0, 1]"),
        WordSpec::Mechanical { alpha, .. } => *alpha,
    }
}

/// `max |h(x) - h(y)|` over same-length factor pairs with length `1..=max_len`.
pub fn balance_constant(spec: &WordSpec, max_len: usize) -> Result<usize> {
    let mut worst = 0;
    for n in 1..=max_len {
        let set = factors(spec, n)?;
        let (lo, hi) = set
            .iter()
            .map(FiniteWord::height)
            .fold((usize::MAX, 0), |(lo, hi), h| (lo.min(h), hi.max(h)));
        worst = worst.max(hi - lo);
    }
    Ok(worst)
}

/// Whether `|slope(u) - slope(w)| * |u| <= bound` for every factor `u` with
/// `1 <= |u| <= max_len`. Exact for surd slopes.
pub fn slope_deviation_check(spec: &WordSpec, max_len: usize, bound: usize) -> Result<bool> {
    use std::cmp::Ordering::{Greater, Less};

    let limit = slope_limit(spec);
    let bound = bound as i128;
    for n in 1..=max_len {
        for u in factors(spec, n)?.iter() {
            let h = u.height() as i128;
            // |h - limit*n| <= bound  <=>  h - bound <= limit*n <= h + bound
            let below = limit.cmp_scaled(n as i128, Ratio::from_integer(h - bound)) == Less;
            let above = limit.cmp_scaled(n as i128, Ratio::from_integer(h + bound)) == Greater;
            if below || above {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Least `m <= max_len` at which the two words share no factor of length `m`.
pub fn disjointness_degree(a: &WordSpec, b: &WordSpec, max_len: usize) -> Result<Option<usize>> {
    for m in 1..=max_len {
        if factors(a, m)?.is_disjoint(&factors(b, m)?) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
