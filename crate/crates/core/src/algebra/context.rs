use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

use super::BasisWord;
use crate::error::{Error, Result};
use crate::words::{self, FactorSet, FiniteWord, WordSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContextKind {
    FreeA,
    Quotient(WordSpec),
}

/// The algebra being computed in: `A` itself or a quotient `A / I_w`, where
/// `I_w` is spanned by the tails that are not factors of `w`.
///
/// Cloning is cheap; clones share the factor-set cache.
#[derive(Clone)]
pub struct AlgebraContext {
    inner: Arc<Inner>,
}

struct Inner {
    kind: ContextKind,
    max_degree: usize,
    factors: Mutex<HashMap<usize, Arc<FactorSet>>>,
}

impl AlgebraContext {
    pub fn free(max_degree: usize) -> Result<Self> {
        Self::new(ContextKind::FreeA, max_degree)
    }

    pub fn quotient(spec: WordSpec, max_degree: usize) -> Result<Self> {
        Self::new(ContextKind::Quotient(spec), max_degree)
    }

    pub fn new(kind: ContextKind, max_degree: usize) -> Result<Self> {
        if max_degree == 0 {
            return Err(Error::InvalidArgument("max_degree must be positive".into()));
        }
        Ok(AlgebraContext {
            inner: Arc::new(Inner {
                kind,
                max_degree,
                factors: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn kind(&self) -> &ContextKind {
        &self.inner.kind
    }

    pub fn spec(&self) -> Option<&WordSpec> {
        match &self.inner.kind {
            ContextKind::FreeA => None,
            ContextKind::Quotient(spec) => Some(spec),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.inner.max_degree
    }

    /// Memoized factor set; `None` in the free algebra, where every word is admitted.
    pub fn factor_set(&self, len: usize) -> Result<Option<Arc<FactorSet>>> {
        let Some(spec) = self.spec() else {
            return Ok(None);
        };
        if let Some(set) = self.inner.factors.lock().unwrap().get(&len) {
            return Ok(Some(Arc::clone(set)));
        }
        // computed outside the lock; a racing duplicate computation is harmless
        let set = Arc::new(words::factors(spec, len)?);
        let mut cache = self.inner.factors.lock().unwrap();
        Ok(Some(Arc::clone(cache.entry(len).or_insert(set))))
    }

    /// Whether `a^2 u` survives in this algebra.
    pub fn admits(&self, u: &FiniteWord) -> Result<bool> {
        if u.is_empty() {
            return Ok(true);
        }
        Ok(match self.factor_set(u.len())? {
            None => true,
            Some(set) => set.contains(u),
        })
    }

    pub fn admits_basis(&self, b: &BasisWord) -> Result<bool> {
        match b {
            BasisWord::Gen => Ok(true),
            BasisWord::Tail(u) => self.admits(u),
        }
    }

    /// Admitted tail words of one length, in lexicographic order.
    pub fn admitted_words(&self, len: usize) -> Result<Vec<FiniteWord>> {
        if len == 0 {
            return Ok(vec![FiniteWord::empty()]);
        }
        Ok(match self.factor_set(len)? {
            None => FiniteWord::all_of_length(len).collect(),
            Some(set) => set.iter().cloned().collect(),
        })
    }

    /// Dimension of the degree-`n` component.
    pub fn graded_dimension(&self, n: usize) -> Result<BigUint> {
        match n {
            0 => Err(Error::InvalidArgument("degree must be at least 1".into())),
            1 | 2 => Ok(BigUint::from(1u32)),
            n => Ok(match self.spec() {
                None => BigUint::from(1u32) << (n - 2),
                Some(spec) => BigUint::from(words::complexity(spec, n - 2)?),
            }),
        }
    }

    /// Rejects degrees above the cap.
    pub(crate) fn check_degree(
        &self,
        left: &dyn fmt::Display,
        right: &dyn fmt::Display,
        degree: usize,
    ) -> Result<()> {
        if degree > self.max_degree() {
            return Err(Error::DegreeOverflow {
                left: left.to_string(),
                right: right.to_string(),
                degree,
                cap: self.max_degree(),
            });
        }
        Ok(())
    }
}

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.kind == other.inner.kind && self.inner.max_degree == other.inner.max_degree
    }
}

impl Eq for AlgebraContext {}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraContext")
            .field("kind", &self.inner.kind)
            .field("max_degree", &self.inner.max_degree)
            .finish()
    }
}

/// `free` or the word spec text.
impl fmt::Display for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.kind {
            ContextKind::FreeA => f.write_str("free"),
            ContextKind::Quotient(spec) => spec.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quotient(text: &str) -> AlgebraContext {
        AlgebraContext::quotient(text.parse().unwrap(), 32).unwrap()
    }

    #[test]
    fn graded_dimensions() {
        let free = AlgebraContext::free(32).unwrap();
        assert_eq!(free.graded_dimension(5).unwrap(), BigUint::from(8u32));
        assert_eq!(free.graded_dimension(1).unwrap(), BigUint::from(1u32));
        let golden = quotient("mech:(3-1*sqrt(5))/2");
        assert_eq!(golden.graded_dimension(5).unwrap(), BigUint::from(4u32));
        assert_eq!(golden.graded_dimension(2).unwrap(), BigUint::from(1u32));
        assert_eq!(golden.graded_dimension(1).unwrap(), BigUint::from(1u32));
        assert!(free.graded_dimension(0).is_err());
    }

    #[test]
    fn membership() {
        let zeros = quotient("periodic:0");
        assert!(zeros.admits(&FiniteWord::empty()).unwrap());
        assert!(zeros.admits(&"000".parse().unwrap()).unwrap());
        assert!(!zeros.admits(&"010".parse().unwrap()).unwrap());
        assert_eq!(zeros.admitted_words(2).unwrap().len(), 1);
        let free = AlgebraContext::free(8).unwrap();
        assert_eq!(free.admitted_words(3).unwrap().len(), 8);
    }

    #[test]
    fn zero_cap_rejected() {
        assert!(AlgebraContext::free(0).is_err());
    }
}
