//! Module signatures `m * e_i` and the Schreyer ordering.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::poly::{Monomial, MonomialOrdering};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("signature index {0} is not registered")]
    Unregistered(usize),
}

/// The module monomial `mono * e_index`; indices start at 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub index: usize,
    pub mono: Monomial,
}

impl Signature {
    pub fn new(index: usize, mono: Monomial) -> Self {
        Signature { index, mono }
    }

    /// The unit vector `e_index`.
    pub fn unit(index: usize, nvars: usize) -> Self {
        Signature { index, mono: Monomial::one(nvars) }
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}e{}", self.mono, self.index)
    }
}

pub fn sig_mul(m: &Monomial, s: &Signature) -> Signature {
    Signature { index: s.index, mono: m.mul(&s.mono) }
}

/// `s` divides `t` (same index, monomial divisibility). With
/// `require_nonconstant` the quotient must differ from 1.
pub fn sig_divides(s: &Signature, t: &Signature, require_nonconstant: bool) -> bool {
    s.index == t.index
        && if require_nonconstant { s.mono.properly_divides(&t.mono) } else { s.mono.divides(&t.mono) }
}

/// Leading monomials of generators, frozen at registration. Append-only.
#[derive(Clone, Debug, Default)]
pub struct SigRegistry {
    lms: Vec<Monomial>,
}

impl SigRegistry {
    pub fn new() -> Self {
        SigRegistry::default()
    }

    /// Registers a generator with leading monomial `lm`; returns its index.
    pub fn register(&mut self, lm: Monomial) -> usize {
        self.lms.push(lm);
        self.lms.len()
    }

    pub fn len(&self) -> usize {
        self.lms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lms.is_empty()
    }

    pub fn lm(&self, index: usize) -> Result<&Monomial, SignatureError> {
        index.checked_sub(1).and_then(|i| self.lms.get(i)).ok_or(SignatureError::Unregistered(index))
    }

    /// Monomial `mono * lm(g_index)` that the Schreyer ordering compares first.
    pub fn weight(&self, s: &Signature) -> Result<Monomial, SignatureError> {
        Ok(s.mono.mul(self.lm(s.index)?))
    }

    /// Schreyer ordering: compare `lt(m * g_i)`; on ties the smaller index
    /// is the larger signature.
    pub fn compare(&self, a: &Signature, b: &Signature, ord: MonomialOrdering) -> Result<Ordering, SignatureError> {
        let wa = self.weight(a)?;
        let wb = self.weight(b)?;
        Ok(schreyer_cmp(&wa, a.index, &wb, b.index, ord))
    }
}

/// Schreyer comparison on precomputed weights.
pub(crate) fn schreyer_cmp(wa: &Monomial, ia: usize, wb: &Monomial, ib: usize, ord: MonomialOrdering) -> Ordering {
    ord.compare(wa, wb).then_with(|| ib.cmp(&ia))
}

/// Lead terms of known syzygies, grouped by index. Append-only.
#[derive(Clone, Debug, Default)]
pub struct SyzygySet {
    by_index: HashMap<usize, Vec<Monomial>>,
    count: usize,
}

impl SyzygySet {
    pub fn new() -> Self {
        SyzygySet::default()
    }

    pub fn insert(&mut self, s: Signature) {
        let list = self.by_index.entry(s.index).or_default();
        if !list.contains(&s.mono) {
            list.push(s.mono);
            self.count += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, s: &Signature) -> bool {
        self.by_index.get(&s.index).is_some_and(|l| l.contains(&s.mono))
    }

    /// Some recorded signature divides `t`.
    pub fn divides(&self, t: &Signature, require_nonconstant: bool) -> bool {
        self.by_index.get(&t.index).is_some_and(|list| {
            list.iter().any(|m| if require_nonconstant { m.properly_divides(&t.mono) } else { m.divides(&t.mono) })
        })
    }
}
