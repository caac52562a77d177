//! Janet and Pommaret divisions.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, MonomialOrdering, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Division {
    Janet,
    Pommaret,
}

impl fmt::Display for Division {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Division::Janet => "janet",
            Division::Pommaret => "pommaret",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisionError {
    #[error("multiplicative variables are undefined for an empty monomial set")]
    EmptySet,
}

/// A set of variables, bit `i` standing for `x_{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarMask(u64);

impl VarMask {
    pub const EMPTY: VarMask = VarMask(0);

    pub fn all(nvars: usize) -> VarMask {
        if nvars >= 64 {
            VarMask(u64::MAX)
        } else {
            VarMask((1u64 << nvars) - 1)
        }
    }

    pub fn single(var: usize) -> VarMask {
        VarMask(1 << var)
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> VarMask {
        vars.into_iter().fold(VarMask::EMPTY, |m, v| m.with(v))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }

    pub fn with(self, var: usize) -> VarMask {
        VarMask(self.0 | 1 << var)
    }

    pub fn union(self, other: VarMask) -> VarMask {
        VarMask(self.0 | other.0)
    }

    pub fn minus(self, other: VarMask) -> VarMask {
        VarMask(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VarMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Variables in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }
}

impl fmt::Debug for VarMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v + 1)).finish()
    }
}

/// Multiplicative variables of every monomial of a finite set, aligned with
/// the order in which the set was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativePartition {
    nvars: usize,
    masks: Vec<VarMask>,
}

impl MultiplicativePartition {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn multiplicative(&self, i: usize) -> VarMask {
        self.masks[i]
    }

    pub fn non_multiplicative(&self, i: usize) -> VarMask {
        VarMask::all(self.nvars).minus(self.masks[i])
    }

    pub fn masks(&self) -> &[VarMask] {
        &self.masks
    }
}

/// Janet partition: `x_i` is multiplicative for `u` iff `deg_i(u)` is maximal
/// among the elements of `set` agreeing with `u` in the exponents of
/// `x_1, ..., x_{i-1}`.
pub fn janet_partition(set: &[Monomial]) -> Result<MultiplicativePartition, DivisionError> {
    let first = set.first().ok_or(DivisionError::EmptySet)?;
    let n = first.nvars();
    let mut masks = vec![VarMask::EMPTY; set.len()];
    let mut max_in_class: HashMap<&[u16], u16> = HashMap::new();
    for i in 0..n {
        max_in_class.clear();
        for u in set {
            let e = u.exponent(i);
            let slot = max_in_class.entry(&u.exponents()[..i]).or_insert(e);
            *slot = (*slot).max(e);
        }
        for (mask, u) in masks.iter_mut().zip(set) {
            if max_in_class[&u.exponents()[..i]] == u.exponent(i) {
                *mask = mask.with(i);
            }
        }
    }
    Ok(MultiplicativePartition { nvars: n, masks })
}

/// Pommaret multiplicative variables: `x_k, ..., x_n` where `k` is the class
/// of `u`; every variable for `u = 1`.
pub fn pommaret_multiplicative(u: &Monomial) -> VarMask {
    let n = u.nvars();
    match u.class() {
        None => VarMask::all(n),
        Some(k) => VarMask::all(n).minus(VarMask::all(k)),
    }
}

impl Division {
    pub fn partition(self, set: &[Monomial]) -> Result<MultiplicativePartition, DivisionError> {
        match self {
            Division::Janet => janet_partition(set),
            Division::Pommaret => {
                let first = set.first().ok_or(DivisionError::EmptySet)?;
                Ok(MultiplicativePartition {
                    nvars: first.nvars(),
                    masks: set.iter().map(pommaret_multiplicative).collect(),
                })
            }
        }
    }

    /// True when the division is Noetherian (finite completion always exists).
    pub fn is_noetherian(self) -> bool {
        matches!(self, Division::Janet)
    }
}

/// `m` lies in the involutive cone `u * k[mult]`.
#[inline]
pub fn is_involutive_multiple(u: &Monomial, mult: VarMask, m: &Monomial) -> bool {
    u.exponents().iter().zip(m.exponents()).enumerate().all(|(i, (a, b))| a == b || (a < b && mult.contains(i)))
}

/// Returns the position of an involutive divisor of `m` in `set`; when
/// several exist the one with the largest monomial wins.
pub fn involutive_divisor(
    m: &Monomial,
    set: &[Monomial],
    partition: &MultiplicativePartition,
    ord: MonomialOrdering,
) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, u) in set.iter().enumerate() {
        if is_involutive_multiple(u, partition.multiplicative(i), m) {
            best = match best {
                Some(b) if ord.compare(&set[b], u).is_ge() => Some(b),
                _ => Some(i),
            };
        }
    }
    best
}

/// No leading monomial is an involutive multiple of another element's
/// leading monomial.
pub fn is_head_autoreduced(polys: &[Polynomial], division: Division) -> bool {
    let lms: Vec<Monomial> = polys.iter().filter_map(|p| p.lm().cloned()).collect();
    lms_head_autoreduced(&lms, division)
}

pub fn lms_head_autoreduced(lms: &[Monomial], division: Division) -> bool {
    let Ok(part) = division.partition(lms) else {
        return true;
    };
    for (i, u) in lms.iter().enumerate() {
        for (j, v) in lms.iter().enumerate() {
            if i != j && is_involutive_multiple(v, part.multiplicative(j), u) {
                return false;
            }
        }
    }
    true
}
