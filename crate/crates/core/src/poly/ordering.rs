use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Monomial, PolyError};

/// Monomial ordering with `x_n < ... < x_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrdering {
    /// Total degree first, ties broken reverse-lexicographically: the monomial
    /// with the smaller exponent on the smallest differing variable is larger.
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrdering {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrdering::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrdering::Lex => a.exponents().cmp(b.exponents()),
        }
    }

    pub fn checked_compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != b.nvars() {
            return Err(PolyError::DimensionMismatch { left: a.nvars(), right: b.nvars() });
        }
        Ok(self.compare(a, b))
    }

    pub fn is_degree_compatible(self) -> bool {
        matches!(self, MonomialOrdering::DegRevLex)
    }
}

/// A monomial bundled with its ordering so it can key ordered collections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMonomial {
    pub mono: Monomial,
    pub ord: MonomialOrdering,
}

impl PartialOrd for OrderedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord.compare(&self.mono, &other.mono)
    }
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrdering::DegRevLex => "degrevlex",
            MonomialOrdering::Lex => "lex",
        })
    }
}

impl FromStr for MonomialOrdering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degrevlex" | "drl" | "grevlex" => Ok(MonomialOrdering::DegRevLex),
            "lex" | "plex" => Ok(MonomialOrdering::Lex),
            other => Err(format!("unknown monomial ordering `{other}`")),
        }
    }
}
