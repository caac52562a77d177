use std::fmt;

use smallvec::SmallVec;

use super::ordering::MonomialOrdering;

pub type Exponent = u16;

type Exponents = SmallVec<[Exponent; 10]>;

/// A power product `x1^a1 * ... * xn^an`, stored as its exponent vector.
///
/// Position 0 is the largest variable `x1`, position `n - 1` the smallest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; nvars], degree: 0 }
    }

    pub fn new<I: IntoIterator<Item = Exponent>>(exps: I) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn from_slice(exps: &[Exponent]) -> Self {
        Self::new(exps.iter().copied())
    }

    /// The variable `x_{index+1}` as a monomial.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, index: usize) -> Exponent {
        self.exps[index]
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[index] += 1;
        m.degree += 1;
        m
    }

    /// True when `self` divides `other` conventionally.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Proper divisibility: `self | other` and `self != other`.
    pub fn properly_divides(&self, other: &Monomial) -> bool {
        self.degree < other.degree && self.divides(other)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Class of the monomial: 0-based index of the smallest variable that
    /// occurs with positive exponent. `None` for the monomial 1.
    pub fn class(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Appends `extra` variables with exponent 0 at the smallest positions.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial { exps, degree: self.degree }
    }

    pub(crate) fn with_exponent(&self, index: usize, e: Exponent) -> Monomial {
        let mut m = self.clone();
        m.degree = m.degree - m.exps[index] as u32 + e as u32;
        m.exps[index] = e;
        m
    }

    pub fn cmp_by(&self, other: &Monomial, ord: MonomialOrdering) -> std::cmp::Ordering {
        ord.compare(self, other)
    }

    /// Renders with the given variable names, e.g. `x1^2*x3`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
