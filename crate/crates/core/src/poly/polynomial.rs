use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Exponent, Monomial, MonomialOrdering, PolyError};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Coeff = BigRational;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted strictly descending under `ord`, with no zero
/// coefficients, so equal polynomials have identical term sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    ord: MonomialOrdering,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, ord: MonomialOrdering) -> Self {
        Polynomial { nvars, ord, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, ord: MonomialOrdering, c: Coeff) -> Self {
        Self::term(ord, c, Monomial::one(nvars))
    }

    pub fn term(ord: MonomialOrdering, c: Coeff, m: Monomial) -> Self {
        let nvars = m.nvars();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { nvars, ord, terms }
    }

    /// Builds a polynomial from arbitrary terms; like monomials are collected
    /// and zero coefficients dropped.
    pub fn from_terms<I>(nvars: usize, ord: MonomialOrdering, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Polynomial { nvars, ord, terms }
    }

    /// Integer-coefficient shorthand used heavily in tests.
    pub fn from_int_terms(ord: MonomialOrdering, terms: &[(i64, &[Exponent])]) -> Self {
        let nvars = terms.first().map_or(0, |t| t.1.len());
        Self::from_terms(
            nvars,
            ord,
            terms.iter().map(|(c, e)| (Monomial::from_slice(e), Coeff::from_integer(BigInt::from(*c)))),
        )
    }

    /// Wraps already-canonical terms.
    pub(crate) fn from_sorted(nvars: usize, ord: MonomialOrdering, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ord.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { nvars, ord, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ord
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms
            .binary_search_by(|(t, _)| self.ord.compare(m, t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Leading monomial, leading coefficient and leading term.
    pub fn leading(&self) -> Result<(Monomial, Coeff, Polynomial), PolyError> {
        let (m, c) = self.terms.first().ok_or(PolyError::ZeroPolynomial)?;
        Ok((m.clone(), c.clone(), Polynomial::term(self.ord, c.clone(), m.clone())))
    }

    /// Maximum total degree over all terms; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> Exponent {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        if self.ord != other.ord {
            return Err(PolyError::OrderingMismatch);
        }
        Ok(())
    }

    fn merge_with<I>(&self, other: I) -> Polynomial
    where
        I: Iterator<Item = (Monomial, Coeff)>,
    {
        let ord = self.ord;
        let mut out = Vec::with_capacity(self.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = other.peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.compare(&x.0, &y.0),
            };
            match step {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    let s = c + d;
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            }
        }
        Polynomial { nvars: self.nvars, ord, terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge_with(other.terms.iter().cloned()))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge_with(other.terms.iter().map(|(m, c)| (m.clone(), -c))))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.ord);
        }
        Polynomial {
            nvars: self.nvars,
            ord: self.ord,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Multiplies by the term `c * m`. Ordering compatibility keeps the
    /// result sorted without re-sorting.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.ord);
        }
        Polynomial {
            nvars: self.nvars,
            ord: self.ord,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        self.mul_term(&Coeff::one(), m)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut acc = Polynomial::zero(self.nvars, self.ord);
        for (m, c) in &other.terms {
            acc = acc.checked_add(&self.mul_term(c, m))?;
        }
        Ok(acc)
    }

    /// One division step: `self - (c*m / lt(g)) * g` where `c` is the
    /// coefficient of `m` in `self`.
    pub fn reduce_step(&self, m: &Monomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(g)?;
        let (glm, glc) = g.terms.first().ok_or(PolyError::ZeroPolynomial)?;
        let c = self.coefficient(m).ok_or(PolyError::MissingMonomial)?;
        let q = glm.quotient_of(m).ok_or(PolyError::NotDivisible)?;
        let factor = c / glc;
        self.checked_sub(&g.mul_term(&factor, &q))
    }

    /// Scalar multiple with integer coefficients of gcd 1 and positive
    /// leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let denom_lcm = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let nums: Vec<BigInt> =
            self.terms.iter().map(|(_, c)| c.numer() * (&denom_lcm / c.denom())).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if nums[0].is_negative() {
            g = -g;
        }
        Polynomial {
            nvars: self.nvars,
            ord: self.ord,
            terms: self
                .terms
                .iter()
                .zip(nums)
                .map(|((m, _), n)| (m.clone(), Coeff::from_integer(n / &g)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Re-sorts the terms under another ordering.
    pub fn with_ordering(&self, ord: MonomialOrdering) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Polynomial { nvars: self.nvars, ord, terms }
    }

    /// Adds `extra` variables at the smallest positions.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial::from_terms(
            self.nvars + extra,
            self.ord,
            self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())),
        )
    }

    /// Sets variable `var` to 1 (keeps the variable count).
    pub fn evaluate_at_one(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.ord,
            self.terms.iter().map(|(m, c)| (m.with_exponent(var, 0), c.clone())),
        )
    }

    /// Substitutes `x_target -> x_target + c * x_addend` and expands.
    pub fn substitute_linear(&self, target: usize, addend: usize, c: &Coeff) -> Polynomial {
        let mut out: Vec<(Monomial, Coeff)> = Vec::new();
        for (m, coeff) in &self.terms {
            let e = m.exponent(target);
            let base = m.with_exponent(target, 0);
            // (x_t + c x_a)^e = sum_k binom(e, k) c^k x_a^k x_t^(e-k)
            let mut binom = BigInt::one();
            let mut cpow = Coeff::one();
            for k in 0..=e {
                let mono = base
                    .with_exponent(target, e - k)
                    .with_exponent(addend, base.exponent(addend) + k);
                out.push((mono, coeff * &cpow * Coeff::from_integer(binom.clone())));
                binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
                cpow = cpow * c;
            }
        }
        Polynomial::from_terms(self.nvars, self.ord, out)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_with(self.names))?;
            } else {
                write!(f, "{abs}*{}", m.display_with(self.names))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            ord: self.ord,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Homogenizes every polynomial with one fresh variable appended at the
/// smallest position.
pub fn homogenize(polys: &[Polynomial]) -> Vec<Polynomial> {
    polys
        .iter()
        .map(|p| {
            let d = p.degree();
            let n = p.nvars();
            Polynomial::from_terms(
                n + 1,
                p.ordering(),
                p.terms().iter().map(|(m, c)| {
                    let ext = m.extend(1);
                    let pad = (d - m.degree()) as Exponent;
                    (ext.with_exponent(n, pad), c.clone())
                }),
            )
        })
        .collect()
}
