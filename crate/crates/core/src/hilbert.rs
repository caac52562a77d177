//! Hilbert functions of leading-monomial sets.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;

use crate::divisions::{lms_head_autoreduced, Division};
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("the set is not involutively head autoreduced")]
    NotAutoreduced,
}

/// Number of monomials of degree `deg` in `k` variables.
pub fn monomial_count(deg: i64, k: u32) -> BigUint {
    if deg < 0 {
        return BigUint::zero();
    }
    if k == 0 {
        return BigUint::from((deg == 0) as u32);
    }
    binomial(BigUint::from(deg as u64 + k as u64 - 1), BigUint::from(k as u64 - 1))
}

/// Involutive Hilbert function of a head-autoreduced set, kept as
/// `(degree, number of multiplicative variables)` pairs and evaluated lazily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertEvaluator {
    nvars: usize,
    gens: Vec<(u32, u32)>,
}

impl HilbertEvaluator {
    pub fn new(nvars: usize, gens: Vec<(u32, u32)>) -> Self {
        debug_assert!(gens.iter().all(|&(_, k)| k as usize <= nvars));
        HilbertEvaluator { nvars, gens }
    }

    /// Snapshot of a set of leading monomials under `division`.
    pub fn from_lms(nvars: usize, lms: &[Monomial], division: Division) -> Result<Self, HilbertError> {
        if lms.is_empty() {
            return Ok(HilbertEvaluator::new(nvars, Vec::new()));
        }
        if !lms_head_autoreduced(lms, division) {
            return Err(HilbertError::NotAutoreduced);
        }
        let part = division.partition(lms).expect("non-empty");
        Ok(Self::from_parts(nvars, lms, part.masks().iter().map(|m| m.len() as u32)))
    }

    pub(crate) fn from_parts<I: IntoIterator<Item = u32>>(nvars: usize, lms: &[Monomial], counts: I) -> Self {
        HilbertEvaluator::new(nvars, lms.iter().map(|u| u.degree()).zip(counts).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[(u32, u32)] {
        &self.gens
    }

    /// `C(n+s-1, s) - sum_f C(s - deg f + k_f - 1, s - deg f)`.
    pub fn eval(&self, s: u32) -> BigUint {
        let total = monomial_count(s as i64, self.nvars as u32);
        let covered: BigUint = self.gens.iter().map(|&(d, k)| monomial_count(s as i64 - d as i64, k)).sum();
        total - covered
    }
}

pub fn involutive_hf(nvars: usize, lms: &[Monomial], division: Division, s: u32) -> Result<BigUint, HilbertError> {
    Ok(HilbertEvaluator::from_lms(nvars, lms, division)?.eval(s))
}

/// All monomials of total degree `s` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, s: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u16>, left: usize, s: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(s as u16);
            out.push(Monomial::from_slice(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=s).rev() {
            prefix.push(e as u16);
            rec(prefix, left - 1, s - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if s == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, s, &mut out);
    out
}

/// Number of degree-`s` monomials not divisible by any element of `lms`.
pub fn brute_force_hf(nvars: usize, lms: &[Monomial], s: u32) -> BigUint {
    let count = monomials_of_degree(nvars, s).iter().filter(|m| !lms.iter().any(|u| u.divides(m))).count();
    BigUint::from(count)
}

/// Hilbert-driven test: the involutive Hilbert function of `lms` equals the
/// target at degree `d`.
pub fn hf_equal_at(
    nvars: usize,
    lms: &[Monomial],
    division: Division,
    target: &HilbertEvaluator,
    d: u32,
) -> Result<bool, HilbertError> {
    Ok(involutive_hf(nvars, lms, division, d)? == target.eval(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_slice(e)
    }

    fn janet_basis() -> Vec<Monomial> {
        vec![m(&[2, 0, 1]), m(&[1, 1, 0]), m(&[1, 0, 2]), m(&[2, 1, 0])]
    }

    #[test]
    fn running_example_degree_three() {
        assert_eq!(involutive_hf(3, &janet_basis(), Division::Janet, 3).unwrap(), BigUint::from(5u32));
        // standard monomials x1^3, x2^3, x2^2 x3, x2 x3^2, x3^3
        assert_eq!(brute_force_hf(3, &janet_basis()[..3], 3), BigUint::from(5u32));
    }

    #[test]
    fn empty_and_low_degree() {
        for s in 0..6 {
            let full = monomial_count(s as i64, 3);
            assert_eq!(involutive_hf(3, &[], Division::Janet, s).unwrap(), full);
        }
        assert_eq!(involutive_hf(3, &janet_basis(), Division::Janet, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(brute_force_hf(3, &[], 2), BigUint::from(6u32));
        assert_eq!(brute_force_hf(2, &[m(&[1, 0])], 3), BigUint::from(1u32));
    }

    #[test]
    fn agrees_with_enumeration() {
        let b = janet_basis();
        for s in 0..8 {
            assert_eq!(involutive_hf(3, &b, Division::Janet, s).unwrap(), brute_force_hf(3, &b, s), "s = {s}");
        }
    }

    #[test]
    fn missing_generator_is_detected() {
        let b = janet_basis();
        let target = HilbertEvaluator::from_lms(3, &b, Division::Janet).unwrap();
        assert!(hf_equal_at(3, &b, Division::Janet, &target, 3).unwrap());
        let partial = &b[..3];
        assert!(!hf_equal_at(3, partial, Division::Janet, &target, 3).unwrap());
        assert!(involutive_hf(3, partial, Division::Janet, 3).unwrap() > target.eval(3));
    }

    #[test]
    fn rejects_non_autoreduced() {
        let err = involutive_hf(2, &[m(&[1, 0]), m(&[2, 0])], Division::Pommaret, 2).unwrap_err();
        assert_eq!(err, HilbertError::NotAutoreduced);
    }

    #[test]
    fn degree_enumeration_size() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
    }
}
