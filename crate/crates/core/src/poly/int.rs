use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coeff, Monomial, MonomialOrdering, Polynomial};

/// Primitive integer representative of a polynomial, used inside the
/// completion loops.
///
/// Reductions are fraction free (`a*h - b*t*g`), so only scalar multiples of
/// the exact rational result are produced; scalar multiples do not change
/// leading monomials or ideal membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: Vec::new() }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let prim = p.primitive();
        IntPoly {
            terms: prim.terms().iter().map(|(m, c)| (m.clone(), c.numer().clone())).collect(),
        }
    }

    pub fn to_polynomial(&self, nvars: usize, ord: MonomialOrdering) -> Polynomial {
        Polynomial::from_sorted(
            nvars,
            ord,
            self.terms.iter().map(|(m, c)| (m.clone(), Coeff::from_integer(c.clone()))).collect(),
        )
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn mul_monomial(&self, m: &Monomial) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn mul_var(&self, var: usize) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(t, c)| (t.mul_var(var), c.clone())).collect() }
    }

    /// Divides out the integer content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    /// Eliminates the term at `pos` using `g`, whose leading monomial must
    /// divide that term's monomial: `self := a*self - b*t*g`.
    pub fn reduce_at(&mut self, pos: usize, g: &IntPoly, ord: MonomialOrdering) {
        let old = std::mem::take(&mut self.terms);
        let (m, c) = &old[pos];
        let (glm, gl) = &g.terms[0];
        let t = glm.quotient_of(m).expect("reducer must divide the term");
        let d = c.gcd(gl);
        let (mut a, mut b) = (gl / &d, c / &d);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        let scale = !a.is_one();
        let mut out = Vec::with_capacity(old.len() + g.terms.len());
        let mut it = old.into_iter();
        for _ in 0..pos {
            let (m, c) = it.next().unwrap();
            out.push((m, if scale { c * &a } else { c }));
        }
        it.next();
        let mut lhs = it.peekable();
        let mut rhs = g.terms[1..].iter().map(|(gm, gc)| (gm.mul(&t), gc)).peekable();
        loop {
            let step = match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.compare(&x.0, &y.0),
            };
            match step {
                Ordering::Greater => {
                    let (m, c) = lhs.next().unwrap();
                    out.push((m, if scale { c * &a } else { c }));
                }
                Ordering::Less => {
                    let (m, gc) = rhs.next().unwrap();
                    out.push((m, -(gc * &b)));
                }
                Ordering::Equal => {
                    let (m, c) = lhs.next().unwrap();
                    let (_, gc) = rhs.next().unwrap();
                    let v = if scale { c * &a } else { c } - gc * &b;
                    if !v.is_zero() {
                        out.push((m, v));
                    }
                }
            }
        }
        self.terms = out;
    }
}

/// Primitive integer forms of the non-zero inputs, duplicates (up to a
/// scalar) removed, first occurrence kept.
pub fn prepare_generators(polys: &[Polynomial]) -> Vec<IntPoly> {
    let mut out: Vec<IntPoly> = Vec::new();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let ip = IntPoly::from_polynomial(p);
        if !out.contains(&ip) {
            out.push(ip);
        }
    }
    out
}
