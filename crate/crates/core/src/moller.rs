//! Buchberger's algorithm with syzygy-signature pruning, plus an independent
//! textbook Buchberger used as a correctness oracle.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::poly::{prepare_generators, IntPoly, Monomial, MonomialOrdering, OrderedMonomial, Polynomial};
use crate::signatures::{SigRegistry, Signature, SyzygySet};
use crate::stats::RunStats;

/// A polynomial with its signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoly {
    pub poly: Polynomial,
    pub sig: Signature,
}

#[derive(Clone, Copy, Debug)]
pub struct GroebnerConfig {
    /// Skip pairs whose signature is divisible by a recorded syzygy signature.
    pub prune_syzygies: bool,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { prune_syzygies: true }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerOutcome {
    /// Monic basis elements in the order they were found.
    pub basis: Vec<Polynomial>,
    pub stats: RunStats,
}

pub fn groebner_basis(polys: &[Polynomial], ord: MonomialOrdering) -> GroebnerOutcome {
    groebner_basis_with(polys, ord, GroebnerConfig::default())
}

struct Item {
    poly: IntPoly,
    sig: Signature,
}

/// Normal selection strategy key: degree of the lcm, then the lcm, then FIFO.
type PairKey = (u32, OrderedMonomial, u64);

pub fn groebner_basis_with(polys: &[Polynomial], ord: MonomialOrdering, config: GroebnerConfig) -> GroebnerOutcome {
    let start = Instant::now();
    let mut stats = RunStats::default();
    let Some(nvars) = polys.first().map(Polynomial::nvars) else {
        return GroebnerOutcome { basis: Vec::new(), stats };
    };
    let polys: Vec<Polynomial> = polys.iter().map(|p| p.with_ordering(ord)).collect();
    let gens = prepare_generators(&polys);

    let mut reg = SigRegistry::new();
    let mut queue: BTreeMap<PairKey, Item> = BTreeMap::new();
    let mut seq = 0u64;
    let mut push = |queue: &mut BTreeMap<PairKey, Item>, item: Item| {
        let lm = item.poly.lm().clone();
        queue.insert((lm.degree(), OrderedMonomial { mono: lm, ord }, seq), item);
        seq += 1;
    };
    for g in gens {
        let index = reg.register(g.lm().clone());
        push(&mut queue, Item { sig: Signature::unit(index, nvars), poly: g });
    }

    let mut basis: Vec<(usize, IntPoly)> = Vec::new();
    let mut syz = SyzygySet::new();
    while let Some((_, p)) = queue.pop_first() {
        if config.prune_syzygies && syz.divides(&p.sig, false) {
            stats.syz += 1;
            continue;
        }
        let h = restricted_normal_form(p.poly, p.sig.index, &basis, ord);
        syz.insert(p.sig);
        if h.is_zero() {
            stats.redz += 1;
            continue;
        }
        let j = reg.register(h.lm().clone());
        for (_, g) in &basis {
            let r = h.lm().quotient_of(&g.lm().lcm(h.lm())).expect("lcm is a multiple");
            if g.lm().is_coprime(h.lm()) {
                syz.insert(Signature::new(j, g.lm().clone()));
            }
            push(&mut queue, Item { poly: h.mul_monomial(&r), sig: Signature::new(j, r) });
        }
        basis.push((j, h));
    }

    let basis: Vec<Polynomial> = basis.iter().map(|(_, g)| g.to_polynomial(nvars, ord).monic()).collect();
    stats.basis_size = basis.len();
    stats.max_deg = basis.iter().map(Polynomial::degree).max().unwrap_or(0);
    stats.elapsed = start.elapsed();
    GroebnerOutcome { basis, stats }
}

/// Full conventional reduction where the first step may not use the basis
/// element registered under `excluded`. If only that element divides the
/// head, the head is kept and reduction continues below it.
fn restricted_normal_form(mut h: IntPoly, excluded: usize, basis: &[(usize, IntPoly)], ord: MonomialOrdering) -> IntPoly {
    let mut pos = 0;
    let mut first = true;
    let mut steps = 0u32;
    while pos < h.len() {
        let m = &h.terms()[pos].0;
        let reducer = basis
            .iter()
            .find(|(idx, g)| !(first && *idx == excluded) && g.lm().divides(m))
            .map(|(_, g)| g);
        first = false;
        match reducer {
            Some(g) => {
                h.reduce_at(pos, g, ord);
                steps += 1;
                if steps % 32 == 0 {
                    h.make_primitive();
                }
            }
            None => pos += 1,
        }
    }
    h.make_primitive();
    h
}

/// Normal form of a labeled polynomial modulo `basis`, where `basis[k]`
/// carries signature index `indices[k]`. The first reduction step never uses
/// the element whose index equals `p.sig.index`.
pub fn normal_form(p: &LabeledPoly, basis: &[Polynomial], indices: &[usize], ord: MonomialOrdering) -> Polynomial {
    let nvars = p.poly.nvars();
    let b: Vec<(usize, IntPoly)> = indices
        .iter()
        .copied()
        .zip(basis.iter().map(|g| IntPoly::from_polynomial(&g.with_ordering(ord))))
        .collect();
    let h = restricted_normal_form(IntPoly::from_polynomial(&p.poly.with_ordering(ord)), p.sig.index, &b, ord);
    h.to_polynomial(nvars, ord).monic()
}

// ---------------------------------------------------------------------------
// Independent oracle: textbook Buchberger over exact rationals.

/// Conventional remainder of `f` modulo `divisors`, by plain rational
/// division steps.
pub fn reduce_full(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let mut h = f.clone();
    let mut pos = 0;
    while pos < h.len() {
        let m = h.terms()[pos].0.clone();
        match divisors.iter().find(|g| g.lm().is_some_and(|l| l.divides(&m))) {
            Some(g) => h = h.reduce_step(&m, g).expect("divisibility checked"),
            None => pos += 1,
        }
    }
    h
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = (f.lm().unwrap(), f.lc().unwrap());
    let (gm, gc) = (g.lm().unwrap(), g.lc().unwrap());
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.recip(), &fm.quotient_of(&l).unwrap());
    let b = g.mul_term(&gc.recip(), &gm.quotient_of(&l).unwrap());
    &a - &b
}

/// Buchberger's algorithm with no criteria at all. Pairs are taken by the
/// normal strategy (smallest lcm first).
pub fn plain_buchberger(polys: &[Polynomial], ord: MonomialOrdering) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> =
        polys.iter().filter(|p| !p.is_zero()).map(|p| p.with_ordering(ord).monic()).collect();
    let lcm = |g: &[Polynomial], (i, j): (usize, usize)| g[i].lm().unwrap().lcm(g[j].lm().unwrap());
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| ord.compare(&lcm(&g, pairs[a]), &lcm(&g, pairs[b])))
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let r = reduce_full(&s_polynomial(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    g
}

/// The reduced Groebner basis (monic, sorted by descending leading monomial).
pub fn reduced_groebner(polys: &[Polynomial], ord: MonomialOrdering) -> Vec<Polynomial> {
    let gb = plain_buchberger(polys, ord);
    interreduce(&gb)
}

/// Minimalizes and interreduces a Groebner basis.
pub fn interreduce(gb: &[Polynomial]) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in gb.iter().enumerate() {
        let lm = g.lm().unwrap();
        let redundant = gb.iter().enumerate().any(|(j, h)| {
            let hl = h.lm().unwrap();
            j != i && hl.divides(lm) && (hl != lm || j < i)
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            reduce_full(&minimal[i], &others).monic()
        })
        .collect();
    if let Some(ord) = out.first().map(Polynomial::ordering) {
        out.sort_by(|a, b| ord.compare(b.lm().unwrap(), a.lm().unwrap()));
    }
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(g: &[Polynomial]) -> bool {
    (0..g.len()).all(|j| (0..j).all(|i| reduce_full(&s_polynomial(&g[i], &g[j]), g).is_zero()))
}

/// Whether two monomial sets generate the same monomial ideal.
pub fn same_monomial_ideal(a: &[Monomial], b: &[Monomial]) -> bool {
    let covered = |xs: &[Monomial], ys: &[Monomial]| xs.iter().all(|x| ys.iter().any(|y| y.divides(x)));
    covered(a, b) && covered(b, a)
}

/// Ideal equality through reduced Groebner bases.
pub fn same_ideal(a: &[Polynomial], b: &[Polynomial], ord: MonomialOrdering) -> bool {
    reduced_groebner(a, ord) == reduced_groebner(b, ord)
}
