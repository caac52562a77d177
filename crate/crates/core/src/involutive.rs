//! Signature-based involutive completion producing minimal Janet or
//! Pommaret bases.
//!
//! Work items are quadruples `(poly, ancestor, processed NM variables,
//! signature)`. Items are taken in Schreyer order; an item is skipped when a
//! recorded syzygy signature divides its signature with non-constant
//! quotient, and the first reduction step may discard it through the
//! signature test or the involutive product/chain criteria.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use std::time::Instant;

use crate::divisions::{
    involutive_divisor, lms_head_autoreduced, Division, MultiplicativePartition, VarMask,
};
use crate::hilbert::HilbertEvaluator;
use crate::poly::{prepare_generators, IntPoly, Monomial, MonomialOrdering, OrderedMonomial, Polynomial};
use crate::signatures::{sig_mul, SigRegistry, Signature, SyzygySet};
use crate::stats::RunStats;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("degree cap {cap} exceeded; the ideal is probably not in quasi-stable position")]
    DegreeCapExceeded { cap: u32, partial: Vec<Polynomial> },
    #[error("intermediate basis lost involutive head autoreduction")]
    NotHeadAutoreduced,
    #[error("Hilbert-driven pruning emptied the queue but the result is not involutive")]
    HilbertInconsistent { partial: Vec<Polynomial> },
}

/// Identifies the element a work item descends from by prolongation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ancestor {
    pub id: usize,
    pub lm: Monomial,
}

#[derive(Clone, Debug)]
pub struct Quadruple {
    pub poly: IntPoly,
    pub anc: Ancestor,
    /// Non-multiplicative variables already prolonged.
    pub nm: VarMask,
    pub sig: Signature,
}

impl Quadruple {
    /// A generator that is its own ancestor.
    pub fn generator(poly: IntPoly, anc_id: usize, sig: Signature) -> Self {
        let lm = poly.lm().clone();
        Quadruple { poly, anc: Ancestor { id: anc_id, lm }, nm: VarMask::EMPTY, sig }
    }

    pub fn lm(&self) -> &Monomial {
        self.poly.lm()
    }
}

/// Which test discarded an item before reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// `lm(anc p) * lm(anc g) = lm(p)`.
    C1,
    /// `lcm(lm(anc p), lm(anc g))` properly divides `lm(p)`.
    C2,
}

pub fn criteria(p: &Quadruple, g: &Quadruple) -> Option<Criterion> {
    criteria_on(&p.anc.lm, &g.anc.lm, p.lm())
}

pub fn criteria_on(anc_p: &Monomial, anc_g: &Monomial, lm_p: &Monomial) -> Option<Criterion> {
    if &anc_p.mul(anc_g) == lm_p {
        Some(Criterion::C1)
    } else if anc_p.lcm(anc_g).properly_divides(lm_p) {
        Some(Criterion::C2)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub division: Division,
    pub ord: MonomialOrdering,
    /// Syzygy-signature pruning and the signature tests during reduction.
    pub prune_syzygies: bool,
    /// Involutive product and chain criteria.
    pub use_criteria: bool,
    /// Abort when a prolongation exceeds this degree. Pommaret runs without
    /// an explicit cap use `4 + 4 * (max input degree)`.
    pub degree_cap: Option<u32>,
    /// Check head autoreduction at every loop head and verify involutivity
    /// after Hilbert-driven early exits.
    pub debug_checks: bool,
}

impl EngineConfig {
    pub fn new(division: Division, ord: MonomialOrdering) -> Self {
        EngineConfig { division, ord, prune_syzygies: true, use_criteria: true, degree_cap: None, debug_checks: false }
    }
}

#[derive(Clone, Debug)]
pub struct InvolutiveOutcome {
    /// Monic basis, ascending by leading monomial.
    pub basis: Vec<Polynomial>,
    pub stats: RunStats,
}

pub fn involutive_basis(
    polys: &[Polynomial],
    division: Division,
    ord: MonomialOrdering,
) -> Result<InvolutiveOutcome, EngineError> {
    involutive_basis_with(polys, &EngineConfig::new(division, ord), None)
}

/// Completion with Hilbert-driven pruning against `target`, the Hilbert
/// function of the ideal (possibly read off a basis of a linearly
/// equivalent ideal).
pub fn hd_involutive_basis(
    polys: &[Polynomial],
    division: Division,
    ord: MonomialOrdering,
    target: &HilbertEvaluator,
) -> Result<InvolutiveOutcome, EngineError> {
    involutive_basis_with(polys, &EngineConfig::new(division, ord), Some(target))
}

pub fn involutive_basis_with(
    polys: &[Polynomial],
    config: &EngineConfig,
    target: Option<&HilbertEvaluator>,
) -> Result<InvolutiveOutcome, EngineError> {
    let start = Instant::now();
    let Some(nvars) = polys.first().map(Polynomial::nvars) else {
        return Ok(InvolutiveOutcome { basis: Vec::new(), stats: RunStats::default() });
    };
    let ord = config.ord;
    let polys: Vec<Polynomial> = polys.iter().map(|p| p.with_ordering(ord)).collect();
    let mut gens = prepare_generators(&polys);
    if gens.is_empty() {
        return Ok(InvolutiveOutcome { basis: Vec::new(), stats: RunStats::default() });
    }
    gens.sort_by(|a, b| ord.compare(a.lm(), b.lm()));
    let cap = match (config.degree_cap, config.division) {
        (Some(c), _) => Some(c),
        (None, Division::Pommaret) => Some(4 + 4 * gens.iter().map(|g| g.lm().degree()).max().unwrap_or(0)),
        (None, Division::Janet) => None,
    };
    let mut engine = Engine::new(nvars, config, cap, target);
    engine.seed(gens)?;
    engine.run()?;
    let mut stats = engine.stats.clone();
    let basis = engine.output();
    stats.basis_size = basis.len();
    stats.max_deg = basis.iter().map(Polynomial::degree).max().unwrap_or(0);
    stats.elapsed = start.elapsed();
    Ok(InvolutiveOutcome { basis, stats })
}

/// Queue key: Schreyer weight, then earlier index first among equal
/// weights reversed (smaller index is the larger signature), then degree,
/// leading monomial and insertion order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct QueueKey {
    weight: OrderedMonomial,
    index: Reverse<usize>,
    degree: u32,
    lm: OrderedMonomial,
    seq: u64,
}

/// Read-only view used by the involutive normal form.
pub struct ReductionContext<'a> {
    pub basis: &'a [Quadruple],
    pub lms: &'a [Monomial],
    pub partition: &'a MultiplicativePartition,
    pub registry: &'a SigRegistry,
    pub ord: MonomialOrdering,
    pub prune_syzygies: bool,
    pub use_criteria: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discard {
    /// `m / lm(g) * sig(g) = sig(p)`.
    Signature,
    Criterion(Criterion),
}

#[derive(Clone, Debug)]
pub enum NormalFormOutcome {
    /// Involutive remainder (possibly zero) with the syzygy signatures found.
    Reduced { h: IntPoly, syzygies: Vec<Signature> },
    /// Discarded at the first step; counts as a zero remainder.
    Discarded { reason: Discard, syzygies: Vec<Signature> },
}

impl NormalFormOutcome {
    pub fn is_zero(&self) -> bool {
        match self {
            NormalFormOutcome::Reduced { h, .. } => h.is_zero(),
            NormalFormOutcome::Discarded { .. } => true,
        }
    }
}

/// Involutive normal form of `p` modulo the quadruples in `ctx`.
pub fn involutive_normal_form(p: &Quadruple, ctx: &ReductionContext<'_>) -> NormalFormOutcome {
    let mut syzygies = Vec::new();
    let mut h = p.poly.clone();
    let mut pos = 0;
    let mut steps = 0u32;
    while pos < h.len() {
        let m = &h.terms()[pos].0;
        let Some(gi) = involutive_divisor(m, ctx.lms, ctx.partition, ctx.ord) else {
            pos += 1;
            continue;
        };
        let g = &ctx.basis[gi];
        if pos == 0 && m == p.lm() {
            let quotient = g.lm().quotient_of(m).expect("involutive divisor divides");
            let gsig = sig_mul(&quotient, &g.sig);
            if ctx.prune_syzygies && gsig == p.sig {
                return NormalFormOutcome::Discarded { reason: Discard::Signature, syzygies };
            }
            if ctx.use_criteria {
                if let Some(c) = criteria(p, g) {
                    return NormalFormOutcome::Discarded { reason: Discard::Criterion(c), syzygies };
                }
            }
            if ctx.prune_syzygies {
                let lower = ctx.registry.compare(&gsig, &p.sig, ctx.ord).expect("registered signatures");
                if lower == Ordering::Less {
                    syzygies.push(p.sig.clone());
                }
            }
        }
        h.reduce_at(pos, &g.poly, ctx.ord);
        steps += 1;
        if steps % 32 == 0 {
            h.make_primitive();
        }
    }
    h.make_primitive();
    NormalFormOutcome::Reduced { h, syzygies }
}

struct Engine<'a> {
    nvars: usize,
    config: &'a EngineConfig,
    cap: Option<u32>,
    target: Option<&'a HilbertEvaluator>,
    basis: Vec<Quadruple>,
    lms: Vec<Monomial>,
    partition: Option<MultiplicativePartition>,
    queue: BTreeMap<QueueKey, Quadruple>,
    syz: SyzygySet,
    registry: SigRegistry,
    stats: RunStats,
    seq: u64,
    next_ancestor: usize,
    /// Hilbert values of the current basis and of the target, per degree.
    hf_cache: HashMap<u32, BigUint>,
    target_cache: HashMap<u32, BigUint>,
}

impl<'a> Engine<'a> {
    fn new(nvars: usize, config: &'a EngineConfig, cap: Option<u32>, target: Option<&'a HilbertEvaluator>) -> Self {
        Engine {
            nvars,
            config,
            cap,
            target,
            basis: Vec::new(),
            lms: Vec::new(),
            partition: None,
            queue: BTreeMap::new(),
            syz: SyzygySet::new(),
            registry: SigRegistry::new(),
            stats: RunStats::default(),
            seq: 0,
            next_ancestor: 0,
            hf_cache: HashMap::new(),
            target_cache: HashMap::new(),
        }
    }

    fn fresh_ancestor(&mut self) -> usize {
        self.next_ancestor += 1;
        self.next_ancestor
    }

    fn seed(&mut self, gens: Vec<IntPoly>) -> Result<(), EngineError> {
        for (i, g) in gens.into_iter().enumerate() {
            let index = self.registry.register(g.lm().clone());
            let anc = self.fresh_ancestor();
            let q = Quadruple::generator(g, anc, Signature::unit(index, self.nvars));
            if i == 0 {
                self.basis.push(q);
            } else {
                self.enqueue(q);
            }
        }
        self.refresh_partition();
        self.prolong()
    }

    fn enqueue(&mut self, q: Quadruple) {
        let ord = self.config.ord;
        let weight = self.registry.weight(&q.sig).expect("registered signature");
        let key = QueueKey {
            weight: OrderedMonomial { mono: weight, ord },
            index: Reverse(q.sig.index),
            degree: q.lm().degree(),
            lm: OrderedMonomial { mono: q.lm().clone(), ord },
            seq: self.seq,
        };
        self.seq += 1;
        self.queue.insert(key, q);
    }

    fn refresh_partition(&mut self) {
        self.lms = self.basis.iter().map(|q| q.lm().clone()).collect();
        self.hf_cache.clear();
        self.partition = if self.lms.is_empty() { None } else { self.config.division.partition(&self.lms).ok() };
    }

    fn output(&self) -> Vec<Polynomial> {
        let ord = self.config.ord;
        let mut out: Vec<Polynomial> =
            self.basis.iter().map(|q| q.poly.to_polynomial(self.nvars, ord).monic()).collect();
        out.sort_by(|a, b| ord.compare(a.lm().unwrap(), b.lm().unwrap()));
        out
    }

    fn hf_matches(&mut self, target: &HilbertEvaluator, d: u32) -> bool {
        let part = self.partition.as_ref().expect("basis is never empty");
        let (nvars, lms) = (self.nvars, &self.lms);
        let current = self.hf_cache.entry(d).or_insert_with(|| {
            HilbertEvaluator::from_parts(nvars, lms, part.masks().iter().map(|m| m.len() as u32)).eval(d)
        });
        let wanted = self.target_cache.entry(d).or_insert_with(|| target.eval(d));
        current == wanted
    }

    /// Drops queue items of degree `deg(p)` while the intermediate basis
    /// already has the target Hilbert function there. Returns the next item
    /// to process, or `None` once the queue is exhausted.
    fn hilbert_prune(&mut self, mut p: Quadruple) -> Option<Quadruple> {
        let Some(target) = self.target else {
            return Some(p);
        };
        loop {
            let d = p.lm().degree();
            if !self.hf_matches(target, d) {
                return Some(p);
            }
            let before = self.queue.len();
            self.queue.retain(|_, q| q.lm().degree() != d);
            self.stats.hd += 1 + (before - self.queue.len()) as u64;
            p = self.queue.pop_first()?.1;
        }
    }

    fn run(&mut self) -> Result<(), EngineError> {
        while let Some((_, p)) = self.queue.pop_first() {
            if self.config.debug_checks && !lms_head_autoreduced(&self.lms, self.config.division) {
                return Err(EngineError::NotHeadAutoreduced);
            }
            let Some(p) = self.hilbert_prune(p) else {
                if self.config.debug_checks && !is_locally_involutive(&self.output(), self.config.division) {
                    return Err(EngineError::HilbertInconsistent { partial: self.output() });
                }
                return Ok(());
            };
            if self.config.prune_syzygies && self.syz.divides(&p.sig, true) {
                self.stats.syz += 1;
                continue;
            }
            self.step(p)?;
        }
        Ok(())
    }

    fn step(&mut self, p: Quadruple) -> Result<(), EngineError> {
        let outcome = {
            let ctx = ReductionContext {
                basis: &self.basis,
                lms: &self.lms,
                partition: self.partition.as_ref().expect("basis is never empty"),
                registry: &self.registry,
                ord: self.config.ord,
                prune_syzygies: self.config.prune_syzygies,
                use_criteria: self.config.use_criteria,
            };
            involutive_normal_form(&p, &ctx)
        };
        let (h, syzygies) = match outcome {
            NormalFormOutcome::Reduced { h, syzygies } => {
                if h.is_zero() {
                    self.stats.redz += 1;
                }
                (h, syzygies)
            }
            NormalFormOutcome::Discarded { reason, syzygies } => {
                match reason {
                    Discard::Signature => self.stats.syz += 1,
                    Discard::Criterion(Criterion::C1) => self.stats.c1 += 1,
                    Discard::Criterion(Criterion::C2) => self.stats.c2 += 1,
                }
                (IntPoly::zero(), syzygies)
            }
        };
        for s in syzygies {
            self.syz.insert(s);
        }

        if h.is_zero() {
            if p.lm() == &p.anc.lm {
                let id = p.anc.id;
                self.queue.retain(|_, q| q.anc.id != id);
            }
        } else if h.lm() != p.lm() {
            let new_lm = h.lm().clone();
            let (demoted, kept): (Vec<Quadruple>, Vec<Quadruple>) =
                std::mem::take(&mut self.basis).into_iter().partition(|q| new_lm.properly_divides(q.lm()));
            self.basis = kept;
            for q in demoted {
                self.enqueue(q);
            }
            let index = self.registry.register(new_lm);
            let anc = self.fresh_ancestor();
            self.basis.push(Quadruple::generator(h, anc, Signature::unit(index, self.nvars)));
        } else {
            self.basis.push(Quadruple { poly: h, anc: p.anc, nm: p.nm, sig: p.sig });
        }
        self.refresh_partition();
        self.prolong()
    }

    /// Queues every non-multiplicative prolongation not processed yet.
    fn prolong(&mut self) -> Result<(), EngineError> {
        let part = self.partition.clone().expect("basis is never empty");
        let mut fresh = Vec::new();
        let mut overflow = false;
        for (i, q) in self.basis.iter_mut().enumerate() {
            let nm = part.non_multiplicative(i);
            for x in nm.minus(q.nm).iter() {
                let poly = q.poly.mul_var(x);
                if self.cap.is_some_and(|cap| poly.lm().degree() > cap) {
                    overflow = true;
                    break;
                }
                let sig = sig_mul(&Monomial::var(self.nvars, x), &q.sig);
                fresh.push(Quadruple { poly, anc: q.anc.clone(), nm: VarMask::EMPTY, sig });
            }
            q.nm = q.nm.union(nm);
        }
        if overflow {
            return Err(EngineError::DegreeCapExceeded { cap: self.cap.unwrap_or(0), partial: self.output() });
        }
        for q in fresh {
            self.enqueue(q);
        }
        Ok(())
    }
}

/// Plain involutive remainder of `f` modulo `basis` (exact arithmetic).
pub fn involutive_reduce(f: &Polynomial, basis: &[Polynomial], division: Division) -> Polynomial {
    let ord = f.ordering();
    let lms: Vec<Monomial> = basis.iter().filter_map(|g| g.lm().cloned()).collect();
    if lms.len() != basis.len() || lms.is_empty() {
        return f.clone();
    }
    let Ok(part) = division.partition(&lms) else {
        return f.clone();
    };
    let gens: Vec<IntPoly> = basis.iter().map(IntPoly::from_polynomial).collect();
    let mut h = IntPoly::from_polynomial(f);
    let mut pos = 0;
    while pos < h.len() {
        match involutive_divisor(&h.terms()[pos].0, &lms, &part, ord) {
            Some(gi) => h.reduce_at(pos, &gens[gi], ord),
            None => pos += 1,
        }
    }
    h.make_primitive();
    h.to_polynomial(f.nvars(), ord)
}

/// Every non-multiplicative prolongation reduces to zero.
pub fn is_locally_involutive(basis: &[Polynomial], division: Division) -> bool {
    let lms: Vec<Monomial> = basis.iter().filter_map(|g| g.lm().cloned()).collect();
    if lms.len() != basis.len() {
        return false;
    }
    if lms.is_empty() {
        return true;
    }
    let Ok(part) = division.partition(&lms) else {
        return false;
    };
    basis.iter().enumerate().all(|(i, g)| {
        let nvars = g.nvars();
        part.non_multiplicative(i)
            .iter()
            .all(|x| involutive_reduce(&g.mul_monomial(&Monomial::var(nvars, x)), basis, division).is_zero())
    })
}

/// No element's leading monomial is involutively divisible by the
/// leading monomials of the remaining elements.
pub fn minimality_check(basis: &[Polynomial], division: Division) -> bool {
    let lms: Vec<Monomial> = basis.iter().filter_map(|g| g.lm().cloned()).collect();
    if lms.len() != basis.len() {
        return false;
    }
    (0..lms.len()).all(|i| {
        let mut rest = lms.clone();
        let m = rest.remove(i);
        if rest.is_empty() {
            return true;
        }
        let Ok(part) = division.partition(&rest) else {
            return false;
        };
        let ord = basis[i].ordering();
        involutive_divisor(&m, &rest, &part, ord).is_none()
    })
}
