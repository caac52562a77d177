//! Quasi-stable position: the `test` predicate on Janet leading monomials,
//! a direct check of the definition, and the Hilbert-driven search for a
//! linear change of coordinates giving a finite Pommaret basis.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisions::{janet_partition, pommaret_multiplicative};
use crate::hilbert::HilbertEvaluator;
use crate::involutive::{involutive_basis_with, EngineConfig, EngineError, InvolutiveOutcome};
use crate::poly::{Coeff, Monomial, MonomialOrdering, Polynomial};
use crate::stats::RunStats;
use crate::Division;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuasiStableError {
    #[error("the monomial set is empty")]
    EmptySet,
    #[error("Janet and Pommaret multiplicative sets differ at {0} but no Janet-only variable exists")]
    NoWitness(String),
    #[error("a linear change needs distinct variables and a non-zero scalar")]
    InvalidChange,
    #[error("input must be homogeneous")]
    NotHomogeneous,
    #[error("no accepted change for obstruction {verdict:?} after {retries} draws")]
    RetriesExhausted { verdict: TestVerdict, retries: usize },
    #[error("gave up after {0} accepted changes")]
    TooManyChanges(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `x_target -> x_target + scalar * x_addend`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    pub target: usize,
    pub addend: usize,
    pub scalar: Coeff,
}

impl LinearChange {
    pub fn new(target: usize, addend: usize, scalar: Coeff) -> Result<Self, QuasiStableError> {
        use num_traits::Zero;
        if target == addend || scalar.is_zero() {
            return Err(QuasiStableError::InvalidChange);
        }
        Ok(LinearChange { target, addend, scalar })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TestVerdict {
    QuasiStable,
    /// The first offending monomial's smallest Janet-only variable and its
    /// class variable.
    Obstruction { witness: usize, class: usize },
}

impl TestVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, TestVerdict::QuasiStable)
    }
}

/// Compares Janet and Pommaret multiplicative variables on `lms`, scanning
/// in ascending order.
pub fn test(lms: &[Monomial], ord: MonomialOrdering) -> Result<TestVerdict, QuasiStableError> {
    let janet = janet_partition(lms).map_err(|_| QuasiStableError::EmptySet)?;
    let mut order: Vec<usize> = (0..lms.len()).collect();
    order.sort_by(|&a, &b| ord.compare(&lms[a], &lms[b]));
    for i in order {
        let u = &lms[i];
        let mj = janet.multiplicative(i);
        let mp = pommaret_multiplicative(u);
        if mj == mp {
            continue;
        }
        let witness = mj.minus(mp).iter().next();
        return match (witness, u.class()) {
            (Some(witness), Some(class)) => Ok(TestVerdict::Obstruction { witness, class }),
            _ => Err(QuasiStableError::NoWitness(format!("{:?}", u.exponents()))),
        };
    }
    Ok(TestVerdict::QuasiStable)
}

/// Checks the definition directly on the generators: for every exact power
/// `x_i^s` of a generator `m` and every `j < i`, some `x_j^t * m / x_i^s`
/// lies in the ideal. Searching `t` up to the largest `x_j`-degree among the
/// generators is enough, since a generator dividing the product divides it
/// already at that power.
pub fn is_quasi_stable(lms: &[Monomial]) -> bool {
    let in_ideal = |m: &Monomial| lms.iter().any(|g| g.divides(m));
    lms.iter().all(|m| {
        (0..m.nvars()).filter(|&i| m.exponent(i) > 0).all(|i| {
            let base = m.with_exponent(i, 0);
            (0..i).all(|j| {
                let bound = lms.iter().map(|g| g.exponent(j)).max().unwrap_or(0);
                let xj = Monomial::var(m.nvars(), j);
                let mut cand = base.clone();
                for _ in 0..=bound {
                    if in_ideal(&cand) {
                        return true;
                    }
                    cand = cand.mul(&xj);
                }
                false
            })
        })
    })
}

pub fn apply_change(polys: &[Polynomial], change: &LinearChange) -> Vec<Polynomial> {
    polys.iter().map(|p| p.substitute_linear(change.target, change.addend, &change.scalar)).collect()
}

/// Applies every change in order to the original generators.
pub fn replay(changes: &[LinearChange], polys: &[Polynomial]) -> Vec<Polynomial> {
    changes.iter().fold(polys.to_vec(), |acc, c| apply_change(&acc, c))
}

pub fn pommaret_basis(polys: &[Polynomial], ord: MonomialOrdering) -> Result<InvolutiveOutcome, EngineError> {
    involutive_basis_with(polys, &EngineConfig::new(Division::Pommaret, ord), None)
}

#[derive(Clone, Debug)]
pub struct QuasiStableConfig {
    pub ord: MonomialOrdering,
    pub seed: u64,
    /// Scalar draws per obstruction before giving up.
    pub max_retries: usize,
    /// Prune by the Hilbert function of the first Janet basis.
    pub hilbert_driven: bool,
    pub max_changes: usize,
    pub debug_checks: bool,
}

impl Default for QuasiStableConfig {
    fn default() -> Self {
        QuasiStableConfig {
            ord: MonomialOrdering::DegRevLex,
            seed: 0,
            max_retries: 25,
            hilbert_driven: true,
            max_changes: 64,
            debug_checks: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChangeLog {
    pub changes: Vec<LinearChange>,
    /// Stats of every Janet basis computed, including rejected draws.
    pub steps: Vec<RunStats>,
    pub final_janet: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct QuasiStableOutcome {
    pub log: ChangeLog,
    /// Sum over all Janet basis computations.
    pub stats: RunStats,
}

impl QuasiStableOutcome {
    pub fn chen(&self) -> usize {
        self.log.changes.len()
    }
}

fn lms_of(basis: &[Polynomial]) -> Vec<Monomial> {
    basis.iter().filter_map(|p| p.lm().cloned()).collect()
}

pub fn hd_quasi_stable(polys: &[Polynomial], config: &QuasiStableConfig) -> Result<QuasiStableOutcome, QuasiStableError> {
    if polys.is_empty() {
        return Err(QuasiStableError::EmptySet);
    }
    if !polys.iter().all(Polynomial::is_homogeneous) {
        return Err(QuasiStableError::NotHomogeneous);
    }
    let ord = config.ord;
    let mut engine = EngineConfig::new(Division::Janet, ord);
    engine.debug_checks = config.debug_checks;
    let first = involutive_basis_with(polys, &engine, None)?;
    let nvars = polys[0].nvars();
    let target = HilbertEvaluator::from_lms(nvars, &lms_of(&first.basis), Division::Janet)
        .expect("engine output is head autoreduced");
    let mut stats = first.stats.clone();
    let mut steps = vec![first.stats];
    let mut janet = first.basis;
    let mut changes = Vec::new();
    let mut verdict = test(&lms_of(&janet), ord)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    while let TestVerdict::Obstruction { witness, class } = verdict.clone() {
        if changes.len() >= config.max_changes {
            return Err(QuasiStableError::TooManyChanges(changes.len()));
        }
        let mut accepted = None;
        for attempt in 0..config.max_retries {
            let hi = 101u64 << attempt.min(40);
            let c = Coeff::from_integer(BigInt::from(rng.gen_range(1..=hi)));
            let change = LinearChange::new(class, witness, c)?;
            let moved = apply_change(&janet, &change);
            let hd_target = config.hilbert_driven.then_some(&target);
            let temp = involutive_basis_with(&moved, &engine, hd_target)?;
            stats.accumulate(&temp.stats);
            steps.push(temp.stats.clone());
            let next = test(&lms_of(&temp.basis), ord)?;
            if next != verdict {
                accepted = Some((change, temp.basis, next));
                break;
            }
        }
        let Some((change, basis, next)) = accepted else {
            return Err(QuasiStableError::RetriesExhausted { verdict, retries: config.max_retries });
        };
        changes.push(change);
        janet = basis;
        verdict = next;
    }
    stats.basis_size = janet.len();
    stats.max_deg = janet.iter().map(Polynomial::degree).max().unwrap_or(0);
    Ok(QuasiStableOutcome { log: ChangeLog { changes, steps, final_janet: janet }, stats })
}
