//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use invbasis::hilbert::{involutive_hf, HilbertEvaluator};
use invbasis::involutive::{hd_involutive_basis, involutive_basis, minimality_check};
use invbasis::moller::{groebner_basis, reduce_full, s_polynomial};
use invbasis::quasistable::{hd_quasi_stable, is_quasi_stable, pommaret_basis, replay, test, QuasiStableConfig};
use invbasis::{Coeff, Division, Monomial, MonomialOrdering, PolySystem, Polynomial, RunStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRL: MonomialOrdering = MonomialOrdering::DegRevLex;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn load(rel: &str) -> PolySystem {
    let path = data_dir().join(rel);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    PolySystem::parse(&text).unwrap()
}

fn parse(text: &str) -> Vec<Polynomial> {
    PolySystem::parse(text).unwrap().polys
}

fn lms(basis: &[Polynomial]) -> Vec<Monomial> {
    basis.iter().map(|p| p.lm().unwrap().clone()).collect()
}

// ---------------------------------------------------------------------------
// Independent oracles. They use only the polynomial arithmetic of the
// library, never its division or reduction code.

fn oracle_multiplicative(division: Division, u: &Monomial, set: &[Monomial]) -> Vec<bool> {
    let n = u.nvars();
    match division {
        Division::Janet => (0..n)
            .map(|i| {
                let max = set
                    .iter()
                    .filter(|v| (0..i).all(|j| v.exponent(j) == u.exponent(j)))
                    .map(|v| v.exponent(i))
                    .max()
                    .unwrap();
                u.exponent(i) == max
            })
            .collect(),
        Division::Pommaret => {
            let class = (0..n).rev().find(|&i| u.exponent(i) > 0);
            (0..n).map(|i| class.is_none_or(|k| i >= k)).collect()
        }
    }
}

fn oracle_inv_divides(u: &Monomial, mult: &[bool], m: &Monomial) -> bool {
    (0..u.nvars()).all(|i| {
        let (a, b) = (u.exponent(i), m.exponent(i));
        if mult[i] {
            a <= b
        } else {
            a == b
        }
    })
}

/// Full involutive normal form by head-first elimination over Q.
fn oracle_inv_nf(f: &Polynomial, basis: &[Polynomial], division: Division) -> Polynomial {
    let heads = lms(basis);
    let mults: Vec<Vec<bool>> = heads.iter().map(|u| oracle_multiplicative(division, u, &heads)).collect();
    let (n, ord) = (f.nvars(), f.ordering());
    let mut h = f.clone();
    let mut rest = Polynomial::zero(n, ord);
    while let Some((m, c)) = h.terms().first().cloned() {
        let reducer = (0..basis.len()).find(|&i| oracle_inv_divides(&heads[i], &mults[i], &m));
        match reducer {
            Some(i) => {
                let g = &basis[i];
                let q = heads[i].quotient_of(&m).unwrap();
                let factor = &c / g.lc().unwrap();
                h = &h - &g.mul_term(&factor, &q);
            }
            None => {
                let t = Polynomial::term(ord, c, m);
                rest = &rest + &t;
                h = &h - &t;
            }
        }
    }
    rest
}

fn oracle_monomials(n: usize, s: u32) -> Vec<Vec<u16>> {
    if n == 1 {
        return vec![vec![s as u16]];
    }
    (0..=s)
        .flat_map(|e| {
            oracle_monomials(n - 1, s - e).into_iter().map(move |mut rest| {
                rest.insert(0, e as u16);
                rest
            })
        })
        .collect()
}

fn oracle_hf(n: usize, heads: &[Monomial], s: u32) -> usize {
    oracle_monomials(n, s)
        .into_iter()
        .filter(|e| {
            let m = Monomial::from_slice(e);
            !heads.iter().any(|u| u.divides(&m))
        })
        .count()
}

fn oracle_is_groebner(g: &[Polynomial]) -> bool {
    (0..g.len()).all(|i| (i + 1..g.len()).all(|j| reduce_full(&s_polynomial(&g[i], &g[j]), g).is_zero()))
}

fn members(f: &[Polynomial], gb: &[Polynomial]) -> bool {
    f.iter().all(|p| reduce_full(p, gb).is_zero())
}

// ---------------------------------------------------------------------------
// Random inputs.

fn random_poly(rng: &mut ChaCha8Rng, n: usize, homogeneous_degree: Option<u32>) -> Polynomial {
    let nterms = rng.gen_range(1..=3);
    let terms = (0..nterms).map(|_| {
        let d = homogeneous_degree.unwrap_or_else(|| rng.gen_range(0..=3));
        let mut e = vec![0u16; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let mut c: i64 = rng.gen_range(-5..=5);
        if c == 0 {
            c = 1;
        }
        (Monomial::from_slice(&e), Coeff::from_integer(c.into()))
    });
    Polynomial::from_terms(n, DRL, terms.collect::<Vec<_>>())
}

fn random_system(rng: &mut ChaCha8Rng, homogeneous: bool) -> Vec<Polynomial> {
    let n = rng.gen_range(3..=4);
    let k = rng.gen_range(2..=4);
    let mut out = Vec::new();
    while out.len() < k {
        let deg = homogeneous.then(|| rng.gen_range(1..=3));
        let p = random_poly(rng, n, deg);
        if !p.is_zero() && p.degree() > 0 {
            out.push(p);
        }
    }
    out
}

fn random_monomial_system(rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = rng.gen_range(2..=4);
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            let mut e = vec![0u16; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            Polynomial::term(DRL, Coeff::from_integer(1.into()), Monomial::from_slice(&e))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Shared suite of computed bases.

struct Case {
    label: String,
    division: Division,
    input: Vec<Polynomial>,
    basis: Vec<Polynomial>,
}

const RUNNING: &str = "vars: x1 x2 x3\npolys:\nx1^2*x3\nx1*x2\nx1*x3^2\n";
const QUASI: &str = "vars: x1 x2 x3\npolys:\nx2^2*x3\nx2^3\nx1^3\n";
const MOLLER: &str = "vars: x y\npolys:\nx*y - x\nx^2 - y\n";

fn random_inputs(tag: u64, count: usize, homogeneous: bool) -> Vec<Vec<Polynomial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(tag);
    (0..count).map(|_| random_system(&mut rng, homogeneous)).collect()
}

fn build_suite() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut push = |label: String, division: Division, input: Vec<Polynomial>| {
        let out = involutive_basis(&input, division, DRL).expect("suite inputs complete");
        cases.push(Case { label, division, input, basis: out.basis });
    };
    push("running".into(), Division::Janet, parse(RUNNING));
    push("quasistable-example".into(), Division::Janet, parse(QUASI));
    push("quasistable-example".into(), Division::Pommaret, parse(QUASI));
    push("moller-example".into(), Division::Janet, parse(MOLLER));
    for (i, f) in random_inputs(3, 30, false).into_iter().enumerate() {
        push(format!("random-{i}"), Division::Janet, f);
    }
    for (i, f) in random_inputs(6, 20, true).into_iter().enumerate() {
        push(format!("homogeneous-{i}"), Division::Janet, f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        push(format!("monomial-{i}"), Division::Janet, random_monomial_system(&mut rng));
    }
    push("liu".into(), Division::Janet, load("benchmarks/liu.ib").polys);
    push("katsura5".into(), Division::Janet, load("benchmarks/katsura5.ib").polys);

    // Pommaret bases wherever the Janet basis certifies quasi-stable position.
    let quasi: Vec<(String, Vec<Polynomial>)> = cases
        .iter()
        .filter(|c| c.division == Division::Janet && test(&lms(&c.basis), DRL).unwrap().is_ok())
        .map(|c| (c.label.clone(), c.input.clone()))
        .collect();
    for (label, input) in quasi {
        let out = pommaret_basis(&input, DRL).expect("quasi-stable inputs have finite Pommaret bases");
        cases.push(Case { label, division: Division::Pommaret, input, basis: out.basis });
    }
    cases
}

// ---------------------------------------------------------------------------

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn monic_set(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = polys.iter().map(Polynomial::monic).collect();
    v.sort_by(|a, b| DRL.compare(a.lm().unwrap(), b.lm().unwrap()));
    v
}

fn criterion_1() -> Verdict {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &mut dyn FnMut() -> bool, name: &str| {
        let t = Instant::now();
        let ok = f();
        let e = t.elapsed();
        slowest = slowest.max(e);
        if !ok || e >= Duration::from_secs(1) {
            failures.push(name.to_string());
        }
    };
    timed(
        &mut || {
            let out = involutive_basis(&parse(RUNNING), Division::Janet, DRL).unwrap();
            let want = parse("vars: x1 x2 x3\npolys:\nx1^2*x3\nx1*x2\nx1*x3^2\nx1^2*x2\n");
            monic_set(&out.basis) == monic_set(&want)
        },
        "janet",
    );
    timed(
        &mut || {
            let out = involutive_basis(&parse(QUASI), Division::Pommaret, DRL).unwrap();
            let want = parse(
                "vars: x1 x2 x3\npolys:\nx2^2*x3\nx2^3\nx1^3\nx1*x2^2*x3\nx1*x2^3\nx1^2*x2^2*x3\nx1^2*x2^3\n",
            );
            monic_set(&out.basis) == monic_set(&want)
        },
        "pommaret",
    );
    timed(
        &mut || {
            let out = groebner_basis(&parse(MOLLER), DRL);
            let want = parse("vars: x y\npolys:\nx*y - x\nx^2 - y\ny^2 - y\n");
            monic_set(&out.basis) == monic_set(&want)
        },
        "groebner",
    );
    verdict(failures.is_empty(), format!("3 worked examples, slowest {slowest:?}, failures {failures:?}"))
}

fn criterion_2(suite: &[Case]) -> Verdict {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for case in suite {
        let heads = lms(&case.basis);
        let ok = case.basis.iter().enumerate().all(|(i, g)| {
            let mult = oracle_multiplicative(case.division, &heads[i], &heads);
            (0..g.nvars()).filter(|&x| !mult[x]).all(|x| {
                checked += 1;
                let prolongation = g.mul_monomial(&Monomial::var(g.nvars(), x));
                oracle_inv_nf(&prolongation, &case.basis, case.division).is_zero()
            })
        });
        if !ok {
            bad.push(format!("{}/{}", case.label, case.division));
        }
    }
    let e = t.elapsed();
    verdict(
        bad.is_empty() && e < Duration::from_secs(10),
        format!("{} bases, {checked} prolongations, {e:?}, failures {bad:?}", suite.len()),
    )
}

fn criterion_3(suite: &[Case]) -> Verdict {
    let t = Instant::now();
    let janet: Vec<&Case> = suite
        .iter()
        .filter(|c| c.division == Division::Janet && !c.label.starts_with("monomial") && c.label != "katsura5")
        .collect();
    let randoms = janet.iter().filter(|c| c.label.starts_with("random")).count();
    let bad: Vec<String> = janet
        .iter()
        .filter(|c| !(oracle_is_groebner(&c.basis) && members(&c.input, &c.basis)))
        .map(|c| c.label.clone())
        .collect();
    let e = t.elapsed();
    verdict(
        bad.is_empty() && randoms >= 25 && e < Duration::from_secs(120),
        format!("{} Janet bases ({randoms} random), {e:?}, failures {bad:?}", janet.len()),
    )
}

fn criterion_4(suite: &[Case]) -> Verdict {
    let bad: Vec<String> = suite
        .iter()
        .filter(|c| !minimality_check(&c.basis, c.division))
        .map(|c| format!("{}/{}", c.label, c.division))
        .collect();
    verdict(bad.is_empty(), format!("{} bases, failures {bad:?}", suite.len()))
}

fn criterion_5(suite: &[Case]) -> Verdict {
    let mut bad = Vec::new();
    let mut points = 0;
    for c in suite {
        let heads = lms(&c.basis);
        let n = c.basis[0].nvars();
        let top = c.basis.iter().map(Polynomial::degree).max().unwrap() + 3;
        for s in 0..=top {
            points += 1;
            let inv = involutive_hf(n, &heads, c.division, s).unwrap().to_string();
            if inv != oracle_hf(n, &heads, s).to_string() {
                bad.push(format!("{}/{} at {s}", c.label, c.division));
            }
        }
    }
    verdict(bad.is_empty(), format!("{} bases, {points} degrees, failures {bad:?}", suite.len()))
}

fn criterion_6() -> Verdict {
    let mut inputs: Vec<(String, Vec<Polynomial>)> = random_inputs(11, 20, true)
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("homogeneous-{i}"), f))
        .collect();
    for (name, text) in [("running", RUNNING), ("quasistable-example", QUASI), ("moller-example", MOLLER)] {
        inputs.push((name.into(), PolySystem::parse(text).unwrap().homogenized().polys));
    }
    let mut bad = Vec::new();
    let mut pruned = 0;
    for (name, f) in &inputs {
        let plain = involutive_basis(f, Division::Janet, DRL).unwrap();
        let target = HilbertEvaluator::from_lms(f[0].nvars(), &lms(&plain.basis), Division::Janet).unwrap();
        let hd = hd_involutive_basis(f, Division::Janet, DRL, &target).unwrap();
        pruned += hd.stats.hd;
        if monic_set(&hd.basis) != monic_set(&plain.basis) {
            bad.push(name.clone());
        }
    }
    verdict(bad.is_empty(), format!("{} systems, {pruned} items pruned, failures {bad:?}", inputs.len()))
}

fn criterion_7(suite: &[Case]) -> Verdict {
    let (mut stable, mut unstable, mut bad) = (0, 0, Vec::new());
    for c in suite.iter().filter(|c| c.division == Division::Janet) {
        let heads = lms(&c.basis);
        let fast = test(&heads, DRL).unwrap().is_ok();
        if fast {
            stable += 1;
        } else {
            unstable += 1;
        }
        if fast != is_quasi_stable(&heads) {
            bad.push(c.label.clone());
        }
    }
    verdict(
        bad.is_empty() && stable + unstable >= 30 && stable > 0 && unstable > 0,
        format!("{} Janet bases ({stable} quasi-stable, {unstable} not), disagreements {bad:?}", stable + unstable),
    )
}

fn criterion_8() -> Verdict {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, paper_chen) in [("liu", 4usize), ("katsura5", 2)] {
        let t = Instant::now();
        let sys = load(&format!("benchmarks/{name}.ib")).homogenized();
        let cfg = QuasiStableConfig::default();
        let out = match hd_quasi_stable(&sys.polys, &cfg) {
            Ok(out) => out,
            Err(e) => {
                pass = false;
                details.push(format!("{name}: {e}"));
                continue;
            }
        };
        let moved = replay(&out.log.changes, &sys.polys);
        let same = members(&moved, &out.log.final_janet) && members(&out.log.final_janet, &groebner_basis(&moved, DRL).basis);
        let pommaret = pommaret_basis(&moved, DRL);
        let minimal = pommaret.as_ref().is_ok_and(|p| minimality_check(&p.basis, Division::Pommaret));
        let e = t.elapsed();
        let ok = same && minimal && out.chen() <= 3 * paper_chen && e <= Duration::from_secs(600);
        pass &= ok;
        details.push(format!(
            "{name}: chen {} (reference {paper_chen}), hd {}, ideal equal {same}, pommaret minimal {minimal}, {e:?}",
            out.chen(),
            out.stats.hd
        ));
    }
    verdict(pass, details.join("; "))
}

fn janet_stats(rel: &str, homogenize: bool) -> RunStats {
    let sys = load(rel);
    let sys = if homogenize { sys.homogenized() } else { sys };
    involutive_basis(&sys.polys, Division::Janet, DRL).unwrap().stats
}

fn criterion_9() -> Verdict {
    let t = Instant::now();
    let k5 = janet_stats("benchmarks/katsura5.ib", false);
    let k6 = janet_stats("benchmarks/katsura6.ib", false);
    let exact = k5.basis_size == 23 && k5.max_deg == 12 && k6.basis_size == 43;
    let mut soft = Vec::new();
    for (name, rel, homog, poly, deg) in [
        ("liu", "benchmarks/liu.ib", false, 19, 6),
        ("noon", "benchmarks/noon4.ib", true, 51, 10),
        ("eco7", "benchmarks/eco7.ib", false, 45, 6),
    ] {
        let s = janet_stats(rel, homog);
        soft.push(format!("{name} {}/{} (reference {poly}/{deg})", s.basis_size, s.max_deg));
    }
    let e = t.elapsed();
    verdict(
        exact && e <= Duration::from_secs(900),
        format!(
            "katsura5 {}/{} (required 23/12), katsura6 {} (required 43); soft: {}; {e:?}",
            k5.basis_size,
            k5.max_deg,
            k6.basis_size,
            soft.join(", ")
        ),
    )
}

fn counters(s: &RunStats) -> [u64; 4] {
    [s.c1, s.c2, s.syz, s.redz]
}

fn criterion_10() -> Verdict {
    // Pinned from the first stable run (C1, C2, syz, redz).
    let pinned: [(&str, &str, bool, [u64; 4], [u64; 4]); 5] = [
        ("liu", "benchmarks/liu.ib", false, [4, 0, 5, 18], [4, 3, 2, 25]),
        ("katsura5", "benchmarks/katsura5.ib", false, [23, 1, 0, 48], [21, 0, 2, 68]),
        ("katsura6", "benchmarks/katsura6.ib", false, [44, 3, 0, 128], [43, 0, 4, 171]),
        ("noon", "benchmarks/noon4.ib", true, [2, 4, 19, 50], [4, 15, 6, 69]),
        ("eco7", "benchmarks/eco7.ib", false, [32, 13, 81, 105], [51, 21, 30, 201]),
    ];
    let mut pass = true;
    let mut details = Vec::new();
    for (name, rel, homog, pin, reference) in pinned {
        let got = counters(&janet_stats(rel, homog));
        pass &= got == pin;
        details.push(format!("{name} {got:?} (reference {reference:?})"));
    }
    let liu = load("benchmarks/liu.ib").homogenized();
    let qs = hd_quasi_stable(&liu.polys, &QuasiStableConfig::default()).unwrap();
    let got = [qs.stats.c1, qs.stats.c2, qs.stats.syz, qs.stats.hd, qs.stats.redz, qs.chen() as u64];
    pass &= got == [4, 0, 5, 108, 41, 4];
    details.push(format!("liu quasistable C1/C2/syz/HD/redz/chen {got:?} (reference [4, 3, 2, 93, 56, 4])"));
    verdict(pass, details.join("; "))
}

fn run_cli(args: &[&str], stats: &std::path::Path) -> (Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_invbasis"))
        .args(args)
        .arg("--stats-json")
        .arg(stats)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (out.stdout, std::fs::read(stats).unwrap())
}

fn criterion_11() -> Verdict {
    let dir = std::env::temp_dir().join(format!("invbasis-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let running = data_dir().join("examples/running.ib");
    let liu = data_dir().join("benchmarks/liu.ib");
    let katsura = data_dir().join("benchmarks/katsura5.ib");
    let runs: Vec<Vec<String>> = vec![
        vec!["janet".into(), running.display().to_string()],
        vec!["janet".into(), katsura.display().to_string()],
        vec!["pommaret".into(), data_dir().join("examples/quasistable.ib").display().to_string()],
        vec!["groebner".into(), data_dir().join("examples/moller.ib").display().to_string()],
        vec!["quasistable".into(), "--homogenize".into(), "--seed".into(), "7".into(), liu.display().to_string()],
    ];
    let mut bad = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.push("--stable-stats");
        let a = run_cli(&args, &dir.join(format!("{i}-a.json")));
        let b = run_cli(&args, &dir.join(format!("{i}-b.json")));
        if a != b {
            bad.push(args.join(" "));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    verdict(bad.is_empty(), format!("{} command lines run twice, differing {bad:?}", runs.len()))
}

fn main() {
    // Accept and ignore libtest arguments such as --nocapture.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let suite_start = Instant::now();
    let suite = build_suite();
    println!("suite: {} computed bases in {:?}", suite.len(), suite_start.elapsed());

    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("1 worked-example exactness", Box::new(criterion_1)),
        ("2 local involutivity", Box::new(|| criterion_2(&suite))),
        ("3 Groebner property", Box::new(|| criterion_3(&suite))),
        ("4 minimality", Box::new(|| criterion_4(&suite))),
        ("5 Hilbert agreement", Box::new(|| criterion_5(&suite))),
        ("6 Hilbert-driven soundness", Box::new(criterion_6)),
        ("7 quasi-stable equivalence", Box::new(|| criterion_7(&suite))),
        ("8 quasi-stable driver end-to-end", Box::new(criterion_8)),
        ("9 benchmark counts", Box::new(criterion_9)),
        ("10 criterion counters", Box::new(criterion_10)),
        ("11 determinism", Box::new(criterion_11)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        if !v.pass {
            failed += 1;
        }
        println!("criterion {name}: {status} [{:?}] {}", t.elapsed(), v.detail);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
