//! The reproducible check suite: ten checks, each replaying a finite
//! computation or a seeded property sample, reported in id order.

use crate::combinators::{
    build_ab, compile_tree, verify_ab_basis, verify_ab_unfold, verify_f_cycle, verify_g_cycle,
    Construction, Expr, TreeSpec,
};
use crate::encodings::{
    church, godel_encode, i, k, kleene_j, kstar, omega, scripted_enumerator, seq_encode,
};
use crate::ordinals::{
    check_fact_inequality, hscale, hsum, omega_pow, FactCheck, Ordinal, ProofSkeleton,
};
use crate::proofcheck::{
    basis_chain, check_canonical_endpiece, check_canonical_proof, check_standard_form,
    conversion_certificate, g_cycle_certificate, sample_proof, tree_chain, ChainShape,
    EndpieceCertificate, Mutation,
};
use crate::reduction::{gk_step, head_reduce, joinable, normalize, normalize_fast, JoinOutcome};
use crate::term::{contract, list_redexes, Term};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteVerdict {
    Ok,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: u32,
    pub name: String,
    pub anchor: String,
    pub verdict: SuiteVerdict,
    /// Contractions (or sampled instances, for property checks).
    pub steps: u64,
    pub fuel: u64,
    pub detail: String,
    /// Left out of JSON unless asked for, so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    /// 0 when every check is Ok, 1 when one failed, otherwise 2.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.verdict == SuiteVerdict::Fail) {
            1
        } else if self.checks.iter().any(|c| c.verdict == SuiteVerdict::Unknown) {
            2
        } else {
            0
        }
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.wall_ms = None;
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Replaces every per-check default when set.
    pub fuel: Option<u64>,
    /// Run only these ids.
    pub only: Option<BTreeSet<u32>>,
}

struct Outcome {
    verdict: SuiteVerdict,
    steps: u64,
    detail: String,
}

impl Outcome {
    fn ok(steps: u64, detail: impl Into<String>) -> Self {
        Outcome { verdict: SuiteVerdict::Ok, steps, detail: detail.into() }
    }

    fn fail(steps: u64, detail: impl Into<String>) -> Self {
        Outcome { verdict: SuiteVerdict::Fail, steps, detail: detail.into() }
    }

    fn unknown(steps: u64, detail: impl Into<String>) -> Self {
        Outcome { verdict: SuiteVerdict::Unknown, steps, detail: detail.into() }
    }
}

type CheckFn = fn(u64, u64) -> Outcome;

pub struct CheckInfo {
    pub id: u32,
    pub name: &'static str,
    pub anchor: &'static str,
    pub default_fuel: u64,
    run: CheckFn,
}

pub fn checks() -> Vec<CheckInfo> {
    let c = |id, name, anchor, default_fuel, run| CheckInfo { id, name, anchor, default_fuel, run };
    vec![
        c(1, "g-cycle", "G head-reduces to G H₂ in exactly 3 steps", 32, g_cycle as CheckFn),
        c(2, "f-cycle", "F Z A B C head-reduces to F (Z(H₁C)) B A C in 8 steps", 32, f_cycle),
        c(3, "red-f-red-g", "(redF) and (redG) instances join", 5_000, red_f_red_g),
        c(4, "plo2000", "Plotkin terms instance k=1 joins", 20_000, plo2000),
        c(5, "ab-unfold", "A/B unfold and the basis route A 0 N, B 0 N to F G I I N", 100_000, ab_unfold),
        c(6, "enumerator", "J ⌜M⌝ normalizes to M", 10_000_000, enumerator),
        c(7, "ordinals", "Hessenberg arithmetic and the ordinal inequalities of proofs", 0, ordinals),
        c(8, "confluence-fuzz", "reducts under different strategies are joinable", 2_000, confluence_fuzz),
        c(9, "checker-mutations", "certificates verify and every catalogued mutation is rejected", 10_000, checker),
        c(10, "tree-compiler", "compiled trees agree with the native predicate", 5_000_000, tree_compiler),
    ]
}

/// Run the selected checks concurrently; records come back in id order.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let selected: Vec<CheckInfo> = checks()
        .into_iter()
        .filter(|c| cfg.only.as_ref().is_none_or(|s| s.contains(&c.id)))
        .collect();
    let checks = selected
        .par_iter()
        .map(|c| {
            let fuel = cfg.fuel.unwrap_or(c.default_fuel);
            let t0 = Instant::now();
            let out = (c.run)(fuel, cfg.seed);
            CheckRecord {
                id: c.id,
                name: c.name.into(),
                anchor: c.anchor.into(),
                verdict: out.verdict,
                steps: out.steps,
                fuel,
                detail: out.detail,
                wall_ms: Some(t0.elapsed().as_secs_f64() * 1000.0),
            }
        })
        .collect();
    SuiteReport { seed: cfg.seed, checks }
}

/// The endpiece certificate a check builds, for the ids that build one.
pub fn certificate_for(id: u32) -> Option<EndpieceCertificate> {
    match id {
        9 => tree_chain(&empty_tree(), &[0, 1, 2], ChainShape::Identity, 100_000).ok(),
        _ => None,
    }
}

/// `P = Q = I` with a scripted enumerator sending index 2 to Ω.
pub fn scripted_construction() -> &'static Construction {
    static C: std::sync::OnceLock<Construction> = std::sync::OnceLock::new();
    C.get_or_init(|| {
        let table = BTreeMap::from([(2u64, omega())]);
        Construction::new(&i(), &i(), &scripted_enumerator(&table, &i()))
    })
}

fn empty_tree() -> TreeSpec {
    TreeSpec::Explicit { codes: BTreeSet::from([0]) }
}

fn joined_steps(j: &JoinOutcome) -> u64 {
    match j {
        JoinOutcome::Joined { left, right, .. } => (left.len() + right.len()) as u64,
        JoinOutcome::Unknown => 0,
    }
}

fn g_cycle(_fuel: u64, _seed: u64) -> Outcome {
    let c = Construction::canonical();
    match verify_g_cycle(&c.g) {
        Ok(tr) if tr.len() == 3 => Outcome::ok(3, "G →³ G H₂"),
        Ok(tr) => Outcome::fail(
            tr.len() as u64,
            format!("G reaches G H₂ after {} head steps, not 3", tr.len()),
        ),
        Err(e) => Outcome::fail(0, e.to_string()),
    }
}

fn f_cycle(_fuel: u64, _seed: u64) -> Outcome {
    let c = Construction::canonical();
    let (z, a, b, cc) = (i(), i(), k(), church(0));
    let mut steps = 0;
    for rounds in 1..=6usize {
        let tr = match verify_f_cycle(&c.f, &z, &a, &b, &cc, rounds) {
            Ok(tr) => tr,
            Err(e) => return Outcome::fail(steps, format!("{rounds} rounds: {e}")),
        };
        steps = tr.len() as u64;
        if tr.len() != 8 * rounds {
            return Outcome::fail(steps, format!("{rounds} rounds took {} steps", tr.len()));
        }
        let args = c.f_args(tr.last()).expect("ends at F Z A B C");
        let want = if rounds % 2 == 1 { (&b, &a) } else { (&a, &b) };
        if (&args[1], &args[2]) != want {
            return Outcome::fail(steps, format!("argument parity wrong after {rounds} rounds"));
        }
    }
    Outcome::ok(steps, "8 steps per round, arguments 2/3 swapped after odd rounds (1..=6)")
}

fn red_f_red_g(fuel: u64, _seed: u64) -> Outcome {
    let p = &scripted_construction().plotkin;
    let cases: Vec<(String, (Term, Term))> = (0..=2u64)
        .flat_map(|n| {
            [
                (format!("redF n={n}"), p.red_f_sides(n, &i(), &i(), &i())),
                (format!("redG n={n}"), p.red_g_sides(n)),
            ]
        })
        .collect();
    let results: Vec<(String, JoinOutcome)> = cases
        .into_par_iter()
        .map(|(name, (l, r))| (name, joinable(&l, &r, fuel)))
        .collect();
    let steps = results.iter().map(|(_, j)| joined_steps(j)).sum();
    let missing: Vec<&str> =
        results.iter().filter(|(_, j)| !j.is_joined()).map(|(n, _)| n.as_str()).collect();
    if missing.is_empty() {
        Outcome::ok(steps, "6 instances joined")
    } else {
        Outcome::unknown(steps, format!("not joined within fuel: {}", missing.join(", ")))
    }
}

fn plo2000(fuel: u64, _seed: u64) -> Outcome {
    let (l, r) = scripted_construction().plotkin.plo2000_sides(1);
    let j = joinable(&l, &r, fuel);
    if j.is_joined() {
        Outcome::ok(joined_steps(&j), "k=1 joined")
    } else {
        Outcome::unknown(0, "k=1 not joined within fuel")
    }
}

fn ab_unfold(fuel: u64, _seed: u64) -> Outcome {
    let c = scripted_construction();
    let mut steps = 0u64;
    let one = seq_encode(&[BigUint::from(0u32)]).to_u64().expect("small code");
    for codes in [vec![0u64], vec![0, one]] {
        let spec = TreeSpec::Explicit { codes: codes.iter().copied().collect() };
        let t = compile_tree(&spec).expect("prefix closed");
        let (a, b) = build_ab(&t, &c.f, &c.g);
        match verify_ab_unfold(&a, &b, 64) {
            Ok((ta, tb)) => steps += (ta.len() + tb.len()) as u64,
            Err(e) => return Outcome::fail(steps, format!("tree {codes:?}: {e}")),
        }
    }
    let t = compile_tree(&empty_tree()).expect("prefix closed");
    let (a, b) = build_ab(&t, &c.f, &c.g);
    for n in 0..=5u64 {
        let want = Term::apps(c.f.clone(), [c.g.clone(), i(), i(), church(n)]);
        match verify_ab_basis(&a, &b, 0, n, fuel) {
            Ok((ra, rb)) if ra.last() == &want && rb.last() == &want => {
                steps += (ra.len() + rb.len()) as u64
            }
            Ok(_) => return Outcome::fail(steps, format!("N={n}: routes end elsewhere")),
            Err(e) => return Outcome::unknown(steps, format!("N={n}: {e}")),
        }
    }
    Outcome::ok(steps, "unfoldings match for both trees; basis routes meet at F G I I N for N ≤ 5")
}

fn enumerator(fuel: u64, _seed: u64) -> Outcome {
    let cases = [("I", i()), ("K", k()), ("K*", kstar()), ("0", church(0)), ("1", church(1))];
    let results: Vec<_> = cases
        .par_iter()
        .map(|(name, m)| {
            let code = godel_encode(m).to_u64().expect("small code");
            let got = normalize_fast(&Term::app(kleene_j(), church(code)), fuel);
            let want = normalize_fast(m, 100).expect("normal").0;
            (name, got.map(|(t, used)| (t == want, used)))
        })
        .collect();
    let mut steps = 0;
    for (name, r) in results {
        match r {
            Ok((true, used)) => steps += used,
            Ok((false, _)) => return Outcome::fail(steps, format!("J ⌜{name}⌝ normalizes to another term")),
            Err(_) => return Outcome::unknown(steps, format!("J ⌜{name}⌝ not normalized within fuel")),
        }
    }
    Outcome::ok(steps, "J ⌜M⌝ ⇓ M for I, K, K*, 0, 1")
}

pub fn random_ordinal(rng: &mut impl Rng, depth: u32) -> Ordinal {
    if depth == 0 {
        return Ordinal::finite(rng.gen_range(0..5));
    }
    (0..rng.gen_range(0..4)).fold(Ordinal::zero(), |acc, _| {
        let e = random_ordinal(rng, depth - 1);
        hsum(&acc, &hscale(&omega_pow(&e), rng.gen_range(1..5)))
    })
}

/// ω-node sups are the listed total, plus a nonzero extra most of the time.
pub fn random_skeleton(rng: &mut impl Rng, depth: u32) -> ProofSkeleton {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return ProofSkeleton::leaf();
    }
    let kids: Vec<_> = (0..rng.gen_range(0..4)).map(|_| random_skeleton(rng, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        let total = kids.iter().fold(Ordinal::zero(), |a, k| hsum(&a, &k.ord().expect("valid")));
        let extra = if rng.gen_ratio(1, 4) { Ordinal::zero() } else { random_ordinal(rng, 2) };
        ProofSkeleton::omega(kids, hsum(&total, &extra))
    } else {
        ProofSkeleton::endpiece(kids)
    }
}

fn ordinals(_fuel: u64, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = |s: &str| s.parse::<Ordinal>().expect("literal");
    let displays = [
        (hsum(&o("w"), &o("w")), o("w*2")),
        (hsum(&o("w^2 + w*2"), &o("w^2*3 + 1")), o("w^2*4 + w*2 + 1")),
        (hsum(&o("1"), &o("w")), o("w + 1")),
        (hscale(&o("w"), 3), o("w*3")),
        (hscale(&o("w + 1"), 2), o("w*2 + 2")),
        (hscale(&o("w^(w) + 3"), 1), o("w^(w) + 3")),
        (omega_pow(&o("0")), o("1")),
        (omega_pow(&o("1")), o("w")),
        (omega_pow(&o("w")), o("w^(w)")),
    ];
    if let Some((got, want)) = displays.iter().find(|(g, w)| g != w) {
        return Outcome::fail(0, format!("display identity: got {got}, want {want}"));
    }
    let mut n = displays.len() as u64;
    for _ in 0..1000 {
        let (a, b, c) = (random_ordinal(&mut rng, 3), random_ordinal(&mut rng, 3), random_ordinal(&mut rng, 3));
        let ab = hsum(&a, &b);
        if ab != hsum(&b, &a) {
            return Outcome::fail(n, format!("not commutative on {a}, {b}"));
        }
        if hsum(&ab, &c) != hsum(&a, &hsum(&b, &c)) {
            return Outcome::fail(n, format!("not associative on {a}, {b}, {c}"));
        }
        if !a.is_zero() && !b.is_zero() && !(a < ab && b < ab) {
            return Outcome::fail(n, format!("not strictly increasing on {a}, {b}"));
        }
        n += 1;
    }
    for _ in 0..200 {
        let kids: Vec<_> = (0..rng.gen_range(1..4)).map(|_| random_skeleton(&mut rng, 3)).collect();
        let e = ProofSkeleton::endpiece(kids.clone());
        let whole = e.ord().expect("valid");
        if let Some(kid) = kids.iter().find(|k| k.ord().expect("valid") >= whole) {
            return Outcome::fail(n, format!("component ordinal {} not below {whole}", kid.ord().expect("valid")));
        }
        n += 1;
    }
    for _ in 0..100 {
        let kids: Vec<_> = (0..rng.gen_range(1..4)).map(|_| random_skeleton(&mut rng, 2)).collect();
        let total = kids.iter().fold(Ordinal::zero(), |a, k| hsum(&a, &k.ord().expect("valid")));
        let parent = ProofSkeleton::omega(kids.clone(), hsum(&total, &random_ordinal(&mut rng, 1)));
        let coeffs: Vec<(usize, u64)> = (0..rng.gen_range(1..5))
            .map(|_| (rng.gen_range(1..=kids.len()), rng.gen_range(0..10_000)))
            .collect();
        match check_fact_inequality(&parent, &coeffs) {
            Ok(FactCheck::Holds) => {}
            Ok(FactCheck::Violated { parent, sum }) => {
                return Outcome::fail(n, format!("{parent} is not above {sum}"))
            }
            Err(e) => return Outcome::fail(n, e.to_string()),
        }
        n += 1;
    }
    Outcome::ok(n, "9 displays, 1000 sum samples, 200 endpieces, 100 inequality instances")
}

/// A closed term of size at most `budget` (at least 2).
pub fn random_closed_term(rng: &mut impl Rng, budget: u64) -> Term {
    fn go(rng: &mut impl Rng, depth: u32, budget: u64) -> Term {
        let min = |d: u32| if d > 0 { 1 } else { 2 };
        let mut kinds = Vec::new();
        if depth > 0 {
            kinds.push(0);
        }
        if budget > min(depth + 1) {
            kinds.push(1);
        }
        if budget > 2 * min(depth) {
            kinds.push(2);
        }
        match kinds[rng.gen_range(0..kinds.len())] {
            0 => Term::var(rng.gen_range(0..depth)),
            1 => Term::abs(go(rng, depth + 1, budget - 1)),
            _ => {
                let left = rng.gen_range(min(depth)..=budget - 1 - min(depth));
                let f = go(rng, depth, left);
                let a = go(rng, depth, budget - 1 - left);
                Term::app(f, a)
            }
        }
    }
    go(rng, 0, budget.max(2))
}

/// Up to `steps` contractions at randomly chosen redexes.
fn random_reduct(rng: &mut impl Rng, t: &Term, steps: usize) -> Term {
    let mut cur = t.clone();
    for _ in 0..steps {
        let rs = list_redexes(&cur);
        if rs.is_empty() {
            break;
        }
        let site = &rs[rng.gen_range(0..rs.len())];
        cur = contract(&cur, site).expect("listed redex");
    }
    cur
}

/// Reducts of `t` after a few steps of normal order, head, Gross-Knuth and
/// random reduction.
pub fn strategy_reducts(rng: &mut impl Rng, t: &Term) -> [Term; 4] {
    const STEPS: usize = 10;
    let no = normalize(t, STEPS as u64).term().clone();
    let head = head_reduce(t, STEPS as u64).last().clone();
    let mut gk = t.clone();
    for _ in 0..3 {
        gk = gk_step(&gk);
    }
    let free = random_reduct(rng, t, STEPS);
    [no, head, gk, free]
}

fn confluence_fuzz(fuel: u64, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Term, [Term; 4])> = (0..500)
        .map(|_| {
            let t = random_closed_term(&mut rng, 12);
            let rs = strategy_reducts(&mut rng, &t);
            (t, rs)
        })
        .collect();
    let results: Vec<Option<(Term, u64)>> = cases
        .par_iter()
        .map(|(t, rs)| {
            let mut steps = 0;
            for a in 0..4 {
                for b in a + 1..4 {
                    let j = joinable(&rs[a], &rs[b], fuel);
                    if !j.is_joined() {
                        return Some((t.clone(), steps));
                    }
                    steps += joined_steps(&j);
                }
            }
            let _ = steps;
            None
        })
        .collect();
    match results.into_iter().flatten().next() {
        None => Outcome::ok(500 * 6, "500 terms, 6 strategy pairs each"),
        Some((t, _)) => Outcome::unknown(0, format!("reducts of {t} not joined within fuel")),
    }
}

fn checker(fuel: u64, _seed: u64) -> Outcome {
    let cx = scripted_construction();
    let one = seq_encode(&[BigUint::from(0u32)]).to_u64().expect("small code");
    let two_trees = TreeSpec::Explicit { codes: BTreeSet::from([0, one]) };
    let mut canonical: Vec<(String, EndpieceCertificate)> = Vec::new();
    for shape in [ChainShape::Identity, ChainShape::Swap] {
        for redexed in [false, true] {
            let pts = [church(0), k(), church(2), church(3)];
            canonical.push((
                format!("chain {shape:?} redexed={redexed}"),
                basis_chain(&pts, shape, redexed, fuel).expect("normal points"),
            ));
        }
        for (name, spec) in [("{()}", empty_tree()), ("{(), (0)}", two_trees.clone())] {
            match tree_chain(&spec, &[0, 1, 2, 3], shape, 1_000_000) {
                Ok(c) => canonical.push((format!("tree {name} {shape:?}"), c)),
                Err(e) => return Outcome::fail(0, format!("tree chain {name}: {e}")),
            }
        }
    }
    canonical.push((
        "conversion".into(),
        conversion_certificate(&Term::apps(k(), [church(2), omega()]), &church(2), fuel)
            .expect("normalizes"),
    ));
    let standard_only = g_cycle_certificate(cx);
    if !check_standard_form(&standard_only).is_ok() {
        return Outcome::fail(0, "G-cycle certificate rejected in standard form");
    }
    let mut checked = 1u64;
    let mut kinds = BTreeSet::new();
    for (name, c) in &canonical {
        if !check_standard_form(c).is_ok() {
            return Outcome::fail(checked, format!("{name}: standard form rejected"));
        }
        match check_canonical_endpiece(c, cx, fuel) {
            v if v.is_ok() => {}
            v => return Outcome::fail(checked, format!("{name}: {v:?}")),
        }
        checked += 1;
        for (m, mc) in Mutation::catalog(c) {
            kinds.insert(m.kind());
            if check_canonical_endpiece(&mc, cx, fuel).is_ok() {
                return Outcome::fail(checked, format!("{name}: mutation {m:?} accepted"));
            }
            checked += 1;
        }
    }
    let (s, certs) = sample_proof(fuel);
    if !check_canonical_proof(&s, &certs, cx, fuel).is_ok() {
        return Outcome::fail(checked, "sample proof rejected");
    }
    if kinds.len() < 8 {
        return Outcome::fail(checked, format!("only {} mutation kinds applied", kinds.len()));
    }
    Outcome::ok(
        checked + 1,
        format!("{} certificates accepted, {} mutation kinds all rejected", canonical.len() + 2, kinds.len()),
    )
}

pub fn tree_specs() -> Vec<(&'static str, TreeSpec)> {
    let code = |xs: &[u32]| {
        let v: Vec<BigUint> = xs.iter().map(|&x| BigUint::from(x)).collect();
        seq_encode(&v).to_u64().expect("small code")
    };
    let parity = Expr::IsZero(Box::new(Expr::Iter {
        times: Box::new(Expr::Input),
        init: Box::new(Expr::Lit(0)),
        step: Box::new(Expr::Sub(Box::new(Expr::Lit(1)), Box::new(Expr::Acc))),
    }));
    vec![
        ("empty", TreeSpec::Explicit { codes: BTreeSet::new() }),
        ("singleton-root", empty_tree()),
        (
            "depth-2",
            TreeSpec::Explicit {
                codes: BTreeSet::from([0, code(&[0]), code(&[1]), code(&[0, 0]), code(&[0, 2])]),
            },
        ),
        ("always-true", TreeSpec::Program { pred: Expr::Lit(1) }),
        ("parity", TreeSpec::Program { pred: parity }),
    ]
}

fn tree_compiler(fuel: u64, _seed: u64) -> Outcome {
    let results: Vec<Result<u64, String>> = tree_specs()
        .par_iter()
        .map(|(name, spec)| {
            let t = compile_tree(spec).map_err(|e| format!("{name}: {e}"))?;
            let mut used = 0;
            for n in 0..=200u64 {
                let native = spec.contains(n).map_err(|e| format!("{name}: {e}"))?;
                let (nf, u) = normalize_fast(&Term::app(t.clone(), church(n)), fuel)
                    .map_err(|_| format!("{name}: code {n} not normalized within fuel"))?;
                used += u;
                let want = if native { i() } else { kstar() };
                if nf != want {
                    return Err(format!("{name}: code {n} gives {nf}, native says {native}"));
                }
            }
            Ok(used)
        })
        .collect();
    let mut steps = 0;
    for r in results {
        match r {
            Ok(u) => steps += u,
            Err(e) if e.contains("within fuel") => return Outcome::unknown(steps, e),
            Err(e) => return Outcome::fail(steps, e),
        }
    }
    Outcome::ok(steps, "5 trees × codes 0..=200 agree")
}
