use super::*;
use crate::combinators::TreeSpec;
use crate::encodings::{church, i, k, kstar, scripted_enumerator};
use crate::reduction::{head_step, Strategy};
use crate::term::parse_term;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

const FUEL: u64 = 10_000;

fn small() -> &'static Construction {
    static C: OnceLock<Construction> = OnceLock::new();
    C.get_or_init(|| Construction::new(&i(), &i(), &scripted_enumerator(&BTreeMap::new(), &i())))
}

fn chain() -> EndpieceCertificate {
    let pts = [church(0), church(2), k(), church(3)];
    basis_chain(&pts, ChainShape::Identity, true, FUEL).unwrap()
}

fn empty_tree() -> TreeSpec {
    TreeSpec::Explicit { codes: BTreeSet::from([0]) }
}

fn clause(v: &Verdict) -> Option<Clause> {
    v.failure().map(|f| f.clause)
}

#[test]
fn generated_chains_are_canonical() {
    for shape in [ChainShape::Identity, ChainShape::Swap] {
        for redexed in [false, true] {
            let pts = [church(0), k(), church(2)];
            let c = basis_chain(&pts, shape, redexed, FUEL).unwrap();
            assert_eq!(check_standard_form(&c), Verdict::ok());
            assert!(check_canonical_endpiece(&c, small(), FUEL).is_ok(), "{shape:?} {redexed}");
        }
    }
}

#[test]
fn tree_chain_over_the_empty_tree() {
    let c = tree_chain(&empty_tree(), &[0, 1, 2, 3], ChainShape::Identity, 100_000).unwrap();
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.components[0].premise_left, Term::app(i(), i()));
    assert_eq!(c.components[0].premise_right, Term::app(i(), kstar()));
    assert!(check_canonical_endpiece(&c, small(), FUEL).is_ok());
}

#[test]
fn g_cycle_is_standard_but_not_canonical() {
    let c = g_cycle_certificate(small());
    assert_eq!(c.initial_trace.len(), 4);
    assert_eq!(check_standard_form(&c), Verdict::ok());
    let v = check_canonical_endpiece(&c, small(), FUEL);
    assert_eq!(clause(&v), Some(Clause::InX));
    assert_eq!(v.failure().unwrap().location, Location::Final);
}

#[test]
fn pure_conversion() {
    let c = conversion_certificate(&Term::apps(k(), [church(2), church(5)]), &church(2), 100).unwrap();
    assert!(c.components.is_empty());
    assert_eq!(check_standard_form(&c), Verdict::ok());
    assert!(check_canonical_endpiece(&c, small(), FUEL).is_ok());
}

#[test]
fn broken_chaining() {
    let mut c = chain();
    c.components[1].confluence = church(7);
    let v = check_standard_form(&c);
    assert_eq!(clause(&v), Some(Clause::Chaining));
    assert_eq!(v.failure().unwrap().location, Location::Component(1));
}

#[test]
fn non_x_confluence_fails_clause_one() {
    // extend the initial trace and the first left trace so that they meet
    // at an F-headed term instead
    let cx = small();
    let mut c = conversion_certificate(&i(), &i(), 10).unwrap();
    let f_term = Term::apps(cx.f.clone(), [i(), i(), k(), church(0)]);
    c.initial = Term::app(i(), f_term.clone());
    c.initial_trace = Trace::new(c.initial.clone(), Strategy::Free);
    let (site, next) = head_step(&c.initial).unwrap();
    c.initial_trace.push(site, next);
    c.confluence = f_term.clone();
    c.final_term = f_term.clone();
    c.final_trace = Trace::new(f_term, Strategy::Free);
    assert_eq!(check_standard_form(&c), Verdict::ok());
    assert_eq!(clause(&check_canonical_endpiece(&c, cx, FUEL)), Some(Clause::InX));
}

#[test]
fn eta_before_beta_fails_clause_a() {
    let c = chain();
    let m = Mutation::EtaBeforeBeta(0).apply(&c).unwrap();
    assert_eq!(check_standard_form(&m), Verdict::ok());
    let v = check_canonical_endpiece(&m, small(), FUEL);
    assert_eq!(clause(&v), Some(Clause::LeftArrows));
    assert_eq!(v.failure().unwrap().location, Location::Component(1));
}

#[test]
fn extra_head_step_fails_clause_a() {
    let m = Mutation::HeadStepInLeft(1).apply(&chain()).unwrap();
    assert_eq!(check_standard_form(&m), Verdict::ok());
    assert_eq!(clause(&check_canonical_endpiece(&m, small(), FUEL)), Some(Clause::LeftArrows));
}

#[test]
fn context_shapes_are_read() {
    let g = parse_term("\\x.\\y.(\\z.z) x y").unwrap();
    let shapes = context_shapes(&g);
    assert_eq!(shapes[0], ContextShape { n: 1, m: 1 });
    assert!(shapes.contains(&ContextShape { n: 0, m: 0 }));
    assert!(context_shapes(&parse_term("\\x.x").unwrap()).is_empty());
    assert!(context_shapes(&k()).iter().all(|s| s.is_degenerate()));
}

#[test]
fn bad_context_shape() {
    let mut c = chain();
    let g = parse_term("\\x.x").unwrap();
    let comp = &mut c.components[0];
    comp.context = g.clone();
    comp.left_trace = Trace::new(Term::app(g.clone(), comp.premise_left.clone()), Strategy::Free);
    let (s, n) = head_step(&comp.left_trace.start).unwrap();
    comp.left_trace.push(s, n);
    comp.right_trace = Trace::new(Term::app(g, comp.premise_right.clone()), Strategy::Free);
    let v = check_canonical_endpiece(&c, small(), FUEL);
    assert_ne!(v, Verdict::ok());
    assert!(!v.is_ok());
}

#[test]
fn right_stages_need_the_normal_forms() {
    // stop the right trace before the premise is normalized: J₁ is never met
    let mut c = basis_chain(&[church(0), church(2)], ChainShape::Swap, true, FUEL).unwrap();
    let comp = &mut c.components[0];
    comp.right_trace.steps.truncate(2);
    let h = comp.right_trace.last().clone();
    c.confluence = h.clone();
    c.final_term = h.clone();
    c.final_trace = Trace::new(h, Strategy::Free);
    assert_eq!(check_standard_form(&c), Verdict::ok());
    assert_eq!(clause(&check_canonical_endpiece(&c, small(), FUEL)), Some(Clause::RightArrows));
}

#[test]
fn file_round_trip() {
    let c = chain();
    let json = c.to_json();
    assert!(json.contains("\"schema_version\": 1"));
    assert_eq!(load_certificate(&json).unwrap(), c);
    let bumped = json.replace("\"schema_version\": 1", "\"schema_version\": 9");
    assert!(matches!(load_certificate(&bumped), Err(ProofcheckError::Schema { found: 9, .. })));
}

#[test]
fn flipped_byte_is_caught() {
    let json = chain().to_json();
    let at = json.find("\"confluence\": \"").unwrap() + 15;
    let mut bytes = json.into_bytes();
    bytes[at] = if bytes[at] == b'(' { b'x' } else { b'(' };
    let text = String::from_utf8(bytes).unwrap();
    match load_certificate(&text) {
        Err(_) => {}
        Ok(c) => assert!(!check_canonical_endpiece(&c, small(), FUEL).is_ok()),
    }
}

#[test]
fn mutation_catalog_is_rejected() {
    for c in [chain(), tree_chain(&empty_tree(), &[0, 1], ChainShape::Swap, 100_000).unwrap()] {
        let muts = Mutation::catalog(&c);
        let kinds: BTreeSet<_> = muts.iter().map(|(m, _)| m.kind()).collect();
        assert!(kinds.len() >= 8, "{kinds:?}");
        for (m, mc) in muts {
            let v = check_canonical_endpiece(&mc, small(), FUEL);
            assert!(!v.is_ok(), "{m:?} accepted");
        }
    }
}

#[test]
fn accepted_certificates_replay() {
    let c = chain();
    for tr in std::iter::once(&c.initial_trace)
        .chain(c.components.iter().flat_map(|k| [&k.left_trace, &k.right_trace]))
        .chain(std::iter::once(&c.final_trace))
    {
        let again = Trace::from_sites(tr.start.clone(), tr.strategy, &tr.sites()).unwrap();
        assert_eq!(again.terms(), tr.terms());
    }
}

#[test]
fn sample_proof_checks() {
    let (s, certs) = sample_proof(FUEL);
    assert_eq!(s.depth(), 2);
    let v = check_canonical_proof(&s, &certs, small(), FUEL);
    let Verdict::Ok { notes } = &v else { panic!("{v:?}") };
    assert!(notes.iter().any(|n| n.contains("unverified")));
    let bundle = BundleFile::new(&s, &certs);
    let (s2, c2) = load_bundle(&serde_json::to_string(&bundle).unwrap()).unwrap();
    assert_eq!((s2, c2), (s, certs));
}

#[test]
fn proof_failures_carry_the_path() {
    let (s, mut certs) = sample_proof(FUEL);
    let cx = small();
    let g = g_cycle_certificate(cx);
    certs.insert(vec![0, 1], g);
    let v = check_canonical_proof(&s, &certs, cx, FUEL);
    let f = v.failure().unwrap();
    assert_eq!((f.path.as_slice(), f.clause), (&[0usize, 1][..], Clause::InX));

    let (s, mut certs) = sample_proof(FUEL);
    certs.remove(&vec![0, 0]);
    let v = check_canonical_proof(&s, &certs, cx, FUEL);
    assert_eq!(v.failure().unwrap().path, vec![0, 0]);
}

#[test]
fn empty_omega_node_is_unknown() {
    let s = ProofSkeleton::omega(vec![], crate::ordinals::Ordinal::one());
    let v = check_canonical_proof(&s, &CertificateMap::new(), small(), FUEL);
    assert!(matches!(v, Verdict::Unknown { .. }));
}

#[test]
fn premise_must_be_an_omega_node() {
    let (_, certs) = sample_proof(FUEL);
    let s = ProofSkeleton::endpiece(vec![ProofSkeleton::leaf()]);
    let v = check_canonical_proof(&s, &certs, small(), FUEL);
    assert_eq!(clause(&v), Some(Clause::Premise));
}

#[test]
fn low_fuel_gives_unknown_not_fail() {
    let c = chain();
    let v = check_canonical_endpiece(&c, small(), 0);
    assert!(matches!(v, Verdict::Unknown { .. }), "{v:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_settle_monotonically(pick in 0usize..4, extra in 0usize..3) {
        let pts: Vec<Term> = (0..=extra as u64 + 1).map(|n| church(n * 2 + 2 + pick as u64 % 2)).collect();
        let shape = if pick < 2 { ChainShape::Identity } else { ChainShape::Swap };
        let c = basis_chain(&pts, shape, pick % 2 == 0, FUEL).unwrap();
        let mut variants = vec![c.clone()];
        variants.extend(Mutation::catalog(&c).into_iter().map(|(_, m)| m));
        for v in &variants {
            let mut settled: Option<Verdict> = None;
            for fuel in [0u64, 1, 3, 10, 100, 1000] {
                let got = check_canonical_endpiece(v, small(), fuel);
                if let Some(s) = &settled {
                    prop_assert_eq!(std::mem::discriminant(&got), std::mem::discriminant(s));
                } else if !matches!(got, Verdict::Unknown { .. }) {
                    settled = Some(got);
                }
            }
        }
    }
}
