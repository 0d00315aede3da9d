//! Every term of a 100-term corpus has at least three distinct indices, and
//! each of them decodes back to the term.

use lambda_omega::encodings::{church, godel_decode, godel_encode, godel_indices, i, k, kstar, omega};
use lambda_omega::suite::random_closed_term;
use lambda_omega::term::Term;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn corpus() -> Vec<Term> {
    // church(0) is K*, so duplicates are dropped as they come
    let named = [i(), k(), kstar(), omega()].into_iter().chain((0..6).map(church));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random = std::iter::repeat_with(move || random_closed_term(&mut rng, 14));
    let mut out: Vec<Term> = Vec::new();
    for t in named.chain(random) {
        if out.len() == 100 {
            break;
        }
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

#[test]
fn three_indices_each() {
    let terms = corpus();
    assert_eq!(terms.len(), 100);
    let mut seen = BTreeSet::new();
    for t in &terms {
        let idx = godel_indices(t, 3);
        assert_eq!(idx.iter().collect::<BTreeSet<_>>().len(), 3, "{t}");
        for n in &idx {
            assert_eq!(&godel_decode(n), t, "index {n}");
            assert!(seen.insert(n.clone()), "index {n} shared by two terms");
        }
    }
}

#[test]
fn encode_is_one_of_the_indices() {
    for t in corpus() {
        let n = godel_encode(&t);
        assert_eq!(godel_decode(&n), t);
        assert!(godel_indices(&t, 3).contains(&n));
    }
}
