//! Gödel numbering of closed terms.
//!
//! A term at binder depth `d` has code
//!
//! ```text
//! Var n      ↦ n                     (n < d)
//! Abs b      ↦ d + 2·code_{d+1}(b)
//! App f a    ↦ d + 2·π(code_d(f), code_d(a)) + 1
//! ```
//!
//! which is a bijection between naturals and terms with free indices below
//! `d`; at depth 0 it enumerates closed terms. The Gödel index of a term is
//! `π(code, r)` for any repetition `r`, so each term has infinitely many
//! indices; the canonical one is `r = 0`.
//!
//! First codes: `I` = 0, `K*` = `0̲` = 2, `K` = 6, `1̲` = 22.

use super::seq::{cantor_pair, cantor_unpair};
use crate::term::{Kind, Term};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

fn code_at(t: &Term, depth: u32) -> BigUint {
    crate::term::grow(|| match t.kind() {
        Kind::Var(n) => {
            assert!(*n < depth, "godel numbering needs a closed term");
            BigUint::from(*n)
        }
        Kind::Abs(b) => BigUint::from(depth) + code_at(b, depth + 1) * 2u32,
        Kind::App(f, a) => {
            BigUint::from(depth) + cantor_pair(&code_at(f, depth), &code_at(a, depth)) * 2u32 + 1u32
        }
    })
}

fn decode_at(c: &BigUint, depth: u32) -> Term {
    crate::term::grow(|| {
        if let Some(n) = c.to_u32().filter(|&n| n < depth) {
            return Term::var(n);
        }
        let m = c - depth;
        let (h, odd) = m.div_rem(&BigUint::from(2u32));
        if odd.is_zero() {
            Term::abs(decode_at(&h, depth + 1))
        } else {
            let (f, a) = cantor_unpair(&h);
            Term::app(decode_at(&f, depth), decode_at(&a, depth))
        }
    })
}

/// Position of a closed term in the enumeration.
pub fn godel_code(t: &Term) -> BigUint {
    code_at(t, 0)
}

pub fn term_of_code(c: &BigUint) -> Term {
    decode_at(c, 0)
}

/// Canonical index (repetition 0).
pub fn godel_encode(t: &Term) -> BigUint {
    godel_indices(t, 1).pop().expect("one index")
}

/// The first `count` indices of `t`, in increasing order.
pub fn godel_indices(t: &Term, count: usize) -> Vec<BigUint> {
    let c = godel_code(t);
    (0..count as u64)
        .map(|r| cantor_pair(&c, &BigUint::from(r)))
        .collect()
}

/// Total: every natural names a closed term.
pub fn godel_decode(i: &BigUint) -> Term {
    let (c, _rep) = cantor_unpair(i);
    term_of_code(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{church, i, k, kstar};
    use crate::term::parse_term;
    use proptest::prelude::*;

    #[test]
    fn published_values() {
        assert_eq!(godel_code(&i()), BigUint::from(0u32));
        assert_eq!(godel_code(&kstar()), BigUint::from(2u32));
        assert_eq!(godel_code(&church(0)), BigUint::from(2u32));
        assert_eq!(godel_code(&k()), BigUint::from(6u32));
        assert_eq!(godel_code(&church(1)), BigUint::from(22u32));
        assert_eq!(godel_encode(&i()), BigUint::from(0u32));
        assert_eq!(godel_encode(&kstar()), BigUint::from(3u32));
        assert_eq!(godel_encode(&k()), BigUint::from(21u32));
        assert_eq!(godel_encode(&church(1)), BigUint::from(253u32));
        assert_eq!(godel_decode(&BigUint::zero()), i());
    }

    #[test]
    fn two_smallest_indices_of_k() {
        let idx = godel_indices(&k(), 2);
        assert_ne!(idx[0], idx[1]);
        assert_eq!(godel_decode(&idx[0]), k());
        assert_eq!(godel_decode(&idx[1]), k());
        // brute force: the two smallest naturals decoding to K
        let found: Vec<u64> = (0..100u64)
            .filter(|&n| godel_decode(&BigUint::from(n)) == k())
            .take(2)
            .collect();
        assert_eq!(
            found.iter().map(|&n| BigUint::from(n)).collect::<Vec<_>>(),
            idx
        );
    }

    #[test]
    fn codes_enumerate_closed_terms_bijectively() {
        for c in 0..5000u64 {
            let c = BigUint::from(c);
            let t = term_of_code(&c);
            assert!(t.is_closed());
            assert_eq!(godel_code(&t), c);
        }
    }

    #[test]
    fn round_trip_examples() {
        for s in [
            "\\x.x",
            "(\\x.x x)(\\x.x x)",
            "\\f.\\x.f (f (f x))",
            "\\a.\\b.\\c.a c (b c)",
        ] {
            let t = parse_term(s).unwrap();
            assert_eq!(godel_decode(&godel_encode(&t)), t);
        }
    }

    proptest! {
        #[test]
        fn every_index_decodes_and_recurs(n in 0u64..1_000_000) {
            let t = godel_decode(&BigUint::from(n));
            prop_assert!(t.is_closed());
            let idx = godel_indices(&t, 3);
            prop_assert!(idx.iter().all(|i| godel_decode(i) == t));
            prop_assert!(idx[0] < idx[1] && idx[1] < idx[2]);
        }
    }
}
