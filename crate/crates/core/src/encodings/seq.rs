//! Sequence codes by iterated Cantor pairing.
//!
//! `code([]) = 0` and `code(s ++ [x]) = 1 + π(code(s), x)` with
//! `π(a, b) = (a+b)(a+b+1)/2 + b`.

use super::Lib;
use crate::reduction::normalize_fast;
use crate::term::{list_redexes, Kind, Term};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::sync::OnceLock;

pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn cantor_unpair(n: &BigUint) -> (BigUint, BigUint) {
    let w = ((n * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = n - t;
    let a = w - &b;
    (a, b)
}

pub fn seq_encode(s: &[BigUint]) -> BigUint {
    s.iter()
        .fold(BigUint::zero(), |acc, x| cantor_pair(&acc, x) + 1u32)
}

pub fn seq_decode(c: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut cur = c.clone();
    while !cur.is_zero() {
        let (p, x) = cantor_unpair(&(cur - BigUint::one()));
        out.push(x);
        cur = p;
    }
    out.reverse();
    out
}

pub fn seq_singleton(x: &BigUint) -> BigUint {
    cantor_pair(&BigUint::zero(), x) + 1u32
}

pub fn seq_concat(a: &BigUint, b: &BigUint) -> BigUint {
    seq_decode(b)
        .iter()
        .fold(a.clone(), |acc, x| cantor_pair(&acc, x) + 1u32)
}

/// `λz. 1 + π(0, z)` on Church numerals.
pub fn singleton_term() -> Term {
    static T: OnceLock<Term> = OnceLock::new();
    T.get_or_init(|| Lib::base().parse("\\z.CSUCC (CPAIR C0 z)"))
        .clone()
}

/// `λy s. y * s` on Church numerals: decode `s` into a list of elements,
/// then append them to `y` one at a time. Fuel for every recursion is `s+1`.
pub fn star_term() -> Term {
    static T: OnceLock<Term> = OnceLock::new();
    T.get_or_init(|| {
        let mut lib = Lib::base().clone();
        lib.define(
            "DECODE",
            "\\N c.N (\\rec c acc.c acc (\\c'.UNPAIR N c' (\\p x.rec p (CONS (TOC N x) acc)))) (\\c acc.acc) c NIL",
        );
        lib.define("FOLD", "\\N acc l.N (\\rec acc l.l acc (\\x rest.rec (CSUCC (CPAIR acc x)) rest)) (\\acc l.acc) acc l");
        lib.parse("\\y s.(\\N.FOLD N y (DECODE N (TOS s))) (\\f x.s f (f x))")
    })
    .clone()
}

/// The open term `y * ⟨z⟩` (free `z` at index 0, `y` at index 1): the
/// βη-normal form of `z I I (1 + π(y, z))`. For a numeral `z`, `z I I`
/// reduces to `I`, leaving the code of `y` extended by `z`.
pub fn star_singleton_open() -> Term {
    static T: OnceLock<Term> = OnceLock::new();
    T.get_or_init(|| {
        let closed = Lib::base().parse("\\y.\\z.z I I (CSUCC (CPAIR y z))");
        let (nf, _) = normalize_fast(&closed, 100_000).expect("y*<z> has a normal form");
        let (2, body) = nf.strip_lams() else {
            panic!("unexpected shape of y*<z>")
        };
        body
    })
    .clone()
}

/// βη-normal with `z I I` at its head, `z` being index 0.
pub fn zii_head_check(t: &Term) -> bool {
    if !list_redexes(t).is_empty() {
        return false;
    }
    let (head, args) = t.spine();
    let id = super::i();
    matches!(head.kind(), Kind::Var(0)) && args.len() >= 2 && args[0] == id && args[1] == id
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{church, unchurch, Unchurch};
    use proptest::prelude::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn small(c: &BigUint) -> u64 {
        u64::try_from(c).unwrap()
    }

    #[test]
    fn pairing_is_cantor() {
        let mut n = 0u64;
        for s in 0..20u64 {
            for b in 0..=s {
                let a = s - b;
                let c = cantor_pair(&BigUint::from(a), &BigUint::from(b));
                assert_eq!(c, BigUint::from(n));
                assert_eq!(cantor_unpair(&c), (BigUint::from(a), BigUint::from(b)));
                n += 1;
            }
        }
    }

    #[test]
    fn examples() {
        assert!(seq_encode(&[]).is_zero());
        let one = BigUint::from(1u32);
        let two = BigUint::from(2u32);
        assert_eq!(
            seq_concat(&seq_singleton(&one), &seq_singleton(&two)),
            seq_encode(&big(&[1, 2]))
        );
        assert_eq!(seq_decode(&seq_encode(&big(&[3, 0, 7]))), big(&[3, 0, 7]));
    }

    #[test]
    fn exhaustive_round_trip() {
        fn rec(prefix: &mut Vec<u64>, depth: usize) {
            let s = big(prefix);
            assert_eq!(seq_decode(&seq_encode(&s)), s);
            if depth == 6 {
                return;
            }
            for x in 0..10 {
                prefix.push(x);
                rec(prefix, depth + 1);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 0);
    }

    #[test]
    fn every_code_decodes() {
        for c in 0..2000u64 {
            let c = BigUint::from(c);
            assert_eq!(seq_encode(&seq_decode(&c)), c);
        }
    }

    proptest! {
        #[test]
        fn concat_associative(a in 0u64..300, b in 0u64..300, c in 0u64..300) {
            let (a, b, c) = (BigUint::from(a), BigUint::from(b), BigUint::from(c));
            prop_assert_eq!(seq_concat(&seq_concat(&a, &b), &c), seq_concat(&a, &seq_concat(&b, &c)));
            prop_assert_eq!(seq_concat(&a, &BigUint::zero()), a.clone());
            prop_assert_eq!(seq_concat(&BigUint::zero(), &a), a);
        }
    }

    fn run(t: Term) -> u64 {
        match unchurch(&t, 5_000_000) {
            Unchurch::Numeral(n) => n,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singleton_term_agrees() {
        for z in 0..=40u64 {
            let got = run(Term::app(singleton_term(), church(z)));
            assert_eq!(BigUint::from(got), seq_singleton(&BigUint::from(z)));
        }
    }

    #[test]
    fn star_term_examples() {
        let four = Term::app(singleton_term(), church(4));
        assert_eq!(
            run(Term::apps(star_term(), [church(0), four])),
            small(&seq_encode(&big(&[4])))
        );
        let zero = Term::app(singleton_term(), church(0));
        assert_eq!(
            run(Term::apps(star_term(), [church(0), zero])),
            small(&seq_encode(&big(&[0])))
        );
    }

    #[test]
    fn star_term_small_codes() {
        for a in 0..=6u64 {
            for b in 0..=6u64 {
                let want = seq_concat(&BigUint::from(a), &BigUint::from(b));
                let got = run(Term::apps(star_term(), [church(a), church(b)]));
                assert_eq!(BigUint::from(got), want, "{a} * {b}");
            }
        }
    }

    #[test]
    fn open_star_has_zii_head() {
        let t = star_singleton_open();
        assert!(zii_head_check(&t));
        assert_eq!(t.free_bound(), 2);
    }

    #[test]
    fn open_star_computes_concat() {
        let open = star_singleton_open();
        for y in (0..=40u64).step_by(3) {
            for z in (0..=40u64).step_by(3) {
                let closed = Term::apps(Term::abs(Term::abs(open.clone())), [church(y), church(z)]);
                let got = run(closed);
                assert_eq!(
                    BigUint::from(got),
                    seq_concat(&BigUint::from(y), &seq_singleton(&BigUint::from(z)))
                );
            }
        }
    }
}
