//! The Kleene enumerator `J` with `J ⌈M⌉ =β M`, generators `E` and scripted
//! stand-ins for enumerators.
//!
//! `J` reads the Church numeral of an index, converts it to a Scott numeral,
//! unpairs it into (code, repetition) and decodes the code back into the
//! term itself: an even code builds a real `λv`, pushing `v` on an
//! environment list; a small code under `d` binders picks the variable
//! from that list; an odd code builds an application. Every recursion runs
//! on fuel `i + 2`, which covers the unpairing of `i` and every descent of
//! the decoder, so `J ⌈M⌉` has `M`'s normal form as its own.

use super::Lib;
use crate::reduction::normalize_fast;
use crate::term::Term;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("normalization of the generator ran out of fuel after {0} steps")]
    FuelExhausted(u64),
}

pub fn kleene_j() -> Term {
    static J: OnceLock<Term> = OnceLock::new();
    J.get_or_init(|| {
        let mut lib = Lib::base().clone();
        lib.define(
            "D_STEP",
            "\\N rec n env.WALK N n env (\\m.HALFPAR N m (\\p h.p (\\v.rec h (CONS v env)) (UNPAIR N h (\\a b.rec a env (rec b env)))))",
        );
        lib.define("D_BASE", "\\n env.n");
        lib.parse("\\i.(\\N.UNPAIR N (TOS i) (\\c r.N (D_STEP N) D_BASE c NIL)) (\\f x.i f (f (f x)))")
    })
    .clone()
}

/// βη-normal form of `λx. J (tx x)`.
pub fn generator_e(tx: &Term, fuel: u64) -> Result<Term, EnumError> {
    let body = Term::app(kleene_j(), Term::app(tx.shift(1, 0), Term::var(0)));
    normalize_fast(&Term::abs(body), fuel)
        .map(|(nf, _)| nf)
        .map_err(EnumError::FuelExhausted)
}

/// `S` with `S n̲ →β* table[n]`, and `default` for unmapped `n`, by case
/// analysis on the Scott form of the argument.
pub fn scripted_enumerator(table: &BTreeMap<u64, Term>, default: &Term) -> Term {
    let Some(&max) = table.keys().next_back() else {
        return Term::abs(default.shift(1, 0));
    };
    let mut rest = Term::abs(default.clone());
    for k in (0..=max).rev() {
        let val = table.get(&k).unwrap_or(default).clone();
        rest = Term::abs(Term::apps(Term::var(0), [val, rest]));
    }
    let tos = Lib::base().get("TOS");
    Term::abs(Term::app(rest, Term::app(tos, Term::var(0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{church, godel_encode, godel_indices, i, k, kstar, omega};
    use crate::reduction::{head_reduce, normalize_fast};
    use crate::term::parse_term;
    use num_traits::ToPrimitive;

    fn quote(t: &Term) -> Term {
        church(godel_encode(t).to_u64().unwrap())
    }

    fn eval(t: &Term) -> Term {
        normalize_fast(t, 10_000_000).expect("normalizes").0
    }

    #[test]
    fn j_is_closed_and_normalizes() {
        let j = kleene_j();
        assert!(j.is_closed());
        assert!(eval(&j).is_closed());
    }

    #[test]
    fn j_on_small_terms() {
        for m in [i(), k(), kstar(), church(0), church(1)] {
            let got = eval(&Term::app(kleene_j(), quote(&m)));
            assert_eq!(got, eval(&m), "J on {m}");
        }
    }

    #[test]
    fn j_on_a_repetition_index() {
        let idx = godel_indices(&k(), 3)[2].to_u64().unwrap();
        assert_eq!(eval(&Term::app(kleene_j(), church(idx))), k());
    }

    #[test]
    fn j_on_omega_shaped_code() {
        // λx.x x has a small code; J reproduces it
        let t = parse_term("\\x.x x").unwrap();
        assert_eq!(eval(&Term::app(kleene_j(), quote(&t))), t);
    }

    #[test]
    fn generator_examples() {
        let e = generator_e(&i(), 1_000_000).unwrap();
        assert_eq!(normalize_fast(&e, 10).unwrap().0, e.clone());
        for n in [0u64, 3, 21] {
            assert_eq!(
                eval(&Term::app(e.clone(), church(n))),
                eval(&Term::app(kleene_j(), church(n)))
            );
        }
        let const_i = Term::abs(quote(&i()));
        let e = generator_e(&const_i, 1_000_000).unwrap();
        assert_eq!(eval(&Term::app(e, church(0))), i());
    }

    #[test]
    fn scripted_examples() {
        let table = BTreeMap::from([(2u64, omega())]);
        let s = scripted_enumerator(&table, &i());
        assert!(s.is_closed());
        assert_eq!(eval(&Term::app(s.clone(), church(5))), i());
        assert_eq!(eval(&Term::app(s.clone(), church(0))), i());
        let tr = head_reduce(&Term::app(s, church(2)), 200);
        assert!(tr.terms().contains(&omega()));
    }

    #[test]
    fn scripted_empty_table() {
        let s = scripted_enumerator(&BTreeMap::new(), &k());
        assert_eq!(eval(&Term::app(s, church(4))), k());
    }
}
