//! Church data, sequence codes, Gödel numbering and the Kleene enumerator.

mod godel;
mod kleene;
mod lib;
mod seq;

pub use godel::{godel_code, godel_decode, godel_encode, godel_indices, term_of_code};
pub use kleene::{generator_e, kleene_j, scripted_enumerator, EnumError};
pub use lib::Lib;
pub use seq::{
    cantor_pair, cantor_unpair, seq_concat, seq_decode, seq_encode, seq_singleton, singleton_term,
    star_singleton_open, star_term, zii_head_check,
};

use crate::reduction::{beta_nf, normalize_fast};
use crate::term::{Kind, Term};
use std::sync::OnceLock;

/// `λf.λx.fⁿx`
pub fn church(n: u64) -> Term {
    let mut body = Term::var(0);
    for _ in 0..n {
        body = Term::app(Term::var(1), body);
    }
    Term::lams(2, body)
}

/// Read `λf.λx.fⁿx` (or its η-form `λf.f` for one).
pub fn read_numeral(t: &Term) -> Option<u64> {
    if *t == i() {
        return Some(1);
    }
    let (2, mut body) = t.strip_lams() else {
        return None;
    };
    let mut n = 0;
    loop {
        match body.kind() {
            Kind::Var(0) => return Some(n),
            Kind::App(f, a) if matches!(f.kind(), Kind::Var(1)) => {
                n += 1;
                let next = a.clone();
                body = next;
            }
            _ => return None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unchurch {
    Numeral(u64),
    NotANumeral,
    Unknown,
}

/// Normalize within `fuel` and read off a numeral.
pub fn unchurch(t: &Term, fuel: u64) -> Unchurch {
    let mut left = fuel;
    match beta_nf(t, &mut left) {
        None => Unchurch::Unknown,
        Some(nf) => match read_numeral(&nf) {
            Some(n) => Unchurch::Numeral(n),
            None => match normalize_fast(&nf, left) {
                Ok((nf, _)) => read_numeral(&nf).map_or(Unchurch::NotANumeral, Unchurch::Numeral),
                Err(_) => Unchurch::Unknown,
            },
        },
    }
}

fn cached(cell: &'static OnceLock<Term>, src: &str) -> Term {
    cell.get_or_init(|| crate::term::parse_term(src).expect("constant parses"))
        .clone()
}

pub fn i() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "\\x.x")
}

pub fn k() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "\\x.\\y.x")
}

/// `K* ≡ λxy.y`
pub fn kstar() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "\\x.\\y.y")
}

pub fn omega() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "(\\x.x x) (\\x.x x)")
}

/// `λz. z X₁ … X_k`
pub fn tuple(items: &[Term]) -> Term {
    let shifted = items.iter().map(|t| t.shift(1, 0));
    Term::abs(Term::apps(Term::var(0), shifted))
}

/// Named constants as used by [`Lib`] and the CLI.
pub fn constant(name: &str) -> Option<Term> {
    Some(match name {
        "I" => i(),
        "K" => k(),
        "Kstar" | "K*" => kstar(),
        "Omega" | "Ω" => omega(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::normalize;
    use crate::term::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn numerals() {
        assert_eq!(church(0), p("\\f.\\x.x"));
        assert_eq!(church(2), p("\\f.\\x.f (f x)"));
        let succ = p("\\n.\\f.\\x.f (n f x)");
        let t = Term::apps(church(3), [succ, church(0)]);
        assert_eq!(normalize(&t, 100).term(), &church(3));
    }

    #[test]
    fn unchurch_examples() {
        assert_eq!(unchurch(&church(5), 10), Unchurch::Numeral(5));
        assert_eq!(unchurch(&omega(), 50), Unchurch::Unknown);
        assert_eq!(unchurch(&k(), 10), Unchurch::NotANumeral);
        assert_eq!(unchurch(&church(1), 10), Unchurch::Numeral(1));
        assert_eq!(unchurch(&i(), 10), Unchurch::Numeral(1));
        for n in 0..=50 {
            assert_eq!(unchurch(&church(n), 10), Unchurch::Numeral(n));
        }
    }

    #[test]
    fn constants_behave() {
        let t = Term::app(tuple(&[k()]), i());
        assert_eq!(normalize(&t, 10).term(), &k());
        let t = Term::app(tuple(&[i(), k(), kstar()]), p("\\a.\\b.\\c.b"));
        assert_eq!(normalize(&t, 10).term(), &k());
        let t = Term::apps(kstar(), [omega(), i()]);
        assert_eq!(normalize(&t, 10).term(), &i());
    }

    #[test]
    fn tuple_of_open_items_shifts() {
        let t = tuple(&[Term::var(0)]);
        assert_eq!(t, Term::abs(Term::app(Term::var(0), Term::var(1))));
    }
}
