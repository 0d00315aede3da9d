//! A small library of named λ-terms built from surface syntax.
//!
//! Numbers that get inspected are Scott numerals (`SZ`, `SS`), so a case
//! split consumes its scrutinee once and normal-order evaluation does not
//! re-evaluate duplicated thunks. Recursion is bounded by a Church numeral
//! `N` used as fuel: `N STEP BASE` unfolds `STEP` `N` times, and every
//! recursive helper below takes that fuel as its first argument.

use crate::term::{parse_with_defs, Term};
use std::collections::HashMap;
use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct Lib {
    defs: HashMap<String, Term>,
}

const BASE_DEFS: &[(&str, &str)] = &[
    ("I", "\\x.x"),
    ("K", "\\x y.x"),
    ("Kstar", "\\x y.y"),
    ("Omega", "(\\x.x x) (\\x.x x)"),
    ("TRUE", "\\a b.a"),
    ("FALSE", "\\a b.b"),
    ("C0", "\\f x.x"),
    ("CSUCC", "\\n f x.f (n f x)"),
    ("CADD", "\\m n f x.m f (n f x)"),
    ("CMUL", "\\m n f.m (n f)"),
    ("PAIR2", "\\a b z.z a b"),
    ("SZ", "\\z s.z"),
    ("SS", "\\n z s.s n"),
    ("TOS", "\\n.n SS SZ"),
    ("NIL", "\\n c.n"),
    ("CONS", "\\x l n c.c x l"),
    // Cantor order step: (0, b) -> (b+1, 0), (a+1, b) -> (a, b+1)
    (
        "U_STEP",
        "\\rec x a b k.x (k a b) (\\x'.a (rec x' (SS b) SZ k) (\\a'.rec x' a' (SS b) k))",
    ),
    ("U_BASE", "\\x a b k.k a b"),
    ("UNPAIR", "\\N x k.N U_STEP U_BASE x SZ SZ k"),
    (
        "H_STEP",
        "\\rec m p h k.m (k p h) (\\m'.p (rec m' FALSE h k) (rec m' TRUE (SS h) k))",
    ),
    ("H_BASE", "\\m p h k.k p h"),
    ("HALFPAR", "\\N m k.N H_STEP H_BASE m TRUE SZ k"),
    (
        "W_STEP",
        "\\rec n e k.e (k n) (\\v rest.n v (\\n'.rec n' rest k))",
    ),
    ("W_BASE", "\\n e k.k n"),
    ("WALK", "\\N n env k.N W_STEP W_BASE n env k"),
    (
        "TOC",
        "\\N s.N (\\rec t.t C0 (\\p.CSUCC (rec p))) (\\t.C0) s",
    ),
    (
        "TRI",
        "\\n.n (\\p.p (\\i s.PAIR2 (CSUCC i) (CADD s (CSUCC i)))) (PAIR2 C0 C0) FALSE",
    ),
    ("CPAIR", "\\a b.CADD (TRI (CADD a b)) b"),
    ("ISZERO", "\\n.n (\\x.FALSE) TRUE"),
    ("CPRED", "\\n f x.n (\\g h.h (g f)) (\\u.x) (\\u.u)"),
    ("CSUB", "\\m n.n CPRED m"),
];

impl Lib {
    /// The shared base library.
    pub fn base() -> &'static Lib {
        static LIB: OnceLock<Lib> = OnceLock::new();
        LIB.get_or_init(|| {
            let mut lib = Lib {
                defs: HashMap::new(),
            };
            for (name, src) in BASE_DEFS {
                lib.define(name, src);
            }
            lib
        })
    }

    /// Add a definition; earlier names are visible in `src`.
    pub fn define(&mut self, name: &str, src: &str) -> Term {
        let t = self.parse(src);
        self.defs.insert(name.to_string(), t.clone());
        t
    }

    pub fn insert(&mut self, name: &str, t: Term) {
        assert!(t.is_closed(), "{name} must be closed");
        self.defs.insert(name.to_string(), t);
    }

    /// Parse `src` against the library; panics on a malformed built-in.
    pub fn parse(&self, src: &str) -> Term {
        parse_with_defs(src, &self.defs).unwrap_or_else(|e| panic!("library term {src:?}: {e}"))
    }

    pub fn get(&self, name: &str) -> Term {
        self.defs
            .get(name)
            .unwrap_or_else(|| panic!("no library term {name}"))
            .clone()
    }
}
