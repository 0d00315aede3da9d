//! Ordinals below ε₀ in Cantor normal form, with Hessenberg sum and
//! integer scaling.
//!
//! Text format: `w^(<ordinal>)*<n> + …`. The printer abbreviates
//! `w^(0)*n` to `n`, `w^(1)` to `w` and drops `*1`; the parser takes both
//! the long and the short forms.

mod skeleton;

pub use skeleton::{check_fact_inequality, FactCheck, ProofSkeleton};

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not in Cantor normal form: {0}")]
    NotCanonical(String),
    #[error("declared sup {declared} is below the prefix sum {prefix}")]
    InvalidSup { declared: Ordinal, prefix: Ordinal },
    #[error("rank is only defined for endpiece nodes")]
    NotAnEndpiece,
    #[error("fact inequality needs an ω-node")]
    NotAnOmegaNode,
    #[error("child index {0} out of range")]
    BadChildIndex(usize),
}

/// `ω^{e₁}·n₁ + … + ω^{e_k}·n_k` with `e₁ > … > e_k` and every `nᵢ ≥ 1`;
/// the empty sum is 0. Coefficients are `u64`; overflow panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn omega() -> Self {
        omega_pow(&Self::one())
    }

    /// Build from `(exponent, coefficient)` pairs, checking the normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (i, (e, n)) in terms.iter().enumerate() {
            if *n == 0 {
                return Err(OrdinalError::NotCanonical("zero coefficient".into()));
            }
            if i > 0 && terms[i - 1].0.cmp(e) != Ordering::Greater {
                return Err(OrdinalError::NotCanonical("exponents must strictly decrease".into()));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` for a natural number.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, n)] if e.is_zero() => Some(*n),
            _ => None,
        }
    }

    /// Leading exponent; `None` for 0.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }
}

/// Lexicographic on the term lists, exponents first.
pub fn cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    for ((ea, na), (eb, nb)) in a.terms.iter().zip(&b.terms) {
        match cmp(ea, eb).then(na.cmp(nb)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp(self, other)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(Ord::cmp(self, other))
    }
}

/// Natural sum: coefficients of equal exponents add.
pub fn hsum(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let ((ea, na), (eb, nb)) = (&a.terms[i], &b.terms[j]);
        match cmp(ea, eb) {
            Ordering::Greater => {
                out.push((ea.clone(), *na));
                i += 1;
            }
            Ordering::Less => {
                out.push((eb.clone(), *nb));
                j += 1;
            }
            Ordering::Equal => {
                out.push((ea.clone(), na.checked_add(*nb).expect("coefficient overflow")));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a.terms[i..]);
    out.extend_from_slice(&b.terms[j..]);
    Ordinal { terms: out }
}

/// `a ⊕ … ⊕ a`, `n` times.
pub fn hscale(a: &Ordinal, n: u64) -> Ordinal {
    if n == 0 {
        return Ordinal::zero();
    }
    let terms = a
        .terms
        .iter()
        .map(|(e, c)| (e.clone(), c.checked_mul(n).expect("coefficient overflow")))
        .collect();
    Ordinal { terms }
}

/// `ω^a`
pub fn omega_pow(a: &Ordinal) -> Ordinal {
    Ordinal { terms: vec![(a.clone(), 1)] }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, n)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e.as_finite() {
                Some(0) => {
                    write!(f, "{n}")?;
                    continue;
                }
                Some(1) => write!(f, "w")?,
                _ => write!(f, "w^({e})")?,
            }
            if *n != 1 {
                write!(f, "*{n}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, OrdinalError> {
        Err(OrdinalError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| OrdinalError::Parse { pos: start, msg: "number too large".into() })
    }

    fn term(&mut self) -> Result<(Ordinal, u64), OrdinalError> {
        if !self.eat(b'w') {
            return Ok((Ordinal::zero(), self.number()?));
        }
        let exp = if self.eat(b'^') {
            if self.eat(b'(') {
                let e = self.ordinal()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                e
            } else {
                Ordinal::finite(self.number()?)
            }
        } else {
            Ordinal::one()
        };
        let n = if self.eat(b'*') { self.number()? } else { 1 };
        Ok((exp, n))
    }

    fn ordinal(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        if terms.len() == 1 && terms[0].1 == 0 {
            return Ok(Ordinal::zero());
        }
        Ordinal::from_terms(terms)
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let o = p.ordinal()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("unexpected trailing input");
        }
        Ok(o)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
