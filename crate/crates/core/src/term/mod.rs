//! Nameless λ-terms with cached structural metadata.
//!
//! A [`Term`] is an immutable, reference-counted node. Every node caches
//! its free-index bound, its size and a structural hash, so α-equivalence
//! is plain structural equality and substitution can skip closed subterms.

mod redex;
mod shape;
mod syntax;

pub use redex::{contract, list_redexes, RedexKind, RedexSite};
pub(crate) use redex::{eta_body, is_beta_redex};
pub use shape::{order_zero_probe, shape_match, OrderVerdict, ShapeMatch};
pub use syntax::{parse_open, parse_term, parse_with_defs, render_open, render_term, RenderStyle};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound name `{name}` at byte {pos}")]
    Unbound { name: String, pos: usize },
    #[error("invalid redex site {0:?}")]
    InvalidSite(Path),
}

/// One child selector on the way from the root to a subterm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Fun,
    Arg,
    Body,
}

pub type Path = Vec<Step>;

#[derive(Clone)]
pub struct Term(Arc<Node>);

struct Node {
    kind: Kind,
    /// Every free de Bruijn index in the term is strictly below this bound.
    free: u32,
    size: u64,
    hash: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    Var(u32),
    Abs(Term),
    App(Term, Term),
}

#[inline]
fn mix(a: u64, b: u64) -> u64 {
    let x = a.rotate_left(23) ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x.wrapping_mul(0xBF58_476D_1CE4_E5B9) ^ (x >> 31)
}

impl Term {
    pub fn var(index: u32) -> Term {
        Term(Arc::new(Node {
            kind: Kind::Var(index),
            free: index + 1,
            size: 1,
            hash: mix(1, index as u64),
        }))
    }

    pub fn abs(body: Term) -> Term {
        let free = body.0.free.saturating_sub(1);
        let size = body.0.size.saturating_add(1);
        let hash = mix(2, body.0.hash);
        Term(Arc::new(Node {
            kind: Kind::Abs(body),
            free,
            size,
            hash,
        }))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        let free = fun.0.free.max(arg.0.free);
        let size = fun.0.size.saturating_add(arg.0.size).saturating_add(1);
        let hash = mix(mix(3, fun.0.hash), arg.0.hash);
        Term(Arc::new(Node {
            kind: Kind::App(fun, arg),
            free,
            size,
            hash,
        }))
    }

    /// `f a1 a2 … an`
    pub fn apps<I: IntoIterator<Item = Term>>(fun: Term, args: I) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    /// `λ…λ. body` with `n` binders.
    pub fn lams(n: usize, body: Term) -> Term {
        (0..n).fold(body, |b, _| Term::abs(b))
    }

    #[inline]
    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn is_closed(&self) -> bool {
        self.0.free == 0
    }

    /// Strict upper bound on the free indices of the term.
    pub fn free_bound(&self) -> u32 {
        self.0.free
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_abs(&self) -> bool {
        matches!(self.kind(), Kind::Abs(_))
    }

    pub fn as_abs(&self) -> Option<&Term> {
        match self.kind() {
            Kind::Abs(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            Kind::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    /// Does index `idx` occur free?
    pub fn occurs(&self, idx: u32) -> bool {
        if self.0.free <= idx {
            return false;
        }
        grow(|| match self.kind() {
            Kind::Var(i) => *i == idx,
            Kind::Abs(b) => b.occurs(idx + 1),
            Kind::App(f, a) => f.occurs(idx) || a.occurs(idx),
        })
    }

    /// Add `by` to every free index `>= cutoff`.
    pub fn shift(&self, by: u32, cutoff: u32) -> Term {
        if by == 0 || self.0.free <= cutoff {
            return self.clone();
        }
        grow(|| match self.kind() {
            Kind::Var(i) => Term::var(i + by),
            Kind::Abs(b) => Term::abs(b.shift(by, cutoff + 1)),
            Kind::App(f, a) => Term::app(f.shift(by, cutoff), a.shift(by, cutoff)),
        })
    }

    /// Subtract one from every free index `> cutoff`; index `cutoff` must not occur.
    pub fn unshift(&self, cutoff: u32) -> Term {
        crate::term::grow(|| {
            if self.0.free <= cutoff {
                return self.clone();
            }
            match self.kind() {
                Kind::Var(i) => {
                    debug_assert!(*i != cutoff);
                    if *i > cutoff {
                        Term::var(i - 1)
                    } else {
                        self.clone()
                    }
                }
                Kind::Abs(b) => Term::abs(b.unshift(cutoff + 1)),
                Kind::App(f, a) => Term::app(f.unshift(cutoff), a.unshift(cutoff)),
            }
        })
    }

    pub fn subterm(&self, path: &[Step]) -> Option<&Term> {
        let mut cur = self;
        for step in path {
            cur = match (step, cur.kind()) {
                (Step::Fun, Kind::App(f, _)) => f,
                (Step::Arg, Kind::App(_, a)) => a,
                (Step::Body, Kind::Abs(b)) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuild the term with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[Step], new: Term) -> Option<Term> {
        crate::term::grow(|| {
            let Some((first, rest)) = path.split_first() else {
                return Some(new);
            };
            match (first, self.kind()) {
                (Step::Fun, Kind::App(f, a)) => {
                    Some(Term::app(f.replace_at(rest, new)?, a.clone()))
                }
                (Step::Arg, Kind::App(f, a)) => {
                    Some(Term::app(f.clone(), a.replace_at(rest, new)?))
                }
                (Step::Body, Kind::Abs(b)) => Some(Term::abs(b.replace_at(rest, new)?)),
                _ => None,
            }
        })
    }

    /// Split `h a1 … an` into the head and its arguments.
    pub fn spine(&self) -> (Term, Vec<Term>) {
        let mut args = Vec::new();
        let mut cur = self.clone();
        while let Kind::App(f, a) = cur.kind() {
            args.push(a.clone());
            let next = f.clone();
            cur = next;
        }
        args.reverse();
        (cur, args)
    }

    /// Split `λ…λ. body` into the binder count and the body.
    pub fn strip_lams(&self) -> (usize, Term) {
        let mut n = 0;
        let mut cur = self.clone();
        while let Kind::Abs(b) = cur.kind() {
            n += 1;
            let next = b.clone();
            cur = next;
        }
        (n, cur)
    }

    /// Number of occurrences of `needle` as a subterm.
    pub fn count_occurrences(&self, needle: &Term) -> usize {
        crate::term::grow(|| {
            if self.size() < needle.size() {
                return 0;
            }
            if self == needle {
                return 1;
            }
            match self.kind() {
                Kind::Var(_) => 0,
                Kind::Abs(b) => b.count_occurrences(needle),
                Kind::App(f, a) => f.count_occurrences(needle) + a.count_occurrences(needle),
            }
        })
    }
}

/// Capture-avoiding substitution of `arg` for index 0 in `body` (the body of
/// an abstraction), lowering the remaining free indices by one.
pub fn substitute(body: &Term, arg: &Term) -> Term {
    subst_at(body, 0, arg)
}

fn subst_at(t: &Term, depth: u32, arg: &Term) -> Term {
    if t.0.free <= depth {
        return t.clone();
    }
    grow(|| match t.kind() {
        Kind::Var(i) => {
            if *i == depth {
                arg.shift(depth, 0)
            } else {
                // i > depth here since free > depth only through this var
                Term::var(i - 1)
            }
        }
        Kind::Abs(b) => Term::abs(subst_at(b, depth + 1, arg)),
        Kind::App(f, a) => Term::app(subst_at(f, depth, arg), subst_at(a, depth, arg)),
    })
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.size != other.0.size {
            return false;
        }
        grow(|| self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self, RenderStyle::Nameless))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self, RenderStyle::Named))
    }
}

impl Drop for Node {
    // Long application spines (large Church numerals) would otherwise be
    // dropped recursively.
    fn drop(&mut self) {
        let mut stack: Vec<Term> = Vec::new();
        match std::mem::replace(&mut self.kind, Kind::Var(0)) {
            Kind::Var(_) => return,
            Kind::Abs(b) => stack.push(b),
            Kind::App(f, a) => {
                stack.push(f);
                stack.push(a);
            }
        }
        while let Some(t) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(t.0) {
                match std::mem::replace(&mut node.kind, Kind::Var(0)) {
                    Kind::Var(_) => {}
                    Kind::Abs(b) => stack.push(b),
                    Kind::App(f, a) => {
                        stack.push(f);
                        stack.push(a);
                    }
                }
            }
        }
    }
}

/// Run a recursive step, growing the stack on demand; term recursion
/// follows term depth, which large numerals push into the thousands.
#[inline]
pub(crate) fn grow<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(128 * 1024, 8 * 1024 * 1024, f)
}

/// Run `f` on a thread with a large stack; term recursion follows term depth.
pub fn with_big_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(512 * 1024 * 1024)
        .spawn(f)
        .expect("spawn worker thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Term {
        Term::abs(Term::var(0))
    }
    fn k() -> Term {
        Term::abs(Term::abs(Term::var(1)))
    }

    #[test]
    fn substitute_identity_body() {
        assert_eq!(substitute(&Term::var(0), &k()), k());
    }

    #[test]
    fn substitute_under_binder_shifts() {
        // body = λ.1, arg = I  ->  λ.I
        let out = substitute(&Term::abs(Term::var(1)), &i());
        assert_eq!(out, Term::abs(Term::abs(Term::var(0))));
    }

    #[test]
    fn substitute_self_application() {
        let body = Term::app(Term::var(0), Term::var(0));
        assert_eq!(substitute(&body, &i()), Term::app(i(), i()));
    }

    #[test]
    fn substitute_open_arg_is_shifted() {
        // body = λ.1 (the outer var), arg = free var 0  ->  λ.1
        let out = substitute(&Term::abs(Term::var(1)), &Term::var(0));
        assert_eq!(out, Term::abs(Term::var(1)));
        // free var above the substituted one is lowered
        assert_eq!(substitute(&Term::var(1), &i()), Term::var(0));
    }

    #[test]
    fn metadata() {
        let t = Term::app(k(), i());
        assert!(t.is_closed());
        assert_eq!(t.size(), 6);
        assert_eq!(Term::abs(Term::var(3)).free_bound(), 3);
        assert!(Term::abs(Term::app(Term::var(1), Term::var(0))).occurs(0));
    }

    #[test]
    fn spine_and_replace() {
        let t = Term::apps(k(), [i(), k()]);
        let (h, args) = t.spine();
        assert_eq!(h, k());
        assert_eq!(args, vec![i(), k()]);
        let r = t.replace_at(&[Step::Arg], i()).unwrap();
        assert_eq!(r, Term::apps(k(), [i(), i()]));
        assert!(t.replace_at(&[Step::Body], i()).is_none());
    }

    #[test]
    fn deep_terms_drop_without_overflow() {
        let mut t = Term::var(0);
        for _ in 0..1_000_000 {
            t = Term::app(Term::var(1), t);
        }
        drop(t);
    }
}
