//! Surface syntax.
//!
//! ```text
//! term   := binder term | atom+
//! binder := ('\' | 'λ') name* '.'
//! atom   := name | index | '(' term ')'
//! ```
//!
//! Application is left-associative and a λ-body extends as far right as
//! possible. A decimal `index` is a raw de Bruijn index, which is how the
//! nameless style (`λ.0`) is read back.

use super::{Kind, Term, TermError};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Named,
    Nameless,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Lam,
    Dot,
    LParen,
    RParen,
    Name(String),
    Index(u32),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '\\' | 'λ' => {
                it.next();
                out.push((pos, Tok::Lam));
            }
            '.' => {
                it.next();
                out.push((pos, Tok::Dot));
            }
            '(' => {
                it.next();
                out.push((pos, Tok::LParen));
            }
            ')' => {
                it.next();
                out.push((pos, Tok::RParen));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
                let idx = s.parse::<u32>().map_err(|_| TermError::Syntax {
                    pos,
                    msg: format!("index `{s}` out of range"),
                })?;
                out.push((pos, Tok::Index(idx)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if !(d.is_alphanumeric() || d == '_' || d == '\'') {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
                out.push((pos, Tok::Name(s)));
            }
            other => {
                return Err(TermError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(out)
}

enum FreeNames<'a> {
    Closed,
    Context(&'a [&'a str]),
    Defs(&'a HashMap<String, Term>),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    scope: Vec<Option<String>>,
    free: FreeNames<'a>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn term(&mut self) -> Result<Term, TermError> {
        super::grow(|| self.term_inner())
    }

    fn term_inner(&mut self) -> Result<Term, TermError> {
        let mut acc: Option<Term> = None;
        loop {
            let next = match self.peek() {
                None | Some(Tok::RParen) => break,
                Some(Tok::Lam) => {
                    let lam = self.lambda()?;
                    acc = Some(match acc {
                        None => lam,
                        Some(f) => Term::app(f, lam),
                    });
                    break;
                }
                Some(_) => self.atom()?,
            };
            acc = Some(match acc {
                None => next,
                Some(f) => Term::app(f, next),
            });
        }
        match acc {
            Some(t) => Ok(t),
            None => self.err("expected a term"),
        }
    }

    fn lambda(&mut self) -> Result<Term, TermError> {
        self.pos += 1; // binder
        let mut names = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Name(n)) => {
                    names.push(Some(n.clone()));
                    self.pos += 1;
                }
                Some(Tok::Dot) => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected binder name or `.`"),
            }
        }
        if names.is_empty() {
            names.push(None);
        }
        let n = names.len();
        self.scope.extend(names);
        let body = self.term();
        self.scope.truncate(self.scope.len() - n);
        Ok(Term::lams(n, body?))
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        let pos = self.here();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(Tok::Index(i)) => {
                self.pos += 1;
                let depth = self.scope.len() as u32;
                if i >= depth && matches!(self.free, FreeNames::Closed | FreeNames::Defs(_)) {
                    return Err(TermError::Unbound {
                        name: i.to_string(),
                        pos,
                    });
                }
                Ok(Term::var(i))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let depth = self.scope.len();
                if let Some(k) = self
                    .scope
                    .iter()
                    .rev()
                    .position(|s| s.as_deref() == Some(name.as_str()))
                {
                    return Ok(Term::var(k as u32));
                }
                match &self.free {
                    FreeNames::Context(ctx) => match ctx.iter().position(|c| *c == name) {
                        Some(j) => Ok(Term::var((depth + j) as u32)),
                        None => Err(TermError::Unbound { name, pos }),
                    },
                    FreeNames::Defs(defs) => match defs.get(&name) {
                        Some(t) => Ok(t.shift(depth as u32, 0)),
                        None => Err(TermError::Unbound { name, pos }),
                    },
                    FreeNames::Closed => Err(TermError::Unbound { name, pos }),
                }
            }
            _ => self.err("expected an atom"),
        }
    }
}

fn run(text: &str, free: FreeNames<'_>) -> Result<Term, TermError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        scope: Vec::new(),
        free,
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

/// Parse a closed term; free names are rejected.
pub fn parse_term(text: &str) -> Result<Term, TermError> {
    run(text, FreeNames::Closed)
}

/// Parse an open term. `ctx[0]` is the innermost free variable (index 0
/// outside all binders), `ctx[1]` the next one out, and so on. Raw indices
/// beyond the binder depth are accepted as free variables.
pub fn parse_open(text: &str, ctx: &[&str]) -> Result<Term, TermError> {
    run(text, FreeNames::Context(ctx))
}

/// Parse a term whose free names are resolved from a table of closed terms.
pub fn parse_with_defs(text: &str, defs: &HashMap<String, Term>) -> Result<Term, TermError> {
    run(text, FreeNames::Defs(defs))
}

const NAMES: [&str; 14] = [
    "x", "y", "z", "w", "u", "v", "a", "b", "c", "d", "e", "f", "g", "h",
];

struct Renderer<'a> {
    style: RenderStyle,
    ctx: &'a [&'a str],
    binders: Vec<String>,
    out: String,
}

impl Renderer<'_> {
    fn fresh(&self) -> String {
        let d = self.binders.len();
        let mut k = d;
        loop {
            let cand = if k < NAMES.len() {
                NAMES[k].to_string()
            } else {
                format!("x{k}")
            };
            if !self.ctx.contains(&cand.as_str()) && !self.binders.contains(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    fn var(&mut self, i: u32) {
        let depth = self.binders.len() as u32;
        match self.style {
            RenderStyle::Nameless => self.out.push_str(&i.to_string()),
            RenderStyle::Named => {
                if i < depth {
                    let name = self.binders[(depth - 1 - i) as usize].clone();
                    self.out.push_str(&name);
                } else {
                    match self.ctx.get((i - depth) as usize) {
                        Some(n) => self.out.push_str(n),
                        None => self.out.push_str(&i.to_string()),
                    }
                }
            }
        }
    }

    fn term(&mut self, t: &Term) {
        super::grow(|| self.term_inner(t))
    }

    fn term_inner(&mut self, t: &Term) {
        match t.kind() {
            Kind::Var(i) => self.var(*i),
            Kind::Abs(b) => {
                match self.style {
                    RenderStyle::Nameless => {
                        self.out.push_str("λ.");
                        self.binders.push(String::new());
                    }
                    RenderStyle::Named => {
                        let n = self.fresh();
                        self.out.push('\\');
                        self.out.push_str(&n);
                        self.out.push('.');
                        self.binders.push(n);
                    }
                }
                self.term(b);
                self.binders.pop();
            }
            Kind::App(..) => {
                let (head, args) = t.spine();
                self.atom_or_paren(&head, head.is_abs());
                for a in &args {
                    self.out.push(' ');
                    self.atom_or_paren(a, !matches!(a.kind(), Kind::Var(_)));
                }
            }
        }
    }

    fn atom_or_paren(&mut self, t: &Term, paren: bool) {
        if paren {
            self.out.push('(');
            self.term(t);
            self.out.push(')');
        } else {
            self.term(t);
        }
    }
}

pub fn render_term(t: &Term, style: RenderStyle) -> String {
    render_open(t, style, &[])
}

/// Render with names for the free variables (`ctx[0]` is index 0 at top level).
pub fn render_open(t: &Term, style: RenderStyle, ctx: &[&str]) -> String {
    let mut r = Renderer {
        style,
        ctx,
        binders: Vec::new(),
        out: String::new(),
    };
    r.term(t);
    r.out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_half() -> Term {
        Term::abs(Term::app(Term::var(0), Term::var(0)))
    }

    #[test]
    fn parse_identity() {
        assert_eq!(parse_term("\\x.x").unwrap(), Term::abs(Term::var(0)));
        assert_eq!(parse_term("λx.x").unwrap(), Term::abs(Term::var(0)));
    }

    #[test]
    fn parse_omega() {
        let t = parse_term("(\\x.x x)(\\x.x x)").unwrap();
        assert_eq!(t, Term::app(omega_half(), omega_half()));
    }

    #[test]
    fn parse_rejects_unbound() {
        match parse_term("\\x.\\y.z") {
            Err(TermError::Unbound { name, .. }) => assert_eq!(name, "z"),
            other => panic!("expected unbound error, got {other:?}"),
        }
    }

    #[test]
    fn parse_reports_syntax_position() {
        match parse_term("\\x.(x") {
            Err(TermError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_term("").is_err());
        assert!(parse_term("x)").is_err());
    }

    #[test]
    fn parse_multi_binder_and_trailing_lambda() {
        let k = parse_term("\\x y.x").unwrap();
        assert_eq!(k, Term::abs(Term::abs(Term::var(1))));
        let t = parse_term("\\f.f \\x.x").unwrap();
        assert_eq!(
            t,
            Term::abs(Term::app(Term::var(0), Term::abs(Term::var(0))))
        );
    }

    #[test]
    fn render_examples() {
        let i = Term::abs(Term::var(0));
        assert_eq!(render_term(&i, RenderStyle::Named), "\\x.x");
        assert_eq!(render_term(&i, RenderStyle::Nameless), "λ.0");
        let k = Term::abs(Term::abs(Term::var(1)));
        assert_eq!(render_term(&k, RenderStyle::Named), "\\x.\\y.x");
        let om = Term::app(omega_half(), omega_half());
        assert_eq!(render_term(&om, RenderStyle::Named), "(\\x.x x) (\\x.x x)");
    }

    #[test]
    fn nameless_round_trip() {
        let t = parse_term("\\f.\\x.f (f x) (\\y.y x)").unwrap();
        let s = render_term(&t, RenderStyle::Nameless);
        assert_eq!(parse_term(&s).unwrap(), t);
    }

    #[test]
    fn open_terms() {
        let t = parse_open("z I", &["z", "I"]).unwrap();
        assert_eq!(t, Term::app(Term::var(0), Term::var(1)));
        let s = render_open(
            &Term::abs(Term::app(Term::var(1), Term::var(0))),
            RenderStyle::Named,
            &["x"],
        );
        assert_eq!(s, "\\y.x y");
        assert_eq!(
            parse_open(&s, &["x"]).unwrap(),
            Term::abs(Term::app(Term::var(1), Term::var(0)))
        );
    }

    #[test]
    fn defs_are_inlined() {
        let mut defs = HashMap::new();
        defs.insert("I".to_string(), Term::abs(Term::var(0)));
        let t = parse_with_defs("\\x.I x", &defs).unwrap();
        assert_eq!(
            t,
            Term::abs(Term::app(Term::abs(Term::var(0)), Term::var(0)))
        );
    }
}
