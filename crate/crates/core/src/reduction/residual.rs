use crate::term::{contract, Kind, Path, RedexKind, RedexSite, Step, Term, TermError};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkMode {
    /// Plain copies of the marked term.
    Trace,
    /// Copies that may have been reduced internally.
    Etrace,
}

/// A term with marked occurrences of a closed subterm `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTerm {
    pub term: Term,
    pub target: Term,
    pub marks: BTreeSet<Path>,
}

impl MarkedTerm {
    /// Mark every occurrence of `target` in `term`.
    pub fn mark_all(term: Term, target: Term) -> Self {
        let mut marks = BTreeSet::new();
        let mut path = Vec::new();
        find(&term, &target, &mut path, &mut marks);
        MarkedTerm {
            term,
            target,
            marks,
        }
    }

    /// Does every mark still address a copy of `target`?
    pub fn marks_are_copies(&self) -> bool {
        self.marks
            .iter()
            .all(|p| self.term.subterm(p) == Some(&self.target))
    }
}

fn find(t: &Term, target: &Term, path: &mut Path, out: &mut BTreeSet<Path>) {
    crate::term::grow(|| {
        if t == target {
            out.insert(path.clone());
            return;
        }
        match t.kind() {
            Kind::Var(_) => {}
            Kind::Abs(b) => {
                path.push(Step::Body);
                find(b, target, path, out);
                path.pop();
            }
            Kind::App(f, a) => {
                path.push(Step::Fun);
                find(f, target, path, out);
                path.pop();
                path.push(Step::Arg);
                find(a, target, path, out);
                path.pop();
            }
        }
    })
}

/// Paths of the occurrences of the variable bound by the outermost λ of `body`'s binder.
fn bound_occurrences(t: &Term, depth: u32, path: &mut Path, out: &mut Vec<Path>) {
    crate::term::grow(|| {
        if t.free_bound() <= depth {
            return;
        }
        match t.kind() {
            Kind::Var(i) => {
                if *i == depth {
                    out.push(path.clone());
                }
            }
            Kind::Abs(b) => {
                path.push(Step::Body);
                bound_occurrences(b, depth + 1, path, out);
                path.pop();
            }
            Kind::App(f, a) => {
                path.push(Step::Fun);
                bound_occurrences(f, depth, path, out);
                path.pop();
                path.push(Step::Arg);
                bound_occurrences(a, depth, path, out);
                path.pop();
            }
        }
    })
}

/// Contract `site` and carry the marks over to their residuals.
///
/// A mark dies when its copy is erased by a λ whose variable does not
/// occur, when it is the abstraction of the contracted redex (a head
/// reduction with the marked term at the head), and in trace mode when the
/// copy itself is reduced internally. In etrace mode an internally reduced
/// copy keeps its mark.
pub fn residuals(
    mt: &MarkedTerm,
    site: &RedexSite,
    mode: MarkMode,
) -> Result<MarkedTerm, TermError> {
    let term = contract(&mt.term, site)?;
    let p = &site.path;
    let redex = mt.term.subterm(p).expect("contract validated the site");
    let mut marks = BTreeSet::new();
    for q in &mt.marks {
        if q.len() <= p.len() {
            if q[..] == p[..q.len()] {
                // the marked copy contains the redex
                if mode == MarkMode::Etrace {
                    marks.insert(q.clone());
                }
            } else {
                marks.insert(q.clone());
            }
            continue;
        }
        if q[..p.len()] != p[..] {
            marks.insert(q.clone());
            continue;
        }
        let rel = &q[p.len()..];
        match site.kind {
            RedexKind::Beta => match rel {
                [Step::Fun] => {}
                [Step::Fun, Step::Body, rest @ ..] => {
                    let mut np = p.clone();
                    np.extend_from_slice(rest);
                    marks.insert(np);
                }
                [Step::Arg, rest @ ..] => {
                    let (f, _) = redex.as_app().expect("β redex");
                    let body = f.as_abs().expect("β redex");
                    let mut occ = Vec::new();
                    bound_occurrences(body, 0, &mut Vec::new(), &mut occ);
                    for o in occ {
                        let mut np = p.clone();
                        np.extend(o);
                        np.extend_from_slice(rest);
                        marks.insert(np);
                    }
                }
                _ => {}
            },
            RedexKind::Eta => {
                if let [Step::Body, Step::Fun, rest @ ..] = rel {
                    let mut np = p.clone();
                    np.extend_from_slice(rest);
                    marks.insert(np);
                }
            }
        }
    }
    Ok(MarkedTerm {
        term,
        target: mt.target.clone(),
        marks,
    })
}
