use super::{substitute, Kind, Path, Step, Term, TermError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedexKind {
    Beta,
    Eta,
}

/// Address of a redex. `weak` is set when no λ encloses the redex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RedexSite {
    pub path: Path,
    pub kind: RedexKind,
    pub weak: bool,
}

impl RedexSite {
    pub fn beta(path: Path) -> Self {
        let weak = !path.contains(&Step::Body);
        RedexSite {
            path,
            kind: RedexKind::Beta,
            weak,
        }
    }

    pub fn eta(path: Path) -> Self {
        let weak = !path.contains(&Step::Body);
        RedexSite {
            path,
            kind: RedexKind::Eta,
            weak,
        }
    }

    /// Is the redex on the head spine (only `fun` and `body` steps)?
    pub fn is_head_position(&self) -> bool {
        self.path.iter().all(|s| *s != Step::Arg)
    }
}

pub(crate) fn is_beta_redex(t: &Term) -> bool {
    matches!(t.kind(), Kind::App(f, _) if f.is_abs())
}

/// `λ. t 0` with index 0 not free in `t`; returns `t`.
pub(crate) fn eta_body(t: &Term) -> Option<&Term> {
    let Kind::Abs(b) = t.kind() else { return None };
    let Kind::App(f, a) = b.kind() else {
        return None;
    };
    match a.kind() {
        Kind::Var(0) if !f.occurs(0) => Some(f),
        _ => None,
    }
}

/// All β and η redexes, outside-in and left-to-right (pre-order).
pub fn list_redexes(t: &Term) -> Vec<RedexSite> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect(t, &mut path, &mut out);
    out
}

fn collect(t: &Term, path: &mut Path, out: &mut Vec<RedexSite>) {
    crate::term::grow(|| {
        if is_beta_redex(t) {
            out.push(RedexSite::beta(path.clone()));
        }
        if eta_body(t).is_some() {
            out.push(RedexSite::eta(path.clone()));
        }
        match t.kind() {
            Kind::Var(_) => {}
            Kind::Abs(b) => {
                path.push(Step::Body);
                collect(b, path, out);
                path.pop();
            }
            Kind::App(f, a) => {
                path.push(Step::Fun);
                collect(f, path, out);
                path.pop();
                path.push(Step::Arg);
                collect(a, path, out);
                path.pop();
            }
        }
    })
}

/// Contract the redex at the given root-level term (no path).
pub(crate) fn contract_here(t: &Term, kind: RedexKind) -> Option<Term> {
    match kind {
        RedexKind::Beta => match t.kind() {
            Kind::App(f, a) => f.as_abs().map(|body| substitute(body, a)),
            _ => None,
        },
        RedexKind::Eta => eta_body(t).map(|f| f.unshift(0)),
    }
}

/// One-step reduct of `t` at `site`.
pub fn contract(t: &Term, site: &RedexSite) -> Result<Term, TermError> {
    let invalid = || TermError::InvalidSite(site.path.clone());
    let sub = t.subterm(&site.path).ok_or_else(invalid)?;
    let reduct = contract_here(sub, site.kind).ok_or_else(invalid)?;
    t.replace_at(&site.path, reduct).ok_or_else(invalid)
}
