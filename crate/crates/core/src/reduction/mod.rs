//! Reduction strategies over [`Term`]: normal order, head, Gross-Knuth
//! development, normalization with fuel, joinability search and residuals.

mod gk;
mod join;
mod residual;

pub use gk::{gk_step, gk_trace};
pub use join::{joinable, JoinOutcome};
pub use residual::{residuals, MarkMode, MarkedTerm};

use crate::term::{
    contract, render_term, Kind, Path, RedexKind, RedexSite, RenderStyle, Step, Term, TermError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    NormalOrder,
    Head,
    Gk,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub site: RedexSite,
    pub result: Term,
}

/// A recorded reduction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: Term,
    pub steps: Vec<TraceStep>,
    pub strategy: Strategy,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("step {step}: {source}")]
    InvalidStep { step: usize, source: TermError },
    #[error("step {step}: recorded result differs from replay")]
    ResultMismatch { step: usize },
    #[error("step {step}: not a head redex in a head-tagged trace")]
    NotHead { step: usize },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// One JSON-lines record of a serialized trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct StepRecord {
    step: usize,
    kind: RedexKind,
    path: Path,
    term: String,
}

impl Trace {
    pub fn new(start: Term, strategy: Strategy) -> Self {
        Trace {
            start,
            steps: Vec::new(),
            strategy,
        }
    }

    /// Build a trace by replaying `sites` from `start`.
    pub fn from_sites(
        start: Term,
        strategy: Strategy,
        sites: &[RedexSite],
    ) -> Result<Self, TraceError> {
        let mut tr = Trace::new(start, strategy);
        for (i, site) in sites.iter().enumerate() {
            let next = contract(tr.last(), site).map_err(|source| TraceError::InvalidStep {
                step: i + 1,
                source,
            })?;
            tr.steps.push(TraceStep {
                site: site.clone(),
                result: next,
            });
        }
        Ok(tr)
    }

    pub fn last(&self) -> &Term {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, site: RedexSite, result: Term) {
        self.steps.push(TraceStep { site, result });
    }

    pub fn sites(&self) -> Vec<RedexSite> {
        self.steps.iter().map(|s| s.site.clone()).collect()
    }

    /// The sequence of terms, `start` included.
    pub fn terms(&self) -> Vec<Term> {
        std::iter::once(self.start.clone())
            .chain(self.steps.iter().map(|s| s.result.clone()))
            .collect()
    }

    /// Concatenate `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: Trace) {
        debug_assert_eq!(self.last(), &other.start);
        self.steps.extend(other.steps);
    }

    /// Check every step against `contract`, and head-ness for head traces.
    pub fn replay(&self) -> Result<(), TraceError> {
        let mut cur = self.start.clone();
        for (i, st) in self.steps.iter().enumerate() {
            if self.strategy == Strategy::Head
                && head_redex_path(&cur).as_ref() != Some(&st.site.path)
            {
                return Err(TraceError::NotHead { step: i + 1 });
            }
            let next = contract(&cur, &st.site).map_err(|source| TraceError::InvalidStep {
                step: i + 1,
                source,
            })?;
            if next != st.result {
                return Err(TraceError::ResultMismatch { step: i + 1 });
            }
            cur = next;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (i, st) in self.steps.iter().enumerate() {
            let rec = StepRecord {
                step: i + 1,
                kind: st.site.kind,
                path: st.site.path.clone(),
                term: render_term(&st.result, RenderStyle::Named),
            };
            out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    /// Parse JSON lines and replay them from `start`; recorded terms must agree.
    pub fn from_jsonl(start: Term, strategy: Strategy, text: &str) -> Result<Self, TraceError> {
        let mut tr = Trace::new(start, strategy);
        for (line_no, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let fmt = |msg: String| TraceError::Format {
                line: line_no + 1,
                msg,
            };
            let rec: StepRecord = serde_json::from_str(line).map_err(|e| fmt(e.to_string()))?;
            let step = tr.len() + 1;
            if rec.step != step {
                return Err(fmt(format!("expected step {step}, found {}", rec.step)));
            }
            let site = match rec.kind {
                RedexKind::Beta => RedexSite::beta(rec.path),
                RedexKind::Eta => RedexSite::eta(rec.path),
            };
            let next = contract(tr.last(), &site)
                .map_err(|source| TraceError::InvalidStep { step, source })?;
            let recorded = crate::term::parse_term(&rec.term).map_err(|e| fmt(e.to_string()))?;
            if recorded != next {
                return Err(TraceError::ResultMismatch { step });
            }
            tr.push(site, next);
        }
        Ok(tr)
    }

    /// Lift every step under `prefix` inside `context`, where the subterm at
    /// `prefix` is `self.start`.
    pub fn lift(&self, context: &Term, prefix: &[Step], strategy: Strategy) -> Trace {
        let mut out = Trace::new(context.clone(), strategy);
        for st in &self.steps {
            let mut path = prefix.to_vec();
            path.extend_from_slice(&st.site.path);
            let site = match st.site.kind {
                RedexKind::Beta => RedexSite::beta(path),
                RedexKind::Eta => RedexSite::eta(path),
            };
            let next = out
                .last()
                .replace_at(prefix, st.result.clone())
                .expect("prefix addresses a subterm");
            out.push(site, next);
        }
        out
    }
}

/// Shape of a trace: maximal head-β prefix, then β steps, then η steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceProfile {
    pub head_prefix_len: usize,
    pub non_head_beta_count: usize,
    pub eta_suffix_only: bool,
    /// Head β steps that occur after the prefix ended.
    pub stray_head_betas: usize,
}

pub fn classify_trace(tr: &Trace) -> TraceProfile {
    let mut head_prefix_len = 0;
    let mut non_head_beta_count = 0;
    let mut stray_head_betas = 0;
    let mut seen_eta = false;
    let mut eta_suffix_only = true;
    let mut in_prefix = true;
    let mut cur = &tr.start;
    for st in &tr.steps {
        match st.site.kind {
            RedexKind::Beta => {
                let is_head = head_redex_path(cur).as_ref() == Some(&st.site.path);
                if in_prefix && is_head {
                    head_prefix_len += 1;
                } else {
                    in_prefix = false;
                    non_head_beta_count += 1;
                    if is_head {
                        stray_head_betas += 1;
                    }
                    if seen_eta {
                        eta_suffix_only = false;
                    }
                }
            }
            RedexKind::Eta => {
                in_prefix = false;
                seen_eta = true;
            }
        }
        cur = &st.result;
    }
    TraceProfile {
        head_prefix_len,
        non_head_beta_count,
        eta_suffix_only,
        stray_head_betas,
    }
}

/// Path of the head redex of `λy⃗.(λx.U) V W⃗`, if any.
pub fn head_redex_path(t: &Term) -> Option<Path> {
    let mut path = Vec::new();
    let mut cur = t;
    while let Kind::Abs(b) = cur.kind() {
        path.push(Step::Body);
        cur = b;
    }
    let mut nargs = 0;
    let mut head = cur;
    while let Kind::App(f, _) = head.kind() {
        nargs += 1;
        head = f;
    }
    if nargs == 0 || !head.is_abs() {
        return None;
    }
    path.extend(std::iter::repeat(Step::Fun).take(nargs - 1));
    Some(path)
}

/// Contract the head redex.
pub fn head_step(t: &Term) -> Option<(RedexSite, Term)> {
    let path = head_redex_path(t)?;
    let site = RedexSite::beta(path);
    let next = contract(t, &site).expect("head redex is valid");
    Some((site, next))
}

/// Contract the head redex only when no λ encloses it.
pub fn weak_head_step(t: &Term) -> Option<Term> {
    if t.is_abs() {
        return None;
    }
    head_step(t).map(|(_, n)| n)
}

fn first_beta(t: &Term, path: &mut Path) -> bool {
    crate::term::grow(|| {
        if crate::term::is_beta_redex(t) {
            return true;
        }
        match t.kind() {
            Kind::Var(_) => false,
            Kind::Abs(b) => {
                path.push(Step::Body);
                if first_beta(b, path) {
                    return true;
                }
                path.pop();
                false
            }
            Kind::App(f, a) => {
                path.push(Step::Fun);
                if first_beta(f, path) {
                    return true;
                }
                path.pop();
                path.push(Step::Arg);
                if first_beta(a, path) {
                    return true;
                }
                path.pop();
                false
            }
        }
    })
}

fn first_eta(t: &Term, path: &mut Path) -> bool {
    crate::term::grow(|| {
        if crate::term::eta_body(t).is_some() {
            return true;
        }
        match t.kind() {
            Kind::Var(_) => false,
            Kind::Abs(b) => {
                path.push(Step::Body);
                if first_eta(b, path) {
                    return true;
                }
                path.pop();
                false
            }
            Kind::App(f, a) => {
                path.push(Step::Fun);
                if first_eta(f, path) {
                    return true;
                }
                path.pop();
                path.push(Step::Arg);
                if first_eta(a, path) {
                    return true;
                }
                path.pop();
                false
            }
        }
    })
}

/// Leftmost-outermost β step, else leftmost-outermost η step.
pub fn step_normal_order(t: &Term) -> Option<(RedexSite, Term)> {
    let mut path = Vec::new();
    let site = if first_beta(t, &mut path) {
        RedexSite::beta(path)
    } else {
        path.clear();
        if !first_eta(t, &mut path) {
            return None;
        }
        RedexSite::eta(path)
    };
    let next = contract(t, &site).expect("located redex is valid");
    Some((site, next))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    NormalForm(Term, Trace),
    FuelExhausted(Term, Trace),
}

impl Normalized {
    pub fn term(&self) -> &Term {
        match self {
            Normalized::NormalForm(t, _) | Normalized::FuelExhausted(t, _) => t,
        }
    }

    pub fn trace(&self) -> &Trace {
        match self {
            Normalized::NormalForm(_, tr) | Normalized::FuelExhausted(_, tr) => tr,
        }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self, Normalized::NormalForm(..))
    }
}

/// Iterate [`step_normal_order`] at most `fuel` times, recording the trace.
pub fn normalize(t: &Term, fuel: u64) -> Normalized {
    let mut tr = Trace::new(t.clone(), Strategy::NormalOrder);
    for _ in 0..fuel {
        match step_normal_order(tr.last()) {
            Some((site, next)) => tr.push(site, next),
            None => return Normalized::NormalForm(tr.last().clone(), tr),
        }
    }
    if step_normal_order(tr.last()).is_none() {
        return Normalized::NormalForm(tr.last().clone(), tr);
    }
    Normalized::FuelExhausted(tr.last().clone(), tr)
}

/// Head-reduce for at most `fuel` steps.
pub fn head_reduce(t: &Term, fuel: u64) -> Trace {
    let mut tr = Trace::new(t.clone(), Strategy::Head);
    for _ in 0..fuel {
        match head_step(tr.last()) {
            Some((site, next)) => tr.push(site, next),
            None => break,
        }
    }
    tr
}

/// Untraced normal-order normalization. Returns the βη-normal form and the
/// number of contractions used, which equals the length of the trace
/// [`normalize`] would record. `Err` carries the fuel spent.
pub fn normalize_fast(t: &Term, fuel: u64) -> Result<(Term, u64), u64> {
    let mut left = fuel;
    let nf = beta_nf(t, &mut left).ok_or(fuel)?;
    let (nf, etas) = eta_nf(&nf);
    let used = fuel - left + etas;
    if used > fuel {
        return Err(fuel);
    }
    Ok((nf, used))
}

/// β-normal form in leftmost-outermost order, spending one unit per contraction.
pub(crate) fn beta_nf(t: &Term, fuel: &mut u64) -> Option<Term> {
    crate::term::grow(|| {
        let mut binders = 0;
        let mut cur = t.clone();
        loop {
            while let Kind::Abs(b) = cur.kind() {
                binders += 1;
                cur = b.clone();
            }
            let (head, args) = cur.spine();
            match head.kind() {
                Kind::Abs(body) if !args.is_empty() => {
                    if *fuel == 0 {
                        return None;
                    }
                    *fuel -= 1;
                    let reduct = crate::term::substitute(body, &args[0]);
                    cur = Term::apps(reduct, args.into_iter().skip(1));
                }
                _ => {
                    let mut nargs = Vec::with_capacity(args.len());
                    for a in &args {
                        nargs.push(beta_nf(a, fuel)?);
                    }
                    let head = match head.kind() {
                        Kind::Abs(_) => beta_nf(&head, fuel)?,
                        _ => head,
                    };
                    return Some(Term::lams(binders, Term::apps(head, nargs)));
                }
            }
        }
    })
}

/// η-normal form and the number of η contractions performed.
pub(crate) fn eta_nf(t: &Term) -> (Term, u64) {
    crate::term::grow(|| match t.kind() {
        Kind::Var(_) => (t.clone(), 0),
        Kind::App(f, a) => {
            let (f2, n1) = eta_nf(f);
            let (a2, n2) = eta_nf(a);
            if n1 + n2 == 0 {
                (t.clone(), 0)
            } else {
                (Term::app(f2, a2), n1 + n2)
            }
        }
        Kind::Abs(b) => {
            let (b2, n) = eta_nf(b);
            let candidate = if n == 0 { t.clone() } else { Term::abs(b2) };
            match crate::term::eta_body(&candidate) {
                Some(f) => (f.unshift(0), n + 1),
                None => (candidate, n),
            }
        }
    })
}

pub fn is_normal(t: &Term) -> bool {
    crate::term::list_redexes(t).is_empty()
}
