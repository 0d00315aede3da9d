//! Certificates for endpieces in standard form, and checkers for the
//! standard form, for 𝒳-canonical endpieces and for finite canonical-proof
//! skeletons.
//!
//! An endpiece certificate records
//! `F →* H₁ *← G₁M₁ =ω G₁N₁ →* H₂ *← … G_tN_t →* H_{t+1} *← F′` with every
//! reduction stored as a full trace. The ω-equalities `Mᵢ =ω Nᵢ` are never
//! decided; each is a reference to a premise proof in the skeleton.

mod file;
mod generate;

pub use file::{load_bundle, load_certificate, BundleFile, CertificateFile, SCHEMA_VERSION};
pub use generate::{
    basis_chain, conversion_certificate, g_cycle_certificate, sample_proof, tree_chain,
    ChainShape, Mutation, TraceRef,
};

use crate::combinators::{x_reduct, Construction, XVerdict};
use crate::reduction::{classify_trace, normalize_fast, Trace};
use crate::term::{contract, RedexKind, RedexSite, Term};
use crate::ordinals::ProofSkeleton;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProofcheckError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {found} (expected {expected})")]
    Schema { found: u32, expected: u32 },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
}

/// Where the premise `Mᵢ =ω Nᵢ` of a component is proved: the `child`-th
/// component of the enclosing endpiece node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremiseRef {
    pub omega_conclusion: bool,
    pub child: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// `Hᵢ`
    pub confluence: Term,
    /// `Gᵢ`
    pub context: Term,
    pub premise_left: Term,
    pub premise_right: Term,
    /// `GᵢMᵢ →* Hᵢ`
    pub left_trace: Trace,
    /// `GᵢNᵢ →* Hᵢ₊₁`
    pub right_trace: Trace,
    pub premise: PremiseRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpieceCertificate {
    pub initial: Term,
    /// `F →* H₁`
    pub initial_trace: Trace,
    pub components: Vec<Component>,
    /// `H_{t+1}`
    pub confluence: Term,
    pub final_term: Term,
    /// `F′ →* H_{t+1}`
    pub final_trace: Trace,
}

impl EndpieceCertificate {
    /// `H₁ … H_{t+1}`
    pub fn confluences(&self) -> Vec<&Term> {
        self.components
            .iter()
            .map(|c| &c.confluence)
            .chain(std::iter::once(&self.confluence))
            .collect()
    }

    fn confluence_at(&self, i: usize) -> &Term {
        self.components.get(i).map_or(&self.confluence, |c| &c.confluence)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Location {
    Initial,
    /// 1-based
    Component(usize),
    Final,
    Node,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Initial => write!(f, "initial"),
            Location::Component(i) => write!(f, "component {i}"),
            Location::Final => write!(f, "final"),
            Location::Node => write!(f, "node"),
        }
    }
}

/// Which condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    Closed,
    Replay,
    Chaining,
    Premise,
    /// Confluence terms in 𝒳.
    InX,
    /// Shape of the contexts `Gᵢ`.
    ContextShape,
    LeftArrows,
    RightArrows,
    /// Skeleton and certificate do not fit together.
    Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Child indices from the skeleton root; empty for a lone certificate.
    pub path: Vec<usize>,
    pub location: Location,
    pub clause: Clause,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Ok { notes: Vec<String> },
    Fail(Failure),
    Unknown { obligations: Vec<String> },
}

impl Verdict {
    pub fn ok() -> Self {
        Verdict::Ok { notes: Vec::new() }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Verdict::Fail(f) => Some(f),
            _ => None,
        }
    }

    /// First failure wins; otherwise unknowns pool their obligations.
    pub fn merge(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut notes = Vec::new();
        let mut obligations = Vec::new();
        for v in verdicts {
            match v {
                Verdict::Fail(f) => return Verdict::Fail(f),
                Verdict::Ok { notes: n } => notes.extend(n),
                Verdict::Unknown { obligations: o } => obligations.extend(o),
            }
        }
        if obligations.is_empty() {
            Verdict::Ok { notes }
        } else {
            Verdict::Unknown { obligations }
        }
    }

    fn at_path(self, path: &[usize]) -> Verdict {
        match self {
            Verdict::Fail(mut f) => {
                let mut p = path.to_vec();
                p.extend(f.path);
                f.path = p;
                Verdict::Fail(f)
            }
            v => v,
        }
    }
}

fn fail(location: Location, clause: Clause, detail: impl Into<String>) -> Verdict {
    Verdict::Fail(Failure { path: Vec::new(), location, clause, detail: detail.into() })
}

fn check_trace(
    tr: &Trace,
    start: &Term,
    end: &Term,
    location: Location,
    name: &str,
) -> Result<(), Verdict> {
    if tr.start != *start {
        return Err(fail(location, Clause::Chaining, format!("{name} does not start at its source term")));
    }
    if let Err(e) = tr.replay() {
        return Err(fail(location, Clause::Replay, format!("{name}: {e}")));
    }
    if tr.last() != end {
        return Err(fail(location, Clause::Chaining, format!("{name} does not end at the next confluence term")));
    }
    Ok(())
}

/// Trace replay, chaining, closedness and premise flags.
pub fn check_standard_form(c: &EndpieceCertificate) -> Verdict {
    match standard_form(c) {
        Ok(()) => Verdict::ok(),
        Err(v) => v,
    }
}

fn standard_form(c: &EndpieceCertificate) -> Result<(), Verdict> {
    let closed = |t: &Term, loc: Location, field: &str| {
        if t.is_closed() {
            Ok(())
        } else {
            Err(fail(loc, Clause::Closed, format!("{field} is not closed")))
        }
    };
    closed(&c.initial, Location::Initial, "initial term")?;
    closed(&c.final_term, Location::Final, "final term")?;
    closed(&c.confluence, Location::Final, "last confluence term")?;
    for (i, comp) in c.components.iter().enumerate() {
        let loc = Location::Component(i + 1);
        closed(&comp.confluence, loc, "confluence term")?;
        closed(&comp.context, loc, "context")?;
        closed(&comp.premise_left, loc, "left premise")?;
        closed(&comp.premise_right, loc, "right premise")?;
    }

    check_trace(&c.initial_trace, &c.initial, c.confluence_at(0), Location::Initial, "initial trace")?;
    for (i, comp) in c.components.iter().enumerate() {
        let loc = Location::Component(i + 1);
        let gm = Term::app(comp.context.clone(), comp.premise_left.clone());
        check_trace(&comp.left_trace, &gm, &comp.confluence, loc, "left trace")?;
        let gn = Term::app(comp.context.clone(), comp.premise_right.clone());
        check_trace(&comp.right_trace, &gn, c.confluence_at(i + 1), loc, "right trace")?;
    }
    check_trace(&c.final_trace, &c.final_term, &c.confluence, Location::Final, "final trace")?;

    let mut seen = vec![false; c.components.len()];
    for (i, comp) in c.components.iter().enumerate() {
        let loc = Location::Component(i + 1);
        if !comp.premise.omega_conclusion {
            return Err(fail(loc, Clause::Premise, "premise is not flagged as an ω-rule conclusion"));
        }
        match seen.get_mut(comp.premise.child) {
            Some(s) if !*s => *s = true,
            _ => {
                return Err(fail(loc, Clause::Premise, format!(
                    "premise reference {} is out of range or repeated",
                    comp.premise.child
                )))
            }
        }
    }
    Ok(())
}

/// `Gᵢ ≡ λx.λy₁…yₙ.((λy.Y)L₁…L_m)Z₁…Z_n` read as `(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextShape {
    pub n: usize,
    pub m: usize,
}

impl ContextShape {
    pub fn is_degenerate(&self) -> bool {
        self.n == 0 || self.m == 0
    }
}

/// Every way of reading `g` in the displayed shape, largest `n` first.
pub fn context_shapes(g: &Term) -> Vec<ContextShape> {
    let Some(mut body) = g.as_abs().cloned() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut n = 0;
    loop {
        let (head, args) = body.spine();
        if head.is_abs() && args.len() >= n {
            out.push(ContextShape { n, m: args.len() - n });
        }
        let Some(inner) = body.as_abs().cloned() else { break };
        body = inner;
        n += 1;
    }
    out.reverse();
    out
}

fn left_arrows(comp: &Component) -> Result<(), String> {
    let tr = &comp.left_trace;
    let Some(first) = tr.steps.first() else {
        return Err("left trace is empty; it must start with the β step on GᵢMᵢ".into());
    };
    if first.site.kind != RedexKind::Beta || !first.site.path.is_empty() {
        return Err("left trace must start by contracting GᵢMᵢ itself".into());
    }
    let p = classify_trace(tr);
    if p.head_prefix_len != 1 || p.stray_head_betas != 0 {
        return Err("left trace contains a head β step after the first".into());
    }
    if !p.eta_suffix_only {
        return Err("left trace has a β step after an η step".into());
    }
    Ok(())
}

enum Stage {
    Ok,
    Fail(String),
    Unknown(String),
}

/// The four displayed stages of the right trace for one reading of `Gᵢ`.
fn right_stages(comp: &Component, shape: ContextShape, fuel: u64) -> Stage {
    let gn = Term::app(comp.context.clone(), comp.premise_right.clone());
    let s1 = contract(&gn, &RedexSite::beta(Vec::new())).expect("context is an abstraction");
    let mut body = s1.clone();
    for _ in 0..shape.n {
        body = body.as_abs().expect("shape was read from the context").clone();
    }
    let (head, args) = body.spine();
    let pieces: Vec<Term> = std::iter::once(head).chain(args[..shape.m].iter().cloned()).collect();
    if let Some(k) = pieces.iter().position(|p| !p.is_closed()) {
        return Stage::Fail(format!("piece {k} mentions y₁…yₙ, so the η stage cannot remove them"));
    }
    let ys = (0..shape.n as u32).rev().map(Term::var);
    let s3 = Term::apps(pieces[0].clone(), pieces[1..].iter().cloned());
    let s2 = Term::lams(shape.n, Term::apps(s3.clone(), ys));

    let terms = comp.right_trace.terms();
    let Some(i1) = terms.iter().position(|t| *t == s1) else {
        return Stage::Fail("right trace never reaches [Nᵢ/x](λy⃗.((λy.Y)L⃗)Z⃗)".into());
    };
    let mut stage3 = None;
    for i2 in (i1..terms.len()).filter(|&i| terms[i] == s2) {
        if let Some(i3) = (i2..terms.len()).find(|&i| terms[i] == s3) {
            let etas = comp.right_trace.steps[i2..i3].iter().all(|s| s.site.kind == RedexKind::Eta);
            if etas {
                stage3 = Some(i3);
                break;
            }
        }
    }
    let Some(i3) = stage3 else {
        return Stage::Fail("right trace does not pass λy⃗.(…)y⃗ and then its η-contractum".into());
    };
    let mut js = Vec::with_capacity(pieces.len());
    for (k, p) in pieces.iter().enumerate() {
        match normalize_fast(p, fuel) {
            Ok((nf, _)) => js.push(nf),
            Err(_) => {
                return Stage::Unknown(format!(
                    "normal form of piece J{k} not determined within fuel {fuel}"
                ))
            }
        }
    }
    let s4 = Term::apps(js[0].clone(), js[1..].iter().cloned());
    if terms[i3..].contains(&s4) {
        Stage::Ok
    } else {
        Stage::Fail("right trace does not pass J₀J₁…J_m".into())
    }
}

fn in_x(c: &Construction, h: &Term, fuel: u64, loc: Location) -> Verdict {
    match x_reduct(c, h, fuel) {
        XVerdict::InX => Verdict::ok(),
        XVerdict::Reduct(r) => fail(loc, Clause::InX, format!("confluence term is not in 𝒳; its 𝒳-reduct is {r}")),
        XVerdict::Unknown => Verdict::Unknown {
            obligations: vec![format!("{loc}: 𝒳-membership of the confluence term undetermined within fuel {fuel}")],
        },
    }
}

fn component_clauses(comp: &Component, loc: Location, fuel: u64) -> Verdict {
    let shapes = context_shapes(&comp.context);
    if shapes.is_empty() {
        return fail(loc, Clause::ContextShape, "context is not of the form λx.λy⃗.((λy.Y)L⃗)Z⃗");
    }
    if let Err(msg) = left_arrows(comp) {
        return fail(loc, Clause::LeftArrows, msg);
    }
    let mut unknown = None;
    let mut reasons = Vec::new();
    let mut accepted = Vec::new();
    for s in &shapes {
        match right_stages(comp, *s, fuel) {
            Stage::Ok => accepted.push(*s),
            Stage::Unknown(msg) => unknown = unknown.or(Some(msg)),
            Stage::Fail(msg) => reasons.push(format!("n={} m={}: {msg}", s.n, s.m)),
        }
    }
    if let Some(s) = accepted.iter().find(|s| !s.is_degenerate()).or(accepted.first()) {
        let mut notes = Vec::new();
        if s.is_degenerate() {
            notes.push(format!("{loc}: context read with degenerate shape n={} m={}", s.n, s.m));
        }
        return Verdict::Ok { notes };
    }
    match unknown {
        Some(msg) => Verdict::Unknown { obligations: vec![format!("{loc}: {msg}")] },
        None => fail(loc, Clause::RightArrows, reasons.join("; ")),
    }
}

/// Standard form, then clauses (1), (2), (a) and (b) relative to the 𝒳 of
/// `c`. `fuel` bounds each 𝒳-membership test and each normal-form search.
pub fn check_canonical_endpiece(
    cert: &EndpieceCertificate,
    c: &Construction,
    fuel: u64,
) -> Verdict {
    if let Err(v) = standard_form(cert) {
        return v;
    }
    let t = cert.components.len();
    let mut checks: Vec<Verdict> = cert
        .confluences()
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let loc = if i < t { Location::Component(i + 1) } else { Location::Final };
            in_x(c, h, fuel, loc)
        })
        .collect();
    checks.extend(
        cert.components
            .par_iter()
            .enumerate()
            .map(|(i, comp)| component_clauses(comp, Location::Component(i + 1), fuel))
            .collect::<Vec<_>>(),
    );
    Verdict::merge(checks)
}

/// Certificates keyed by skeleton path.
pub type CertificateMap = BTreeMap<Vec<usize>, EndpieceCertificate>;

/// Leaves need their confluence term in 𝒳, endpiece nodes a canonical
/// endpiece whose premises are ω-nodes, ω-nodes their listed children.
/// Premises an ω-node does not list are reported, never assumed.
pub fn check_canonical_proof(
    s: &ProofSkeleton,
    certs: &CertificateMap,
    c: &Construction,
    fuel: u64,
) -> Verdict {
    if let Err(e) = s.ord() {
        return fail(Location::Node, Clause::Structure, e.to_string());
    }
    check_node(s, &mut Vec::new(), certs, c, fuel)
}

fn check_node(
    s: &ProofSkeleton,
    path: &mut Vec<usize>,
    certs: &CertificateMap,
    c: &Construction,
    fuel: u64,
) -> Verdict {
    let here = path.clone();
    let cert = || {
        certs
            .get(&here)
            .ok_or_else(|| fail(Location::Node, Clause::Structure, "no certificate for this node").at_path(&here))
    };
    let children_of = |kids: &[ProofSkeleton], path: &[usize]| -> Vec<Verdict> {
        kids.par_iter()
            .enumerate()
            .map(|(i, k)| {
                let mut p = path.to_vec();
                p.push(i);
                check_node(k, &mut p, certs, c, fuel)
            })
            .collect()
    };
    let leaf = match s {
        ProofSkeleton::ConversionLeaf => true,
        ProofSkeleton::EndpieceNode { components } => components.is_empty(),
        ProofSkeleton::OmegaNode { .. } => false,
    };
    if leaf {
        let cert = match cert() {
            Ok(c) => c,
            Err(v) => return v,
        };
        if !cert.components.is_empty() {
            return fail(Location::Node, Clause::Structure, "a conversion leaf has no ω-premises").at_path(&here);
        }
        if let Err(v) = standard_form(cert) {
            return v.at_path(&here);
        }
        return in_x(c, &cert.confluence, fuel, Location::Final).at_path(&here);
    }
    match s {
        ProofSkeleton::ConversionLeaf => unreachable!("handled above"),
        ProofSkeleton::EndpieceNode { components } => {
            let cert = match cert() {
                Ok(c) => c,
                Err(v) => return v,
            };
            if cert.components.len() != components.len() {
                return fail(Location::Node, Clause::Structure, format!(
                    "certificate has {} components, node has {}",
                    cert.components.len(),
                    components.len()
                ))
                .at_path(&here);
            }
            let own = check_canonical_endpiece(cert, c, fuel).at_path(&here);
            if own.is_fail() {
                return own;
            }
            for (i, comp) in cert.components.iter().enumerate() {
                if let Some(k) = components.get(comp.premise.child) {
                    if !matches!(k, ProofSkeleton::OmegaNode { .. }) {
                        return fail(
                            Location::Component(i + 1),
                            Clause::Premise,
                            "premise proof is not an ω-rule instance",
                        )
                        .at_path(&here);
                    }
                }
            }
            let mut all = vec![own];
            all.extend(children_of(components, &here));
            Verdict::merge(all)
        }
        ProofSkeleton::OmegaNode { children, .. } => {
            if children.is_empty() {
                return Verdict::Unknown {
                    obligations: vec![format!("ω-node {here:?} lists no premises; nothing is verified")],
                };
            }
            let mut all = children_of(children, &here);
            all.push(Verdict::Ok {
                notes: vec![format!("ω-node {here:?}: premises beyond the {} listed are unverified", children.len())],
            });
            Verdict::merge(all)
        }
    }
}

#[cfg(test)]
mod tests;
