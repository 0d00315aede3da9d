//! Certificate generators and the single-field mutation catalog.

use super::{CertificateMap, Component, EndpieceCertificate, PremiseRef};
use crate::combinators::{compile_tree, verify_g_cycle, Construction, TreeSpec};
use crate::encodings::{church, i as id, k};
use crate::ordinals::{Ordinal, ProofSkeleton};
use crate::reduction::{head_step, is_normal, normalize, Strategy, Trace};
use crate::term::{parse_term, RedexKind, RedexSite, Step, Term};
use serde::{Deserialize, Serialize};

/// Contexts `λx.λy.(λ….Y) x L₂ … L_m y` used by the chain generators. The
/// Z part is the single variable `y`, so the right-hand stages are easy to
/// reach; `m` counts `x` as the first `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainShape {
    /// `λx.λy.(λz.z) x y`
    Identity,
    /// `λx.λy.(λu.λv.v u) x K y`
    Swap,
}

impl ChainShape {
    fn head(self) -> Term {
        let src = match self {
            ChainShape::Identity => "\\z.z",
            ChainShape::Swap => "\\u.\\v.v u",
        };
        parse_term(src).expect("shape head parses")
    }

    /// Closed `L₂ … L_m`.
    fn extra(self) -> Vec<Term> {
        match self {
            ChainShape::Identity => Vec::new(),
            ChainShape::Swap => vec![k()],
        }
    }

    pub fn context(self) -> Term {
        // under λx.λy: x = 1, y = 0
        let args = std::iter::once(Term::var(1))
            .chain(self.extra())
            .chain(std::iter::once(Term::var(0)));
        Term::lams(2, Term::apps(self.head(), args))
    }

    /// `H = (λ….Y) P L₂ … L_m`
    fn confluence(self, p: &Term) -> Term {
        Term::apps(self.head(), std::iter::once(p.clone()).chain(self.extra()))
    }

    /// Path of the premise inside `(λ….Y) P L₂ … L_m`.
    fn premise_path(self) -> Vec<Step> {
        let mut path = vec![Step::Fun; self.extra().len()];
        path.push(Step::Arg);
        path
    }
}

fn free(mut tr: Trace) -> Trace {
    tr.strategy = Strategy::Free;
    tr
}

fn step(tr: &mut Trace, site: RedexSite) {
    let next = crate::term::contract(tr.last(), &site).expect("generated step is valid");
    tr.push(site, next);
}

/// Normalize the subterm at `path` in place, β steps before η steps.
fn normalize_at(tr: &mut Trace, path: &[Step], fuel: u64) -> Result<(), String> {
    let sub = tr.last().subterm(path).expect("path addresses a subterm").clone();
    let n = normalize(&sub, fuel);
    if !n.is_normal() {
        return Err(format!("no normal form within fuel {fuel}"));
    }
    let lifted = n.trace().lift(tr.last(), path, Strategy::Free);
    tr.extend(lifted);
    Ok(())
}

/// `G M → λy.(h M L⃗) y`, normalize `M` in place, then η at the root.
fn left_trace(shape: ChainShape, m: &Term, fuel: u64) -> Result<Trace, String> {
    let mut tr = Trace::new(Term::app(shape.context(), m.clone()), Strategy::Free);
    step(&mut tr, RedexSite::beta(Vec::new()));
    let mut path = vec![Step::Body, Step::Fun];
    path.extend(shape.premise_path());
    normalize_at(&mut tr, &path, fuel)?;
    step(&mut tr, RedexSite::eta(Vec::new()));
    Ok(tr)
}

/// `G N → λy.(h N L⃗) y →η h N L⃗`, then normalize `N` in place.
fn right_trace(shape: ChainShape, n: &Term, fuel: u64) -> Result<Trace, String> {
    let mut tr = Trace::new(Term::app(shape.context(), n.clone()), Strategy::Free);
    step(&mut tr, RedexSite::beta(Vec::new()));
    step(&mut tr, RedexSite::eta(Vec::new()));
    normalize_at(&mut tr, &shape.premise_path(), fuel)?;
    Ok(tr)
}

/// A canonical endpiece through the points `P₀ … P_t` (closed, normal,
/// consecutive points distinct): component `i` has premises
/// `Pᵢ₋₁ =ω Pᵢ` and confluence `(λ….Y) Pᵢ₋₁ L⃗`. With `redexed` each
/// premise is wrapped as `(λz.z) P`, so the traces also carry non-head β
/// steps.
pub fn basis_chain(
    points: &[Term],
    shape: ChainShape,
    redexed: bool,
    fuel: u64,
) -> Result<EndpieceCertificate, String> {
    let Some(last) = points.last() else {
        return Err("need at least one point".into());
    };
    for (i, p) in points.iter().enumerate() {
        if !p.is_closed() || !is_normal(p) {
            return Err(format!("point {i} is not a closed normal form"));
        }
        if i > 0 && points[i - 1] == *p {
            return Err(format!("points {} and {i} coincide", i - 1));
        }
    }
    let wrap = |p: &Term| if redexed { Term::app(id(), p.clone()) } else { p.clone() };
    let g = shape.context();
    let mut components = Vec::new();
    for (i, w) in points.windows(2).enumerate() {
        let (m, n) = (wrap(&w[0]), wrap(&w[1]));
        components.push(Component {
            confluence: shape.confluence(&w[0]),
            context: g.clone(),
            left_trace: left_trace(shape, &m, fuel)?,
            right_trace: right_trace(shape, &n, fuel)?,
            premise_left: m,
            premise_right: n,
            premise: PremiseRef { omega_conclusion: true, child: i },
        });
    }
    let first = wrap(&points[0]);
    Ok(EndpieceCertificate {
        initial: Term::app(g.clone(), first.clone()),
        initial_trace: left_trace(shape, &first, fuel)?,
        components,
        confluence: shape.confluence(last),
        final_term: Term::app(g, last.clone()),
        final_trace: left_trace(shape, last, fuel)?,
    })
}

/// [`basis_chain`] through the normal forms of `T ⌜s⌝` for the given
/// sequence codes, `T` the term of `spec`; repeated neighbours are merged.
pub fn tree_chain(
    spec: &TreeSpec,
    codes: &[u64],
    shape: ChainShape,
    fuel: u64,
) -> Result<EndpieceCertificate, String> {
    let t = compile_tree(spec).map_err(|e| e.to_string())?;
    let mut points: Vec<Term> = Vec::new();
    for &c in codes {
        let n = normalize(&Term::app(t.clone(), church(c)), fuel);
        if !n.is_normal() {
            return Err(format!("T applied to code {c} has no normal form within fuel {fuel}"));
        }
        if points.last() != Some(n.term()) {
            points.push(n.term().clone());
        }
    }
    basis_chain(&points, shape, true, fuel)
}

/// `t = 0`: both sides normalize to the same term, which is the confluence.
pub fn conversion_certificate(
    f: &Term,
    f2: &Term,
    fuel: u64,
) -> Result<EndpieceCertificate, String> {
    let (a, b) = (normalize(f, fuel), normalize(f2, fuel));
    if !a.is_normal() || !b.is_normal() {
        return Err(format!("no normal form within fuel {fuel}"));
    }
    if a.term() != b.term() {
        return Err("the two sides have different normal forms".into());
    }
    Ok(EndpieceCertificate {
        initial: f.clone(),
        initial_trace: free(a.trace().clone()),
        components: Vec::new(),
        confluence: a.term().clone(),
        final_term: f2.clone(),
        final_trace: free(b.trace().clone()),
    })
}

/// `G = G H₂` by the head cycle, as a `t = 0` certificate. It is in
/// standard form; its confluence `G H₂` is not in 𝒳.
pub fn g_cycle_certificate(c: &Construction) -> EndpieceCertificate {
    let tr = free(verify_g_cycle(&c.g).expect("the G cycle closes"));
    let h = tr.last().clone();
    EndpieceCertificate {
        initial: c.g.clone(),
        initial_trace: tr,
        components: Vec::new(),
        confluence: h.clone(),
        final_term: h.clone(),
        final_trace: Trace::new(h, Strategy::Free),
    }
}

/// A depth-2 skeleton: an endpiece whose one premise is an ω-node with two
/// listed conversion leaves, with certificates for every checked node.
pub fn sample_proof(fuel: u64) -> (ProofSkeleton, CertificateMap) {
    let leaves = vec![ProofSkeleton::leaf(); 2];
    let skel = ProofSkeleton::endpiece(vec![ProofSkeleton::omega(leaves, Ordinal::omega())]);
    let mut certs = CertificateMap::new();
    let root = basis_chain(&[church(0), church(2)], ChainShape::Identity, true, fuel)
        .expect("numerals are normal");
    certs.insert(vec![], root);
    for j in 0..2usize {
        let n = church(j as u64 + 3);
        let cert = conversion_certificate(&Term::app(id(), n.clone()), &n, fuel)
            .expect("numerals are normal");
        certs.insert(vec![0, j], cert);
    }
    (skel, certs)
}

/// Which stored trace a mutation touches. Component indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceRef {
    Initial,
    Left(usize),
    Right(usize),
    Final,
}

/// Single-field corruptions of a certificate. Component indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    SwapPremises(usize),
    TruncateTrace(TraceRef),
    /// Index into `H₁ … H_{t+1}`.
    PerturbConfluence(usize),
    /// Move the first η step of a left trace in front of its β steps.
    EtaBeforeBeta(usize),
    /// Continue a left trace (and its partner) by one head β step.
    HeadStepInLeft(usize),
    /// Flip the kind of the first step.
    CorruptStep(TraceRef),
    OpenPremise(usize),
    UnflagPremise(usize),
    DropComponent(usize),
    ReplaceFinal,
}

impl Mutation {
    pub fn kind(&self) -> &'static str {
        match self {
            Mutation::SwapPremises(_) => "swap-premises",
            Mutation::TruncateTrace(_) => "truncate-trace",
            Mutation::PerturbConfluence(_) => "perturb-confluence",
            Mutation::EtaBeforeBeta(_) => "eta-before-beta",
            Mutation::HeadStepInLeft(_) => "head-step-in-left",
            Mutation::CorruptStep(_) => "corrupt-step",
            Mutation::OpenPremise(_) => "open-premise",
            Mutation::UnflagPremise(_) => "unflag-premise",
            Mutation::DropComponent(_) => "drop-component",
            Mutation::ReplaceFinal => "replace-final",
        }
    }

    /// Every mutation that applies to `c`.
    pub fn catalog(c: &EndpieceCertificate) -> Vec<(Mutation, EndpieceCertificate)> {
        let t = c.components.len();
        let mut traces = vec![TraceRef::Initial, TraceRef::Final];
        for i in 0..t {
            traces.push(TraceRef::Left(i));
            traces.push(TraceRef::Right(i));
        }
        let mut all = vec![Mutation::ReplaceFinal];
        for &r in &traces {
            all.push(Mutation::TruncateTrace(r));
            all.push(Mutation::CorruptStep(r));
        }
        for i in 0..=t {
            all.push(Mutation::PerturbConfluence(i));
        }
        for i in 0..t {
            all.extend([
                Mutation::SwapPremises(i),
                Mutation::EtaBeforeBeta(i),
                Mutation::HeadStepInLeft(i),
                Mutation::OpenPremise(i),
                Mutation::UnflagPremise(i),
                Mutation::DropComponent(i),
            ]);
        }
        all.into_iter().filter_map(|m| m.apply(c).map(|mc| (m, mc))).collect()
    }

    /// `None` when the mutation does not apply or would change nothing.
    pub fn apply(&self, c: &EndpieceCertificate) -> Option<EndpieceCertificate> {
        let mut out = c.clone();
        match *self {
            Mutation::SwapPremises(i) => {
                let k = out.components.get_mut(i)?;
                std::mem::swap(&mut k.premise_left, &mut k.premise_right);
            }
            Mutation::TruncateTrace(r) => {
                trace_mut(&mut out, r)?.steps.pop()?;
            }
            Mutation::PerturbConfluence(i) => {
                let h = if i < out.components.len() {
                    &mut out.components[i].confluence
                } else if i == out.components.len() {
                    &mut out.confluence
                } else {
                    return None;
                };
                *h = Term::app(h.clone(), id());
            }
            Mutation::EtaBeforeBeta(i) => {
                let tr = &mut out.components.get_mut(i)?.left_trace;
                *tr = eta_first(tr)?;
            }
            Mutation::HeadStepInLeft(i) => {
                let (site, next) = head_step(&out.components.get(i)?.confluence)?;
                let k = &mut out.components[i];
                k.left_trace.push(site.clone(), next.clone());
                k.confluence = next.clone();
                let incoming = if i == 0 {
                    &mut out.initial_trace
                } else {
                    &mut out.components[i - 1].right_trace
                };
                incoming.push(site, next);
            }
            Mutation::CorruptStep(r) => {
                let st = trace_mut(&mut out, r)?.steps.first_mut()?;
                st.site.kind = match st.site.kind {
                    RedexKind::Beta => RedexKind::Eta,
                    RedexKind::Eta => RedexKind::Beta,
                };
            }
            Mutation::OpenPremise(i) => {
                let k = out.components.get_mut(i)?;
                k.premise_left = Term::app(k.premise_left.clone(), Term::var(0));
            }
            Mutation::UnflagPremise(i) => {
                out.components.get_mut(i)?.premise.omega_conclusion = false;
            }
            Mutation::DropComponent(i) => {
                if i >= out.components.len() {
                    return None;
                }
                out.components.remove(i);
            }
            Mutation::ReplaceFinal => {
                out.final_term = Term::app(out.final_term.clone(), id());
            }
        }
        (out != *c).then_some(out)
    }
}

fn trace_mut(c: &mut EndpieceCertificate, r: TraceRef) -> Option<&mut Trace> {
    Some(match r {
        TraceRef::Initial => &mut c.initial_trace,
        TraceRef::Final => &mut c.final_trace,
        TraceRef::Left(i) => &mut c.components.get_mut(i)?.left_trace,
        TraceRef::Right(i) => &mut c.components.get_mut(i)?.right_trace,
    })
}

/// Replay `s₀ η β…` instead of `s₀ β… η` when the η-redex `λy.X y` at `p`
/// contains all of the moved β steps inside `X`.
fn eta_first(tr: &Trace) -> Option<Trace> {
    let j = tr.steps.iter().position(|s| s.site.kind == RedexKind::Eta)?;
    if j < 2 {
        return None;
    }
    let p = tr.steps[j].site.path.clone();
    let mut inner = p.clone();
    inner.extend([Step::Body, Step::Fun]);
    let mut sites = vec![tr.steps[0].site.clone(), RedexSite::eta(p.clone())];
    for st in &tr.steps[1..j] {
        let rest = st.site.path.strip_prefix(inner.as_slice())?;
        let mut path = p.clone();
        path.extend_from_slice(rest);
        sites.push(RedexSite::beta(path));
    }
    sites.extend(tr.steps[j + 1..].iter().map(|s| s.site.clone()));
    let out = Trace::from_sites(tr.start.clone(), tr.strategy, &sites).ok()?;
    (out.last() == tr.last()).then_some(out)
}
