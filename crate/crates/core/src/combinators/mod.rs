//! The fixed-point combinators Θ, W, L, the Plotkin families `F_n`/`G_n`,
//! the terms H₁, H₂, F, G built from them, and replay of their head cycles.

mod cofinal;
mod tree;

pub use cofinal::{gk_bar, x_reduct, Bar, XVerdict};
pub use tree::{
    ab_step_target, build_ab, compile_tree, verify_ab_basis, verify_ab_step, verify_ab_unfold,
    Expr, TreeError, TreeSpec,
};

use crate::encodings::{church, kleene_j, omega, tuple, Lib};
use crate::reduction::{head_step, Strategy, Trace};
use crate::term::{parse_term, Term};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("cycle broken after {step_index} head steps: expected {expected}, got {got}")]
    CycleBroken {
        step_index: usize,
        expected: Term,
        got: Term,
    },
    #[error("term is not in a cofinal sequence of F or G")]
    NotInSequence,
    #[error("{which} does not unfold to the expected shape; last term {got}")]
    UnfoldMismatch { which: String, got: Term },
    #[error("term does not have the expected construction shape: {0}")]
    Shape(String),
}

fn cached(cell: &'static OnceLock<Term>, src: &str) -> Term {
    cell.get_or_init(|| parse_term(src).expect("valid combinator"))
        .clone()
}

/// Turing's fixed point `(λab.b(aab))(λab.b(aab))`.
pub fn theta() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "(\\a b.b (a a b)) (\\a b.b (a a b))")
}

/// `λxy.xyy`
pub fn comb_w() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "\\x y.x y y")
}

/// `λxyz.λabc.xy(z(yc))bac`
pub fn comb_l() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, "\\x y z.\\a b c.x y (z (y c)) b a c")
}

/// The half `λab.b(aab)` of Θ, which is also the head of every Θ-spine.
fn theta_half() -> Term {
    theta().as_app().expect("Θ is an application").0.clone()
}

/// Indexed Plotkin families over stand-ins `p`, `q` and an enumerator `j`.
///
/// `f_fam n̲` plays `F_n` and `g_fam n̲` plays `G_n`. Both come out of one
/// fixed point `Θ R` selecting with `K` / `K*`, where
///
/// ```text
/// R = λr.⟨ λn g m m₁ m₂. r K n (r K (S n) (r K* (S n)) m ⟨n,m,P n⟩ ⟨n,J n,Q n⟩) Ω Ω Ω,
///          λn. r K (S n) (r K* (S n)) (J n) ⟨n,J n,Q n⟩ ⟨n,J n,Q n⟩ ⟩
/// ```
///
/// so `F_n G_n M M₁ M₂` and `G_n` head-reduce to the displayed reducts up
/// to `S n̲` standing where the right side has `n+1` as a numeral.
#[derive(Debug, Clone)]
pub struct Plotkin {
    pub p: Term,
    pub q: Term,
    pub j: Term,
    pub f_fam: Term,
    pub g_fam: Term,
}

pub fn plotkin_families(p: &Term, q: &Term, j: &Term) -> Plotkin {
    let mut lib = Lib::base().clone();
    lib.insert("P", p.clone());
    lib.insert("Q", q.clone());
    lib.insert("J", j.clone());
    let r = lib.parse(
        "\\r.\\s.s \
         (\\n g m m1 m2.r K n (r K (CSUCC n) (r Kstar (CSUCC n)) m (\\z.z n m (P n)) (\\z.z n (J n) (Q n))) Omega Omega Omega) \
         (\\n.r K (CSUCC n) (r Kstar (CSUCC n)) (J n) (\\z.z n (J n) (Q n)) (\\z.z n (J n) (Q n)))",
    );
    let fix = Term::app(theta(), r);
    Plotkin {
        p: p.clone(),
        q: q.clone(),
        j: j.clone(),
        f_fam: Term::app(fix.clone(), lib.get("K")),
        g_fam: Term::app(fix, lib.get("Kstar")),
    }
}

impl Plotkin {
    pub fn f(&self, n: u64) -> Term {
        Term::app(self.f_fam.clone(), church(n))
    }

    pub fn g(&self, n: u64) -> Term {
        Term::app(self.g_fam.clone(), church(n))
    }

    fn triple_j(&self, n: u64) -> Term {
        let nn = church(n);
        tuple(&[
            nn.clone(),
            Term::app(self.j.clone(), nn.clone()),
            Term::app(self.q.clone(), nn),
        ])
    }

    /// Both sides of `F_n G_n M M₁ M₂ →β F_n (F_{n+1} G_{n+1} M ⟨n̲,M,P n̲⟩ ⟨n̲,J n̲,Q n̲⟩) Ω Ω Ω`.
    pub fn red_f_sides(&self, n: u64, m: &Term, m1: &Term, m2: &Term) -> (Term, Term) {
        let nn = church(n);
        let lhs = Term::apps(self.f(n), [self.g(n), m.clone(), m1.clone(), m2.clone()]);
        let triple_m = tuple(&[nn.clone(), m.clone(), Term::app(self.p.clone(), nn)]);
        let inner = Term::apps(
            self.f(n + 1),
            [self.g(n + 1), m.clone(), triple_m, self.triple_j(n)],
        );
        let rhs = Term::apps(self.f(n), [inner, omega(), omega(), omega()]);
        (lhs, rhs)
    }

    /// Both sides of `G_n →β F_{n+1} G_{n+1} (J n̲) ⟨n̲,J n̲,Q n̲⟩ ⟨n̲,J n̲,Q n̲⟩`.
    pub fn red_g_sides(&self, n: u64) -> (Term, Term) {
        let jn = Term::app(self.j.clone(), church(n));
        let rhs = Term::apps(
            self.f(n + 1),
            [self.g(n + 1), jn, self.triple_j(n), self.triple_j(n)],
        );
        (self.g(n), rhs)
    }

    /// `λx. F₀ G₀ x x x`
    pub fn h1(&self) -> Term {
        let x = Term::var(0);
        Term::abs(Term::apps(self.f(0), [self.g(0), x.clone(), x.clone(), x]))
    }

    /// `F₀ G₀ Ω Ω Ω`
    pub fn h2(&self) -> Term {
        Term::apps(self.f(0), [self.g(0), omega(), omega(), omega()])
    }

    /// `F₀ G₀ Ω Ω Ω` and `F₀(F₁(…(F_k G_k Ω Ω Ω)…)Ω Ω Ω)Ω Ω Ω`.
    pub fn plo2000_sides(&self, k: u64) -> (Term, Term) {
        let ooo = || [omega(), omega(), omega()];
        let mut rhs = Term::apps(self.f(k), std::iter::once(self.g(k)).chain(ooo()));
        for i in (0..k).rev() {
            rhs = Term::apps(self.f(i), std::iter::once(rhs).chain(ooo()));
        }
        (self.h2(), rhs)
    }
}

pub fn build_h1_h2(fam: &Plotkin) -> (Term, Term) {
    (fam.h1(), fam.h2())
}

/// `F ≡ Θ L H₁` and `G ≡ Θ W H₂`.
pub fn build_fg(h1: &Term, h2: &Term) -> (Term, Term) {
    (
        Term::apps(theta(), [comb_l(), h1.clone()]),
        Term::apps(theta(), [comb_w(), h2.clone()]),
    )
}

/// Everything the construction needs, built once from `P`, `Q` and `J`.
#[derive(Debug, Clone)]
pub struct Construction {
    pub plotkin: Plotkin,
    pub h1: Term,
    pub h2: Term,
    pub f: Term,
    pub g: Term,
}

impl Construction {
    pub fn new(p: &Term, q: &Term, j: &Term) -> Self {
        let plotkin = plotkin_families(p, q, j);
        let (h1, h2) = build_h1_h2(&plotkin);
        let (f, g) = build_fg(&h1, &h2);
        Construction {
            plotkin,
            h1,
            h2,
            f,
            g,
        }
    }

    /// `P = Q = I` and the Kleene enumerator.
    pub fn canonical() -> &'static Construction {
        static C: OnceLock<Construction> = OnceLock::new();
        C.get_or_init(|| {
            let id = crate::encodings::i();
            Construction::new(&id, &id, &kleene_j())
        })
    }

    /// The arguments of `t` when it is `G X₁ … X_k`.
    pub fn g_args(&self, t: &Term) -> Option<Vec<Term>> {
        spine_after(t, &[comb_w(), self.h2.clone()])
    }

    /// The arguments of `t` when it is `F X₁ … X_k` with `k ≥ 4`.
    pub fn f_args(&self, t: &Term) -> Option<Vec<Term>> {
        spine_after(t, &[comb_l(), self.h1.clone()]).filter(|a| a.len() >= 4)
    }
}

/// Arguments following `Θ fixed…` in the spine of `t`.
fn spine_after(t: &Term, fixed: &[Term]) -> Option<Vec<Term>> {
    let (head, args) = t.spine();
    let half = theta_half();
    if head != half || args.len() < 1 + fixed.len() || args[0] != half {
        return None;
    }
    if args[1..=fixed.len()] != *fixed {
        return None;
    }
    Some(args[1 + fixed.len()..].to_vec())
}

/// Head-reduce `start` until it is literally `expected`, within `max` steps.
fn head_cycle(start: &Term, expected: &Term, max: usize) -> Result<Trace, CombError> {
    let mut tr = Trace::new(start.clone(), Strategy::Head);
    while tr.last() != expected {
        let stepped = if tr.len() < max {
            head_step(tr.last())
        } else {
            None
        };
        match stepped {
            Some((site, next)) => tr.push(site, next),
            None => {
                return Err(CombError::CycleBroken {
                    step_index: tr.len(),
                    expected: expected.clone(),
                    got: tr.last().clone(),
                })
            }
        }
    }
    Ok(tr)
}

fn split_last(t: &Term) -> Result<(Term, Term), CombError> {
    t.as_app()
        .map(|(f, a)| (f.clone(), a.clone()))
        .ok_or_else(|| CombError::Shape("expected an application".into()))
}

const CYCLE_BOUND: usize = 32;

/// Head reduction from `G ≡ Θ W H₂` back to `G H₂`.
///
/// The trace has 4 steps: Θ unfolds in two and `W (Θ W) H₂` needs one β
/// step for each of W's two λs.
pub fn verify_g_cycle(g: &Term) -> Result<Trace, CombError> {
    verify_g_cycles(g, 1)
}

/// `iterations` rounds of the G cycle: `G X… →* G H₂ X…`.
pub fn verify_g_cycles(g: &Term, iterations: usize) -> Result<Trace, CombError> {
    let (_, h2) = split_last(g)?;
    let mut tr = Trace::new(g.clone(), Strategy::Head);
    let mut extra: Vec<Term> = Vec::new();
    for _ in 0..iterations {
        extra.insert(0, h2.clone());
        let expected = Term::apps(g.clone(), extra.iter().cloned());
        let round =
            head_cycle(tr.last(), &expected, CYCLE_BOUND).map_err(|e| offset(e, tr.len()))?;
        tr.extend(round);
    }
    Ok(tr)
}

/// `iterations` rounds of `F Z A B C →* F (Z(H₁C)) B A C`, each of exactly
/// 8 head steps.
pub fn verify_f_cycle(
    f: &Term,
    z: &Term,
    a: &Term,
    b: &Term,
    c: &Term,
    iterations: usize,
) -> Result<Trace, CombError> {
    let (_, h1) = split_last(f)?;
    let start = Term::apps(f.clone(), [z.clone(), a.clone(), b.clone(), c.clone()]);
    let mut tr = Trace::new(start, Strategy::Head);
    let (mut z, mut a, mut b) = (z.clone(), a.clone(), b.clone());
    for _ in 0..iterations {
        z = Term::app(z, Term::app(h1.clone(), c.clone()));
        std::mem::swap(&mut a, &mut b);
        let expected = Term::apps(f.clone(), [z.clone(), a.clone(), b.clone(), c.clone()]);
        let round =
            head_cycle(tr.last(), &expected, CYCLE_BOUND).map_err(|e| offset(e, tr.len()))?;
        if round.len() != 8 {
            return Err(CombError::CycleBroken {
                step_index: tr.len() + round.len(),
                expected,
                got: round.last().clone(),
            });
        }
        tr.extend(round);
    }
    Ok(tr)
}

fn offset(e: CombError, by: usize) -> CombError {
    match e {
        CombError::CycleBroken {
            step_index,
            expected,
            got,
        } => CombError::CycleBroken {
            step_index: step_index + by,
            expected,
            got,
        },
        other => other,
    }
}
