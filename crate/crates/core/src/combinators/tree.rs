//! Trees of sequence codes, their representing terms `T`, and the terms
//! `A`, `B` built over `T`, `F`, `G`.

use super::{theta, CombError};
use crate::encodings::{
    church, i, k, kstar, scripted_enumerator, seq_decode, seq_encode, star_singleton_open, Lib,
};
use crate::reduction::{head_step, normalize, Normalized, Strategy, Trace};
use crate::term::{substitute, Step, Term};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("code {code} is in the tree but its prefix {prefix} is not")]
    NotPrefixClosed { code: u64, prefix: String },
    #[error("`acc` used outside of an `iter` step")]
    UnboundAcc,
}

/// Primitive-recursive expressions over the input code `n`. Every
/// expression denotes a natural; subtraction is truncated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expr {
    Input,
    /// The accumulator of the innermost enclosing `iter`.
    Acc,
    Lit(u64),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// 1 when the argument is 0, else 0.
    IsZero(Box<Expr>),
    /// `step` applied `times` times to `init`, with `acc` bound to the
    /// running value.
    Iter {
        times: Box<Expr>,
        init: Box<Expr>,
        step: Box<Expr>,
    },
}

impl Expr {
    pub fn eval(&self, n: &BigUint) -> Result<BigUint, TreeError> {
        self.eval_in(n, None)
    }

    fn eval_in(&self, n: &BigUint, acc: Option<&BigUint>) -> Result<BigUint, TreeError> {
        Ok(match self {
            Expr::Input => n.clone(),
            Expr::Acc => acc.ok_or(TreeError::UnboundAcc)?.clone(),
            Expr::Lit(v) => BigUint::from(*v),
            Expr::Add(a, b) => a.eval_in(n, acc)? + b.eval_in(n, acc)?,
            Expr::Mul(a, b) => a.eval_in(n, acc)? * b.eval_in(n, acc)?,
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval_in(n, acc)?, b.eval_in(n, acc)?);
                if a > b {
                    a - b
                } else {
                    BigUint::zero()
                }
            }
            Expr::IsZero(a) => {
                if a.eval_in(n, acc)?.is_zero() {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
            Expr::Iter { times, init, step } => {
                let times = times.eval_in(n, acc)?;
                let mut v = init.eval_in(n, acc)?;
                let mut i = BigUint::zero();
                while i < times {
                    v = step.eval_in(n, Some(&v))?;
                    i += 1u32;
                }
                v
            }
        })
    }

    fn check_scope(&self, in_iter: bool) -> Result<(), TreeError> {
        match self {
            Expr::Acc if !in_iter => Err(TreeError::UnboundAcc),
            Expr::Input | Expr::Acc | Expr::Lit(_) => Ok(()),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Sub(a, b) => {
                a.check_scope(in_iter)?;
                b.check_scope(in_iter)
            }
            Expr::IsZero(a) => a.check_scope(in_iter),
            Expr::Iter { times, init, step } => {
                times.check_scope(in_iter)?;
                init.check_scope(in_iter)?;
                step.check_scope(true)
            }
        }
    }

    /// Church-numeral term for the expression; `Input` is index `depth`.
    fn compile(&self, depth: u32, lib: &Lib) -> Term {
        match self {
            Expr::Input => Term::var(depth),
            Expr::Acc => Term::var(0),
            Expr::Lit(v) => church(*v),
            Expr::Add(a, b) => Term::apps(
                lib.get("CADD"),
                [a.compile(depth, lib), b.compile(depth, lib)],
            ),
            Expr::Mul(a, b) => Term::apps(
                lib.get("CMUL"),
                [a.compile(depth, lib), b.compile(depth, lib)],
            ),
            Expr::Sub(a, b) => Term::apps(
                lib.get("CSUB"),
                [a.compile(depth, lib), b.compile(depth, lib)],
            ),
            Expr::IsZero(a) => Term::apps(
                a.compile(depth, lib),
                [Term::app(k(), church(0)), church(1)],
            ),
            Expr::Iter { times, init, step } => Term::apps(
                times.compile(depth, lib),
                [
                    Term::abs(step.compile(depth + 1, lib)),
                    init.compile(depth, lib),
                ],
            ),
        }
    }
}

/// A tree of sequence codes, given by its members or by a predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreeSpec {
    Explicit {
        codes: BTreeSet<u64>,
    },
    /// Membership is `pred(n) ≠ 0`.
    Program {
        pred: Expr,
    },
}

impl TreeSpec {
    pub fn validate(&self) -> Result<(), TreeError> {
        match self {
            TreeSpec::Explicit { codes } => {
                for &c in codes {
                    let s = seq_decode(&BigUint::from(c));
                    for len in 0..s.len() {
                        let prefix = seq_encode(&s[..len]);
                        if !prefix.to_u64().is_some_and(|p| codes.contains(&p)) {
                            return Err(TreeError::NotPrefixClosed {
                                code: c,
                                prefix: prefix.to_string(),
                            });
                        }
                    }
                }
                Ok(())
            }
            TreeSpec::Program { pred } => pred.check_scope(false),
        }
    }

    /// Native membership test.
    pub fn contains(&self, n: u64) -> Result<bool, TreeError> {
        match self {
            TreeSpec::Explicit { codes } => Ok(codes.contains(&n)),
            TreeSpec::Program { pred } => Ok(!pred.eval(&BigUint::from(n))?.is_zero()),
        }
    }
}

/// `T` with `T n̲ →βη* I` for members `n` and `K*` otherwise.
///
/// An explicit tree becomes a case analysis on the Scott form of `n`; a
/// program becomes `λn. e (λx.I) K*` for the Church term `e` of its
/// predicate.
pub fn compile_tree(spec: &TreeSpec) -> Result<Term, TreeError> {
    spec.validate()?;
    Ok(match spec {
        TreeSpec::Explicit { codes } => {
            let table: BTreeMap<u64, Term> = codes.iter().map(|&c| (c, i())).collect();
            scripted_enumerator(&table, &kstar())
        }
        TreeSpec::Program { pred } => {
            let e = pred.compile(0, Lib::base());
            Term::abs(Term::apps(e, [Term::app(k(), i()), kstar()]))
        }
    })
}

/// `λy.T y (λz. F G (x first (y*⟨z⟩)) (x second (y*⟨z⟩)) z)` under the
/// binders `λx.λa`.
fn branch(t: &Term, f: &Term, g: &Term, first: Term, second: Term) -> Term {
    let star = star_singleton_open();
    let x = Term::var(3);
    let inner = Term::apps(
        f.clone(),
        [
            g.clone(),
            Term::apps(x.clone(), [first, star.clone()]),
            Term::apps(x, [second, star]),
            Term::var(0),
        ],
    );
    Term::abs(Term::apps(t.clone(), [Term::var(0), Term::abs(inner)]))
}

/// `A ≡ Θ Φ K` and `B ≡ Θ Φ K*` with
/// `Φ = λx.λa.a (λy.T y (λz.FG(xK(y*⟨z⟩))(xK*(y*⟨z⟩))z)) (λy.T y (λz.FG(xK*(y*⟨z⟩))(xK(y*⟨z⟩))z))`.
pub fn build_ab(t: &Term, f: &Term, g: &Term) -> (Term, Term) {
    let phi = Term::lams(
        2,
        Term::apps(
            Term::var(0),
            [branch(t, f, g, k(), kstar()), branch(t, f, g, kstar(), k())],
        ),
    );
    let fix = Term::app(theta(), phi);
    (Term::app(fix.clone(), k()), Term::app(fix, kstar()))
}

/// `(T, F, G)` read back from `A`.
fn parts(a: &Term) -> Result<(Term, Term, Term), CombError> {
    let bad = || CombError::Shape("A is not Θ Φ K".into());
    let (fix, _) = a.as_app().ok_or_else(bad)?;
    let (_, phi) = fix.as_app().ok_or_else(bad)?;
    let (_, body) = phi.strip_lams();
    let (_, p1) = body
        .as_app()
        .and_then(|(l, _)| l.as_app())
        .ok_or_else(bad)?;
    let p1b = p1.as_abs().ok_or_else(bad)?;
    let (ty, lam_z) = p1b.as_app().ok_or_else(bad)?;
    let (t, _) = ty.as_app().ok_or_else(bad)?;
    let mut cur = lam_z.as_abs().ok_or_else(bad)?.clone();
    for _ in 0..3 {
        cur = cur.as_app().ok_or_else(bad)?.0.clone();
    }
    let (f, g) = cur.as_app().ok_or_else(bad)?;
    Ok((t.clone(), f.clone(), g.clone()))
}

/// `λy.T y (λz. F G (first (y*⟨z⟩)) (second (y*⟨z⟩)) z)`
fn unfolded(t: &Term, f: &Term, g: &Term, first: &Term, second: &Term) -> Term {
    let star = star_singleton_open();
    let inner = Term::apps(
        f.clone(),
        [
            g.clone(),
            Term::app(first.clone(), star.clone()),
            Term::app(second.clone(), star),
            Term::var(0),
        ],
    );
    Term::abs(Term::apps(t.clone(), [Term::var(0), Term::abs(inner)]))
}

fn head_until(start: &Term, target: &Term, fuel: u64, which: &str) -> Result<Trace, CombError> {
    let mut tr = Trace::new(start.clone(), Strategy::Head);
    while tr.last() != target {
        let next = if (tr.len() as u64) < fuel {
            head_step(tr.last())
        } else {
            None
        };
        match next {
            Some((site, t)) => tr.push(site, t),
            None => {
                return Err(CombError::UnfoldMismatch {
                    which: which.into(),
                    got: tr.last().clone(),
                })
            }
        }
    }
    Ok(tr)
}

/// Head traces from `A` and `B` to their unfoldings
/// `λy.T y (λz. F G (A(y*⟨z⟩)) (B(y*⟨z⟩)) z)` and the same with `A`, `B`
/// exchanged.
pub fn verify_ab_unfold(a: &Term, b: &Term, fuel: u64) -> Result<(Trace, Trace), CombError> {
    let (t, f, g) = parts(a)?;
    let ta = head_until(a, &unfolded(&t, &f, &g, a, b), fuel, "A")?;
    let tb = head_until(b, &unfolded(&t, &f, &g, b, a), fuel, "B")?;
    Ok((ta, tb))
}

/// `F G (A(n̲*⟨m̲⟩)) (B(n̲*⟨m̲⟩)) m̲`, where `A n̲ m̲` lands when `n` is in the tree.
pub fn ab_step_target(a: &Term, b: &Term, n: u64, m: u64) -> Result<Term, CombError> {
    let (_, f, g) = parts(a)?;
    let star = substitute(&substitute(&star_singleton_open(), &church(m)), &church(n));
    Ok(Term::apps(
        f,
        [
            g,
            Term::app(a.clone(), star.clone()),
            Term::app(b.clone(), star),
            church(m),
        ],
    ))
}

/// Head trace from `A n̲ m̲` to [`ab_step_target`].
pub fn verify_ab_step(a: &Term, b: &Term, n: u64, m: u64, fuel: u64) -> Result<Trace, CombError> {
    let target = ab_step_target(a, b, n, m)?;
    head_until(
        &Term::apps(a.clone(), [church(n), church(m)]),
        &target,
        fuel,
        "A n m",
    )
}

/// Routes from `A n̲ m̲` and `B n̲ m̲` to `F G X Y m̲`: head reduction to
/// `F G (A s) (B s) m̲` (resp. `F G (B s) (A s) m̲`) with `s = n̲*⟨m̲⟩`, then
/// normal order inside the two middle arguments. For `s` outside the tree
/// both arguments end as `I`.
pub fn verify_ab_basis(
    a: &Term,
    b: &Term,
    n: u64,
    m: u64,
    fuel: u64,
) -> Result<(Trace, Trace), CombError> {
    let route = |x: &Term, y: &Term, which: &str| -> Result<Trace, CombError> {
        let mut tr = verify_ab_step(x, y, n, m, fuel)?;
        // F G X Y m: X at Fun.Fun.Arg, Y at Fun.Arg
        for prefix in [
            &[Step::Fun, Step::Fun, Step::Arg][..],
            &[Step::Fun, Step::Arg],
        ] {
            let sub = tr
                .last()
                .subterm(prefix)
                .expect("argument position")
                .clone();
            let inner = match normalize(&sub, fuel) {
                Normalized::NormalForm(_, t) => t,
                Normalized::FuelExhausted(t, _) => {
                    return Err(CombError::UnfoldMismatch {
                        which: which.into(),
                        got: t,
                    })
                }
            };
            let lifted = inner.lift(tr.last(), prefix, Strategy::Free);
            tr.strategy = Strategy::Free;
            tr.extend(lifted);
        }
        Ok(tr)
    };
    Ok((route(a, b, "A n m")?, route(b, a, "B n m")?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::Construction;
    use crate::encodings::{omega, seq_singleton};
    use crate::reduction::{joinable, normalize_fast};
    use proptest::prelude::*;

    fn eval(t: &Term) -> Term {
        normalize_fast(t, 5_000_000).expect("normalizes").0
    }

    fn explicit(codes: &[u64]) -> TreeSpec {
        TreeSpec::Explicit {
            codes: codes.iter().copied().collect(),
        }
    }

    fn even() -> TreeSpec {
        let parity = Expr::Iter {
            times: Box::new(Expr::Input),
            init: Box::new(Expr::Lit(0)),
            step: Box::new(Expr::Sub(Box::new(Expr::Lit(1)), Box::new(Expr::Acc))),
        };
        TreeSpec::Program {
            pred: Expr::IsZero(Box::new(parity)),
        }
    }

    fn small() -> Construction {
        Construction::new(&i(), &i(), &scripted_enumerator(&BTreeMap::new(), &i()))
    }

    #[test]
    fn explicit_examples() {
        let t = compile_tree(&explicit(&[0])).unwrap();
        assert_eq!(eval(&Term::app(t.clone(), church(0))), i());
        let five = seq_singleton(&BigUint::from(5u32)).to_u64().unwrap();
        assert_eq!(eval(&Term::app(t, church(five))), kstar());
        let empty = compile_tree(&explicit(&[])).unwrap();
        assert_eq!(eval(&Term::app(empty, church(0))), kstar());
    }

    #[test]
    fn program_examples() {
        let t = compile_tree(&TreeSpec::Program { pred: Expr::Lit(1) }).unwrap();
        for n in 0..=10 {
            assert_eq!(eval(&Term::app(t.clone(), church(n))), i());
        }
        let t = compile_tree(&even()).unwrap();
        for n in 0..=12 {
            let want = if n % 2 == 0 { i() } else { kstar() };
            assert_eq!(eval(&Term::app(t.clone(), church(n))), want, "n={n}");
        }
    }

    #[test]
    fn arithmetic_matches_native() {
        let e = Expr::Sub(
            Box::new(Expr::Mul(
                Box::new(Expr::Input),
                Box::new(Expr::Add(Box::new(Expr::Input), Box::new(Expr::Lit(1)))),
            )),
            Box::new(Expr::Lit(7)),
        );
        let t = Term::abs(e.compile(0, Lib::base()));
        for n in 0..6u64 {
            let want = e.eval(&BigUint::from(n)).unwrap().to_u64().unwrap();
            assert_eq!(
                eval(&Term::app(t.clone(), church(n))),
                eval(&church(want)),
                "n={n}"
            );
        }
    }

    #[test]
    fn validation() {
        assert!(explicit(&[0, 1, 2]).validate().is_ok());
        // ⟨0,0⟩ has code 2; without ⟨0⟩ = 1 the set is not prefix closed
        assert!(matches!(
            explicit(&[0, 2]).validate(),
            Err(TreeError::NotPrefixClosed { code: 2, .. })
        ));
        assert_eq!(
            TreeSpec::Program { pred: Expr::Acc }.validate(),
            Err(TreeError::UnboundAcc)
        );
    }

    #[test]
    fn spec_json_round_trip() {
        for s in [explicit(&[0, 1]), even()] {
            let text = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<TreeSpec>(&text).unwrap(), s);
        }
    }

    #[test]
    fn ab_shapes() {
        let c = small();
        let t = compile_tree(&explicit(&[0])).unwrap();
        let (a, b) = build_ab(&t, &c.f, &c.g);
        assert!(a.is_closed() && b.is_closed());
        assert_eq!(a.size(), b.size());
        assert_eq!(a.as_app().unwrap().0, b.as_app().unwrap().0);
        assert_eq!(
            (a.as_app().unwrap().1, b.as_app().unwrap().1),
            (&k(), &kstar())
        );
    }

    #[test]
    fn ab_unfold() {
        let c = small();
        for codes in [&[0u64][..], &[0, 1]] {
            let t = compile_tree(&explicit(codes)).unwrap();
            let (a, b) = build_ab(&t, &c.f, &c.g);
            let (ta, tb) = verify_ab_unfold(&a, &b, 50).unwrap();
            ta.replay().unwrap();
            tb.replay().unwrap();
            let bad = Term::app(a.as_app().unwrap().0.clone(), omega());
            assert!(matches!(
                verify_ab_unfold(&a, &bad, 50),
                Err(CombError::UnfoldMismatch { .. })
            ));
        }
    }

    #[test]
    fn ab_step_in_the_tree() {
        let c = small();
        let t = compile_tree(&explicit(&[0])).unwrap();
        let (a, b) = build_ab(&t, &c.f, &c.g);
        for m in [0u64, 3] {
            verify_ab_step(&a, &b, 0, m, 500).unwrap();
        }
    }

    #[test]
    fn basis_routes_meet_at_fgiin() {
        let c = small();
        let t = compile_tree(&explicit(&[0])).unwrap();
        let (a, b) = build_ab(&t, &c.f, &c.g);
        for n in 0..=3u64 {
            let (ra, rb) = verify_ab_basis(&a, &b, 0, n, 100_000).unwrap();
            ra.replay().unwrap();
            rb.replay().unwrap();
            let want = Term::apps(c.f.clone(), [c.g.clone(), i(), i(), church(n)]);
            assert_eq!((ra.last(), rb.last()), (&want, &want), "N={n}");
        }
    }

    #[test]
    fn basis_joins_by_search() {
        // the generic search first meets the open `λz.F G (A(0*⟨z⟩)) …`
        // forms and needs a large budget before the closed instances
        let c = small();
        let t = compile_tree(&explicit(&[0])).unwrap();
        let (a, b) = build_ab(&t, &c.f, &c.g);
        let l = Term::apps(a.clone(), [church(0), church(1)]);
        let r = Term::apps(b, [church(0), church(1)]);
        assert!(joinable(&l, &r, 1_000_000).is_joined());
    }

    proptest! {
        #[test]
        fn iter_matches_native(times in 0u64..6, init in 0u64..4, n in 0u64..5) {
            let e = Expr::Iter {
                times: Box::new(Expr::Lit(times)),
                init: Box::new(Expr::Lit(init)),
                step: Box::new(Expr::Add(Box::new(Expr::Acc), Box::new(Expr::Input))),
            };
            let want = e.eval(&BigUint::from(n)).unwrap().to_u64().unwrap();
            let t = Term::app(Term::abs(e.compile(0, Lib::base())), church(n));
            prop_assert_eq!(eval(&t), eval(&church(want)));
        }
    }
}
