//! The cofinal sequences of `G` and `F Z A B C`, the operator gk̄, and the
//! supercofinal set 𝒳.
//!
//! One round of the G sequence is the 4-step head cycle `G X… →* G H₂ X…`
//! followed by a Gross-Knuth step on every argument of `G`; one round of
//! the F sequence is the 8-step cycle `F Z A B C →* F Z* B A C` followed by
//! gk on the four arguments.

use super::{CombError, Construction};
use crate::reduction::{gk_step, head_step, step_normal_order};
use crate::term::Term;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bar {
    Reached(Term),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XVerdict {
    /// No leftmost-outermost reduct is headed by `G` or `F`, certified by
    /// reaching a normal form or a repeated term.
    InX,
    Reduct(Term),
    /// Fuel ran out before either of the above.
    Unknown,
}

fn gk_all(ts: impl IntoIterator<Item = Term>) -> impl Iterator<Item = Term> {
    ts.into_iter().map(|t| gk_step(&t))
}

impl Construction {
    /// `G (gk X₁) … (gk X_k)` from the arguments after a completed cycle.
    fn g_round(&self, args: Vec<Term>) -> Term {
        Term::apps(self.g.clone(), gk_all(args))
    }

    /// `F (gk Z*) (gk B) (gk A) (gk C)`, the first four arguments taken as
    /// `Z A B C` before the cycle; further arguments just get gk.
    fn f_round(&self, mut args: Vec<Term>, cycle: bool) -> Term {
        if cycle {
            let zs = Term::app(args[0].clone(), Term::app(self.h1.clone(), args[3].clone()));
            args[0] = zs;
            args.swap(1, 2);
        }
        Term::apps(self.f.clone(), gk_all(args))
    }
}

/// gk̄: the first displayed term of the G or F sequence reached from `t`.
///
/// At `G X…` or `F Z A B C …` the cycle runs first; a term in the middle of
/// a cycle is head-reduced until the cycle completes. Anything else is
/// [`CombError::NotInSequence`].
pub fn gk_bar(c: &Construction, t: &Term, fuel: u64) -> Result<Bar, CombError> {
    let mut cur = t.clone();
    let mut steps = 0u64;
    loop {
        if let Some(mut args) = c.g_args(&cur) {
            if steps == 0 {
                args.insert(0, c.h2.clone());
            }
            return Ok(Bar::Reached(c.g_round(args)));
        }
        if let Some(args) = c.f_args(&cur) {
            return Ok(Bar::Reached(c.f_round(args, steps == 0)));
        }
        if steps >= fuel {
            return Ok(Bar::Unknown);
        }
        match head_step(&cur) {
            Some((_, next)) => cur = next,
            None => return Err(CombError::NotInSequence),
        }
        steps += 1;
    }
}

/// The reduct of `m` in 𝒳.
///
/// Runs leftmost-outermost from `m`. At the first term `G N₁ … N_k` the
/// reduct is `gk̄(G) gk(N₁) … gk(N_k)`; at the first `F M₁ M₂ M₃ M₄ N₁ … N_k`
/// it is `gk̄(F M₁ M₂ M₃ M₄) gk(N₁) … gk(N_k)`. A normal form or a repeated
/// term before either shape shows `m` itself is in 𝒳.
pub fn x_reduct(c: &Construction, m: &Term, fuel: u64) -> XVerdict {
    let mut cur = m.clone();
    let mut seen = HashSet::new();
    let mut steps = 0u64;
    loop {
        if let Some(args) = c.g_args(&cur) {
            let bar = Term::app(c.g.clone(), gk_step(&c.h2));
            return XVerdict::Reduct(Term::apps(bar, gk_all(args)));
        }
        if let Some(args) = c.f_args(&cur) {
            return XVerdict::Reduct(c.f_round(args, true));
        }
        if !seen.insert(cur.clone()) {
            return XVerdict::InX;
        }
        if steps >= fuel {
            return XVerdict::Unknown;
        }
        match step_normal_order(&cur) {
            Some((_, next)) => cur = next,
            None => return XVerdict::InX,
        }
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::theta;
    use crate::encodings::{church, i, k, omega, scripted_enumerator};
    use std::collections::BTreeMap;

    fn small() -> Construction {
        Construction::new(&i(), &i(), &scripted_enumerator(&BTreeMap::new(), &i()))
    }

    #[test]
    fn bar_of_g() {
        let c = small();
        let got = gk_bar(&c, &c.g, 100).unwrap();
        assert_eq!(got, Bar::Reached(Term::app(c.g.clone(), gk_step(&c.h2))));
    }

    #[test]
    fn bar_of_g_mid_cycle() {
        let c = small();
        let (_, mid) = head_step(&c.g).unwrap();
        let (_, mid) = head_step(&mid).unwrap();
        let got = gk_bar(&c, &mid, 100).unwrap();
        assert_eq!(got, Bar::Reached(Term::app(c.g.clone(), gk_step(&c.h2))));
    }

    #[test]
    fn bar_of_f() {
        let c = small();
        let (z, a, b, cc) = (i(), k(), omega(), church(2));
        let t = Term::apps(c.f.clone(), [z.clone(), a.clone(), b.clone(), cc.clone()]);
        let zs = Term::app(z, Term::app(c.h1.clone(), cc.clone()));
        let want = Term::apps(
            c.f.clone(),
            [gk_step(&zs), gk_step(&b), gk_step(&a), gk_step(&cc)],
        );
        assert_eq!(gk_bar(&c, &t, 100).unwrap(), Bar::Reached(want));
    }

    #[test]
    fn bar_outside_sequences() {
        let c = small();
        assert_eq!(gk_bar(&c, &church(3), 100), Err(CombError::NotInSequence));
    }

    #[test]
    fn x_examples() {
        let c = small();
        assert_eq!(x_reduct(&c, &church(7), 1000), XVerdict::InX);
        let want = Term::apps(c.g.clone(), [gk_step(&c.h2), i()]);
        assert_eq!(
            x_reduct(&c, &Term::app(c.g.clone(), i()), 1000),
            XVerdict::Reduct(want)
        );
        assert_eq!(
            x_reduct(&c, &Term::app(theta(), theta()), 20),
            XVerdict::Unknown
        );
        assert_eq!(x_reduct(&c, &omega(), 20), XVerdict::InX);
    }

    #[test]
    fn x_through_leftmost_reduction() {
        let c = small();
        let m = Term::apps(i(), [c.g.clone(), k()]);
        let want = Term::apps(c.g.clone(), [gk_step(&c.h2), k()]);
        assert_eq!(x_reduct(&c, &m, 1000), XVerdict::Reduct(want));
    }

    #[test]
    fn x_is_fuel_monotone() {
        let c = small();
        let terms = [
            church(4),
            Term::apps(i(), [c.g.clone(), k()]),
            Term::app(theta(), theta()),
            omega(),
            Term::apps(c.f.clone(), [i(), i(), k(), church(0)]),
        ];
        for t in &terms {
            let mut settled: Option<XVerdict> = None;
            for fuel in [0u64, 1, 2, 5, 20, 100] {
                let v = x_reduct(&c, t, fuel);
                if let Some(s) = &settled {
                    assert_eq!(&v, s);
                } else if v != XVerdict::Unknown {
                    settled = Some(v);
                }
            }
        }
    }
}
