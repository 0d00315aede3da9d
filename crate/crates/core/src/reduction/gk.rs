use super::{Strategy, Trace};
use crate::term::{list_redexes, substitute, Kind, RedexKind, Term};

/// Complete development of every β redex present in `t`.
///
/// Redexes created along the way are left alone, so `gk_step(t) == t`
/// exactly when `t` is β-normal or reproduces itself (Ω).
pub fn gk_step(t: &Term) -> Term {
    crate::term::grow(|| match t.kind() {
        Kind::Var(_) => t.clone(),
        Kind::Abs(b) => {
            let b2 = gk_step(b);
            if b2.ptr_eq(b) {
                t.clone()
            } else {
                Term::abs(b2)
            }
        }
        Kind::App(f, a) => match f.kind() {
            Kind::Abs(body) => substitute(&gk_step(body), &gk_step(a)),
            _ => {
                let (f2, a2) = (gk_step(f), gk_step(a));
                if f2.ptr_eq(f) && a2.ptr_eq(a) {
                    t.clone()
                } else {
                    Term::app(f2, a2)
                }
            }
        },
    })
}

/// [`gk_step`] as a sequence of single β steps.
///
/// The original redexes are contracted in reverse pre-order. A later redex
/// in pre-order is either disjoint from or inside an earlier one, so the
/// earlier ones keep their addresses, and each redex is contracted after
/// everything inside it has been developed.
pub fn gk_trace(t: &Term) -> Trace {
    let sites: Vec<_> = list_redexes(t)
        .into_iter()
        .filter(|s| s.kind == RedexKind::Beta)
        .rev()
        .collect();
    Trace::from_sites(t.clone(), Strategy::Gk, &sites)
        .expect("original redex addresses survive inner contractions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn examples() {
        let om = p("(\\x.x x)(\\x.x x)");
        assert_eq!(gk_step(&om), om);
        assert_eq!(gk_step(&p("(\\x.x x) (\\x.x)")), p("(\\x.x) (\\x.x)"));
        assert_eq!(gk_step(&p("(\\x.x) ((\\x.x) (\\a.\\b.a))")), p("\\a.\\b.a"));
    }

    #[test]
    fn created_redexes_survive() {
        // (λx.x I) I develops to I I, not I
        let t = p("(\\x.x (\\y.y)) (\\y.y)");
        assert_eq!(gk_step(&t), p("(\\y.y) (\\y.y)"));
    }

    #[test]
    fn trace_matches_development() {
        for s in [
            "(\\x.x x) ((\\y.y) (\\z.z))",
            "(\\x.\\y.x y y) ((\\a.a) (\\b.b)) ((\\c.c c) (\\d.d))",
            "\\q.(\\x.x ((\\y.y) x)) ((\\z.z) q)",
            "(\\x.x x)(\\x.x x)",
        ] {
            let t = p(s);
            let tr = gk_trace(&t);
            tr.replay().unwrap();
            assert_eq!(tr.last(), &gk_step(&t), "{s}");
        }
    }

    #[test]
    fn fixed_iff_beta_normal() {
        for s in ["\\x.x", "\\x.\\y.y x", "\\x.(\\y.y) x"] {
            let t = p(s);
            let normal = !list_redexes(&t).iter().any(|r| r.kind == RedexKind::Beta);
            assert_eq!(gk_step(&t) == t, normal, "{s}");
        }
    }
}
