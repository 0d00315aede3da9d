use super::{contract, list_redexes, Kind, Term};
use crate::reduction::{step_normal_order, weak_head_step};
use std::collections::{HashSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVerdict {
    /// Some reduct is an abstraction.
    PositiveOrder,
    /// Certified never to reduce to an abstraction.
    OrderZeroCertified,
    Unknown,
}

/// Three-valued order-0 test for a closed term.
///
/// Positive order is witnessed by a normal-order reduct that is an
/// abstraction. Order 0 is certified either by a cycle in deterministic weak
/// head reduction (no weak head normal form, hence no abstraction reduct for
/// a closed term) or by exhausting the whole finite reduction graph without
/// meeting an abstraction.
pub fn order_zero_probe(t: &Term, fuel: u64) -> OrderVerdict {
    // normal-order probe for an abstraction reduct
    let mut cur = t.clone();
    let mut used = 0;
    loop {
        if cur.is_abs() {
            return OrderVerdict::PositiveOrder;
        }
        if used >= fuel {
            break;
        }
        match step_normal_order(&cur) {
            Some((_, next)) => {
                cur = next;
                used += 1;
            }
            None => break,
        }
    }

    // weak head cycle detection
    let mut seen = HashSet::new();
    let mut cur = t.clone();
    seen.insert(cur.clone());
    for _ in 0..fuel {
        match weak_head_step(&cur) {
            Some(next) => {
                if next.is_abs() {
                    return OrderVerdict::PositiveOrder;
                }
                if !seen.insert(next.clone()) {
                    return OrderVerdict::OrderZeroCertified;
                }
                cur = next;
            }
            None => break,
        }
    }

    // full graph closure
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.clone());
    queue.push_back(t.clone());
    let mut spent = 0u64;
    while let Some(u) = queue.pop_front() {
        if u.is_abs() {
            return OrderVerdict::PositiveOrder;
        }
        for site in list_redexes(&u) {
            if spent >= fuel {
                return OrderVerdict::Unknown;
            }
            spent += 1;
            let v = contract(&u, &site).expect("listed redex is valid");
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    OrderVerdict::OrderZeroCertified
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeMatch {
    NoMatch,
    /// Pairs `(from m, from n)` whose ω-equality the same-form relation
    /// demands. Nothing here decides those equalities.
    Match(Vec<(Term, Term)>),
}

/// Structural decomposition behind "`m` has the same form as `n`".
///
/// `n` is split as `λy1…yk. h L1…Lj` with a maximal binder block. If `h` is
/// an abstraction (a head redex), `m` must have an abstraction head under the
/// same binders with the same argument count, and the head pair is an
/// obligation. If `h` is a bound variable, `m` must have the same variable
/// head. Argument pairs are closed by the shared binder block.
pub fn shape_match(m: &Term, n: &Term) -> ShapeMatch {
    let (kn, body_n) = n.strip_lams();
    let (km, body_m) = m.strip_lams();
    if kn != km {
        return ShapeMatch::NoMatch;
    }
    let (head_n, args_n) = body_n.spine();
    let (head_m, args_m) = body_m.spine();
    if args_n.len() != args_m.len() {
        return ShapeMatch::NoMatch;
    }
    let close = |t: &Term| Term::lams(kn, t.clone());
    let mut obligations = Vec::new();
    match (head_n.kind(), head_m.kind()) {
        (Kind::Abs(_), Kind::Abs(_)) => {
            obligations.push((close(&head_m), close(&head_n)));
        }
        (Kind::Var(j), Kind::Var(i)) if i == j && (*j as usize) < kn => {}
        _ => return ShapeMatch::NoMatch,
    }
    for (p, l) in args_m.iter().zip(&args_n) {
        obligations.push((close(p), close(l)));
    }
    ShapeMatch::Match(obligations)
}
