//! Search for a common reduct of two terms.
//!
//! Two searches share one contraction budget. The guided search follows
//! head reduction on both sides and, when two head reducts agree on their
//! binder count, head and argument count, joins the differing arguments
//! recursively (if `a_i ↓ b_i` for all `i` then `h a⃗ ↓ h b⃗`). That reaches
//! common reducts of large non-normalizing terms that a blind breadth-first
//! search never gets near. What is left goes to a bidirectional
//! breadth-first search over all βη redexes. Both are deterministic.

use super::{head_step, normalize, normalize_fast, Strategy, Trace};
use crate::term::{contract, list_redexes, RedexKind, RedexSite, Step, Term};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinOutcome {
    Joined {
        common: Term,
        left: Trace,
        right: Trace,
    },
    Unknown,
}

impl JoinOutcome {
    pub fn is_joined(&self) -> bool {
        matches!(self, JoinOutcome::Joined { .. })
    }
}

/// Look for a common βη-reduct of `m` and `n` using at most `fuel` contractions.
pub fn joinable(m: &Term, n: &Term, fuel: u64) -> JoinOutcome {
    let mut search = Search {
        budget: fuel / 2,
        failed: HashMap::new(),
        solved: HashMap::new(),
    };
    let mut limit = 4usize;
    let mut found = None;
    loop {
        if let Some(w) = search.guided(m, n, limit, MAX_DEPTH) {
            found = Some(w);
            break;
        }
        if search.budget == 0 || limit as u64 >= fuel {
            break;
        }
        limit *= 2;
    }
    let used = fuel / 2 - search.budget;
    if found.is_none() {
        let mut left = fuel - used;
        found = bfs(m, n, &mut left);
    }
    let Some(w) = found else {
        return JoinOutcome::Unknown;
    };
    let left = Trace::from_sites(m.clone(), Strategy::Free, &w.left).expect("witness sites replay");
    let right =
        Trace::from_sites(n.clone(), Strategy::Free, &w.right).expect("witness sites replay");
    if left.last() != &w.common || right.last() != &w.common {
        return JoinOutcome::Unknown;
    }
    JoinOutcome::Joined {
        common: w.common,
        left,
        right,
    }
}

const MAX_DEPTH: usize = 48;
const MAX_DIFFERING_ARGS: usize = 4;

#[derive(Debug, Clone)]
struct Witness {
    common: Term,
    left: Vec<RedexSite>,
    right: Vec<RedexSite>,
}

impl Witness {
    fn same(t: &Term) -> Self {
        Witness {
            common: t.clone(),
            left: Vec::new(),
            right: Vec::new(),
        }
    }
}

struct Search {
    budget: u64,
    failed: HashMap<(Term, Term), usize>,
    solved: HashMap<(Term, Term), Witness>,
}

/// Head reduction sequence, extended on demand, stopping at a head normal
/// form or at the first repeated term.
struct HeadSeq {
    terms: Vec<Term>,
    sites: Vec<RedexSite>,
    index: HashMap<Term, usize>,
    ended: bool,
}

impl HeadSeq {
    fn new(t: &Term) -> Self {
        let mut index = HashMap::new();
        index.insert(t.clone(), 0);
        HeadSeq {
            terms: vec![t.clone()],
            sites: Vec::new(),
            index,
            ended: false,
        }
    }

    fn extend(&mut self, budget: &mut u64) -> bool {
        if self.ended || *budget == 0 {
            return false;
        }
        match head_step(self.terms.last().expect("nonempty")) {
            None => {
                self.ended = true;
                false
            }
            Some((site, next)) => {
                *budget -= 1;
                if self.index.contains_key(&next) {
                    self.ended = true;
                    return false;
                }
                self.index.insert(next.clone(), self.terms.len());
                self.terms.push(next);
                self.sites.push(site);
                true
            }
        }
    }
}

fn lift<'a>(sites: &'a [RedexSite], prefix: &[Step]) -> impl Iterator<Item = RedexSite> + 'a {
    let prefix = prefix.to_vec();
    sites.iter().map(move |s| {
        let mut path = prefix.clone();
        path.extend_from_slice(&s.path);
        match s.kind {
            RedexKind::Beta => RedexSite::beta(path),
            RedexKind::Eta => RedexSite::eta(path),
        }
    })
}

impl Search {
    fn guided(&mut self, m: &Term, n: &Term, limit: usize, depth: usize) -> Option<Witness> {
        if m == n {
            return Some(Witness::same(m));
        }
        let key = (m.clone(), n.clone());
        if let Some(w) = self.solved.get(&key) {
            return Some(w.clone());
        }
        if self.failed.get(&key).is_some_and(|&l| l >= limit) {
            return None;
        }
        let w = self.guided_uncached(m, n, limit, depth);
        match &w {
            Some(w) => {
                self.solved.insert(key, w.clone());
            }
            None => {
                self.failed.insert(key, limit);
            }
        }
        w
    }

    fn guided_uncached(
        &mut self,
        m: &Term,
        n: &Term,
        limit: usize,
        depth: usize,
    ) -> Option<Witness> {
        let mut seqs = [HeadSeq::new(m), HeadSeq::new(n)];
        if let Some(w) = self.congruence(m, n, limit, depth) {
            return Some(w);
        }
        loop {
            let mut progressed = false;
            for side in 0..2 {
                if seqs[side].terms.len() > limit || !seqs[side].extend(&mut self.budget) {
                    continue;
                }
                progressed = true;
                let i = seqs[side].terms.len() - 1;
                let new = seqs[side].terms[i].clone();
                let other = &seqs[1 - side];
                let found = if let Some(&j) = other.index.get(&new) {
                    Some((j, Witness::same(&new)))
                } else {
                    let candidates: Vec<(usize, Term)> =
                        other.terms.iter().cloned().enumerate().collect();
                    let mut hit = None;
                    for (j, o) in candidates {
                        let w = if side == 0 {
                            self.congruence(&new, &o, limit, depth)
                        } else {
                            self.congruence(&o, &new, limit, depth)
                        };
                        if let Some(w) = w {
                            hit = Some((j, w));
                            break;
                        }
                    }
                    hit
                };
                if let Some((j, w)) = found {
                    let (li, ri) = if side == 0 { (i, j) } else { (j, i) };
                    let mut left = seqs[0].sites[..li].to_vec();
                    left.extend(w.left);
                    let mut right = seqs[1].sites[..ri].to_vec();
                    right.extend(w.right);
                    return Some(Witness {
                        common: w.common,
                        left,
                        right,
                    });
                }
            }
            if !progressed {
                break;
            }
        }
        if seqs[0].ended && seqs[1].ended {
            return self.via_normal_forms(m, n, limit);
        }
        None
    }

    /// Join argument-wise when the two terms share binders, head and arity.
    fn congruence(&mut self, x: &Term, y: &Term, limit: usize, depth: usize) -> Option<Witness> {
        if depth == 0 {
            return None;
        }
        let (lx, bx) = x.strip_lams();
        let (ly, by) = y.strip_lams();
        if lx != ly {
            return None;
        }
        let (hx, ax) = bx.spine();
        let (hy, ay) = by.spine();
        if hx != hy || ax.len() != ay.len() {
            return None;
        }
        let differing = ax.iter().zip(&ay).filter(|(a, b)| a != b).count();
        if differing == 0 || differing > MAX_DIFFERING_ARGS {
            return None;
        }
        let k = ax.len();
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut args = Vec::with_capacity(k);
        for (idx, (a, b)) in ax.iter().zip(&ay).enumerate() {
            if a == b {
                args.push(a.clone());
                continue;
            }
            let w = self.guided(a, b, limit, depth - 1)?;
            let mut prefix = vec![Step::Body; lx];
            prefix.extend(std::iter::repeat(Step::Fun).take(k - 1 - idx));
            prefix.push(Step::Arg);
            left.extend(lift(&w.left, &prefix));
            right.extend(lift(&w.right, &prefix));
            args.push(w.common);
        }
        Some(Witness {
            common: Term::lams(lx, Term::apps(hx, args)),
            left,
            right,
        })
    }

    fn via_normal_forms(&mut self, m: &Term, n: &Term, limit: usize) -> Option<Witness> {
        let cap = self.budget.min(limit as u64 * 8);
        let (nm, um) = match normalize_fast(m, cap) {
            Ok(r) => r,
            Err(spent) => {
                self.budget -= spent.min(self.budget);
                return None;
            }
        };
        let (nn, un) = match normalize_fast(n, cap - um) {
            Ok(r) => r,
            Err(spent) => {
                self.budget -= (um + spent).min(self.budget);
                return None;
            }
        };
        self.budget -= (um + un).min(self.budget);
        if nm != nn {
            return None;
        }
        let left = normalize(m, um).trace().sites();
        let right = normalize(n, un).trace().sites();
        Some(Witness {
            common: nm,
            left,
            right,
        })
    }
}

type Parents = HashMap<Term, Option<(Term, RedexSite)>>;

const BFS_MAX_NODES: usize = 200_000;

/// Bidirectional breadth-first search over all βη redexes.
fn bfs(m: &Term, n: &Term, budget: &mut u64) -> Option<Witness> {
    if m == n {
        return Some(Witness::same(m));
    }
    let mut pm: Parents = HashMap::from([(m.clone(), None)]);
    let mut pn: Parents = HashMap::from([(n.clone(), None)]);
    let mut fm = vec![m.clone()];
    let mut fnn = vec![n.clone()];
    loop {
        if fm.is_empty() && fnn.is_empty() {
            return None;
        }
        let from_left = !fm.is_empty() && (fnn.is_empty() || fm.len() <= fnn.len());
        let meet = if from_left {
            expand(&mut fm, &mut pm, &pn, budget)?
        } else {
            expand(&mut fnn, &mut pn, &pm, budget)?
        };
        if let Some(v) = meet {
            return Some(Witness {
                left: path_to(&pm, &v),
                right: path_to(&pn, &v),
                common: v,
            });
        }
        if pm.len() + pn.len() > BFS_MAX_NODES {
            return None;
        }
    }
}

/// Expand one frontier level. `None` when the budget ran out, `Some(Some(v))` on a meeting point.
fn expand(
    front: &mut Vec<Term>,
    mine: &mut Parents,
    other: &Parents,
    budget: &mut u64,
) -> Option<Option<Term>> {
    let mut next = Vec::new();
    for u in front.drain(..) {
        for site in list_redexes(&u) {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let v = contract(&u, &site).expect("listed redex is valid");
            if mine.contains_key(&v) {
                continue;
            }
            mine.insert(v.clone(), Some((u.clone(), site)));
            if other.contains_key(&v) {
                return Some(Some(v));
            }
            next.push(v);
        }
    }
    *front = next;
    Some(None)
}

fn path_to(parents: &Parents, end: &Term) -> Vec<RedexSite> {
    let mut sites = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((prev, site))) = parents.get(&cur) {
        sites.push(site.clone());
        cur = prev.clone();
    }
    sites.reverse();
    sites
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn joined(m: &str, n: &str, fuel: u64) -> Term {
        match joinable(&p(m), &p(n), fuel) {
            JoinOutcome::Joined {
                common,
                left,
                right,
            } => {
                left.replay().unwrap();
                right.replay().unwrap();
                common
            }
            JoinOutcome::Unknown => panic!("{m} / {n} not joined"),
        }
    }

    #[test]
    fn trivial_joins() {
        assert_eq!(joined("\\x.x", "(\\x.x) (\\x.x)", 10), p("\\x.x"));
        assert_eq!(
            joined("(\\x.\\y.x) (\\x.x) ((\\x.x x)(\\x.x x))", "\\x.x", 100),
            p("\\x.x")
        );
    }

    #[test]
    fn joins_numerals_through_successor() {
        let succ_two = "(\\n.\\f.\\x.f (n f x)) (\\f.\\x.f (f x))";
        let three = "\\f.\\x.f (f (f x))";
        assert_eq!(joined(succ_two, three, 100), p(three));
    }

    #[test]
    fn joins_under_divergent_context() {
        // Ω (S 2) vs Ω 3: no normal form, same head
        let om = "((\\x.x x)(\\x.x x))";
        let m = format!("{om} ((\\n.\\f.\\x.f (n f x)) (\\f.\\x.f (f x)))");
        let n = format!("{om} (\\f.\\x.f (f (f x)))");
        joined(&m, &n, 200);
    }

    #[test]
    fn eta_needs_normal_forms() {
        assert_eq!(
            joined("\\x.(\\y.y) (\\z.\\w.z) x", "\\z.\\w.z", 100),
            p("\\z.\\w.z")
        );
    }

    #[test]
    fn distinct_normal_forms_unknown() {
        assert_eq!(
            joinable(&p("\\x.\\y.x"), &p("\\x.\\y.y"), 100),
            JoinOutcome::Unknown
        );
    }
}
