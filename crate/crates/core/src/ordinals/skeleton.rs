//! Finite truncations of ω-rule proof trees and their ordinals.

use super::{cmp, hscale, hsum, omega_pow, Ordinal, OrdinalError};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// An ω-node lists finitely many of its premises; the sup over all of them
/// is supplied as `declared_sup` and checked against the listed ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProofSkeleton {
    ConversionLeaf,
    OmegaNode {
        children: Vec<ProofSkeleton>,
        declared_sup: Ordinal,
    },
    /// No components behaves as a conversion leaf.
    EndpieceNode { components: Vec<ProofSkeleton> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FactCheck {
    Holds,
    Violated { parent: Ordinal, sum: Ordinal },
}

impl ProofSkeleton {
    pub fn leaf() -> Self {
        ProofSkeleton::ConversionLeaf
    }

    pub fn omega(children: Vec<ProofSkeleton>, declared_sup: Ordinal) -> Self {
        ProofSkeleton::OmegaNode { children, declared_sup }
    }

    pub fn endpiece(components: Vec<ProofSkeleton>) -> Self {
        ProofSkeleton::EndpieceNode { components }
    }

    /// The ordinal of the tree; fails with [`OrdinalError::InvalidSup`] at
    /// the first ω-node whose declared sup is below a prefix sum.
    pub fn ord(&self) -> Result<Ordinal, OrdinalError> {
        match self {
            ProofSkeleton::ConversionLeaf => Ok(Ordinal::one()),
            ProofSkeleton::OmegaNode { children, declared_sup } => {
                let mut prefix = Ordinal::zero();
                for c in children {
                    prefix = hsum(&prefix, &c.ord()?);
                    if cmp(declared_sup, &prefix) == Ordering::Less {
                        return Err(OrdinalError::InvalidSup {
                            declared: declared_sup.clone(),
                            prefix,
                        });
                    }
                }
                Ok(omega_pow(declared_sup))
            }
            ProofSkeleton::EndpieceNode { components } => {
                components.iter().try_fold(Ordinal::one(), |acc, c| Ok(hsum(&acc, &c.ord()?)))
            }
        }
    }

    /// Largest component ordinal of an endpiece.
    pub fn rank(&self) -> Result<Ordinal, OrdinalError> {
        match self {
            ProofSkeleton::EndpieceNode { components } if !components.is_empty() => {
                let mut best = Ordinal::zero();
                for c in components {
                    best = best.max(c.ord()?);
                }
                Ok(best)
            }
            _ => Err(OrdinalError::NotAnEndpiece),
        }
    }

    /// Paths (child indices from the root) of ω-nodes whose declared sup
    /// equals the sum of the listed children. A genuine infinite premise
    /// list never attains its sup, so these are worth a second look.
    pub fn sup_attained(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.sup_attained_at(&mut Vec::new(), &mut out);
        out
    }

    fn sup_attained_at(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let kids = match self {
            ProofSkeleton::ConversionLeaf => return,
            ProofSkeleton::OmegaNode { children, declared_sup } => {
                let total = children
                    .iter()
                    .filter_map(|c| c.ord().ok())
                    .fold(Ordinal::zero(), |a, b| hsum(&a, &b));
                if !children.is_empty() && total == *declared_sup {
                    out.push(path.clone());
                }
                children
            }
            ProofSkeleton::EndpieceNode { components } => components,
        };
        for (i, k) in kids.iter().enumerate() {
            path.push(i);
            k.sup_attained_at(path, out);
            path.pop();
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ProofSkeleton::ConversionLeaf => 0,
            ProofSkeleton::OmegaNode { children: ks, .. }
            | ProofSkeleton::EndpieceNode { components: ks } => {
                1 + ks.iter().map(Self::depth).max().unwrap_or(0)
            }
        }
    }
}

/// Compare `ord(parent)` with `⨁ ord(childᵢ)⊙nᵢ`. Child indices are
/// 1-based, as the premises are numbered.
pub fn check_fact_inequality(
    parent: &ProofSkeleton,
    coeffs: &[(usize, u64)],
) -> Result<FactCheck, OrdinalError> {
    let ProofSkeleton::OmegaNode { children, .. } = parent else {
        return Err(OrdinalError::NotAnOmegaNode);
    };
    let lhs = parent.ord()?;
    let mut sum = Ordinal::zero();
    for &(idx, n) in coeffs {
        let child = idx
            .checked_sub(1)
            .and_then(|i| children.get(i))
            .ok_or(OrdinalError::BadChildIndex(idx))?;
        sum = hsum(&sum, &hscale(&child.ord()?, n));
    }
    Ok(if lhs > sum {
        FactCheck::Holds
    } else {
        FactCheck::Violated { parent: lhs, sum }
    })
}

#[cfg(test)]
mod tests {
    use super::super::strategies;
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn leaves(n: usize) -> Vec<ProofSkeleton> {
        vec![ProofSkeleton::leaf(); n]
    }

    /// ω-node with a single premise of ordinal `a` (for `a = ω^b`).
    fn of_pow(b: &str) -> ProofSkeleton {
        ProofSkeleton::omega(vec![], o(b))
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ProofSkeleton::leaf().ord().unwrap(), Ordinal::one());
        let ww = ProofSkeleton::omega(leaves(5), Ordinal::omega());
        assert_eq!(ww.ord().unwrap(), o("w^(w)"));
        let e = ProofSkeleton::endpiece(vec![ww.clone(), ww]);
        assert_eq!(e.ord().unwrap(), o("w^(w)*2 + 1"));
        assert_eq!(ProofSkeleton::endpiece(vec![]).ord().unwrap(), Ordinal::one());
    }

    #[test]
    fn invalid_sup_is_reported() {
        let bad = ProofSkeleton::omega(leaves(3), o("2"));
        assert_eq!(
            bad.ord(),
            Err(OrdinalError::InvalidSup { declared: o("2"), prefix: o("3") })
        );
        let nested = ProofSkeleton::endpiece(vec![ProofSkeleton::leaf(), bad]);
        assert!(matches!(nested.ord(), Err(OrdinalError::InvalidSup { .. })));
    }

    #[test]
    fn equal_sup_is_flagged() {
        let eq = ProofSkeleton::omega(leaves(3), o("3"));
        assert_eq!(eq.ord().unwrap(), o("w^3"));
        let t = ProofSkeleton::endpiece(vec![ProofSkeleton::leaf(), eq]);
        assert_eq!(t.sup_attained(), vec![vec![1]]);
        assert!(ProofSkeleton::omega(leaves(3), o("w")).sup_attained().is_empty());
    }

    #[test]
    fn rank_examples() {
        let e = ProofSkeleton::endpiece(vec![of_pow("1")]);
        assert_eq!(e.rank().unwrap(), o("w"));
        let e = ProofSkeleton::endpiece(vec![of_pow("1"), of_pow("2")]);
        assert_eq!(e.rank().unwrap(), o("w^2"));
        assert_eq!(ProofSkeleton::leaf().rank(), Err(OrdinalError::NotAnEndpiece));
    }

    #[test]
    fn fact_examples() {
        let p = ProofSkeleton::omega(leaves(4), Ordinal::omega());
        assert_eq!(check_fact_inequality(&p, &[(1, 1000)]).unwrap(), FactCheck::Holds);
        let p = ProofSkeleton::omega(vec![of_pow("1")], o("w*2"));
        assert_eq!(check_fact_inequality(&p, &[(1, 5)]).unwrap(), FactCheck::Holds);
        let bad = ProofSkeleton::omega(vec![of_pow("1")], o("5"));
        assert!(matches!(
            check_fact_inequality(&bad, &[(1, 5)]),
            Err(OrdinalError::InvalidSup { .. })
        ));
        assert_eq!(
            check_fact_inequality(&p, &[(2, 1)]),
            Err(OrdinalError::BadChildIndex(2))
        );
        assert_eq!(
            check_fact_inequality(&ProofSkeleton::leaf(), &[]),
            Err(OrdinalError::NotAnOmegaNode)
        );
    }

    #[test]
    fn json_shape() {
        let s = ProofSkeleton::endpiece(vec![ProofSkeleton::omega(leaves(1), o("w"))]);
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["kind"], "endpiece-node");
        assert_eq!(j["components"][0]["declared_sup"], "w");
        let back: ProofSkeleton = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
    }

    /// Ordinals as descending multisets of ω-power exponents; the natural
    /// sum is multiset union.
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct Atoms(Vec<Atoms>);

    impl Atoms {
        fn union(&self, other: &Atoms) -> Atoms {
            let mut v = [self.0.clone(), other.0.clone()].concat();
            v.sort_by(|a, b| b.cmp(a));
            Atoms(v)
        }

        fn to_ordinal(&self) -> Ordinal {
            self.0.iter().fold(Ordinal::zero(), |acc, e| hsum(&acc, &omega_pow(&e.to_ordinal())))
        }

        fn from_ordinal(a: &Ordinal) -> Atoms {
            let mut v = Vec::new();
            for (e, n) in a.terms() {
                for _ in 0..*n {
                    v.push(Atoms::from_ordinal(e));
                }
            }
            Atoms(v)
        }
    }

    fn oracle(s: &ProofSkeleton) -> Atoms {
        let one = Atoms(vec![Atoms(vec![])]);
        match s {
            ProofSkeleton::ConversionLeaf => one,
            ProofSkeleton::OmegaNode { declared_sup, .. } => {
                Atoms(vec![Atoms::from_ordinal(declared_sup)])
            }
            ProofSkeleton::EndpieceNode { components } => {
                components.iter().fold(one, |acc, c| acc.union(&oracle(c)))
            }
        }
    }

    /// Valid skeletons: each ω-node's sup is the children's total plus a
    /// nonzero extra, or exactly the total.
    fn skeleton(depth: u32) -> BoxedStrategy<ProofSkeleton> {
        let leaf = Just(ProofSkeleton::leaf()).boxed();
        if depth == 0 {
            return leaf;
        }
        let kids = prop::collection::vec(skeleton(depth - 1), 0..4);
        prop_oneof![
            1 => leaf,
            2 => (kids.clone(), strategies::ordinal(2), any::<bool>()).prop_map(|(ks, extra, exact)| {
                let total = ks.iter().fold(Ordinal::zero(), |a, k| hsum(&a, &k.ord().unwrap()));
                let sup = if exact { total } else { hsum(&total, &hsum(&extra, &Ordinal::one())) };
                ProofSkeleton::omega(ks, sup)
            }),
            2 => kids.prop_map(ProofSkeleton::endpiece),
        ]
        .boxed()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ord_matches_oracle(s in skeleton(4)) {
            prop_assert!(s.depth() <= 4);
            let got = s.ord().unwrap();
            prop_assert_eq!(Atoms::from_ordinal(&got), oracle(&s));
            prop_assert_eq!(oracle(&s).to_ordinal(), got);
        }

        #[test]
        fn endpiece_dominates_components(ks in prop::collection::vec(skeleton(3), 1..4)) {
            let e = ProofSkeleton::endpiece(ks.clone());
            let whole = e.ord().unwrap();
            for k in &ks {
                prop_assert!(k.ord().unwrap() < whole);
            }
            prop_assert!(e.rank().unwrap() < whole);
        }

        #[test]
        fn fact_inequality_holds(
            ks in prop::collection::vec(skeleton(2), 1..4),
            extra in strategies::ordinal(1),
            ns in prop::collection::vec((0usize..4, 0u64..1000), 0..5),
        ) {
            let total = ks.iter().fold(Ordinal::zero(), |a, k| hsum(&a, &k.ord().unwrap()));
            let parent = ProofSkeleton::omega(ks.clone(), hsum(&total, &extra));
            let coeffs: Vec<_> = ns.into_iter().map(|(i, n)| (i % ks.len() + 1, n)).collect();
            prop_assert_eq!(check_fact_inequality(&parent, &coeffs).unwrap(), FactCheck::Holds);
        }
    }
}
