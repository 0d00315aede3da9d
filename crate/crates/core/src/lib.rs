//! A λβη workbench: nameless terms, reduction strategies, Church and
//! sequence encodings, a Kleene enumerator, fixed-point combinator
//! constructions, Cantor normal form ordinals and an endpiece certificate
//! checker.

pub mod combinators;
pub mod encodings;
pub mod ordinals;
pub mod proofcheck;
pub mod reduction;
pub mod suite;
pub mod term;
