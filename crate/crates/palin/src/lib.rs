//! Multi-base palindrome arithmetic.
//!
//! A number n is k-palindromic in base b when its base-b expansion has
//! length exactly k and reads the same in both directions; it is
//! intrinsically k-palindromic when some base works. This crate provides
//! exact radix primitives, per-base and intrinsic counting (Φ_k(N,b),
//! Φ_k(N), Φ_{k,ℓ}(N)), multiplicity functions μ_k and μ_{≥k} with
//! certified witnesses, the exact modular criterion for length-3
//! palindromicity, the explicit multi-base constructions, and naive
//! brute-force oracles for cross-checking all of the above.
//!
//! All counting is exact: fixed-width arithmetic is checked, bound
//! verification runs in arbitrary precision, and no floating point
//! participates in any pass/fail decision.

pub mod constructions;
pub mod criterion3;
pub mod error;
pub mod intrinsic;
pub mod oracle;
pub mod palgen;
pub mod radix;

pub use error::{Error, Result};
pub use intrinsic::{CountResult, Multiplicity, MultiplicityProfile, PhiConfig, Strategy};
pub use palgen::{PalindromeShape, PalindromeWitness};
pub use radix::{Base, Natural, RadixExpansion};
