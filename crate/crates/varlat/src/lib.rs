//! Exact computations with commutative semigroup varieties.
//!
//! The crate provides, in order of dependency:
//!
//! - [`commwords`]: commutative words as exponent vectors, identities, and
//!   the word-embedding relation;
//! - [`nilcalc`]: exact identity entailment for nil-varieties presented by a
//!   finite basis with an explicit nil exponent, via congruence closure on
//!   the truncated free object;
//! - [`models`]: explicit Cayley tables and exhaustive identity checking,
//!   the independent brute-force oracle for the entailment engine;
//! - [`varieties`]: varieties in decomposed form (group exponent, monoid
//!   index, nil part), the catalog of subvarieties used throughout, joins,
//!   meets, invariants, and the special-element classification;
//! - [`latcheck`]: explicit finite lattices, brute-force special-element
//!   detectors, and generated sublattices of variety descriptors;
//! - [`parse`]: the text grammar for words, identities, bases, and variety
//!   descriptors.

pub mod commwords;
pub mod latcheck;
pub mod models;
pub mod nilcalc;
pub mod parse;
pub mod varieties;

pub use nilcalc::Caps;
