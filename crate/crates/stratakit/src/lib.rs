//! Decision procedures for connected components of strata of k-differentials.
//!
//! A k-differential on a Riemann surface of genus g is a section of the k-th
//! power of the canonical bundle; its zero and pole orders form a signature
//! summing to k(2g-2). This crate turns the classification theory of the
//! connected components of such strata into executable routines:
//!
//! * [`strata_core`] — signatures, strata, validation, power decompositions;
//! * [`cover`] — local ramification data of the canonical k-cyclic cover and
//!   the parity-type predicate;
//! * [`parity`] — spin parities: the quadratic formula, the even-k reduction,
//!   the odd-k counting function `n_k`, genus-0/1 formulas, gluing;
//! * [`divisor_count`] — exact counts of effective half-canonical divisor
//!   classes: the reduced pair count `N_k(n)`, a lattice-quotient brute-force
//!   oracle for triples, and the conjecture sweep;
//! * [`classify`] — component enumeration: genus 0/1, hyperelliptic shapes,
//!   the complete quadratic table for strata with a metric pole, the special
//!   cubic strata in genus two, and merge-based upper bounds;
//! * [`oplus`] — the bubbling algebra: realizability, rewrite rules,
//!   balanced types, gcd equivalences, and sequence normalization.
//!
//! All values are immutable after construction and every operation is a pure
//! function; the only shared state is the append-only verified-k registry in
//! [`verified`].

pub mod classify;
pub mod cover;
pub mod divisor_count;
pub mod error;
pub mod oplus;
pub mod parity;
pub mod strata_core;
pub mod verified;

pub use error::{Error, Result};
pub use strata_core::{Signature, Stratum};
