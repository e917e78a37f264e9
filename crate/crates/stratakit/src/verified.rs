//! Registry of k values whose divisor-count data has been confirmed by the
//! brute-force oracle.
//!
//! The genus-0 and genus-1 parity formulas for odd k rest on a congruence for
//! the pair counts N_k(n) that is proved only for special cases; elsewhere it
//! is verified computationally, k by k. Parities derived through those
//! formulas report `conditional = true` unless every odd divisor of k has
//! been stamped here. The set is append-only; stamping never blocks readers
//! for long and a stamped k stays stamped for the life of the process.

use std::collections::BTreeSet;
use std::sync::{OnceLock, RwLock};

fn registry() -> &'static RwLock<BTreeSet<u64>> {
    static REGISTRY: OnceLock<RwLock<BTreeSet<u64>>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(BTreeSet::new()))
}

/// Records that the pair-count congruence has been checked for this k.
///
/// Call through [`crate::divisor_count::confirm_k`] rather than directly,
/// unless the verification happened out of band.
pub fn stamp(k: u64) {
    registry().write().expect("verified-k registry poisoned").insert(k);
}

/// True when k itself and every odd divisor > 1 of k has been stamped.
///
/// The parity formulas for composite k reduce along divisors of k, so the
/// full divisor chain must be confirmed before an odd-k parity may be
/// reported as unconditional.
pub fn is_verified(k: u64) -> bool {
    let set = registry().read().expect("verified-k registry poisoned");
    if k <= 1 {
        return true;
    }
    (3..=k)
        .filter(|d| d % 2 == 1 && k.is_multiple_of(*d))
        .all(|d| set.contains(&d))
}

/// Snapshot of the stamped set, mostly for diagnostics.
pub fn stamped() -> BTreeSet<u64> {
    registry().read().expect("verified-k registry poisoned").clone()
}
