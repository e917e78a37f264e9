//! Combinatorics of the canonical k-cyclic cover.
//!
//! A k-differential pulls back to the k-th power of an abelian differential on
//! its canonical cover. Over a singularity of order m sit r = gcd(m, k)
//! preimages, each of local multiplicity l = k/r, and the abelian differential
//! has order m_hat = (m + k)/r - 1 at each of them. The cover genus follows
//! from Riemann-Hurwitz. Everything here is numerical; the cover curve itself
//! is never constructed.

use serde::Serialize;

use crate::error::Result;
use crate::strata_core::{gcd_u64, power_decompositions, Stratum};

/// Ramification data over one singularity of order m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverLocal {
    /// Order of the singularity downstairs.
    pub order: i64,
    /// Number of preimages, r = gcd(m, k).
    pub r: u64,
    /// Local multiplicity, l = k/r.
    pub ell: u64,
    /// Order of the abelian differential at each preimage.
    pub m_hat: i64,
}

/// Per-singularity cover data plus the genus of the (connected) cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverProfile {
    pub locals: Vec<CoverLocal>,
    /// Genus of the canonical cover under the assumption that it is
    /// connected, which holds exactly for primitive differentials. For a
    /// d-th power the cover splits into d copies of the root cover and this
    /// value is half the total Euler characteristic plus one, possibly
    /// negative.
    pub cover_genus: i64,
    /// Nonempty divisors flag that the stratum carries d-th power subloci
    /// whose covers are disconnected, so the genus interpretation above
    /// fails for them.
    pub nontrivial_power_divisors: Vec<u64>,
}

/// Local cover data (r, l, m_hat) = (gcd(m,k), k/gcd(m,k), (m+k)/gcd(m,k) - 1).
pub fn cover_local(m: i64, k: u64) -> CoverLocal {
    debug_assert!(m != 0 && k > 0);
    let r = gcd_u64(m.unsigned_abs(), k);
    let ell = k / r;
    let m_hat = (m + k as i64) / r as i64 - 1;
    CoverLocal { order: m, r, ell, m_hat }
}

/// Cover profile of a stratum: all locals and the cover genus from
/// Riemann-Hurwitz, 2g_hat - 2 = k(2g - 2) + sum(k - r_i).
pub fn cover_profile(stratum: &Stratum) -> CoverProfile {
    let k = stratum.k();
    let locals: Vec<CoverLocal> =
        stratum.orders().iter().map(|&m| cover_local(m, k)).collect();
    let base = k as i64 * (2 * stratum.genus() as i64 - 2);
    let extra: i64 = locals.iter().map(|l| k as i64 - l.r as i64).sum();
    let two_ghat_minus_2 = base + extra;
    debug_assert_eq!(two_ghat_minus_2.rem_euclid(2), 0);
    let cover_genus = (two_ghat_minus_2 + 2) / 2;
    // Degree check: the m_hat sum over all preimages is the canonical degree.
    debug_assert_eq!(
        locals.iter().map(|l| l.r as i64 * l.m_hat).sum::<i64>(),
        two_ghat_minus_2,
    );
    CoverProfile {
        locals,
        cover_genus,
        nontrivial_power_divisors: power_decompositions(stratum),
    }
}

/// 2-adic valuation of a nonzero integer.
pub(crate) fn v2(n: i64) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

/// A stratum is of parity type when the canonical cover has only even-order
/// singularities: v2(m_i) != v2(k) for every entry.
pub fn is_parity_type(stratum: &Stratum) -> bool {
    let vk = v2(stratum.k() as i64);
    stratum.orders().iter().all(|&m| v2(m) != vk)
}

/// First entry violating parity type, if any.
pub(crate) fn parity_type_violation(k: u64, orders: &[i64]) -> Result<()> {
    let vk = v2(k as i64);
    match orders.iter().find(|&&m| v2(m) == vk) {
        Some(&entry) => Err(crate::Error::NotParityType { entry, k }),
        None => Ok(()),
    }
}
