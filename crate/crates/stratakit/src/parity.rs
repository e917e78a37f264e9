//! Spin parities of k-differentials.
//!
//! For a stratum of parity type the canonical cover carries an abelian
//! differential with even singularity orders only, and the parity of the
//! half-canonical divisor is a deformation invariant. The computable routes
//! implemented here:
//!
//! * k = 2: the count formula (n+ - n-)/4 mod 2 over the odd orders mod 4;
//! * k even: reduce through the intermediate canonical d-cover (k = 2d) to a
//!   quadratic signature and apply the k = 2 formula;
//! * k odd, genus 0: the counting function `n_k` over the prime factors of k
//!   lying in residue classes ±3 mod 8;
//! * k odd, genus 1: `n_k` plus the torsion number d, via bit = n_k + d + 1;
//! * gluing: parities add with multiplicity when two differentials are glued
//!   at a singularity and smoothed.
//!
//! Odd-k values in genus 0 and 1 are conditional on the pair-count congruence
//! unless forced by a special case or confirmed through the brute-force
//! oracle for every odd divisor of k (see [`crate::verified`]).

use serde::Serialize;

use crate::cover::parity_type_violation;
use crate::error::{Error, Result};
use crate::strata_core::{gcd_u64, Stratum};
use crate::verified;

/// A parity value together with its epistemic status: `conditional` is true
/// exactly when the value was derived through the odd-k genus-0/1 formulas
/// for a k that has not been oracle-confirmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Parity {
    pub bit: ParityBit,
    pub conditional: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityBit {
    Even,
    Odd,
}

impl ParityBit {
    pub fn from_u64(n: u64) -> Self {
        if n.is_multiple_of(2) {
            ParityBit::Even
        } else {
            ParityBit::Odd
        }
    }

    pub fn as_u64(self) -> u64 {
        match self {
            ParityBit::Even => 0,
            ParityBit::Odd => 1,
        }
    }
}

impl Parity {
    pub fn unconditional(bit: ParityBit) -> Self {
        Parity { bit, conditional: false }
    }
}

impl std::fmt::Display for ParityBit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParityBit::Even => write!(f, "even"),
            ParityBit::Odd => write!(f, "odd"),
        }
    }
}

/// Odd primes split by the residue of floor((p+1)/4): class P for p = ±1 and
/// class Q for p = ±3 mod 8. Only Q-class primes contribute to `n_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeClass {
    pub prime: u64,
    pub class: PQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PQ {
    P,
    Q,
}

/// Classifies an odd prime: P for p = ±1 (mod 8), Q for p = ±3 (mod 8).
pub fn classify_prime(p: u64) -> Result<PrimeClass> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime { n: p });
    }
    let class = match p % 8 {
        1 | 7 => PQ::P,
        3 | 5 => PQ::Q,
        _ => unreachable!("odd prime mod 8"),
    };
    Ok(PrimeClass { prime: p, class })
}

// --- factorization -------------------------------------------------------

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Prime factorization of n > 1 as (prime, exponent) pairs, ascending.
/// Trial division handles every k a sweep will see; Pollard rho picks up the
/// rare large composite remainder.
pub(crate) fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut p = 7u64;
    while p * p <= n && p < 1_000_000 {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if n > 1 {
        let mut rest = vec![n];
        while let Some(m) = rest.pop() {
            if is_prime(m) {
                match out.iter_mut().find(|(p, _)| *p == m) {
                    Some((_, e)) => *e += 1,
                    None => out.push((m, 1)),
                }
            } else {
                let d = pollard_rho(m);
                rest.push(d);
                rest.push(m / d);
            }
        }
    }
    out.sort_unstable();
    out
}

fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Q-class prime factors of odd k with their exponents in k.
pub fn q_class_primes(k: u64) -> Result<Vec<(u64, u32)>> {
    if k.is_multiple_of(2) {
        return Err(Error::KEven { k });
    }
    if k == 1 {
        return Ok(Vec::new());
    }
    Ok(factorize(k)
        .into_iter()
        .filter(|&(p, _)| matches!(p % 8, 3 | 5))
        .collect())
}

fn vq(q: u64, m: u64) -> u32 {
    debug_assert!(m != 0);
    let mut m = m;
    let mut e = 0;
    while m.is_multiple_of(q) {
        m /= q;
        e += 1;
    }
    e
}

/// nu_q(m) = sum over Q-class primes q of k of min(v_q(m), v_q(k)).
fn nu_q_underline(qs: &[(u64, u32)], m: i64) -> u32 {
    qs.iter().map(|&(q, e)| vq(q, m.unsigned_abs()).min(e)).sum()
}

/// The counting function n_k: the number of entries m_i of mu with
/// nu_q(m_i) != nu_q(k) (mod 2). Requires k odd; mu here is a half-signature
/// (the stratum under discussion is 2 mu), but the count itself puts no
/// partition constraint on the entries.
pub fn nk(k: u64, mu: &[i64]) -> Result<u64> {
    if k.is_multiple_of(2) {
        return Err(Error::KEven { k });
    }
    if mu.contains(&0) {
        return Err(Error::ZeroEntry);
    }
    let qs = q_class_primes(k)?;
    let vk: u32 = qs.iter().map(|&(_, e)| e).sum();
    Ok(mu
        .iter()
        .filter(|&&m| (nu_q_underline(&qs, m) % 2) != (vk % 2))
        .count() as u64)
}

// --- parity formulas ------------------------------------------------------

/// Quadratic parity for a parity-type list of orders (k = 2): with n+ the
/// number of entries = 1 and n- the number = 3 (mod 4), the parity is
/// (n+ - n-)/4 mod 2. The difference is always divisible by 4 for a valid
/// quadratic signature.
pub fn quadratic_parity(mu: &[i64]) -> Result<Parity> {
    parity_type_violation(2, mu)?;
    let n_plus = mu.iter().filter(|&&m| m.rem_euclid(4) == 1).count() as i64;
    let n_minus = mu.iter().filter(|&&m| m.rem_euclid(4) == 3).count() as i64;
    let diff = n_plus - n_minus;
    debug_assert_eq!(diff.rem_euclid(4), 0, "odd orders of a quadratic signature balance mod 4");
    let bit = ParityBit::from_u64((diff / 4).rem_euclid(2) as u64);
    Ok(Parity::unconditional(bit))
}

/// Parity of a parity-type stratum for even k = 2d: each order m descends
/// through the intermediate canonical d-cover to gcd(m, d) quadratic
/// singularities of order (m + k)/gcd(m, d) - 2, and the quadratic formula
/// applies to the resulting list. Unconditional.
pub fn even_k_parity(stratum: &Stratum) -> Result<Parity> {
    let k = stratum.k();
    if !k.is_multiple_of(2) {
        return Err(Error::KOdd { k });
    }
    parity_type_violation(k, stratum.orders())?;
    let d = k / 2;
    let mut quad = Vec::new();
    for &m in stratum.orders() {
        let r = gcd_u64(m.unsigned_abs(), d);
        let q = (m + k as i64) / r as i64 - 2;
        for _ in 0..r {
            quad.push(q);
        }
    }
    quadratic_parity(&quad)
}

/// True when the odd-k genus-0/1 parity of this half-signature is forced
/// without the pair-count congruence: every entry divisible by k (a k-th
/// power of an abelian differential), or a three-entry signature with one
/// entry divisible by k.
fn unconditional_odd_k(k: u64, mu_half: &[i64]) -> bool {
    let k = k as i64;
    if mu_half.iter().all(|&m| m % k == 0) {
        return true;
    }
    mu_half.len() == 3 && mu_half.iter().any(|&m| m % k == 0)
}

/// Genus-0 parity of a parity-type stratum. For even k this delegates to
/// [`even_k_parity`]; for odd k the orders are (2 m_1, ..., 2 m_n) and the
/// bit is n_k(m_1, ..., m_n) mod 2, conditional unless forced or k is
/// oracle-confirmed.
pub fn genus0_parity(stratum: &Stratum) -> Result<Parity> {
    if stratum.genus() != 0 {
        return Err(Error::WrongGenus { expected: 0, found: stratum.genus() });
    }
    let k = stratum.k();
    if k.is_multiple_of(2) {
        return even_k_parity(stratum);
    }
    parity_type_violation(k, stratum.orders())?;
    // parity type for odd k means every order is even
    let mu_half: Vec<i64> = stratum.orders().iter().map(|&m| m / 2).collect();
    let bit = ParityBit::from_u64(nk(k, &mu_half)?);
    let conditional = !(unconditional_odd_k(k, &mu_half) || verified::is_verified(k));
    Ok(Parity { bit, conditional })
}

/// Valid torsion numbers of the genus-1 stratum with the given orders:
/// positive divisors of gcd(mu), except d = n for mu = (n, -n).
pub(crate) fn torsion_numbers(orders: &[i64]) -> Vec<u64> {
    let g = orders.iter().fold(0u64, |acc, &m| gcd_u64(acc, m.unsigned_abs()));
    let excluded = match orders {
        [a, b] if *a == -*b => Some(a.unsigned_abs()),
        _ => None,
    };
    (1..=g)
        .filter(|d| g % d == 0)
        .filter(|d| Some(*d) != excluded)
        .collect()
}

/// Genus-1 parity of the component with torsion number d of the parity-type
/// stratum (2 mu) for odd k: bit = n_k(mu) + d + 1 (mod 2). For mu = (m, -m)
/// the count vanishes mod 2 and the value d + 1 is unconditional.
pub fn genus1_parity(k: u64, mu_half: &[i64], d: u64) -> Result<Parity> {
    if k.is_multiple_of(2) {
        return Err(Error::KEven { k });
    }
    let orders: Vec<i64> = mu_half.iter().map(|&m| 2 * m).collect();
    let stratum = crate::strata_core::validate_stratum(k, &orders)?;
    if stratum.genus() != 1 {
        return Err(Error::WrongGenus { expected: 1, found: stratum.genus() });
    }
    if !torsion_numbers(&orders).contains(&d) {
        return Err(Error::InvalidTorsion { d });
    }
    let count = nk(k, mu_half)?;
    let bit = ParityBit::from_u64(count + d + 1);
    let two_entry = matches!(mu_half, [a, b] if *a == -*b);
    let conditional =
        !(two_entry || unconditional_odd_k(k, mu_half) || verified::is_verified(k));
    Ok(Parity { bit, conditional })
}

/// Gluing rule: smoothing a two-component differential with multiplicities
/// d0, d1 and parities phi0, phi1 yields parity d0 phi0 + d1 phi1 (mod 2).
pub fn glue_parity(d0: u64, phi0: ParityBit, d1: u64, phi1: ParityBit) -> ParityBit {
    ParityBit::from_u64(d0 * phi0.as_u64() + d1 * phi1.as_u64())
}
