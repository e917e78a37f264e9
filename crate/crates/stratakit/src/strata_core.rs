//! Signatures and strata of k-differentials.
//!
//! A signature is a finite multiset of nonzero integer singularity orders in
//! the analytic convention: a pole of order m is stored as the entry -m. A
//! stratum is a signature together with the genus forced by the partition
//! condition sum(orders) = k(2g - 2).

use serde::Serialize;

use crate::error::{Error, Result};

/// Bound on |order| and k keeping every downstream product (cover degrees,
/// lattice reductions, rewrite ranges) comfortably inside i64.
pub(crate) const MAX_MAGNITUDE: i64 = 1 << 24;

pub(crate) fn check_magnitude(value: i64, what: &str) -> Result<()> {
    if value.abs() > MAX_MAGNITUDE {
        return Err(Error::PreconditionViolation {
            what: format!("{what} = {value} exceeds the supported magnitude {MAX_MAGNITUDE}"),
        });
    }
    Ok(())
}

/// Multiset of nonzero singularity orders for a fixed differential order k.
///
/// Canonical form keeps the orders sorted in non-increasing order, so two
/// signatures compare equal exactly when they are equal as multisets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    orders: Vec<i64>,
    k: u64,
}

impl Signature {
    /// Builds a canonical signature, rejecting zero entries and sums not
    /// divisible by 2k.
    pub fn new(k: u64, orders: &[i64]) -> Result<Self> {
        if k == 0 {
            return Err(Error::KZero);
        }
        check_magnitude(k as i64, "k")?;
        if orders.is_empty() {
            return Err(Error::EmptyOrders);
        }
        if orders.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        for &m in orders {
            check_magnitude(m, "order")?;
        }
        let sum: i64 = orders.iter().sum();
        let two_k = 2 * k as i64;
        if sum.rem_euclid(two_k) != 0 {
            return Err(Error::NotPartition { sum, two_k });
        }
        let mut orders = orders.to_vec();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Signature { orders, k })
    }

    /// Parses the comma-separated text form, e.g. `"12,-8"`. Whitespace is
    /// ignored.
    pub fn parse(k: u64, text: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let m: i64 = piece.parse().map_err(|e| Error::ParseSignature {
                text: text.to_owned(),
                what: format!("{piece:?}: {e}"),
            })?;
            orders.push(m);
        }
        Signature::new(k, &orders)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Orders in canonical (non-increasing) form.
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.orders.iter().sum()
    }

    /// Analytic zeros: the positive orders, in non-increasing order.
    pub fn zeros(&self) -> Vec<i64> {
        self.orders.iter().copied().filter(|&m| m > 0).collect()
    }

    /// Analytic pole orders as positive integers l (entry -l), ascending in l.
    pub fn pole_orders(&self) -> Vec<i64> {
        let mut ls: Vec<i64> = self.orders.iter().copied().filter(|&m| m < 0).map(|m| -m).collect();
        ls.sort_unstable();
        ls
    }

    /// A metric pole is a singularity of order <= -k.
    pub fn has_metric_pole(&self) -> bool {
        self.orders.iter().any(|&m| m <= -(self.k as i64))
    }

    /// gcd of the absolute values of all entries.
    pub fn gcd(&self) -> u64 {
        signature_gcd(self)
    }

    /// Comma-separated canonical text form.
    pub fn text(&self) -> String {
        let parts: Vec<String> = self.orders.iter().map(|m| m.to_string()).collect();
        parts.join(",")
    }
}

/// A validated (k, genus, signature) triple with sum(orders) = k(2g - 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Stratum {
    signature: Signature,
    genus: u32,
}

impl Stratum {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn k(&self) -> u64 {
        self.signature.k()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn orders(&self) -> &[i64] {
        self.signature.orders()
    }
}

/// Validates orders against k and computes the genus from the partition
/// condition: genus = sum / (2k) + 1.
///
/// Zero-order entries are rejected; an ordinary marked point changes nothing
/// about the component structure and is never stored.
pub fn validate_stratum(k: u64, orders: &[i64]) -> Result<Stratum> {
    let signature = Signature::new(k, orders)?;
    let sum = signature.sum();
    let g = sum / (2 * k as i64) + 1;
    if g < 0 {
        return Err(Error::NegativeGenus { sum });
    }
    Ok(Stratum { signature, genus: g as u32 })
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

/// gcd of the absolute values of all signature entries.
pub fn signature_gcd(sig: &Signature) -> u64 {
    sig.orders().iter().fold(0u64, |acc, &m| gcd_u64(acc, m.unsigned_abs()))
}

/// All d > 1 dividing k and every entry. Each such d marks the non-primitive
/// sublocus of d-th powers of (k/d)-differentials of signature mu/d. Sorted
/// ascending; closed under divisors > 1.
pub fn power_decompositions(stratum: &Stratum) -> Vec<u64> {
    let g = gcd_u64(signature_gcd(stratum.signature()), stratum.k());
    let mut out: Vec<u64> = (2..=g).filter(|d| g.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// True when the stratum carries only powers of lower-order differentials for
/// no d > 1, i.e. gcd(orders, k) = 1.
pub fn is_primitive_signature(stratum: &Stratum) -> bool {
    power_decompositions(stratum).is_empty()
}
