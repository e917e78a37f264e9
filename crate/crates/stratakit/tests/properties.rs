//! Property tests for the structural invariants: canonicalization,
//! Riemann-Hurwitz bookkeeping, the arithmetic of the counting function n_k,
//! genus-0 parity as a function of residues, and rewrite-rule involutions.

use proptest::prelude::*;

use stratakit::cover::{cover_profile, is_parity_type};
use stratakit::oplus::{apply_rule, oplus_apply, OplusSequence, OplusState, RewriteRule};
use stratakit::parity::{genus0_parity, nk};
use stratakit::strata_core::{power_decompositions, validate_stratum, Signature};

fn nonzero_entry() -> impl Strategy<Value = i64> {
    (-24i64..=24).prop_filter("nonzero", |&m| m != 0)
}

fn odd_k() -> impl Strategy<Value = u64> {
    (1u64..=49).prop_map(|i| 2 * i + 1)
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent_and_permutation_invariant(
        orders in proptest::collection::vec(nonzero_entry(), 1..7).prop_shuffle(),
        k in 1u64..=8,
    ) {
        if let Ok(sig) = Signature::new(k, &orders) {
            // idempotent
            let again = Signature::new(k, sig.orders()).unwrap();
            prop_assert_eq!(&again, &sig);
            // permutation invariant
            let mut reversed = orders.clone();
            reversed.reverse();
            prop_assert_eq!(Signature::new(k, &reversed).unwrap(), sig);
        }
    }

    #[test]
    fn validated_strata_satisfy_the_partition_relation(
        orders in proptest::collection::vec(nonzero_entry(), 1..7),
        k in 1u64..=8,
    ) {
        if let Ok(s) = validate_stratum(k, &orders) {
            prop_assert_eq!(s.signature().sum(), k as i64 * (2 * s.genus() as i64 - 2));
        }
    }

    #[test]
    fn power_divisor_lists_are_divisor_closed(
        orders in proptest::collection::vec((1i64..=4).prop_map(|e| 6 * e), 1..5),
        k in 1u64..=12,
    ) {
        // entries divisible by 6 make nontrivial divisor lists common
        if let Ok(s) = validate_stratum(k, &orders) {
            let ds = power_decompositions(&s);
            for &d in &ds {
                for e in 2..d {
                    if d % e == 0 {
                        prop_assert!(ds.contains(&e));
                    }
                }
            }
        }
    }

    #[test]
    fn riemann_hurwitz_degree_identity(
        orders in proptest::collection::vec(nonzero_entry(), 1..7),
        k in 1u64..=8,
    ) {
        if let Ok(s) = validate_stratum(k, &orders) {
            let p = cover_profile(&s);
            let degree: i64 = p.locals.iter().map(|l| l.r as i64 * l.m_hat).sum();
            prop_assert_eq!(degree, 2 * p.cover_genus - 2);
            if p.nontrivial_power_divisors.is_empty() {
                prop_assert!(p.cover_genus >= 0);
            }
            // for odd k, parity type means all orders even
            if k % 2 == 1 {
                prop_assert_eq!(
                    is_parity_type(&s),
                    s.orders().iter().all(|m| m % 2 == 0)
                );
            }
        }
    }

    #[test]
    fn nk_is_invariant_under_entry_shifts_by_k(
        k in odd_k(),
        mu in proptest::collection::vec(nonzero_entry(), 1..6),
        idx in 0usize..6,
        up in proptest::bool::ANY,
    ) {
        let idx = idx % mu.len();
        let mut shifted = mu.clone();
        shifted[idx] += if up { k as i64 } else { -(k as i64) };
        prop_assume!(shifted[idx] != 0);
        prop_assert_eq!(nk(k, &shifted).unwrap(), nk(k, &mu).unwrap());
    }

    #[test]
    fn nk_is_additive_over_concatenation(
        k in odd_k(),
        a in proptest::collection::vec(nonzero_entry(), 0..4),
        b in proptest::collection::vec(nonzero_entry(), 1..4),
    ) {
        let mut joined = a.clone();
        joined.extend(&b);
        prop_assert_eq!(
            nk(k, &joined).unwrap(),
            nk(k, &a).unwrap() + nk(k, &b).unwrap()
        );
    }

    #[test]
    fn genus0_parity_depends_only_on_residues(
        k in (1u64..=9).prop_map(|i| 2 * i + 1),
        half in proptest::collection::vec((-20i64..=20).prop_filter("nonzero", |&m| m != 0), 2..5),
        i in 0usize..5,
        j in 0usize..5,
    ) {
        // complete the half-signature to sum -k, then shift m_i by +k and
        // m_j by -k: the two genus-0 strata must have equal parity bits
        let mut half = half;
        let ki = k as i64;
        let last = -ki - half.iter().sum::<i64>();
        prop_assume!(last != 0);
        half.push(last);
        let n = half.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut shifted = half.clone();
        shifted[i] += ki;
        shifted[j] -= ki;
        prop_assume!(shifted[i] != 0 && shifted[j] != 0);

        let orders: Vec<i64> = half.iter().map(|&m| 2 * m).collect();
        let orders_shifted: Vec<i64> = shifted.iter().map(|&m| 2 * m).collect();
        let s = validate_stratum(k, &orders).unwrap();
        let t = validate_stratum(k, &orders_shifted).unwrap();
        prop_assert_eq!(s.genus(), 0);
        prop_assert_eq!(t.genus(), 0);
        prop_assert_eq!(
            genus0_parity(&s).unwrap().bit,
            genus0_parity(&t).unwrap().bit
        );
    }

    #[test]
    fn reflect_is_an_involution_and_rules_stay_in_class(
        zero in -1i64..=3,
        params_seed in proptest::collection::vec(1i64..=64, 1..5),
    ) {
        let k = 2u64;
        let pole = -(2 * k as i64 + zero);
        let base = OplusState::new(k, zero, &[pole], "prop", false).unwrap();
        // fold the seed into admissible parameters position by position
        let mut params = Vec::new();
        let mut state = base.clone();
        for s in params_seed {
            let hi = state.zero_order() + 2 * k as i64 - 1;
            let s = 1 + (s - 1) % hi;
            params.push(s);
            state = oplus_apply(&state, s).unwrap();
        }
        let seq = OplusSequence::new(base, &params).unwrap();
        for i in 0..params.len() {
            let r = apply_rule(&seq, i, RewriteRule::Reflect).unwrap();
            let back = apply_rule(&r, i, RewriteRule::Reflect).unwrap();
            prop_assert_eq!(back.params(), seq.params());
        }
        for i in 0..params.len().saturating_sub(1) {
            if let Ok(r) = apply_rule(&seq, i, RewriteRule::Commute) {
                let back = apply_rule(&r, i, RewriteRule::Commute).unwrap();
                prop_assert_eq!(back.params(), seq.params());
            }
            if let Ok(r) = apply_rule(&seq, i, RewriteRule::Shift) {
                if let Ok(rr) = apply_rule(&r, i, RewriteRule::Shift) {
                    prop_assert_eq!(rr.params(), seq.params());
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn signature_text_round_trips(
        orders in proptest::collection::vec(nonzero_entry(), 1..7),
        k in 1u64..=8,
    ) {
        if let Ok(sig) = Signature::new(k, &orders) {
            prop_assert_eq!(Signature::parse(k, &sig.text()).unwrap(), sig);
        }
    }
}
