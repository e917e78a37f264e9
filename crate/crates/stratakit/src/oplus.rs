//! The bubbling algebra.
//!
//! Bubbling a handle at a designated metric zero of order n adds 2k to the
//! order and raises the genus by one; the operation is indexed by an angle
//! parameter s with 1 <= s <= n + 2k - 1. Sequences of bubbling parameters
//! denote connected components, and four rewrite rules let one sequence be
//! transformed into another denoting the same component:
//!
//! * reflect:  s            -> n + 2k - s          (always);
//! * commute:  s1, s2       -> s2, s1              (s1, s2 <= n + 2k - 1 and
//!   s1 + s2 < n + 3k);
//! * shift:    s1, s2       -> s2 - k, s1 + k      (s1 <= n + k - 1 and
//!   k + 1 <= s2 <= n + 2k - 1);
//! * slide:    s1, s2       -> s2 - 2k, s1         (s2 - s1 >= 2k).
//!
//! Here n is the zero order entering the first rewritten position. On top of
//! these, for k = 2 a handful of identities proved by explicit degenerations
//! are encoded as axioms applicable to the first two parameters over their
//! exact base strata. Normalization explores the whole rewrite class by
//! breadth-first search with memoization and reports the lexicographically
//! least parameter vector as canonical; no confluence assumption is made.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::strata_core::gcd_u64;

/// A connected component with a designated metric zero, the state bubbling
/// operations act on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OplusState {
    k: u64,
    genus: u32,
    zero_order: i64,
    other_orders: Vec<i64>,
    base_label: String,
    holomorphic_power: bool,
}

impl OplusState {
    /// Validates the state. The designated zero must be metric
    /// (order > -k); order zero is allowed and means bubbling at an ordinary
    /// point. Genus is derived from the order sum. A state flagged as the
    /// k-th power of a holomorphic differential must have all orders
    /// nonnegative and divisible by k.
    pub fn new(
        k: u64,
        zero_order: i64,
        other_orders: &[i64],
        base_label: &str,
        holomorphic_power: bool,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::KZero);
        }
        crate::strata_core::check_magnitude(k as i64, "k")?;
        crate::strata_core::check_magnitude(zero_order, "zero order")?;
        for &m in other_orders {
            crate::strata_core::check_magnitude(m, "order")?;
        }
        let ki = k as i64;
        if zero_order <= -ki {
            return Err(Error::RangeViolation {
                what: format!("designated zero order {zero_order} is not metric (> -{k})"),
            });
        }
        if other_orders.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        let sum = zero_order + other_orders.iter().sum::<i64>();
        if sum.rem_euclid(2 * ki) != 0 {
            return Err(Error::NotPartition { sum, two_k: 2 * ki });
        }
        let g = sum / (2 * ki) + 1;
        if g < 0 {
            return Err(Error::NegativeGenus { sum });
        }
        if holomorphic_power {
            let ok = g >= 1
                && zero_order >= 0
                && zero_order % ki == 0
                && other_orders.iter().all(|&m| m > 0 && m % ki == 0);
            if !ok {
                return Err(Error::PreconditionViolation {
                    what: "a holomorphic k-th power needs genus >= 1 and nonnegative orders divisible by k"
                        .into(),
                });
            }
        }
        let mut other_orders = other_orders.to_vec();
        other_orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(OplusState {
            k,
            genus: g as u32,
            zero_order,
            other_orders,
            base_label: base_label.to_owned(),
            holomorphic_power,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn zero_order(&self) -> i64 {
        self.zero_order
    }

    pub fn other_orders(&self) -> &[i64] {
        &self.other_orders
    }

    pub fn base_label(&self) -> &str {
        &self.base_label
    }

    pub fn is_holomorphic_power(&self) -> bool {
        self.holomorphic_power
    }

    fn check_param(&self, s: i64) -> Result<()> {
        let ki = self.k as i64;
        let hi = self.zero_order + 2 * ki - 1;
        if s < 1 || s > hi {
            return Err(Error::RangeViolation {
                what: format!("s = {s} outside [1, {hi}] at zero order {}", self.zero_order),
            });
        }
        if self.holomorphic_power {
            if s % ki != 0 {
                return Err(Error::NonRealizable {
                    what: format!("bubbling a holomorphic k-th power needs k | s, got s = {s}"),
                });
            }
            if s > self.zero_order + ki {
                return Err(Error::NonRealizable {
                    what: format!(
                        "bubbling a holomorphic k-th power needs s <= {}, got s = {s}",
                        self.zero_order + ki
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Bubbling: adds a handle at the designated zero with angle parameter s.
pub fn oplus_apply(state: &OplusState, s: i64) -> Result<OplusState> {
    state.check_param(s)?;
    Ok(OplusState {
        k: state.k,
        genus: state.genus + 1,
        zero_order: state.zero_order + 2 * state.k as i64,
        other_orders: state.other_orders.clone(),
        base_label: state.base_label.clone(),
        holomorphic_power: state.holomorphic_power,
    })
}

/// Breaks the designated zero into metric zeros of the given orders. The
/// only non-realizable case is splitting a holomorphic k-th power into
/// exactly two zeros with neither order divisible by k.
pub fn break_zero(state: &OplusState, parts: &[i64]) -> Result<Vec<i64>> {
    if parts.is_empty() {
        return Err(Error::RangeViolation { what: "no parts given".into() });
    }
    let ki = state.k as i64;
    for &p in parts {
        if p <= -ki {
            return Err(Error::RangeViolation {
                what: format!("part {p} is not a metric zero (> -{})", state.k),
            });
        }
    }
    let sum: i64 = parts.iter().sum();
    if sum != state.zero_order {
        return Err(Error::RangeViolation {
            what: format!("parts sum to {sum}, expected {}", state.zero_order),
        });
    }
    if state.holomorphic_power && parts.len() == 2 && parts.iter().all(|&p| p % ki != 0) {
        return Err(Error::NonRealizable {
            what: "a zero of a holomorphic k-th power cannot break into two zeros of order not divisible by k"
                .into(),
        });
    }
    Ok(parts.to_vec())
}

/// A base state plus an ordered list of bubbling parameters, validated
/// stepwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OplusSequence {
    base: OplusState,
    params: Vec<i64>,
}

impl OplusSequence {
    pub fn new(base: OplusState, params: &[i64]) -> Result<Self> {
        let mut state = base.clone();
        for &s in params {
            state = oplus_apply(&state, s)?;
        }
        Ok(OplusSequence { base, params: params.to_vec() })
    }

    pub fn base(&self) -> &OplusState {
        &self.base
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    /// State after applying the whole sequence.
    pub fn final_state(&self) -> OplusState {
        let mut state = self.base.clone();
        for &s in &self.params {
            state = oplus_apply(&state, s).expect("sequence was validated on construction");
        }
        state
    }

    /// Zero order entering position i.
    fn order_at(&self, i: usize) -> i64 {
        self.base.zero_order + 2 * self.base.k as i64 * i as i64
    }

    fn with_params(&self, params: Vec<i64>) -> Result<OplusSequence> {
        OplusSequence::new(self.base.clone(), &params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteRule {
    Reflect,
    Commute,
    Shift,
    Slide,
}

impl RewriteRule {
    fn name(self) -> &'static str {
        match self {
            RewriteRule::Reflect => "reflect",
            RewriteRule::Commute => "commute",
            RewriteRule::Shift => "shift",
            RewriteRule::Slide => "slide",
        }
    }
}

/// Applies one rewrite rule at position i (and i + 1 for the two-parameter
/// rules). The result denotes the same connected component.
pub fn apply_rule(seq: &OplusSequence, i: usize, rule: RewriteRule) -> Result<OplusSequence> {
    let k = seq.base.k as i64;
    let len = seq.params.len();
    let need = if rule == RewriteRule::Reflect { i + 1 } else { i + 2 };
    if len < need {
        return Err(Error::RuleInapplicable {
            rule: rule.name(),
            violated: format!("position {i} needs {need} parameters, sequence has {len}"),
        });
    }
    let n = seq.order_at(i);
    let mut params = seq.params.clone();
    match rule {
        RewriteRule::Reflect => {
            params[i] = n + 2 * k - params[i];
        }
        RewriteRule::Commute => {
            let (s1, s2) = (params[i], params[i + 1]);
            if s2 > n + 2 * k - 1 {
                return Err(Error::RuleInapplicable {
                    rule: "commute",
                    violated: format!("s2 = {s2} exceeds n + 2k - 1 = {}", n + 2 * k - 1),
                });
            }
            if s1 + s2 >= n + 3 * k {
                return Err(Error::RuleInapplicable {
                    rule: "commute",
                    violated: format!("s1 + s2 = {} not below n + 3k = {}", s1 + s2, n + 3 * k),
                });
            }
            params.swap(i, i + 1);
        }
        RewriteRule::Shift => {
            let (s1, s2) = (params[i], params[i + 1]);
            if s1 > n + k - 1 {
                return Err(Error::RuleInapplicable {
                    rule: "shift",
                    violated: format!("s1 = {s1} exceeds n + k - 1 = {}", n + k - 1),
                });
            }
            if s2 < k + 1 || s2 > n + 2 * k - 1 {
                return Err(Error::RuleInapplicable {
                    rule: "shift",
                    violated: format!("s2 = {s2} outside [k + 1, n + 2k - 1] = [{}, {}]", k + 1, n + 2 * k - 1),
                });
            }
            params[i] = s2 - k;
            params[i + 1] = s1 + k;
        }
        RewriteRule::Slide => {
            let (s1, s2) = (params[i], params[i + 1]);
            if s2 - s1 < 2 * k {
                return Err(Error::RuleInapplicable {
                    rule: "slide",
                    violated: format!("s2 - s1 = {} below 2k = {}", s2 - s1, 2 * k),
                });
            }
            params[i] = s2 - 2 * k;
            params[i + 1] = s1;
        }
    }
    seq.with_params(params).map_err(|e| Error::RuleInapplicable {
        rule: rule.name(),
        violated: format!("result violates sequence constraints: {e}"),
    })
}

/// Balanced parameter pairs are the ones the rewrite rules cannot simplify:
/// (s1, s2) = ((n + 2k)/2, (n + 4k)/2) for n > 0 even, and the window
/// n + 2k <= s2 <= floor((n + 4k)/2), 1 <= s1 <= floor((n + 2k)/2) for
/// -k < n <= 0.
pub fn is_balanced(k: u64, n: i64, s1: i64, s2: i64) -> bool {
    let k = k as i64;
    if n > 0 && n % 2 == 0 {
        return (s1, s2) == ((n + 2 * k) / 2, (n + 4 * k) / 2);
    }
    if n > -k && n <= 0 {
        return (n + 2 * k) <= s2
            && s2 <= (n + 4 * k).div_euclid(2)
            && 1 <= s1
            && s1 <= (n + 2 * k).div_euclid(2);
    }
    false
}

/// Context for the gcd equivalences identifying bubbling parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdContext {
    /// A genus-0 base (n, -l_1, ..., -l_s): parameters with the same
    /// gcd(s, l_1, ..., l_s) land in the same component.
    GenusZero { pole_orders: Vec<u64> },
    /// A component with at least one pole and a tracked zero of order n:
    /// parameters with the same gcd(s, n + 2k) land in the same component.
    HigherGenus { k: u64, zero_order: i64, pole_count: usize },
}

/// Whether bubbling with s1 and with s2 lands in the same component, by the
/// gcd criteria. `true` is a guarantee; `false` only means the criterion is
/// silent.
pub fn gcd_equivalent(ctx: &GcdContext, s1: u64, s2: u64) -> Result<bool> {
    match ctx {
        GcdContext::GenusZero { pole_orders } => {
            if pole_orders.is_empty() {
                return Err(Error::PreconditionViolation {
                    what: "genus-0 gcd equivalence needs at least one pole".into(),
                });
            }
            let g = |s: u64| pole_orders.iter().fold(s, |acc, &l| gcd_u64(acc, l));
            Ok(g(s1) == g(s2))
        }
        GcdContext::HigherGenus { k, zero_order, pole_count } => {
            if *pole_count == 0 {
                return Err(Error::PreconditionViolation {
                    what: "the pole form of the gcd equivalence needs at least one pole".into(),
                });
            }
            let modulus = (zero_order + 2 * *k as i64) as u64;
            Ok(gcd_u64(s1, modulus) == gcd_u64(s2, modulus))
        }
    }
}

// --- k = 2 degeneration axioms ----------------------------------------------

fn multiset_eq(a: &[i64], b: &[i64]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Over an all-even genus-0 quadratic base with only poles besides the
/// tracked zero, the leading pairs (1,1), (1,2), (1,3) all land in the same
/// component.
fn axiom_all_even(base: &OplusState) -> bool {
    base.k == 2
        && base.genus == 0
        && base.zero_order >= 0
        && base.zero_order % 2 == 0
        && base.other_orders.iter().all(|&m| m < 0 && m % 2 == 0)
}

/// Over the four exceptional genus-0 quadratic bases with an ordinary point
/// as the tracked zero, (1,1) and (1,4) land in the same component.
fn axiom_exceptional(base: &OplusState) -> bool {
    base.k == 2
        && base.zero_order == 0
        && [
            &[-4][..],
            &[-2, -2][..],
            &[-1, -3][..],
            &[-1, -1, -2][..],
        ]
        .iter()
        .any(|orders| multiset_eq(&base.other_orders, orders))
}

/// Over the genus-1 quadratic base (2, -2), bubbling with 1 and with 2 land
/// in the same component.
fn axiom_torus_2m2(base: &OplusState) -> bool {
    base.k == 2 && base.genus == 1 && base.zero_order == 2 && base.other_orders == [-2]
}

fn axiom_neighbors(base: &OplusState, params: &[i64], out: &mut Vec<Vec<i64>>) {
    if params.len() >= 2 && params[0] == 1 {
        if axiom_all_even(base) && [1, 2, 3].contains(&params[1]) {
            for t in [1, 2, 3] {
                if t != params[1] {
                    let mut p = params.to_vec();
                    p[1] = t;
                    out.push(p);
                }
            }
        }
        if axiom_exceptional(base) && [1, 4].contains(&params[1]) {
            let mut p = params.to_vec();
            p[1] = if params[1] == 1 { 4 } else { 1 };
            out.push(p);
        }
    }
    if !params.is_empty() && axiom_torus_2m2(base) && [1, 2].contains(&params[0]) {
        let mut p = params.to_vec();
        p[0] = if params[0] == 1 { 2 } else { 1 };
        out.push(p);
    }
}

/// Parameter validity at each position, including the holomorphic-power
/// constraints; the fast path used by the search.
fn params_valid(base: &OplusState, params: &[i64]) -> bool {
    let ki = base.k as i64;
    let mut n = base.zero_order;
    for &s in params {
        if s < 1 || s > n + 2 * ki - 1 {
            return false;
        }
        if base.holomorphic_power && (s % ki != 0 || s > n + ki) {
            return false;
        }
        n += 2 * ki;
    }
    true
}

// --- normalization ------------------------------------------------------------

/// The full rewrite class of a sequence together with its canonical (lex
/// least) representative.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub canonical: OplusSequence,
    /// Every parameter vector reachable by the rules and axioms.
    pub class: BTreeSet<Vec<i64>>,
    /// Number of distinct states explored; equals `class.len()` because the
    /// search never revisits a state.
    pub states_visited: usize,
}

impl NormalForm {
    /// Minimal representatives of the class. The rewrite system is not
    /// assumed confluent; the search computes the entire class, over which
    /// the lexicographic minimum is the unique least element.
    pub fn representatives(&self) -> Vec<&Vec<i64>> {
        vec![self.class.iter().next().expect("class contains the start state")]
    }
}

/// Exhaustive breadth-first closure of a sequence under the rewrite rules
/// and the k = 2 axioms. Terminates because all rules preserve length and
/// every parameter stays within its finite validity range; memoization
/// guarantees no state is processed twice.
pub fn normalize(seq: &OplusSequence) -> NormalForm {
    let base = &seq.base;
    let ki = base.k as i64;
    let len = seq.params.len();
    let order_at = |i: usize| base.zero_order + 2 * ki * i as i64;

    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    visited.insert(seq.params.clone());
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    queue.push_back(seq.params.clone());
    let mut processed = 0usize;
    let mut neighbors: Vec<Vec<i64>> = Vec::new();

    while let Some(params) = queue.pop_front() {
        processed += 1;
        neighbors.clear();
        for i in 0..len {
            let n = order_at(i);
            let s = params[i];
            let reflected = n + 2 * ki - s;
            if reflected != s {
                let mut p = params.clone();
                p[i] = reflected;
                neighbors.push(p);
            }
            if i + 1 < len {
                let s2 = params[i + 1];
                if s2 < n + 2 * ki && s + s2 < n + 3 * ki && s != s2 {
                    let mut p = params.clone();
                    p.swap(i, i + 1);
                    neighbors.push(p);
                }
                if s < n + ki && s2 > ki && s2 < n + 2 * ki {
                    let mut p = params.clone();
                    p[i] = s2 - ki;
                    p[i + 1] = s + ki;
                    neighbors.push(p);
                }
                if s2 - s >= 2 * ki {
                    let mut p = params.clone();
                    p[i] = s2 - 2 * ki;
                    p[i + 1] = s;
                    neighbors.push(p);
                }
            }
        }
        axiom_neighbors(base, &params, &mut neighbors);
        for p in neighbors.drain(..) {
            if !visited.contains(&p) && params_valid(base, &p) {
                visited.insert(p.clone());
                queue.push_back(p);
            }
        }
    }
    debug_assert_eq!(processed, visited.len());

    let class: BTreeSet<Vec<i64>> = visited.into_iter().collect();
    let canonical_params = class.iter().next().expect("start state is in the class").clone();
    let canonical = seq.with_params(canonical_params).expect("canonical member is valid");
    NormalForm { canonical, class, states_visited: processed }
}

/// Whether two sequences over the same base denote the same component, as
/// decided by the implemented rules and axioms. `false` means "not derivably
/// equal", not a proof of difference.
pub fn equivalent(a: &OplusSequence, b: &OplusSequence) -> bool {
    a.base == b.base && normalize(a).class.contains(&b.params)
}
