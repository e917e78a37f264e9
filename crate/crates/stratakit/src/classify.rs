//! Connected-component enumeration.
//!
//! The complete answers implemented here: genus 0 (irreducible), genus 1
//! (one component per rotation number), quadratic strata of genus >= 2 with
//! at least one metric pole (the full decision table, cases (1a)-(6)), and
//! the three special cubic strata in genus two. Everything else returns a
//! `Partial` result listing only theorem-backed components: the
//! hyperelliptic component when its shape test fires, and one power locus
//! per admissible power divisor.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::parity::{genus1_parity, genus0_parity, even_k_parity, torsion_numbers, Parity, ParityBit};
use crate::strata_core::{
    gcd_i64, gcd_u64, power_decompositions, validate_stratum, Signature, Stratum,
};
use crate::cover::is_parity_type;

/// Component type tags, matching the labels of the quadratic table plus the
/// genus-1 and power-locus families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Hyperelliptic,
    AbEven,
    AbOdd,
    Ab,
    NonAbNonHyp,
    NonHyp,
    /// Genus-1 component with the given rotation (torsion) number.
    Rotation(u64),
    /// Locus of d-th powers of (k/d)-differentials; open and closed in the
    /// stratum, possibly itself disconnected.
    PowerLocus(u64),
}

impl ComponentKind {
    pub fn label(&self) -> &'static str {
        match self {
            ComponentKind::Hyperelliptic => "hyp",
            ComponentKind::AbEven => "ab-even",
            ComponentKind::AbOdd => "ab-odd",
            ComponentKind::Ab => "ab",
            ComponentKind::NonAbNonHyp => "nonab-nonhyp",
            ComponentKind::NonHyp => "nonhyp",
            ComponentKind::Rotation(_) => "rotation",
            ComponentKind::PowerLocus(_) => "power-locus",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDescriptor {
    pub kind: ComponentKind,
    pub parity: Option<Parity>,
    /// For genus-1 components: whether the component parameterizes primitive
    /// differentials, i.e. gcd(k, d) = 1.
    pub primitive: Option<bool>,
    pub provenance: String,
}

impl ComponentDescriptor {
    fn new(kind: ComponentKind, provenance: &str) -> Self {
        ComponentDescriptor { kind, parity: None, primitive: None, provenance: provenance.into() }
    }

    fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = Some(parity);
        self
    }
}

impl Serialize for ComponentDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", self.kind.label())?;
        match self.kind {
            ComponentKind::Rotation(d) => map.serialize_entry("rotation", &d)?,
            ComponentKind::PowerLocus(d) => map.serialize_entry("power", &d)?,
            _ => {}
        }
        if let Some(p) = &self.parity {
            map.serialize_entry("parity", &p.bit.to_string())?;
            map.serialize_entry("conditional", &p.conditional)?;
        }
        if let Some(prim) = self.primitive {
            map.serialize_entry("primitive", &prim)?;
        }
        map.serialize_entry("provenance", &self.provenance)?;
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Complete,
    Partial,
    OutOfScope,
}

/// The outcome of classifying a stratum. `Complete` results list every
/// component exactly once; `Partial` results list only components whose
/// existence the implemented results guarantee, with notes explaining what
/// stays open.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassificationResult {
    pub status: Status,
    pub components: Vec<ComponentDescriptor>,
    pub notes: Vec<String>,
}

// --- hyperelliptic shapes ---------------------------------------------------

/// The five signature shapes that carry a hyperelliptic component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypShape {
    /// (2m1, 2m2) with one m_i negative, or k not dividing gcd(m1, m2).
    TwoEven,
    /// (2m, l, l) with m or l negative, or k not dividing gcd(m, l).
    EvenPlusPair,
    /// (l1, l1, l2, l2) with some l_i negative, or k not dividing gcd(l1, l2).
    TwoPairs,
    /// (k(2g-2)): the single-singularity stratum.
    SingleZero,
    /// (k(g-1), k(g-1)): two equal orders of half the canonical degree.
    EqualPair,
}

impl HypShape {
    fn provenance(self) -> &'static str {
        match self {
            HypShape::TwoEven => "hyperelliptic shape (2m1, 2m2)",
            HypShape::EvenPlusPair => "hyperelliptic shape (2m, l, l)",
            HypShape::TwoPairs => "hyperelliptic shape (l1, l1, l2, l2)",
            HypShape::SingleZero => "hyperelliptic shape (k(2g-2))",
            HypShape::EqualPair => "hyperelliptic shape (k(g-1), k(g-1))",
        }
    }
}

fn side_condition(k: u64, a: i64, b: i64) -> bool {
    // present when some parameter is negative, or both positive and the
    // ambient k does not divide their gcd (k | gcd forces a k-th power locus
    // of one dimension higher, absorbing the hyperelliptic locus)
    a < 0 || b < 0 || !gcd_i64(a, b).is_multiple_of(k)
}

/// Which shape, if any, gives the stratum a hyperelliptic component. Tries
/// every decomposition of the multiset into even "Weierstrass" entries and
/// conjugate pairs; the first firing shape in declaration order is reported.
pub fn hyperelliptic_shape(stratum: &Stratum) -> Option<HypShape> {
    let k = stratum.k();
    let orders = stratum.orders();
    let g = stratum.genus() as i64;

    if let [a, b] = orders {
        if a % 2 == 0 && b % 2 == 0 && side_condition(k, a / 2, b / 2) {
            return Some(HypShape::TwoEven);
        }
    }
    if let [x, y, z] = orders {
        // pick the conjugate pair (two equal entries), the rest must be even
        for (l, m2) in [(x, (y, z)), (y, (x, z)), (z, (x, y))] {
            let (p, q) = m2;
            if p == q && l % 2 == 0 && side_condition(k, l / 2, *p) {
                return Some(HypShape::EvenPlusPair);
            }
        }
    }
    if let [a, b, c, d] = orders {
        // canonical order makes equal entries adjacent
        if a == b && c == d && side_condition(k, *a, *c) {
            return Some(HypShape::TwoPairs);
        }
    }
    if let [a] = orders {
        debug_assert_eq!(*a, k as i64 * (2 * g - 2));
        return Some(HypShape::SingleZero);
    }
    if let [a, b] = orders {
        if a == b && *a == k as i64 * (g - 1) {
            return Some(HypShape::EqualPair);
        }
    }
    None
}

/// The hyperelliptic component of the stratum, when one exists.
pub fn hyperelliptic_component(stratum: &Stratum) -> Option<ComponentDescriptor> {
    hyperelliptic_shape(stratum)
        .map(|shape| ComponentDescriptor::new(ComponentKind::Hyperelliptic, shape.provenance()))
}

// --- genus 0 and 1 ----------------------------------------------------------

fn classify_genus0(stratum: &Stratum) -> ClassificationResult {
    let kind = match hyperelliptic_shape(stratum) {
        Some(_) => ComponentKind::Hyperelliptic,
        None => ComponentKind::NonHyp,
    };
    let mut comp = ComponentDescriptor::new(kind, "genus-0 stratum, irreducible");
    if is_parity_type(stratum) {
        if let Ok(p) = genus0_parity(stratum) {
            comp.parity = Some(p);
        }
    }
    ClassificationResult { status: Status::Complete, components: vec![comp], notes: vec![] }
}

/// One component per positive divisor d of gcd(mu), excluding d = n for
/// mu = (n, -n). Components of odd-k parity-type strata carry their parity.
pub fn genus1_components(k: u64, sig: &Signature) -> Result<Vec<ComponentDescriptor>> {
    let stratum = validate_stratum(k, sig.orders())?;
    if stratum.genus() != 1 {
        return Err(Error::WrongGenus { expected: 1, found: stratum.genus() });
    }
    let all_even = sig.orders().iter().all(|m| m % 2 == 0);
    let mut out = Vec::new();
    for d in torsion_numbers(sig.orders()) {
        let mut comp = ComponentDescriptor::new(
            ComponentKind::Rotation(d),
            "genus-1 component determined by its rotation number",
        );
        comp.primitive = Some(gcd_u64(k, d) == 1);
        if k % 2 == 1 && all_even {
            let mu_half: Vec<i64> = sig.orders().iter().map(|m| m / 2).collect();
            comp.parity = Some(genus1_parity(k, &mu_half, d)?);
        }
        out.push(comp);
    }
    Ok(out)
}

/// Rotation number produced by bubbling with angle parameter t at the zero of
/// a genus-0 differential with poles l_1..l_s: gcd(t, n, l_1, ..., l_s),
/// where n is the zero order after bubbling. Requires 1 <= t <= n - 1.
pub fn rotation_from_bubbling(
    k: u64,
    t: u64,
    base_zero_order: i64,
    base_pole_orders: &[u64],
) -> Result<u64> {
    let n = base_zero_order + 2 * k as i64;
    let pole_sum: i64 = base_pole_orders.iter().map(|&l| l as i64).sum();
    if base_zero_order - pole_sum != -2 * k as i64 {
        return Err(Error::PreconditionViolation {
            what: format!(
                "base (zero {base_zero_order}, poles {base_pole_orders:?}) is not a genus-0 signature"
            ),
        });
    }
    if t == 0 || (t as i64) > n - 1 {
        return Err(Error::RangeViolation {
            what: format!("t = {t} outside [1, {}]", n - 1),
        });
    }
    let mut g = gcd_u64(t, n as u64);
    for &l in base_pole_orders {
        g = gcd_u64(g, l);
    }
    Ok(g)
}

// --- quadratic strata with a metric pole -----------------------------------

/// Decision-table cases for quadratic strata of genus >= 2 with at least one
/// metric pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadCase {
    C1a,
    C1b,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl std::fmt::Display for QuadCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            QuadCase::C1a => "1a",
            QuadCase::C1b => "1b",
            QuadCase::C2 => "2",
            QuadCase::C3 => "3",
            QuadCase::C4 => "4",
            QuadCase::C5 => "5",
            QuadCase::C6 => "6",
        };
        write!(f, "{s}")
    }
}

fn div4(x: i64) -> bool {
    x % 4 == 0
}

fn is_case_1b(zeros: &[i64], poles: &[i64]) -> bool {
    matches!(
        (zeros, poles),
        ([8], [4]) | ([4, 4], [4]) | ([8], [2, 2]) | ([4, 4], [2, 2])
    )
}

fn is_case_1a(zeros: &[i64], poles: &[i64]) -> bool {
    if is_case_1b(zeros, poles) {
        return false;
    }
    let zeros_ok = match zeros {
        [a] => div4(*a),
        [a, b] => a == b && div4(*a),
        _ => return false,
    };
    let poles_ok = match poles {
        [p] => div4(*p),
        [p, q] => (p == q && div4(*p)) || (*p == 2 && *q == 2),
        _ => return false,
    };
    zeros_ok && poles_ok
}

fn is_case_2(zeros: &[i64], poles: &[i64]) -> bool {
    let all_even = zeros.iter().chain(poles).all(|x| x % 2 == 0);
    if !all_even {
        return false;
    }
    let not_all_mult4 = !(zeros.iter().chain(poles).all(|&x| div4(x)));
    match (zeros, poles) {
        // (2n, 2n, -2, -2) with n odd
        ([a, b], [2, 2]) => a == b && a % 4 == 2,
        ([_a], [p]) => *p >= 4 && not_all_mult4,
        ([a, b], [p]) => a == b && *p >= 4 && not_all_mult4,
        ([_a], [p, q]) => p == q && *p >= 4 && not_all_mult4,
        ([a, b], [p, q]) => a == b && p == q && *p >= 4 && not_all_mult4,
        _ => false,
    }
}

fn is_case_3(zeros: &[i64], poles: &[i64]) -> bool {
    if is_case_1b(zeros, poles) {
        return false;
    }
    let (r, s) = (zeros.len(), poles.len());
    if poles == [2, 2] {
        let zeros_mult4 = zeros.iter().all(|&z| div4(z));
        return zeros_mult4 && (r >= 3 || (r == 2 && zeros[0] != zeros[1]));
    }
    let all_mult4 = zeros.iter().chain(poles).all(|&x| div4(x));
    if !all_mult4 {
        return false;
    }
    match (r, s) {
        _ if r >= 3 || s >= 3 => true,
        (2, 2) => zeros[0] != zeros[1] || poles[0] != poles[1],
        (1, 2) => poles[0] != poles[1],
        (2, 1) => zeros[0] != zeros[1],
        _ => false,
    }
}

fn is_case_4(zeros: &[i64], poles: &[i64]) -> bool {
    match (zeros, poles) {
        // (2n, -l, -l) with l odd
        ([a], [p, q]) => a % 2 == 0 && p == q && p % 2 == 1,
        // (n, n, -2l) with n odd, and (2n, -2) / (2n, 2n, -2)
        ([a, b], [p]) => (a == b && a % 2 == 1 && p % 2 == 0) || (a == b && a % 2 == 0 && *p == 2),
        ([a], [p]) => a % 2 == 0 && *p == 2,
        // (n, n, -l, -l) with n and l not both even
        ([a, b], [p, q]) => a == b && p == q && !(a % 2 == 0 && p % 2 == 0),
        _ => false,
    }
}

fn is_case_5(zeros: &[i64], poles: &[i64]) -> bool {
    let all_even = zeros.iter().chain(poles).all(|x| x % 2 == 0);
    if !all_even {
        return false;
    }
    let not_all_mult4 = !(zeros.iter().chain(poles).all(|&x| div4(x)));
    let (r, s) = (zeros.len(), poles.len());
    if poles == [2, 2] {
        // (2n_1, ..., 2n_r, -2, -2) with n_i not all even
        return !zeros.iter().all(|&z| div4(z));
    }
    if (r >= 3 || s >= 3) && poles != [2] {
        return not_all_mult4;
    }
    match (r, s) {
        (2, 2) => (zeros[0] != zeros[1] || poles[0] != poles[1]) && not_all_mult4,
        (1, 2) => poles[0] != poles[1] && not_all_mult4,
        (2, 1) => zeros[0] != zeros[1] && poles[0] >= 4 && not_all_mult4,
        _ => false,
    }
}

/// Every decision-table case whose literal shape conditions the signature
/// satisfies, in table order and ignoring priority. Used to check that the
/// cases partition the inputs up to the two documented carve-outs.
pub fn matching_quad_cases(stratum: &Stratum) -> Vec<QuadCase> {
    let zeros = stratum.signature().zeros();
    let poles = stratum.signature().pole_orders();
    let mut out = Vec::new();
    if is_case_1b(&zeros, &poles) {
        out.push(QuadCase::C1b);
    }
    if is_case_1a(&zeros, &poles) {
        out.push(QuadCase::C1a);
    }
    if is_case_2(&zeros, &poles) {
        out.push(QuadCase::C2);
    }
    if is_case_3(&zeros, &poles) {
        out.push(QuadCase::C3);
    }
    if is_case_4(&zeros, &poles) {
        out.push(QuadCase::C4);
    }
    if is_case_5(&zeros, &poles) {
        out.push(QuadCase::C5);
    }
    if out.is_empty() {
        out.push(QuadCase::C6);
    }
    out
}

fn quad_precondition(stratum: &Stratum) -> Result<()> {
    if stratum.k() != 2 {
        return Err(Error::PreconditionViolation {
            what: format!("quadratic classification needs k = 2, got {}", stratum.k()),
        });
    }
    if stratum.genus() < 2 {
        return Err(Error::PreconditionViolation {
            what: format!("quadratic classification needs genus >= 2, got {}", stratum.genus()),
        });
    }
    if !stratum.signature().has_metric_pole() {
        return Err(Error::PreconditionViolation {
            what: "quadratic classification needs at least one pole of order <= -2".into(),
        });
    }
    Ok(())
}

/// The decision-table case of a quadratic stratum, matched in the fixed
/// priority order (1b), (1a), (2), (3), (4), (5), (6).
pub fn quadratic_case(stratum: &Stratum) -> Result<QuadCase> {
    quad_precondition(stratum)?;
    let zeros = stratum.signature().zeros();
    let poles = stratum.signature().pole_orders();
    let case = if is_case_1b(&zeros, &poles) {
        QuadCase::C1b
    } else if is_case_1a(&zeros, &poles) {
        QuadCase::C1a
    } else if is_case_2(&zeros, &poles) {
        QuadCase::C2
    } else if is_case_3(&zeros, &poles) {
        QuadCase::C3
    } else if is_case_4(&zeros, &poles) {
        QuadCase::C4
    } else if is_case_5(&zeros, &poles) {
        QuadCase::C5
    } else {
        QuadCase::C6
    };
    Ok(case)
}

fn even_parity(conditional: bool) -> Parity {
    Parity { bit: ParityBit::Even, conditional }
}

fn odd_parity(conditional: bool) -> Parity {
    Parity { bit: ParityBit::Odd, conditional }
}

/// Complete classification of a quadratic stratum of genus >= 2 with at
/// least one metric pole. The abelian components carry the theta parity of
/// their square roots; on the (1b) rows the hyperelliptic component carries
/// the parity of the abelian component it coincides with.
pub fn classify_quadratic(stratum: &Stratum) -> Result<ClassificationResult> {
    let case = quadratic_case(stratum)?;
    let prov = |detail: &str| format!("quadratic table case ({case}): {detail}");
    let components = match case {
        QuadCase::C1a => vec![
            ComponentDescriptor::new(ComponentKind::Hyperelliptic, &prov("hyperelliptic")),
            ComponentDescriptor::new(ComponentKind::AbEven, &prov("squares of even theta characteristics"))
                .with_parity(even_parity(false)),
            ComponentDescriptor::new(ComponentKind::AbOdd, &prov("squares of odd theta characteristics"))
                .with_parity(odd_parity(false)),
            ComponentDescriptor::new(ComponentKind::NonAbNonHyp, &prov("primitive non-hyperelliptic")),
        ],
        QuadCase::C1b => {
            // poles (-4): hyp = ab-odd; poles (-2, -2): hyp = ab-even
            let odd_coincidence = stratum.signature().pole_orders() == [4];
            if odd_coincidence {
                vec![
                    ComponentDescriptor::new(
                        ComponentKind::Hyperelliptic,
                        &prov("hyperelliptic, coincides with the ab-odd component"),
                    )
                    .with_parity(odd_parity(false)),
                    ComponentDescriptor::new(ComponentKind::AbEven, &prov("squares of even theta characteristics"))
                        .with_parity(even_parity(false)),
                    ComponentDescriptor::new(ComponentKind::NonAbNonHyp, &prov("primitive non-hyperelliptic")),
                ]
            } else {
                vec![
                    ComponentDescriptor::new(
                        ComponentKind::Hyperelliptic,
                        &prov("hyperelliptic, coincides with the ab-even component"),
                    )
                    .with_parity(even_parity(false)),
                    ComponentDescriptor::new(ComponentKind::AbOdd, &prov("squares of odd theta characteristics"))
                        .with_parity(odd_parity(false)),
                    ComponentDescriptor::new(ComponentKind::NonAbNonHyp, &prov("primitive non-hyperelliptic")),
                ]
            }
        }
        QuadCase::C2 => vec![
            ComponentDescriptor::new(ComponentKind::Hyperelliptic, &prov("hyperelliptic")),
            ComponentDescriptor::new(ComponentKind::Ab, &prov("squares of abelian differentials")),
            ComponentDescriptor::new(ComponentKind::NonAbNonHyp, &prov("primitive non-hyperelliptic")),
        ],
        QuadCase::C3 => vec![
            ComponentDescriptor::new(ComponentKind::AbEven, &prov("squares of even theta characteristics"))
                .with_parity(even_parity(false)),
            ComponentDescriptor::new(ComponentKind::AbOdd, &prov("squares of odd theta characteristics"))
                .with_parity(odd_parity(false)),
            ComponentDescriptor::new(ComponentKind::NonAbNonHyp, &prov("primitive non-hyperelliptic")),
        ],
        QuadCase::C4 => vec![
            ComponentDescriptor::new(ComponentKind::Hyperelliptic, &prov("hyperelliptic")),
            ComponentDescriptor::new(ComponentKind::NonHyp, &prov("non-hyperelliptic")),
        ],
        QuadCase::C5 => vec![
            ComponentDescriptor::new(ComponentKind::Ab, &prov("squares of abelian differentials")),
            ComponentDescriptor::new(ComponentKind::NonAbNonHyp, &prov("primitive non-hyperelliptic")),
        ],
        QuadCase::C6 => vec![ComponentDescriptor::new(
            ComponentKind::NonAbNonHyp,
            &prov("connected"),
        )],
    };
    Ok(ClassificationResult { status: Status::Complete, components, notes: vec![] })
}

// --- special cubic strata in genus two --------------------------------------

/// The three holomorphic parity-type cubic strata in genus two. All parities
/// here are unconditional.
pub fn classify_cubic_g2(stratum: &Stratum) -> Result<ClassificationResult> {
    if stratum.k() != 3 || stratum.genus() != 2 {
        return Err(Error::PreconditionViolation {
            what: "special cubic classification needs k = 3, genus 2".into(),
        });
    }
    let components = match stratum.orders() {
        [6] => vec![
            ComponentDescriptor::new(
                ComponentKind::PowerLocus(3),
                "cubes of the genus-2 abelian minimal stratum; this is also the hyperelliptic component",
            ),
            ComponentDescriptor::new(
                ComponentKind::NonHyp,
                "primitive locus of the special cubic stratum (6): connected",
            )
            .with_parity(even_parity(false)),
        ],
        [4, 2] => vec![
            ComponentDescriptor::new(ComponentKind::Hyperelliptic, "special cubic stratum (4,2)")
                .with_parity(odd_parity(false)),
            ComponentDescriptor::new(ComponentKind::NonHyp, "special cubic stratum (4,2)")
                .with_parity(even_parity(false)),
        ],
        [2, 2, 2] => vec![
            ComponentDescriptor::new(ComponentKind::Hyperelliptic, "special cubic stratum (2,2,2)")
                .with_parity(even_parity(false)),
            ComponentDescriptor::new(ComponentKind::NonHyp, "special cubic stratum (2,2,2)")
                .with_parity(odd_parity(false)),
        ],
        other => {
            return Err(Error::PreconditionViolation {
                what: format!("{other:?} is not one of the special cubic signatures (6), (4,2), (2,2,2)"),
            })
        }
    };
    Ok(ClassificationResult { status: Status::Complete, components, notes: vec![] })
}

// --- dispatch ----------------------------------------------------------------

/// Full dispatch over everything this crate can decide.
pub fn classify(stratum: &Stratum) -> Result<ClassificationResult> {
    let k = stratum.k();
    let g = stratum.genus();
    if g == 0 {
        return Ok(classify_genus0(stratum));
    }
    if g == 1 {
        let components = genus1_components(k, stratum.signature())?;
        return Ok(ClassificationResult { status: Status::Complete, components, notes: vec![] });
    }
    if k == 2 {
        if stratum.signature().has_metric_pole() {
            return classify_quadratic(stratum);
        }
        return Ok(ClassificationResult {
            status: Status::OutOfScope,
            components: vec![],
            notes: vec![
                "quadratic strata without a metric pole (finite area) are classified in prior literature and not decided here"
                    .into(),
            ],
        });
    }
    if k == 1 {
        return Ok(ClassificationResult {
            status: Status::OutOfScope,
            components: vec![],
            notes: vec![
                "abelian strata are classified in prior literature and not decided here".into(),
            ],
        });
    }
    if k == 3 && g == 2 && matches!(stratum.orders(), [6] | [4, 2] | [2, 2, 2]) {
        return classify_cubic_g2(stratum);
    }

    // Partial: theorem-backed components only.
    let mut components = Vec::new();
    if let Some(h) = hyperelliptic_component(stratum) {
        components.push(h);
    }
    for d in power_decompositions(stratum) {
        components.push(ComponentDescriptor::new(
            ComponentKind::PowerLocus(d),
            "locus of d-th powers; components correspond to those of the root stratum",
        ));
    }
    let mut notes =
        vec!["complete classification of this stratum is open; listing theorem-backed components only".into()];
    if is_parity_type(stratum) {
        if k.is_multiple_of(2) {
            let p = even_k_parity(stratum)?;
            notes.push(format!(
                "parity type with even k: the parity {} is an invariant of the primitive locus",
                p.bit
            ));
        } else {
            notes.push(
                "parity type with odd k: the primitive locus realizes both parities, so it is disconnected"
                    .into(),
            );
        }
    }
    Ok(ClassificationResult { status: Status::Partial, components, notes })
}

// --- merges ------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MergeOutcome {
    pub merged: Stratum,
    /// Upper bound on the component count of the input stratum: the
    /// component count of the merged stratum, when its classification is
    /// complete.
    pub component_bound: Option<usize>,
}

fn merge_bound(merged: &Stratum) -> Option<usize> {
    classify(merged).ok().filter(|r| r.status == Status::Complete).map(|r| r.components.len())
}

/// Merges all analytic zeros and b chosen simple poles into a single zero of
/// order sum(zeros) - b. Quadratic only; the component count of the input is
/// bounded by that of the merged stratum.
pub fn merge_to_minimal(sig: &Signature, b: usize) -> Result<MergeOutcome> {
    merge_precondition(sig, b)?;
    let zero_sum: i64 = sig.zeros().iter().sum();
    let merged_zero = zero_sum - b as i64;
    if merged_zero <= 0 {
        return Err(Error::PreconditionViolation {
            what: format!("merged zero order {merged_zero} must be positive"),
        });
    }
    let mut orders = vec![merged_zero];
    rebuild_poles(sig, b, &mut orders, /*merge_metric=*/ false);
    let merged = validate_stratum(2, &orders)?;
    Ok(MergeOutcome { component_bound: merge_bound(&merged), merged })
}

/// Merges all metric poles and b chosen simple poles into a single pole of
/// order -(sum l_i + b). Quadratic only.
pub fn merge_poles_to_minimal(sig: &Signature, b: usize) -> Result<MergeOutcome> {
    merge_precondition(sig, b)?;
    let mut orders = sig.zeros();
    rebuild_poles(sig, b, &mut orders, /*merge_metric=*/ true);
    let merged = validate_stratum(2, &orders)?;
    Ok(MergeOutcome { component_bound: merge_bound(&merged), merged })
}

fn merge_precondition(sig: &Signature, b: usize) -> Result<()> {
    if sig.k() != 2 {
        return Err(Error::PreconditionViolation {
            what: format!("merging is implemented for quadratic signatures, got k = {}", sig.k()),
        });
    }
    if !sig.has_metric_pole() {
        return Err(Error::PreconditionViolation {
            what: "merging needs at least one pole of order <= -2".into(),
        });
    }
    let simple = sig.orders().iter().filter(|&&m| m == -1).count();
    if b > simple {
        return Err(Error::PreconditionViolation {
            what: format!("cannot merge {b} simple poles, signature has {simple}"),
        });
    }
    Ok(())
}

fn rebuild_poles(sig: &Signature, b: usize, orders: &mut Vec<i64>, merge_metric: bool) {
    let simple = sig.orders().iter().filter(|&&m| m == -1).count();
    let metric: Vec<i64> = sig.orders().iter().copied().filter(|&m| m <= -2).collect();
    for _ in 0..(simple - b) {
        orders.push(-1);
    }
    if merge_metric {
        let total: i64 = metric.iter().sum::<i64>() - b as i64;
        orders.push(total);
    } else {
        orders.extend(metric);
    }
}
