//! Constructors for eight families of involutory permutation polynomials.
//!
//! Each constructor takes explicit integer parameters, checks the family's
//! preconditions, and expands a closed-form coefficient formula into a
//! canonical [`SparsePoly`]. The returned [`Construction`] pairs the
//! polynomial with a [`Recipe`] recording every parameter, so the analysis
//! layer can rebuild the expected permutation behavior independently.
//!
//! Family overview (q = field order, g = a generator):
//! - `t1`: trinomial a2*x^{3d+1} + a1*x^{d+1} + a0*x with d = (q-1)/4,
//!   indexed by i in [0, d); single fixed point 0.
//! - `t2`: quadrinomial on exponents 3d+1, 2d+1, d+1, 1; single fixed point.
//! - `t3a`/`t3b`: quadrinomials with (q+1)/2 fixed points (two coefficient
//!   variants); `t3a` fixes 0 and the non-squares, `t3b` 0 and the squares.
//! - `h1`: inverts the order-m subgroup of the units and fixes everything
//!   else, where m = (q-1)/d for a divisor d.
//! - `h2`: the complement: fixes the subgroup, inverts the rest.
//! - `t7`/`t8`: quadrinomials with coefficients (+-1/2) built from a
//!   factorization q-1 = n*m with m odd, n even, gcd(m, n) = 1.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::field::Field;
use crate::poly::SparsePoly;

/// Errors from family preconditions. Each message names the violated
/// precondition; the CLI surfaces them verbatim with exit code 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("BadCongruence: q = {q} is not congruent to 1 modulo 4")]
    BadCongruence { q: u64 },
    #[error("CharacteristicTwo: the coefficient formulas divide by 2")]
    CharacteristicTwo,
    #[error("NotAGenerator: {0} does not generate the multiplicative group")]
    NotAGenerator(u64),
    #[error("IndexOutOfRange: i = {i} is not in [0, {d})")]
    IndexOutOfRange { i: u64, d: u64 },
    #[error("NotADivisor: {d} does not divide q - 1 = {qm1}")]
    NotADivisor { d: u64, qm1: u64 },
    #[error("BadFactorization: need m * n = q - 1 = {qm1} with m odd, got m = {m}, n = {n}")]
    BadFactorization { m: u64, n: u64, qm1: u64 },
    #[error("NotCoprime: gcd(m, n) = {g} must be 1")]
    NotCoprime { g: u64 },
    #[error("OddCofactor: n = {n} must be even")]
    OddCofactor { n: u64 },
    #[error("NoMatchingCase: residue m mod k = {residue} selects no case with exponents in [1, q-2]")]
    NoMatchingCase { residue: u64 },
}

/// The eight construction families. Stable string names are the lowercase
/// variants used by the CLI, catalogs, and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T1,
    T2,
    T3A,
    T3B,
    H1,
    H2,
    T7,
    T8,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::T1,
        Family::T2,
        Family::T3A,
        Family::T3B,
        Family::H1,
        Family::H2,
        Family::T7,
        Family::T8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::T1 => "t1",
            Family::T2 => "t2",
            Family::T3A => "t3a",
            Family::T3B => "t3b",
            Family::H1 => "h1",
            Family::H2 => "h2",
            Family::T7 => "t7",
            Family::T8 => "t8",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficient variant for the third family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T3Variant {
    A,
    B,
}

/// Which congruence class of m modulo k the `t8` construction matched.
/// Labels follow the signed residue: "-1", "1", "2", "-2".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T8Case {
    MinusOne,
    One,
    Two,
    MinusTwo,
}

impl T8Case {
    pub fn label(self) -> &'static str {
        match self {
            T8Case::MinusOne => "-1",
            T8Case::One => "1",
            T8Case::Two => "2",
            T8Case::MinusTwo => "-2",
        }
    }
}

impl fmt::Display for T8Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Family-specific parameters, recorded exactly as used by the formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Params {
    /// `t1`/`t2`/`t3a`/`t3b`: index i in [0, (q-1)/4).
    Index { i: u64 },
    /// `h1`/`h2`: divisor d of q-1 and cofactor m = (q-1)/d.
    Divisor { d: u64, m: u64 },
    /// `t7`: split n*m = q-1 plus the derived k = n/2 and t.
    Split { m: u64, n: u64, k: u64, t: u64 },
    /// `t8`: split plus the congruence case that fired.
    SplitCase { m: u64, n: u64, k: u64, case: T8Case },
}

impl Params {
    /// Canonical `key=value` form, `;`-separated, used in CSV output and
    /// diagnostics. Examples: `i=0`, `d=2;m=3`, `m=3;n=4;k=2;t=2`,
    /// `m=3;n=4;k=2;case=1`.
    pub fn to_params_string(&self) -> String {
        match self {
            Params::Index { i } => format!("i={i}"),
            Params::Divisor { d, m } => format!("d={d};m={m}"),
            Params::Split { m, n, k, t } => format!("m={m};n={n};k={k};t={t}"),
            Params::SplitCase { m, n, k, case } => {
                format!("m={m};n={n};k={k};case={}", case.label())
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            Params::Index { i } => json!({ "i": i }),
            Params::Divisor { d, m } => json!({ "d": d, "m": m }),
            Params::Split { m, n, k, t } => json!({ "m": m, "n": n, "k": k, "t": t }),
            Params::SplitCase { m, n, k, case } => {
                json!({ "m": m, "n": n, "k": k, "case": case.label() })
            }
        }
    }

    /// Numeric sort key: catalog entries order by this within a family.
    pub fn sort_key(&self) -> Vec<u64> {
        match *self {
            Params::Index { i } => vec![i],
            Params::Divisor { d, .. } => vec![d],
            Params::Split { m, n, .. } | Params::SplitCase { m, n, .. } => vec![m, n],
        }
    }
}

/// Full provenance of one constructed polynomial: family, field, the
/// generator in effect, and the family parameters. `g` is the formula input
/// for `t1`..`t3b`; for `h1`/`h2`/`t7`/`t8` the formulas do not use a
/// generator, so the field's smallest one is recorded for the analysis layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub family: Family,
    pub field: Field,
    pub g: u64,
    pub params: Params,
}

impl Recipe {
    pub fn params_string(&self) -> String {
        self.params.to_params_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family.name(),
            "q": self.field.q(),
            "p": self.field.p(),
            "ext_deg": self.field.ext_deg(),
            "modulus": self.field.modulus_coeffs(),
            "g": self.g,
            "params": self.params.to_json(),
        })
    }
}

/// A constructed polynomial together with its recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub recipe: Recipe,
    pub poly: SparsePoly,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` by extended Euclid; requires gcd(a, m) = 1,
/// m >= 2 (m need not be prime).
pub(crate) fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1, "inverse requires coprime inputs");
    (t.rem_euclid(m as i128)) as u64
}

/// Shared preconditions for `t1`/`t2`/`t3a`/`t3b`; returns d = (q-1)/4.
fn quarter_check(field: &Field, g: u64, i: u64) -> Result<u64, ConstructError> {
    let q = field.q();
    if q % 4 != 1 {
        return Err(ConstructError::BadCongruence { q });
    }
    if field.p() == 2 {
        // Unreachable in practice: q = 2^e is never 1 mod 4. Kept so the
        // precondition is checked where the formula divides by 2.
        return Err(ConstructError::CharacteristicTwo);
    }
    if g == 0 || g >= q || !field.is_generator(g) {
        return Err(ConstructError::NotAGenerator(g));
    }
    let d = (q - 1) / 4;
    if i >= d {
        return Err(ConstructError::IndexOutOfRange { i, d });
    }
    Ok(d)
}

fn inv_unit(field: &Field, a: u64) -> u64 {
    field.inv_idx(a).expect("precondition guarantees a unit")
}

/// Trinomial family: a2*x^{3d+1} + a1*x^{d+1} + a0*x with
/// alpha = g^{4i+2}, a0 = (alpha^2+1)/(2 alpha),
/// a1 = (g^d+1)(alpha^2-1)/(4 alpha g^d), a2 = g^d * a1.
/// Involution with 0 as its only fixed point.
pub fn t1(field: &Field, g: u64, i: u64) -> Result<Construction, ConstructError> {
    let d = quarter_check(field, g, i)?;
    let f = field;
    let al = f.pow_idx(g, 4 * i + 2);
    let al2 = f.mul_idx(al, al);
    let gd = f.pow_idx(g, d);
    let a0 = f.mul_idx(f.add_idx(al2, 1), inv_unit(f, f.mul_idx(f.embed(2), al)));
    let a1 = f.mul_idx(
        f.mul_idx(f.add_idx(gd, 1), f.sub_idx(al2, 1)),
        inv_unit(f, f.mul_idx(f.mul_idx(f.embed(4), al), gd)),
    );
    let a2 = f.mul_idx(gd, a1);
    Ok(Construction {
        recipe: Recipe {
            family: Family::T1,
            field: field.clone(),
            g,
            params: Params::Index { i },
        },
        poly: SparsePoly::canonicalize(field, [(3 * d + 1, a2), (d + 1, a1), (1, a0)]),
    })
}

/// Quadrinomial family on exponents 3d+1, 2d+1, d+1, 1 with
/// beta = g^{4i+3}, gamma = g^{4i+d+3}:
/// a0 = (g^2+1)(alpha^2+1)/(4 beta),  a1 = (g^{d+2}+1)(alpha^2-1)/(4 gamma),
/// a2 = (g^2-1)(alpha^2+1)/(4 beta),  a3 = (g^{d+2}-1)(alpha^2-1)/(4 gamma).
/// Involution with 0 as its only fixed point.
pub fn t2(field: &Field, g: u64, i: u64) -> Result<Construction, ConstructError> {
    let d = quarter_check(field, g, i)?;
    let f = field;
    let al = f.pow_idx(g, 4 * i + 2);
    let al2 = f.mul_idx(al, al);
    let g2 = f.mul_idx(g, g);
    let gd2 = f.pow_idx(g, d + 2);
    let beta = f.pow_idx(g, 4 * i + 3);
    let gamma = f.pow_idx(g, 4 * i + d + 3);
    let four = f.embed(4);
    let inv_4beta = inv_unit(f, f.mul_idx(four, beta));
    let inv_4gamma = inv_unit(f, f.mul_idx(four, gamma));
    let a0 = f.mul_idx(f.mul_idx(f.add_idx(g2, 1), f.add_idx(al2, 1)), inv_4beta);
    let a1 = f.mul_idx(f.mul_idx(f.add_idx(gd2, 1), f.sub_idx(al2, 1)), inv_4gamma);
    let a2 = f.mul_idx(f.mul_idx(f.sub_idx(g2, 1), f.add_idx(al2, 1)), inv_4beta);
    let a3 = f.mul_idx(f.mul_idx(f.sub_idx(gd2, 1), f.sub_idx(al2, 1)), inv_4gamma);
    Ok(Construction {
        recipe: Recipe {
            family: Family::T2,
            field: field.clone(),
            g,
            params: Params::Index { i },
        },
        poly: SparsePoly::canonicalize(
            field,
            [(3 * d + 1, a3), (2 * d + 1, a2), (d + 1, a1), (1, a0)],
        ),
    })
}

/// Quadrinomial family with (q+1)/2 fixed points. Both variants share
/// a0 = (alpha+1)^2/(4 alpha). Variant A: a1 = a3 = (alpha^2-1)/(4 alpha),
/// a2 = (alpha-1)^2/(4 alpha); it fixes 0 and every non-square.
/// Variant B: a1 = (alpha^2-1)/(4 g^d alpha), a2 = 1 - a0, a3 = -a1; it
/// fixes 0 and every square.
pub fn t3(field: &Field, g: u64, i: u64, variant: T3Variant) -> Result<Construction, ConstructError> {
    let d = quarter_check(field, g, i)?;
    let f = field;
    let al = f.pow_idx(g, 4 * i + 2);
    let al2 = f.mul_idx(al, al);
    let four = f.embed(4);
    let inv_4al = inv_unit(f, f.mul_idx(four, al));
    let a0 = f.mul_idx(f.mul_idx(f.add_idx(al, 1), f.add_idx(al, 1)), inv_4al);
    let (a1, a2, a3) = match variant {
        T3Variant::A => {
            let a1 = f.mul_idx(f.sub_idx(al2, 1), inv_4al);
            let a2 = f.mul_idx(f.mul_idx(f.sub_idx(al, 1), f.sub_idx(al, 1)), inv_4al);
            (a1, a2, a1)
        }
        T3Variant::B => {
            let gd = f.pow_idx(g, d);
            let a1 = f.mul_idx(f.sub_idx(al2, 1), inv_unit(f, f.mul_idx(f.mul_idx(four, gd), al)));
            let a2 = f.sub_idx(1, a0);
            (a1, a2, f.neg_idx(a1))
        }
    };
    Ok(Construction {
        recipe: Recipe {
            family: family_of_variant(variant),
            field: field.clone(),
            g,
            params: Params::Index { i },
        },
        poly: SparsePoly::canonicalize(
            field,
            [(3 * d + 1, a3), (2 * d + 1, a2), (d + 1, a1), (1, a0)],
        ),
    })
}

fn family_of_variant(variant: T3Variant) -> Family {
    match variant {
        T3Variant::A => Family::T3A,
        T3Variant::B => Family::T3B,
    }
}

fn divisor_check(field: &Field, d: u64) -> Result<u64, ConstructError> {
    let qm1 = field.q() - 1;
    if d == 0 || qm1 % d != 0 {
        return Err(ConstructError::NotADivisor { d, qm1 });
    }
    Ok(qm1 / d)
}

/// Subgroup-inverting family: canonicalization of
/// x + m * sum_{i=0}^{d-1} (x^{im+1} - x^{(d-i)m-1}) with m = (q-1)/d.
/// Acts as x -> x^{-1} on the order-m subgroup of the units and fixes
/// everything else. Degenerate at m = 1, where the expansion acquires a
/// constant term and stops being a permutation; callers that need a
/// permutation must use m >= 2.
pub fn h1(field: &Field, d: u64) -> Result<Construction, ConstructError> {
    let m = divisor_check(field, d)?;
    let c = field.embed(m);
    let neg_c = field.neg_idx(c);
    let mut terms = Vec::with_capacity(2 * d as usize + 1);
    terms.push((1, 1));
    for i in 0..d {
        terms.push((i * m + 1, c));
        terms.push(((d - i) * m - 1, neg_c));
    }
    Ok(Construction {
        recipe: Recipe {
            family: Family::H1,
            field: field.clone(),
            g: field.smallest_generator(),
            params: Params::Divisor { d, m },
        },
        poly: SparsePoly::canonicalize(field, terms),
    })
}

/// Complementary subgroup family: canonicalization of
/// x^{dm-1} + m * sum_{i=0}^{d-1} (x^{(d-i)m-1} - x^{im+1}).
/// Fixes the order-m subgroup and inverts the remaining units. Shares the
/// m = 1 degeneracy of [`h1`].
pub fn h2(field: &Field, d: u64) -> Result<Construction, ConstructError> {
    let m = divisor_check(field, d)?;
    let c = field.embed(m);
    let neg_c = field.neg_idx(c);
    let mut terms = Vec::with_capacity(2 * d as usize + 1);
    terms.push((d * m - 1, 1));
    for i in 0..d {
        terms.push(((d - i) * m - 1, c));
        terms.push((i * m + 1, neg_c));
    }
    Ok(Construction {
        recipe: Recipe {
            family: Family::H2,
            field: field.clone(),
            g: field.smallest_generator(),
            params: Params::Divisor { d, m },
        },
        poly: SparsePoly::canonicalize(field, terms),
    })
}

/// Validate a unit-group split q - 1 = n*m (m odd, n even, coprime) and
/// derive (k, t): k = n/2; t is the least positive integer with
/// t*m = 2 (mod k), taking the residue-0 representative as k, and t = 1
/// when k = 1.
pub fn t7_params(field: &Field, m: u64, n: u64) -> Result<(u64, u64), ConstructError> {
    let qm1 = field.q() - 1;
    if m == 0 || n == 0 || m.checked_mul(n) != Some(qm1) || m % 2 == 0 {
        return Err(ConstructError::BadFactorization { m, n, qm1 });
    }
    if n % 2 == 1 {
        return Err(ConstructError::OddCofactor { n });
    }
    let g = gcd(m, n);
    if g != 1 {
        return Err(ConstructError::NotCoprime { g });
    }
    let k = n / 2;
    let t = if k == 1 {
        1
    } else {
        // gcd(m, n) = 1 and k | n give gcd(m, k) = 1, so m is a unit mod k.
        let t = (2 * mod_inverse(m, k)) % k;
        if t == 0 { k } else { t }
    };
    Ok((k, t))
}

/// The four formula exponents of `t7` for a validated split.
fn t7_exponents(k: u64, t: u64, m: u64) -> [u64; 4] {
    [(k + t) * m - 1, k * m + 1, t * m - 1, 1]
}

/// True when every `t7` formula exponent lies in the unit-exponent window
/// [1, q-2]. Outside it the formula degenerates (a constant term appears or
/// an exponent collides with q-1) and the result is not a permutation; the
/// only violating split over any odd prime is q = 3 with (m, n) = (1, 2).
pub fn t7_in_window(field: &Field, m: u64, n: u64) -> Result<bool, ConstructError> {
    let (k, t) = t7_params(field, m, n)?;
    let q = field.q();
    Ok(t7_exponents(k, t, m).iter().all(|&e| (1..=q - 2).contains(&e)))
}

/// Split-based quadrinomial family:
/// (x^{(k+t)m-1} - x^{km+1} + x^{tm-1} + x) / 2.
/// Constructs faithfully for every valid split, including out-of-window
/// ones; see [`t7_in_window`] for the permutation-validity screen.
pub fn t7(field: &Field, m: u64, n: u64) -> Result<Construction, ConstructError> {
    if field.p() == 2 {
        return Err(ConstructError::CharacteristicTwo);
    }
    let (k, t) = t7_params(field, m, n)?;
    let half = inv_unit(field, field.embed(2));
    let [e0, e1, e2, e3] = t7_exponents(k, t, m);
    let terms = [(e0, half), (e1, field.neg_idx(half)), (e2, half), (e3, half)];
    Ok(Construction {
        recipe: Recipe {
            family: Family::T7,
            field: field.clone(),
            g: field.smallest_generator(),
            params: Params::Split { m, n, k, t },
        },
        poly: SparsePoly::canonicalize(field, terms),
    })
}

/// The four `t8` cases in fixed trial order: congruence residue of m mod k,
/// plus the exponent/sign pattern. Signs multiply the coefficient 1/2.
fn t8_cases(k: u64, m: u64) -> [(T8Case, u64, [(i128, i8); 4]); 4] {
    let (ki, mi) = (k as i128, m as i128);
    [
        (
            T8Case::MinusOne,
            (k - 1) % k,
            [
                ((2 * ki - 2) * mi - 1, 1),
                (ki * mi + 1, 1),
                ((ki - 2) * mi - 1, -1),
                (1, 1),
            ],
        ),
        (
            T8Case::One,
            1 % k,
            [
                ((ki + 2) * mi - 1, -1),
                (ki * mi + 1, 1),
                (2 * mi - 1, 1),
                (1, 1),
            ],
        ),
        (
            T8Case::Two,
            2 % k,
            [
                ((ki + 1) * mi - 1, 1),
                (ki * mi + 1, 1),
                (mi - 1, -1),
                (1, 1),
            ],
        ),
        (
            T8Case::MinusTwo,
            (2 * k - 2) % k,
            [
                ((2 * ki - 1) * mi - 1, -1),
                (ki * mi + 1, 1),
                ((ki - 1) * mi - 1, 1),
                (1, 1),
            ],
        ),
    ]
}

/// Congruence-selected quadrinomial family with coefficients (+-1/2). The
/// cases are tried in fixed order (-1, 1, 2, -2); a case fires when its
/// congruence m = case (mod k) holds and all four of its exponents lie in
/// [1, q-2]. At small k several congruences coincide and some instantiate
/// to out-of-window exponents, so the window is part of case selection:
/// k = 2 resolves to case "1" and k = 1 to case "2". If no case fires the
/// split is outside the family (NoMatchingCase).
pub fn t8(field: &Field, m: u64, n: u64) -> Result<Construction, ConstructError> {
    if field.p() == 2 {
        return Err(ConstructError::CharacteristicTwo);
    }
    let (k, _) = t7_params(field, m, n)?;
    let q = field.q();
    let residue = m % k;
    let half = inv_unit(field, field.embed(2));
    let neg_half = field.neg_idx(half);
    for (case, case_residue, pattern) in t8_cases(k, m) {
        if residue != case_residue {
            continue;
        }
        if pattern.iter().any(|&(e, _)| e < 1 || e > (q as i128) - 2) {
            continue;
        }
        let terms = pattern.map(|(e, sign)| (e as u64, if sign > 0 { half } else { neg_half }));
        return Ok(Construction {
            recipe: Recipe {
                family: Family::T8,
                field: field.clone(),
                g: field.smallest_generator(),
                params: Params::SplitCase { m, n, k, case },
            },
            poly: SparsePoly::canonicalize(field, terms),
        });
    }
    Err(ConstructError::NoMatchingCase { residue })
}

/// All splits q - 1 = n*m with m odd, n even, and gcd(m, n) = 1, ascending
/// by m. This is the parameter space `t7`/`t8` range over; it is empty in
/// characteristic 2 (q - 1 odd leaves no even cofactor).
pub fn unit_group_splits(field: &Field) -> Vec<(u64, u64)> {
    let qm1 = field.q() - 1;
    let mut out = Vec::new();
    let mut m = 1;
    while m * m <= qm1 {
        if qm1 % m == 0 {
            for cand in [m, qm1 / m] {
                let n = qm1 / cand;
                if cand % 2 == 1 && n % 2 == 0 && gcd(cand, n) == 1 {
                    out.push((cand, n));
                }
            }
        }
        m += 1;
    }
    out.sort();
    out.dedup();
    out
}
