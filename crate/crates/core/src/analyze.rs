//! Permutation-level analysis: turn polynomials into explicit maps, measure
//! involution/fixed-point/cycle structure, and check each constructed family
//! against an independent behavioral oracle.
//!
//! The oracle builds the expected permutation directly from the family's
//! exponent-index behavior (how powers of a generator move), never
//! evaluating the polynomial, so a defect in either path cannot confirm
//! itself through the other.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::construct::{mod_inverse, Family, Params, Recipe, T8Case};
use crate::field::{configured_qlimit, DlogTable, Field, FieldError};
use crate::poly::SparsePoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("NotAPermutation: the map repeats an image and has no cycle decomposition")]
    NotAPermutation,
    #[error("NotADivisor: {m} does not divide q - 1 = {qm1}")]
    NotADivisor { m: u64, qm1: u64 },
}

/// A function on the field recorded as an image array: `image[x] = f(x)`,
/// both sides element indices. Bijectivity is a property to test, not an
/// invariant: non-permutation maps are representable on purpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMap {
    field: Field,
    image: Vec<u64>,
}

impl PermutationMap {
    /// Evaluate `poly` at every element, under the process-configured cap.
    pub fn of_poly(poly: &SparsePoly) -> Result<Self, AnalyzeError> {
        Self::of_poly_with_limit(poly, configured_qlimit())
    }

    /// Evaluate `poly` at every element, refusing fields larger than
    /// `limit` (the claims are universally quantified; sampling would
    /// weaken them, so oversized fields are an error, never a shortcut).
    pub fn of_poly_with_limit(poly: &SparsePoly, limit: u64) -> Result<Self, AnalyzeError> {
        let field = poly.field();
        let q = field.q();
        if q > limit {
            return Err(FieldError::LimitExceeded { q, limit }.into());
        }
        let image = (0..q).map(|x| poly.evaluate(x)).collect();
        Ok(PermutationMap { field: field.clone(), image })
    }

    /// Evaluate through a prebuilt dlog table (one exponent addition per
    /// term per element). The table's existence already enforced the cap.
    pub fn of_poly_with_table(poly: &SparsePoly, table: &DlogTable) -> Self {
        let field = poly.field();
        debug_assert_eq!(table.unit_count(), field.q() - 1, "table from another field");
        let image = (0..field.q()).map(|x| poly.evaluate_dlog(table, x)).collect();
        PermutationMap { field: field.clone(), image }
    }

    /// Wrap a precomputed image array. Panics if the length is not q or an
    /// entry is out of range.
    pub fn from_images(field: &Field, image: Vec<u64>) -> Self {
        assert_eq!(image.len() as u64, field.q(), "image must cover the whole field");
        assert!(image.iter().all(|&y| y < field.q()), "image entry out of range");
        PermutationMap { field: field.clone(), image }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn image(&self) -> &[u64] {
        &self.image
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.image[x as usize]
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        for &y in &self.image {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        true
    }

    /// True iff f(f(x)) = x everywhere; that equation forces bijectivity.
    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(x, &y)| self.image[y as usize] == x as u64)
    }

    pub fn fixed_points(&self) -> Vec<u64> {
        self.image
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x as u64 == y)
            .map(|(x, _)| x as u64)
            .collect()
    }

    /// Cycle decomposition by a visited-flag sweep, O(q).
    pub fn cycle_type(&self) -> Result<CycleType, AnalyzeError> {
        if !self.is_permutation() {
            return Err(AnalyzeError::NotAPermutation);
        }
        let mut seen = vec![false; self.image.len()];
        let mut counts = BTreeMap::new();
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.image[cur] as usize;
                len += 1;
            }
            *counts.entry(len).or_insert(0) += 1;
        }
        Ok(CycleType(counts))
    }

    /// Smallest x where the two maps disagree, or None when identical.
    /// Panics if the maps live over different fields.
    pub fn first_difference(&self, other: &Self) -> Option<u64> {
        assert_eq!(*self.field, *other.field, "maps over different fields");
        self.image
            .iter()
            .zip(&other.image)
            .position(|(a, b)| a != b)
            .map(|x| x as u64)
    }
}

/// Multiset of cycle lengths: length -> count, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CycleType(pub BTreeMap<u64, u64>);

impl CycleType {
    pub fn count(&self, len: u64) -> u64 {
        self.0.get(&len).copied().unwrap_or(0)
    }

    /// Total number of elements covered, sum of length * count.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|(len, n)| len * n).sum()
    }

    /// The expected type of an involution with the given fixed-point count:
    /// 1-cycles for the fixed points, 2-cycles for everything else.
    pub fn involution(q: u64, fixed: u64) -> CycleType {
        debug_assert!(fixed <= q && (q - fixed) % 2 == 0);
        let mut counts = BTreeMap::new();
        if fixed > 0 {
            counts.insert(1, fixed);
        }
        if q > fixed {
            counts.insert(2, (q - fixed) / 2);
        }
        CycleType(counts)
    }
}

impl fmt::Display for CycleType {
    /// `"1^21 2^10"`: `length^count` ascending by length, space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (len, count)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{len}^{count}")?;
        }
        Ok(())
    }
}

/// The order-m subgroup of the units, by exhaustive power test.
pub fn mu_subgroup(field: &Field, m: u64) -> Result<Vec<u64>, AnalyzeError> {
    let qm1 = field.q() - 1;
    if m == 0 || qm1 % m != 0 {
        return Err(AnalyzeError::NotADivisor { m, qm1 });
    }
    Ok((1..field.q()).filter(|&x| field.pow_idx(x, m) == 1).collect())
}

/// Outcome of comparing a polynomial's map against the family oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    /// Maps identical on every element.
    Match,
    /// The family (t8 in every case except "-1") has no constructive
    /// behavioral description; only count-level claims were checked.
    Descriptive,
    Mismatch { at: u64, poly_value: u64, oracle_value: u64 },
}

impl OracleVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleVerdict::Match => "match",
            OracleVerdict::Descriptive => "descriptive",
            OracleVerdict::Mismatch { .. } => "mismatch",
        }
    }
}

/// Build the permutation a recipe's family is proven to realize, directly
/// at the exponent-index level: element g^j moves according to j's residue
/// class, with 0 always fixed. Returns `None` for recipes whose family has
/// no constructive description (t8 cases other than "-1").
pub fn behavior_oracle(recipe: &Recipe) -> Result<Option<PermutationMap>, AnalyzeError> {
    let table = DlogTable::build(&recipe.field, recipe.g)?;
    Ok(oracle_with_table(recipe, &table))
}

fn oracle_with_table(recipe: &Recipe, table: &DlogTable) -> Option<PermutationMap> {
    let field = &recipe.field;
    let q = field.q();
    let qm1 = q - 1;
    let mut image: Vec<u64> = vec![0; q as usize];
    let add = |j: u64, th: u64| (j + th % qm1) % qm1;
    let sub = |j: u64, th: u64| (j + qm1 - th % qm1) % qm1;
    match (recipe.family, &recipe.params) {
        // Swap g^j <-> g^{j + (4i+2)} pairing residues {0,1} with {2,3} mod 4.
        (Family::T1, &Params::Index { i }) => {
            let th = 4 * i + 2;
            for j in 0..qm1 {
                let j2 = if j % 4 <= 1 { add(j, th) } else { sub(j, th) };
                image[table.pow_of(j) as usize] = table.pow_of(j2);
            }
        }
        // Swap residue 0 with 3 by 4i+3 and residue 1 with 2 by 4i+1.
        (Family::T2, &Params::Index { i }) => {
            for j in 0..qm1 {
                let j2 = match j % 4 {
                    0 => add(j, 4 * i + 3),
                    3 => sub(j, 4 * i + 3),
                    1 => add(j, 4 * i + 1),
                    _ => sub(j, 4 * i + 1),
                };
                image[table.pow_of(j) as usize] = table.pow_of(j2);
            }
        }
        // Fix odd residues (the non-squares), swap 0 with 2 by 4i+2.
        (Family::T3A, &Params::Index { i }) => {
            let th = 4 * i + 2;
            for j in 0..qm1 {
                let j2 = match j % 4 {
                    0 => add(j, th),
                    2 => sub(j, th),
                    _ => j,
                };
                image[table.pow_of(j) as usize] = table.pow_of(j2);
            }
        }
        // Fix even residues (the squares), swap 1 with 3 by 4i+2.
        (Family::T3B, &Params::Index { i }) => {
            let th = 4 * i + 2;
            for j in 0..qm1 {
                let j2 = match j % 4 {
                    1 => add(j, th),
                    3 => sub(j, th),
                    _ => j,
                };
                image[table.pow_of(j) as usize] = table.pow_of(j2);
            }
        }
        // Invert the order-m subgroup (exponents divisible by d), fix the rest.
        (Family::H1, &Params::Divisor { d, .. }) => {
            for j in 0..qm1 {
                let x = table.pow_of(j);
                image[x as usize] = if j % d == 0 { table.pow_of(qm1 - j) } else { x };
            }
        }
        // Fix the order-m subgroup, invert the rest.
        (Family::H2, &Params::Divisor { d, .. }) => {
            for j in 0..qm1 {
                let x = table.pow_of(j);
                image[x as usize] = if j % d == 0 { x } else { table.pow_of(qm1 - j) };
            }
        }
        // Decompose the exponent e as (i, j) along the coprime split
        // q-1 = m*n: i = e*n^{-1} mod m, j = e*m^{-1} mod n. Elements with
        // i = 0 or odd j are fixed; the rest swap e <-> e - 2ni.
        (Family::T7, &Params::Split { m, n, .. }) => {
            t7_style_oracle(table, &mut image, qm1, m, n, /* fix on odd j */ true);
        }
        (Family::T8, &Params::SplitCase { m, n, case, .. }) => {
            if case != T8Case::MinusOne {
                return None;
            }
            // Same decomposition, complementary parity: even j fixed.
            t7_style_oracle(table, &mut image, qm1, m, n, false);
        }
        _ => unreachable!("recipe parameter shape is fixed by its constructor"),
    }
    Some(PermutationMap { field: field.clone(), image })
}

fn t7_style_oracle(
    table: &DlogTable,
    image: &mut [u64],
    qm1: u64,
    m: u64,
    n: u64,
    fix_on_odd_j: bool,
) {
    let ninv = if m > 1 { mod_inverse(n % m, m) } else { 0 };
    let minv = mod_inverse(m % n, n);
    for e in 0..qm1 {
        let i = if m > 1 { ((e as u128 * ninv as u128) % m as u128) as u64 } else { 0 };
        let j = ((e as u128 * minv as u128) % n as u128) as u64;
        let fixed = i == 0 || (j % 2 == 1) == fix_on_odd_j;
        let e2 = if fixed { e } else { (e + qm1 - (2 * n * i) % qm1) % qm1 };
        image[table.pow_of(e) as usize] = table.pow_of(e2);
    }
}

/// Fixed-point count each family's closed formula predicts.
fn expected_fixed_count(recipe: &Recipe) -> u64 {
    let q = recipe.field.q();
    let p = recipe.field.p();
    match (recipe.family, &recipe.params) {
        (Family::T1 | Family::T2, _) => 1,
        (Family::T3A | Family::T3B, _) => (q + 1) / 2,
        // q - m, plus the subgroup's self-inverse elements (1, and -1 when
        // m is even; -1 = 1 in characteristic 2).
        (Family::H1, &Params::Divisor { m, .. }) => {
            q - m + if m % 2 == 0 && p != 2 { 2 } else { 1 }
        }
        // 0, the m subgroup elements, plus -1 outside it when m is odd.
        (Family::H2, &Params::Divisor { m, .. }) => {
            1 + m + if m % 2 == 1 && p != 2 { 1 } else { 0 }
        }
        (Family::T7, &Params::Split { m, n, .. })
        | (Family::T8, &Params::SplitCase { m, n, .. }) => (n * (m + 1) + 2) / 2,
        _ => unreachable!("recipe parameter shape is fixed by its constructor"),
    }
}

/// Everything `verify_claim` measured about one recipe, serializable in the
/// canonical report order. `pass`/`failures` carry the verdict and its
/// reasons; they stay out of the serialized form.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub family: String,
    pub q: u64,
    pub g: u64,
    pub params: serde_json::Value,
    pub poly: String,
    pub involution: bool,
    pub fixed_points: u64,
    pub cycle_type: CycleType,
    pub oracle: String,
    #[serde(skip)]
    pub params_str: String,
    #[serde(skip)]
    pub pass: bool,
    #[serde(skip)]
    pub failures: Vec<String>,
}

impl ClaimReport {
    pub const CSV_HEADER: &'static str =
        "family,q,g,params,poly,involution,fixed_points,cycle_type,oracle";

    /// One CSV row matching [`Self::CSV_HEADER`]. Every field is comma-free
    /// by construction, so no quoting is needed.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.family,
            self.q,
            self.g,
            self.params_str,
            self.poly,
            self.involution,
            self.fixed_points,
            self.cycle_type,
            self.oracle
        )
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Check one constructed polynomial against every claim its family makes:
/// involution, fixed-point count formula, cycle-type formula, the
/// fixed-set laws of t3a/t3b, and pointwise agreement with the behavioral
/// oracle when one exists.
pub fn verify_claim(recipe: &Recipe, poly: &SparsePoly) -> Result<ClaimReport, AnalyzeError> {
    let field = &recipe.field;
    if **field != **poly.field() {
        return Err(FieldError::FieldMismatch.into());
    }
    let q = field.q();
    let limit = configured_qlimit();
    if q > limit {
        return Err(FieldError::LimitExceeded { q, limit }.into());
    }
    let table = DlogTable::build(field, recipe.g)?;
    let map = PermutationMap::of_poly_with_table(poly, &table);
    let mut failures = Vec::new();

    let is_perm = map.is_permutation();
    let involution = map.is_involution();
    if !involution {
        if let Some(x) = (0..q).find(|&x| map.apply(map.apply(x)) != x) {
            failures.push(format!(
                "not an involution: f(f({x})) = {} over {field}",
                map.apply(map.apply(x))
            ));
        }
    }
    if !is_perm {
        failures.push("not a permutation: the image repeats a value".to_string());
    }

    let fixed = map.fixed_points();
    let expect_fixed = expected_fixed_count(recipe);
    if fixed.len() as u64 != expect_fixed {
        failures.push(format!(
            "fixed-point count {} differs from the family formula {expect_fixed}",
            fixed.len()
        ));
    }

    let cycle = map.cycle_type().unwrap_or_default();
    if is_perm {
        let expected = CycleType::involution(q, expect_fixed);
        if cycle != expected {
            failures.push(format!("cycle type {cycle} differs from the family formula {expected}"));
        }
    }

    // t3a fixes 0 and exactly the non-squares; t3b 0 and exactly the
    // squares. Squareness by the Euler criterion, independent of the table.
    if matches!(recipe.family, Family::T3A | Family::T3B) {
        let half_exp = (q - 1) / 2;
        let fix_squares = recipe.family == Family::T3B;
        for x in 1..q {
            let is_square = field.pow_idx(x, half_exp) == 1;
            if (map.apply(x) == x) != (is_square == fix_squares) {
                failures.push(format!(
                    "fixed-set law broken at x = {x} (square: {is_square}, fixed: {})",
                    map.apply(x) == x
                ));
                break;
            }
        }
    }

    let verdict = match oracle_with_table(recipe, &table) {
        None => OracleVerdict::Descriptive,
        Some(oracle) => match map.first_difference(&oracle) {
            None => OracleVerdict::Match,
            Some(at) => {
                OracleVerdict::Mismatch { at, poly_value: map.apply(at), oracle_value: oracle.apply(at) }
            }
        },
    };
    if let OracleVerdict::Mismatch { at, poly_value, oracle_value } = verdict {
        failures.push(format!(
            "behavioral-oracle mismatch at x = {at}: polynomial gives {poly_value}, oracle gives {oracle_value}"
        ));
    }

    Ok(ClaimReport {
        family: recipe.family.name().to_string(),
        q,
        g: recipe.g,
        params: recipe.params.to_json(),
        poly: poly.to_string(),
        involution,
        fixed_points: fixed.len() as u64,
        cycle_type: cycle,
        oracle: verdict.as_str().to_string(),
        params_str: recipe.params_string(),
        pass: failures.is_empty(),
        failures,
    })
}

/// Compare a polynomial's map against a recipe's oracle; this is the
/// library core of the CLI's oracle-diff command and accepts deliberately
/// mispaired (recipe, map) combinations as negative controls.
pub fn diff_oracle(recipe: &Recipe, map: &PermutationMap) -> Result<OracleVerdict, AnalyzeError> {
    Ok(match behavior_oracle(recipe)? {
        None => OracleVerdict::Descriptive,
        Some(oracle) => match map.first_difference(&oracle) {
            None => OracleVerdict::Match,
            Some(at) => OracleVerdict::Mismatch {
                at,
                poly_value: map.apply(at),
                oracle_value: oracle.apply(at),
            },
        },
    })
}

/// Verify a free-standing polynomial with no family recipe: the involution
/// property is always checked (plus an optional fixed-point expectation),
/// and the report carries family "adhoc" with a claim-level oracle verdict.
pub fn verify_adhoc(poly: &SparsePoly, expect_fixed: Option<u64>) -> Result<ClaimReport, AnalyzeError> {
    let field = poly.field();
    let map = PermutationMap::of_poly(poly)?;
    let mut failures = Vec::new();
    let involution = map.is_involution();
    if !involution {
        failures.push("not an involution".to_string());
    }
    let fixed = map.fixed_points();
    if let Some(want) = expect_fixed {
        if fixed.len() as u64 != want {
            failures.push(format!("fixed-point count {} differs from expected {want}", fixed.len()));
        }
    }
    Ok(ClaimReport {
        family: "adhoc".to_string(),
        q: field.q(),
        g: field.smallest_generator(),
        params: json!({}),
        poly: poly.to_string(),
        involution,
        fixed_points: fixed.len() as u64,
        cycle_type: map.cycle_type().unwrap_or_default(),
        oracle: "descriptive".to_string(),
        params_str: String::new(),
        pass: failures.is_empty(),
        failures,
    })
}
