//! End-to-end acceptance suite. Each test prints one PASS line (or fails
//! with a full analysis) for one numbered criterion:
//!
//! 1. the forty reference involutions over F_41 parse and verify exactly;
//! 2. some generator of F_41 reconstructs all four reference lists;
//! 3. the quartic-index families verify at every index over every prime
//!    q = 1 mod 4 up to 1009, oracle included;
//! 4. the subgroup families verify for EVERY divisor of q-1 over every
//!    prime power up to 1024, and h1/h2 are exponent mirrors;
//! 5. the split families produce involutions with the exact predicted
//!    cycle structure over every odd prime up to 1009;
//! 6. the worked small-field pairs behave exactly as documented;
//! 7. recipe counts are exact: (q-1)/4 per quartic family, no more;
//! 8. polynomial maps agree pointwise with the independent behavioral
//!    oracles across the sweeps of criteria 3-5, and deliberate
//!    cross-pairings are caught.
//!
//! Criteria 4 and 8 fail by design on one degenerate slice: at d = q-1
//! the subgroup being inverted is trivial and the written-out expansions
//! telescope into maps that are not permutations (h1 over every field;
//! h2 over every field except the two-element one, where its constants
//! cancel and it collapses to the identity). The failure messages carry
//! the complete analysis; every other slice is green.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use invforge_core::{
    diff_oracle, h1, h2, is_prime, mu_subgroup, t1, t2, t3, t7, t7_in_window, t8,
    unit_group_splits, verify_adhoc, verify_claim, ConstructError, Construction, Field,
    FieldSpec, OracleVerdict, PermutationMap, SparsePoly, T3Variant,
};
use rayon::prelude::*;

const APP_T1: [&str; 10] = [
    "26x^31 + 29x^11 + 22x",
    "3x^31 + 27x^11 + 9x",
    "36x^31 + 37x^11",
    "3x^31 + 27x^11 + 32x",
    "26x^31 + 29x^11 + 19x",
    "15x^31 + 12x^11 + 19x",
    "38x^31 + 14x^11 + 32x",
    "5x^31 + 4x^11",
    "38x^31 + 14x^11 + 9x",
    "15x^31 + 12x^11 + 22x",
];

const APP_T2: [&str; 10] = [
    "11x^31 + 30x^21 + 32x^11 + 20x",
    "6x^31 + 16x^21 + 10x^11 + 38x",
    "31x^31 + 38x^11",
    "6x^31 + 25x^21 + 10x^11 + 3x",
    "11x^31 + 11x^21 + 32x^11 + 21x",
    "30x^31 + 11x^21 + 9x^11 + 21x",
    "35x^31 + 25x^21 + 31x^11 + 3x",
    "10x^31 + 3x^11",
    "35x^31 + 16x^21 + 31x^11 + 38x",
    "30x^31 + 30x^21 + 9x^11 + 20x",
];

const APP_T3A: [&str; 10] = [
    "7x^31 + 31x^21 + 7x^11 + 32x",
    "15x^31 + 4x^21 + 15x^11 + 5x",
    "16x^31 + 20x^21 + 16x^11 + 21x",
    "15x^31 + 36x^21 + 15x^11 + 37x",
    "7x^31 + 9x^21 + 7x^11 + 10x",
    "34x^31 + 9x^21 + 34x^11 + 10x",
    "26x^31 + 36x^21 + 26x^11 + 37x",
    "25x^31 + 20x^21 + 25x^11 + 21x",
    "26x^31 + 4x^21 + 26x^11 + 5x",
    "34x^31 + 31x^21 + 34x^11 + 32x",
];

const APP_T3B: [&str; 10] = [
    "19x^31 + 10x^21 + 22x^11 + 32x",
    "29x^31 + 37x^21 + 12x^11 + 5x",
    "20x^31 + 21x^21 + 21x^11 + 21x",
    "29x^31 + 5x^21 + 12x^11 + 37x",
    "19x^31 + 32x^21 + 22x^11 + 10x",
    "22x^31 + 32x^21 + 19x^11 + 10x",
    "12x^31 + 5x^21 + 29x^11 + 37x",
    "21x^31 + 21x^21 + 20x^11 + 21x",
    "12x^31 + 37x^21 + 29x^11 + 5x",
    "22x^31 + 10x^21 + 19x^11 + 32x",
];

fn prime(q: u64) -> Field {
    FieldSpec::prime(q).unwrap()
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Every prime power 2 <= q <= 1024, smallest-encoding moduli.
fn prime_powers_to_1024() -> Vec<Field> {
    (2u64..=1024)
        .filter_map(|q| FieldSpec::from_order(q).ok())
        .collect()
}

/// Primes q = 1 mod 4 up to 1009: the quartic-family sweep range.
fn quartic_primes() -> Vec<u64> {
    (5..=1009).filter(|&q| q % 4 == 1 && is_prime(q)).collect()
}

#[test]
fn criterion_1_reference_involutions_verify() {
    let start = Instant::now();
    let f = prime(41);
    let groups: [(&str, &[&str; 10], u64, &str); 4] = [
        ("first trinomial list", &APP_T1, 1, "1^1 2^20"),
        ("second list", &APP_T2, 1, "1^1 2^20"),
        ("third list, variant a", &APP_T3A, 21, "1^21 2^10"),
        ("third list, variant b", &APP_T3B, 21, "1^21 2^10"),
    ];
    for (label, list, fixed, cycle) in groups {
        for text in list {
            let poly = SparsePoly::parse(&f, text).unwrap();
            let report = verify_adhoc(&poly, Some(fixed)).unwrap();
            assert!(
                report.pass && report.involution,
                "{label} entry {text}: {}",
                report.failures.join("; ")
            );
            assert_eq!(report.fixed_points, fixed, "{label} entry {text}");
            assert_eq!(report.cycle_type.to_string(), cycle, "{label} entry {text}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 1: PASS - all 40 reference polynomials over F_41 verify as involutions \
         with the exact fixed-point counts and cycle types ({elapsed:?})"
    );
}

#[test]
fn criterion_2_construction_reproduces_reference_lists() {
    let start = Instant::now();
    let f = prime(41);
    let want: [BTreeSet<&str>; 4] = [
        APP_T1.into_iter().collect(),
        APP_T2.into_iter().collect(),
        APP_T3A.into_iter().collect(),
        APP_T3B.into_iter().collect(),
    ];
    let generators = f.generators();
    assert_eq!(generators.len(), 16, "F_41 has phi(40) = 16 generators");
    let mut matching = Vec::new();
    for &g in &generators {
        let mut built: [BTreeSet<String>; 4] = Default::default();
        for i in 0..10 {
            built[0].insert(t1(&f, g, i).unwrap().poly.to_string());
            built[1].insert(t2(&f, g, i).unwrap().poly.to_string());
            built[2].insert(t3(&f, g, i, T3Variant::A).unwrap().poly.to_string());
            built[3].insert(t3(&f, g, i, T3Variant::B).unwrap().poly.to_string());
        }
        let hits = (0..4).all(|k| built[k].iter().map(String::as_str).collect::<BTreeSet<_>>() == want[k]);
        if hits {
            matching.push(g);
        }
    }
    assert!(
        !matching.is_empty(),
        "no generator of F_41 reconstructs the four reference lists"
    );
    // Frozen regression: exactly these two generators work, and they are
    // each other's inverse-square relatives in the generator orbit.
    assert_eq!(matching, vec![6, 35]);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 2: PASS - generators {matching:?} of F_41 reconstruct all four \
         reference lists as sets ({elapsed:?})"
    );
}

#[test]
fn criterion_3_quartic_families_verify_to_1009() {
    let start = Instant::now();
    let primes = quartic_primes();
    let recipes: u64 = primes
        .par_iter()
        .map(|&q| {
            let f = prime(q);
            let g = f.smallest_generator();
            let mut count = 0;
            for i in 0..(q - 1) / 4 {
                let built = [
                    t1(&f, g, i).unwrap(),
                    t2(&f, g, i).unwrap(),
                    t3(&f, g, i, T3Variant::A).unwrap(),
                    t3(&f, g, i, T3Variant::B).unwrap(),
                ];
                for c in built {
                    let r = verify_claim(&c.recipe, &c.poly).unwrap();
                    assert!(
                        r.pass,
                        "q={q} {} i={i}: {}",
                        c.recipe.family.name(),
                        r.failures.join("; ")
                    );
                    assert_eq!(r.oracle, "match", "q={q} {} i={i}", c.recipe.family.name());
                    count += 1;
                }
            }
            count
        })
        .sum();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 3: PASS - {recipes} recipes across {} primes q = 1 mod 4 up to 1009 \
         all verify with oracle match ({elapsed:?})",
        primes.len()
    );
}

#[test]
fn criterion_4_subgroup_families_every_divisor() {
    let start = Instant::now();
    let fields = prime_powers_to_1024();
    assert_eq!(fields.len(), 198, "prime powers up to 1024");
    // Each failure is (family, q, d, reason).
    let failures: Vec<(String, u64, u64, String)> = fields
        .par_iter()
        .flat_map_iter(|f| {
            let q = f.q();
            let mut local = Vec::new();
            for d in divisors(q - 1) {
                let a = h1(f, d).unwrap();
                let b = h2(f, d).unwrap();
                // Mirror half of the criterion: reversing one expansion's
                // exponents inside the window 0..=q-1 gives the other,
                // at every divisor including the degenerate one.
                assert_eq!(a.poly.reverse().unwrap(), b.poly, "q={q} d={d}");
                for c in [a, b] {
                    let r = verify_claim(&c.recipe, &c.poly).unwrap();
                    if !(r.pass && r.oracle == "match") {
                        let mut reason = r.failures.join("; ");
                        if reason.is_empty() {
                            reason = format!("oracle {}", r.oracle);
                        }
                        local.push((c.recipe.family.name().to_string(), q, d, reason));
                    }
                }
            }
            local
        })
        .collect();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");

    // The failures must be confined to the predicted degenerate slice:
    // anything else would be a genuine regression, not the known defect.
    let predicted: BTreeSet<(String, u64, u64)> = fields
        .iter()
        .map(|f| ("h1".to_string(), f.q(), f.q() - 1))
        .chain(
            fields
                .iter()
                .filter(|f| f.q() > 2)
                .map(|f| ("h2".to_string(), f.q(), f.q() - 1)),
        )
        .collect();
    let actual: BTreeSet<(String, u64, u64)> = failures
        .iter()
        .map(|(fam, q, d, _)| (fam.clone(), *q, *d))
        .collect();
    assert_eq!(
        actual, predicted,
        "failures are not confined to the degenerate d = q-1 slice"
    );

    let total: usize = fields.iter().map(|f| 2 * divisors(f.q() - 1).len()).sum();
    println!(
        "criterion 4: FAIL (expected) - {} of {total} checks fail, all at d = q-1",
        failures.len()
    );
    assert!(
        failures.is_empty(),
        "criterion 4 is not attainable as stated, and the failure set is exactly the \
         degenerate slice d = q-1 (m = 1) over all {} prime powers q <= 1024: there the \
         subgroup being inverted is trivial, the expansions telescope (h1 to x^(q-1) + x - 1, \
         h2 to its exponent mirror), a constant term appears, and 0 is mapped onto an \
         already-fixed value, so the maps are not permutations at all ({} failing checks: \
         h1 at every q, h2 at every q except q = 2, where the two constants cancel mod 2 \
         and h2 collapses to the identity x, which verifies). Every one of the remaining \
         {} checks at d < q-1 passes with oracle match, and the h1/h2 exponent-mirror \
         identity holds for every divisor without exception. First failure: {:?}",
        fields.len(),
        failures.len(),
        total - failures.len(),
        failures.first().unwrap()
    );
}

#[test]
fn criterion_5_split_quadrinomials_cycle_structure() {
    let start = Instant::now();
    let primes: Vec<u64> = (3u64..=1009).filter(|&q| is_prime(q)).collect();
    // Per prime: (checked splits, skipped t7 windows, skipped t8 cases).
    let outcomes: Vec<(u64, Vec<(u64, u64)>, u64)> = primes
        .par_iter()
        .map(|&q| {
            let f = prime(q);
            let mut checked = 0;
            let mut t7_skipped = Vec::new();
            let mut t8_skipped = 0;
            for (m, n) in unit_group_splits(&f) {
                if t7_in_window(&f, m, n).unwrap() {
                    check_split_cycle_structure(&f, t7(&f, m, n).unwrap(), m, n);
                    checked += 1;
                } else {
                    t7_skipped.push((m, n));
                }
                match t8(&f, m, n) {
                    Ok(c) => {
                        check_split_cycle_structure(&f, c, m, n);
                        checked += 1;
                    }
                    Err(ConstructError::NoMatchingCase { .. }) => t8_skipped += 1,
                    Err(e) => panic!("unexpected t8 error at q={q} m={m} n={n}: {e}"),
                }
            }
            (checked, t7_skipped, t8_skipped)
        })
        .collect();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");

    let checked: u64 = outcomes.iter().map(|(c, _, _)| c).sum();
    let t8_skipped: u64 = outcomes.iter().map(|(_, _, s)| s).sum();
    let t7_skipped: Vec<(u64, (u64, u64))> = primes
        .iter()
        .zip(&outcomes)
        .flat_map(|(&q, (_, skips, _))| skips.iter().map(move |&mn| (q, mn)))
        .collect();
    // The window test excludes exactly one split in the whole range: over
    // F_3 the lone split (1, 2) pushes an exponent to zero and the formula
    // degenerates to a non-involution.
    assert_eq!(t7_skipped, vec![(3, (1, 2))]);
    println!(
        "criterion 5: PASS - {checked} split-family constructions over {} odd primes \
         are involutions with cycle type exactly 1^((n(m+1)+2)/2) 2^(n(m-1)/4); \
         window-inadmissible: {t7_skipped:?}; case-inadmissible splits: {t8_skipped} \
         ({elapsed:?})",
        primes.len()
    );
}

/// One split-family construction must verify and carry the exact cycle
/// structure its (m, n) parameters predict.
fn check_split_cycle_structure(f: &Field, c: Construction, m: u64, n: u64) {
    let q = f.q();
    let r = verify_claim(&c.recipe, &c.poly).unwrap();
    assert!(
        r.pass,
        "q={q} {} m={m} n={n}: {}",
        c.recipe.family.name(),
        r.failures.join("; ")
    );
    let fixed = (n * (m + 1) + 2) / 2;
    let twos = n * (m - 1) / 4;
    assert_eq!(r.fixed_points, fixed, "q={q} {} m={m} n={n}", c.recipe.family.name());
    let want = if twos == 0 {
        format!("1^{fixed}")
    } else {
        format!("1^{fixed} 2^{twos}")
    };
    assert_eq!(
        r.cycle_type.to_string(),
        want,
        "q={q} {} m={m} n={n}",
        c.recipe.family.name()
    );
}

#[test]
fn criterion_6_worked_small_field_pairs() {
    // F_23 with d = 2, m = 11: the expansion carries the (m+1) leading
    // pattern, x^(2m-1) = x^21 with coefficient 12.
    let f23 = prime(23);
    let a = h1(&f23, 2).unwrap();
    let b = h2(&f23, 2).unwrap();
    assert_eq!(a.poly.to_string(), "12x^21 + 11x^12 + 12x^10 + 12x");
    assert_eq!(b.poly.to_string(), "12x^21 + 12x^12 + 11x^10 + 12x");
    let coeff_21 = a.poly.terms().iter().find(|&&(e, _)| e == 21).unwrap().1;
    assert_eq!(coeff_21, 12, "coefficient of x^(2m-1) is m+1");
    for c in [&a, &b] {
        let r = verify_claim(&c.recipe, &c.poly).unwrap();
        assert!(r.pass, "{}: {}", c.recipe.family.name(), r.failures.join("; "));
        assert_eq!(r.oracle, "match");
    }
    // The same string with 22 in place of 12 parses fine but is a
    // different, non-involutive map: the exponent matters.
    let miswritten = SparsePoly::parse(&f23, "12x^21 + 11x^22 + 12x^10 + 12x").unwrap();
    let bad = verify_adhoc(&miswritten, None).unwrap();
    assert!(!bad.involution && !bad.pass);

    // GF(16) with d = 3, m = 5: both five-term expansions are involutions
    // whose action splits over the order-5 subgroup.
    let f16 = FieldSpec::extension(2, 4).unwrap();
    let a = h1(&f16, 3).unwrap();
    let b = h2(&f16, 3).unwrap();
    assert_eq!(a.poly.to_string(), "x^14 + x^11 + x^9 + x^6 + x^4");
    assert_eq!(b.poly.to_string(), "x^11 + x^9 + x^6 + x^4 + x");
    assert_eq!(a.poly.terms().len(), 5);
    assert_eq!(b.poly.terms().len(), 5);
    let mu5: Vec<u64> = mu_subgroup(&f16, 5).unwrap();
    assert_eq!(mu5, vec![1, 8, 10, 12, 15]);
    let map_a = PermutationMap::of_poly(&a.poly).unwrap();
    let map_b = PermutationMap::of_poly(&b.poly).unwrap();
    for x in 0..16 {
        let inv = if x == 0 { None } else { Some(f16.inv_idx(x).unwrap()) };
        if mu5.contains(&x) {
            // h1 inverts the subgroup; h2 fixes it.
            assert_eq!(map_a.apply(x), inv.unwrap(), "h1 on mu_5 at {x}");
            assert_eq!(map_b.apply(x), x, "h2 on mu_5 at {x}");
        } else if x == 0 {
            assert_eq!(map_a.apply(0), 0);
            assert_eq!(map_b.apply(0), 0);
        } else {
            // Off the subgroup the roles swap.
            assert_eq!(map_a.apply(x), x, "h1 off mu_5 at {x}");
            assert_eq!(map_b.apply(x), inv.unwrap(), "h2 off mu_5 at {x}");
        }
    }
    for c in [&a, &b] {
        let r = verify_claim(&c.recipe, &c.poly).unwrap();
        assert!(r.pass && r.oracle == "match", "{}", c.recipe.family.name());
    }
    println!(
        "criterion 6: PASS - the F_23 pair carries the (m+1) = 12 coefficient pattern \
         (its exponent-22 misprint variant is non-involutive) and both GF(16) five-term \
         expansions are involutions splitting over mu_5"
    );
}

#[test]
fn criterion_7_recipe_counts_are_exact() {
    let start = Instant::now();
    let primes = quartic_primes();
    let totals: Vec<(u64, u64)> = primes
        .par_iter()
        .map(|&q| {
            let f = prime(q);
            let g = f.smallest_generator();
            let quarter = (q - 1) / 4;
            let mut t1_count = 0;
            let mut t2_count = 0;
            for i in 0..quarter {
                let c = t1(&f, g, i).unwrap();
                assert!(verify_claim(&c.recipe, &c.poly).unwrap().pass, "t1 q={q} i={i}");
                t1_count += 1;
                let c = t2(&f, g, i).unwrap();
                assert!(verify_claim(&c.recipe, &c.poly).unwrap().pass, "t2 q={q} i={i}");
                t2_count += 1;
            }
            assert_eq!(t1_count, quarter, "q={q}: exactly (q-1)/4 first-family recipes");
            assert_eq!(t1_count + t2_count, (q - 1) / 2, "q={q}: (q-1)/2 in the two families");
            // The index window is exhausted: one past the end is rejected.
            assert!(
                matches!(t1(&f, g, quarter), Err(ConstructError::IndexOutOfRange { .. })),
                "q={q}: index {quarter} must be out of range"
            );
            (t1_count, t2_count)
        })
        .collect();
    let elapsed = start.elapsed();
    let t1_total: u64 = totals.iter().map(|(a, _)| a).sum();
    let both: u64 = totals.iter().map(|(a, b)| a + b).sum();
    println!(
        "criterion 7: PASS - counts are exact over {} primes: {t1_total} first-family \
         recipes, {both} across both trinomial families, all verified, and every \
         one-past-the-end index is rejected ({elapsed:?})",
        primes.len()
    );
}

#[test]
fn criterion_8_independent_oracle_agreement() {
    let start = Instant::now();

    // Sweep of criterion 3: quartic families, primes q = 1 mod 4 to 1009.
    quartic_primes().par_iter().for_each(|&q| {
        let f = prime(q);
        let g = f.smallest_generator();
        for i in 0..(q - 1) / 4 {
            for c in [
                t1(&f, g, i).unwrap(),
                t2(&f, g, i).unwrap(),
                t3(&f, g, i, T3Variant::A).unwrap(),
                t3(&f, g, i, T3Variant::B).unwrap(),
            ] {
                let map = PermutationMap::of_poly(&c.poly).unwrap();
                let v = diff_oracle(&c.recipe, &map).unwrap();
                assert_eq!(
                    v,
                    OracleVerdict::Match,
                    "q={q} {} i={i}",
                    c.recipe.family.name()
                );
            }
        }
    });

    // Sweep of criterion 4: subgroup families over every divisor. The
    // degenerate d = q-1 slice is collected rather than asserted.
    let fields = prime_powers_to_1024();
    let mismatches: Vec<(String, u64, u64)> = fields
        .par_iter()
        .flat_map_iter(|f| {
            let q = f.q();
            let mut local = Vec::new();
            for d in divisors(q - 1) {
                for c in [h1(f, d).unwrap(), h2(f, d).unwrap()] {
                    let map = PermutationMap::of_poly(&c.poly).unwrap();
                    match diff_oracle(&c.recipe, &map).unwrap() {
                        OracleVerdict::Match => {}
                        OracleVerdict::Descriptive => {
                            panic!("{} q={q} d={d}: oracle went descriptive", c.recipe.family.name())
                        }
                        OracleVerdict::Mismatch { .. } => {
                            local.push((c.recipe.family.name().to_string(), q, d))
                        }
                    }
                }
            }
            local
        })
        .collect();

    // Sweep of criterion 5: split families over every odd prime to 1009.
    (3u64..=1009)
        .filter(|&q| is_prime(q))
        .collect::<Vec<_>>()
        .par_iter()
        .for_each(|&q| {
            let f = prime(q);
            for (m, n) in unit_group_splits(&f) {
                if t7_in_window(&f, m, n).unwrap() {
                    let c = t7(&f, m, n).unwrap();
                    let map = PermutationMap::of_poly(&c.poly).unwrap();
                    assert_eq!(
                        diff_oracle(&c.recipe, &map).unwrap(),
                        OracleVerdict::Match,
                        "t7 q={q} m={m} n={n}"
                    );
                }
                if let Ok(c) = t8(&f, m, n) {
                    let map = PermutationMap::of_poly(&c.poly).unwrap();
                    let v = diff_oracle(&c.recipe, &map).unwrap();
                    let is_swap_case = c.recipe.params_string().ends_with("case=-1");
                    if is_swap_case {
                        assert_eq!(v, OracleVerdict::Match, "t8 q={q} m={m} n={n}");
                    } else {
                        assert_eq!(v, OracleVerdict::Descriptive, "t8 q={q} m={m} n={n}");
                    }
                }
            }
        });

    // Negative controls: deliberately mispaired construction and oracle
    // must be caught, through the library and through the binary.
    let f13 = prime(13);
    let g13 = f13.smallest_generator();
    let t1_map = PermutationMap::of_poly(&t1(&f13, g13, 0).unwrap().poly).unwrap();
    assert!(matches!(
        diff_oracle(&t2(&f13, g13, 0).unwrap().recipe, &t1_map).unwrap(),
        OracleVerdict::Mismatch { .. }
    ));
    let t3a_map = PermutationMap::of_poly(&t3(&f13, g13, 0, T3Variant::A).unwrap().poly).unwrap();
    assert!(matches!(
        diff_oracle(&t3(&f13, g13, 0, T3Variant::B).unwrap().recipe, &t3a_map).unwrap(),
        OracleVerdict::Mismatch { .. }
    ));
    let f7 = prime(7);
    let h1_map = PermutationMap::of_poly(&h1(&f7, 2).unwrap().poly).unwrap();
    match diff_oracle(&h2(&f7, 2).unwrap().recipe, &h1_map).unwrap() {
        OracleVerdict::Mismatch { at, .. } => assert_eq!(at, 2, "first witness off +-1 in mu_3"),
        v => panic!("cross-pair must mismatch, got {v:?}"),
    }
    // Split-family cross-pair over F_31, where (m, n) = (5, 6) lands in
    // the swap case and both pointwise oracles exist but disagree.
    let f31 = prime(31);
    let t8_recipe = t8(&f31, 5, 6).unwrap().recipe;
    assert!(t8_recipe.params_string().ends_with("case=-1"));
    let t7_map = PermutationMap::of_poly(&t7(&f31, 5, 6).unwrap().poly).unwrap();
    assert!(matches!(
        diff_oracle(&t8_recipe, &t7_map).unwrap(),
        OracleVerdict::Mismatch { .. }
    ));

    // The command-line surface reports the same three verdict shapes.
    let bin = env!("CARGO_BIN_EXE_invforge");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        (
            out.status.code().unwrap(),
            String::from_utf8(out.stdout).unwrap(),
        )
    };
    let (code, out) = run(&["oracle-diff", "--q", "13", "--family", "t1", "--i", "0"]);
    assert_eq!((code, out.trim()), (0, "match"));
    let (code, out) = run(&[
        "oracle-diff", "--q", "7", "--family", "h1", "--d", "2", "--oracle-family", "h2",
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("mismatch at x=2"), "got {out}");
    let (code, out) = run(&["oracle-diff", "--q", "13", "--family", "t8", "--m", "3", "--n", "4"]);
    assert_eq!((code, out.trim()), (0, "descriptive"));

    let elapsed = start.elapsed();

    // Confinement: the only disagreements are the degenerate slice of
    // criterion 4 (h1 everywhere, h2 everywhere but the two-element field).
    let predicted: BTreeSet<(String, u64, u64)> = fields
        .iter()
        .map(|f| ("h1".to_string(), f.q(), f.q() - 1))
        .chain(
            fields
                .iter()
                .filter(|f| f.q() > 2)
                .map(|f| ("h2".to_string(), f.q(), f.q() - 1)),
        )
        .collect();
    let actual: BTreeSet<(String, u64, u64)> = mismatches.iter().cloned().collect();
    assert_eq!(
        actual, predicted,
        "oracle mismatches are not confined to the degenerate d = q-1 slice"
    );
    println!(
        "criterion 8: FAIL (expected) - {} mismatches, all at d = q-1 ({elapsed:?})",
        mismatches.len()
    );
    assert!(
        mismatches.is_empty(),
        "criterion 8 inherits the degenerate slice of criterion 4: across the sweeps of \
         criteria 3-5 every constructive-oracle family agrees with its independently \
         computed behavioral oracle pointwise, except h1/h2 at d = q-1 (m = 1), where \
         the constructed polynomials are not permutations at all (h1 at every prime \
         power q <= 1024; h2 at every one except q = 2, whose collapse to the identity \
         does match its oracle) - {} mismatches, exactly the predicted set; all \
         deliberate cross-pairings were caught as mismatches, and the command-line \
         oracle-diff reports match, mismatch (exit 1), and descriptive correctly",
        mismatches.len()
    );
}
