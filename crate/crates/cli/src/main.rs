//! Command-line front end for the involution-forge library: construct
//! involutory permutation polynomials from their family formulas, verify
//! arbitrary polynomials exhaustively, emit verified catalogs, and diff a
//! construction's pointwise behavior against its independent oracle.
//!
//! Exit codes are uniform across subcommands: 0 on success, 1 when a
//! verification check fails, 2 on usage or parameter errors (including
//! malformed fields, polynomials that do not parse, and family
//! preconditions that do not hold).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invforge_core::{
    diff_oracle, h1, h2, t1, t2, t3, t7, t7_in_window, t8, unit_group_splits, verify_adhoc,
    verify_claim, ClaimReport, ConstructError, Construction, Family, Field, FieldSpec,
    OracleVerdict, PermutationMap, SparsePoly, T3Variant,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "invforge",
    version,
    about = "Construct and exhaustively verify involutory permutation polynomials over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one family polynomial and print its text and recipe.
    Construct(ConstructArgs),
    /// Exhaustively verify a polynomial given as text.
    Verify(VerifyArgs),
    /// Construct and verify every recipe in range; emit a sorted catalog.
    Catalog(CatalogArgs),
    /// Compare a construction against a behavioral oracle, pointwise.
    OracleDiff(OracleDiffArgs),
}

/// Field selection shared by every subcommand. `--q` alone infers the
/// prime or prime-power shape; `--p`/`--ext-deg` (optionally with an
/// explicit `--modulus`) name the shape directly. Redundant combinations
/// are accepted and cross-checked.
#[derive(Args)]
struct FieldArgs {
    /// Field order q = p^ext_deg.
    #[arg(long)]
    q: Option<u64>,
    /// Field characteristic (a prime).
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree over the prime field (default 1 when --p is given).
    #[arg(long)]
    ext_deg: Option<u32>,
    /// Monic modulus for the extension, as comma-separated coefficients in
    /// ascending powers (constant first, leading 1 last).
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<Field, String> {
        match (self.p, self.q) {
            (Some(p), _) => {
                let k = self.ext_deg.unwrap_or(1);
                let field = match (&self.modulus, k) {
                    (Some(text), _) => {
                        let coeffs = parse_modulus(text)?;
                        FieldSpec::extension_with_modulus(p, k, coeffs)
                            .map_err(|e| e.to_string())?
                    }
                    (None, 1) => FieldSpec::prime(p).map_err(|e| e.to_string())?,
                    (None, _) => FieldSpec::extension(p, k).map_err(|e| e.to_string())?,
                };
                if let Some(q) = self.q {
                    if q != field.q() {
                        return Err(format!(
                            "inconsistent field: --q {q} but p^ext_deg = {}",
                            field.q()
                        ));
                    }
                }
                Ok(field)
            }
            (None, Some(q)) => {
                if self.modulus.is_some() {
                    return Err("--modulus requires --p and --ext-deg".into());
                }
                let field = FieldSpec::from_order(q).map_err(|e| e.to_string())?;
                if let Some(k) = self.ext_deg {
                    if k != field.ext_deg() {
                        return Err(format!(
                            "inconsistent field: --ext-deg {k} but q = {q} has degree {}",
                            field.ext_deg()
                        ));
                    }
                }
                Ok(field)
            }
            (None, None) => Err("no field given: pass --q, or --p with --ext-deg".into()),
        }
    }
}

fn parse_modulus(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| "modulus must be comma-separated non-negative integers".into())
}

/// Family and parameter selection shared by construct and oracle-diff.
/// Exactly the parameters the chosen family takes must be present.
#[derive(Args)]
struct FamilySelect {
    /// Family name: t1, t2, t3 (with --variant), t3a, t3b, h1, h2, t7, t8.
    #[arg(long)]
    family: String,
    /// Variant selector for --family t3: "a" or "b".
    #[arg(long)]
    variant: Option<String>,
    /// Index in 0..(q-1)/4, for t1/t2/t3a/t3b.
    #[arg(long)]
    i: Option<u64>,
    /// Divisor of q-1, for h1/h2.
    #[arg(long)]
    d: Option<u64>,
    /// Odd factor of q-1, for t7/t8.
    #[arg(long)]
    m: Option<u64>,
    /// Even cofactor with m*n = q-1, for t7/t8.
    #[arg(long)]
    n: Option<u64>,
    /// Generator of the multiplicative group, for t1/t2/t3a/t3b
    /// (default: the smallest one).
    #[arg(long, short = 'g')]
    generator: Option<u64>,
}

fn resolve_family(name: &str, variant: Option<&str>) -> Result<Family, String> {
    if name == "t3" {
        return match variant {
            Some("a") => Ok(Family::T3A),
            Some("b") => Ok(Family::T3B),
            _ => Err("--family t3 requires --variant a or --variant b".into()),
        };
    }
    if variant.is_some() {
        return Err("--variant applies only to --family t3".into());
    }
    Family::parse(name).ok_or_else(|| {
        format!("unknown family {name:?}: expected t1, t2, t3a, t3b, h1, h2, t7, or t8")
    })
}

impl FamilySelect {
    fn family(&self) -> Result<Family, String> {
        resolve_family(&self.family, self.variant.as_deref())
    }

    /// Build the selected construction, rejecting parameters the family
    /// does not take so a typo cannot silently select a default.
    fn build(&self, field: &Field) -> Result<Construction, String> {
        let family = self.family()?;
        let built = match family {
            Family::T1 | Family::T2 | Family::T3A | Family::T3B => {
                let i = self
                    .i
                    .ok_or_else(|| format!("{} requires --i", family.name()))?;
                if self.d.is_some() || self.m.is_some() || self.n.is_some() {
                    return Err(format!(
                        "{} takes only --i (and optionally --generator)",
                        family.name()
                    ));
                }
                let g = self.generator.unwrap_or_else(|| field.smallest_generator());
                match family {
                    Family::T1 => t1(field, g, i),
                    Family::T2 => t2(field, g, i),
                    Family::T3A => t3(field, g, i, T3Variant::A),
                    Family::T3B => t3(field, g, i, T3Variant::B),
                    _ => unreachable!(),
                }
            }
            Family::H1 | Family::H2 => {
                let d = self
                    .d
                    .ok_or_else(|| format!("{} requires --d", family.name()))?;
                if self.i.is_some() || self.m.is_some() || self.n.is_some() {
                    return Err(format!("{} takes only --d", family.name()));
                }
                if self.generator.is_some() {
                    return Err(format!(
                        "{} takes no --generator: its formula is generator-free",
                        family.name()
                    ));
                }
                match family {
                    Family::H1 => h1(field, d),
                    Family::H2 => h2(field, d),
                    _ => unreachable!(),
                }
            }
            Family::T7 | Family::T8 => {
                let (m, n) = match (self.m, self.n) {
                    (Some(m), Some(n)) => (m, n),
                    _ => return Err(format!("{} requires --m and --n", family.name())),
                };
                if self.i.is_some() || self.d.is_some() {
                    return Err(format!("{} takes only --m and --n", family.name()));
                }
                if self.generator.is_some() {
                    return Err(format!(
                        "{} takes no --generator: its formula is generator-free",
                        family.name()
                    ));
                }
                match family {
                    Family::T7 => t7(field, m, n),
                    Family::T8 => t8(field, m, n),
                    _ => unreachable!(),
                }
            }
        };
        built.map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    select: FamilySelect,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Polynomial text, e.g. "26x^31 + 29x^11 + 22x".
    #[arg(long)]
    poly: String,
    /// Demand the involution property (it is always checked; the flag
    /// only documents intent in scripts).
    #[arg(long)]
    expect_involution: bool,
    /// Demand exactly this many fixed points.
    #[arg(long)]
    expect_fixed: Option<u64>,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Comma-separated family names, or "all".
    #[arg(long)]
    families: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Write the catalog to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct OracleDiffArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    select: FamilySelect,
    /// Diff against this family's oracle instead of the construction's
    /// own (a deliberate cross-pair; must accept the same parameters).
    #[arg(long)]
    oracle_family: Option<String>,
}

/// One catalog row: the verification report plus tool provenance. The
/// provenance carries no timestamp, so reruns are byte-identical.
#[derive(Serialize)]
struct CatalogEntry<'a> {
    version: &'static str,
    modulus: &'a [u64],
    #[serde(flatten)]
    report: &'a ClaimReport,
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => run_construct(args),
        Command::Verify(args) => run_verify(args),
        Command::Catalog(args) => run_catalog(args),
        Command::OracleDiff(args) => run_oracle_diff(args),
    };
    match outcome {
        Ok(code) => std::process::ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::ExitCode::from(2)
        }
    }
}

fn run_construct(args: ConstructArgs) -> Result<u8, String> {
    let field = args.field.resolve()?;
    let built = args.select.build(&field)?;
    println!("{}", built.poly);
    println!("{}", built.recipe.to_json());
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8, String> {
    let field = args.field.resolve()?;
    let poly = SparsePoly::parse(&field, &args.poly).map_err(|e| e.to_string())?;
    let report = verify_adhoc(&poly, args.expect_fixed).map_err(|e| e.to_string())?;
    println!("{}", report.to_json_string());
    if !report.pass {
        for failure in &report.failures {
            eprintln!("verification failed: {failure}");
        }
        return Ok(1);
    }
    let _ = args.expect_involution; // always checked; see the flag's help
    Ok(0)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Push every recipe the family admits over this field, warning on
/// standard error about slices that are skipped as inapplicable.
fn enumerate_family(
    field: &Field,
    family: Family,
    items: &mut Vec<Construction>,
) -> Result<(), String> {
    let q = field.q();
    match family {
        Family::T1 | Family::T2 | Family::T3A | Family::T3B => {
            if q % 4 != 1 {
                eprintln!(
                    "warning: skipping {}: q = {q} is not 1 mod 4",
                    family.name()
                );
                return Ok(());
            }
            let g = field.smallest_generator();
            for i in 0..(q - 1) / 4 {
                let built = match family {
                    Family::T1 => t1(field, g, i),
                    Family::T2 => t2(field, g, i),
                    Family::T3A => t3(field, g, i, T3Variant::A),
                    Family::T3B => t3(field, g, i, T3Variant::B),
                    _ => unreachable!(),
                };
                items.push(built.map_err(|e| e.to_string())?);
            }
        }
        Family::H1 | Family::H2 => {
            for d in divisors(q - 1) {
                if d == q - 1 {
                    eprintln!(
                        "warning: skipping {} at d = q-1 = {d}: degenerate trivial-subgroup slice",
                        family.name()
                    );
                    continue;
                }
                let built = match family {
                    Family::H1 => h1(field, d),
                    Family::H2 => h2(field, d),
                    _ => unreachable!(),
                };
                items.push(built.map_err(|e| e.to_string())?);
            }
        }
        Family::T7 | Family::T8 => {
            if field.p() == 2 {
                eprintln!(
                    "warning: skipping {}: q-1 = {} is odd, so no odd-by-even split exists",
                    family.name(),
                    q - 1
                );
                return Ok(());
            }
            for (m, n) in unit_group_splits(field) {
                match family {
                    Family::T7 => {
                        if !t7_in_window(field, m, n).map_err(|e| e.to_string())? {
                            eprintln!(
                                "warning: skipping t7 at m = {m}, n = {n}: formula exponents \
                                 leave the window 1..=q-2"
                            );
                            continue;
                        }
                        items.push(t7(field, m, n).map_err(|e| e.to_string())?);
                    }
                    Family::T8 => match t8(field, m, n) {
                        Ok(built) => items.push(built),
                        // No residue case covers this split; it is outside
                        // the family's hypothesis, not an error.
                        Err(ConstructError::NoMatchingCase { .. }) => {}
                        Err(e) => return Err(e.to_string()),
                    },
                    _ => unreachable!(),
                }
            }
        }
    }
    Ok(())
}

fn parse_family_list(text: &str) -> Result<Vec<Family>, String> {
    if text.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in text.split(',') {
        let name = name.trim();
        let family = Family::parse(name).ok_or_else(|| {
            format!("unknown family {name:?}: expected t1, t2, t3a, t3b, h1, h2, t7, t8, or all")
        })?;
        if !out.contains(&family) {
            out.push(family);
        }
    }
    Ok(out)
}

fn run_catalog(args: CatalogArgs) -> Result<u8, String> {
    let field = args.field.resolve()?;
    let families = parse_family_list(&args.families)?;
    let mut items = Vec::new();
    for family in families {
        enumerate_family(&field, family, &mut items)?;
    }
    // Canonical order: family name, then the family's own parameter key,
    // then the polynomial text. Reruns are byte-identical.
    items.sort_by_cached_key(|c| {
        (
            c.recipe.family.name(),
            c.recipe.params.sort_key(),
            c.poly.to_string(),
        )
    });
    let reports: Vec<ClaimReport> = items
        .par_iter()
        .map(|c| verify_claim(&c.recipe, &c.poly))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let text = match args.format {
        OutFormat::Json => {
            let entries: Vec<CatalogEntry> = reports
                .iter()
                .map(|report| CatalogEntry {
                    version: env!("CARGO_PKG_VERSION"),
                    modulus: field.modulus_coeffs(),
                    report,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&entries)
                .expect("catalog serialization cannot fail");
            s.push('\n');
            s
        }
        OutFormat::Csv => {
            let mut s = String::from(ClaimReport::CSV_HEADER);
            s.push('\n');
            for report in &reports {
                s.push_str(&report.csv_row());
                s.push('\n');
            }
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        eprintln!("{failed} of {} catalog entries failed verification", reports.len());
        return Ok(1);
    }
    Ok(0)
}

fn run_oracle_diff(args: OracleDiffArgs) -> Result<u8, String> {
    let field = args.field.resolve()?;
    let built = args.select.build(&field)?;
    let map = PermutationMap::of_poly(&built.poly).map_err(|e| e.to_string())?;
    let oracle_recipe = match &args.oracle_family {
        None => built.recipe,
        Some(name) => {
            // The cross-pair reuses the same parameters under the other
            // family; it must accept them, or the pairing is meaningless.
            let mut select = args.select;
            select.family = name.clone();
            select.build(&field)?.recipe
        }
    };
    match diff_oracle(&oracle_recipe, &map).map_err(|e| e.to_string())? {
        OracleVerdict::Match => {
            println!("match");
            Ok(0)
        }
        OracleVerdict::Descriptive => {
            println!("descriptive");
            Ok(0)
        }
        OracleVerdict::Mismatch {
            at,
            poly_value,
            oracle_value,
        } => {
            println!("mismatch at x={at}: polynomial gives {poly_value}, oracle gives {oracle_value}");
            Ok(1)
        }
    }
}
