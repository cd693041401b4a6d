//! The `dsheaf` command line.
//!
//! Exit status: 0 on success, 1 on a domain (or other runtime) error, 2 on
//! a usage error, including malformed polynomial or budget strings.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::invariants::{
    chi_bare, chi_level, classify, covering_degree, genus, optimality_scan,
    riemann_hurwitz_residual, Cardinality, CharacteristicPlace, Discriminant, Execution,
    InvariantReport, LevelIdeal,
};
use crate::places::{enumerate_places, Place};
use crate::report::{emit_comparison_table, load_reference, reports_csv, reports_markdown};
use crate::shimura::{shimura_genus, volume_coefficients, RationalDiscriminant};

#[derive(Parser, Debug)]
#[command(
    name = "dsheaf",
    version,
    about = "Invariants of modular curves of D-elliptic sheaves over F_q(T)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the places of P^1 over F_q up to a degree.
    Places(PlacesArgs),
    /// All invariants of X^R (and of its fibre at o, if given).
    Invariants(InvariantsArgs),
    /// Genus of X^R.
    Genus(RArgs),
    /// Euler characteristics, optionally with a level structure.
    Chi(ChiArgs),
    /// Sweep all discriminants up to a degree bound.
    Scan(ScanArgs),
    /// Genus and supersingular points for #R = 2, up to a genus bound.
    Table(TableArgs),
    /// Genus-zero and hyperelliptic classification of X^R.
    Classify(RArgs),
    /// Genus of the Shimura curve over Q with discriminant d.
    Shimura(ShimuraArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct RSpec {
    /// Degrees of the ramified places; the smallest places of each degree are used.
    #[arg(long, value_delimiter = ',')]
    r_degrees: Option<Vec<u32>>,
    /// Explicit monic irreducible polynomials, e.g. T,T^2+T+1 (use w for the generator of F_q).
    #[arg(long, value_delimiter = ',')]
    r_polys: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct RArgs {
    #[arg(long)]
    q: u32,
    #[command(flatten)]
    r: RSpec,
}

#[derive(Args, Debug)]
struct PlacesArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    max_degree: u32,
    #[arg(long)]
    include_infinity: bool,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    #[command(flatten)]
    r: RArgs,
    /// Characteristic place, e.g. T.
    #[arg(long)]
    o: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct ChiArgs {
    #[command(flatten)]
    r: RArgs,
    /// Level ideal as poly[:exp] items, e.g. T:2,T^2+T+1.
    #[arg(long)]
    level: Option<String>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value = "T")]
    o: String,
    #[arg(long)]
    max_disc_degree: u32,
    /// Even cardinality of R, or `all`.
    #[arg(long, default_value = "all")]
    r_cardinality: String,
    /// Evaluate on one thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value = "T")]
    o: String,
    /// CSV with columns q,genus,max_known,upper_bound.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    max_genus: u64,
    /// Drop degree pairs that F_q has too few places to realize.
    #[arg(long)]
    realizable_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
}

#[derive(Args, Debug)]
struct ShimuraArgs {
    #[arg(long, required_unless_present = "max_d", conflicts_with = "max_d")]
    d: Option<u64>,
    /// List every valid discriminant up to this bound.
    #[arg(long)]
    max_d: Option<u64>,
    /// Also print the matching volume coefficient over F_q(T).
    #[arg(long)]
    q: Option<u32>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match Budget::from_env().and_then(|budget| dispatch(cli.command, &budget, out)) {
        Ok(()) => 0,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse(_) => 2,
                _ => 1,
            }
        }
    }
}

fn field(q: u32, budget: &Budget) -> Result<FieldSpec> {
    FieldSpec::with_budget(q, budget)
}

/// `R` from the command line; a degree list is realized outside `avoid`.
fn discriminant(args: &RArgs, avoid: &[Place], budget: &Budget) -> Result<Discriminant> {
    let f = field(args.q, budget)?;
    match (&args.r.r_degrees, &args.r.r_polys) {
        (Some(degrees), _) => Discriminant::from_degrees_in(&f, degrees, avoid, budget),
        (None, Some(polys)) => Discriminant::from_polys(&f, polys),
        (None, None) => unreachable!("clap enforces one of --r-degrees/--r-polys"),
    }
}

/// JSON number when it fits in an `i64`, decimal string otherwise.
fn int_value(n: &BigInt) -> serde_json::Value {
    n.to_i64()
        .map_or_else(|| json!(n.to_string()), |n| json!(n))
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::invariant(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn dispatch(command: Command, budget: &Budget, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Places(a) => {
            let f = field(a.q, budget)?;
            let places = enumerate_places(&f, a.max_degree, a.include_infinity, budget)?;
            let rows: Vec<_> = places
                .iter()
                .map(|x| (x.format(&f), x.degree(), x.residue_size(&f)))
                .collect();
            match a.format {
                Format::Md => {
                    writeln!(out, "| place | degree | q_x |\n|---|---|---|")?;
                    for (name, d, qx) in &rows {
                        writeln!(out, "| {name} | {d} | {qx} |")?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "place,degree,q_x")?;
                    for (name, d, qx) in &rows {
                        writeln!(out, "{name},{d},{qx}")?;
                    }
                }
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(name, d, qx)| json!({"place": name, "degree": d, "q_x": qx.to_string()}))
                        .collect();
                    json_line(out, &v)?;
                }
            }
        }
        Command::Invariants(a) => {
            let f = field(a.r.q, budget)?;
            let o =
                a.o.as_deref()
                    .map(|s| CharacteristicPlace::parse(s, &f))
                    .transpose()?;
            let avoid: Vec<Place> = o.iter().map(|o| o.place().clone()).collect();
            let r = discriminant(&a.r, &avoid, budget)?;
            let report = InvariantReport::compute(&r, o.as_ref())?;
            match a.format {
                Format::Json => json_line(out, &report)?,
                Format::Md => write!(out, "{}", reports_markdown(std::slice::from_ref(&report)))?,
                Format::Csv => write!(out, "{}", reports_csv(std::slice::from_ref(&report)))?,
            }
        }
        Command::Genus(a) => {
            let r = discriminant(&a, &[], budget)?;
            writeln!(out, "{}", genus(&r)?)?;
        }
        Command::Chi(a) => {
            let f = field(a.r.q, budget)?;
            let level = a
                .level
                .as_deref()
                .map(|s| LevelIdeal::parse(s, &f))
                .transpose()?;
            let avoid: Vec<Place> = level
                .iter()
                .flat_map(|l| l.factors().iter().map(|(x, _)| x.clone()))
                .collect();
            let r = discriminant(&a.r, &avoid, budget)?;
            let mut v = json!({ "chi0": int_value(&chi_bare(&r)?) });
            if let Some(level) = &level {
                v["chi_level"] = int_value(&chi_level(&r, level)?);
                v["covering_degree"] = int_value(&covering_degree(level, r.field())?);
                v["rh_residual"] = int_value(&riemann_hurwitz_residual(&r, level)?);
            }
            json_line(out, &v)?;
        }
        Command::Scan(a) => {
            let f = field(a.q, budget)?;
            let o = CharacteristicPlace::parse(&a.o, &f)?;
            let card = Cardinality::parse(&a.r_cardinality)?;
            let exec = if a.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let reports = optimality_scan(&f, &o, a.max_disc_degree, card, exec, budget)?;
            match a.format {
                Format::Md => write!(out, "{}", reports_markdown(&reports))?,
                Format::Csv => write!(out, "{}", reports_csv(&reports))?,
                Format::Json => json_line(out, &reports)?,
            }
        }
        Command::Table(a) => {
            let f = field(a.q, budget)?;
            let o = CharacteristicPlace::parse(&a.o, &f)?;
            let reference = a.reference.as_ref().map(load_reference).transpose()?;
            let mut table =
                emit_comparison_table(&f, &o, reference.as_deref(), a.max_genus, budget)?;
            if a.realizable_only {
                table = table.realizable_only();
            }
            match a.format {
                Format::Md => write!(out, "{}", table.to_markdown())?,
                Format::Csv => write!(out, "{}", table.to_csv())?,
                Format::Json => writeln!(out, "{}", table.to_json())?,
            }
        }
        Command::Classify(a) => {
            let r = discriminant(&a, &[], budget)?;
            let c = classify(&r)?;
            json_line(
                out,
                &json!({
                    "genus": int_value(&genus(&r)?),
                    "genus_zero": c.genus_zero,
                    "hyperelliptic": c.hyperelliptic,
                }),
            )?;
        }
        Command::Shimura(a) => {
            if let Some(q) = a.q {
                let (over_q, over_fq) = volume_coefficients(&field(q, budget)?);
                writeln!(
                    out,
                    "volume coefficient: {over_q} over Q, {over_fq} over F_{q}(T)"
                )?;
            }
            if let Some(d) = a.d {
                writeln!(out, "{}", shimura_genus(&RationalDiscriminant::new(d)?)?)?;
            }
            if let Some(max_d) = a.max_d {
                writeln!(out, "| d | primes | g(X^d) |\n|---|---|---|")?;
                for d in 2..=max_d {
                    let Ok(disc) = RationalDiscriminant::new(d) else {
                        continue;
                    };
                    let primes: Vec<String> = disc.primes().iter().map(u64::to_string).collect();
                    writeln!(
                        out,
                        "| {d} | {} | {} |",
                        primes.join("*"),
                        shimura_genus(&disc)?
                    )?;
                }
            }
        }
    }
    Ok(())
}
