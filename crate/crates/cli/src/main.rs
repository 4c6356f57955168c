//! `nhc`: exact counts of integral short Weierstrass curves by naive height.
//!
//! Exit codes: 0 success, 1 internal error, 2 bad usage, 3 special j where
//! the generic path was forced, 4 singular curve, 5 oracle mismatch,
//! 6 oracle scan refused above the cap.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nhc::asymptotics::{
    cm_asymptotic, cm_tilde_asymptotic, main_term_rep_all, main_term_rep_j, main_term_tilde_all, main_term_tilde_j,
    report,
};
use nhc::cm::{cm_orders, count_rep_cm, count_tilde_cm};
use nhc::families::{count_rep_all, count_rep_j, count_tilde_all, count_tilde_j, is_special_j, parametrized_curves};
use nhc::oracle::{brute_census_with, scan_size, OracleConfig};
use nhc::parse::{parse_j, parse_rational, rational_string};
use nhc::tables::{build_table, Cell, OutputFormat, Table, TableName};
use nhc::{Error, HeightSpec, Rational, WeierstrassCurve};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "nhc", version, about = "Count elliptic curves y^2 = x^3 + Ax + B by naive height")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Every nonsingular (A, B)
    All,
    /// Representatives (minimal twists)
    Rep,
    /// Every curve with the given j
    J,
    /// Representatives with the given j
    JRep,
    /// Every CM curve
    Cm,
    /// CM representatives
    CmRep,
}

#[derive(Subcommand)]
enum Command {
    /// Print an exact count
    Count {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value = "cal", value_parser = height_arg)]
        height: HeightSpec,
        #[arg(long, value_parser = bound_arg)]
        bound: Rational,
        /// j-invariant: integer, p/q or cm:<d_K>[:f]
        #[arg(long, value_parser = j_arg, allow_hyphen_values = true)]
        j: Option<Rational>,
        /// Also print the main term and relative error
        #[arg(long)]
        asymptotic: bool,
        /// Require the generic-j formula (j outside {0, 1728})
        #[arg(long)]
        generic: bool,
    },
    /// List the curves with a given j by parameter m
    Parametrize {
        #[arg(long, value_parser = j_arg, allow_hyphen_values = true)]
        j: Rational,
        #[arg(long, default_value = "cal", value_parser = height_arg)]
        height: HeightSpec,
        #[arg(long, value_parser = bound_arg)]
        bound: Rational,
        /// Keep only representatives
        #[arg(long)]
        squarefree_only: bool,
        #[arg(long, default_value = "table", value_parser = format_arg)]
        format: OutputFormat,
    },
    /// Write a curve as d * representative
    Twist {
        #[arg(allow_negative_numbers = true, value_parser = int_arg)]
        a: BigInt,
        #[arg(allow_negative_numbers = true, value_parser = int_arg)]
        b: BigInt,
        #[arg(long, default_value = "table", value_parser = format_arg)]
        format: OutputFormat,
    },
    /// Regenerate one of the CM tables
    Tables {
        #[arg(long, value_parser = table_arg)]
        name: TableName,
        #[arg(long, default_value = "cal", value_parser = height_arg)]
        height: HeightSpec,
        #[arg(long, default_value = "table", value_parser = format_arg)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every exact formula with a brute-force scan
    Verify {
        #[arg(long, default_value = "cal", value_parser = height_arg)]
        height: HeightSpec,
        #[arg(long, value_parser = bound_arg)]
        bound: Rational,
        /// Tracked j-invariants; all thirteen CM values when omitted
        #[arg(long, value_delimiter = ',', value_parser = j_arg, allow_hyphen_values = true)]
        j: Vec<Rational>,
        /// Worker threads (default: available cores)
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn height_arg(s: &str) -> Result<HeightSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn bound_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn j_arg(s: &str) -> Result<Rational, String> {
    parse_j(s).map_err(|e| e.to_string())
}

fn int_arg(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))
}

fn format_arg(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn table_arg(s: &str) -> Result<TableName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    SpecialJ(Rational),
    Singular(String),
    Mismatch,
    Refused(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular { .. } => Failure::Singular(e.to_string()),
            Error::NonPositiveBound(_) | Error::Parse(_) | Error::UnknownCmOrder { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn count(
    family: Family,
    spec: &HeightSpec,
    bound: &Rational,
    j: Option<Rational>,
    asymptotic: bool,
    generic: bool,
) -> CliResult {
    let need_j = matches!(family, Family::J | Family::JRep);
    let j = match (need_j, j) {
        (true, Some(j)) => Some(j),
        (true, None) => return Err(Failure::Usage("--j is required for this family".into())),
        (false, Some(_)) => return Err(Failure::Usage("--j only applies to --family j and j-rep".into())),
        (false, None) => None,
    };
    if let Some(j) = &j {
        if generic && is_special_j(j) {
            return Err(Failure::SpecialJ(j.clone()));
        }
    }
    let (exact, approx) = match family {
        Family::All => (count_tilde_all(spec, bound)?, main_term_tilde_all(spec, bound)?),
        Family::Rep => (count_rep_all(spec, bound)?, main_term_rep_all(spec, bound)?),
        Family::J => {
            let j = j.as_ref().expect("checked");
            (count_tilde_j(j, spec, bound)?, main_term_tilde_j(j, spec, bound)?)
        }
        Family::JRep => {
            let j = j.as_ref().expect("checked");
            (count_rep_j(j, spec, bound)?, main_term_rep_j(j, spec, bound)?)
        }
        Family::Cm => (count_tilde_cm(spec, bound)?, cm_tilde_asymptotic(spec, bound)?),
        Family::CmRep => (count_rep_cm(spec, bound)?, cm_asymptotic(spec, bound)?),
    };
    println!("{exact}");
    if asymptotic {
        println!("main term: {:.6}", approx);
        match report(&exact, &approx) {
            Ok(r) => println!("relative error: {}", r.percent()),
            Err(Error::UndefinedRelativeError) => println!("relative error: undefined"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn parametrize(j: &Rational, spec: &HeightSpec, bound: &Rational, reps: bool, format: OutputFormat) -> CliResult {
    let rows = parametrized_curves(j, spec, bound, reps)?
        .into_iter()
        .map(|p| {
            let h = spec.height(&p.curve);
            vec![
                Cell::Int(p.m),
                Cell::Int(p.curve.a().clone()),
                Cell::Int(p.curve.b().clone()),
                if h.is_integer() { Cell::Int(h.to_integer()) } else { Cell::Text(rational_string(&h)) },
            ]
        })
        .collect();
    let table = Table { headers: ["m", "A", "B", "height"].map(String::from).to_vec(), rows };
    print!("{}", table.render(format)?);
    Ok(())
}

fn twist(a: BigInt, b: BigInt, format: OutputFormat) -> CliResult {
    let t = WeierstrassCurve::new(a, b).twist_decompose()?;
    let rows = vec![vec![
        Cell::Int(t.d.into()),
        Cell::Int(t.representative.a().clone()),
        Cell::Int(t.representative.b().clone()),
    ]];
    let table = Table { headers: ["d", "A", "B"].map(String::from).to_vec(), rows };
    print!("{}", table.render(format)?);
    Ok(())
}

fn tables(name: TableName, spec: &HeightSpec, format: OutputFormat, out: Option<PathBuf>) -> CliResult {
    let text = build_table(name, spec)?.render(format)?;
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(spec: &HeightSpec, bound: &Rational, js: Vec<Rational>, threads: Option<usize>) -> CliResult {
    let js = if js.is_empty() { cm_orders().iter().map(|o| o.j_invariant()).collect() } else { js };
    let config = OracleConfig { threads, ..OracleConfig::from_env()? };
    let census = match brute_census_with(spec, bound, &js, &config) {
        Ok(c) => c,
        Err(Error::ScanTooLarge { points, cap }) => {
            return Err(Failure::Refused(format!(
                "refused: the box for X = {} has {points} lattice points, above the cap of {cap} (set NHC_ORACLE_CAP to raise it)",
                j_label(bound)
            )))
        }
        Err(e) => return Err(e.into()),
    };
    debug_assert_eq!(BigInt::from(census.box_points()), BigInt::from(scan_size(spec, bound)?));
    println!("scanned {} points, |A| <= {}, |B| <= {}", census.box_points(), census.x_bound, census.y_bound);
    let mut checks = vec![
        ("all".to_string(), BigInt::from(census.total_elliptic), count_tilde_all(spec, bound)?),
        ("rep".to_string(), BigInt::from(census.total_representatives), count_rep_all(spec, bound)?),
    ];
    for j in &js {
        let c = &census.per_j[j];
        let label = j_label(j);
        checks.push((format!("j={label}"), BigInt::from(c.tilde), count_tilde_j(j, spec, bound)?));
        checks.push((format!("j-rep={label}"), BigInt::from(c.rep), count_rep_j(j, spec, bound)?));
    }
    for (name, scan, formula) in &checks {
        let ok = scan == formula;
        println!("{} {name}: scan {scan}, formula {formula}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            println!("FAIL: first mismatch in family {name}");
            return Err(Failure::Mismatch);
        }
    }
    println!("PASS");
    Ok(())
}

fn j_label(j: &Rational) -> String {
    if j.is_integer() {
        j.numer().to_string()
    } else {
        rational_string(j)
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Count { family, height, bound, j, asymptotic, generic } => {
            count(family, &height, &bound, j, asymptotic, generic)
        }
        Command::Parametrize { j, height, bound, squarefree_only, format } => {
            parametrize(&j, &height, &bound, squarefree_only, format)
        }
        Command::Twist { a, b, format } => twist(a, b, format),
        Command::Tables { name, height, format, out } => tables(name, &height, format, out),
        Command::Verify { height, bound, j, threads } => verify(&height, &bound, j, threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, format!("error: {m}")),
                Failure::SpecialJ(j) => {
                    (3, format!("error: j = {} is special; the generic formula does not apply", j_label(&j)))
                }
                Failure::Singular(m) => (4, format!("error: {m}")),
                Failure::Mismatch => (5, String::new()),
                Failure::Refused(m) => (6, m),
                Failure::Internal(m) => (1, format!("error: {m}")),
            };
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}
