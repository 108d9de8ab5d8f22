//! ppwb command-line front end.
//!
//! Exit codes: 0 = permutation / all cells agree, 1 = not a permutation /
//! some cell disagrees, 2 = usage or input error, 3 = a cap was exceeded.

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ppwb::dickson::{dickson_poly_mod_qx, DicksonParams};
use ppwb::gf::parse_coeff_list;
use ppwb::ppcheck::brute_force_check;
use ppwb::theorems::{scan, Theorem, TheoremReport, REPORT_CSV_HEADER};
use ppwb::{Error, FieldSpec, Poly};

#[derive(Parser)]
#[command(
    name = "ppwb",
    version,
    about = "Finite-field permutation-polynomial workbench",
    long_about = "Builds finite fields GF(p^e), tests polynomials for the permutation \
                  property, generates reversed Dickson polynomials, and verifies the \
                  classification of the associated permutation binomials and trinomials \
                  over exhaustive parameter grids."
)]
struct Cli {
    /// Output format (defaults to text on a terminal, json otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build GF(p^e) and print its parameters and modulus
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        /// Modulus as ascending coefficients incl. the leading 1, e.g. "1,0,1"
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Test whether a polynomial permutes GF(p^e) (exit 0 iff it does)
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        modulus: Option<String>,
        /// Polynomial as ascending element codes, e.g. "0,1,1,3"
        #[arg(long)]
        poly: String,
    },
    /// Print the reversed Dickson polynomial D_{n,k}(a, x) reduced mod x^q - x
    Dickson {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        /// First argument a as a canonical element code (default 1)
        #[arg(long)]
        a: Option<u64>,
    },
    /// Scan a parameter grid and print one report row per cell
    Scan(GridArgs),
    /// Verify a named classification over its grid (exit 0 iff all cells agree)
    Verify(GridArgs),
}

#[derive(clap::Args)]
struct GridArgs {
    /// One of: thm3.1, thm4.1, result1, result2, result3, result4
    #[arg(long)]
    theorem: String,
    /// Comma-separated characteristics, e.g. "5,7,11,13"
    #[arg(long)]
    p_list: Option<String>,
    #[arg(long)]
    e_max: Option<u32>,
    /// Upper bound for l (default 2e+1, or 4e+1 for thm4.1)
    #[arg(long)]
    l_max: Option<u32>,
    /// Pin a single l instead of scanning a range
    #[arg(long)]
    l: Option<u32>,
    /// Pin a single kind k instead of the family's default set
    #[arg(long)]
    k: Option<u64>,
    /// Brute-force field-order cap (default 343)
    #[arg(long)]
    q_cap: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or_else(|| {
        if std::io::stdout().is_terminal() {
            Format::Text
        } else {
            Format::Json
        }
    });
    match run(cli.command, format) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::CapExceeded { .. } | Error::IndexTooLarge { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn build_field(p: u64, e: u32, modulus: &Option<String>) -> Result<FieldSpec, Error> {
    match modulus {
        Some(text) => FieldSpec::with_modulus(p, e, &parse_coeff_list(text)?),
        None => FieldSpec::new(p, e),
    }
}

fn run(command: Command, format: Format) -> Result<u8, Error> {
    match command {
        Command::Field { p, e, modulus } => {
            let field = build_field(p, e, &modulus)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "p": field.p(),
                        "e": field.e(),
                        "q": field.q(),
                        "modulus": field.modulus_string(),
                    })
                ),
                Format::Csv => {
                    println!("p,e,q,modulus");
                    println!(
                        "{},{},{},\"{}\"",
                        field.p(),
                        field.e(),
                        field.q(),
                        field.modulus_string()
                    );
                }
                Format::Text => println!(
                    "GF({}) = F_{}^{}, modulus {}",
                    field.q(),
                    field.p(),
                    field.e(),
                    field.modulus_string()
                ),
            }
            Ok(0)
        }
        Command::Check {
            p,
            e,
            modulus,
            poly,
        } => {
            let field = build_field(p, e, &modulus)?;
            let poly = Poly::parse(&field, &poly)?;
            let verdict = brute_force_check(&poly);
            match format {
                Format::Json => println!("{}", verdict.to_json()),
                Format::Csv => {
                    println!("is_permutation,witness");
                    println!(
                        "{},{}",
                        verdict.is_permutation,
                        verdict
                            .witness
                            .as_ref()
                            .map(|w| w.to_compact_string())
                            .unwrap_or_default()
                    );
                }
                Format::Text => match &verdict.witness {
                    None => println!("permutation of GF({})", field.q()),
                    Some(w) => println!("not a permutation of GF({}); witness {}", field.q(), w),
                },
            }
            Ok(if verdict.is_permutation { 0 } else { 1 })
        }
        Command::Dickson { p, e, n, k, a } => {
            let field = build_field(p, e, &None)?;
            let mut params = DicksonParams::new(n, k);
            if let Some(code) = a {
                params = params.with_a(field.element_from_code(code)?);
            }
            let poly = dickson_poly_mod_qx(&params, &field)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "p": p, "e": e, "n": n, "k": k,
                        "a": a.unwrap_or(1),
                        "poly": poly.to_code_string(),
                    })
                ),
                _ => println!("{poly}"),
            }
            Ok(0)
        }
        Command::Scan(args) => {
            let reports = run_grid(&args)?;
            print_reports(&reports, format);
            Ok(0)
        }
        Command::Verify(args) => {
            let theorem: Theorem = args.theorem.parse()?;
            let reports = run_grid(&args)?;
            let disagreeing: Vec<&TheoremReport> = reports.iter().filter(|r| !r.agree).collect();
            match format {
                Format::Text => {
                    for r in &disagreeing {
                        println!("disagree: {}", r.to_csv_row());
                    }
                    println!(
                        "{}: {} cells, {} agree, {} disagree",
                        theorem,
                        reports.len(),
                        reports.len() - disagreeing.len(),
                        disagreeing.len()
                    );
                }
                Format::Json => {
                    for r in &disagreeing {
                        println!("{}", r.to_json_line());
                    }
                    println!(
                        "{}",
                        serde_json::json!({
                            "theorem": theorem.name(),
                            "cells": reports.len(),
                            "agree": reports.len() - disagreeing.len(),
                            "disagree": disagreeing.len(),
                        })
                    );
                }
                Format::Csv => {
                    println!("{REPORT_CSV_HEADER}");
                    for r in &disagreeing {
                        println!("{}", r.to_csv_row());
                    }
                }
            }
            Ok(if disagreeing.is_empty() { 0 } else { 1 })
        }
    }
}

fn run_grid(args: &GridArgs) -> Result<Vec<TheoremReport>, Error> {
    let theorem: Theorem = args.theorem.parse()?;
    let mut grid = theorem.grid();
    if let Some(p_list) = &args.p_list {
        grid.p_list = parse_coeff_list(p_list)?;
    }
    if let Some(e_max) = args.e_max {
        grid.e_max = e_max;
    }
    if let Some(l_max) = args.l_max {
        grid.l_max = Some(l_max);
    }
    if let Some(l) = args.l {
        grid.l_pin = Some(l);
    }
    if let Some(k) = args.k {
        grid.k_pin = Some(k);
    }
    if let Some(q_cap) = args.q_cap {
        grid.q_cap = q_cap;
    }
    scan(&grid)
}

fn print_reports(reports: &[TheoremReport], format: Format) {
    match format {
        Format::Json => {
            for r in reports {
                println!("{}", r.to_json_line());
            }
        }
        Format::Csv | Format::Text => {
            println!("{REPORT_CSV_HEADER}");
            for r in reports {
                println!("{}", r.to_csv_row());
            }
        }
    }
}
