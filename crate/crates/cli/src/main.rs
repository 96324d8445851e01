//! `rpint` - exact calculus on finite-order distributions stored through
//! piecewise-polynomial regulated primitives.
//!
//! Exit codes: 0 success, 1 domain/validation error (the error name goes to
//! stderr), 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rpint_core::distribution::{integrate, integrate_interval, IntervalSpec};
use rpint_core::lattice::{abs_value, join, meet, product};
use rpint_core::serial::{
    distribution_from_json, distribution_to_json, multiplier_from_json, piecewise_from_json,
};
use rpint_core::{rat, rat_from_str, rat_to_string, Error, ExtReal, Rat};

mod table;

#[derive(Parser)]
#[command(
    name = "rpint",
    version,
    about = "Exact integrals, norms, lattice and algebra operations on \
             distributions with piecewise-polynomial primitives"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate a distribution against a multiplier, or over an interval
    /// (order 1 only); prints the exact rational and a decimal rendering.
    Integrate {
        /// Distribution file (JSON)
        #[arg(long)]
        dist: PathBuf,
        /// Multiplier file (JSON); required unless --interval is given
        #[arg(long, required_unless_present = "interval")]
        mult: Option<PathBuf>,
        /// Normalisation parameter, e.g. 1/2
        #[arg(long, default_value = "0")]
        lambda: String,
        /// Interval such as "(0,1]", "{0}", "(-inf,2)", "full"
        #[arg(long)]
        interval: Option<String>,
    },
    /// Verify the built-in table of worked reference values; CSV on stdout,
    /// nonzero exit if any row fails.
    ReproducePaper,
    /// Evaluate a piecewise function at a point ("-inf" and "inf" allowed).
    Eval {
        /// Piecewise function file (JSON)
        #[arg(long = "fn")]
        func: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Alexiewicz norm of a distribution, printed as an enclosure [lo, hi].
    Norm {
        #[arg(long)]
        dist: PathBuf,
        /// Enclosure tolerance
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
    },
    /// Lattice operations: join, meet, abs.
    Lattice {
        #[arg(long, value_parser = ["join", "meet", "abs"])]
        op: String,
        #[arg(long)]
        a: PathBuf,
        /// Second operand; required for join and meet
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
    },
    /// Algebra product of two equal-order distributions.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn print_value(v: &Rat) {
    println!("{}", rat_to_string(v));
    println!("decimal: {}", rpint_core::numeric::rat_to_f64(v));
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Integrate { dist, mult, lambda, interval } => {
            let f = distribution_from_json(&read(&dist)?)?;
            match interval {
                Some(spec) => {
                    let spec = IntervalSpec::parse(&spec)?;
                    print_value(&integrate_interval(&f, &spec)?);
                }
                None => {
                    let mult = mult.expect("clap enforces --mult without --interval");
                    let m = multiplier_from_json(&read(&mult)?)?;
                    let lambda = rat_from_str(&lambda)?;
                    print_value(&integrate(&f, &m, &lambda)?);
                }
            }
        }
        Cmd::ReproducePaper => {
            let rows = table::reference_rows();
            println!("case,expected,computed,status");
            let mut ok = true;
            for row in &rows {
                println!("{},{},{},{}", row.case, row.expected, row.computed, row.status());
                ok &= row.pass;
            }
            if !ok {
                return Err(Error::Parse("reference table has failing rows".into()));
            }
        }
        Cmd::Eval { func, at } => {
            let f = piecewise_from_json(&read(&func)?)?;
            let x = match at.trim() {
                "-inf" => ExtReal::NegInf,
                "inf" | "+inf" => ExtReal::PosInf,
                s => ExtReal::Finite(rat_from_str(s)?),
            };
            println!("{}", rat_to_string(&f.eval(&x)?));
        }
        Cmd::Norm { dist, tol } => {
            let f = distribution_from_json(&read(&dist)?)?;
            let tol = parse_tol(&tol)?;
            println!("{}", rpint_core::distribution::alexiewicz_norm(&f, &tol));
        }
        Cmd::Lattice { op, a, b, tol } => {
            let fa = distribution_from_json(&read(&a)?)?;
            let tol = parse_tol(&tol)?;
            let result = match op.as_str() {
                "abs" => abs_value(&fa, &tol),
                other => {
                    let b = b.ok_or_else(|| {
                        Error::Parse(format!("--b is required for {other}"))
                    })?;
                    let fb = distribution_from_json(&read(&b)?)?;
                    match other {
                        "join" => join(&fa, &fb, &tol)?,
                        _ => meet(&fa, &fb, &tol)?,
                    }
                }
            };
            eprintln!("exact: {}", result.exact);
            println!("{}", distribution_to_json(&result.value));
        }
        Cmd::Product { a, b } => {
            let fa = distribution_from_json(&read(&a)?)?;
            let fb = distribution_from_json(&read(&b)?)?;
            println!("{}", distribution_to_json(&product(&fa, &fb)?));
        }
    }
    Ok(())
}

fn parse_tol(s: &str) -> Result<Rat, Error> {
    let t = rat_from_str(s)?;
    if t <= rat(0, 1) {
        return Err(Error::Parse("tolerance must be positive".into()));
    }
    Ok(t)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
