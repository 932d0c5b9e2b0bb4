//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 expression
//! syntax error, 3 violated domain precondition (including certified
//! non-units), 4 verification failure in the identity suite.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::aut::Automorphism;
use crate::element::Element;
use crate::error::SnError;
use crate::fredholm::{ind_i, ind_vector, index, Stabilization};
use crate::ideal::{ideal_member, IdealSpec};
use crate::mixed::to_mixed;
use crate::parser::{element_to_poly, parse};
use crate::units::factor::factor_ann1;
use crate::units::invert::invert_element;
use crate::units::lattice::{chi, psi_prime};
use crate::verify::{run_suite, Budget};
use crate::{action, scalar};

#[derive(Parser)]
#[command(
    name = "sn-calc",
    about = "Exact calculator for the algebra of one-sided inverses of a polynomial algebra",
    disable_help_subcommand = true
)]
struct Cli {
    /// Ambient number of coordinate pairs (env fallback: SN_CALC_N).
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ExprArg {
    /// Expression in the calculator grammar.
    expr: String,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form on the monomial basis.
    Eval(ExprArg),
    /// Re-expression in the mixed (tensor-factor) basis.
    Mixed(ExprArg),
    /// Apply an element to a module polynomial.
    Act {
        expr: String,
        /// Polynomial in the x variables only.
        #[arg(long)]
        poly: String,
    },
    /// Ideal membership: p:<coords> | a:<level> | F.
    Member {
        expr: String,
        #[arg(long)]
        ideal: String,
    },
    /// Fredholm index of the action on the polynomial module.
    Index {
        expr: String,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Per-coordinate index vector (or one coordinate with --i).
    IndI {
        expr: String,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Determinant-degree lattice image at level --s.
    PsiPrime {
        expr: String,
        #[arg(long)]
        s: usize,
    },
    /// Character of the lattice image over the union set --j-set.
    Chi {
        expr: String,
        /// Comma-separated union set, e.g. 1,2.
        #[arg(long = "j-set", value_delimiter = ',')]
        j_set: Vec<usize>,
        /// Level; defaults to |J| - 1.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Certified inversion (scalars, finite blocks, top-level units).
    Invert(ExprArg),
    /// Top-level factorization into current generators and block factors.
    FactorNn1(ExprArg),
    /// Compose two factored automorphisms (JSON strings or @file paths).
    AutCompose { first: String, second: String },
    /// Jacobian character of a factored automorphism.
    Jacobian {
        aut: String,
        #[arg(long)]
        exotic: bool,
    },
    /// Abelianization class of a factored automorphism.
    AbelianClass { aut: String },
    /// Run the identity verification suite.
    VerifySuite {
        /// Only identities whose ID contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Randomness seed.
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// Use the full acceptance-sized case budgets.
        #[arg(long)]
        full: bool,
    },
}

fn exit_code(err: &SnError) -> i32 {
    match err {
        SnError::Parse(_) => 2,
        _ => 3,
    }
}

/// A dispatch failure carrying its exit code (1 usage, 2 syntax, 3 domain).
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<SnError> for Failure {
    fn from(e: SnError) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn ambient(n_flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = n_flag {
        if n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        return Ok(n);
    }
    if let Ok(v) = std::env::var("SN_CALC_N") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                return Ok(n);
            }
        }
        return Err(usage(format!("SN_CALC_N is set to {v:?}, expected a positive integer")));
    }
    Err(usage("--n is required (or set SN_CALC_N)"))
}

fn parse_ideal(text: &str) -> Result<IdealSpec, SnError> {
    let t = text.trim();
    if t == "F" || t == "f" {
        return Ok(IdealSpec::MatrixIdeal);
    }
    if let Some(rest) = t.strip_prefix("p:") {
        let coords: Result<Vec<usize>, _> = rest.split(',').map(|c| c.trim().parse()).collect();
        return coords
            .map(IdealSpec::PrimeSet)
            .map_err(|_| SnError::InvalidArgument(format!("bad ideal spec {text:?}")));
    }
    if let Some(rest) = t.strip_prefix("a:") {
        return rest
            .trim()
            .parse()
            .map(IdealSpec::LevelSum)
            .map_err(|_| SnError::InvalidArgument(format!("bad ideal spec {text:?}")));
    }
    Err(SnError::InvalidArgument(format!(
        "bad ideal spec {text:?}: expected p:<coords>, a:<level>, or F"
    )))
}

fn load_json_arg(text: &str) -> Result<serde_json::Value, SnError> {
    let raw = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| SnError::InvalidArgument(format!("cannot read {path}: {e}")))?
    } else {
        text.to_string()
    };
    serde_json::from_str(&raw).map_err(|e| SnError::InvalidArgument(format!("bad JSON: {e}")))
}

/// Evaluate an expression argument; `@path` reads the expression from a file.
fn eval_expr(text: &str, n: usize) -> Result<Element, SnError> {
    let source;
    let text = if let Some(path) = text.strip_prefix('@') {
        source = std::fs::read_to_string(path)
            .map_err(|e| SnError::InvalidArgument(format!("cannot read {path}: {e}")))?;
        source.trim()
    } else {
        text
    };
    parse(text, n)?.eval(n)
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Eval(a) => {
            let n = ambient(cli.n)?;
            let v = eval_expr(&a.expr, n)?;
            if cli.json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
        }
        Command::Mixed(a) => {
            let n = ambient(cli.n)?;
            let v = to_mixed(&eval_expr(&a.expr, n)?);
            if cli.json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
        }
        Command::Act { expr, poly } => {
            let n = ambient(cli.n)?;
            let a = eval_expr(expr, n)?;
            let p = element_to_poly(&eval_expr(poly, n)?)?;
            let out = action::apply(&a, &p)?;
            if cli.json {
                println!("{}", out.to_json());
            } else {
                println!("{out}");
            }
        }
        Command::Member { expr, ideal } => {
            let n = ambient(cli.n)?;
            let spec = parse_ideal(ideal)?;
            let member = ideal_member(&eval_expr(expr, n)?, &spec)?;
            if cli.json {
                println!("{}", json!({"ideal": spec.describe(), "member": member}));
            } else {
                println!("{member}");
            }
        }
        Command::Index { expr, window, cap } => {
            let n = ambient(cli.n)?;
            let a = eval_expr(expr, n)?;
            let mut params = Stabilization::for_element(&a);
            if let Some(w) = window {
                params = params.with_window(*w);
            }
            if let Some(c) = cap {
                params = params.with_cap(*c);
            }
            let report = index(&a, params)?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!("{{\"index\": {}}}", report.index);
            }
        }
        Command::IndI { expr, i } => {
            let n = ambient(cli.n)?;
            let a = eval_expr(expr, n)?;
            match i {
                Some(i) => {
                    let v = ind_i(&a, *i)?;
                    if cli.json {
                        println!("{}", json!({"i": i, "ind": v}));
                    } else {
                        println!("{v}");
                    }
                }
                None => {
                    let v = ind_vector(&a)?;
                    if cli.json {
                        println!("{}", json!({"ind": v}));
                    } else {
                        println!("{}", json!(v));
                    }
                }
            }
        }
        Command::PsiPrime { expr, s } => {
            let n = ambient(cli.n)?;
            let v = psi_prime(&eval_expr(expr, n)?, *s)?;
            println!("{}", v.to_json());
        }
        Command::Chi { expr, j_set, s } => {
            let n = ambient(cli.n)?;
            if j_set.len() < 2 {
                return Err(usage("--j-set needs at least two coordinates"));
            }
            let s = s.unwrap_or(j_set.len() - 1);
            let v = psi_prime(&eval_expr(expr, n)?, s)?;
            let value = chi(j_set, &v);
            if cli.json {
                println!("{}", json!({"J": j_set, "chi": value}));
            } else {
                println!("{value}");
            }
        }
        Command::Invert(a) => {
            let n = ambient(cli.n)?;
            let inv = invert_element(&eval_expr(&a.expr, n)?)?;
            if cli.json {
                println!("{}", inv.to_json());
            } else {
                println!("{inv}");
            }
        }
        Command::FactorNn1(a) => {
            let n = ambient(cli.n)?;
            let f = factor_ann1(&eval_expr(&a.expr, n)?)?;
            let factors: Vec<serde_json::Value> = f
                .factors
                .iter()
                .map(|w| json!({"element": w.element.to_json(), "inverse": w.inverse.to_json()}))
                .collect();
            println!("{}", json!({"theta_exponents": f.theta_exponents, "factors": factors}));
        }
        Command::AutCompose { first, second } => {
            let a = Automorphism::from_json(&load_json_arg(first)?)?;
            let b = Automorphism::from_json(&load_json_arg(second)?)?;
            println!("{}", a.compose(&b)?.to_json());
        }
        Command::Jacobian { aut, exotic } => {
            let a = Automorphism::from_json(&load_json_arg(aut)?)?;
            let v = if *exotic { a.jacobian_exotic()? } else { a.jacobian() };
            if cli.json {
                println!("{}", json!({"jacobian": scalar::to_string(&v), "exotic": exotic}));
            } else {
                println!("{}", scalar::to_string(&v));
            }
        }
        Command::AbelianClass { aut } => {
            let a = Automorphism::from_json(&load_json_arg(aut)?)?;
            println!("{}", a.abelianization_class()?.to_json());
        }
        Command::VerifySuite { filter, seed, full } => {
            let budget = if *full { Budget::full() } else { Budget::quick() };
            let results = run_suite(filter.as_deref(), cli.n, *seed, budget);
            if results.is_empty() {
                return Err(Failure { code: 3, message: "no identities matched the filter".into() });
            }
            let mut failures = 0;
            for r in &results {
                if r.pass {
                    println!("PASS {:<18} ({} cases) {}", r.id, r.cases, r.description);
                } else {
                    failures += 1;
                    println!("FAIL {:<18} ({} cases) {} :: {}", r.id, r.cases, r.description, r.detail);
                }
            }
            if failures > 0 {
                eprintln!("{failures} identity check(s) failed");
                return Ok(4);
            }
        }
    }
    Ok(0)
}

/// Entry point returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version through this path too
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 1 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_spec_parsing() {
        assert_eq!(parse_ideal("F").unwrap(), IdealSpec::MatrixIdeal);
        assert_eq!(parse_ideal("p:1,2").unwrap(), IdealSpec::PrimeSet(vec![1, 2]));
        assert_eq!(parse_ideal("a:2").unwrap(), IdealSpec::LevelSum(2));
        assert!(parse_ideal("q:1").is_err());
    }

    #[test]
    fn ambient_resolution() {
        assert_eq!(ambient(Some(2)).unwrap(), 2);
        let err = ambient(Some(0)).unwrap_err();
        assert_eq!(err.code, 1);
    }
}
